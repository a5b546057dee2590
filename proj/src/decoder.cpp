#include "ccsim/decoder.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace ccsim {

Decoder::Decoder(const Lattice& lattice, ErasureMetric metric)
    : lat_(&lattice), metric_(metric) {
    nc_ = lattice.num_checks();
    bnode_ = lattice.boundary() == Boundary::torus ? -1 : nc_;
}

void Decoder::xor_manhattan_path(int check_a, int check_b) {
    std::array<int, 3> cur = lat_->check_pos(check_a);
    std::array<int, 3> dst = lat_->check_pos(check_b);
    for (int axis = 0; axis < 3; ++axis) {
        const bool periodic = axis != 2 || lat_->boundary() == Boundary::torus;
        const int n = (axis == 2 && !periodic) ? lat_->L() - 1 : lat_->L();
        while (cur[axis] != dst[axis]) {
            int dir;
            if (!periodic) {
                dir = dst[axis] > cur[axis] ? 1 : -1;
            } else {
                int fwd = (dst[axis] - cur[axis] + n) % n;
                dir = (fwd <= n - fwd) ? 1 : -1;  // ties go forward
            }
            std::array<int, 3> grid{2 * cur[0] + 1, 2 * cur[1] + 1, 2 * cur[2] + 1};
            grid[axis] += dir;
            corr_[lat_->primal_sub_at(grid)] ^= 1;
            cur[axis] = periodic ? ((cur[axis] + dir + n) % n) : cur[axis] + dir;
        }
    }
}

void Decoder::xor_boundary_path(int check) {
    auto cur = lat_->check_pos(check);
    int kz = cur[2];
    bool down = kz + 1 <= lat_->L() - 1 - kz;
    int steps = down ? kz + 1 : lat_->L() - 1 - kz;
    for (int t = 0; t < steps; ++t) {
        std::array<int, 3> grid{2 * cur[0] + 1, 2 * cur[1] + 1,
                                2 * cur[2] + 1 + (down ? -1 : 1)};
        corr_[lat_->primal_sub_at(grid)] ^= 1;
        cur[2] += down ? -1 : 1;
    }
}

void Decoder::inner_stage(const InnerCode& code, const std::vector<uint8_t>& z_flips,
                          BlockReadout& out) const {
    const int n = lat_->num_primal();
    const int s = code.s;
    if (z_flips.size() != static_cast<size_t>(n) * s)
        throw std::invalid_argument("z_flips must cover every primal physical qubit");
    out.resize(n);
    for (int b = 0; b < n; ++b) {
        uint32_t pattern = 0;
        for (int q = 0; q < s; ++q) pattern |= static_cast<uint32_t>(z_flips[b * s + q]) << q;
        BlockOutcome oc = inner_readout(code, pattern);
        out.flip[b] = static_cast<uint8_t>(oc.flip);
        out.erased[b] = oc.erased;
    }
}

void Decoder::outer_syndrome(const BlockReadout& readout, std::vector<uint8_t>& defects) const {
    defects.assign(nc_, 0);
    for (int b = 0; b < lat_->num_primal(); ++b) {
        if (!readout.flip[b]) continue;
        auto cs = lat_->checks_of_primal(b);
        defects[cs[0]] ^= 1;
        if (cs[1] >= 0) defects[cs[1]] ^= 1;
    }
}

int Decoder::find(int x) {
    while (uf_[x] != x) {
        uf_[x] = uf_[uf_[x]];
        x = uf_[x];
    }
    return x;
}

void Decoder::build_components(const std::vector<uint8_t>& erased) {
    const int nodes = nc_ + (bnode_ >= 0 ? 1 : 0);
    uf_.resize(nodes);
    for (int i = 0; i < nodes; ++i) uf_[i] = i;
    for (int b = 0; b < lat_->num_primal(); ++b) {
        if (!erased[b]) continue;
        auto cs = lat_->checks_of_primal(b);
        int u = cs[0];
        int v = cs[1] >= 0 ? cs[1] : bnode_;
        int ru = find(u), rv = find(v);
        if (ru != rv) uf_[std::max(ru, rv)] = std::min(ru, rv);
    }
    comp_of_.assign(nodes, -1);
    comp_rep_.clear();
    n_comps_ = 0;
    for (int i = 0; i < nodes; ++i) {
        int r = find(i);
        if (comp_of_[r] < 0) {
            comp_of_[r] = n_comps_++;
            comp_rep_.push_back(r);
        }
        comp_of_[i] = comp_of_[r];
    }
    boundary_comp_ = bnode_ >= 0 ? comp_of_[bnode_] : -1;
    // Chains matched into the boundary component must terminate on the
    // boundary itself, so its trees and anchors are rooted at the virtual node.
    if (boundary_comp_ >= 0) comp_rep_[boundary_comp_] = bnode_;
    comp_parity_.assign(n_comps_, 0);
    for (int c = 0; c < nc_; ++c)
        if (defect_[c]) comp_parity_[comp_of_[c]] ^= 1;
}

void Decoder::build_contracted_graph(const std::vector<uint8_t>& erased) {
    const int npb = lat_->num_primal();
    adj_start_.assign(n_comps_ + 1, 0);
    for (int b = 0; b < npb; ++b) {
        if (erased[b]) continue;
        auto cs = lat_->checks_of_primal(b);
        int ca = comp_of_[cs[0]];
        int cb = cs[1] >= 0 ? comp_of_[cs[1]] : boundary_comp_;
        if (cb < 0 || ca == cb) continue;
        ++adj_start_[ca + 1];
        ++adj_start_[cb + 1];
    }
    for (int i = 0; i < n_comps_; ++i) adj_start_[i + 1] += adj_start_[i];
    adj_comp_.resize(adj_start_[n_comps_]);
    adj_block_.resize(adj_start_[n_comps_]);
    std::vector<int> fill(adj_start_.begin(), adj_start_.end() - 1);
    for (int b = 0; b < npb; ++b) {
        if (erased[b]) continue;
        auto cs = lat_->checks_of_primal(b);
        int ca = comp_of_[cs[0]];
        int cb = cs[1] >= 0 ? comp_of_[cs[1]] : boundary_comp_;
        if (cb < 0 || ca == cb) continue;
        adj_comp_[fill[ca]] = cb;
        adj_block_[fill[ca]++] = b;
        adj_comp_[fill[cb]] = ca;
        adj_block_[fill[cb]++] = b;
    }
}

void Decoder::build_erasure_trees(const std::vector<uint8_t>& erased) {
    const int nodes = nc_ + (bnode_ >= 0 ? 1 : 0);
    tree_parent_check_.assign(nodes, -1);
    tree_parent_block_.assign(nodes, -1);
    // adjacency over erased blocks only, built sparsely
    std::vector<std::pair<int, int>> incident;  // (check-or-boundary, block), twice per block
    incident.reserve(64);
    std::vector<int> head(nodes, -1), nxt, to, via;
    for (int b = 0; b < lat_->num_primal(); ++b) {
        if (!erased[b]) continue;
        auto cs = lat_->checks_of_primal(b);
        int u = cs[0];
        int v = cs[1] >= 0 ? cs[1] : bnode_;
        nxt.push_back(head[u]);
        head[u] = static_cast<int>(to.size());
        to.push_back(v);
        via.push_back(b);
        nxt.push_back(head[v]);
        head[v] = static_cast<int>(to.size());
        to.push_back(u);
        via.push_back(b);
    }
    // BFS from each multi-node component's representative
    std::vector<int>& q = bfs_queue_;
    std::vector<uint8_t> seen(nodes, 0);
    for (int comp = 0; comp < n_comps_; ++comp) {
        int rep = comp_rep_[comp];
        if (head[rep] < 0 && comp != boundary_comp_) continue;  // singleton
        q.clear();
        q.push_back(rep);
        seen[rep] = 1;
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int e = head[u]; e >= 0; e = nxt[e]) {
                int v = to[e];
                if (seen[v]) continue;
                seen[v] = 1;
                tree_parent_check_[v] = u;
                tree_parent_block_[v] = via[e];
                q.push_back(v);
            }
        }
    }
}

void Decoder::bfs(int source_comp, std::vector<int>& dist, std::vector<int>& parent_comp,
                  std::vector<int>& parent_block) {
    dist.assign(n_comps_, -1);
    parent_comp.assign(n_comps_, -1);
    parent_block.assign(n_comps_, -1);
    std::vector<int>& q = bfs_queue_;
    q.clear();
    q.push_back(source_comp);
    dist[source_comp] = 0;
    for (size_t h = 0; h < q.size(); ++h) {
        int u = q[h];
        for (int e = adj_start_[u]; e < adj_start_[u + 1]; ++e) {
            int v = adj_comp_[e];
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            parent_comp[v] = u;
            parent_block[v] = adj_block_[e];
            q.push_back(v);
        }
    }
}

void Decoder::xor_tree_path(int check, std::vector<uint8_t>& corr) const {
    int u = check;
    while (tree_parent_block_[u] >= 0) {
        corr[tree_parent_block_[u]] ^= 1;
        u = tree_parent_check_[u];
    }
}

DecodeResult Decoder::decode_and_judge(const BlockReadout& readout) {
    DecodeResult result;
    const int npb = lat_->num_primal();
    outer_syndrome(readout, defect_);
    corr_.assign(npb, 0);

    build_components(readout.erased);

    // Matchable nodes: odd-parity components, the boundary excluded.
    match_nodes_.clear();
    for (int c = 0; c < n_comps_; ++c)
        if (comp_parity_[c] && c != boundary_comp_) match_nodes_.push_back(c);
    const int k = static_cast<int>(match_nodes_.size());
    if (bnode_ < 0 && (k & 1))
        throw std::logic_error("odd defect parity on the torus");

    build_erasure_trees(readout.erased);

    // Every component absorbs its own defects into its representative.
    for (int c = 0; c < nc_; ++c)
        if (defect_[c]) xor_tree_path(c, corr_);

    bool any_erasure =
        std::any_of(readout.erased.begin(), readout.erased.end(), [](uint8_t e) { return e != 0; });

    if (k > 0) {
        const bool with_boundary = bnode_ >= 0;
        const int n_nodes = with_boundary ? 2 * k : k;
        wmat_.assign(static_cast<size_t>(n_nodes) * n_nodes, 0);

        const bool free_path = any_erasure && metric_ == ErasureMetric::free_path;
        const bool cluster = any_erasure && metric_ == ErasureMetric::cluster_manhattan;
        std::vector<int> bdist(k, 0);

        // Member checks of each matchable supercheck (cluster metric), and
        // the representative (u, v) pair realizing each pairwise weight.
        std::vector<std::vector<int>> members;
        std::vector<int> best_u, best_v;
        if (cluster) {
            std::vector<int> node_of_comp(n_comps_, -1);
            for (int i = 0; i < k; ++i) node_of_comp[match_nodes_[i]] = i;
            members.assign(k, {});
            for (int c = 0; c < nc_; ++c) {
                int node = node_of_comp[comp_of_[c]];
                if (node >= 0) members[node].push_back(c);
            }
            best_u.assign(static_cast<size_t>(k) * k, -1);
            best_v.assign(static_cast<size_t>(k) * k, -1);
            for (int i = 0; i < k; ++i) {
                if (with_boundary) {
                    int bd = lat_->boundary_distance(members[i][0]);
                    int bu = members[i][0];
                    for (int u : members[i]) {
                        int d = lat_->boundary_distance(u);
                        if (d < bd) {
                            bd = d;
                            bu = u;
                        }
                    }
                    bdist[i] = bd;
                    best_u[static_cast<size_t>(i) * k + i] = bu;  // boundary argmin
                }
                for (int j = i + 1; j < k; ++j) {
                    int dmin = -1, um = -1, vm = -1;
                    for (int u : members[i])
                        for (int v : members[j]) {
                            int d = lat_->manhattan(u, v);
                            if (dmin < 0 || d < dmin) {
                                dmin = d;
                                um = u;
                                vm = v;
                            }
                        }
                    wmat_[static_cast<size_t>(i) * n_nodes + j] = dmin;
                    wmat_[static_cast<size_t>(j) * n_nodes + i] = dmin;
                    best_u[static_cast<size_t>(i) * k + j] = um;
                    best_v[static_cast<size_t>(i) * k + j] = vm;
                }
            }
        } else if (free_path) {
            build_contracted_graph(readout.erased);
            std::vector<int> pc, pb, dist;
            for (int i = 0; i < k; ++i) {
                bfs(match_nodes_[i], dist, pc, pb);
                if (with_boundary) bdist[i] = dist[boundary_comp_];
                for (int j = 0; j < k; ++j)
                    wmat_[static_cast<size_t>(i) * n_nodes + j] = dist[match_nodes_[j]];
            }
        } else {
            for (int i = 0; i < k; ++i) {
                int ci = comp_rep_[match_nodes_[i]];
                for (int j = 0; j < k; ++j)
                    wmat_[static_cast<size_t>(i) * n_nodes + j] =
                        lat_->manhattan(ci, comp_rep_[match_nodes_[j]]);
                if (with_boundary) bdist[i] = lat_->boundary_distance(ci);
            }
        }
        if (with_boundary) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    // defect i <-> boundary copy j always costs bdist[i];
                    // copies pair off among themselves for free
                    wmat_[static_cast<size_t>(i) * n_nodes + (k + j)] = bdist[i];
                    wmat_[static_cast<size_t>(k + j) * n_nodes + i] = bdist[i];
                    wmat_[static_cast<size_t>(k + i) * n_nodes + (k + j)] = 0;
                }
        }

        const std::vector<int>& mate = matcher_.solve(n_nodes, wmat_);
        result.matching_weight = matcher_.total_weight();

        // Realize each matched pair as a block chain anchored at the
        // component representatives (where the defect parities were absorbed).
        std::vector<int> pc, pb, dist;
        for (int i = 0; i < k; ++i) {
            int j = mate[i];
            if (j < i) continue;  // each pair once (boundary copies have j >= k)
            bool to_boundary = j >= k;
            if (cluster) {
                if (to_boundary) {
                    int u = best_u[static_cast<size_t>(i) * k + i];
                    xor_tree_path(u, corr_);
                    xor_boundary_path(u);
                } else {
                    int u = best_u[static_cast<size_t>(i) * k + j];
                    int v = best_v[static_cast<size_t>(i) * k + j];
                    xor_tree_path(u, corr_);
                    xor_tree_path(v, corr_);
                    xor_manhattan_path(u, v);
                }
            } else if (free_path) {
                // Walk parent pointers from the target back to the source.
                // Each traversed block attaches to two components; tree paths
                // tie the attachment points to the representatives so the
                // chain boundary telescopes.
                int target_comp = to_boundary ? boundary_comp_ : match_nodes_[j];
                bfs(match_nodes_[i], dist, pc, pb);
                for (int cur = target_comp; cur != match_nodes_[i]; cur = pc[cur]) {
                    int blk = pb[cur];
                    corr_[blk] ^= 1;
                    auto cs = lat_->checks_of_primal(blk);
                    int u = cs[0];
                    int v = cs[1] >= 0 ? cs[1] : bnode_;
                    int in_cur = (comp_of_[u] == cur) ? u : v;
                    int in_parent = (in_cur == u) ? v : u;
                    xor_tree_path(in_cur, corr_);
                    xor_tree_path(in_parent, corr_);
                }
            } else if (to_boundary) {
                xor_boundary_path(comp_rep_[match_nodes_[i]]);
            } else {
                xor_manhattan_path(comp_rep_[match_nodes_[i]], comp_rep_[match_nodes_[j]]);
            }
        }
        result.matched_nodes = k;
    }

    // The correction must clear the syndrome.
    std::vector<uint8_t> resid(nc_, 0);
    for (int b = 0; b < npb; ++b) {
        if (!corr_[b]) continue;
        auto cs = lat_->checks_of_primal(b);
        resid[cs[0]] ^= 1;
        if (cs[1] >= 0) resid[cs[1]] ^= 1;
    }
    for (int c = 0; c < nc_; ++c)
        if (resid[c] != defect_[c]) throw std::logic_error("correction leaves residual syndrome");

    result.failure = failure_on_cut(readout, lat_->logical_cut());
    return result;
}

bool Decoder::failure_on_cut(const BlockReadout& readout, const std::vector<int>& cut) const {
    int parity = 0;
    for (int b : cut) parity ^= (readout.flip[b] ^ corr_[b]);
    return parity != 0;
}

int Decoder::pair_distance(const std::vector<uint8_t>& erased, int check_a, int check_b) {
    bool any = std::any_of(erased.begin(), erased.end(), [](uint8_t e) { return e != 0; });
    if (!any) {
        if (check_b == kBoundary) return lat_->boundary_distance(check_a);
        return lat_->manhattan(check_a, check_b);
    }
    defect_.assign(nc_, 0);
    build_components(erased);
    build_contracted_graph(erased);
    std::vector<int> dist, pc, pb;
    bfs(comp_of_[check_a], dist, pc, pb);
    int target = check_b == kBoundary ? boundary_comp_ : comp_of_[check_b];
    return dist[target];
}

std::string Decoder::debug_dump_json(const BlockReadout& readout,
                                     const DecodeResult& result) const {
    nlohmann::ordered_json j;
    j["flips"] = readout.flip;
    j["erased"] = readout.erased;
    std::vector<uint8_t> defects(nc_, 0);
    outer_syndrome(readout, const_cast<std::vector<uint8_t>&>(defects));
    j["defects"] = defects;
    j["correction"] = corr_;
    j["matched_nodes"] = result.matched_nodes;
    j["matching_weight"] = result.matching_weight;
    j["failure"] = result.failure;
    return j.dump();
}

}  // namespace ccsim
