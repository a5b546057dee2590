#include "ccsim/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace ccsim {

namespace {

int odd_count(const std::array<int, 3>& c) {
    return (c[0] & 1) + (c[1] & 1) + (c[2] & 1);
}

// The four CZ classes. A primal face has two odd axes {a, b}; sigma picks the
// axis whose +/- edges fire in classes 0/1, tau the axis for classes 2/3.
// Every dual edge site then also sees the four classes exactly once, which is
// what makes the four-step rounds collision-free.
int sigma_axis(int a, int b) {  // a < b
    if (a == 0 && b == 1) return 1;
    if (a == 0 && b == 2) return 0;
    return 2;  // {y, z}
}
int tau_axis(int a, int b) {
    if (a == 0 && b == 1) return 0;
    if (a == 0 && b == 2) return 2;
    return 1;
}

}  // namespace

std::string boundary_name(Boundary b) {
    return b == Boundary::torus ? "torus" : "periodic_xy_rough_z";
}

Boundary boundary_from_name(const std::string& name) {
    if (name == "torus") return Boundary::torus;
    if (name == "periodic_xy_rough_z" || name == "rough_z") return Boundary::periodic_xy_rough_z;
    throw std::invalid_argument("unknown boundary mode: " + name);
}

Lattice::Lattice(int L, Boundary boundary) : L_(L), boundary_(boundary) {
    if (L < 2) throw std::invalid_argument("lattice size must be at least 2");
    zmax_ = boundary == Boundary::torus ? 2 * L : 2 * L - 1;
    build_blocks();
    build_edges();
    build_checks();
    build_cut();
}

int Lattice::wrap(int c, int axis) const {
    const int n = (axis == 2) ? zmax_ : 2 * L_;
    if (axis == 2 && boundary_ == Boundary::periodic_xy_rough_z)
        return (c < 0 || c >= zmax_) ? -1 : c;
    return ((c % n) + n) % n;
}

int Lattice::block_at(std::array<int, 3> coord) const {
    for (int a = 0; a < 3; ++a) {
        coord[a] = wrap(coord[a], a);
        if (coord[a] < 0) return -1;
    }
    return site_lookup_[(coord[2] * 2 * L_ + coord[1]) * 2 * L_ + coord[0]];
}

void Lattice::build_blocks() {
    site_lookup_.assign(static_cast<size_t>(zmax_) * 2 * L_ * 2 * L_, -1);
    for (int z = 0; z < zmax_; ++z)
        for (int y = 0; y < 2 * L_; ++y)
            for (int x = 0; x < 2 * L_; ++x) {
                std::array<int, 3> c{x, y, z};
                int odd = odd_count(c);
                if (odd != 1 && odd != 2) continue;
                BlockSite site;
                site.coord = c;
                site.primal = (odd == 2);
                if (site.primal) {
                    site.sub_index = static_cast<int>(primal_ids_.size());
                    primal_ids_.push_back(static_cast<int>(blocks_.size()));
                } else {
                    site.sub_index = static_cast<int>(dual_ids_.size());
                    dual_ids_.push_back(static_cast<int>(blocks_.size()));
                }
                site_lookup_[(static_cast<size_t>(z) * 2 * L_ + y) * 2 * L_ + x] =
                    static_cast<int>(blocks_.size());
                blocks_.push_back(site);
            }
}

void Lattice::build_edges() {
    edges_at_dual_.assign(dual_ids_.size() * 4, -1);
    edges_at_primal_.assign(primal_ids_.size() * 4, -1);

    for (int pid : primal_ids_) {
        const BlockSite& p = blocks_[pid];
        int a = -1, b = -1;  // odd axes, a < b
        for (int axis = 0; axis < 3; ++axis)
            if (p.coord[axis] & 1) (a < 0 ? a : b) = axis;
        const int sig = sigma_axis(a, b);

        for (int axis : {a, b})
            for (int sgn : {+1, -1}) {
                std::array<int, 3> dc = p.coord;
                dc[axis] += sgn;
                int did = block_at(dc);
                if (did < 0) continue;  // rough boundary
                CzEdge e;
                e.primal_block = pid;
                e.dual_block = did;
                e.color = static_cast<uint8_t>(axis == sig ? (sgn > 0 ? 0 : 1)
                                                           : (sgn > 0 ? 2 : 3));
                // Compass labels within each endpoint's local plane (u < v):
                // W/E along u, S/N along v.
                {
                    // primal side: edge leaves P along `axis` with sign sgn
                    bool along_first = (axis == std::min(a, b));
                    e.dir_at_primal = along_first ? (sgn > 0 ? Dir::E : Dir::W)
                                                  : (sgn > 0 ? Dir::N : Dir::S);
                    // dual side: even axes of D are the plane; edge leaves D
                    // along `axis` with sign -sgn
                    const BlockSite& d = blocks_[did];
                    int du = -1, dv = -1;
                    for (int ax = 0; ax < 3; ++ax)
                        if (!(d.coord[ax] & 1)) (du < 0 ? du : dv) = ax;
                    bool dual_first = (axis == du);
                    e.dir_at_dual = dual_first ? (sgn > 0 ? Dir::W : Dir::E)
                                               : (sgn > 0 ? Dir::S : Dir::N);
                }
                int idx = static_cast<int>(cz_edges_.size());
                cz_edges_.push_back(e);
                int psub = p.sub_index;
                int dsub = blocks_[did].sub_index;
                if (edges_at_primal_[psub * 4 + e.color] >= 0 ||
                    edges_at_dual_[dsub * 4 + e.color] >= 0)
                    throw std::logic_error("CZ color classes collide");
                edges_at_primal_[psub * 4 + e.color] = idx;
                edges_at_dual_[dsub * 4 + e.color] = idx;
            }
    }

    if (boundary_ == Boundary::torus) {
        for (size_t i = 0; i < edges_at_dual_.size(); ++i)
            if (edges_at_dual_[i] < 0) throw std::logic_error("dual block missing a CZ class");
        for (size_t i = 0; i < edges_at_primal_.size(); ++i)
            if (edges_at_primal_[i] < 0) throw std::logic_error("primal block missing a CZ class");
    }
}

void Lattice::build_checks() {
    block_checks_.assign(primal_ids_.size(), {-1, -1});
    for (int z = 1; z < zmax_; z += 2)
        for (int y = 1; y < 2 * L_; y += 2)
            for (int x = 1; x < 2 * L_; x += 2) {
                Check chk;
                chk.coord = {x, y, z};
                for (int axis = 0; axis < 3; ++axis)
                    for (int sgn : {-1, +1}) {
                        std::array<int, 3> fc = chk.coord;
                        fc[axis] += sgn;
                        int fid = block_at(fc);
                        if (fid < 0 || !blocks_[fid].primal)
                            throw std::logic_error("cube face missing");
                        chk.blocks.push_back(blocks_[fid].sub_index);
                    }
                int cid = static_cast<int>(checks_.size());
                for (int bsub : chk.blocks) {
                    auto& slots = block_checks_[bsub];
                    (slots[0] < 0 ? slots[0] : slots[1]) = cid;
                }
                checks_.push_back(std::move(chk));
            }
    for (size_t i = 0; i < block_checks_.size(); ++i) {
        if (block_checks_[i][0] < 0) throw std::logic_error("primal block outside all checks");
        if (boundary_ == Boundary::torus && block_checks_[i][1] < 0)
            throw std::logic_error("primal block must lie in two checks on the torus");
    }
}

void Lattice::build_cut() {
    cut_ = translated_cut(0);
    in_cut_.assign(primal_ids_.size(), 0);
    for (int bsub : cut_) in_cut_[bsub] = 1;
}

std::vector<int> Lattice::translated_cut(int layer) const {
    if (layer < 0 || layer >= num_cut_layers())
        throw std::invalid_argument("cut layer out of range");
    std::vector<int> cut;
    const int z = 2 * layer;
    for (int pid : primal_ids_) {
        const BlockSite& p = blocks_[pid];
        if (p.coord[2] == z && (p.coord[0] & 1) && (p.coord[1] & 1))
            cut.push_back(p.sub_index);
    }
    return cut;
}

int Lattice::num_cut_layers() const { return L_; }

std::array<int, 3> Lattice::check_pos(int check) const {
    const auto& c = checks_[check].coord;
    return {(c[0] - 1) / 2, (c[1] - 1) / 2, (c[2] - 1) / 2};
}

int Lattice::manhattan(int check_a, int check_b) const {
    auto a = check_pos(check_a), b = check_pos(check_b);
    int d = 0;
    for (int axis = 0; axis < 3; ++axis) {
        int diff = std::abs(a[axis] - b[axis]);
        bool periodic = axis != 2 || boundary_ == Boundary::torus;
        int n = L_;
        if (axis == 2 && boundary_ == Boundary::periodic_xy_rough_z) n = L_ - 1;
        d += periodic ? std::min(diff, n - diff) : diff;
    }
    return d;
}

int Lattice::boundary_distance(int check) const {
    if (boundary_ == Boundary::torus) throw std::logic_error("no boundary on the torus");
    int k = check_pos(check)[2];  // 0 .. L-2
    return std::min(k + 1, L_ - 1 - k);
}

int Lattice::primal_sub_at(std::array<int, 3> grid) const {
    int id = block_at(grid);
    if (id < 0 || !blocks_[id].primal)
        throw std::logic_error("grid coordinate is not a primal block");
    return blocks_[id].sub_index;
}

std::vector<int> Lattice::plaquette(int dual_sub) const {
    int did = dual_ids_[dual_sub];
    const BlockSite& d = blocks_[did];
    std::vector<int> faces;
    for (int axis = 0; axis < 3; ++axis) {
        if (d.coord[axis] & 1) continue;
        for (int sgn : {-1, +1}) {
            std::array<int, 3> fc = d.coord;
            fc[axis] += sgn;
            int fid = block_at(fc);
            if (fid >= 0 && blocks_[fid].primal) faces.push_back(blocks_[fid].sub_index);
        }
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

std::string Lattice::to_json() const {
    nlohmann::ordered_json j;
    j["L"] = L_;
    j["boundary"] = boundary_name(boundary_);
    auto& jb = j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : blocks_) {
        jb.push_back({{"coord", b.coord},
                      {"sublattice", b.primal ? "primal" : "dual"},
                      {"sub_index", b.sub_index}});
    }
    auto& je = j["cz_edges"] = nlohmann::ordered_json::array();
    static const char* dir_names[] = {"W", "E", "S", "N"};
    for (const auto& e : cz_edges_) {
        je.push_back({{"dual", e.dual_block},
                      {"primal", e.primal_block},
                      {"color", e.color},
                      {"dir_at_dual", dir_names[static_cast<int>(e.dir_at_dual)]},
                      {"dir_at_primal", dir_names[static_cast<int>(e.dir_at_primal)]}});
    }
    auto& jc = j["primal_checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks_) jc.push_back({{"coord", c.coord}, {"blocks", c.blocks}});
    j["logical_cut"] = cut_;
    return j.dump();
}

}  // namespace ccsim
