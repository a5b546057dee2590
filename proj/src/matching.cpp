#include "ccsim/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ccsim {

namespace {
constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
}

// Internally this is a maximum-weight matching solver over duals
// lab[u] + lab[v] >= 2*w(u,v); the public entry point flips the sign by
// replacing w with (w_max + 1 - w), which on a complete graph with positive
// weights forces a perfect matching of minimum original weight.

int64_t BlossomMatcher::edge_delta(const Edge& e) const {
    return lab_[e.u] + lab_[e.v] - g(e.u, e.v).w * 2;
}

void BlossomMatcher::update_slack(int u, int x) {
    if (!slack_[x] || edge_delta(g(u, x)) < edge_delta(g(slack_[x], x))) slack_[x] = u;
}

void BlossomMatcher::set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
        if (g(u, x).w > 0 && st_[u] != x && S_[st_[u]] == 0) update_slack(u, x);
}

void BlossomMatcher::queue_push(int x) {
    if (x <= n_) {
        queue_.push_back(x);
    } else {
        for (int i : flower_[x]) queue_push(i);
    }
}

void BlossomMatcher::set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
        for (int i : flower_[x]) set_st(i, b);
}

int BlossomMatcher::get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                              flower_[b].begin());
    if (pr & 1) {
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
}

void BlossomMatcher::set_match(int u, int v) {
    match_[u] = g(u, v).v;
    if (u <= n_) return;
    Edge e = g(u, v);
    int xr = flower_from(u, e.u);
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
}

void BlossomMatcher::augment(int u, int v) {
    for (;;) {
        int xnv = st_[match_[u]];
        set_match(u, v);
        if (!xnv) return;
        set_match(xnv, st_[pa_[xnv]]);
        u = st_[pa_[xnv]];
        v = xnv;
    }
}

int BlossomMatcher::get_lca(int u, int v) {
    for (++vis_stamp_; u || v; std::swap(u, v)) {
        if (!u) continue;
        if (vis_[u] == vis_stamp_) return u;
        vis_[u] = vis_stamp_;
        u = st_[match_[u]];
        if (u) u = st_[pa_[u]];
    }
    return 0;
}

void BlossomMatcher::add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    S_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
        flower_[b].push_back(x);
        flower_[b].push_back(y = st_[match_[x]]);
        queue_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
        flower_[b].push_back(x);
        flower_[b].push_back(y = st_[match_[x]]);
        queue_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) g(b, x).w = g(x, b).w = 0;
    for (int x = 1; x <= n_; ++x) flower_from(b, x) = 0;
    for (int xs : flower_[b]) {
        for (int x = 1; x <= n_x_; ++x)
            if (g(b, x).w == 0 || edge_delta(g(xs, x)) < edge_delta(g(b, x))) {
                g(b, x) = g(xs, x);
                g(x, b) = g(x, xs);
            }
        for (int x = 1; x <= n_; ++x)
            if (flower_from(xs, x)) flower_from(b, x) = xs;
    }
    set_slack(b);
}

void BlossomMatcher::expand_blossom(int b) {
    for (int i : flower_[b]) set_st(i, i);
    int xr = flower_from(b, g(b, pa_[b]).u);
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
        int xs = flower_[b][i];
        int xns = flower_[b][i + 1];
        pa_[xs] = g(xns, xs).u;
        S_[xs] = 1;
        S_[xns] = 0;
        slack_[xs] = 0;
        set_slack(xns);
        queue_push(xns);
    }
    S_[xr] = 1;
    pa_[xr] = pa_[b];
    for (int i = pr + 1; i < static_cast<int>(flower_[b].size()); ++i) {
        int xs = flower_[b][i];
        S_[xs] = -1;
        set_slack(xs);
    }
    st_[b] = 0;
}

bool BlossomMatcher::on_found_edge(const Edge& e) {
    int u = st_[e.u], v = st_[e.v];
    if (S_[v] == -1) {
        pa_[v] = e.u;
        S_[v] = 1;
        int nu = st_[match_[v]];
        slack_[v] = slack_[nu] = 0;
        S_[nu] = 0;
        queue_push(nu);
    } else if (S_[v] == 0) {
        int lca = get_lca(u, v);
        if (!lca) {
            augment(u, v);
            augment(v, u);
            return true;
        }
        add_blossom(u, lca, v);
    }
    return false;
}

bool BlossomMatcher::grow_and_augment() {
    std::fill(S_.begin() + 1, S_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
    queue_.clear();
    queue_head_ = 0;
    for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && !match_[x]) {
            pa_[x] = 0;
            S_[x] = 0;
            queue_push(x);
        }
    if (queue_.size() == queue_head_) return false;
    for (;;) {
        while (queue_head_ < queue_.size()) {
            int u = queue_[queue_head_++];
            if (S_[st_[u]] == 1) continue;
            for (int v = 1; v <= n_; ++v)
                if (g(u, v).w > 0 && st_[u] != st_[v]) {
                    if (edge_delta(g(u, v)) == 0) {
                        if (on_found_edge(g(u, v))) return true;
                    } else {
                        update_slack(u, st_[v]);
                    }
                }
        }
        int64_t d = kInf;
        for (int b = n_ + 1; b <= n_x_; ++b)
            if (st_[b] == b && S_[b] == 1) d = std::min(d, lab_[b] / 2);
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && slack_[x]) {
                if (S_[x] == -1)
                    d = std::min(d, edge_delta(g(slack_[x], x)));
                else if (S_[x] == 0)
                    d = std::min(d, edge_delta(g(slack_[x], x)) / 2);
            }
        for (int u = 1; u <= n_; ++u) {
            if (S_[st_[u]] == 0) {
                if (lab_[u] <= d) return false;
                lab_[u] -= d;
            } else if (S_[st_[u]] == 1) {
                lab_[u] += d;
            }
        }
        for (int b = n_ + 1; b <= n_x_; ++b)
            if (st_[b] == b) {
                if (S_[b] == 0)
                    lab_[b] += d * 2;
                else if (S_[b] == 1)
                    lab_[b] -= d * 2;
            }
        queue_.clear();
        queue_head_ = 0;
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                edge_delta(g(slack_[x], x)) == 0)
                if (on_found_edge(g(slack_[x], x))) return true;
        for (int b = n_ + 1; b <= n_x_; ++b)
            if (st_[b] == b && S_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
}

const std::vector<int>& BlossomMatcher::solve(int n, const std::vector<int64_t>& weights) {
    if (n % 2 != 0) throw std::invalid_argument("perfect matching needs an even node count");
    mate_.assign(n, -1);
    if (n == 0) {
        total_weight_ = 0;
        return mate_;
    }

    n_ = n;
    n_x_ = n;
    slots_ = 2 * n + 1;
    g_.assign(static_cast<size_t>(slots_) * slots_, Edge{});
    lab_.assign(slots_, 0);
    match_.assign(slots_, 0);
    slack_.assign(slots_, 0);
    st_.assign(slots_, 0);
    pa_.assign(slots_, 0);
    S_.assign(slots_, -1);
    vis_.assign(slots_, 0);
    vis_stamp_ = 0;
    flower_from_.assign(static_cast<size_t>(slots_) * (n + 1), 0);
    flower_.assign(slots_, {});

    int64_t w_orig_max = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) {
                if (weights[static_cast<size_t>(u) * n + v] < 0)
                    throw std::invalid_argument("matching weights must be non-negative");
                w_orig_max = std::max(w_orig_max, weights[static_cast<size_t>(u) * n + v]);
            }

    // Flip to a maximization problem with strictly positive weights.
    int64_t w_max = 0;
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v) {
            int64_t w = (u == v) ? 0
                                 : w_orig_max + 1 -
                                       weights[static_cast<size_t>(u - 1) * n + (v - 1)];
            g(u, v) = Edge{u, v, w};
            w_max = std::max(w_max, w);
        }
    for (int u = 0; u <= n; ++u) st_[u] = u;
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v) flower_from(u, v) = (u == v) ? u : 0;
    for (int u = 1; u <= n; ++u) lab_[u] = w_max;

    while (grow_and_augment()) {
    }

    total_weight_ = 0;
    for (int u = 1; u <= n; ++u) {
        if (!match_[u]) throw std::logic_error("blossom matcher failed to find a perfect matching");
        mate_[u - 1] = match_[u] - 1;
        if (match_[u] > u)
            total_weight_ += weights[static_cast<size_t>(u - 1) * n + (match_[u] - 1)];
    }
    return mate_;
}

int64_t brute_force_min_perfect_matching(int n, const std::vector<int64_t>& weights,
                                         std::vector<int>* mate_out) {
    if (n == 0) {
        if (mate_out) mate_out->clear();
        return 0;
    }
    std::vector<int> mate(n, -1), best_mate;
    int64_t best = kInf;
    // Always pair the lowest unmatched vertex first; n <= 16 in tests.
    auto rec = [&](auto&& self, uint32_t used, int64_t acc) -> void {
        if (acc >= best) return;
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (!((used >> i) & 1)) {
                u = i;
                break;
            }
        if (u < 0) {
            best = acc;
            best_mate = mate;
            return;
        }
        for (int v = u + 1; v < n; ++v) {
            if ((used >> v) & 1) continue;
            mate[u] = v;
            mate[v] = u;
            self(self, used | (1u << u) | (1u << v),
                 acc + weights[static_cast<size_t>(u) * n + v]);
            mate[u] = mate[v] = -1;
        }
    };
    rec(rec, 0, 0);
    if (mate_out) *mate_out = best_mate;
    return best;
}

}  // namespace ccsim
