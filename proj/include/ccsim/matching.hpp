#pragma once

#include <cstdint>
#include <vector>

namespace ccsim {

// Exact minimum-weight perfect matching on a dense graph, via the primal-dual
// blossom algorithm (O(V^3)). Weights are non-negative integers; the graph is
// treated as complete. The instance is reusable to avoid reallocation in hot
// loops.
class BlossomMatcher {
  public:
    // weights: row-major n*n symmetric matrix, weights[i*n+j] >= 0.
    // Returns mate[i] = j. n must be even (a perfect matching must exist).
    const std::vector<int>& solve(int n, const std::vector<int64_t>& weights);

    int64_t total_weight() const { return total_weight_; }

  private:
    struct Edge {
        int u = 0, v = 0;
        int64_t w = 0;
    };

    int64_t edge_delta(const Edge& e) const;
    void update_slack(int u, int x);
    void set_slack(int x);
    void queue_push(int x);
    void set_st(int x, int b);
    int get_pr(int b, int xr);
    void set_match(int u, int v);
    void augment(int u, int v);
    int get_lca(int u, int v);
    void add_blossom(int u, int lca, int v);
    void expand_blossom(int b);
    bool on_found_edge(const Edge& e);
    bool grow_and_augment();

    Edge& g(int u, int v) { return g_[static_cast<size_t>(u) * slots_ + v]; }
    const Edge& g(int u, int v) const { return g_[static_cast<size_t>(u) * slots_ + v]; }
    int& flower_from(int b, int x) { return flower_from_[static_cast<size_t>(b) * (n_ + 1) + x]; }

    int n_ = 0, n_x_ = 0, slots_ = 0;
    std::vector<Edge> g_;
    std::vector<int64_t> lab_;
    std::vector<int> match_, slack_, st_, pa_, S_, vis_, flower_from_;
    std::vector<std::vector<int>> flower_;
    std::vector<int> queue_;
    size_t queue_head_ = 0;
    int vis_stamp_ = 0;
    int64_t total_weight_ = 0;
    std::vector<int> mate_;
};

// All perfect matchings of {0..n-1} enumerated recursively; used as the
// test-time oracle against the blossom matcher.
int64_t brute_force_min_perfect_matching(int n, const std::vector<int64_t>& weights,
                                         std::vector<int>* mate_out = nullptr);

}  // namespace ccsim
