#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/inner_code.hpp"
#include "ccsim/lattice.hpp"
#include "ccsim/matching.hpp"

namespace ccsim {

// Per primal block: logical readout bit and whether the inner stage erased it.
struct BlockReadout {
    std::vector<uint8_t> flip;
    std::vector<uint8_t> erased;

    void resize(size_t n) {
        flip.assign(n, 0);
        erased.assign(n, 0);
    }
};

struct DecodeResult {
    bool failure = false;
    int matched_nodes = 0;       // matchable defect nodes after erasure contraction
    int64_t matching_weight = 0;
};

// How matching weights treat erasures. Both contract erased clusters into
// superchecks and match their odd-parity members.
//   cluster_manhattan: weight = least Manhattan distance between any two
//       member checks of the clusters (the supercheck construction).
//   free_path: weight = 0/1-cost shortest path where every erased block is
//       free, allowing paths to tunnel through unrelated erased clusters.
enum class ErasureMetric { cluster_manhattan, free_path };

// Two-stage decoder: inner detect-and-erase (or correct, per code policy),
// then exact minimum-weight perfect matching over cube-check defects with
// Manhattan-norm distances; erased blocks carry no weight.
class Decoder {
  public:
    explicit Decoder(const Lattice& lattice,
                     ErasureMetric metric = ErasureMetric::cluster_manhattan);

    const Lattice& lattice() const { return *lat_; }

    // Inner stage over per-physical-qubit Z flips of the primal sublattice,
    // laid out as flips[primal_sub * s + q].
    void inner_stage(const InnerCode& code, const std::vector<uint8_t>& z_flips,
                     BlockReadout& out) const;

    // Defect bits per primal check (cube parity of block readouts).
    void outer_syndrome(const BlockReadout& readout, std::vector<uint8_t>& defects) const;

    // Full outer decode. Uses the instance's workspace; one Decoder per thread.
    DecodeResult decode_and_judge(const BlockReadout& readout);

    // The correction chosen by the last decode_and_judge call (per primal block).
    const std::vector<uint8_t>& last_correction() const { return corr_; }
    // Failure verdict of the last decode against an arbitrary cut membrane.
    bool failure_on_cut(const BlockReadout& readout, const std::vector<int>& cut) const;

    // Matching-graph distance between two checks given an erasure pattern:
    // Manhattan distance when no erasures, otherwise the 0/1-cost shortest
    // path (erased blocks cost zero). check_b == kBoundary targets the rough
    // boundary. Exposed for tests; the hot path inlines the same machinery.
    static constexpr int kBoundary = -1;
    int pair_distance(const std::vector<uint8_t>& erased, int check_a, int check_b);

    // JSON dump of one decoded trial for golden tests.
    std::string debug_dump_json(const BlockReadout& readout, const DecodeResult& result) const;

  private:
    int find(int x);
    void build_components(const std::vector<uint8_t>& erased);
    void build_contracted_graph(const std::vector<uint8_t>& erased);
    void build_erasure_trees(const std::vector<uint8_t>& erased);
    void bfs(int source_comp, std::vector<int>& dist, std::vector<int>& parent_comp,
             std::vector<int>& parent_block);
    void xor_tree_path(int check, std::vector<uint8_t>& corr) const;
    void xor_manhattan_path(int check_a, int check_b);
    void xor_boundary_path(int check);

    const Lattice* lat_;
    ErasureMetric metric_;
    int nc_ = 0;       // number of real checks
    int bnode_ = -1;   // union-find id of the merged boundary node, or -1

    // Trial workspace.
    std::vector<int> uf_;
    std::vector<uint8_t> defect_;
    std::vector<uint8_t> corr_;
    std::vector<int> comp_of_;       // uf node -> compact component id
    std::vector<int> comp_rep_;      // component id -> uf node of representative
    std::vector<uint8_t> comp_parity_;
    int n_comps_ = 0;
    int boundary_comp_ = -1;
    // contracted graph (CSR over components)
    std::vector<int> adj_start_, adj_comp_, adj_block_;
    // in-component spanning trees over erased blocks (indexed by check;
    // nc_ stands for the virtual boundary node)
    std::vector<int> tree_parent_check_, tree_parent_block_;
    // BFS scratch
    std::vector<int> bfs_dist_, bfs_pcomp_, bfs_pblock_, bfs_queue_;
    std::vector<int> match_nodes_;   // component id per matchable node
    std::vector<int64_t> wmat_;
    BlossomMatcher matcher_;
};

}  // namespace ccsim
