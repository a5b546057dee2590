#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ccsim {

enum class Boundary { torus, periodic_xy_rough_z };

std::string boundary_name(Boundary b);
Boundary boundary_from_name(const std::string& name);

// Compass label of a CZ edge as seen from one of its endpoints, within that
// block's local plane.
enum class Dir : uint8_t { W = 0, E = 1, S = 2, N = 3 };

struct BlockSite {
    std::array<int, 3> coord;  // integer grid, torus: mod 2L
    bool primal = false;       // primal: exactly two odd coordinates (faces)
    int sub_index = 0;         // dense index within its own sublattice
};

// One CZ edge of the block-level graph. `color` partitions the edges into
// four classes such that every block has exactly one edge per class; the
// gate schedule fires one class per timestep within a round.
struct CzEdge {
    int dual_block = 0;    // index into blocks
    int primal_block = 0;  // index into blocks
    uint8_t color = 0;     // 0..3
    Dir dir_at_dual = Dir::W;
    Dir dir_at_primal = Dir::W;
};

struct Check {
    std::array<int, 3> coord;      // odd-odd-odd cube center
    std::vector<int> blocks;       // incident primal blocks (sub-indices)
};

// Raussendorf bcc lattice. Primal qubits sit on faces (two odd coordinates),
// dual qubits on edges (one odd coordinate); primal parity checks are cubes.
// Decoding works on the primal sublattice, whose check adjacency graph is the
// L^3 cubic lattice with primal blocks as its edges.
class Lattice {
  public:
    Lattice(int L, Boundary boundary);

    int L() const { return L_; }
    Boundary boundary() const { return boundary_; }

    const std::vector<BlockSite>& blocks() const { return blocks_; }
    const std::vector<int>& primal_blocks() const { return primal_ids_; }
    const std::vector<int>& dual_blocks() const { return dual_ids_; }
    int num_primal() const { return static_cast<int>(primal_ids_.size()); }
    int num_dual() const { return static_cast<int>(dual_ids_.size()); }

    const std::vector<CzEdge>& cz_edges() const { return cz_edges_; }
    // Edges indexed by (dual block sub-index, color) and by (primal, color);
    // -1 where the edge is missing at a rough boundary.
    int edge_at_dual(int dual_sub, int color) const { return edges_at_dual_[dual_sub * 4 + color]; }
    int edge_at_primal(int primal_sub, int color) const { return edges_at_primal_[primal_sub * 4 + color]; }

    const std::vector<Check>& checks() const { return checks_; }
    int num_checks() const { return static_cast<int>(checks_.size()); }

    // Incident checks of a primal block, as check indices; second is -1 for a
    // boundary-facing block in rough-z mode (it has a single cube neighbor).
    std::array<int, 2> checks_of_primal(int primal_sub) const { return block_checks_[primal_sub]; }
    bool touches_boundary(int primal_sub) const { return block_checks_[primal_sub][1] < 0; }

    // Check-lattice coordinates (unit spacing) of a check.
    std::array<int, 3> check_pos(int check) const;

    // Number of boundary matching nodes: 0 on the torus, 2 in rough-z mode.
    int num_boundary_nodes() const { return boundary_ == Boundary::torus ? 0 : 2; }

    // Logical observable: the set of primal blocks forming one transverse
    // membrane (all z-normal faces in a given even-z layer). `layer` selects
    // among the translated membranes.
    const std::vector<int>& logical_cut() const { return cut_; }
    std::vector<int> translated_cut(int layer) const;
    int num_cut_layers() const;
    bool in_cut(int primal_sub) const { return in_cut_[primal_sub] != 0; }

    // Periodic Manhattan distance between two checks on the check lattice,
    // and distance from a check to the nearest rough boundary.
    int manhattan(int check_a, int check_b) const;
    int boundary_distance(int check) const;

    // Plaquette of a dual block: the primal blocks adjacent to it (the four
    // faces around one edge form an elementary cycle of the check lattice).
    std::vector<int> plaquette(int dual_sub) const;

    // Primal block sub-index at a raw grid coordinate (wrapped on periodic
    // axes); throws if the site is not a primal block.
    int primal_sub_at(std::array<int, 3> grid) const;

    // Deterministic serialization of the full layout (debugging aid).
    std::string to_json() const;

  private:
    void build_blocks();
    void build_edges();
    void build_checks();
    void build_cut();

    int wrap(int c, int axis) const;
    int block_at(std::array<int, 3> coord) const;

    int L_;
    Boundary boundary_;
    int zmax_;  // grid extent along z (exclusive); 2L on torus
    std::vector<BlockSite> blocks_;
    std::vector<int> primal_ids_, dual_ids_;
    std::vector<int> site_lookup_;
    std::vector<CzEdge> cz_edges_;
    std::vector<int> edges_at_dual_, edges_at_primal_;
    std::vector<Check> checks_;
    std::vector<std::array<int, 2>> block_checks_;
    std::vector<int> cut_;
    std::vector<uint8_t> in_cut_;
};

}  // namespace ccsim
