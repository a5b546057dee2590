#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccsim/decoder.hpp"
#include "ccsim/noise.hpp"
#include "ccsim/schedule.hpp"

namespace ccsim {

// Sparse Z pattern at the block level: block id -> mask over the block qubits.
using ZPattern = std::map<int, uint32_t>;

// Conjugates the frame through every CZ at steps >= from_step: X on one leg
// of a gate toggles Z on the other leg; Z bits commute through.
void propagate(PauliFrame& frame, const GateSchedule& schedule, int from_step);

// Minimum-total-Z-weight representative of `pattern` over products of the
// cluster stabilizers of its support blocks (brute force over the 2^k subset
// lattice) combined with per-block reductions by the inner code's Z-type
// stabilizer group. Ties break lexicographically by block index, then qubit.
ZPattern canonicalize(const Lattice& lattice, const InnerCode& code, const ZPattern& pattern);

// One enumerated circuit-level fault and what it propagates to.
struct FaultReport {
    std::string label;        // "X", "Z" ... on a named qubit, or a two-qubit Pauli
    int step = 0;             // gate step (two-qubit faults) or timestep boundary
    bool after_gate = true;   // two-qubit faults fire after their gate
    ZPattern literal_primal;  // propagated Z pattern on the primal sublattice
    ZPattern literal_dual;
    ZPattern canonical;       // canonicalized primal+dual pattern
    bool convertible = false;
    bool decoder_failure = false;
};

struct DetectabilityReport {
    std::string code;
    SchedulePattern pattern;
    bool all_convertible = true;
    std::vector<FaultReport> faults;
    std::string first_offender;  // empty when all convertible

    std::string to_json() const;
    std::string to_text() const;
};

// Enumerates every single-qubit Pauli at every timestep boundary on one
// representative block of each sublattice, plus all 15 two-qubit Paulis after
// every CZ touching those blocks, propagates each fault through the given
// schedule on an L=4 torus, and decides convertibility: the undetected block
// flips must be clearable into the erased set by a homologically trivial
// cycle.
DetectabilityReport detectability_check(const std::string& code_name,
                                        SchedulePattern pattern = SchedulePattern::fig5,
                                        int L = 4);
DetectabilityReport detectability_check_code(const InnerCode& code,
                                             SchedulePattern pattern = SchedulePattern::fig5,
                                             int L = 4);

// Appendix-style propagation table of the canonical effective errors for the
// X_C / X_C Z_D / Z_D faults of each step, under both fault-time conventions
// (fault present when the step's gate fires, or injected just after it).
struct PropagationRow {
    std::string error;           // X_C, X_C Z_D, Z_D
    int step = 1;                // 1-based
    int direction = 0;           // 0..3, the central block's engagement order
    ZPattern canonical_before;   // fault entering the step
    ZPattern canonical_after;    // fault after the step's gate
    std::string before_text;     // compass rendering of the two forms
    std::string after_text;
};

std::vector<PropagationRow> propagation_table(const std::string& code_name, int L = 4);

// Per-direction Z weights of a pattern around a central block: weights[d] is
// the Z weight on the neighbor engaged d-th (d = 0..3) by the schedule.
std::array<int, 4> direction_weights(const Lattice& lattice, const GateSchedule& schedule,
                                     int center_block, const ZPattern& pattern);

std::string propagation_table_text(const std::vector<PropagationRow>& rows);

// Bounded search for a C-detectable round ordering of the 311_2 gate pattern:
// tries the collision-free two-round decompositions of its four physical CZs
// in both orders and returns the first ordering that passes the checker.
std::vector<CzRound> search_detectable_311_2_rounds();

}  // namespace ccsim
