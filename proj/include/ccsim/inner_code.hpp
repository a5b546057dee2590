#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccsim {

// Readout policy used by the Monte Carlo inner stage. Codes whose X-type
// syndrome pins down a unique minimum-weight Z correction are corrected in
// place; for the others any nonzero syndrome erases the block.
enum class InnerPolicy { erase_on_detect, correct };

// One round of physical CZ gates of a logical CZ between two code blocks:
// a set of disjoint (i, j) qubit pairs, qubit i of one block against qubit j
// of the other. The rounds of a code partition its full gate pattern.
struct CzRound {
    std::vector<std::pair<int, int>> pairs;
};

struct InnerCode {
    std::string name;
    int s = 1;                             // physical qubits per block
    std::vector<uint32_t> x_checks;        // X-type check supports, bit i = qubit i
    uint32_t logical_x = 0;                // support of logical X
    uint32_t logical_z = 0;                // support of logical Z (tests/docs only)
    std::vector<uint32_t> z_stabilizers;   // Z-type stabilizers with trivial readout action
    bool detects_all_single_z = false;
    InnerPolicy policy = InnerPolicy::erase_on_detect;
    std::vector<uint32_t> correction;      // syndrome -> min-weight Z correction mask
    std::vector<CzRound> cz_rounds;        // logical CZ realization, per round
    // The 311_2 schedule leaves two qubits idle for one step per round; the
    // reference noise model ignores those locations, so they are marked exempt.
    bool idle_noise_exempt = false;

    int num_checks() const { return static_cast<int>(x_checks.size()); }
    int gates_per_logical_cz() const {
        int n = 0;
        for (const auto& r : cz_rounds) n += static_cast<int>(r.pairs.size());
        return n;
    }
    // Number of physical CZ gates a given qubit position takes part in, per
    // logical CZ of the block.
    int gates_on_qubit(int q) const;
    // Z pattern the gate pattern deposits on a neighbor block when the
    // logical X is pushed through a logical CZ (the Z side of the block's
    // cluster stabilizer).
    uint32_t stabilizer_deposit() const;
};

struct InnerReadout {
    bool detected = false;
    int logical_flip = 0;
};

// Syndrome of a Z-flip pattern: bit i = parity of overlap with x_checks[i].
uint32_t inner_syndrome(const InnerCode& code, uint32_t z_flips);

// Detect-and-erase semantics: detected iff syndrome is nonzero, flip is the
// raw parity over the logical X support. No correction is attempted here.
InnerReadout inner_decode(const InnerCode& code, uint32_t z_flips);

// Readout as used by the simulation pipeline: applies the code's policy.
// For InnerPolicy::correct the syndrome-indexed correction is applied and the
// block is never erased; otherwise equivalent to inner_decode.
struct BlockOutcome {
    bool erased = false;
    int flip = 0;
};
BlockOutcome inner_readout(const InnerCode& code, uint32_t z_flips);

// The six built-in codes, addressable as cubic, 211, 311_1, 311_2, 4112, 713.
const std::vector<InnerCode>& builtin_codes();
const InnerCode& code_by_name(const std::string& name);
std::vector<std::string> builtin_code_names();

}  // namespace ccsim
