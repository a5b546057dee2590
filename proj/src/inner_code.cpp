#include "ccsim/inner_code.hpp"

#include <bit>
#include <stdexcept>

namespace ccsim {

namespace {

int parity(uint32_t x) { return std::popcount(x) & 1; }

void check_lengths(const InnerCode& code, uint32_t z_flips) {
    if (z_flips >> code.s)
        throw std::invalid_argument("z_flips has bits beyond block size of " + code.name);
}

// Minimum-weight Z correction per syndrome, by enumerating patterns in order
// of increasing weight. Only called for small s at registry construction.
std::vector<uint32_t> build_correction_table(const InnerCode& code) {
    const uint32_t nsynd = 1u << code.num_checks();
    std::vector<uint32_t> table(nsynd, 0);
    std::vector<bool> seen(nsynd, false);
    seen[0] = true;
    int remaining = static_cast<int>(nsynd) - 1;
    for (int w = 1; w <= code.s && remaining > 0; ++w) {
        for (uint32_t pat = 0; pat < (1u << code.s); ++pat) {
            if (std::popcount(pat) != w) continue;
            uint32_t syn = inner_syndrome(code, pat);
            if (!seen[syn]) {
                seen[syn] = true;
                table[syn] = pat;
                --remaining;
            }
        }
    }
    if (remaining > 0)
        throw std::logic_error("incomplete syndrome table for " + code.name);
    return table;
}

// Structural invariants from the code definitions. Runs once per process.
void validate(const InnerCode& code) {
    // logical X support must not lie in the span of the X checks.
    std::vector<uint32_t> basis;
    auto reduce = [&basis](uint32_t v) {
        for (uint32_t b : basis) {
            uint32_t pivot = b & (~b + 1);
            if (v & pivot) v ^= b;
        }
        return v;
    };
    for (uint32_t c : code.x_checks) {
        uint32_t v = reduce(c);
        if (v) basis.push_back(v);
    }
    if (code.logical_x != 0 && reduce(code.logical_x) == 0)
        throw std::logic_error(code.name + ": logical X lies in span of X checks");
    if (parity(code.logical_x & code.logical_z) != 1)
        throw std::logic_error(code.name + ": logical X and Z must anticommute");
    for (uint32_t z : code.z_stabilizers) {
        if (inner_syndrome(code, z) != 0 || parity(z & code.logical_x) != 0)
            throw std::logic_error(code.name + ": Z stabilizer must act trivially on readout");
    }
    if (code.name != "cubic") {
        for (int q = 0; q < code.s; ++q)
            if (inner_syndrome(code, 1u << q) == 0)
                throw std::logic_error(code.name + ": single Z on qubit must be detectable");
    }
    // Every qubit pairing inside a round must be collision-free.
    for (const auto& round : code.cz_rounds) {
        uint32_t used_a = 0, used_b = 0;
        for (auto [i, j] : round.pairs) {
            if ((used_a >> i) & 1 || (used_b >> j) & 1)
                throw std::logic_error(code.name + ": qubit reused within a CZ round");
            used_a |= 1u << i;
            used_b |= 1u << j;
        }
    }
}

std::vector<InnerCode> make_builtin_codes() {
    std::vector<InnerCode> codes;

    // Convention: bit q of a mask refers to qubit q+1 of the paper's naming.

    {
        InnerCode c;
        c.name = "cubic";  // bare bcc cluster state, no concatenation
        c.s = 1;
        c.logical_x = 0b1;
        c.logical_z = 0b1;
        c.detects_all_single_z = false;
        c.policy = InnerPolicy::erase_on_detect;
        c.cz_rounds = {{{{0, 0}}}};
        codes.push_back(c);
    }
    {
        InnerCode c;
        c.name = "211";
        c.s = 2;
        c.x_checks = {0b11};               // XX
        c.logical_x = 0b01;                // XI
        c.logical_z = 0b11;                // ZZ
        c.detects_all_single_z = true;
        c.policy = InnerPolicy::erase_on_detect;
        // Straight pairs, then crossed pairs.
        c.cz_rounds = {{{{0, 0}, {1, 1}}}, {{{0, 1}, {1, 0}}}};
        codes.push_back(c);
    }
    {
        InnerCode c;
        c.name = "311_1";  // three-qubit repetition code
        c.s = 3;
        c.x_checks = {0b011, 0b110};       // XXI, IXX
        c.logical_x = 0b001;               // XII
        c.logical_z = 0b111;               // ZZZ
        c.detects_all_single_z = true;
        // Syndromes localize any single Z, so the block is majority-corrected
        // rather than erased.
        c.policy = InnerPolicy::correct;
        // K_{3,3} gate pattern as three cyclically shifted transversal rounds.
        c.cz_rounds = {{{{0, 0}, {1, 1}, {2, 2}}},
                       {{{0, 1}, {1, 2}, {2, 0}}},
                       {{{0, 2}, {1, 0}, {2, 1}}}};
        codes.push_back(c);
    }
    {
        InnerCode c;
        c.name = "311_2";
        c.s = 3;
        c.x_checks = {0b111};              // XXX
        c.logical_x = 0b001;               // XII
        c.logical_z = 0b101;               // ZIZ
        c.z_stabilizers = {0b110};         // IZZ
        c.detects_all_single_z = true;
        c.policy = InnerPolicy::erase_on_detect;
        // Gate pattern {(1,1),(1,2),(2,1),(3,3)} split into two collision-free
        // rounds. The round order is validated by the detectability checker.
        c.cz_rounds = {{{{0, 1}, {1, 0}, {2, 2}}}, {{{0, 0}}}};
        c.idle_noise_exempt = true;
        codes.push_back(c);
    }
    {
        InnerCode c;
        c.name = "4112";
        c.s = 4;
        // XXXX is the one X-type operator with a deterministic outcome under
        // destructive X readout; X1X2 is a gauge operator whose value is
        // randomized by the neighbors' gauge freedom, so it carries no
        // syndrome information.
        c.x_checks = {0b1111};             // XXXX
        c.logical_x = 0b0011;              // X1X2
        c.logical_z = 0b0101;              // Z1Z3
        c.z_stabilizers = {0b0011, 0b1111};  // readout-trivial Z patterns
        c.detects_all_single_z = true;
        c.policy = InnerPolicy::erase_on_detect;
        c.cz_rounds = {{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}}};
        codes.push_back(c);
    }
    {
        InnerCode c;
        c.name = "713";  // Steane code
        c.s = 7;
        c.x_checks = {0b0001111, 0b1010101, 0b1101100};
        c.logical_x = 0b1111111;
        c.logical_z = 0b1111111;
        c.z_stabilizers = {0b0001111, 0b1010101, 0b1101100};
        c.detects_all_single_z = true;
        // Perfect code: every syndrome identifies a unique single-qubit Z.
        c.policy = InnerPolicy::correct;
        c.cz_rounds = {{{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}}}};
        codes.push_back(c);
    }

    for (auto& c : codes) {
        if (c.policy == InnerPolicy::correct) c.correction = build_correction_table(c);
        validate(c);
    }
    return codes;
}

}  // namespace

int InnerCode::gates_on_qubit(int q) const {
    int n = 0;
    for (const auto& r : cz_rounds)
        for (auto [i, j] : r.pairs)
            if (i == q) ++n;
    return n;
}

uint32_t InnerCode::stabilizer_deposit() const {
    uint32_t deposit = 0;
    for (const auto& r : cz_rounds)
        for (auto [i, j] : r.pairs)
            if ((logical_x >> i) & 1) deposit ^= 1u << j;
    return deposit;
}

uint32_t inner_syndrome(const InnerCode& code, uint32_t z_flips) {
    check_lengths(code, z_flips);
    uint32_t syn = 0;
    for (size_t i = 0; i < code.x_checks.size(); ++i)
        syn |= static_cast<uint32_t>(parity(code.x_checks[i] & z_flips)) << i;
    return syn;
}

InnerReadout inner_decode(const InnerCode& code, uint32_t z_flips) {
    InnerReadout r;
    r.detected = inner_syndrome(code, z_flips) != 0;
    r.logical_flip = parity(code.logical_x & z_flips);
    return r;
}

BlockOutcome inner_readout(const InnerCode& code, uint32_t z_flips) {
    BlockOutcome out;
    uint32_t syn = inner_syndrome(code, z_flips);
    if (code.policy == InnerPolicy::correct) {
        uint32_t corrected = z_flips ^ code.correction[syn];
        out.flip = parity(code.logical_x & corrected);
    } else {
        out.erased = syn != 0;
        out.flip = parity(code.logical_x & z_flips);
    }
    return out;
}

const std::vector<InnerCode>& builtin_codes() {
    static const std::vector<InnerCode> codes = make_builtin_codes();
    return codes;
}

const InnerCode& code_by_name(const std::string& name) {
    for (const auto& c : builtin_codes())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown inner code: " + name);
}

std::vector<std::string> builtin_code_names() {
    std::vector<std::string> names;
    for (const auto& c : builtin_codes()) names.push_back(c.name);
    return names;
}

}  // namespace ccsim
