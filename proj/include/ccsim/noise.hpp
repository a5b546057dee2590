#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/rng.hpp"

namespace ccsim {

enum class NoiseModel { phenomenological, circuit_level, biased_z, pauli_erasure };

std::string noise_model_name(NoiseModel m);
NoiseModel noise_model_from_name(const std::string& name);

struct NoiseSpec {
    NoiseModel model = NoiseModel::phenomenological;
    double p = 0.0;
    // Per-qubit-position rate multipliers within a block (size s or empty).
    // Used by the biased-noise reduction, which is a heterogeneous
    // phenomenological model.
    std::vector<double> rate_multipliers;
    // pauli_erasure model only: explicit rates (p is unused).
    double p_pauli = 0.0;
    double p_erase = 0.0;
    bool include_idle_noise = true;

    void validate() const;
};

// Per-physical-qubit X/Z flip bits for one trial.
struct PauliFrame {
    std::vector<uint8_t> x_bits;
    std::vector<uint8_t> z_bits;

    explicit PauliFrame(size_t n = 0) : x_bits(n, 0), z_bits(n, 0) {}
    size_t size() const { return x_bits.size(); }
    void clear() {
        std::fill(x_bits.begin(), x_bits.end(), 0);
        std::fill(z_bits.begin(), z_bits.end(), 0);
    }
};

// Single-qubit depolarizing channel, Eq.-(5) normalization: X, Y, Z each with
// probability p/2, so the marginal X rate and the marginal Z rate both equal p.
// Requires 0 <= p <= 2/3.
void sample_single_depolarizing(PauliFrame& frame, size_t qubit, double p, Rng& rng);

// Two-qubit depolarizing: each of the 15 nontrivial two-qubit Paulis with
// probability p/15.
void sample_two_qubit_depolarizing(PauliFrame& frame, size_t a, size_t b, double p, Rng& rng);

// Fully Z-biased two-qubit channel: ZZ, ZI, IZ with probability p/3 each.
void sample_biased_two_qubit(PauliFrame& frame, size_t a, size_t b, double p, Rng& rng);

// I.i.d. Z flips over `n_blocks` blocks of `s` qubits at rate p per qubit,
// optionally scaled per qubit position by `multipliers` (size s). Returns a
// flat bit vector of length n_blocks * s.
void sample_phenomenological_flips(std::vector<uint8_t>& flips, int n_blocks, int s, double p,
                                   const std::vector<double>& multipliers, Rng& rng);

}  // namespace ccsim
