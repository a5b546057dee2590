#include "ccsim/noise.hpp"

#include <stdexcept>

namespace ccsim {

std::string noise_model_name(NoiseModel m) {
    switch (m) {
        case NoiseModel::phenomenological: return "phenomenological";
        case NoiseModel::circuit_level: return "circuit_level";
        case NoiseModel::biased_z: return "biased_z";
        case NoiseModel::pauli_erasure: return "pauli_erasure";
    }
    return "?";
}

NoiseModel noise_model_from_name(const std::string& name) {
    if (name == "phenomenological") return NoiseModel::phenomenological;
    if (name == "circuit_level" || name == "circuit") return NoiseModel::circuit_level;
    if (name == "biased_z" || name == "biased") return NoiseModel::biased_z;
    if (name == "pauli_erasure") return NoiseModel::pauli_erasure;
    throw std::invalid_argument("unknown noise model: " + name);
}

void NoiseSpec::validate() const {
    auto in_range = [](double p, double hi) { return p >= 0.0 && p <= hi; };
    switch (model) {
        case NoiseModel::phenomenological:
            if (!in_range(p, 2.0 / 3.0))
                throw std::invalid_argument("phenomenological p must lie in [0, 2/3]");
            break;
        case NoiseModel::circuit_level:
            if (!in_range(p, 2.0 / 3.0))
                throw std::invalid_argument("circuit-level p must lie in [0, 2/3]");
            break;
        case NoiseModel::biased_z:
            if (!in_range(p, 1.0)) throw std::invalid_argument("biased p must lie in [0, 1]");
            break;
        case NoiseModel::pauli_erasure:
            if (!in_range(p_pauli, 1.0) || !in_range(p_erase, 1.0))
                throw std::invalid_argument("pauli_erasure rates must lie in [0, 1]");
            break;
    }
    if (!rate_multipliers.empty() && model != NoiseModel::phenomenological &&
        model != NoiseModel::biased_z)
        throw std::invalid_argument("rate multipliers only apply to per-qubit Z-flip models");
    for (double m : rate_multipliers)
        if (m < 0.0) throw std::invalid_argument("rate multipliers must be non-negative");
}

void sample_single_depolarizing(PauliFrame& frame, size_t qubit, double p, Rng& rng) {
    if (p < 0.0 || p > 2.0 / 3.0)
        throw std::invalid_argument("depolarizing rate must lie in [0, 2/3]");
    double u = rng.uniform();
    if (u >= 1.5 * p) return;
    if (u < 0.5 * p) {
        frame.x_bits[qubit] ^= 1;  // X
    } else if (u < p) {
        frame.x_bits[qubit] ^= 1;  // Y
        frame.z_bits[qubit] ^= 1;
    } else {
        frame.z_bits[qubit] ^= 1;  // Z
    }
}

void sample_two_qubit_depolarizing(PauliFrame& frame, size_t a, size_t b, double p, Rng& rng) {
    if (p < 0.0 || p > 15.0 / 16.0)
        throw std::invalid_argument("two-qubit depolarizing rate must lie in [0, 15/16]");
    if (!rng.bernoulli(p)) return;
    // Index 1..15 over (P_a, P_b) pairs, P in {I, X, Y, Z}, skipping II.
    uint32_t k = static_cast<uint32_t>(rng.below(15)) + 1;
    uint32_t pa = k & 3, pb = k >> 2;
    frame.x_bits[a] ^= (pa == 1 || pa == 2);
    frame.z_bits[a] ^= (pa == 2 || pa == 3);
    frame.x_bits[b] ^= (pb == 1 || pb == 2);
    frame.z_bits[b] ^= (pb == 2 || pb == 3);
}

void sample_biased_two_qubit(PauliFrame& frame, size_t a, size_t b, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("biased rate must lie in [0, 1]");
    double u = rng.uniform();
    if (u >= p) return;
    if (u < p / 3.0) {
        frame.z_bits[a] ^= 1;  // ZI
    } else if (u < 2.0 * p / 3.0) {
        frame.z_bits[b] ^= 1;  // IZ
    } else {
        frame.z_bits[a] ^= 1;  // ZZ
        frame.z_bits[b] ^= 1;
    }
}

void sample_phenomenological_flips(std::vector<uint8_t>& flips, int n_blocks, int s, double p,
                                   const std::vector<double>& multipliers, Rng& rng) {
    if (!multipliers.empty() && static_cast<int>(multipliers.size()) != s)
        throw std::invalid_argument("rate multiplier vector must have one entry per block qubit");
    flips.assign(static_cast<size_t>(n_blocks) * s, 0);
    if (multipliers.empty()) {
        for (auto& f : flips) f = rng.bernoulli(p);
        return;
    }
    size_t idx = 0;
    for (int b = 0; b < n_blocks; ++b)
        for (int q = 0; q < s; ++q, ++idx) flips[idx] = rng.bernoulli(p * multipliers[q]);
}

}  // namespace ccsim
