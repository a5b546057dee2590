#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccsim {

// Effective outer-level rates of the 211 scheme under per-qubit Z flips at
// rate p: blocks erase at p_E = 2p(1-p); unerased blocks carry an undetected
// logical flip at the conditional rate p_P = p^2 / (1 - 2p(1-p)).
struct EffectiveRates {
    double p_pauli = 0.0;
    double p_erase = 0.0;
};
EffectiveRates effective_rates_211(double p);

struct FitPoint {
    double p = 0.0;
    int L = 0;
    double p_l = 0.0;
    double sigma = 0.0;
};

struct FitResult {
    double p_th = 0.0;
    double nu = 0.0;
    std::vector<double> coeffs;      // A0..A3 of the cubic ansatz
    double p_th_err = 0.0;
    double nu_err = 0.0;
    double chi2 = 0.0;
    int n_points = 0;

    std::string to_json() const;
};

// Finite-size-scaling fit of p_L against a cubic polynomial in
// x = (p - p_th) * L^(1/nu). Weighted least squares in the coefficients,
// derivative-free multi-start search over (p_th, nu), bootstrap errors.
FitResult fit_threshold(const std::vector<FitPoint>& points, uint64_t seed = 12345,
                        int bootstrap_rounds = 200);

// Per-qubit Z-rate multipliers of the biased model: for qubit q,
// (#CZ gates on q) * 2/3 + 4/3. Uniform codes give a constant vector.
std::vector<double> biased_multipliers(const std::string& code_name);

// Biased threshold via the exact counting map: phenomenological threshold
// divided by the uniform multiplier. Non-uniform codes (311_2) need the
// heterogeneous simulation; see biased_threshold_bisection in the CLI layer.
double biased_threshold_uniform(const std::string& code_name, double phen_threshold);
bool biased_multiplier_uniform(const std::string& code_name);

// Leading-order logical rate of the bare bcc scheme (rough-z boundary):
// L^2 * C(L, floor(L/2)) * p^floor(L/2), evaluated in log space.
double overhead_bcc(int L, double p);

// The 211 overhead sum over erasure counts
//   L^2 * sum_N C(L,N) C(L-N, floor((L-N)/2)) 2^N p^(N + 2 floor((L-N)/2))
// plus the printed closed-form bound L^3 C(L, floor(L/2))^2 p^L.
struct Overhead211 {
    double sum = 0.0;    // the N-sum
    double bound = 0.0;  // the closed-form expression
};
Overhead211 overhead_211(int L, double p);

struct SuppressionFit {
    double a = 0.0, b = 0.0, c = 0.0;  // log p_L = a + b L + c L^3
    double residual = 0.0;
    int L_min = 0, L_max = 0;  // range of the fitted data
};

// Least squares of log p_L over the (L, p_L) points at one physical rate.
SuppressionFit fit_suppression(const std::vector<std::pair<int, double>>& points);

// L at which the fitted suppression curve reaches the target logical rate
// (real-valued, by bisection on the monotone branch).
double suppression_solve_L(const SuppressionFit& fit, double target_p_l, bool* extrapolated);

// Spacetime-volume ratio s_c * L_c^2 / (s_ref * L_ref^2) between a scheme and
// the reference, where each L solves its fitted curve at the target rate.
struct OverheadRatio {
    double ratio = 0.0;
    double L_scheme = 0.0;
    double L_reference = 0.0;
    bool extrapolated = false;
};
OverheadRatio overhead_ratio(const SuppressionFit& scheme_fit, int scheme_block_size,
                             const SuppressionFit& reference_fit, int reference_block_size,
                             double target_p_l);

}  // namespace ccsim
