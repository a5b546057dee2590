#include "ccsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ccsim/inner_code.hpp"
#include "ccsim/rng.hpp"
#include "json.hpp"

namespace ccsim {

EffectiveRates effective_rates_211(double p) {
    if (p < 0.0 || p >= 1.0) throw std::invalid_argument("p must lie in [0, 1)");
    EffectiveRates r;
    r.p_erase = 2.0 * p * (1.0 - p);
    r.p_pauli = p * p / (1.0 - 2.0 * p * (1.0 - p));
    return r;
}

namespace {

// Weighted least squares of y against a cubic in x; returns chi^2.
double cubic_wls(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w, std::vector<double>& coeffs) {
    constexpr int k = 4;
    double ata[k][k] = {};
    double atb[k] = {};
    for (size_t i = 0; i < x.size(); ++i) {
        double basis[k] = {1.0, x[i], x[i] * x[i], x[i] * x[i] * x[i]};
        for (int r = 0; r < k; ++r) {
            atb[r] += w[i] * basis[r] * y[i];
            for (int c = 0; c < k; ++c) ata[r][c] += w[i] * basis[r] * basis[c];
        }
    }
    // Gaussian elimination with partial pivoting.
    int idx[k] = {0, 1, 2, 3};
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::fabs(ata[idx[r]][col]) > std::fabs(ata[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        double d = ata[idx[col]][col];
        if (std::fabs(d) < 1e-30) d = 1e-30;
        for (int r = col + 1; r < k; ++r) {
            double f = ata[idx[r]][col] / d;
            for (int c = col; c < k; ++c) ata[idx[r]][c] -= f * ata[idx[col]][c];
            atb[idx[r]] -= f * atb[idx[col]];
        }
    }
    coeffs.assign(k, 0.0);
    for (int col = k - 1; col >= 0; --col) {
        double v = atb[idx[col]];
        for (int c = col + 1; c < k; ++c) v -= ata[idx[col]][c] * coeffs[c];
        double d = ata[idx[col]][col];
        if (std::fabs(d) < 1e-30) d = 1e-30;
        coeffs[col] = v / d;
    }
    double chi2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double fit = coeffs[0] + x[i] * (coeffs[1] + x[i] * (coeffs[2] + x[i] * coeffs[3]));
        chi2 += w[i] * (y[i] - fit) * (y[i] - fit);
    }
    return chi2;
}

struct Objective {
    const std::vector<FitPoint>* pts;
    double p_lo, p_hi;

    double operator()(double p_th, double nu, std::vector<double>* coeffs_out = nullptr) const {
        if (nu < 0.2 || nu > 4.0 || p_th < p_lo || p_th > p_hi)
            return std::numeric_limits<double>::max() / 2;
        std::vector<double> x, y, w;
        x.reserve(pts->size());
        for (const auto& pt : *pts) {
            x.push_back((pt.p - p_th) * std::pow(pt.L, 1.0 / nu));
            y.push_back(pt.p_l);
            double s = pt.sigma > 0 ? pt.sigma : 1e-4;
            w.push_back(1.0 / (s * s));
        }
        std::vector<double> coeffs;
        double chi2 = cubic_wls(x, y, w, coeffs);
        if (coeffs_out) *coeffs_out = coeffs;
        return chi2;
    }
};

// Deterministic Nelder-Mead in two parameters.
std::pair<double, double> nelder_mead(const Objective& f, double p0, double nu0, double scale_p,
                                      double scale_nu, int iters) {
    struct V {
        double p, nu, val;
    };
    std::array<V, 3> simplex{V{p0, nu0, 0}, V{p0 + scale_p, nu0, 0}, V{p0, nu0 + scale_nu, 0}};
    for (auto& v : simplex) v.val = f(v.p, v.nu);
    auto by_val = [](const V& a, const V& b) { return a.val < b.val; };
    for (int it = 0; it < iters; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_val);
        const V& best = simplex[0];
        V& worst = simplex[2];
        double cp = (simplex[0].p + simplex[1].p) / 2;
        double cn = (simplex[0].nu + simplex[1].nu) / 2;
        V refl{cp + (cp - worst.p), cn + (cn - worst.nu), 0};
        refl.val = f(refl.p, refl.nu);
        if (refl.val < best.val) {
            V expa{cp + 2 * (cp - worst.p), cn + 2 * (cn - worst.nu), 0};
            expa.val = f(expa.p, expa.nu);
            worst = expa.val < refl.val ? expa : refl;
        } else if (refl.val < simplex[1].val) {
            worst = refl;
        } else {
            V contr{cp + 0.5 * (worst.p - cp), cn + 0.5 * (worst.nu - cn), 0};
            contr.val = f(contr.p, contr.nu);
            if (contr.val < worst.val) {
                worst = contr;
            } else {
                for (int i = 1; i < 3; ++i) {
                    simplex[i].p = (simplex[i].p + best.p) / 2;
                    simplex[i].nu = (simplex[i].nu + best.nu) / 2;
                    simplex[i].val = f(simplex[i].p, simplex[i].nu);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_val);
    return {simplex[0].p, simplex[0].nu};
}

double log_choose(int n, int k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

}  // namespace

FitResult fit_threshold(const std::vector<FitPoint>& points, uint64_t seed,
                        int bootstrap_rounds) {
    std::vector<double> ps;
    std::vector<int> ls;
    for (const auto& pt : points) {
        ps.push_back(pt.p);
        if (std::find(ls.begin(), ls.end(), pt.L) == ls.end()) ls.push_back(pt.L);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (ls.size() < 3 || ps.size() < 4)
        throw std::invalid_argument("threshold fit needs at least 3 sizes and 4 rates");

    Objective obj{&points, ps.front(), ps.back()};
    double span = ps.back() - ps.front();

    double best_p = 0, best_nu = 1, best_val = std::numeric_limits<double>::max();
    for (double fp : {0.25, 0.5, 0.75})
        for (double nu0 : {0.7, 1.0, 1.5}) {
            auto [p_th, nu] =
                nelder_mead(obj, ps.front() + fp * span, nu0, span * 0.1, 0.2, 250);
            double val = obj(p_th, nu);
            if (val < best_val) {
                best_val = val;
                best_p = p_th;
                best_nu = nu;
            }
        }
    if (best_val >= std::numeric_limits<double>::max() / 4)
        throw std::runtime_error("threshold fit did not converge inside the data range");

    FitResult result;
    result.p_th = best_p;
    result.nu = best_nu;
    result.chi2 = obj(best_p, best_nu, &result.coeffs);
    result.n_points = static_cast<int>(points.size());
    if (result.p_th <= ps.front() + 1e-12 || result.p_th >= ps.back() - 1e-12)
        throw std::runtime_error("fitted threshold sits on the boundary of the scanned range");

    // Bootstrap over points for parameter errors.
    Rng rng(seed, 0);
    std::vector<double> bp, bnu;
    std::vector<FitPoint> sample(points.size());
    for (int round = 0; round < bootstrap_rounds; ++round) {
        for (size_t i = 0; i < points.size(); ++i)
            sample[i] = points[rng.below(points.size())];
        Objective bobj{&sample, ps.front(), ps.back()};
        auto [p_th, nu] = nelder_mead(bobj, best_p, best_nu, span * 0.05, 0.1, 150);
        if (bobj(p_th, nu) < std::numeric_limits<double>::max() / 4) {
            bp.push_back(p_th);
            bnu.push_back(nu);
        }
    }
    auto stddev = [](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        double mean = 0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0;
        for (double x : v) var += (x - mean) * (x - mean);
        return std::sqrt(var / (static_cast<double>(v.size()) - 1));
    };
    result.p_th_err = stddev(bp);
    result.nu_err = stddev(bnu);
    return result;
}

std::string FitResult::to_json() const {
    nlohmann::ordered_json j;
    j["p_th"] = p_th;
    j["p_th_err"] = p_th_err;
    j["nu"] = nu;
    j["nu_err"] = nu_err;
    j["A"] = coeffs;
    j["chi2"] = chi2;
    j["n_points"] = n_points;
    return j.dump();
}

std::vector<double> biased_multipliers(const std::string& code_name) {
    const InnerCode& code = code_by_name(code_name);
    std::vector<double> mult(code.s);
    // Four logical CZ gates per block; measurement plus idle contribute the
    // flat 4/3 term of the counting argument.
    for (int q = 0; q < code.s; ++q)
        mult[q] = 4.0 * code.gates_on_qubit(q) * (2.0 / 3.0) + 4.0 / 3.0;
    return mult;
}

bool biased_multiplier_uniform(const std::string& code_name) {
    auto m = biased_multipliers(code_name);
    for (double v : m)
        if (std::fabs(v - m[0]) > 1e-12) return false;
    return true;
}

double biased_threshold_uniform(const std::string& code_name, double phen_threshold) {
    if (!biased_multiplier_uniform(code_name))
        throw std::invalid_argument(code_name +
                                    " has position-dependent rates; use the bisection path");
    return phen_threshold / biased_multipliers(code_name)[0];
}

double overhead_bcc(int L, double p) {
    if (L < 1 || p < 0.0 || p >= 1.0) throw std::invalid_argument("overhead_bcc domain");
    if (p == 0.0) return L / 2 == 0 ? static_cast<double>(L) * L : 0.0;
    int k = L / 2;
    double lg = 2.0 * std::log(L) + log_choose(L, k) + k * std::log(p);
    return std::exp(lg);
}

Overhead211 overhead_211(int L, double p) {
    if (L < 1 || p < 0.0 || p >= 1.0) throw std::invalid_argument("overhead_211 domain");
    Overhead211 out;
    // log-sum-exp over the N-sum
    std::vector<double> terms;
    double mx = -std::numeric_limits<double>::infinity();
    for (int N = 0; N <= L; ++N) {
        int rem = L - N;
        int k = rem / 2;
        int expo = N + 2 * k;
        double lg;
        if (p == 0.0) {
            if (expo != 0) continue;
            lg = log_choose(L, N) + log_choose(rem, k) + N * std::log(2.0);
        } else {
            lg = log_choose(L, N) + log_choose(rem, k) + N * std::log(2.0) +
                 expo * std::log(p);
        }
        terms.push_back(lg);
        mx = std::max(mx, lg);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - mx);
    out.sum = terms.empty() ? 0.0 : L * static_cast<double>(L) * std::exp(mx) * sum;

    if (p == 0.0) {
        out.bound = 0.0;
    } else {
        double lgb = 3.0 * std::log(L) + 2.0 * log_choose(L, L / 2) + L * std::log(p);
        out.bound = std::exp(lgb);
    }
    return out;
}

SuppressionFit fit_suppression(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 4)
        throw std::invalid_argument("suppression fit needs at least 4 sizes");
    double ata[3][3] = {};
    double atb[3] = {};
    for (const auto& [L, pl] : points) {
        if (pl <= 0.0) throw std::invalid_argument("suppression fit needs positive rates");
        double basis[3] = {1.0, static_cast<double>(L),
                           static_cast<double>(L) * L * static_cast<double>(L)};
        double y = std::log(pl);
        for (int r = 0; r < 3; ++r) {
            atb[r] += basis[r] * y;
            for (int c = 0; c < 3; ++c) ata[r][c] += basis[r] * basis[c];
        }
    }
    // 3x3 solve by Cramer elimination
    double m[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
        m[r][3] = atb[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    SuppressionFit fit;
    fit.a = m[0][3] / m[0][0];
    fit.b = m[1][3] / m[1][1];
    fit.c = m[2][3] / m[2][2];
    fit.L_min = points.front().first;
    fit.L_max = points.front().first;
    for (const auto& [L, pl] : points) {
        double pred = fit.a + fit.b * L + fit.c * static_cast<double>(L) * L * L;
        fit.residual += (std::log(pl) - pred) * (std::log(pl) - pred);
        fit.L_min = std::min(fit.L_min, L);
        fit.L_max = std::max(fit.L_max, L);
    }
    return fit;
}

double suppression_solve_L(const SuppressionFit& fit, double target_p_l, bool* extrapolated) {
    if (target_p_l <= 0.0) throw std::invalid_argument("target rate must be positive");
    double target = std::log(target_p_l);
    auto f = [&](double L) { return fit.a + fit.b * L + fit.c * L * L * L - target; };
    double lo = 1.0, hi = 1.0;
    double prev = f(lo);
    bool found = false;
    for (double L = 1.5; L <= 400.0; L += 0.5) {
        double cur = f(L);
        if ((prev > 0) != (cur > 0)) {
            lo = L - 0.5;
            hi = L;
            found = true;
            break;
        }
        prev = cur;
    }
    if (!found) throw std::runtime_error("suppression curve never reaches the target rate");
    for (int it = 0; it < 100; ++it) {
        double mid = (lo + hi) / 2;
        if ((f(lo) > 0) == (f(mid) > 0))
            lo = mid;
        else
            hi = mid;
    }
    double L = (lo + hi) / 2;
    if (extrapolated) *extrapolated = fit.L_max > 0 && (L < fit.L_min || L > fit.L_max);
    return L;
}

OverheadRatio overhead_ratio(const SuppressionFit& scheme_fit, int scheme_block_size,
                             const SuppressionFit& reference_fit, int reference_block_size,
                             double target_p_l) {
    OverheadRatio out;
    bool ex1 = false, ex2 = false;
    out.L_scheme = suppression_solve_L(scheme_fit, target_p_l, &ex1);
    out.L_reference = suppression_solve_L(reference_fit, target_p_l, &ex2);
    out.extrapolated = ex1 || ex2;
    out.ratio = (scheme_block_size * out.L_scheme * out.L_scheme) /
                (reference_block_size * out.L_reference * out.L_reference);
    return out;
}

}  // namespace ccsim
