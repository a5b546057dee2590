#include <cmath>
#include <stdexcept>

#include "ccsim/analysis.hpp"
#include "ccsim/montecarlo.hpp"
#include "doctest.h"

using namespace ccsim;

TEST_CASE("wilson interval basics") {
    auto s = wilson_stats(1000, 0);
    CHECK(s.p_l == 0.0);
    CHECK(s.ci_low == 0.0);
    CHECK(s.ci_high < 0.004);

    s = wilson_stats(1000, 500);
    CHECK(s.ci_low > 0.46);
    CHECK(s.ci_high < 0.54);
    CHECK(s.ci_low <= s.p_l);
    CHECK(s.p_l <= s.ci_high);
}

TEST_CASE("p = 0 never fails, for every model") {
    for (auto model : {NoiseModel::phenomenological, NoiseModel::circuit_level,
                       NoiseModel::biased_z}) {
        TrialConfig cfg;
        cfg.code_name = "211";
        cfg.L = 3;
        cfg.trials = 200;
        cfg.noise.model = model;
        cfg.noise.p = 0.0;
        cfg.threads = 2;
        auto st = run_point(cfg);
        CHECK(st.failures == 0);
    }
}

TEST_CASE("failure counts are independent of the thread count") {
    for (auto model : {NoiseModel::phenomenological, NoiseModel::circuit_level}) {
        TrialConfig cfg;
        cfg.code_name = "211";
        cfg.L = 3;
        cfg.trials = 2000;
        cfg.master_seed = 77;
        cfg.noise.model = model;
        cfg.noise.p = model == NoiseModel::circuit_level ? 0.007 : 0.08;
        cfg.threads = 1;
        auto a = run_point(cfg);
        cfg.threads = 2;
        auto b = run_point(cfg);
        cfg.threads = 7;
        auto c = run_point(cfg);
        CHECK(a.failures == b.failures);
        CHECK(b.failures == c.failures);
        CHECK(a.failures > 0);  // near threshold, so the check is non-vacuous
    }
}

TEST_CASE("supercritical rates grow with L, subcritical rates shrink") {
    TrialConfig cfg;
    cfg.code_name = "cubic";
    cfg.noise.model = NoiseModel::phenomenological;
    cfg.threads = 2;

    cfg.noise.p = 0.06;  // far above threshold
    cfg.L = 7;
    cfg.trials = 10000;
    auto hot = run_point(cfg);
    CHECK(hot.p_l > 0.2);

    cfg.noise.p = 0.025;  // below threshold
    cfg.trials = 100000;
    cfg.L = 5;
    auto l5 = run_point(cfg);
    cfg.L = 7;
    auto l7 = run_point(cfg);
    CHECK(l7.p_l < l5.p_l);
    CHECK(l7.ci_high < l5.ci_low);  // non-overlapping 95% intervals
}

TEST_CASE("211 per-block conversion frequencies match 2p(1-p) and p^2") {
    const InnerCode& code = code_by_name("211");
    Lattice lat(5, Boundary::torus);
    Decoder dec(lat);
    Rng rng(5150, 9);
    for (double p : {0.02, 0.05, 0.08}) {
        int64_t blocks = 0, erased = 0, undetected_flips = 0;
        std::vector<uint8_t> flips;
        BlockReadout readout;
        while (blocks < 1200000) {
            sample_phenomenological_flips(flips, lat.num_primal(), 2, p, {}, rng);
            dec.inner_stage(code, flips, readout);
            for (int b = 0; b < lat.num_primal(); ++b) {
                ++blocks;
                erased += readout.erased[b];
                undetected_flips += !readout.erased[b] && readout.flip[b];
            }
        }
        auto within5 = [&](int64_t count, double rate) {
            double n = static_cast<double>(blocks);
            double sigma = std::sqrt(n * rate * (1 - rate));
            return std::fabs(count - n * rate) <= 5 * sigma;
        };
        CAPTURE(p);
        CHECK(within5(erased, 2 * p * (1 - p)));
        CHECK(within5(undetected_flips, p * p));
    }
}

TEST_CASE("211 phenomenological equals the converted pauli+erasure model") {
    // The per-block outcome laws coincide exactly, so the logical rates must
    // agree within statistics at matched physical rates.
    for (double p : {0.05, 0.07, 0.085}) {
        TrialConfig a;
        a.code_name = "211";
        a.L = 5;
        a.trials = 20000;
        a.master_seed = 1000;
        a.noise.model = NoiseModel::phenomenological;
        a.noise.p = p;
        a.threads = 2;
        auto sa = run_point(a);

        auto rates = effective_rates_211(p);
        TrialConfig b;
        b.code_name = "cubic";
        b.L = 5;
        b.trials = 20000;
        b.master_seed = 2000;
        b.noise.model = NoiseModel::pauli_erasure;
        b.noise.p_pauli = rates.p_pauli;
        b.noise.p_erase = rates.p_erase;
        b.threads = 2;
        auto sb = run_point(b);

        CAPTURE(p);
        CHECK(sa.ci_low <= sb.ci_high);
        CHECK(sb.ci_low <= sa.ci_high);
    }
}

TEST_CASE("biased model defaults to the scheme's counting multipliers") {
    TrialConfig cfg;
    cfg.code_name = "211";
    cfg.L = 3;
    cfg.trials = 3000;
    cfg.master_seed = 5;
    cfg.noise.model = NoiseModel::biased_z;
    cfg.noise.p = 0.012;  // around the biased threshold
    cfg.threads = 2;
    auto st = run_point(cfg);
    CHECK(st.failures > 0);

    // equivalent heterogeneous phenomenological run with explicit multipliers
    TrialConfig ref = cfg;
    ref.noise.model = NoiseModel::phenomenological;
    ref.noise.rate_multipliers = biased_multipliers("211");
    auto sr = run_point(ref);
    CHECK(sr.failures == st.failures);  // identical sampling path and stream
}

TEST_CASE("trial config validation") {
    TrialConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_point(cfg), std::invalid_argument);
    cfg.trials = 10;
    cfg.noise.p = 0.9;  // out of range for Eq. (5)
    CHECK_THROWS_AS(run_point(cfg), std::invalid_argument);
}
