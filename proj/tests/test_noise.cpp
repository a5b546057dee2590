#include <stdexcept>
#include <cmath>

#include "ccsim/noise.hpp"
#include "doctest.h"

using namespace ccsim;

namespace {
// 5-sigma binomial window around an expected rate
void check_rate(double observed_count, double n, double p, const char* what) {
    double sigma = std::sqrt(n * p * (1 - p));
    INFO(what << ": observed " << observed_count << " expected " << n * p << " +- "
              << 5 * sigma);
    CHECK(std::fabs(observed_count - n * p) <= 5 * sigma + 1);
}
}  // namespace

TEST_CASE("single-qubit depolarizing marginals at p=0.1") {
    Rng rng(1001, 0);
    PauliFrame frame(1);
    const int n = 1000000;
    int x = 0, z = 0, y = 0;
    for (int i = 0; i < n; ++i) {
        frame.clear();
        sample_single_depolarizing(frame, 0, 0.1, rng);
        if (frame.x_bits[0] && frame.z_bits[0]) ++y;
        x += frame.x_bits[0];
        z += frame.z_bits[0];
    }
    check_rate(x, n, 0.1, "X marginal");
    check_rate(z, n, 0.1, "Z marginal");
    check_rate(y, n, 0.05, "Y branch");
}

TEST_CASE("p=0 and the p=2/3 edge") {
    Rng rng(5, 0);
    PauliFrame frame(1);
    for (int i = 0; i < 1000; ++i) {
        sample_single_depolarizing(frame, 0, 0.0, rng);
        CHECK_FALSE(frame.x_bits[0]);
        CHECK_FALSE(frame.z_bits[0]);
    }
    // identity branch has probability zero at p = 2/3
    int identity = 0;
    for (int i = 0; i < 20000; ++i) {
        frame.clear();
        sample_single_depolarizing(frame, 0, 2.0 / 3.0, rng);
        if (!frame.x_bits[0] && !frame.z_bits[0]) ++identity;
    }
    CHECK(identity == 0);
    CHECK_THROWS_AS(sample_single_depolarizing(frame, 0, 0.7, rng), std::invalid_argument);
}

TEST_CASE("two-qubit depolarizing hits ZZ at p/15") {
    Rng rng(42, 1);
    PauliFrame frame(2);
    const int n = 1000000;
    const double p = 0.15;
    int zz = 0, any = 0;
    for (int i = 0; i < n; ++i) {
        frame.clear();
        sample_two_qubit_depolarizing(frame, 0, 1, p, rng);
        bool a = frame.x_bits[0] || frame.z_bits[0];
        bool b = frame.x_bits[1] || frame.z_bits[1];
        if (a || b) ++any;
        if (!frame.x_bits[0] && frame.z_bits[0] && !frame.x_bits[1] && frame.z_bits[1]) ++zz;
    }
    check_rate(any, n, p, "any fault");
    check_rate(zz, n, p / 15, "ZZ branch");
}

TEST_CASE("biased channel marginals: 2p/3 per qubit, no X component") {
    Rng rng(7, 2);
    PauliFrame frame(2);
    const int n = 1000000;
    const double p = 0.3;
    int za = 0;
    for (int i = 0; i < n; ++i) {
        frame.clear();
        sample_biased_two_qubit(frame, 0, 1, p, rng);
        CHECK_FALSE(frame.x_bits[0]);
        CHECK_FALSE(frame.x_bits[1]);
        za += frame.z_bits[0];
    }
    check_rate(za, n, 2 * p / 3, "Z marginal");
}

TEST_CASE("phenomenological flips match p and per-position overrides") {
    Rng rng(99, 3);
    std::vector<uint8_t> flips;
    const int blocks = 200000;
    sample_phenomenological_flips(flips, blocks, 1, 0.03, {}, rng);
    int count = 0;
    for (auto f : flips) count += f;
    check_rate(count, blocks, 0.03, "uniform flips");

    sample_phenomenological_flips(flips, blocks, 2, 0.1, {1.0, 2.0}, rng);
    int c0 = 0, c1 = 0;
    for (int b = 0; b < blocks; ++b) {
        c0 += flips[2 * b];
        c1 += flips[2 * b + 1];
    }
    check_rate(c0, blocks, 0.1, "position-1 rate");
    check_rate(c1, blocks, 0.2, "position-2 rate");
}

TEST_CASE("cubic phenomenological sampling equals a plain Bernoulli stream") {
    Rng a(123, 17), b(123, 17);
    std::vector<uint8_t> flips;
    sample_phenomenological_flips(flips, 50000, 1, 0.07, {}, a);
    for (auto f : flips) CHECK(f == static_cast<uint8_t>(b.bernoulli(0.07)));
}

TEST_CASE("noise spec validation") {
    NoiseSpec spec;
    spec.model = NoiseModel::phenomenological;
    spec.p = 0.5;
    CHECK_NOTHROW(spec.validate());
    spec.p = 0.7;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.model = NoiseModel::biased_z;
    CHECK_NOTHROW(spec.validate());
    CHECK(noise_model_from_name("circuit_level") == NoiseModel::circuit_level);
    CHECK(noise_model_name(NoiseModel::biased_z) == "biased_z");
}
