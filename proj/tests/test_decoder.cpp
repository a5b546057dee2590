#include <algorithm>
#include <array>
#include <stdexcept>

#include "ccsim/decoder.hpp"
#include "ccsim/rng.hpp"
#include "doctest.h"

using namespace ccsim;

namespace {

// Winding-free check for an erasure pattern: lift each check to unwrapped
// coordinates along a spanning forest of the erased subgraph; any non-tree
// erased edge whose endpoints disagree with the geometric step closes a
// non-contractible cycle.
bool erasure_clusters_trivial(const Lattice& lat, const std::vector<uint8_t>& erased) {
    const int nc = lat.num_checks();
    std::vector<std::array<int, 3>> lift(nc);
    std::vector<int> state(nc, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(nc);
    for (int b = 0; b < lat.num_primal(); ++b) {
        if (!erased[b]) continue;
        auto cs = lat.checks_of_primal(b);
        if (cs[1] < 0) continue;
        adj[cs[0]].push_back({cs[1], b});
        adj[cs[1]].push_back({cs[0], b});
    }
    auto step = [&](int from, int to) {
        auto a = lat.check_pos(from), b = lat.check_pos(to);
        std::array<int, 3> d{};
        for (int axis = 0; axis < 3; ++axis) {
            int diff = b[axis] - a[axis];
            if (diff > 1) diff -= lat.L();
            if (diff < -1) diff += lat.L();
            d[axis] = diff;
        }
        return d;
    };
    for (int root = 0; root < nc; ++root) {
        if (state[root] || adj[root].empty()) continue;
        state[root] = 1;
        lift[root] = {0, 0, 0};
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, blk] : adj[u]) {
                auto d = step(u, v);
                std::array<int, 3> cand{lift[u][0] + d[0], lift[u][1] + d[1],
                                        lift[u][2] + d[2]};
                if (!state[v]) {
                    state[v] = 1;
                    lift[v] = cand;
                    stack.push_back(v);
                } else if (lift[v] != cand) {
                    return false;  // wrapping cycle
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("inner stage: trivial, single fault, undetected logical") {
    Lattice lat(3, Boundary::torus);
    Decoder dec(lat);
    const InnerCode& code = code_by_name("211");
    std::vector<uint8_t> flips(lat.num_primal() * 2, 0);
    BlockReadout out;

    dec.inner_stage(code, flips, out);
    for (int b = 0; b < lat.num_primal(); ++b) {
        CHECK(out.flip[b] == 0);
        CHECK_FALSE(out.erased[b]);
    }

    flips[10 * 2] = 1;  // single Z on qubit 1 of block 10
    dec.inner_stage(code, flips, out);
    CHECK(out.erased[10]);
    CHECK(out.flip[10] == 1);
    for (int b = 0; b < lat.num_primal(); ++b)
        if (b != 10) CHECK_FALSE(out.erased[b]);

    flips[10 * 2 + 1] = 1;  // both qubits: the undetected logical event
    dec.inner_stage(code, flips, out);
    CHECK_FALSE(out.erased[10]);
    CHECK(out.flip[10] == 1);
}

TEST_CASE("outer syndrome: boundaries of flips") {
    Lattice lat(3, Boundary::torus);
    Decoder dec(lat);
    BlockReadout readout;
    readout.resize(lat.num_primal());
    std::vector<uint8_t> defects;

    dec.outer_syndrome(readout, defects);
    CHECK(std::count(defects.begin(), defects.end(), 1) == 0);

    readout.flip[5] = 1;
    dec.outer_syndrome(readout, defects);
    auto cs = lat.checks_of_primal(5);
    CHECK(std::count(defects.begin(), defects.end(), 1) == 2);
    CHECK(defects[cs[0]] == 1);
    CHECK(defects[cs[1]] == 1);

    // a closed plaquette loop has zero boundary
    readout.resize(lat.num_primal());
    for (int f : lat.plaquette(0)) readout.flip[f] ^= 1;
    dec.outer_syndrome(readout, defects);
    CHECK(std::count(defects.begin(), defects.end(), 1) == 0);
}

TEST_CASE("pair distances with and without erasures") {
    Lattice lat(3, Boundary::torus);
    Decoder dec(lat);
    std::vector<uint8_t> erased(lat.num_primal(), 0);

    int block = 7;
    auto cs = lat.checks_of_primal(block);
    CHECK(dec.pair_distance(erased, cs[0], cs[1]) == 1);
    CHECK(dec.pair_distance(erased, cs[0], cs[0]) == 0);

    erased[block] = 1;
    CHECK(dec.pair_distance(erased, cs[0], cs[1]) == 0);

    Lattice rough(3, Boundary::periodic_xy_rough_z);
    Decoder rdec(rough);
    std::vector<uint8_t> rerased(rough.num_primal(), 0);
    CHECK(rdec.pair_distance(rerased, 0, Decoder::kBoundary) == 1);
}

TEST_CASE("zero noise never fails; single faults are always repaired") {
    for (auto boundary : {Boundary::torus, Boundary::periodic_xy_rough_z}) {
        Lattice lat(4, boundary);
        Decoder dec(lat);
        BlockReadout readout;
        readout.resize(lat.num_primal());
        auto res = dec.decode_and_judge(readout);
        CHECK_FALSE(res.failure);
        CHECK(res.matched_nodes == 0);

        for (int b = 0; b < lat.num_primal(); b += 5) {
            readout.resize(lat.num_primal());
            readout.flip[b] = 1;
            CHECK_FALSE(dec.decode_and_judge(readout).failure);
            readout.erased[b] = 1;
            CHECK_FALSE(dec.decode_and_judge(readout).failure);
        }
    }
}

TEST_CASE("a cut-spanning syndrome-free loop is a logical failure") {
    Lattice lat(4, Boundary::torus);
    Decoder dec(lat);
    BlockReadout readout;
    readout.resize(lat.num_primal());
    for (int layer = 0; layer < lat.L(); ++layer)
        readout.flip[lat.primal_sub_at({1, 1, 2 * layer})] = 1;
    auto res = dec.decode_and_judge(readout);
    CHECK(res.matched_nodes == 0);
    CHECK(res.failure);
}

TEST_CASE("random trials: correction clears the syndrome and verdicts are deterministic") {
    Rng rng(314, 0);
    for (auto boundary : {Boundary::torus, Boundary::periodic_xy_rough_z}) {
        Lattice lat(4, boundary);
        Decoder dec(lat), dec2(lat);
        for (int trial = 0; trial < 200; ++trial) {
            BlockReadout readout;
            readout.resize(lat.num_primal());
            for (int b = 0; b < lat.num_primal(); ++b) {
                readout.flip[b] = rng.bernoulli(0.06);
                readout.erased[b] = rng.bernoulli(0.10);
            }
            // decode_and_judge throws if the correction leaves syndrome
            auto r1 = dec.decode_and_judge(readout);
            auto c1 = dec.last_correction();
            auto r2 = dec2.decode_and_judge(readout);
            CHECK(r1.failure == r2.failure);
            CHECK(c1 == dec2.last_correction());
        }
    }
}

TEST_CASE("erasure-only trials below percolation never fail when clusters are trivial") {
    Rng rng(2718, 0);
    Lattice lat(4, Boundary::torus);
    Decoder dec(lat);
    int tested = 0;
    for (int trial = 0; trial < 300; ++trial) {
        BlockReadout readout;
        readout.resize(lat.num_primal());
        for (int b = 0; b < lat.num_primal(); ++b) {
            if (rng.bernoulli(0.12)) {
                readout.erased[b] = 1;
                readout.flip[b] = rng.bernoulli(0.5);
            }
        }
        if (!erasure_clusters_trivial(lat, readout.erased)) continue;
        ++tested;
        CHECK_FALSE(dec.decode_and_judge(readout).failure);
    }
    CHECK(tested > 150);  // percolation is far away at 12%
}

TEST_CASE("verdict is invariant under translating the cut membrane") {
    Rng rng(99, 4);
    Lattice lat(3, Boundary::torus);
    Decoder dec(lat);
    for (int trial = 0; trial < 100; ++trial) {
        BlockReadout readout;
        readout.resize(lat.num_primal());
        for (int b = 0; b < lat.num_primal(); ++b) {
            readout.flip[b] = rng.bernoulli(0.05);
            readout.erased[b] = rng.bernoulli(0.08);
        }
        bool base = dec.decode_and_judge(readout).failure;
        for (int layer = 1; layer < lat.num_cut_layers(); ++layer)
            CHECK(dec.failure_on_cut(readout, lat.translated_cut(layer)) == base);
    }
}

TEST_CASE("matching equals exhaustive pairing on random defect sets") {
    Rng rng(1234, 5);
    BlossomMatcher matcher;
    for (int L : {3, 4}) {
        Lattice lat(L, Boundary::torus);
        Decoder dec(lat);
        for (int inst = 0; inst < 100; ++inst) {
            const bool with_erasure = inst % 2 == 1;
            std::vector<uint8_t> erased(lat.num_primal(), 0);
            if (with_erasure)
                for (int b = 0; b < lat.num_primal(); ++b) erased[b] = rng.bernoulli(0.1);
            int nd = 2 * (1 + static_cast<int>(rng.below(4)));  // 2..8 defects
            std::vector<int> defects;
            while (static_cast<int>(defects.size()) < nd) {
                int c = static_cast<int>(rng.below(lat.num_checks()));
                if (std::find(defects.begin(), defects.end(), c) == defects.end())
                    defects.push_back(c);
            }
            std::vector<int64_t> w(static_cast<size_t>(nd) * nd, 0);
            for (int i = 0; i < nd; ++i)
                for (int j = i + 1; j < nd; ++j) {
                    int d = dec.pair_distance(erased, defects[i], defects[j]);
                    w[static_cast<size_t>(i) * nd + j] = d;
                    w[static_cast<size_t>(j) * nd + i] = d;
                }
            matcher.solve(nd, w);
            CHECK(matcher.total_weight() == brute_force_min_perfect_matching(nd, w));
        }
    }
}

TEST_CASE("input length is checked") {
    Lattice lat(3, Boundary::torus);
    Decoder dec(lat);
    std::vector<uint8_t> flips(5, 0);
    BlockReadout out;
    CHECK_THROWS_AS(dec.inner_stage(code_by_name("211"), flips, out), std::invalid_argument);
}
