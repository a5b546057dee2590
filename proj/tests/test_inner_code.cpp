#include <stdexcept>
#include <bit>

#include "ccsim/inner_code.hpp"
#include "doctest.h"

using namespace ccsim;

TEST_CASE("registry holds the six codes with their constants") {
    auto names = builtin_code_names();
    REQUIRE(names == std::vector<std::string>{"cubic", "211", "311_1", "311_2", "4112", "713"});

    const InnerCode& c211 = code_by_name("211");
    CHECK(c211.s == 2);
    CHECK(c211.x_checks == std::vector<uint32_t>{0b11});
    CHECK(c211.logical_x == 0b01u);

    const InnerCode& c311_2 = code_by_name("311_2");
    CHECK(c311_2.s == 3);
    CHECK(c311_2.x_checks == std::vector<uint32_t>{0b111});
    CHECK(c311_2.logical_x == 0b001u);

    const InnerCode& cubic = code_by_name("cubic");
    CHECK(cubic.s == 1);
    CHECK(cubic.x_checks.empty());
    CHECK(cubic.logical_x == 0b1u);

    const InnerCode& c4112 = code_by_name("4112");
    CHECK(c4112.x_checks == std::vector<uint32_t>{0b1111});
    CHECK(c4112.logical_x == 0b0011u);

    CHECK_THROWS_AS(code_by_name("nope"), std::invalid_argument);
}

TEST_CASE("syndromes are overlap parities of the flips") {
    const InnerCode& c211 = code_by_name("211");
    CHECK(inner_syndrome(c211, 0b01) == 1);
    CHECK(inner_syndrome(c211, 0b11) == 0);  // Z1Z2 commutes with XX

    const InnerCode& steane = code_by_name("713");
    CHECK(inner_syndrome(steane, 1u << 4) != 0);  // Z on qubit 5 trips X1X3X5X7

    CHECK_THROWS_AS(inner_syndrome(c211, 0b100), std::invalid_argument);
}

TEST_CASE("detect-and-erase semantics of inner_decode") {
    const InnerCode& c211 = code_by_name("211");
    auto r = inner_decode(c211, 0b11);
    CHECK_FALSE(r.detected);  // the undetected p^2 event
    CHECK(r.logical_flip == 1);

    const InnerCode& c4112 = code_by_name("4112");
    r = inner_decode(c4112, 0b0001);
    CHECK(r.detected);  // Z1 anticommutes with X1X2
    CHECK(r.logical_flip == 1);

    for (const auto& code : builtin_codes()) {
        r = inner_decode(code, 0);
        CHECK_FALSE(r.detected);
        CHECK(r.logical_flip == 0);
    }
}

TEST_CASE("every weight-1 Z is detected by every non-trivial code") {
    for (const auto& code : builtin_codes()) {
        if (code.name == "cubic") {
            CHECK_FALSE(code.detects_all_single_z);
            continue;
        }
        CHECK(code.detects_all_single_z);
        for (int q = 0; q < code.s; ++q) CHECK(inner_decode(code, 1u << q).detected);
    }
}

TEST_CASE("211 flip-pattern enumeration matches the conversion counting") {
    const InnerCode& c = code_by_name("211");
    int detected = 0, undetected_flip = 0;
    for (uint32_t pat = 0; pat < 4; ++pat) {
        auto r = inner_decode(c, pat);
        if (r.detected) {
            ++detected;
            CHECK((pat == 0b01 || pat == 0b10));
        } else if (r.logical_flip) {
            ++undetected_flip;
            CHECK(pat == 0b11);
        }
    }
    CHECK(detected == 2);
    CHECK(undetected_flip == 1);
}

TEST_CASE("inner_decode is pure") {
    const InnerCode& c = code_by_name("713");
    for (uint32_t pat = 0; pat < 128; ++pat) {
        auto a = inner_decode(c, pat);
        auto b = inner_decode(c, pat);
        CHECK(a.detected == b.detected);
        CHECK(a.logical_flip == b.logical_flip);
    }
}

TEST_CASE("correction policies: 311_1 majority votes, 713 decodes its syndrome") {
    const InnerCode& rep = code_by_name("311_1");
    CHECK(rep.policy == InnerPolicy::correct);
    for (uint32_t pat = 0; pat < 8; ++pat) {
        auto out = inner_readout(rep, pat);
        CHECK_FALSE(out.erased);
        CHECK(out.flip == (std::popcount(pat) >= 2 ? 1 : 0));
    }

    const InnerCode& steane = code_by_name("713");
    CHECK(steane.policy == InnerPolicy::correct);
    // every single-qubit Z is corrected exactly
    for (int q = 0; q < 7; ++q) {
        auto out = inner_readout(steane, 1u << q);
        CHECK_FALSE(out.erased);
        CHECK(out.flip == 0);
    }
    // weight-2 Z errors are miscorrected onto a logical representative
    auto out = inner_readout(steane, 0b0000011);
    CHECK(out.flip == 1);
}

TEST_CASE("erase policies never correct") {
    for (const char* name : {"211", "311_2", "4112"}) {
        const InnerCode& code = code_by_name(name);
        CHECK(code.policy == InnerPolicy::erase_on_detect);
        for (uint32_t pat = 0; pat < (1u << code.s); ++pat) {
            auto out = inner_readout(code, pat);
            auto det = inner_decode(code, pat);
            CHECK(out.erased == det.detected);
            CHECK(out.flip == det.logical_flip);
        }
    }
}

TEST_CASE("biased-counting gate totals per qubit") {
    CHECK(code_by_name("211").gates_on_qubit(0) == 2);
    CHECK(code_by_name("211").gates_on_qubit(1) == 2);
    CHECK(code_by_name("311_1").gates_on_qubit(0) == 3);
    CHECK(code_by_name("713").gates_on_qubit(3) == 1);
    CHECK(code_by_name("311_2").gates_on_qubit(0) == 2);
    CHECK(code_by_name("311_2").gates_on_qubit(1) == 1);
    CHECK(code_by_name("311_2").gates_on_qubit(2) == 1);
}
