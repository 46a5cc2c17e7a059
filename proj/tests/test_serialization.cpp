#include "doctest.h"
#include "macsense/errors.hpp"
#include "macsense/scheme.hpp"
#include "macsense/serialization.hpp"

using namespace macsense;

TEST_CASE("channel round-trip is bit-identical") {
    for (auto& ch : {build_example1(0.4), build_example2(0.9, 0.2)}) {
        auto text = save_channel(ch);
        auto back = load_channel(text);
        CHECK(back.kernel == ch.kernel);
        CHECK(back.state_pmf == ch.state_pmf);
        CHECK(back.y.symbols == ch.y.symbols);
        // and a second generation is textually stable
        CHECK(save_channel(back) == text);
    }
}

TEST_CASE("scheme round-trip is bit-identical") {
    auto ch = build_example2(0.7, 0.3);
    SplitMix64 rng(4242);
    auto sc = random_scheme(ch, rng, 2, 3, 2, 3, 2);
    auto text = save_scheme(sc);
    auto back = load_scheme(text, ch);
    CHECK(back.p_u0.p == sc.p_u0.p);
    CHECK(back.p_u1_u0.p == sc.p_u1_u0.p);
    CHECK(back.p_v1.p == sc.p_v1.p);
    CHECK(back.v1.symbols == sc.v1.symbols);
}

TEST_CASE("rational probability literals are accepted") {
    std::string text = R"({
      "alphabets": {"S1": ["0"], "S2": ["0","1"], "X1": ["0","1"], "X2": ["0","1"],
                    "Y": ["0","1"], "Z1": ["0","1"], "Z2": ["0","1"]},
      "state_pmf": ["3/4", "0.25"],
      "kernel": [)";
    // deterministic kernel: y=z1=z2=0 for every conditioning cell
    for (int c = 0; c < 8; ++c) {
        text += "\"1\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"";
        if (c != 7) text += ",";
    }
    text += "]}";
    auto ch = load_channel(text);
    CHECK(ch.state_at(0, 0) == doctest::Approx(0.75));
    CHECK(ch.state_at(0, 1) == doctest::Approx(0.25));
}

TEST_CASE("kernel slice off by 0.01 names the offending cell") {
    auto ch = build_example1(0.4);
    auto text = save_channel(ch);
    // corrupt the first kernel entry (the "1" cell of the first slice)
    auto key = text.find("\"kernel\"");
    REQUIRE(key != std::string::npos);
    auto pos = text.find("\"1\"", key);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "\"0.99\"");
    try {
        load_channel(text);
        FAIL("expected NormalizationError");
    } catch (const NormalizationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("S1=0") != std::string::npos);
        CHECK(msg.find("sums to") != std::string::npos);
    }
}

TEST_CASE("unknown alphabet reference raises NameError") {
    std::string text = R"({"alphabets": {"S1": ["0"], "S9": ["0"]}, "state_pmf": [], "kernel": []})";
    CHECK_THROWS_AS(load_channel(text), NameError);
    std::string missing = R"({"alphabets": {"S1": ["0"]}, "state_pmf": [], "kernel": []})";
    CHECK_THROWS_AS(load_channel(missing), NameError);
}

TEST_CASE("parse errors carry position information") {
    try {
        load_channel("{ not json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("parse error") != std::string::npos);
    }
    CHECK_THROWS_AS(load_channel(R"({"alphabets": {}})"), NameError);
}

TEST_CASE("malformed probability strings are rejected") {
    std::string text = R"({
      "alphabets": {"S1": ["0"], "S2": ["0"], "X1": ["0"], "X2": ["0"],
                    "Y": ["0"], "Z1": ["0"], "Z2": ["0"]},
      "state_pmf": ["one"], "kernel": ["1"]})";
    CHECK_THROWS_AS(load_channel(text), ParseError);
    std::string bad_rat = R"({
      "alphabets": {"S1": ["0"], "S2": ["0"], "X1": ["0"], "X2": ["0"],
                    "Y": ["0"], "Z1": ["0"], "Z2": ["0"]},
      "state_pmf": ["1/0"], "kernel": ["1"]})";
    CHECK_THROWS_AS(load_channel(bad_rat), ParseError);
}
