#include <cmath>

#include "doctest.h"
#include "macsense/channel.hpp"
#include "macsense/errors.hpp"
#include "macsense/joint.hpp"
#include "macsense/scheme.hpp"
#include "oracles.hpp"

using namespace macsense;

namespace {
JointDistribution independent_pair() {
    // P(a,b) = P(a) P(b) with P(A=1) = 0.7, B uniform.
    std::vector<Variable> vars = {{"A", Alphabet::binary("A")}, {"B", Alphabet::binary("B")}};
    return JointDistribution(vars, {0.3 * 0.5, 0.3 * 0.5, 0.7 * 0.5, 0.7 * 0.5});
}

JointDistribution example2_corollary_joint() {
    ChannelSpec ch = build_example2(0.9, 0.2);
    Example2SchemeParams p;  // X1 = 0 deterministically, X2 = 1
    p.p_u2_given_u0[0] = p.p_u2_given_u0[1] = 1.0;
    p.e = 1.0;
    return assemble_joint(ch, build_example2_scheme(p, ch));
}
}  // namespace

TEST_CASE("marginalize: dropping all variables leaves the scalar unit mass") {
    auto m = marginalize(independent_pair(), {});
    CHECK(m.variable_count() == 0);
    REQUIRE(m.cell_count() == 1);
    CHECK(m.weights()[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginalize: product measure recovers the factor") {
    auto m = marginalize(independent_pair(), {"A"});
    REQUIRE(m.cell_count() == 2);
    CHECK(m.weights()[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(m.weights()[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("marginalize: adder-channel joint state marginal") {
    auto m = marginalize(example2_corollary_joint(), {"S2"});
    REQUIRE(m.cell_count() == 2);
    CHECK(m.weights()[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(m.weights()[1] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("marginalize: unknown variable raises NameError") {
    CHECK_THROWS_AS(marginalize(independent_pair(), {"Q"}), NameError);
}

TEST_CASE("cmi: independent variables carry zero information") {
    CHECK(conditional_mutual_information(independent_pair(), {"A"}, {"B"}, {}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cmi: identical uniform bits carry one bit") {
    std::vector<Variable> vars = {{"A", Alphabet::binary("A")}, {"B", Alphabet::binary("B")}};
    JointDistribution j(vars, {0.5, 0.0, 0.0, 0.5});
    CHECK(conditional_mutual_information(j, {"A"}, {"B"}, {}) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cmi: noisy state observation matches the direct 8-cell oracle") {
    // X1 = 0, X2 = 1, so Z2 = S2 + B with S2 ~ Ber(0.9), B ~ Ber(0.2).
    const double ps = 0.9, t = 0.2;
    auto j = example2_corollary_joint();
    double lib = conditional_mutual_information(j, {"S2"}, {"Z2"}, {"X2"});

    // Direct summation over the (S2,B) table.
    double pz[3] = {(1 - ps) * (1 - t), (1 - ps) * t + ps * (1 - t), ps * t};
    double hz = -(pz[0] * std::log2(pz[0]) + pz[1] * std::log2(pz[1]) + pz[2] * std::log2(pz[2]));
    double expected = hz - oracle::binary_entropy(t);

    CHECK(lib == doctest::Approx(expected).epsilon(1e-12));
    CHECK(lib == doctest::Approx(0.33634610406232357).epsilon(1e-12));
    CHECK(lib == doctest::Approx(oracle::cmi(j, {"S2"}, {"Z2"}, {"X2"})).epsilon(1e-12));
}

TEST_CASE("cmi: overlapping sets are rejected") {
    CHECK_THROWS_AS(conditional_mutual_information(independent_pair(), {"A"}, {"A"}, {}),
                    std::invalid_argument);
}

TEST_CASE("entropy: deterministic, uniform, Bernoulli") {
    std::vector<Variable> vars = {{"A", Alphabet::numeric("A", 4)}};
    CHECK(entropy(JointDistribution(vars, {1, 0, 0, 0}), {"A"}) == doctest::Approx(0.0));
    CHECK(entropy(JointDistribution(vars, {0.25, 0.25, 0.25, 0.25}), {"A"}) ==
          doctest::Approx(2.0).epsilon(1e-12));
    std::vector<Variable> b = {{"A", Alphabet::binary("A")}};
    CHECK(entropy(JointDistribution(b, {0.1, 0.9}), {"A"}) ==
          doctest::Approx(oracle::binary_entropy(0.9)).epsilon(1e-12));
    CHECK(oracle::binary_entropy(0.9) == doctest::Approx(0.4689955935892811).epsilon(1e-14));
}

TEST_CASE("validate: clean, deficient, and negative tensors") {
    CHECK(validate(independent_pair()).empty());

    std::vector<Variable> vars = {{"A", Alphabet::binary("A")}};
    auto half = JointDistribution::unchecked(vars, {0.25, 0.25});
    auto d = validate(half);
    REQUIRE_FALSE(d.empty());
    CHECK(d.normalization_deficit == doctest::Approx(0.5).epsilon(1e-12));

    auto neg = JointDistribution::unchecked(vars, {1.0 + 1e-9, -1e-9});
    auto dn = validate(neg);
    bool found = false;
    for (const auto& issue : dn.issues)
        if (issue.kind == "negative" && issue.detail.find("cell 1") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("properties: nonnegativity, symmetry, chain rule on random joints") {
    SplitMix64 rng(20240811);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> sizes;
        std::size_t cells = 1;
        for (std::size_t i = 0; i < 4; ++i) {
            std::size_t s = 2 + rng.below(3);
            if (cells * s > 4096) s = 2;
            sizes.push_back(s);
            cells *= s;
        }
        auto j = oracle::random_joint(rng, sizes);
        VariableSet A{"A0"}, B{"A1"}, C{"A2"};

        double iab = conditional_mutual_information(j, A, B, C);
        double iba = conditional_mutual_information(j, B, A, C);
        CHECK(iab >= 0.0);
        CHECK(std::fabs(iab - iba) <= 1e-10);

        // I(A; B,D | C) = I(A;B|C) + I(A;D|B,C)
        double lhs = conditional_mutual_information(j, A, {"A1", "A3"}, C);
        double rhs = conditional_mutual_information(j, A, {"A1"}, C) +
                     conditional_mutual_information(j, A, {"A3"}, {"A1", "A2"});
        CHECK(std::fabs(lhs - rhs) <= 1e-9);
        CHECK(std::fabs(iab - oracle::cmi(j, {"A0"}, {"A1"}, {"A2"})) <= 1e-10);

        // H(A|C) stays within [0, log2 |range(A)|]
        double h = entropy(j, A, C);
        CHECK(h >= 0.0);
        CHECK(h <= std::log2(static_cast<double>(sizes[0])) + 1e-12);
    }
}

TEST_CASE("properties: marginalization commutes exactly on dyadic tensors") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        auto j = oracle::dyadic_joint(rng, {3, 2, 4, 2});
        auto two_step = marginalize(marginalize(j, {"B0", "B2", "B3"}), {"B0", "B3"});
        auto direct = marginalize(j, {"B0", "B3"});
        REQUIRE(two_step.cell_count() == direct.cell_count());
        for (std::size_t i = 0; i < direct.cell_count(); ++i)
            CHECK(two_step.weights()[i] == direct.weights()[i]);  // bitwise
    }
}

TEST_CASE("alphabets reject duplicate symbols and empty symbol lists") {
    CHECK_THROWS_AS(Alphabet("A", {"x", "x"}), NameError);
    CHECK_THROWS_AS(Alphabet("A", {}), ShapeError);
    CHECK_THROWS_AS(Alphabet::binary("A").index_of("2"), NameError);
}

TEST_CASE("assembled built-in channels validate cleanly") {
    auto ch = build_example2(0.9, 0.2);
    Example2SchemeParams p;
    p.p_u0 = 0.5;
    p.p_u1_given_u0[0] = 0.3;
    p.e = 0.5;
    CHECK(validate(assemble_joint(ch, build_example2_scheme(p, ch))).empty());
    CHECK(validate(ch.state_joint()).empty());
}

TEST_CASE("properties: mass preserved under marginalization") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        auto j = oracle::random_joint(rng, {4, 3, 3, 2});
        auto m = marginalize(j, {"A1", "A3"});
        double total = 0.0;
        for (double w : m.weights()) total += w;
        CHECK(std::fabs(total - 1.0) <= 1e-12);
    }
}
