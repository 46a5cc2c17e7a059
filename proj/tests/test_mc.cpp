#include <cmath>

#include "doctest.h"
#include "macsense/errors.hpp"
#include "macsense/mc.hpp"
#include "macsense/scheme.hpp"
#include "oracles.hpp"

using namespace macsense;

namespace {
JointDistribution example2_scheme_joint(double q, double e) {
    auto ch = build_example2(0.9, 0.2);
    Example2SchemeParams p;
    p.p_u1_given_u0[0] = p.p_u1_given_u0[1] = q;
    p.p_u2_given_u0[0] = p.p_u2_given_u0[1] = 1.0;
    p.e = e;
    return assemble_joint(ch, build_example2_scheme(p, ch));
}
}  // namespace

TEST_CASE("sampling is deterministic and stays in support") {
    std::vector<Variable> vars = {{"A", Alphabet::binary("A")}};
    JointDistribution j(vars, {0.1, 0.9});
    auto b1 = sample_joint(j, 1000, 42);
    auto b2 = sample_joint(j, 1000, 42);
    CHECK(b1.cells == b2.cells);

    JointDistribution point(vars, {0.0, 1.0});
    auto bp = sample_joint(point, 200, 7);
    for (auto c : bp.cells) CHECK(c == 1);
}

TEST_CASE("law of large numbers at n = 1e5") {
    std::vector<Variable> vars = {{"A", Alphabet::binary("A")}};
    JointDistribution j(vars, {0.1, 0.9});
    auto batch = sample_joint(j, 100000, 2024);
    double mean = 0;
    for (auto c : batch.cells) mean += static_cast<double>(c);
    mean /= static_cast<double>(batch.n);
    CHECK(std::fabs(mean - 0.9) <= 3.0 * std::sqrt(0.09 / 100000.0));
}

TEST_CASE("empirical distortion near the analytic values") {
    auto ch = build_example2(0.9, 0.2);
    auto d = ch.distortion_for(2);

    auto jc = example2_scheme_joint(0.0, 1.0);  // constant compression point
    auto est_c = optimal_estimator(jc, 2, d, default_estimator_conditioning(2));
    auto batch_c = sample_joint(jc, 100000, 11);
    auto emp_c = empirical_distortion(jc, batch_c, est_c, d);
    CHECK(std::fabs(emp_c.mean - 0.02) <= 3.0 * emp_c.standard_error);

    auto jt = example2_scheme_joint(0.1, 0.0);  // compression-aided point
    auto est_t = optimal_estimator(jt, 2, d, VariableSet{"X2", "Z2", "V1"});
    auto batch_t = sample_joint(jt, 100000, 12);
    auto emp_t = empirical_distortion(jt, batch_t, est_t, d);
    CHECK(std::fabs(emp_t.mean - 0.009) <= 3.0 * emp_t.standard_error);
}

TEST_CASE("zero-distortion schemes give exactly zero on every batch") {
    // estimate S2 from a conditioning set containing its copy Z1 = Y' when
    // X1=0, X2=1: Y' = S2 exactly
    auto j = example2_scheme_joint(0.0, 0.0);
    auto ch = build_example2(0.9, 0.2);
    auto d = ch.distortion_for(2);
    auto est = optimal_estimator(j, 2, d, VariableSet{"X2", "Z1"});
    for (std::uint64_t seed : {1, 2, 3}) {
        auto batch = sample_joint(j, 2000, seed);
        CHECK(empirical_distortion(j, batch, est, d).mean == 0.0);
    }
}

TEST_CASE("standard error scales like 1/sqrt(n)") {
    auto j = example2_scheme_joint(0.0, 1.0);
    auto ch = build_example2(0.9, 0.2);
    auto d = ch.distortion_for(2);
    auto est = optimal_estimator(j, 2, d, default_estimator_conditioning(2));
    auto se_at = [&](std::size_t n, std::uint64_t seed) {
        return empirical_distortion(j, sample_joint(j, n, seed), est, d).standard_error;
    };
    // average a few seeds to stabilize the ratio
    double r1 = 0, r4 = 0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        r1 += se_at(20000, 100 + s);
        r4 += se_at(80000, 200 + s);
    }
    double ratio = r1 / r4;  // expect about 2
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("consistency: 4-sigma coverage across 200 seeded runs") {
    SplitMix64 rng(606060);
    int ok = 0, total = 0;
    for (int scheme_idx = 0; scheme_idx < 10; ++scheme_idx) {
        auto ch = random_channel222(rng);
        auto sc = random_scheme(ch, rng);
        auto j = assemble_joint(ch, sc);
        auto d = ch.distortion_for(2);
        auto est = optimal_estimator(j, 2, d, default_estimator_conditioning(2));
        double analytic = expected_distortion(j, est, d);
        for (int run = 0; run < 20; ++run) {
            auto batch = sample_joint(j, 4000, 9000 + scheme_idx * 100 + run);
            auto emp = empirical_distortion(j, batch, est, d);
            double se = std::max(emp.standard_error, 1e-12);
            if (std::fabs(emp.mean - analytic) <= 4.0 * se) ++ok;
            ++total;
        }
    }
    CHECK(total == 200);
    CHECK(ok >= 198);  // >= 99%
}

TEST_CASE("sample count must be positive") {
    std::vector<Variable> vars = {{"A", Alphabet::binary("A")}};
    JointDistribution j(vars, {0.5, 0.5});
    CHECK_THROWS_AS(sample_joint(j, 0, 1), DomainError);
}
