#include "macsense/fme_bridge.hpp"

#include <algorithm>

namespace macsense {

RationalInfoTerms RationalInfoTerms::from(const InfoTerms& info, unsigned denom_bits) {
    RationalInfoTerms r;
    for (std::size_t i = 0; i < 16; ++i) {
        r.v[i] = rationalize(info[i], denom_bits);
        if (r.v[i] < 0) r.v[i] = 0;
    }
    auto clamp_to = [&](std::size_t lo, std::size_t hi) {
        if (r.v[lo] > r.v[hi]) r.v[lo] = r.v[hi];
    };
    clamp_to(5, 1);    // I1 >= I5
    clamp_to(6, 2);    // I2 >= I6
    clamp_to(9, 7);    // I7 >= I9
    clamp_to(8, 7);    // I7 >= I8
    clamp_to(11, 13);  // I13 >= I11
    clamp_to(10, 12);  // I12 >= I10
    return r;
}

namespace {
// Variable order shared by both systems.
const std::vector<std::string> kSubrateVars = {"R1", "R2", "R1p", "R2p", "R1v", "R2v"};
const std::vector<std::string> kRateVars = {"R1", "R2"};
constexpr int R1 = 0, R2 = 1, R1p = 2, R2p = 3, R1v = 4, R2v = 5;

std::vector<Rat> row6() { return std::vector<Rat>(6, Rat(0)); }
}  // namespace

RationalLinearSystem build_subrates_system(const RationalInfoTerms& t) {
    const auto& I = t.v;
    RationalLinearSystem sys(kSubrateVars);

    auto add = [&](std::initializer_list<int> plus_vars, const char* rel, Rat rhs,
                   std::initializer_list<int> minus_vars = {}) {
        auto c = row6();
        for (int v : plus_vars) c[v] += 1;
        for (int v : minus_vars) c[v] -= 1;
        sys.add(std::move(c), rel, std::move(rhs));
    };

    add({R1v}, ">", I[1]);                                    // covering V1
    add({R2v}, ">", I[2]);                                    // covering V2
    add({R2v, R1}, "<", I[2] + I[3], {R1p});                  // Tx2 decodes W1c
    add({R1v, R2}, "<", I[1] + I[4], {R2p});                  // Tx1 decodes W2c
    add({R1v, R2v, R1}, "<", I[2] + I[3] + I[5], {R1p});      // Tx2 decodes W1c and J1
    add({R1v, R2v, R2}, "<", I[1] + I[4] + I[6], {R2p});      // Tx1 decodes W2c and J2
    add({R1p, R2p}, "<", I[7]);
    add({R1p}, "<", I[8]);
    add({R2p}, "<", I[9]);
    add({R1v, R1p}, "<", I[10] + I[0]);
    add({R2v, R2p}, "<", I[11] + I[0]);
    add({R1v, R1p, R2p}, "<", I[12] + I[0]);
    add({R2v, R1p, R2p}, "<", I[13] + I[0]);
    add({R1v, R1p, R2v, R2p}, "<", I[14] + I[0]);
    add({R1v, R1, R2v, R2}, "<", I[15] + I[0]);

    for (int v : {R1, R2, R1p, R2p, R1v, R2v}) add({v}, ">=", Rat(0));
    add({R1}, ">=", Rat(0), {R1p});  // common part R1 - R1p
    add({R2}, ">=", Rat(0), {R2p});
    sys.mark_all_nonnegative();
    return sys;
}

RationalLinearSystem theorem_region_system(const RationalInfoTerms& t) {
    const auto& I = t.v;
    RationalLinearSystem sys(kRateVars);
    const Rat base1 = I[3] + I[5] - I[1];
    const Rat base2 = I[4] + I[6] - I[2];
    const Rat m14 = I[14] + I[0] - I[1] - I[2];

    auto add = [&](int a1, int a2, Rat rhs) {
        sys.add({Rat(a1), Rat(a2)}, "<", std::move(rhs));
    };
    add(1, 0, base1 + I[8]);
    add(1, 0, base1 + I[10] + I[0] - I[1]);
    add(1, 0, base1 + I[13] + I[0] - I[2]);
    add(1, 0, base1 + m14);
    add(0, 1, base2 + I[9]);
    add(0, 1, base2 + I[11] + I[0] - I[2]);
    add(0, 1, base2 + I[12] + I[0] - I[1]);
    add(0, 1, base2 + m14);
    add(1, 1, base1 + base2 + I[7]);
    add(1, 1, base1 + base2 + I[12] + I[0] - I[1]);
    add(1, 1, base1 + base2 + I[13] + I[0] - I[2]);
    add(1, 1, base1 + base2 + m14);
    add(1, 1, I[15] + I[0] - I[1] - I[2]);

    sys.add({Rat(1), Rat(0)}, ">=", Rat(0));
    sys.add({Rat(0), Rat(1)}, ">=", Rat(0));

    // Feasibility conditions as constant rows: 0 < slack. An infeasible
    // scheme leaves the system marked infeasible, matching the projection.
    sys.add({Rat(0), Rat(0)}, ">", -(base1));
    sys.add({Rat(0), Rat(0)}, ">", -(base2));
    sys.add({Rat(0), Rat(0)}, ">", -m14);
    sys.add({Rat(0), Rat(0)}, ">", -(I[10] + I[0] - I[1]));
    sys.add({Rat(0), Rat(0)}, ">", -(I[11] + I[0] - I[2]));
    sys.mark_all_nonnegative();
    return sys;
}

FmeVerification verify_fme_instance(const InfoTerms& info, std::size_t grid_per_axis,
                                    std::size_t random_samples, std::uint64_t seed,
                                    std::optional<Rat> perturb_rhs) {
    RationalInfoTerms rt = RationalInfoTerms::from(info);
    RationalLinearSystem subrates = build_subrates_system(rt);
    RationalLinearSystem projected =
        subrates.projected(kRateVars, {"R1v", "R2v", "R1p", "R2p"});
    RationalLinearSystem transcribed = theorem_region_system(rt);

    if (perturb_rhs && !projected.infeasible() && !projected.inequalities().empty()) {
        RationalLinearSystem tweaked(kRateVars);
        bool first = true;
        for (const auto& row : projected.inequalities()) {
            Rat rhs = row.rhs;
            if (first) {
                rhs += *perturb_rhs;
                first = false;
            }
            tweaked.add(row.coeff, row.rel == Rel::LT ? "<" : "<=", rhs);
        }
        projected = tweaked;
    }

    // Box: a bit beyond the largest finite rate bound so boundary rows matter.
    Rat hi(1);
    for (const auto& row : transcribed.inequalities()) {
        bool constant = true;
        for (const auto& c : row.coeff) constant = constant && c == 0;
        if (!constant && row.rhs > hi) hi = row.rhs;
    }
    hi += Rat(1, 8);

    FmeVerification out;
    out.box_hi = hi;
    out.projected_rows = projected.size();
    out.report = systems_equivalent(projected, transcribed, {hi, hi}, grid_per_axis,
                                    random_samples, seed);
    return out;
}

}  // namespace macsense
