#include "doctest.h"
#include "macsense/errors.hpp"
#include "macsense/linear_system.hpp"

using namespace macsense;

TEST_CASE("rationalize rounds to the dyadic lattice") {
    CHECK(rationalize(0.5) == Rat(1, 2));
    CHECK(rationalize(1.0 / 3.0, 2) == Rat(1, 4));   // 0.333... -> 0.25 at step 1/4
    CHECK(rationalize(0.4, 2) == Rat(1, 2));         // round half up at step 1/4
    CHECK(rationalize(-0.1, 1) == Rat(0));
    Rat r = rationalize(0.123456789);
    mpz_class den = 1;
    den <<= 40;
    CHECK(r.get_den() <= den);
}

TEST_CASE("eliminate: bounded variable leaves a feasible empty system") {
    RationalLinearSystem sys({"x"});
    sys.add({Rat(1)}, "<=", Rat(3));
    sys.add({Rat(1)}, ">=", Rat(1));
    auto out = sys.eliminated("x");
    CHECK_FALSE(out.infeasible());
    CHECK(out.size() == 0);
}

TEST_CASE("eliminate: contradictory bounds mark infeasibility") {
    RationalLinearSystem sys({"x"});
    sys.add({Rat(1)}, "<=", Rat(1));
    sys.add({Rat(1)}, ">=", Rat(2));
    auto out = sys.eliminated("x");
    CHECK(out.infeasible());
}

TEST_CASE("eliminate: transitivity through a middle variable") {
    RationalLinearSystem sys({"x", "y", "z"});
    sys.add({Rat(-1), Rat(1), Rat(0)}, "<=", Rat(0));  // y <= x
    sys.add({Rat(1), Rat(0), Rat(-1)}, "<=", Rat(0));  // x <= z
    auto out = sys.eliminated("x");
    REQUIRE(out.size() == 1);
    const auto& row = out.inequalities()[0];
    CHECK(row.coeff[0] == Rat(1));   // y
    CHECK(row.coeff[1] == Rat(-1));  // -z
    CHECK(row.rhs == Rat(0));
}

TEST_CASE("eliminate: strictness rules") {
    RationalLinearSystem sys({"x", "y"});
    sys.add({Rat(1), Rat(-1)}, "<", Rat(0));   // x < y
    sys.add({Rat(-1), Rat(0)}, "<=", Rat(-1));  // x >= 1
    auto out = sys.eliminated("x");
    REQUIRE(out.size() == 1);
    CHECK(out.inequalities()[0].rel == Rel::LT);  // 1 < y
}

TEST_CASE("project: box onto one axis") {
    RationalLinearSystem sys({"x", "y"});
    sys.add({Rat(1), Rat(0)}, "<=", Rat(1));
    sys.add({Rat(-1), Rat(0)}, "<=", Rat(0));
    sys.add({Rat(0), Rat(1)}, "<=", Rat(1));
    sys.add({Rat(0), Rat(-1)}, "<=", Rat(0));
    auto out = sys.projected({"x"});
    CHECK(out.variables() == std::vector<std::string>{"x"});
    CHECK(out.contains({Rat(1, 2)}));
    CHECK(out.contains({Rat(0)}));
    CHECK(out.contains({Rat(1)}));
    CHECK_FALSE(out.contains({Rat(3, 2)}));
    CHECK_FALSE(out.contains({Rat(-1, 2)}));
}

TEST_CASE("project: onto all variables is the identity") {
    RationalLinearSystem sys({"x", "y"});
    sys.add({Rat(2), Rat(1)}, "<=", Rat(3));
    sys.add({Rat(-1), Rat(0)}, "<", Rat(0));
    auto out = sys.projected({"x", "y"});
    REQUIRE(out.size() == sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        CHECK(out.inequalities()[i].coeff == sys.inequalities()[i].coeff);
        CHECK(out.inequalities()[i].rhs == sys.inequalities()[i].rhs);
    }
}

TEST_CASE("systems_equivalent: identity and redundancy") {
    RationalLinearSystem a({"x"});
    a.add({Rat(1)}, "<=", Rat(1));
    auto self = systems_equivalent(a, a, {Rat(2)}, 50, 100, 7);
    CHECK(self.equivalent);

    RationalLinearSystem b({"x"});
    b.add({Rat(1)}, "<=", Rat(1));
    b.add({Rat(1)}, "<=", Rat(2));  // redundant
    CHECK(systems_equivalent(a, b, {Rat(2)}, 50, 100, 7).equivalent);

    RationalLinearSystem c({"x"});
    c.add({Rat(1)}, "<=", Rat(3, 2));
    auto diff = systems_equivalent(a, c, {Rat(2)}, 50, 100, 7);
    CHECK_FALSE(diff.equivalent);
    REQUIRE(diff.counterexample.size() == 1);
    CHECK(diff.counterexample[0] > Rat(1));
    CHECK(diff.counterexample[0] <= Rat(3, 2));
}

TEST_CASE("dump format uses exact rational literals") {
    RationalLinearSystem sys({"R1", "R2"});
    sys.add({Rat(1), Rat(1)}, "<", Rat(3, 2));
    sys.add({Rat(1), Rat(0)}, ">=", Rat(0));
    auto text = sys.dump();
    CHECK(text.find("1*R1 + 1*R2 < 3/2") != std::string::npos);
    CHECK(text.find("-1*R1 <= 0") != std::string::npos);
}

TEST_CASE("soundness and completeness of projection on a random-ish system") {
    // x + y + z <= 2, x - z <= 1/2, nonnegativity; project out z, then y.
    RationalLinearSystem sys({"x", "y", "z"});
    sys.add({Rat(1), Rat(1), Rat(1)}, "<=", Rat(2));
    sys.add({Rat(1), Rat(0), Rat(-1)}, "<=", Rat(1, 2));
    sys.add({Rat(-1), Rat(0), Rat(0)}, "<=", Rat(0));
    sys.add({Rat(0), Rat(-1), Rat(0)}, "<=", Rat(0));
    sys.add({Rat(0), Rat(0), Rat(-1)}, "<=", Rat(0));
    auto step1 = sys.eliminated("z");
    auto proj = step1.eliminated("y");

    // Soundness: projections of feasible points stay feasible.
    for (int xi = 0; xi <= 8; ++xi)
        for (int yi = 0; yi <= 8; ++yi)
            for (int zi = 0; zi <= 8; ++zi) {
                std::vector<Rat> p = {Rat(xi, 4), Rat(yi, 4), Rat(zi, 4)};
                if (!sys.contains(p)) continue;
                CHECK(step1.contains({p[0], p[1]}));
                CHECK(proj.contains({p[0]}));
            }

    // Completeness: feasible projected points extend back, reconstructing the
    // eliminated coordinates in reverse elimination order via interval
    // intersection.
    auto extend = [](const RationalLinearSystem& parent, const std::vector<Rat>& partial,
                     std::size_t var_index) -> Rat {
        Rat lo(0), hi(0);
        bool has_lo = false, has_hi = false;
        for (const auto& row : parent.inequalities()) {
            const Rat c = row.coeff[var_index];
            Rat rest = -row.rhs;
            std::size_t pi = 0;
            for (std::size_t i = 0; i < row.coeff.size(); ++i) {
                if (i == var_index) continue;
                rest += row.coeff[i] * partial[pi++];
            }
            // row: c*v + rest' <= rhs  ->  v <= (rhs - rest')/c for c > 0
            if (c > 0) {
                Rat bound = -rest / c;
                if (!has_hi || bound < hi) hi = bound;
                has_hi = true;
            } else if (c < 0) {
                Rat bound = -rest / c;
                if (!has_lo || bound > lo) lo = bound;
                has_lo = true;
            }
        }
        REQUIRE((!has_lo || !has_hi || lo <= hi));
        if (has_lo && has_hi) return (lo + hi) / 2;
        if (has_lo) return lo;
        if (has_hi) return hi;
        return Rat(0);
    };

    for (int xi = 0; xi <= 8; ++xi) {
        std::vector<Rat> px = {Rat(xi, 4)};
        if (!proj.contains(px)) continue;
        Rat y = extend(step1, px, 1);
        CHECK(step1.contains({px[0], y}));
        Rat z = extend(sys, {px[0], y}, 2);
        CHECK(sys.contains({px[0], y, z}));
    }
}

TEST_CASE("domination pruning over nonnegative variables") {
    RationalLinearSystem sys({"x", "y"});
    sys.mark_all_nonnegative();
    sys.add({Rat(1), Rat(1)}, "<=", Rat(3));
    sys.add({Rat(1), Rat(0)}, "<=", Rat(3));  // implied by the first for y >= 0
    CHECK(sys.size() == 1);
    CHECK(sys.inequalities()[0].coeff == std::vector<Rat>{Rat(1), Rat(1)});
}
