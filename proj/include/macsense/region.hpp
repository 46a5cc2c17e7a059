#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macsense/info_terms.hpp"
#include "macsense/joint.hpp"

namespace macsense {

// One upper bound a1*R1 + a2*R2 <= rhs (strict when `strict`). Coefficients
// are always in {0,1}.
struct RateBound {
    int a1 = 0;
    int a2 = 0;
    double rhs = 0.0;
    bool strict = true;
    std::string name;
};

// Named feasibility condition with its signed slack (>= 0 means satisfied).
struct FeasibilityCondition {
    std::string name;
    double slack = 0.0;
};

// Explicit inequality description of an achievable-rate set on (R1,R2),
// together with R1 >= 0, R2 >= 0 which are implicit. When any feasibility
// slack is negative beyond the closure tolerance the region is empty.
struct RegionDescription {
    std::vector<RateBound> bounds;
    std::vector<FeasibilityCondition> feasibility;

    double min_rhs(int a1, int a2) const;  // tightest bound with this coefficient pair
    bool feasible(double slack_tol = 1e-9) const;
    std::string to_csv() const;  // a1,a2,rhs_bits,strict rows
    // Corner points of the polygon under closure, counter-clockwise from the
    // origin; empty when the region is empty.
    std::vector<std::pair<double, double>> vertices(double slack_tol = 1e-9) const;
};

// Rate region in the sixteen-term form: min-expressions are expanded into one
// inequality per argument (4 + 4 + 4 + 1 rate bounds) and the five decoding
// feasibility conditions carry signed slack.
RegionDescription theorem_region(const InfoTerms& info);

// Same region transcribed term-by-term from the layered-scheme inequalities
// and evaluated directly on the joint (independent route used for
// cross-checking; composite informations are computed as written, not via
// InfoTerms).
RegionDescription theorem_region_direct(const JointDistribution& joint);

// Constant-compression specialization: the four bounds
//   R_k <= I(X_k;Y | X_kbar U_k U0) + I(U_k;Z_kbar | X_kbar U0)
//   R1+R2 <= I(X1 X2;Y)
//   R1+R2 <= I(X1 X2;Y | U0 U1 U2) + I(U1;Z2|X2 U0) + I(U2;Z1|X1 U0)
// evaluated directly from the joint. Requires V1 and V2 singleton.
RegionDescription corollary_region(const JointDistribution& joint);

// Membership test: with `closure` strict bounds are relaxed to <= with 1e-9
// slack; otherwise strict bounds are tested strictly.
bool point_feasible(const RegionDescription& region, double r1, double r2, bool closure);

// Maximum of R1 + R2 over the region under closure; nullopt when empty.
std::optional<double> max_sum_rate(const RegionDescription& region, double slack_tol = 1e-9);

}  // namespace macsense
