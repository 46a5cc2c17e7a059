#pragma once

#include <string>
#include <vector>

#include "macsense/channel.hpp"
#include "macsense/joint.hpp"

namespace macsense {

// Symbol-wise Bayes decision table: one reconstruction symbol per
// conditioning tuple. Conditioning variables are kept in the owning joint's
// declaration order; decisions are flat row-major over that order.
struct EstimatorTable {
    int user = 1;
    std::vector<Variable> conditioning;
    Alphabet reconstruction;
    std::vector<int> decision;

    std::size_t cond_cells() const;
    std::string to_csv() const;
};

// Conditioning set (X_k, Z_k, U_kbar, V_kbar) of the per-user estimator.
VariableSet default_estimator_conditioning(int user);
// Same plus U0; selectable because the common codeword is also known at both
// transmitters after decoding.
VariableSet extended_estimator_conditioning(int user);

// Bayes-optimal table: for every conditioning tuple c with positive mass,
// picks argmin over s' of sum_s P(S_k = s, c) d(s, s'); ties and zero-mass
// tuples resolve to the lowest reconstruction index.
EstimatorTable optimal_estimator(const JointDistribution& joint, int user,
                                 const DistortionTable& d, const VariableSet& conditioning);

// E[d(S_k, decision(c))] under the joint.
double expected_distortion(const JointDistribution& joint, const EstimatorTable& est,
                           const DistortionTable& d);

// expected_distortion(optimal_estimator(...)) in a single sweep over one
// marginal; used by parameter searches where the table itself is not needed.
double optimal_expected_distortion(const JointDistribution& joint, int user,
                                   const DistortionTable& d, const VariableSet& conditioning);

// Closed form q * p_s * (1 - p_s) for the erasure-compression scheme's
// minimum distortion at Pr[X1 = 1] = q on the adder channel.
double min_distortion_formula_example2(double q, double p_s);

}  // namespace macsense
