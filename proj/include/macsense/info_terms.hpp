#pragma once

#include <array>
#include <string>

#include "macsense/joint.hpp"

namespace macsense {

// The sixteen conditional mutual informations (bits) that parameterize the
// achievable rate region, all conditioned on U = (U0,U1,U2) where noted:
//   I0  = I(V1; X1 X2 Y | U) + I(V2; X1 X2 Y V1 | U)
//   I1  = I(V1; X1 Z1 | U)        I2  = I(V2; X2 Z2 | U)
//   I3  = I(U1; X2 Z2 | U0 U2)    I4  = I(U2; X1 Z1 | U0 U1)
//   I5  = I(V1; X2 Z2 | U)        I6  = I(V2; X1 Z1 | U)
//   I7  = I(X1 X2; Y V1 V2 | U)
//   I8  = I(X1; Y V1 V2 | U X2)   I9  = I(X2; Y V1 V2 | U X1)
//   I10 = I(X1; Y | U0 X2)        I11 = I(X2; Y | U0 X1)
//   I12 = I(X1 X2; Y | U0 U2)     I13 = I(X1 X2; Y | U0 U1)
//   I14 = I(X1 X2; Y | U0)        I15 = I(X1 X2; Y)
struct InfoTerms {
    std::array<double, 16> v{};

    double operator[](std::size_t i) const { return v[i]; }
    double& operator[](std::size_t i) { return v[i]; }

    std::string to_string() const;
};

// Evaluates all sixteen terms on an assembled 12-variable joint. The Markov
// structure of a correctly assembled joint forces I1 >= I5, I2 >= I6,
// I7 >= I9, I13 >= I11, I12 >= I10 and I7 >= I8; a violation beyond 1e-9
// raises InternalConsistencyError since it can only come from a malformed
// joint.
InfoTerms compute_info_terms(const JointDistribution& joint);

}  // namespace macsense
