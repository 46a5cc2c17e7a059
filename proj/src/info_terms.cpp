#include "macsense/info_terms.hpp"

#include <sstream>

#include "macsense/errors.hpp"

namespace macsense {

namespace {
constexpr double kDominanceTol = 1e-9;

void check_dominates(double hi, double lo, const char* label) {
    if (hi + kDominanceTol < lo)
        throw InternalConsistencyError(std::string("information-term dominance violated: ") +
                                       label);
}
}  // namespace

std::string InfoTerms::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << "I" << i << " = " << v[i];
        if (i + 1 < v.size()) os << "\n";
    }
    return os.str();
}

InfoTerms compute_info_terms(const JointDistribution& full) {
    const VariableSet needed{"U0", "U1", "U2", "X1", "X2", "Y", "Z1", "Z2", "V1", "V2"};
    for (const auto& name : needed.names())
        if (!full.has_variable(name)) throw NameError("joint lacks variable " + name);

    // None of the terms involve the states, so drop them up front.
    const JointDistribution joint =
        full.variable_count() > needed.size() ? marginalize(full, needed) : full;

    const VariableSet U{"U0", "U1", "U2"};
    auto I = [&](const VariableSet& a, const VariableSet& b, const VariableSet& c) {
        return conditional_mutual_information(joint, a, b, c);
    };

    InfoTerms t;
    t[0] = I({"V1"}, {"X1", "X2", "Y"}, U) + I({"V2"}, {"X1", "X2", "Y", "V1"}, U);
    t[1] = I({"V1"}, {"X1", "Z1"}, U);
    t[2] = I({"V2"}, {"X2", "Z2"}, U);
    t[3] = I({"U1"}, {"X2", "Z2"}, {"U0", "U2"});
    t[4] = I({"U2"}, {"X1", "Z1"}, {"U0", "U1"});
    t[5] = I({"V1"}, {"X2", "Z2"}, U);
    t[6] = I({"V2"}, {"X1", "Z1"}, U);
    t[7] = I({"X1", "X2"}, {"Y", "V1", "V2"}, U);
    t[8] = I({"X1"}, {"Y", "V1", "V2"}, {"U0", "U1", "U2", "X2"});
    t[9] = I({"X2"}, {"Y", "V1", "V2"}, {"U0", "U1", "U2", "X1"});
    t[10] = I({"X1"}, {"Y"}, {"U0", "X2"});
    t[11] = I({"X2"}, {"Y"}, {"U0", "X1"});
    t[12] = I({"X1", "X2"}, {"Y"}, {"U0", "U2"});
    t[13] = I({"X1", "X2"}, {"Y"}, {"U0", "U1"});
    t[14] = I({"X1", "X2"}, {"Y"}, {"U0"});
    t[15] = I({"X1", "X2"}, {"Y"}, {});

    check_dominates(t[1], t[5], "I1 >= I5");
    check_dominates(t[2], t[6], "I2 >= I6");
    check_dominates(t[7], t[9], "I7 >= I9");
    check_dominates(t[13], t[11], "I13 >= I11");
    check_dominates(t[12], t[10], "I12 >= I10");
    check_dominates(t[7], t[8], "I7 >= I8");
    return t;
}

}  // namespace macsense
