#include "macsense/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "macsense/errors.hpp"

namespace macsense {

namespace {
const VariableSet kU{"U0", "U1", "U2"};

double cmi(const JointDistribution& j, const VariableSet& a, const VariableSet& b,
           const VariableSet& c) {
    return conditional_mutual_information(j, a, b, c);
}
}  // namespace

double RegionDescription::min_rhs(int a1, int a2) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : bounds)
        if (b.a1 == a1 && b.a2 == a2) m = std::min(m, b.rhs);
    return m;
}

bool RegionDescription::feasible(double slack_tol) const {
    for (const auto& f : feasibility)
        if (f.slack < -slack_tol) return false;
    // The origin must satisfy every rate bound as well.
    for (const auto& b : bounds)
        if (0.0 > b.rhs + slack_tol) return false;
    return true;
}

std::string RegionDescription::to_csv() const {
    std::ostringstream os;
    os << "a1,a2,rhs_bits,strict\n";
    os.precision(12);
    for (const auto& b : bounds)
        os << b.a1 << "," << b.a2 << "," << b.rhs << "," << (b.strict ? 1 : 0) << "\n";
    os << "# vertices (R1,R2)\n";
    for (const auto& [r1, r2] : vertices()) os << r1 << "," << r2 << "\n";
    return os.str();
}

std::vector<std::pair<double, double>> RegionDescription::vertices(double slack_tol) const {
    std::vector<std::pair<double, double>> out;
    if (!feasible(slack_tol)) return out;
    double A = std::max(0.0, min_rhs(1, 0));
    double B = std::max(0.0, min_rhs(0, 1));
    double C = std::max(0.0, min_rhs(1, 1));
    if (!std::isfinite(A)) A = std::numeric_limits<double>::infinity();
    auto push = [&](double x, double y) {
        for (auto& p : out)
            if (std::fabs(p.first - x) < 1e-15 && std::fabs(p.second - y) < 1e-15) return;
        out.emplace_back(x, y);
    };
    push(0.0, 0.0);
    push(std::min(A, C), 0.0);
    if (A + B > C) {
        if (A < C) push(A, C - A);
        if (B < C) push(C - B, B);
    } else if (std::isfinite(A) && std::isfinite(B)) {
        push(A, B);
    }
    push(0.0, std::min(B, C));
    return out;
}

RegionDescription theorem_region(const InfoTerms& I) {
    RegionDescription r;
    const double base1 = I[3] + I[5] - I[1];
    const double base2 = I[4] + I[6] - I[2];
    const double m14 = I[14] + I[0] - I[1] - I[2];

    auto add = [&](int a1, int a2, double rhs, const std::string& name) {
        r.bounds.push_back({a1, a2, rhs, true, name});
    };
    add(1, 0, base1 + I[8], "R1:private");
    add(1, 0, base1 + I[10] + I[0] - I[1], "R1:own-common");
    add(1, 0, base1 + I[13] + I[0] - I[2], "R1:cross-common");
    add(1, 0, base1 + m14, "R1:all-common");
    add(0, 1, base2 + I[9], "R2:private");
    add(0, 1, base2 + I[11] + I[0] - I[2], "R2:own-common");
    add(0, 1, base2 + I[12] + I[0] - I[1], "R2:cross-common");
    add(0, 1, base2 + m14, "R2:all-common");
    add(1, 1, base1 + base2 + I[7], "sum:private");
    add(1, 1, base1 + base2 + I[12] + I[0] - I[1], "sum:common-2");
    add(1, 1, base1 + base2 + I[13] + I[0] - I[2], "sum:common-1");
    add(1, 1, base1 + base2 + m14, "sum:all-common");
    add(1, 1, I[15] + I[0] - I[1] - I[2], "sum:unconditioned");

    r.feasibility.push_back({"v1-decodable-at-tx2", I[3] + I[5] - I[1]});
    r.feasibility.push_back({"v2-decodable-at-tx1", I[4] + I[6] - I[2]});
    r.feasibility.push_back({"v-pair-decodable-at-rx", I[14] + I[0] - I[1] - I[2]});
    r.feasibility.push_back({"v1-decodable-at-rx", I[10] + I[0] - I[1]});
    r.feasibility.push_back({"v2-decodable-at-rx", I[11] + I[0] - I[2]});
    return r;
}

RegionDescription theorem_region_direct(const JointDistribution& j) {
    RegionDescription r;
    auto add = [&](int a1, int a2, double rhs, const std::string& name) {
        r.bounds.push_back({a1, a2, rhs, true, name});
    };

    // Per-user bounds, written out for k and kbar = 3-k exactly as the
    // layered scheme states them.
    for (int k = 1; k <= 2; ++k) {
        const std::string xk = k == 1 ? "X1" : "X2", xb = k == 1 ? "X2" : "X1";
        const std::string zk = k == 1 ? "Z1" : "Z2", zb = k == 1 ? "Z2" : "Z1";
        const std::string uk = k == 1 ? "U1" : "U2", ub = k == 1 ? "U2" : "U1";
        const std::string vk = k == 1 ? "V1" : "V2", vb = k == 1 ? "V2" : "V1";
        const VariableSet xzb{xb, zb}, xzk{xk, zk};

        double head = cmi(j, {uk}, xzb, {"U0", ub}) + cmi(j, {vk}, xzb, kU) -
                      cmi(j, {vk}, xzk, kU);
        double iv_k = cmi(j, {vk}, {"X1", "X2", "Y"}, kU) +
                      cmi(j, {vb}, {"X1", "X2", "Y", vk}, kU);
        double own = cmi(j, {xk}, {"Y"}, {"U0", xb}) + iv_k - cmi(j, {vk}, xzk, kU);
        double cross = cmi(j, {"X1", "X2"}, {"Y"}, {"U0", uk}) + iv_k - cmi(j, {vb}, xzb, kU);
        double both = cmi(j, {"X1", "X2"}, {"Y"}, {"U0"}) + iv_k - cmi(j, {vk}, xzk, kU) -
                      cmi(j, {vb}, xzb, kU);
        double priv = cmi(j, {xk}, {"Y", "V1", "V2"}, {"U0", "U1", "U2", xb});
        int a1 = k == 1 ? 1 : 0, a2 = 1 - a1;
        std::string tag = "R" + std::to_string(k);
        add(a1, a2, head + own, tag + ":own-common");
        add(a1, a2, head + cross, tag + ":cross-common");
        add(a1, a2, head + both, tag + ":all-common");
        add(a1, a2, head + priv, tag + ":private");
    }

    double iv = cmi(j, {"V1"}, {"X1", "X2", "Y"}, kU) + cmi(j, {"V2"}, {"X1", "X2", "Y", "V1"}, kU);
    double i1 = cmi(j, {"V1"}, {"X1", "Z1"}, kU);
    double i2 = cmi(j, {"V2"}, {"X2", "Z2"}, kU);
    double head_sum = cmi(j, {"U2"}, {"X1", "Z1"}, {"U0", "U1"}) +
                      cmi(j, {"V2"}, {"X1", "Z1"}, kU) - i2 +
                      cmi(j, {"U1"}, {"X2", "Z2"}, {"U0", "U2"}) +
                      cmi(j, {"V1"}, {"X2", "Z2"}, kU) - i1;
    add(1, 1, head_sum + cmi(j, {"X1", "X2"}, {"Y"}, {"U0", "U2"}) + iv - i1, "sum:common-2");
    add(1, 1, head_sum + cmi(j, {"X1", "X2"}, {"Y"}, {"U0", "U1"}) + iv - i2, "sum:common-1");
    add(1, 1, head_sum + cmi(j, {"X1", "X2"}, {"Y"}, {"U0"}) + iv - i1 - i2, "sum:all-common");
    add(1, 1, head_sum + cmi(j, {"X1", "X2"}, {"Y", "V1", "V2"}, kU), "sum:private");
    add(1, 1, cmi(j, {"X1", "X2"}, {"Y"}, {}) + iv - i1 - i2, "sum:unconditioned");

    for (int k = 1; k <= 2; ++k) {
        const std::string xk = k == 1 ? "X1" : "X2", xb = k == 1 ? "X2" : "X1";
        const std::string zk = k == 1 ? "Z1" : "Z2", zb = k == 1 ? "Z2" : "Z1";
        const std::string uk = k == 1 ? "U1" : "U2", ub = k == 1 ? "U2" : "U1";
        const std::string vk = k == 1 ? "V1" : "V2";
        double ik = cmi(j, {vk}, {xk, zk}, kU);
        r.feasibility.push_back({"v" + std::to_string(k) + "-decodable-at-tx" + (k == 1 ? "2" : "1"),
                                 cmi(j, {uk}, {xb, zb}, {"U0", ub}) + cmi(j, {vk}, {xb, zb}, kU) -
                                     ik});
    }
    r.feasibility.push_back(
        {"v-pair-decodable-at-rx", cmi(j, {"X1", "X2"}, {"Y"}, {"U0"}) + iv - i1 - i2});
    r.feasibility.push_back(
        {"v1-decodable-at-rx", cmi(j, {"X1"}, {"Y"}, {"U0", "X2"}) + iv - i1});
    r.feasibility.push_back(
        {"v2-decodable-at-rx", cmi(j, {"X2"}, {"Y"}, {"U0", "X1"}) + iv - i2});
    return r;
}

RegionDescription corollary_region(const JointDistribution& j) {
    if (j.variables()[j.index_of("V1")].alphabet.size() != 1 ||
        j.variables()[j.index_of("V2")].alphabet.size() != 1)
        throw std::invalid_argument("corollary region requires constant V1 and V2");

    double fb1 = cmi(j, {"U1"}, {"Z2"}, {"X2", "U0"});
    double fb2 = cmi(j, {"U2"}, {"Z1"}, {"X1", "U0"});
    RegionDescription r;
    r.bounds.push_back(
        {1, 0, cmi(j, {"X1"}, {"Y"}, {"X2", "U1", "U0"}) + fb1, false, "R1:corollary"});
    r.bounds.push_back(
        {0, 1, cmi(j, {"X2"}, {"Y"}, {"X1", "U2", "U0"}) + fb2, false, "R2:corollary"});
    r.bounds.push_back({1, 1, cmi(j, {"X1", "X2"}, {"Y"}, {}), false, "sum:unconditioned"});
    r.bounds.push_back({1, 1, cmi(j, {"X1", "X2"}, {"Y"}, kU) + fb1 + fb2, false, "sum:cooperative"});
    return r;
}

bool point_feasible(const RegionDescription& region, double r1, double r2, bool closure) {
    const double slack = closure ? 1e-9 : 0.0;
    if (r1 < 0.0 || r2 < 0.0) return false;
    for (const auto& f : region.feasibility)
        if (f.slack < -slack) return false;
    for (const auto& b : region.bounds) {
        double lhs = b.a1 * r1 + b.a2 * r2;
        if (b.strict && !closure) {
            if (!(lhs < b.rhs)) return false;
        } else {
            if (!(lhs <= b.rhs + slack)) return false;
        }
    }
    return true;
}

std::optional<double> max_sum_rate(const RegionDescription& region, double slack_tol) {
    if (!region.feasible(slack_tol)) return std::nullopt;
    double a = std::max(0.0, region.min_rhs(1, 0));
    double b = std::max(0.0, region.min_rhs(0, 1));
    double c = region.min_rhs(1, 1);
    double best = std::min(a + b, std::max(0.0, c));
    if (!std::isfinite(best)) return std::nullopt;  // unbounded only for degenerate inputs
    return best;
}

}  // namespace macsense
