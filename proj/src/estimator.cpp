#include "macsense/estimator.hpp"

#include <limits>
#include <sstream>

#include "macsense/errors.hpp"

namespace macsense {

std::size_t EstimatorTable::cond_cells() const {
    std::size_t n = 1;
    for (const auto& v : conditioning) n *= v.alphabet.size();
    return n;
}

std::string EstimatorTable::to_csv() const {
    std::ostringstream os;
    for (const auto& v : conditioning) os << v.name << ",";
    os << "S" << user << "_hat\n";
    std::size_t cells = cond_cells();
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rem = c;
        std::vector<int> digit(conditioning.size());
        for (std::size_t i = conditioning.size(); i-- > 0;) {
            digit[i] = static_cast<int>(rem % conditioning[i].alphabet.size());
            rem /= conditioning[i].alphabet.size();
        }
        for (std::size_t i = 0; i < conditioning.size(); ++i)
            os << conditioning[i].alphabet.symbols[digit[i]] << ",";
        os << reconstruction.symbols[decision[c]] << "\n";
    }
    return os.str();
}

VariableSet default_estimator_conditioning(int user) {
    if (user == 1) return VariableSet{"X1", "Z1", "U2", "V2"};
    if (user == 2) return VariableSet{"X2", "Z2", "U1", "V1"};
    throw ConfigError("user must be 1 or 2");
}

VariableSet extended_estimator_conditioning(int user) {
    return default_estimator_conditioning(user).unioned(VariableSet{"U0"});
}

EstimatorTable optimal_estimator(const JointDistribution& joint, int user,
                                 const DistortionTable& d, const VariableSet& conditioning) {
    const std::string state_name = user == 1 ? "S1" : "S2";
    if (user != 1 && user != 2) throw ConfigError("user must be 1 or 2");
    if (conditioning.contains(state_name))
        throw std::invalid_argument("conditioning must not contain " + state_name);
    if (d.d.empty()) throw ConfigError("missing distortion table for user " + std::to_string(user));

    JointDistribution m = marginalize(joint, conditioning.unioned(VariableSet{state_name}));
    std::size_t s_pos = m.index_of(state_name);
    std::size_t ns = m.variables()[s_pos].alphabet.size();
    if (d.d.size() != ns * d.reconstruction.size())
        throw ShapeError("distortion table does not match |" + state_name + "|");

    EstimatorTable est;
    est.user = user;
    est.reconstruction = d.reconstruction;
    for (std::size_t i = 0; i < m.variable_count(); ++i)
        if (i != s_pos) est.conditioning.push_back(m.variables()[i]);

    std::size_t cells = est.cond_cells();
    // posterior[c * ns + s] = P(S_k = s, c)
    std::vector<double> posterior(cells * ns, 0.0);
    const auto& w = m.weights();
    for (std::size_t flat = 0; flat < w.size(); ++flat) {
        if (w[flat] == 0.0) continue;
        auto digits = m.digits_of(flat);
        std::size_t c = 0;
        for (std::size_t i = 0; i < m.variable_count(); ++i) {
            if (i == s_pos) continue;
            c = c * m.variables()[i].alphabet.size() + static_cast<std::size_t>(digits[i]);
        }
        posterior[c * ns + static_cast<std::size_t>(digits[s_pos])] += w[flat];
    }

    est.decision.assign(cells, 0);
    std::size_t nr = d.reconstruction.size();
    for (std::size_t c = 0; c < cells; ++c) {
        double best = std::numeric_limits<double>::infinity();
        int best_r = 0;
        for (std::size_t r = 0; r < nr; ++r) {
            double cost = 0.0;
            for (std::size_t s = 0; s < ns; ++s)
                cost += posterior[c * ns + s] * d.at(static_cast<int>(s), static_cast<int>(r));
            if (cost < best) {  // strict: ties stay at the lowest index
                best = cost;
                best_r = static_cast<int>(r);
            }
        }
        est.decision[c] = best_r;
    }
    return est;
}

double expected_distortion(const JointDistribution& joint, const EstimatorTable& est,
                           const DistortionTable& d) {
    const std::string state_name = est.user == 1 ? "S1" : "S2";
    VariableSet cond_names;
    {
        std::vector<std::string> names;
        for (const auto& v : est.conditioning) names.push_back(v.name);
        cond_names = VariableSet(std::move(names));
    }
    JointDistribution m = marginalize(joint, cond_names.unioned(VariableSet{state_name}));
    std::size_t s_pos = m.index_of(state_name);

    // Map the marginal's conditioning digits onto the table's variable order.
    std::vector<std::size_t> order;  // position in m for each est.conditioning entry
    for (const auto& v : est.conditioning) order.push_back(m.index_of(v.name));

    double total = 0.0;
    const auto& w = m.weights();
    for (std::size_t flat = 0; flat < w.size(); ++flat) {
        if (w[flat] == 0.0) continue;
        auto digits = m.digits_of(flat);
        std::size_t c = 0;
        for (std::size_t i = 0; i < est.conditioning.size(); ++i)
            c = c * est.conditioning[i].alphabet.size() +
                static_cast<std::size_t>(digits[order[i]]);
        total += w[flat] * d.at(digits[s_pos], est.decision[c]);
    }
    return total;
}

double optimal_expected_distortion(const JointDistribution& joint, int user,
                                   const DistortionTable& d, const VariableSet& conditioning) {
    const std::string state_name = user == 1 ? "S1" : "S2";
    if (conditioning.contains(state_name))
        throw std::invalid_argument("conditioning must not contain " + state_name);
    JointDistribution m = marginalize(joint, conditioning.unioned(VariableSet{state_name}));
    std::size_t s_pos = m.index_of(state_name);
    std::size_t ns = m.variables()[s_pos].alphabet.size();
    std::size_t cells = m.cell_count() / ns;

    std::vector<double> posterior(cells * ns, 0.0);
    const auto& w = m.weights();
    for (std::size_t flat = 0; flat < w.size(); ++flat) {
        if (w[flat] == 0.0) continue;
        auto digits = m.digits_of(flat);
        std::size_t c = 0;
        for (std::size_t i = 0; i < m.variable_count(); ++i) {
            if (i == s_pos) continue;
            c = c * m.variables()[i].alphabet.size() + static_cast<std::size_t>(digits[i]);
        }
        posterior[c * ns + static_cast<std::size_t>(digits[s_pos])] += w[flat];
    }
    double total = 0.0;
    std::size_t nr = d.reconstruction.size();
    for (std::size_t c = 0; c < cells; ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < nr; ++r) {
            double cost = 0.0;
            for (std::size_t s = 0; s < ns; ++s)
                cost += posterior[c * ns + s] * d.at(static_cast<int>(s), static_cast<int>(r));
            best = std::min(best, cost);
        }
        total += best;
    }
    return total;
}

double min_distortion_formula_example2(double q, double p_s) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q must lie in [0,1]");
    return q * p_s * (1.0 - p_s);
}

}  // namespace macsense
