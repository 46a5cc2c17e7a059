#include "macsense/joint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "macsense/errors.hpp"

namespace macsense {

namespace {
constexpr double kNormalizationTol = 1e-12;
constexpr double kNegativeClampTol = 1e-10;

double entropy_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}
}  // namespace

void VariableSet::normalize() {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool VariableSet::contains(const std::string& name) const {
    return std::binary_search(names_.begin(), names_.end(), name);
}

VariableSet VariableSet::unioned(const VariableSet& other) const {
    std::vector<std::string> merged = names_;
    merged.insert(merged.end(), other.names_.begin(), other.names_.end());
    return VariableSet(std::move(merged));
}

bool VariableSet::disjoint_from(const VariableSet& other) const {
    for (const auto& n : names_)
        if (other.contains(n)) return false;
    return true;
}

std::string Diagnostics::to_string() const {
    if (issues.empty()) return "ok";
    std::ostringstream os;
    for (const auto& i : issues) os << "[" << i.kind << "] " << i.detail << "\n";
    return os.str();
}

JointDistribution::JointDistribution(UncheckedTag, std::vector<Variable> variables,
                                     std::vector<double> weights)
    : vars_(std::move(variables)), w_(std::move(weights)) {
    init_strides();
}

void JointDistribution::init_strides() {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i].name == vars_[j].name)
                throw NameError("duplicate variable '" + vars_[i].name + "'");
    strides_.assign(vars_.size(), 1);
    std::size_t n = 1;
    for (std::size_t i = vars_.size(); i-- > 0;) {
        strides_[i] = n;
        n *= vars_[i].alphabet.size();
    }
    if (w_.size() != n)
        throw ShapeError("weight tensor has " + std::to_string(w_.size()) + " cells, expected " +
                         std::to_string(n));
}

JointDistribution::JointDistribution(std::vector<Variable> variables, std::vector<double> weights)
    : JointDistribution(UncheckedTag{}, std::move(variables), std::move(weights)) {
    long double total = 0.0L;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (std::isnan(w_[i])) throw DomainError("weight at cell " + std::to_string(i) + " is NaN");
        if (w_[i] < 0.0)
            throw DomainError("negative weight at cell " + std::to_string(i) + ": " +
                              std::to_string(w_[i]));
        total += w_[i];
    }
    if (std::fabs(static_cast<double>(total) - 1.0) > kNormalizationTol)
        throw NormalizationError("total mass " + std::to_string(static_cast<double>(total)) +
                                 " differs from 1 by more than 1e-12");
}

JointDistribution JointDistribution::unchecked(std::vector<Variable> variables,
                                               std::vector<double> weights) {
    return JointDistribution(UncheckedTag{}, std::move(variables), std::move(weights));
}

std::size_t JointDistribution::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    throw NameError("no variable named '" + name + "'");
}

bool JointDistribution::has_variable(const std::string& name) const {
    for (const auto& v : vars_)
        if (v.name == name) return true;
    return false;
}

std::vector<int> JointDistribution::digits_of(std::size_t flat) const {
    std::vector<int> d(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        d[i] = static_cast<int>(flat / strides_[i]);
        flat %= strides_[i];
    }
    return d;
}

std::size_t JointDistribution::flat_of(const std::vector<int>& digits) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) flat += strides_[i] * digits[i];
    return flat;
}

JointDistribution marginalize(const JointDistribution& joint, const VariableSet& keep) {
    for (const auto& name : keep.names())
        if (!joint.has_variable(name)) throw NameError("no variable named '" + name + "'");

    const auto& vars = joint.variables();
    const std::size_t nv = vars.size();
    std::vector<Variable> kept;
    std::vector<bool> is_kept(nv, false);
    for (std::size_t i = 0; i < nv; ++i) {
        if (keep.contains(vars[i].name)) {
            is_kept[i] = true;
            kept.push_back(vars[i]);
        }
    }

    std::size_t dest_cells = 1;
    for (const auto& v : kept) dest_cells *= v.alphabet.size();
    std::vector<double> out(dest_cells, 0.0);

    // Destination stride contributed by each source axis (0 for dropped axes).
    std::vector<std::size_t> contrib(nv, 0);
    {
        std::size_t s = 1;
        for (std::size_t i = nv; i-- > 0;) {
            if (is_kept[i]) {
                contrib[i] = s;
                s *= vars[i].alphabet.size();
            }
        }
    }

    std::vector<int> digit(nv, 0);
    std::vector<int> sizes(nv);
    for (std::size_t i = 0; i < nv; ++i) sizes[i] = static_cast<int>(vars[i].alphabet.size());

    const auto& w = joint.weights();
    std::size_t dest = 0;
    for (std::size_t flat = 0; flat < w.size(); ++flat) {
        out[dest] += w[flat];
        for (std::size_t ax = nv; ax-- > 0;) {
            ++digit[ax];
            dest += contrib[ax];
            if (digit[ax] < sizes[ax]) break;
            dest -= contrib[ax] * static_cast<std::size_t>(sizes[ax]);
            digit[ax] = 0;
        }
    }
    return JointDistribution::unchecked(std::move(kept), std::move(out));
}

namespace {
double marginal_entropy(const JointDistribution& joint, const VariableSet& sub) {
    return entropy_bits(marginalize(joint, sub).weights());
}
}  // namespace

double conditional_mutual_information(const JointDistribution& joint, const VariableSet& a,
                                      const VariableSet& b, const VariableSet& c) {
    if (!a.disjoint_from(b) || !a.disjoint_from(c) || !b.disjoint_from(c))
        throw std::invalid_argument("conditional_mutual_information: argument sets overlap");
    // One pass over the full tensor, then cheap passes over the small union.
    JointDistribution abc = marginalize(joint, a.unioned(b).unioned(c));
    double h_abc = entropy_bits(abc.weights());
    double h_ac = marginal_entropy(abc, a.unioned(c));
    double h_bc = marginal_entropy(abc, b.unioned(c));
    double h_c = c.empty() ? 0.0 : marginal_entropy(abc, c);
    double i = h_ac + h_bc - h_abc - h_c;
    if (i < 0.0) {
        if (i < -kNegativeClampTol)
            throw InternalConsistencyError("conditional mutual information evaluated to " +
                                           std::to_string(i));
        i = 0.0;
    }
    return i;
}

double entropy(const JointDistribution& joint, const VariableSet& a, const VariableSet& given) {
    if (!a.disjoint_from(given)) throw std::invalid_argument("entropy: argument sets overlap");
    JointDistribution ag = marginalize(joint, a.unioned(given));
    double h = entropy_bits(ag.weights()) - (given.empty() ? 0.0 : marginal_entropy(ag, given));
    if (h < 0.0) {
        if (h < -kNegativeClampTol)
            throw InternalConsistencyError("conditional entropy evaluated to " + std::to_string(h));
        h = 0.0;
    }
    return h;
}

Diagnostics validate(const JointDistribution& joint) {
    Diagnostics d;
    const auto& w = joint.weights();
    long double total = 0.0L;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (std::isnan(w[i])) {
            d.issues.push_back({"nan", "cell " + std::to_string(i) + " is NaN"});
            continue;
        }
        if (w[i] < 0.0)
            d.issues.push_back(
                {"negative", "cell " + std::to_string(i) + " = " + std::to_string(w[i])});
        total += w[i];
    }
    double deficit = 1.0 - static_cast<double>(total);
    if (std::fabs(deficit) > kNormalizationTol) {
        d.normalization_deficit = deficit;
        d.issues.push_back(
            {"not-normalized", "total mass deviates from 1 by " + std::to_string(deficit)});
    }
    return d;
}

}  // namespace macsense
