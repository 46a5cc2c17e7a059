#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "macsense/alphabet.hpp"

namespace macsense {

struct Variable {
    std::string name;
    Alphabet alphabet;
};

// An unordered set of variable names. Stored sorted and deduplicated so that
// set algebra and comparisons are cheap and deterministic.
class VariableSet {
  public:
    VariableSet() = default;
    VariableSet(std::initializer_list<std::string> names) : names_(names) { normalize(); }
    explicit VariableSet(std::vector<std::string> names) : names_(std::move(names)) { normalize(); }

    bool contains(const std::string& name) const;
    bool empty() const { return names_.empty(); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    VariableSet unioned(const VariableSet& other) const;
    bool disjoint_from(const VariableSet& other) const;

  private:
    void normalize();
    std::vector<std::string> names_;
};

struct Diagnostics {
    struct Issue {
        std::string kind;  // "negative" | "not-normalized" | "nan"
        std::string detail;
    };
    std::vector<Issue> issues;
    double normalization_deficit = 0.0;  // 1 - total mass (0 when normalized)

    bool empty() const { return issues.empty(); }
    std::string to_string() const;
};

// Dense probability tensor over a tuple of named finite variables, stored
// row-major with the first-listed variable slowest-varying. Immutable after
// construction; all operations below are pure functions, so instances can be
// shared freely across threads.
class JointDistribution {
  public:
    // Checks weights for shape, nonnegativity and normalization (total within
    // 1e-12 of 1) and throws ShapeError / DomainError / NormalizationError.
    JointDistribution(std::vector<Variable> variables, std::vector<double> weights);

    // Skips the construction checks; pair with validate() for diagnostics.
    static JointDistribution unchecked(std::vector<Variable> variables, std::vector<double> weights);

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<double>& weights() const { return w_; }
    std::size_t cell_count() const { return w_.size(); }
    std::size_t variable_count() const { return vars_.size(); }

    // Position of a variable in declaration order; throws NameError if absent.
    std::size_t index_of(const std::string& name) const;
    bool has_variable(const std::string& name) const;
    const std::vector<std::size_t>& strides() const { return strides_; }

    std::vector<int> digits_of(std::size_t flat) const;
    std::size_t flat_of(const std::vector<int>& digits) const;

  private:
    struct UncheckedTag {};
    JointDistribution(UncheckedTag, std::vector<Variable> variables, std::vector<double> weights);
    void init_strides();

    std::vector<Variable> vars_;
    std::vector<double> w_;
    std::vector<std::size_t> strides_;
};

// Sums out all variables not in `keep`; kept variables retain their relative
// declaration order. An empty `keep` yields the zero-variable scalar
// distribution whose single cell carries the total mass.
JointDistribution marginalize(const JointDistribution& joint, const VariableSet& keep);

// I(A;B|C) in bits, computed as H(AC)+H(BC)-H(ABC)-H(C) with the 0*log 0 = 0
// convention. The sets must be pairwise disjoint; C may be empty. Tiny
// negative results in [-1e-10, 0) are clamped to zero.
double conditional_mutual_information(const JointDistribution& joint, const VariableSet& a,
                                      const VariableSet& b, const VariableSet& c);

// H(A|C) in bits; `given` may be empty.
double entropy(const JointDistribution& joint, const VariableSet& a, const VariableSet& given = {});

// Diagnostic scan: negativity violations (with cell index), normalization
// deficit, NaN entries. Never throws.
Diagnostics validate(const JointDistribution& joint);

}  // namespace macsense
