#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace macsense {

using Rat = mpq_class;

// Nearest multiple of 2^-denom_bits; the float-to-rational bridge used when
// floating-point information terms enter the exact engine.
Rat rationalize(double x, unsigned denom_bits = 40);

enum class Rel { LE, LT };  // <= and <

struct RationalInequality {
    std::vector<Rat> coeff;
    Rel rel = Rel::LE;
    Rat rhs;
};

// Exact-rational linear inequality system over named variables, supporting
// Fourier-Motzkin elimination, projection and membership queries. All
// arithmetic inside the engine is rational; no floating point.
class RationalLinearSystem {
  public:
    explicit RationalLinearSystem(std::vector<std::string> variables);

    const std::vector<std::string>& variables() const { return vars_; }
    const std::vector<RationalInequality>& inequalities() const { return rows_; }
    // A constant row can contradict strictly (0 < 0) yet hold under closure;
    // the two readings are tracked separately.
    bool infeasible(bool closure = true) const {
        return closure ? infeasible_closed_ : infeasible_strict_;
    }
    std::size_t size() const { return rows_.size(); }

    // rel is one of "<=", "<", ">=", ">"; >=/> rows are stored negated.
    void add(std::vector<Rat> coeff, const std::string& rel, Rat rhs);

    // Declares every variable nonnegative, enabling coefficient-wise
    // domination pruning (does not add inequality rows by itself).
    void mark_all_nonnegative() { nonneg_.assign(vars_.size(), true); }

    // Pairs every lower bound on `var` with every upper bound; constraints
    // not involving `var` pass through; a combined inequality is strict iff
    // either parent is strict. Trivially true constant rows are dropped and
    // trivially false ones mark the result infeasible.
    RationalLinearSystem eliminated(const std::string& var) const;

    // Repeated elimination down to `keep`. Variables named in
    // `preferred_order` go first (in that order); any remaining ones are
    // eliminated in ascending constraint-count order.
    RationalLinearSystem projected(const std::vector<std::string>& keep,
                                   const std::vector<std::string>& preferred_order = {}) const;

    // Membership: under closure strict rows are tested as <=.
    bool contains(const std::vector<Rat>& point, bool closure = true) const;

    // One inequality per line: `c1*R1 + c2*R2 <rel> p/q`.
    std::string dump() const;

  private:
    void push_row(RationalInequality row);
    void prune();

    std::vector<std::string> vars_;
    std::vector<RationalInequality> rows_;
    std::vector<bool> nonneg_;
    bool infeasible_strict_ = false;
    bool infeasible_closed_ = false;
};

struct EquivalenceReport {
    bool equivalent = true;
    std::size_t points_checked = 0;
    std::vector<Rat> counterexample;  // empty when equivalent
    bool in_first = false;
    bool in_second = false;
};

// Exact membership comparison on a deterministic grid (grid_per_axis points
// per axis spanning [0, box_hi]) plus pseudo-random rational points, all
// under closure. Returns the first disagreeing point, if any.
EquivalenceReport systems_equivalent(const RationalLinearSystem& a, const RationalLinearSystem& b,
                                     const std::vector<Rat>& box_hi, std::size_t grid_per_axis,
                                     std::size_t random_samples, std::uint64_t seed);

}  // namespace macsense
