#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "macsense/region.hpp"
#include "macsense/scheme.hpp"

namespace macsense {

enum class FrontierMode { kTheorem, kCorollary };

// One evaluated scheme in the search pool.
struct PoolEntry {
    Example2SchemeParams params;
    bool constant_v = false;  // evaluated through the constant-compression region
    bool feasible = false;
    double d2 = 1.0;
    double sum_rate = 0.0;
    std::vector<FeasibilityCondition> slacks;
};

// Best sum rate found for one distortion target. A reported point is always
// backed by a concrete scheme (lower-bound semantics); `best_sum_rate` is 0
// with `feasible_found == false` when no scheme met the target.
struct FrontierPoint {
    double d2_bound = 0.0;
    double best_sum_rate = 0.0;
    bool feasible_found = false;
    bool monotonized = false;
    PoolEntry argmax;
};

// Traces max(R1+R2) as a function of the distortion bound on the
// user-2 state for the binary-auxiliary scheme family on the adder channel.
//
// Search policy (documented in the README): a coarse product lattice with
// steps 1/4 (mixing weight and flip parameters reduced modulo relabeling
// symmetry), then two rounds of greedy coordinate refinement at steps 1/16
// and 1/64 around Pareto-optimal pool entries; `budget` caps the number of
// refinement centers per round. In kTheorem mode the pool always also
// contains the constant-compression subfamily search results, so the full
// family dominates the restricted one pointwise by construction. Results are
// deterministic: the pool is generated in a fixed order and merged by index
// regardless of thread scheduling.
std::vector<FrontierPoint> trace_frontier_example2(double p_s, double t,
                                                   const std::vector<double>& d2_grid, int budget,
                                                   FrontierMode mode, std::ostream* log = nullptr);

// Random-restart search over caller-supplied schemes for arbitrary channels.
// `budget` is the number of sampler draws; identical seeds and budgets
// reproduce identical frontiers, and a larger budget extends the same draw
// sequence (so results never get worse under the same seed).
struct GenericFrontierPoint {
    double d2_bound = 0.0;
    double best_sum_rate = 0.0;
    bool feasible_found = false;
    bool monotonized = false;
    std::size_t sample_index = 0;
    double d2_achieved = 1.0;
    std::size_t samples_evaluated = 0;
};
std::vector<GenericFrontierPoint> trace_frontier_generic(
    const ChannelSpec& channel, const std::function<SchemeSpec(SplitMix64&)>& sampler,
    const std::vector<double>& d2_grid, int budget, std::uint64_t seed);

// Side-by-side feasibility report for one scheme: the single-inequality
// compression constraint I(V1;Y|Z1) <= I(X1;Z2|X2) next to the five decoding
// feasibility slacks of the full region. The two notions do not coincide
// (the literal left side vanishes whenever V1 is a function of Z1); both are
// reported without asserting which one gates the scheme.
struct CompressionFeasibilityCheck {
    double literal_lhs = 0.0;
    double literal_rhs = 0.0;
    double literal_slack = 0.0;  // rhs - lhs
    std::vector<FeasibilityCondition> theorem_slacks;
};
CompressionFeasibilityCheck compression_feasibility_check(const Example2SchemeParams& params, const ChannelSpec& channel);

// CSV rows `d2_bound,best_sum_rate,...` directly plottable as a tradeoff
// curve.
std::string frontier_to_csv(const std::vector<FrontierPoint>& points);

}  // namespace macsense
