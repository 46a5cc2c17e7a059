#include "macsense/frontier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "macsense/errors.hpp"
#include "macsense/estimator.hpp"
#include "macsense/info_terms.hpp"

namespace macsense {

namespace {

int thread_count() {
    if (const char* env = std::getenv("MACSENSE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
}

template <typename F>
void parallel_for(std::size_t n, F&& f) {
    int workers = thread_count();
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t)
        threads.emplace_back([&] {
            for (;;) {
                std::size_t begin = next.fetch_add(32);
                if (begin >= n) return;
                std::size_t end = std::min(n, begin + 32);
                for (std::size_t i = begin; i < end; ++i) f(i);
            }
        });
    for (auto& th : threads) th.join();
}

constexpr double kSlackTol = 1e-9;

double& param_coord(Example2SchemeParams& p, int i) {
    switch (i) {
        case 0: return p.p_u0;
        case 1: return p.p_u1_given_u0[0];
        case 2: return p.p_u1_given_u0[1];
        case 3: return p.p_u2_given_u0[0];
        case 4: return p.p_u2_given_u0[1];
        case 5: return p.xi1;
        case 6: return p.xi2;
        default: return p.e;
    }
}

double param_coord_of(const Example2SchemeParams& p, int i) {
    Example2SchemeParams copy = p;
    return param_coord(copy, i);
}

bool same_params(const Example2SchemeParams& a, const Example2SchemeParams& b) {
    for (int i = 0; i < 8; ++i)
        if (param_coord_of(a, i) != param_coord_of(b, i)) return false;
    return true;
}

PoolEntry evaluate_entry(const ChannelSpec& channel, const Example2SchemeParams& params,
                         bool constant_v) {
    PoolEntry e;
    e.params = params;
    e.constant_v = constant_v;
    SchemeSpec scheme = build_example2_scheme(params, channel);
    if (constant_v) scheme = constant_V_scheme(scheme);
    JointDistribution joint = assemble_joint(channel, scheme);
    RegionDescription region =
        constant_v ? corollary_region(joint) : theorem_region(compute_info_terms(joint));
    e.slacks = region.feasibility;
    e.feasible = region.feasible(kSlackTol);
    if (e.feasible) {
        auto s = max_sum_rate(region, kSlackTol);
        e.sum_rate = s ? *s : 0.0;
    }
    e.d2 = optimal_expected_distortion(joint, 2, channel.distortion_for(2),
                                       default_estimator_conditioning(2));
    return e;
}

// Coarse product lattice. Flip and mixing parameters are restricted to
// [0, 1/2]: xi > 1/2 and p_u0 > 1/2 are relabelings of U_k / U0 that leave
// every evaluated quantity unchanged.
std::vector<Example2SchemeParams> coarse_lattice(bool with_erasure) {
    const std::vector<double> full = {0.0, 0.25, 0.5, 0.75, 1.0};
    const std::vector<double> half = {0.0, 0.25, 0.5};
    std::vector<Example2SchemeParams> out;
    for (double mu : half)
        for (double a0 : full)
            for (double a1 : full)
                for (double b0 : full)
                    for (double b1 : full)
                        for (double x1 : half)
                            for (double x2 : half)
                                for (double e : (with_erasure ? full : std::vector<double>{1.0})) {
                                    Example2SchemeParams p;
                                    p.p_u0 = mu;
                                    p.p_u1_given_u0[0] = a0;
                                    p.p_u1_given_u0[1] = a1;
                                    p.p_u2_given_u0[0] = b0;
                                    p.p_u2_given_u0[1] = b1;
                                    p.xi1 = x1;
                                    p.xi2 = x2;
                                    p.e = e;
                                    out.push_back(p);
                                }
    // Dense 1/16 companion face for the distortion floor: a deterministic X2
    // with X1 driven by the common codeword (a0 = a1, small flip noise). The
    // 8-dimensional product grid is unaffordable at step 1/16, but the floor
    // always sits on this face, so it gets the full resolution.
    const int e_hi = with_erasure ? 16 : 0;
    for (int b = 0; b <= 1; ++b)
        for (int a16 = 0; a16 <= 16; ++a16)
            for (int x16 = 0; x16 <= 2; ++x16)
                for (int e16 = 0; e16 <= e_hi; ++e16) {
                    Example2SchemeParams p;
                    p.p_u1_given_u0[0] = p.p_u1_given_u0[1] = a16 / 16.0;
                    p.p_u2_given_u0[0] = p.p_u2_given_u0[1] = static_cast<double>(b);
                    p.xi1 = x16 / 16.0;
                    p.e = with_erasure ? e16 / 16.0 : 1.0;
                    out.push_back(p);
                }
    return out;
}

struct Center {
    Example2SchemeParams params;
    int objective;   // 0: minimize d2; 1: maximize rate; 2: maximize rate at d2 <= ref
    double ref_d2;
};

bool improves(const PoolEntry& cand, const PoolEntry& best, const Center& c) {
    if (!cand.feasible) return false;
    switch (c.objective) {
        case 0: return cand.d2 < best.d2 - 1e-15;
        case 1: return cand.sum_rate > best.sum_rate + 1e-12;
        default:
            return cand.d2 <= c.ref_d2 + 1e-12 && cand.sum_rate > best.sum_rate + 1e-12;
    }
}

// Feasible entries on the lower-right envelope: strictly increasing rate with
// increasing distortion.
std::vector<PoolEntry> pareto_entries(const std::vector<PoolEntry>& pool) {
    std::vector<PoolEntry> feas;
    for (const auto& e : pool)
        if (e.feasible) feas.push_back(e);
    std::stable_sort(feas.begin(), feas.end(), [](const PoolEntry& a, const PoolEntry& b) {
        if (a.d2 != b.d2) return a.d2 < b.d2;
        return a.sum_rate > b.sum_rate;
    });
    std::vector<PoolEntry> out;
    double best = -1.0;
    for (const auto& e : feas) {
        if (e.sum_rate > best + 1e-15) {
            out.push_back(e);
            best = e.sum_rate;
        }
    }
    return out;
}

std::vector<Center> pick_centers(const std::vector<PoolEntry>& pool, int budget) {
    std::vector<Center> centers;
    auto pareto = pareto_entries(pool);
    if (pareto.empty()) return centers;

    // Distortion-descent centers: the lowest distinct-d2 feasible entries,
    // rate-dominated or not. A single minimum is not enough; the minimum can
    // sit on a ridge where no one-coordinate move helps, while a slightly
    // worse entry descends freely.
    std::vector<PoolEntry> feas;
    for (const auto& e : pool)
        if (e.feasible) feas.push_back(e);
    std::stable_sort(feas.begin(), feas.end(),
                     [](const PoolEntry& a, const PoolEntry& b) { return a.d2 < b.d2; });
    int low_count = std::min(budget, 8);
    double last_d2 = -1.0;
    for (const auto& e : feas) {
        if (static_cast<int>(centers.size()) >= low_count) break;
        if (e.d2 > last_d2 + 1e-12) {
            centers.push_back({e.params, 0, e.d2});
            last_d2 = e.d2;
        }
    }

    centers.push_back({pareto.back().params, 1, pareto.back().d2});
    int mid = std::max(0, budget - static_cast<int>(centers.size()));
    if (mid > 0 && pareto.size() > 2) {
        for (int k = 0; k < mid; ++k) {
            std::size_t idx = 1 + static_cast<std::size_t>(
                                      (static_cast<double>(k) + 0.5) / mid *
                                      static_cast<double>(pareto.size() - 2));
            idx = std::min(idx, pareto.size() - 2);
            centers.push_back({pareto[idx].params, 2, pareto[idx].d2});
        }
    }
    return centers;
}

void refine_round(const ChannelSpec& channel, std::vector<PoolEntry>& pool,
                  const std::vector<Center>& centers, double step, bool constant_v,
                  std::ostream* log) {
    for (const auto& center : centers) {
        PoolEntry best = evaluate_entry(channel, center.params, constant_v);
        Example2SchemeParams cur = center.params;
        double d2_before = best.d2, rate_before = best.sum_rate;
        const int coords = constant_v ? 7 : 8;  // erasure coordinate is inert for constant V
        for (int sweep = 0; sweep < 2; ++sweep) {
            bool moved = false;
            for (int coord = 0; coord < coords; ++coord) {
                for (int delta : {-4, -3, -2, -1, 1, 2, 3, 4}) {
                    Example2SchemeParams cand = cur;
                    double& x = param_coord(cand, coord);
                    x = std::clamp(x + delta * step, 0.0, 1.0);
                    if (same_params(cand, cur)) continue;
                    PoolEntry e = evaluate_entry(channel, cand, constant_v);
                    pool.push_back(e);
                    if (improves(e, best, center)) {
                        best = e;
                        cur = cand;
                        moved = true;
                    }
                }
            }
            if (!moved) break;
        }
        if (log)
            *log << "#   center obj=" << center.objective << " d2 " << d2_before << " -> "
                 << best.d2 << ", rate " << rate_before << " -> " << best.sum_rate << "\n";
    }
}

std::vector<PoolEntry> build_pool(const ChannelSpec& channel, bool constant_v, int budget,
                                  std::ostream* log) {
    auto lattice = coarse_lattice(!constant_v);
    std::vector<PoolEntry> pool(lattice.size());
    parallel_for(lattice.size(),
                 [&](std::size_t i) { pool[i] = evaluate_entry(channel, lattice[i], constant_v); });
    if (log)
        *log << "# coarse lattice: " << lattice.size() << " schemes ("
             << (constant_v ? "constant-compression" : "full") << " family)\n";
    for (double step : {1.0 / 16.0, 1.0 / 64.0}) {
        auto centers = pick_centers(pool, budget);
        std::size_t before = pool.size();
        refine_round(channel, pool, centers, step, constant_v, log);
        if (log)
            *log << "# refinement step " << step << ": " << centers.size() << " centers, "
                 << (pool.size() - before) << " evaluations\n";
    }
    return pool;
}

std::vector<FrontierPoint> extract_frontier(const std::vector<PoolEntry>& pool,
                                            const std::vector<double>& d2_grid,
                                            std::ostream* log) {
    std::vector<PoolEntry> feas;
    for (const auto& e : pool)
        if (e.feasible) feas.push_back(e);
    std::stable_sort(feas.begin(), feas.end(), [](const PoolEntry& a, const PoolEntry& b) {
        if (a.d2 != b.d2) return a.d2 < b.d2;
        return a.sum_rate > b.sum_rate;
    });
    // Running best: feas[i] -> best entry among d2 <= feas[i].d2.
    std::vector<std::size_t> best_upto(feas.size());
    for (std::size_t i = 0; i < feas.size(); ++i)
        best_upto[i] = (i > 0 && feas[best_upto[i - 1]].sum_rate >= feas[i].sum_rate)
                           ? best_upto[i - 1]
                           : i;

    std::vector<double> targets = d2_grid;
    std::sort(targets.begin(), targets.end());
    if (!feas.empty() && (targets.empty() || feas.front().d2 < targets.front() - 1e-15))
        targets.insert(targets.begin(), feas.front().d2);  // curve origin row

    std::vector<FrontierPoint> out;
    for (double target : targets) {
        FrontierPoint pt;
        pt.d2_bound = target;
        // last entry with d2 <= target (+ tiny slack for the injected origin)
        std::size_t lo = 0, hi = feas.size();
        while (lo < hi) {
            std::size_t midp = (lo + hi) / 2;
            if (feas[midp].d2 <= target + 1e-12)
                lo = midp + 1;
            else
                hi = midp;
        }
        if (lo > 0) {
            const PoolEntry& e = feas[best_upto[lo - 1]];
            pt.feasible_found = true;
            pt.best_sum_rate = e.sum_rate;
            pt.argmax = e;
        }
        out.push_back(pt);
    }

    // Explicit monotonization pass. With running-max extraction it should
    // never fire; it is kept as a guard and every adjustment is logged.
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].feasible_found && out[i - 1].feasible_found &&
            out[i].best_sum_rate < out[i - 1].best_sum_rate) {
            out[i].best_sum_rate = out[i - 1].best_sum_rate;
            out[i].argmax = out[i - 1].argmax;
            out[i].monotonized = true;
            if (log)
                *log << "# monotonization: lifted point at d2=" << out[i].d2_bound << "\n";
        }
        if (!out[i].feasible_found && out[i - 1].feasible_found) {
            double bound = out[i].d2_bound;
            out[i] = out[i - 1];
            out[i].d2_bound = bound;
            out[i].monotonized = true;
        }
    }
    return out;
}

void certify_frontier(const ChannelSpec& channel, std::vector<FrontierPoint>& points) {
    // Re-evaluate each argmax scheme from scratch; a mismatch means the pool
    // bookkeeping is broken.
    std::vector<std::pair<PoolEntry, PoolEntry>> cache;
    for (auto& pt : points) {
        if (!pt.feasible_found) continue;
        const PoolEntry* re = nullptr;
        for (const auto& c : cache)
            if (same_params(c.first.params, pt.argmax.params) &&
                c.first.constant_v == pt.argmax.constant_v) {
                re = &c.second;
                break;
            }
        if (re == nullptr) {
            cache.emplace_back(pt.argmax,
                               evaluate_entry(channel, pt.argmax.params, pt.argmax.constant_v));
            re = &cache.back().second;
        }
        if (std::fabs(re->sum_rate - pt.best_sum_rate) > 1e-9 ||
            std::fabs(re->d2 - pt.argmax.d2) > 1e-12 || !re->feasible)
            throw InternalConsistencyError("frontier certification failed at d2 bound " +
                                           std::to_string(pt.d2_bound));
        pt.argmax.slacks = re->slacks;
    }
}

}  // namespace

std::vector<FrontierPoint> trace_frontier_example2(double p_s, double t,
                                                   const std::vector<double>& d2_grid, int budget,
                                                   FrontierMode mode, std::ostream* log) {
    if (budget < 1) throw DomainError("budget must be at least 1");
    for (std::size_t i = 1; i < d2_grid.size(); ++i)
        if (d2_grid[i] < d2_grid[i - 1]) throw DomainError("d2 grid must be sorted ascending");

    ChannelSpec channel = build_example2(p_s, t);
    std::vector<PoolEntry> pool = build_pool(channel, mode == FrontierMode::kCorollary, budget, log);
    if (mode == FrontierMode::kTheorem) {
        // The constant-compression family is a subfamily (constant V is a
        // valid compression choice), so its search results always join the
        // pool; this also makes the full family dominate it pointwise.
        std::vector<PoolEntry> sub = build_pool(channel, true, budget, log);
        pool.insert(pool.end(), sub.begin(), sub.end());
    }
    auto points = extract_frontier(pool, d2_grid, log);
    certify_frontier(channel, points);
    return points;
}

std::vector<GenericFrontierPoint> trace_frontier_generic(
    const ChannelSpec& channel, const std::function<SchemeSpec(SplitMix64&)>& sampler,
    const std::vector<double>& d2_grid, int budget, std::uint64_t seed) {
    if (budget < 1) throw DomainError("budget must be at least 1");
    SplitMix64 rng(seed);

    struct Entry {
        double d2;
        double rate;
        std::size_t index;
    };
    std::vector<Entry> feas;
    for (int i = 0; i < budget; ++i) {
        SchemeSpec scheme = sampler(rng);
        JointDistribution joint = assemble_joint(channel, scheme);
        RegionDescription region = theorem_region(compute_info_terms(joint));
        if (!region.feasible(kSlackTol)) continue;
        auto s = max_sum_rate(region, kSlackTol);
        double d2 = optimal_expected_distortion(joint, 2, channel.distortion_for(2),
                                                default_estimator_conditioning(2));
        feas.push_back({d2, s ? *s : 0.0, static_cast<std::size_t>(i)});
    }
    std::stable_sort(feas.begin(), feas.end(), [](const Entry& a, const Entry& b) {
        if (a.d2 != b.d2) return a.d2 < b.d2;
        return a.rate > b.rate;
    });

    std::vector<GenericFrontierPoint> out;
    for (double target : d2_grid) {
        GenericFrontierPoint pt;
        pt.d2_bound = target;
        pt.samples_evaluated = static_cast<std::size_t>(budget);
        double best = -1.0;
        for (const auto& e : feas) {
            if (e.d2 > target + 1e-12) break;
            if (e.rate > best) {
                best = e.rate;
                pt.best_sum_rate = e.rate;
                pt.feasible_found = true;
                pt.sample_index = e.index;
                pt.d2_achieved = e.d2;
            }
        }
        out.push_back(pt);
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i - 1].feasible_found &&
            (!out[i].feasible_found || out[i].best_sum_rate < out[i - 1].best_sum_rate)) {
            double bound = out[i].d2_bound;
            out[i] = out[i - 1];
            out[i].d2_bound = bound;
            out[i].monotonized = true;
        }
    return out;
}

CompressionFeasibilityCheck compression_feasibility_check(const Example2SchemeParams& params, const ChannelSpec& channel) {
    SchemeSpec scheme = build_example2_scheme(params, channel);
    JointDistribution joint = assemble_joint(channel, scheme);
    CompressionFeasibilityCheck out;
    out.literal_lhs = conditional_mutual_information(joint, {"V1"}, {"Y"}, {"Z1"});
    out.literal_rhs = conditional_mutual_information(joint, {"X1"}, {"Z2"}, {"X2"});
    out.literal_slack = out.literal_rhs - out.literal_lhs;
    out.theorem_slacks = theorem_region(compute_info_terms(joint)).feasibility;
    return out;
}

std::string frontier_to_csv(const std::vector<FrontierPoint>& points) {
    std::ostringstream os;
    os.precision(12);
    os << "d2_bound,best_sum_rate,feasible,monotonized,d2_achieved,constant_v,"
          "p_u0,p_u1_0,p_u1_1,p_u2_0,p_u2_1,xi1,xi2,e\n";
    for (const auto& pt : points) {
        const auto& p = pt.argmax.params;
        os << pt.d2_bound << "," << pt.best_sum_rate << "," << (pt.feasible_found ? 1 : 0) << ","
           << (pt.monotonized ? 1 : 0) << "," << pt.argmax.d2 << ","
           << (pt.argmax.constant_v ? 1 : 0) << "," << p.p_u0 << "," << p.p_u1_given_u0[0] << ","
           << p.p_u1_given_u0[1] << "," << p.p_u2_given_u0[0] << "," << p.p_u2_given_u0[1] << ","
           << p.xi1 << "," << p.xi2 << "," << p.e << "\n";
    }
    return os.str();
}

}  // namespace macsense
