#include "macsense/mc.hpp"

#include <algorithm>
#include <cmath>

#include "macsense/errors.hpp"

namespace macsense {

SampleBatch sample_joint(const JointDistribution& joint, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample count must be at least 1");
    const auto& w = joint.weights();
    std::vector<double> cdf(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;  // guard the last bucket against rounding

    SampleBatch batch;
    batch.n = n;
    batch.seed = seed;
    batch.cells.reserve(n);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform();
        // u < 1 = cdf.back(), and equal consecutive cdf entries (zero-mass
        // cells) are skipped by upper_bound, so the draw is always in support.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        batch.cells.push_back(static_cast<std::size_t>(it - cdf.begin()));
    }
    return batch;
}

EmpiricalDistortion empirical_distortion(const JointDistribution& joint, const SampleBatch& batch,
                                         const EstimatorTable& est, const DistortionTable& d) {
    const std::string state_name = est.user == 1 ? "S1" : "S2";
    std::size_t s_pos = joint.index_of(state_name);
    std::vector<std::size_t> cond_pos;
    for (const auto& v : est.conditioning) cond_pos.push_back(joint.index_of(v.name));

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t cell : batch.cells) {
        auto digits = joint.digits_of(cell);
        std::size_t c = 0;
        for (std::size_t i = 0; i < cond_pos.size(); ++i)
            c = c * est.conditioning[i].alphabet.size() +
                static_cast<std::size_t>(digits[cond_pos[i]]);
        double v = d.at(digits[s_pos], est.decision[c]);
        sum += v;
        sumsq += v * v;
    }
    EmpiricalDistortion out;
    out.n = batch.n;
    double n = static_cast<double>(batch.n);
    out.mean = sum / n;
    if (batch.n > 1) {
        double var = (sumsq - sum * sum / n) / (n - 1.0);
        out.standard_error = std::sqrt(std::max(0.0, var) / n);
    }
    return out;
}

}  // namespace macsense
