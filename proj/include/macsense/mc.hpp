#pragma once

#include <cstdint>
#include <vector>

#include "macsense/estimator.hpp"
#include "macsense/joint.hpp"
#include "macsense/rng.hpp"

namespace macsense {

// i.i.d. draws from a joint distribution, stored as flat cell indices.
// Deterministic given the seed (SplitMix64 + inverse CDF over the flattened
// tensor in row-major order).
struct SampleBatch {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> cells;
};

SampleBatch sample_joint(const JointDistribution& joint, std::size_t n, std::uint64_t seed);

struct EmpiricalDistortion {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t n = 0;
};

// Sample mean of d(S_k, decision(c)) over the batch with its standard error
// (sample standard deviation / sqrt(n)).
EmpiricalDistortion empirical_distortion(const JointDistribution& joint, const SampleBatch& batch,
                                         const EstimatorTable& est, const DistortionTable& d);

}  // namespace macsense
