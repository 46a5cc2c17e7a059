#pragma once

// Test-side oracles. These are deliberately independent of the library's
// computation paths: conditional mutual information is evaluated by the
// direct probability sum over symbol tuples (not entropy differences), with
// marginals accumulated in hash maps rather than the library tensors.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "macsense/joint.hpp"
#include "macsense/rng.hpp"

namespace oracle {

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline double pmf_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

// I(A;B|C) = sum over (a,b,c) of p(abc) * log2( p(abc) p(c) / (p(ac) p(bc)) ).
inline double cmi(const macsense::JointDistribution& j, const std::vector<std::string>& a,
                  const std::vector<std::string>& b, const std::vector<std::string>& c) {
    using Key = std::vector<int>;
    auto positions = [&](const std::vector<std::string>& names) {
        std::vector<std::size_t> out;
        for (const auto& n : names) out.push_back(j.index_of(n));
        return out;
    };
    auto pa = positions(a), pb = positions(b), pc = positions(c);

    std::map<Key, double> p_abc, p_ac, p_bc, p_c;
    const auto& w = j.weights();
    for (std::size_t flat = 0; flat < w.size(); ++flat) {
        if (w[flat] == 0.0) continue;
        auto digits = j.digits_of(flat);
        Key ka, kb, kc;
        for (auto i : pa) ka.push_back(digits[i]);
        for (auto i : pb) kb.push_back(digits[i]);
        for (auto i : pc) kc.push_back(digits[i]);
        Key kabc = ka;
        kabc.insert(kabc.end(), kb.begin(), kb.end());
        kabc.insert(kabc.end(), kc.begin(), kc.end());
        Key kac = ka;
        kac.insert(kac.end(), kc.begin(), kc.end());
        Key kbc = kb;
        kbc.insert(kbc.end(), kc.begin(), kc.end());
        p_abc[kabc] += w[flat];
        p_ac[kac] += w[flat];
        p_bc[kbc] += w[flat];
        p_c[kc] += w[flat];
    }

    double total = 0.0;
    for (const auto& [key, pabc] : p_abc) {
        Key ka(key.begin(), key.begin() + pa.size());
        Key kb(key.begin() + pa.size(), key.begin() + pa.size() + pb.size());
        Key kc(key.begin() + pa.size() + pb.size(), key.end());
        Key kac = ka;
        kac.insert(kac.end(), kc.begin(), kc.end());
        Key kbc = kb;
        kbc.insert(kbc.end(), kc.begin(), kc.end());
        double pc_v = c.empty() ? 1.0 : p_c[kc];
        total += pabc * std::log2(pabc * pc_v / (p_ac[kac] * p_bc[kbc]));
    }
    return total;
}

// Random normalized joint with the given variable sizes.
inline macsense::JointDistribution random_joint(macsense::SplitMix64& rng,
                                                const std::vector<std::size_t>& sizes) {
    std::vector<macsense::Variable> vars;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        vars.push_back({"A" + std::to_string(i), macsense::Alphabet::numeric("A" + std::to_string(i),
                                                                             sizes[i])});
        cells *= sizes[i];
    }
    std::vector<double> w(cells);
    double total = 0.0;
    for (auto& x : w) {
        double u;
        do {
            u = rng.uniform();
        } while (u <= 0.0);
        x = -std::log(u);
        total += x;
    }
    for (auto& x : w) x /= total;
    return macsense::JointDistribution(std::move(vars), std::move(w));
}

// Dyadic random joint: weights are integer multiples of 2^-20 summing to one,
// so double-precision marginal sums are exact in any grouping.
inline macsense::JointDistribution dyadic_joint(macsense::SplitMix64& rng,
                                                const std::vector<std::size_t>& sizes) {
    std::vector<macsense::Variable> vars;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        vars.push_back({"B" + std::to_string(i), macsense::Alphabet::numeric("B" + std::to_string(i),
                                                                             sizes[i])});
        cells *= sizes[i];
    }
    std::vector<std::uint64_t> units(cells, 0);
    std::uint64_t remaining = 1ULL << 20;
    for (std::size_t i = 0; i + 1 < cells && remaining > 0; ++i) {
        std::uint64_t take = rng.below(remaining + 1);
        units[i] = take;
        remaining -= take;
    }
    units[cells - 1] += remaining;
    std::vector<double> w(cells);
    for (std::size_t i = 0; i < cells; ++i)
        w[i] = static_cast<double>(units[i]) * 0x1.0p-20;
    return macsense::JointDistribution(std::move(vars), std::move(w));
}

}  // namespace oracle
