#include "macsense/channel.hpp"

#include <cmath>
#include <string>

#include "macsense/errors.hpp"

namespace macsense {

namespace {
constexpr double kSliceTol = 1e-12;
}

DistortionTable::DistortionTable(const Alphabet& state, Alphabet recon, std::vector<double> values)
    : reconstruction(std::move(recon)), d(std::move(values)) {
    if (d.size() != state.size() * reconstruction.size())
        throw ShapeError("distortion table for state '" + state.name + "' has " +
                         std::to_string(d.size()) + " entries, expected " +
                         std::to_string(state.size() * reconstruction.size()));
    for (double v : d)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("distortion entries must be finite and nonnegative");
}

double DistortionTable::max_value() const {
    double m = 0.0;
    for (double v : d) m = std::max(m, v);
    return m;
}

DistortionTable DistortionTable::hamming(const Alphabet& state) {
    std::size_t n = state.size();
    std::vector<double> v(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 0.0;
    Alphabet recon = state;
    recon.name = state.name + "_hat";
    return DistortionTable(state, std::move(recon), std::move(v));
}

ChannelSpec::ChannelSpec(Alphabet s1_, Alphabet s2_, Alphabet x1_, Alphabet x2_, Alphabet y_,
                         Alphabet z1_, Alphabet z2_, std::vector<double> state_pmf_,
                         std::vector<double> kernel_, std::optional<DistortionTable> d1,
                         std::optional<DistortionTable> d2)
    : s1(std::move(s1_)),
      s2(std::move(s2_)),
      x1(std::move(x1_)),
      x2(std::move(x2_)),
      y(std::move(y_)),
      z1(std::move(z1_)),
      z2(std::move(z2_)),
      state_pmf(std::move(state_pmf_)),
      kernel(std::move(kernel_)),
      distortion1(std::move(d1)),
      distortion2(std::move(d2)) {
    if (state_pmf.size() != s1.size() * s2.size())
        throw ShapeError("state pmf has " + std::to_string(state_pmf.size()) +
                         " entries, expected " + std::to_string(s1.size() * s2.size()));
    double tot = 0.0;
    for (double p : state_pmf) {
        if (p < 0.0) throw DomainError("state pmf has a negative entry");
        tot += p;
    }
    if (std::fabs(tot - 1.0) > kSliceTol)
        throw NormalizationError("state pmf sums to " + std::to_string(tot));

    std::size_t expected =
        s1.size() * s2.size() * x1.size() * x2.size() * y.size() * z1.size() * z2.size();
    if (kernel.size() != expected)
        throw ShapeError("kernel has " + std::to_string(kernel.size()) + " entries, expected " +
                         std::to_string(expected));
    // Every conditioning cell (s1,s2,x1,x2) must carry a probability vector.
    std::size_t out = y.size() * z1.size() * z2.size();
    for (std::size_t c = 0; c < kernel.size() / out; ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < out; ++k) {
            double p = kernel[c * out + k];
            if (p < 0.0) throw DomainError("kernel has a negative entry");
            s += p;
        }
        if (std::fabs(s - 1.0) > kSliceTol) {
            std::size_t rem = c;
            int ix2 = static_cast<int>(rem % x2.size());
            rem /= x2.size();
            int ix1 = static_cast<int>(rem % x1.size());
            rem /= x1.size();
            int is2 = static_cast<int>(rem % s2.size());
            rem /= s2.size();
            int is1 = static_cast<int>(rem);
            throw NormalizationError(
                "kernel slice at (S1=" + s1.symbols[is1] + ", S2=" + s2.symbols[is2] +
                ", X1=" + x1.symbols[ix1] + ", X2=" + x2.symbols[ix2] + ") sums to " +
                std::to_string(s));
        }
    }
    if (distortion1 && distortion1->d.size() % s1.size() != 0)
        throw ShapeError("distortion table for user 1 does not match |S1|");
    if (distortion2 && distortion2->d.size() % s2.size() != 0)
        throw ShapeError("distortion table for user 2 does not match |S2|");
}

std::size_t ChannelSpec::kernel_index(int is1, int is2, int ix1, int ix2, int iy, int iz1,
                                      int iz2) const {
    std::size_t idx = static_cast<std::size_t>(is1);
    idx = idx * s2.size() + is2;
    idx = idx * x1.size() + ix1;
    idx = idx * x2.size() + ix2;
    idx = idx * y.size() + iy;
    idx = idx * z1.size() + iz1;
    idx = idx * z2.size() + iz2;
    return idx;
}

JointDistribution ChannelSpec::state_joint() const {
    return JointDistribution({{"S1", s1}, {"S2", s2}}, state_pmf);
}

DistortionTable ChannelSpec::distortion_for(int user) const {
    if (user == 1) return distortion1 ? *distortion1 : DistortionTable::hamming(s1);
    if (user == 2) return distortion2 ? *distortion2 : DistortionTable::hamming(s2);
    throw ConfigError("user must be 1 or 2");
}

ChannelSpec build_example1(double p_s) {
    if (!(p_s > 0.0 && p_s < 1.0)) throw DomainError("p_s must lie in (0,1)");
    Alphabet s1 = Alphabet::singleton("S1");  // S1 is identically 0
    Alphabet s2 = Alphabet::binary("S2");
    Alphabet x1 = Alphabet::binary("X1");
    Alphabet x2 = Alphabet::binary("X2");
    Alphabet y = Alphabet::binary("Y");
    Alphabet z1 = Alphabet::binary("Z1");
    Alphabet z2 = Alphabet::binary("Z2");

    std::vector<double> state = {1.0 - p_s, p_s};
    std::vector<double> kernel(2 * 2 * 2 * 2 * 2 * 2, 0.0);
    auto idx = [&](int is2, int ix1, int ix2, int iy, int iz1, int iz2) {
        return ((((static_cast<std::size_t>(is2) * 2 + ix1) * 2 + ix2) * 2 + iy) * 2 + iz1) * 2 +
               iz2;
    };
    for (int is2 = 0; is2 < 2; ++is2)
        for (int ix1 = 0; ix1 < 2; ++ix1)
            for (int ix2 = 0; ix2 < 2; ++ix2)
                kernel[idx(is2, ix1, ix2, is2 * ix2, is2, ix1)] = 1.0;
    return ChannelSpec(s1, s2, x1, x2, y, z1, z2, std::move(state), std::move(kernel));
}

ChannelSpec build_example2(double p_s, double t) {
    if (!(p_s > 0.0 && p_s < 1.0)) throw DomainError("p_s must lie in (0,1)");
    if (!(t > 0.0 && t < 1.0)) throw DomainError("t must lie in (0,1)");
    Alphabet s1 = Alphabet::binary("S1");
    Alphabet s2 = Alphabet::binary("S2");
    Alphabet x1 = Alphabet::binary("X1");
    Alphabet x2 = Alphabet::binary("X2");
    // Composite receiver output (Y', S1, S2) flattened with Y' slowest.
    std::vector<std::string> ysyms;
    for (int yp = 0; yp < 3; ++yp)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                ysyms.push_back(std::to_string(yp) + "|" + std::to_string(a) + "|" +
                                std::to_string(b));
    Alphabet y("Y", ysyms);
    Alphabet z1("Z1", {"0", "1", "2"});
    Alphabet z2("Z2", {"0", "1", "2", "3"});

    std::vector<double> state(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            state[a * 2 + b] = (a ? p_s : 1.0 - p_s) * (b ? p_s : 1.0 - p_s);

    std::vector<double> kernel(2 * 2 * 2 * 2 * 12 * 3 * 4, 0.0);
    auto idx = [&](int is1, int is2, int ix1, int ix2, int iy, int iz1, int iz2) {
        std::size_t k = static_cast<std::size_t>(is1);
        k = k * 2 + is2;
        k = k * 2 + ix1;
        k = k * 2 + ix2;
        k = k * 12 + iy;
        k = k * 3 + iz1;
        k = k * 4 + iz2;
        return k;
    };
    for (int is1 = 0; is1 < 2; ++is1)
        for (int is2 = 0; is2 < 2; ++is2)
            for (int ix1 = 0; ix1 < 2; ++ix1)
                for (int ix2 = 0; ix2 < 2; ++ix2) {
                    int yp = is1 * ix1 + is2 * ix2;
                    int iy = yp * 4 + is1 * 2 + is2;
                    // B ~ Ber(t) summed out: Z2 = yp with prob 1-t, yp+1 with prob t.
                    kernel[idx(is1, is2, ix1, ix2, iy, yp, yp)] += 1.0 - t;
                    kernel[idx(is1, is2, ix1, ix2, iy, yp, yp + 1)] += t;
                }
    return ChannelSpec(s1, s2, x1, x2, y, z1, z2, std::move(state), std::move(kernel));
}

}  // namespace macsense
