#pragma once

#include <optional>
#include <vector>

#include "macsense/joint.hpp"

namespace macsense {

// Per-user distortion d(s, s_hat) over the state alphabet rows and the
// reconstruction alphabet columns. Entries must be finite and nonnegative.
struct DistortionTable {
    Alphabet reconstruction;
    std::vector<double> d;  // row-major: state index * |reconstruction| + reconstruction index

    DistortionTable() = default;
    DistortionTable(const Alphabet& state, Alphabet recon, std::vector<double> values);

    double at(int state_idx, int recon_idx) const {
        return d[static_cast<std::size_t>(state_idx) * reconstruction.size() +
                 static_cast<std::size_t>(recon_idx)];
    }
    double max_value() const;

    // d(s, s_hat) = 1{s != s_hat}, reconstruction alphabet = state alphabet.
    static DistortionTable hamming(const Alphabet& state);
};

// Memoryless state-dependent MAC: a state pmf over (S1,S2) and the transition
// kernel P(Y,Z1,Z2 | S1,S2,X1,X2), stored row-major over
// (S1,S2,X1,X2,Y,Z1,Z2) with S1 slowest. Immutable after construction.
struct ChannelSpec {
    Alphabet s1, s2, x1, x2, y, z1, z2;
    std::vector<double> state_pmf;  // row-major over (S1,S2)
    std::vector<double> kernel;
    std::optional<DistortionTable> distortion1;  // Hamming when absent
    std::optional<DistortionTable> distortion2;

    ChannelSpec(Alphabet s1_, Alphabet s2_, Alphabet x1_, Alphabet x2_, Alphabet y_, Alphabet z1_,
                Alphabet z2_, std::vector<double> state_pmf_, std::vector<double> kernel_,
                std::optional<DistortionTable> d1 = std::nullopt,
                std::optional<DistortionTable> d2 = std::nullopt);

    std::size_t kernel_index(int is1, int is2, int ix1, int ix2, int iy, int iz1, int iz2) const;
    double kernel_at(int is1, int is2, int ix1, int ix2, int iy, int iz1, int iz2) const {
        return kernel[kernel_index(is1, is2, ix1, ix2, iy, iz1, iz2)];
    }
    double state_at(int is1, int is2) const {
        return state_pmf[static_cast<std::size_t>(is1) * s2.size() + static_cast<std::size_t>(is2)];
    }

    JointDistribution state_joint() const;
    DistortionTable distortion_for(int user) const;  // user in {1,2}
};

// Binary MAC where Tx 1 watches the state directly and Tx 2 watches Tx 1's
// input: Y = S2*X2, Z1 = S2, Z2 = X1, S2 ~ Ber(p_s), S1 constant.
ChannelSpec build_example1(double p_s);

// Noisy-feedback adder MAC: Y' = S1*X1 + S2*X2 in {0,1,2}, receiver output
// Y = (Y',S1,S2) flattened to 12 symbols labelled "y'|s1|s2", Z1 = Y',
// Z2 = Y' + B with B ~ Ber(t); S1,S2 i.i.d. Ber(p_s). The additive noise B is
// marginalized out of the kernel exactly.
ChannelSpec build_example2(double p_s, double t);

}  // namespace macsense
