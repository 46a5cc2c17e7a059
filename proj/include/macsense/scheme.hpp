#pragma once

#include <vector>

#include "macsense/channel.hpp"
#include "macsense/joint.hpp"
#include "macsense/rng.hpp"

namespace macsense {

// Conditional pmf P(out | given...) stored row-major with the conditioning
// tuple slowest (declaration order) and the output fastest. Every slice over
// the output must sum to 1 within 1e-12.
struct Kernel {
    std::vector<std::size_t> given_sizes;
    std::size_t out_size = 1;
    std::vector<double> p;

    Kernel() = default;
    Kernel(std::vector<std::size_t> given, std::size_t out, std::vector<double> probs,
           const std::string& label = "kernel");

    std::size_t given_cells() const;
    double at(std::size_t given_flat, std::size_t out) const {
        return p[given_flat * out_size + out];
    }

    // All mass on f(given_flat).
    template <typename F>
    static Kernel deterministic(std::vector<std::size_t> given, std::size_t out, F&& f) {
        Kernel k;
        k.given_sizes = std::move(given);
        k.out_size = out;
        std::size_t cells = k.given_cells();
        k.p.assign(cells * out, 0.0);
        for (std::size_t g = 0; g < cells; ++g) k.p[g * out + f(g)] = 1.0;
        return k;
    }

    // Binary output with P(out=1 | g) = prob1(g).
    template <typename F>
    static Kernel bernoulli(std::vector<std::size_t> given, F&& prob1) {
        Kernel k;
        k.given_sizes = std::move(given);
        k.out_size = 2;
        std::size_t cells = k.given_cells();
        k.p.assign(cells * 2, 0.0);
        for (std::size_t g = 0; g < cells; ++g) {
            double q = prob1(g);
            k.p[g * 2] = 1.0 - q;
            k.p[g * 2 + 1] = q;
        }
        return k;
    }

    static Kernel constant(std::vector<std::size_t> given) {
        return deterministic(std::move(given), 1, [](std::size_t) { return 0; });
    }
};

// The seven conditional pmfs of the layered coding scheme:
//   P(U0), P(U1|U0), P(U2|U0), P(X1|U0,U1), P(X2|U0,U2),
//   P(V1|U0,U2,X1,Z1), P(V2|U0,U1,X2,Z2).
// Immutable; assembly against a channel is a pure function.
struct SchemeSpec {
    Alphabet u0, u1, u2, v1, v2;
    Kernel p_u0;      // given ()
    Kernel p_u1_u0;   // given (U0)
    Kernel p_u2_u0;   // given (U0)
    Kernel p_x1;      // given (U0,U1)
    Kernel p_x2;      // given (U0,U2)
    Kernel p_v1;      // given (U0,U2,X1,Z1)
    Kernel p_v2;      // given (U0,U1,X2,Z2)

    void check_internal() const;  // kernel dimensions against own alphabets
};

// Scalar parameters of the binary-auxiliary scheme family used on the
// adder-channel example: U0 ~ Ber(p_u0), U_k | U0=u ~ Ber(p_uk[u]),
// X_k = U_k xor Xi_k with Xi_k ~ Ber(xi_k), V1 an erasure-compressed
// indicator of Z1 (erased with probability e), V2 constant.
struct Example2SchemeParams {
    double p_u0 = 0.0;
    double p_u1_given_u0[2] = {0.0, 0.0};
    double p_u2_given_u0[2] = {0.0, 0.0};
    double xi1 = 0.0;
    double xi2 = 0.0;
    double e = 1.0;

    void check() const;  // all in [0,1]
};

// Product of the seven scheme pmfs with the channel law: full joint over
// (U0,U1,U2,X1,X2,S1,S2,Y,Z1,Z2,V1,V2) in that declaration order.
JointDistribution assemble_joint(const ChannelSpec& channel, const SchemeSpec& scheme);

// V1 alphabet {0,1,?}: P(V1 | z1) = (1-e) point mass on 1{z1 == 1} plus e on
// "?"; X_k = U_k xor Xi_k; V2 constant. Requires the adder-channel shape
// (|Z1| = 3, |Z2| = 4, binary inputs).
SchemeSpec build_example2_scheme(const Example2SchemeParams& params, const ChannelSpec& channel);

// Replaces V1 and V2 by singleton alphabets with deterministic kernels;
// idempotent and leaves the joint over the remaining variables unchanged.
SchemeSpec constant_V_scheme(const SchemeSpec& scheme);

// Uniform-random scheme with the given auxiliary alphabet sizes; kernels are
// drawn i.i.d. uniform on the simplex (via exponential spacings). Used by the
// projection-verification driver and property tests.
SchemeSpec random_scheme(const ChannelSpec& channel, SplitMix64& rng, std::size_t u0_size = 2,
                         std::size_t u1_size = 2, std::size_t u2_size = 2, std::size_t v1_size = 2,
                         std::size_t v2_size = 2);

// Random two-user channel with all seven channel alphabets binary.
ChannelSpec random_channel222(SplitMix64& rng);

}  // namespace macsense
