#include "macsense/scheme.hpp"

#include <cmath>
#include <string>

#include "macsense/errors.hpp"

namespace macsense {

namespace {
constexpr double kSliceTol = 1e-12;

void require(bool cond, const std::string& var) {
    if (!cond) throw ShapeError("scheme/channel dimension mismatch at variable " + var);
}
}  // namespace

Kernel::Kernel(std::vector<std::size_t> given, std::size_t out, std::vector<double> probs,
               const std::string& label)
    : given_sizes(std::move(given)), out_size(out), p(std::move(probs)) {
    std::size_t cells = given_cells();
    if (p.size() != cells * out_size)
        throw ShapeError(label + " has " + std::to_string(p.size()) + " entries, expected " +
                         std::to_string(cells * out_size));
    for (std::size_t g = 0; g < cells; ++g) {
        double s = 0.0;
        for (std::size_t k = 0; k < out_size; ++k) {
            if (p[g * out_size + k] < 0.0) throw DomainError(label + " has a negative entry");
            s += p[g * out_size + k];
        }
        if (std::fabs(s - 1.0) > kSliceTol)
            throw NormalizationError(label + " slice " + std::to_string(g) + " sums to " +
                                     std::to_string(s));
    }
}

std::size_t Kernel::given_cells() const {
    std::size_t cells = 1;
    for (std::size_t s : given_sizes) cells *= s;
    return cells;
}

void SchemeSpec::check_internal() const {
    require(p_u0.given_sizes.empty() && p_u0.out_size == u0.size(), "U0");
    require(p_u1_u0.given_sizes == std::vector<std::size_t>{u0.size()} &&
                p_u1_u0.out_size == u1.size(),
            "U1");
    require(p_u2_u0.given_sizes == std::vector<std::size_t>{u0.size()} &&
                p_u2_u0.out_size == u2.size(),
            "U2");
    require(p_x1.given_sizes == std::vector<std::size_t>{u0.size(), u1.size()}, "X1");
    require(p_x2.given_sizes == std::vector<std::size_t>{u0.size(), u2.size()}, "X2");
    require(p_v1.out_size == v1.size(), "V1");
    require(p_v2.out_size == v2.size(), "V2");
}

void Example2SchemeParams::check() const {
    auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!(ok(p_u0) && ok(p_u1_given_u0[0]) && ok(p_u1_given_u0[1]) && ok(p_u2_given_u0[0]) &&
          ok(p_u2_given_u0[1]) && ok(xi1) && ok(xi2) && ok(e)))
        throw DomainError("scheme parameters must lie in [0,1]");
}

JointDistribution assemble_joint(const ChannelSpec& channel, const SchemeSpec& scheme) {
    scheme.check_internal();
    const std::size_t nu0 = scheme.u0.size(), nu1 = scheme.u1.size(), nu2 = scheme.u2.size();
    const std::size_t nx1 = channel.x1.size(), nx2 = channel.x2.size();
    const std::size_t ns1 = channel.s1.size(), ns2 = channel.s2.size();
    const std::size_t ny = channel.y.size(), nz1 = channel.z1.size(), nz2 = channel.z2.size();
    const std::size_t nv1 = scheme.v1.size(), nv2 = scheme.v2.size();

    require(scheme.p_x1.out_size == nx1, "X1");
    require(scheme.p_x2.out_size == nx2, "X2");
    require(scheme.p_v1.given_sizes == std::vector<std::size_t>{nu0, nu2, nx1, nz1}, "V1");
    require(scheme.p_v2.given_sizes == std::vector<std::size_t>{nu0, nu1, nx2, nz2}, "V2");

    std::vector<Variable> vars = {
        {"U0", scheme.u0}, {"U1", scheme.u1}, {"U2", scheme.u2}, {"X1", channel.x1},
        {"X2", channel.x2}, {"S1", channel.s1}, {"S2", channel.s2}, {"Y", channel.y},
        {"Z1", channel.z1}, {"Z2", channel.z2}, {"V1", scheme.v1}, {"V2", scheme.v2}};

    std::vector<double> w(nu0 * nu1 * nu2 * nx1 * nx2 * ns1 * ns2 * ny * nz1 * nz2 * nv1 * nv2,
                          0.0);
    const std::size_t tail = nv1 * nv2;  // strides for the two fastest axes

    for (std::size_t u0 = 0; u0 < nu0; ++u0) {
        double f_u0 = scheme.p_u0.at(0, u0);
        for (std::size_t u1 = 0; u1 < nu1; ++u1) {
            double f_u1 = f_u0 * scheme.p_u1_u0.at(u0, u1);
            for (std::size_t u2 = 0; u2 < nu2; ++u2) {
                double f_u2 = f_u1 * scheme.p_u2_u0.at(u0, u2);
                for (std::size_t x1 = 0; x1 < nx1; ++x1) {
                    double f_x1 = f_u2 * scheme.p_x1.at(u0 * nu1 + u1, x1);
                    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
                        double f_x2 = f_x1 * scheme.p_x2.at(u0 * nu2 + u2, x2);
                        if (f_x2 == 0.0) continue;
                        for (std::size_t s1 = 0; s1 < ns1; ++s1)
                            for (std::size_t s2 = 0; s2 < ns2; ++s2) {
                                double f_s = f_x2 * channel.state_at(static_cast<int>(s1),
                                                                     static_cast<int>(s2));
                                if (f_s == 0.0) continue;
                                std::size_t base =
                                    ((((((u0 * nu1 + u1) * nu2 + u2) * nx1 + x1) * nx2 + x2) *
                                          ns1 +
                                      s1) *
                                         ns2 +
                                     s2) *
                                    ny;
                                for (std::size_t y = 0; y < ny; ++y)
                                    for (std::size_t z1 = 0; z1 < nz1; ++z1)
                                        for (std::size_t z2 = 0; z2 < nz2; ++z2) {
                                            double pk = channel.kernel_at(
                                                static_cast<int>(s1), static_cast<int>(s2),
                                                static_cast<int>(x1), static_cast<int>(x2),
                                                static_cast<int>(y), static_cast<int>(z1),
                                                static_cast<int>(z2));
                                            if (pk == 0.0) continue;
                                            double f_ch = f_s * pk;
                                            std::size_t g1 = ((u0 * nu2 + u2) * nx1 + x1) * nz1 + z1;
                                            std::size_t g2 = ((u0 * nu1 + u1) * nx2 + x2) * nz2 + z2;
                                            std::size_t cell =
                                                (((base + y) * nz1 + z1) * nz2 + z2) * tail;
                                            for (std::size_t v1 = 0; v1 < nv1; ++v1) {
                                                double f_v1 = f_ch * scheme.p_v1.at(g1, v1);
                                                if (f_v1 == 0.0) continue;
                                                for (std::size_t v2 = 0; v2 < nv2; ++v2)
                                                    w[cell + v1 * nv2 + v2] =
                                                        f_v1 * scheme.p_v2.at(g2, v2);
                                            }
                                        }
                            }
                    }
                }
            }
        }
    }
    return JointDistribution(std::move(vars), std::move(w));
}

SchemeSpec build_example2_scheme(const Example2SchemeParams& params, const ChannelSpec& channel) {
    params.check();
    if (channel.z1.size() != 3 || channel.z2.size() != 4 || channel.x1.size() != 2 ||
        channel.x2.size() != 2)
        throw ShapeError("scheme family requires the adder-channel shape at variable Z1");

    SchemeSpec s;
    s.u0 = Alphabet::binary("U0");
    s.u1 = Alphabet::binary("U1");
    s.u2 = Alphabet::binary("U2");
    s.v1 = Alphabet("V1", {"0", "1", "?"});
    s.v2 = Alphabet::singleton("V2");

    double pu0 = params.p_u0;
    s.p_u0 = Kernel({}, 2, {1.0 - pu0, pu0}, "P(U0)");
    auto a = params.p_u1_given_u0;
    s.p_u1_u0 = Kernel({2}, 2, {1.0 - a[0], a[0], 1.0 - a[1], a[1]}, "P(U1|U0)");
    auto b = params.p_u2_given_u0;
    s.p_u2_u0 = Kernel({2}, 2, {1.0 - b[0], b[0], 1.0 - b[1], b[1]}, "P(U2|U0)");

    // X_k = U_k xor Xi_k: flips U_k with probability xi_k, independent of U0.
    double xi1 = params.xi1, xi2 = params.xi2;
    s.p_x1 = Kernel::bernoulli({2, 2}, [xi1](std::size_t g) {
        return (g % 2 == 1) ? 1.0 - xi1 : xi1;  // g = u0*2 + u1
    });
    s.p_x2 = Kernel::bernoulli({2, 2}, [xi2](std::size_t g) {
        return (g % 2 == 1) ? 1.0 - xi2 : xi2;
    });

    // V1 depends on Z1 only: erasure-compressed indicator of Z1 == 1.
    double e = params.e;
    std::vector<std::size_t> g1 = {2, 2, 2, 3};
    std::size_t cells = 2 * 2 * 2 * 3;
    std::vector<double> pv1(cells * 3, 0.0);
    for (std::size_t g = 0; g < cells; ++g) {
        std::size_t z1 = g % 3;
        pv1[g * 3 + (z1 == 1 ? 1 : 0)] = 1.0 - e;
        pv1[g * 3 + 2] += e;
    }
    s.p_v1 = Kernel(g1, 3, std::move(pv1), "P(V1|U0,U2,X1,Z1)");
    s.p_v2 = Kernel::constant({2, 2, 2, 4});
    s.check_internal();
    return s;
}

SchemeSpec constant_V_scheme(const SchemeSpec& scheme) {
    SchemeSpec s = scheme;
    s.v1 = Alphabet::singleton("V1");
    s.v2 = Alphabet::singleton("V2");
    s.p_v1 = Kernel::constant(scheme.p_v1.given_sizes);
    s.p_v2 = Kernel::constant(scheme.p_v2.given_sizes);
    return s;
}

namespace {
// Uniform Dirichlet(1,...,1) row via exponential spacings.
void random_simplex_row(SplitMix64& rng, double* out, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double u;
        do {
            u = rng.uniform();
        } while (u <= 0.0);
        out[i] = -std::log(u);
        total += out[i];
    }
    for (std::size_t i = 0; i < n; ++i) out[i] /= total;
}

Kernel random_kernel(SplitMix64& rng, std::vector<std::size_t> given, std::size_t out) {
    Kernel k;
    k.given_sizes = std::move(given);
    k.out_size = out;
    std::size_t cells = k.given_cells();
    k.p.assign(cells * out, 0.0);
    for (std::size_t g = 0; g < cells; ++g) random_simplex_row(rng, k.p.data() + g * out, out);
    return k;
}
}  // namespace

SchemeSpec random_scheme(const ChannelSpec& channel, SplitMix64& rng, std::size_t u0_size,
                         std::size_t u1_size, std::size_t u2_size, std::size_t v1_size,
                         std::size_t v2_size) {
    SchemeSpec s;
    s.u0 = Alphabet::numeric("U0", u0_size);
    s.u1 = Alphabet::numeric("U1", u1_size);
    s.u2 = Alphabet::numeric("U2", u2_size);
    s.v1 = Alphabet::numeric("V1", v1_size);
    s.v2 = Alphabet::numeric("V2", v2_size);
    s.p_u0 = random_kernel(rng, {}, u0_size);
    s.p_u1_u0 = random_kernel(rng, {u0_size}, u1_size);
    s.p_u2_u0 = random_kernel(rng, {u0_size}, u2_size);
    s.p_x1 = random_kernel(rng, {u0_size, u1_size}, channel.x1.size());
    s.p_x2 = random_kernel(rng, {u0_size, u2_size}, channel.x2.size());
    s.p_v1 = random_kernel(rng, {u0_size, u2_size, channel.x1.size(), channel.z1.size()}, v1_size);
    s.p_v2 = random_kernel(rng, {u0_size, u1_size, channel.x2.size(), channel.z2.size()}, v2_size);
    return s;
}

ChannelSpec random_channel222(SplitMix64& rng) {
    std::vector<double> state(4);
    random_simplex_row(rng, state.data(), 4);
    std::vector<double> kernel(2 * 2 * 2 * 2 * 2 * 2 * 2);
    for (std::size_t c = 0; c < 16; ++c) random_simplex_row(rng, kernel.data() + c * 8, 8);
    return ChannelSpec(Alphabet::binary("S1"), Alphabet::binary("S2"), Alphabet::binary("X1"),
                       Alphabet::binary("X2"), Alphabet::binary("Y"), Alphabet::binary("Z1"),
                       Alphabet::binary("Z2"), std::move(state), std::move(kernel));
}

}  // namespace macsense
