// Command-line front end: region evaluation, tradeoff-curve tracing,
// exact-rational projection verification, and Monte Carlo validation.
//
// Exit codes: 0 success, 1 verification failure, 2 input/configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "macsense/errors.hpp"
#include "macsense/estimator.hpp"
#include "macsense/fme_bridge.hpp"
#include "macsense/frontier.hpp"
#include "macsense/info_terms.hpp"
#include "macsense/mc.hpp"
#include "macsense/region.hpp"
#include "macsense/scheme.hpp"
#include "macsense/serialization.hpp"

using namespace macsense;

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

struct ChannelOptions {
    std::string channel_path;
    bool example1 = false;
    bool example2 = false;
    double ps = 0.9;
    double t = 0.2;

    ChannelSpec build() const {
        int picked = (channel_path.empty() ? 0 : 1) + (example1 ? 1 : 0) + (example2 ? 1 : 0);
        if (picked != 1)
            throw ConfigError("select exactly one of --channel, --example1, --example2");
        if (example1) return build_example1(ps);
        if (example2) return build_example2(ps, t);
        return load_channel(read_file(channel_path));
    }
};

void add_channel_options(CLI::App* cmd, ChannelOptions& opt) {
    cmd->add_option("--channel", opt.channel_path, "channel document (JSON)");
    cmd->add_flag("--example1", opt.example1, "built-in state-watching binary channel");
    cmd->add_flag("--example2", opt.example2, "built-in noisy-feedback adder channel");
    cmd->add_option("--ps", opt.ps, "state parameter p_s for the built-in channels");
    cmd->add_option("--t", opt.t, "feedback noise parameter t (adder channel)");
}

struct SchemeOptions {
    std::string scheme_path;
    std::string builtin;  // "", "v1-copy", "v1-const", "example2-params"
    double p_u0 = 0.0, pu1_0 = 0.0, pu1_1 = 0.0, pu2_0 = 1.0, pu2_1 = 1.0;
    double xi1 = 0.0, xi2 = 0.0, e = 0.0;

    SchemeSpec build(const ChannelSpec& channel, const ChannelOptions& chopt) const {
        std::string name = builtin;
        if (!scheme_path.empty()) {
            // --scheme also accepts a builtin name directly
            if (scheme_path == "v1-copy" || scheme_path == "v1-const" ||
                scheme_path == "example2-params")
                name = scheme_path;
            else
                return load_scheme(read_file(scheme_path), channel);
        }
        if (name == "v1-copy" || name == "v1-const") {
            // uniform common input X1 = U1, X2 = 1; V1 copies Z1 or is constant
            SchemeSpec s;
            s.u0 = Alphabet::singleton("U0");
            s.u1 = Alphabet::binary("U1");
            s.u2 = Alphabet::singleton("U2");
            const bool copy = name == "v1-copy";
            std::size_t nz1 = channel.z1.size();
            if (copy) {
                std::vector<std::string> syms;
                for (std::size_t i = 0; i < nz1; ++i) syms.push_back(std::to_string(i));
                s.v1 = Alphabet("V1", syms);
            } else {
                s.v1 = Alphabet::singleton("V1");
            }
            s.v2 = Alphabet::singleton("V2");
            s.p_u0 = Kernel::constant({});
            s.p_u1_u0 = Kernel::bernoulli({1}, [](std::size_t) { return 0.5; });
            s.p_u2_u0 = Kernel::constant({1});
            if (channel.x1.size() != 2 || channel.x2.size() != 2)
                throw ConfigError("builtin schemes need binary inputs");
            s.p_x1 = Kernel::deterministic({1, 2}, 2, [](std::size_t g) { return g % 2; });
            s.p_x2 = Kernel::bernoulli({1, 1}, [](std::size_t) { return 1.0; });
            if (copy)
                s.p_v1 = Kernel::deterministic({1, 1, 2, nz1}, nz1,
                                               [nz1](std::size_t g) { return g % nz1; });
            else
                s.p_v1 = Kernel::constant({1, 1, 2, nz1});
            s.p_v2 = Kernel::constant({1, 2, 2, channel.z2.size()});
            return s;
        }
        if (name == "example2-params" || name.empty()) {
            if (!chopt.example2)
                throw ConfigError("parameterized schemes require --example2 (or pass --scheme)");
            Example2SchemeParams p;
            p.p_u0 = p_u0;
            p.p_u1_given_u0[0] = pu1_0;
            p.p_u1_given_u0[1] = pu1_1;
            p.p_u2_given_u0[0] = pu2_0;
            p.p_u2_given_u0[1] = pu2_1;
            p.xi1 = xi1;
            p.xi2 = xi2;
            p.e = e;
            return build_example2_scheme(p, channel);
        }
        throw ConfigError("unknown builtin scheme '" + name + "'");
    }
};

void add_scheme_options(CLI::App* cmd, SchemeOptions& opt) {
    cmd->add_option("--scheme", opt.scheme_path, "scheme document (JSON)");
    cmd->add_option("--scheme-builtin", opt.builtin,
                    "builtin scheme: v1-copy | v1-const | example2-params (default)");
    cmd->add_option("--p-u0", opt.p_u0, "P(U0=1)");
    cmd->add_option("--p-u1-0", opt.pu1_0, "P(U1=1|U0=0)");
    cmd->add_option("--p-u1-1", opt.pu1_1, "P(U1=1|U0=1)");
    cmd->add_option("--p-u2-0", opt.pu2_0, "P(U2=1|U0=0)");
    cmd->add_option("--p-u2-1", opt.pu2_1, "P(U2=1|U0=1)");
    cmd->add_option("--xi1", opt.xi1, "flip probability of X1 relative to U1");
    cmd->add_option("--xi2", opt.xi2, "flip probability of X2 relative to U2");
    cmd->add_option("--e", opt.e, "erasure probability of the compression variable");
}

std::vector<double> parse_grid(const std::string& text) {
    double a, b, s;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &s) != 3 || s <= 0)
        throw ConfigError("grid must be start:stop:step with positive step");
    std::vector<double> out;
    for (double d = a; d <= b + 1e-12; d += s) out.push_back(d);
    return out;
}

void print_region_report(const ChannelSpec& channel, const JointDistribution& joint,
                         bool corollary, const std::string& csv_path) {
    RegionDescription region;
    if (corollary) {
        region = corollary_region(joint);
    } else {
        InfoTerms info = compute_info_terms(joint);
        region = theorem_region(info);
        std::cout << "information terms (bits):\n";
        for (int i = 0; i < 16; ++i) std::cout << "  I" << i << " = " << fmt(info[i]) << "\n";
    }
    std::cout << "rate bounds (a1*R1 + a2*R2 " << (corollary ? "<=" : "<") << " rhs bits):\n";
    for (const auto& b : region.bounds)
        std::cout << "  " << b.a1 << " " << b.a2 << " " << fmt(b.rhs) << "  [" << b.name << "]\n";
    if (!region.feasibility.empty()) {
        std::cout << "feasibility slacks:\n";
        for (const auto& f : region.feasibility)
            std::cout << "  " << f.name << " = " << fmt(f.slack) << "\n";
    }
    std::cout << "feasible: " << (region.feasible() ? "yes" : "no") << "\n";
    if (auto s = max_sum_rate(region)) std::cout << "max sum rate: " << fmt(*s) << "\n";

    for (int user = 1; user <= 2; ++user) {
        auto d = channel.distortion_for(user);
        double dd =
            optimal_expected_distortion(joint, user, d, default_estimator_conditioning(user));
        double de =
            optimal_expected_distortion(joint, user, d, extended_estimator_conditioning(user));
        std::cout << "D" << user << " = " << fmt(dd) << " (conditioning X" << user << ",Z" << user
                  << ",U" << (3 - user) << ",V" << (3 - user) << "), " << fmt(de)
                  << " (with U0)\n";
    }
    if (!csv_path.empty()) write_file(csv_path, region.to_csv());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "macsense: achievable rate-distortion analysis for two-user multiple-access\n"
        "channels with per-transmitter state sensing over generalized feedback"};
    app.require_subcommand(1);

    // ------------------------------------------------ evaluate-region
    auto* eval = app.add_subcommand("evaluate-region",
                                    "evaluate the achievable region and distortions of a scheme");
    ChannelOptions eval_ch;
    SchemeOptions eval_sc;
    bool eval_corollary = false, corollary_min_d2 = false;
    std::string eval_csv;
    add_channel_options(eval, eval_ch);
    add_scheme_options(eval, eval_sc);
    eval->add_flag("--corollary", eval_corollary,
                   "evaluate the constant-compression region (V forced constant)");
    eval->add_flag("--corollary-min-d2", corollary_min_d2,
                   "print the constant-compression minimum D2 for the adder channel");
    eval->add_option("--csv", eval_csv, "write the inequality list to this CSV file");

    // ------------------------------------------------ trace-frontier
    auto* trace = app.add_subcommand(
        "trace-frontier",
        "trace max sum rate vs distortion bound; CSV columns (fixed order):\n"
        "d2_bound,best_sum_rate,feasible,monotonized,d2_achieved,constant_v,\n"
        "p_u0,p_u1_0,p_u1_1,p_u2_0,p_u2_1,xi1,xi2,e");
    ChannelOptions trace_ch;
    std::string trace_mode = "both", trace_grid = "0.005:0.1:0.005", trace_out;
    int trace_budget = 16;
    add_channel_options(trace, trace_ch);
    trace->add_option("--mode", trace_mode, "theorem | corollary | both");
    trace->add_option("--d2-grid", trace_grid, "distortion grid start:stop:step");
    trace->add_option("--budget", trace_budget, "refinement centers per round");
    trace->add_option("--out", trace_out, "output CSV path prefix (default: stdout)");

    // ------------------------------------------------ verify-fme
    auto* verify = app.add_subcommand(
        "verify-fme", "check the exact-rational projection against the region transcription");
    ChannelOptions verify_ch;
    int verify_count = 20;
    std::uint64_t verify_seed = 7;
    bool verify_random_channels = false, verify_perturb = false;
    add_channel_options(verify, verify_ch);
    verify->add_option("--count", verify_count, "number of sampled schemes")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "base seed for scheme sampling");
    verify->add_flag("--random-channels", verify_random_channels,
                     "sample a fresh random binary channel per instance");
    verify->add_flag("--perturb", verify_perturb,
                     "negative control: tighten one projected row and expect a counterexample");

    // ------------------------------------------------ simulate
    auto* sim =
        app.add_subcommand("simulate", "Monte Carlo check of analytic vs empirical distortion");
    ChannelOptions sim_ch;
    SchemeOptions sim_sc;
    std::uint64_t sim_seed = 1;
    std::size_t sim_n = 100000;
    int sim_user = 2;
    bool sim_extended = false;
    add_channel_options(sim, sim_ch);
    add_scheme_options(sim, sim_sc);
    sim->add_option("-n,--samples", sim_n, "number of i.i.d. draws");
    sim->add_option("--seed", sim_seed, "sampling seed");
    sim->add_option("--user", sim_user, "which state to estimate (1 or 2)");
    sim->add_flag("--extended-conditioning", sim_extended, "condition on U0 as well");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            auto channel = eval_ch.build();
            if (corollary_min_d2) {
                if (!eval_ch.example2) throw ConfigError("--corollary-min-d2 needs --example2");
                SchemeOptions floor;  // defaults give X1 = 0, X2 = 1
                floor.e = 1.0;
                auto joint =
                    assemble_joint(channel, constant_V_scheme(floor.build(channel, eval_ch)));
                double d2 = optimal_expected_distortion(joint, 2, channel.distortion_for(2),
                                                        default_estimator_conditioning(2));
                std::cout << fmt(d2) << "\n";
                return 0;
            }
            auto scheme = eval_sc.build(channel, eval_ch);
            if (eval_corollary) scheme = constant_V_scheme(scheme);
            auto joint = assemble_joint(channel, scheme);
            print_region_report(channel, joint, eval_corollary, eval_csv);
            return 0;
        }

        if (trace->parsed()) {
            if (!trace_ch.example2)
                throw ConfigError(
                    "trace-frontier drives the built-in adder channel; pass --example2");
            auto grid = parse_grid(trace_grid);
            auto run_mode = [&](FrontierMode mode, const std::string& label) {
                auto pts = trace_frontier_example2(trace_ch.ps, trace_ch.t, grid, trace_budget,
                                                   mode, &std::cerr);
                auto csv = frontier_to_csv(pts);
                if (trace_out.empty()) {
                    std::cout << "# mode: " << label << "\n" << csv;
                } else {
                    write_file(trace_out + "." + label + ".csv", csv);
                    std::cerr << "# wrote " << trace_out + "." + label + ".csv\n";
                }
            };
            if (trace_mode == "theorem" || trace_mode == "both")
                run_mode(FrontierMode::kTheorem, "theorem");
            if (trace_mode == "corollary" || trace_mode == "both")
                run_mode(FrontierMode::kCorollary, "corollary");
            if (trace_mode != "theorem" && trace_mode != "corollary" && trace_mode != "both")
                throw ConfigError("--mode must be theorem, corollary or both");
            return 0;
        }

        if (verify->parsed()) {
            SplitMix64 rng(verify_seed);
            std::optional<ChannelSpec> fixed;
            if (!verify_random_channels) fixed = verify_ch.build();
            int failures = 0;
            for (int i = 0; i < verify_count; ++i) {
                ChannelSpec channel = fixed ? *fixed : random_channel222(rng);
                std::size_t v1 = channel.z1.size() == 3 ? 3 : 2;
                auto scheme = random_scheme(channel, rng, 2, 2, 2, v1, 2);
                // the negative control needs a nonempty region to tighten
                if (verify_perturb) scheme = constant_V_scheme(scheme);
                auto info = compute_info_terms(assemble_joint(channel, scheme));
                auto out = verify_fme_instance(
                    info, 100, 1000, verify_seed * 1000 + static_cast<std::uint64_t>(i),
                    verify_perturb ? std::optional<Rat>(Rat(-1, 4)) : std::nullopt);
                bool ok = out.report.equivalent;
                std::cout << "instance " << i << ": " << (ok ? "equivalent" : "NOT equivalent")
                          << " (" << out.report.points_checked << " points, "
                          << out.projected_rows << " projected rows)";
                if (!ok) {
                    std::cout << " counterexample (" << out.report.counterexample[0].get_str()
                              << ", " << out.report.counterexample[1].get_str() << ") in "
                              << (out.report.in_first ? "projection" : "transcription")
                              << " only";
                    ++failures;
                }
                std::cout << "\n";
            }
            if (verify_perturb) {
                std::cout << (failures == verify_count
                                  ? "perturbation detected in every instance"
                                  : "PERTURBATION MISSED in some instance")
                          << "\n";
                return failures == verify_count ? 0 : 1;
            }
            std::cout << (verify_count - failures) << "/" << verify_count << " equivalent\n";
            return failures == 0 ? 0 : 1;
        }

        if (sim->parsed()) {
            auto channel = sim_ch.build();
            auto scheme = sim_sc.build(channel, sim_ch);
            auto joint = assemble_joint(channel, scheme);
            auto d = channel.distortion_for(sim_user);
            auto cond = sim_extended ? extended_estimator_conditioning(sim_user)
                                     : default_estimator_conditioning(sim_user);
            auto est = optimal_estimator(joint, sim_user, d, cond);
            double analytic = expected_distortion(joint, est, d);
            auto batch = sample_joint(joint, sim_n, sim_seed);
            auto emp = empirical_distortion(joint, batch, est, d);
            std::cout << "analytic D" << sim_user << " = " << fmt(analytic) << "\n";
            std::cout << "empirical D" << sim_user << " = " << fmt(emp.mean) << " (SE "
                      << fmt(emp.standard_error) << ", n = " << emp.n << ", seed = " << sim_seed
                      << ")\n";
            std::cout << "|empirical - analytic| / SE = "
                      << fmt(emp.standard_error > 0
                                 ? std::fabs(emp.mean - analytic) / emp.standard_error
                                 : 0.0)
                      << "\n";
            return 0;
        }
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
