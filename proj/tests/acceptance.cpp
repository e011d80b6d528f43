// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// numbers and wall time. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qtr/cli.hpp"
#include "qtr/counterexample.hpp"
#include "qtr/fock.hpp"
#include "qtr/suites.hpp"

using namespace qtr;
using suites::CheckResult;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *title, double time_limit, const std::function<Outcome()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception &e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = time_limit <= 0.0 || secs < time_limit;
    const bool pass = out.pass && in_time;
    if (!pass)
        ++failures;
    std::printf("CRITERION %2d %s: %s | %s | %.1f s%s\n", id, title, pass ? "PASS" : "FAIL", out.detail.c_str(), secs,
                in_time ? "" : " (over time limit)");
    std::fflush(stdout);
}

double num(const CheckResult &r, const char *key) { return r.metrics.at(key).get<double>(); }

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string failed(const CheckResult &r)
{
    std::string s;
    for (const auto &f : r.failures)
        s += (s.empty() ? "" : ",") + f;
    return s.empty() ? "" : " failed=" + s;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main()
{
    const std::uint64_t seed = cli::kDefaultSeed;

    criterion(1, "representation", 30.0, [&] {
        std::mt19937_64 rng(seed);
        const auto cfg16 = make_config(1, 16);
        double oracle_err = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto z = suites::random_point_in_ball(1, 1.0, rng);
            const auto m = rho_matrix(z, cfg16).matrix();
            for (int j = 0; j < 16; ++j)
                for (int k = 0; k < 16; ++k)
                    oracle_err = std::max(oracle_err, std::abs(m(j, k) - oracle::matrix_element(j, k, z.x()[0], z.y()[0])));
        }
        const auto r = suites::representation_check(make_config(1, 64), 20, 1.0, seed);
        const double proj = num(r, "projective_max_dev"), iso = num(r, "column_isometry_max_dev");
        return Outcome{oracle_err < 1e-8 && proj < 1e-6 && iso < 1e-4 && r.pass(),
                       "oracle_max_err=" + fmt("%.3g", oracle_err) + " (<1e-8) projective=" + fmt("%.3g", proj) +
                           " (<1e-6) isometry=" + fmt("%.3g", iso) + " (<1e-4)" + failed(r)};
    });

    criterion(2, "inversion+plancherel", 60.0, [&] {
        const PhaseGrid grid(1, 12.0, 96);
        const auto inv = suites::inversion_check(grid, 64);
        const auto pl = suites::plancherel_check(grid, 64, 10, seed);
        std::string errs;
        for (const auto &row : inv.metrics.at("packets"))
            errs += fmt(" %.2g", row.at("error").get<double>()) + "->" + fmt("%.2g", row.at("error_doubled").get<double>());
        return Outcome{inv.pass() && pl.pass(), "round_trip(base->doubled):" + errs + " (<1e-4, halving) plancherel_spread=" +
                                                    fmt("%.3g", num(pl, "relative_spread")) + " (<1e-3) mean_ratio=" +
                                                    fmt("%.12g", num(pl, "mean_ratio")) + failed(inv) + failed(pl)};
    });

    criterion(3, "intertwining", 60.0, [&] {
        const auto r = suites::intertwining_check(make_config(1, 64), 10, 10, seed);
        return Outcome{r.pass(), "pairs=" + std::to_string(r.metrics.at("pairs").get<int>()) +
                                     " max_dev=" + fmt("%.3g", num(r, "max_deviation")) + " (<1e-5)"};
    });

    criterion(4, "independence", 60.0, [&] {
        const auto cfg = make_config(1, 64);
        const auto pairs = suites::pair_margin_check(cfg, {0.25, 0.5, 1.0, 2.0}, seed);
        const auto configs = suites::random_configuration_check(
            cfg, {suites::OperatorKind::ground_state, suites::OperatorKind::rank3, suites::OperatorKind::bump}, 5, seed);
        std::string mins;
        for (const auto &[name, fam] : configs.metrics.at("families").items())
            mins += " " + name + "=" + fmt("%.3g", fam.at("min_margin").get<double>());
        return Outcome{pairs.pass() && configs.pass(), "pair_max_err=" + fmt("%.3g", num(pairs, "max_error")) +
                                                           " (<1e-5) min_margins:" + mins + " (>1e-6)" + failed(pairs) +
                                                           failed(configs)};
    });

    const auto curve = trace_zero_component(4000);
    CheckResult ce;
    criterion(5, "difference equation", 300.0, [&] {
        ce = suites::counterexample_check(curve, 256, kCounterexamplePGrid, false);
        const auto &m = ce.metrics;
        const bool ok = num(ce, "residual_rel") < 5e-2 && num(ce, "residual_rel_half") < 5e-2 &&
                        num(ce, "residual_rel_full") < num(ce, "residual_rel_full_half") && num(ce, "norm_s2") > 0.1 &&
                        num(ce, "selfadjoint_defect") < 1e-10;
        return Outcome{ok && ce.pass(),
                       "block_residual N=256 " + fmt("%.3g", num(ce, "residual_rel")) + ", N=128 " +
                           fmt("%.3g", num(ce, "residual_rel_half")) + " (<5e-2); full_residual N=128 " +
                           fmt("%.4g", num(ce, "residual_rel_full_half")) + " -> N=256 " +
                           fmt("%.4g", num(ce, "residual_rel_full")) + " (decreasing); norm_s2=" +
                           fmt("%.4g", num(ce, "norm_s2")) + " (>0.1) selfadjoint=" +
                           fmt("%.3g", num(ce, "selfadjoint_defect")) + " (<1e-10)" +
                           (m.at("full_residual_decreases").get<bool>() ? "" : " full residual not decreasing") +
                           failed(ce)};
    });

    criterion(6, "singular-value decay", 0.0, [&] {
        const double e = num(ce, "decay_exponent");
        const auto &range = ce.metrics.at("decay_range");
        return Outcome{e >= -0.35 && e <= -0.15, "exponent=" + fmt("%.4f", e) + " +- " +
                                                     fmt("%.4f", num(ce, "decay_stderr")) + " over j in [" +
                                                     fmt("%g", range[0].get<double>()) + "," +
                                                     fmt("%g", range[1].get<double>()) + "] (in [-0.35,-0.15])"};
    });

    criterion(7, "stationary-phase decay", 60.0, [&] {
        const auto r = suites::fourier_decay_check(curve, suites::generic_rays());
        std::string ex;
        for (const auto &ray : r.metrics.at("rays"))
            ex += fmt(" %.4f", ray.at("exponent").get<double>());
        return Outcome{r.pass(), "exponents:" + ex + " (in [-0.65,-0.35])" + failed(r)};
    });

    criterion(8, "curvature", 10.0, [&] {
        const auto c = trace_zero_component(4000);
        const auto r = suites::curve_check(c);
        return Outcome{r.pass(), "kappa(1/4,0)-2pi=" + fmt("%.3g", num(r, "curvature_error")) +
                                     " (<1e-6) min|kappa|=" + fmt("%.6g", num(r, "min_abs_curvature")) + " (>1)" +
                                     failed(r)};
    });

    criterion(9, "compact-support ratio", 120.0, [&] {
        const auto r = suites::support_ratio_probe(64, 4.0, 20, seed);
        return Outcome{r.pass(), "S4/L4 ratio in [" + fmt("%.4g", num(r, "min_ratio")) + ", " +
                                     fmt("%.4g", num(r, "max_ratio")) + "] spread=" + fmt("%.4g", num(r, "spread")) +
                                     " (<50)"};
    });

    criterion(10, "determinism", 0.0, [&] {
        const auto base = std::filesystem::temp_directory_path() / "qtr_acceptance_determinism";
        std::filesystem::remove_all(base);
        std::ostringstream log;
        std::string bad;
        for (auto cmd : cli::all_commands()) {
            std::string text[2];
            for (int run = 0; run < 2; ++run) {
                cli::RunConfig cfg;
                cfg.command = cmd;
                cfg.out_dir = base / (run == 0 ? "a" : "b");
                cli::run(cfg, log);
                text[run] = slurp(cli::report_path(cfg));
            }
            if (text[0].empty() || text[0] != text[1])
                bad += " " + cli::command_name(cmd);
        }
        std::filesystem::remove_all(base);
        return Outcome{bad.empty(), bad.empty() ? "all 7 suites byte-identical" : "differs:" + bad};
    });

    std::printf("%s: %d criterion(s) failed\n", failures ? "ACCEPTANCE FAIL" : "ACCEPTANCE PASS", failures);
    return failures ? 1 : 0;
}
