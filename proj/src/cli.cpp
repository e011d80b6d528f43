// SPDX-License-Identifier: Apache-2.0

#include "qtr/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "qtr/counterexample.hpp"
#include "qtr/fock.hpp"
#include "qtr/io.hpp"
#include "qtr/parallel.hpp"
#include "qtr/qtranslate.hpp"
#include "qtr/suites.hpp"
#include "qtr/transforms.hpp"

namespace qtr::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::pair<Command, std::string>> &command_table()
{
    static const std::vector<std::pair<Command, std::string>> table{
        {Command::repr_check, "repr-check"},         {Command::transform_check, "transform-check"},
        {Command::intertwine_check, "intertwine-check"}, {Command::independence, "independence"},
        {Command::counterexample, "counterexample"}, {Command::decay_fit, "decay-fit"},
        {Command::zero_scan, "zero-scan"}};
    return table;
}

// Keys accepted in a --config file; each maps to the flag of the same name.
const std::vector<std::string> kConfigKeys{"n", "N", "L", "M", "nodes", "p", "seed", "out", "strict", "points",
                                           "operator", "dump"};

std::string p_text(double p)
{
    if (std::isinf(p))
        return "inf";
    return io::format_double(p);
}

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool truthy(const std::string &v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw UsageError("expected a boolean, got '" + v + "'");
}

// key=value lines turned into flags; '#' starts a comment.
std::vector<std::string> config_arguments(const std::string &path, bool strict)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file " + path);
    std::vector<std::string> args;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
            if (strict)
                throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
            std::cerr << "warning: " << path << ":" << lineno << ": ignoring unknown key '" << key << "'\n";
            continue;
        }
        if (key == "strict" || key == "dump") {
            try {
                if (truthy(value))
                    args.push_back("--" + key);
            } catch (const UsageError &e) {
                throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

bool needs_single_coordinate(Command c)
{
    return c == Command::transform_check || c == Command::counterexample || c == Command::decay_fit ||
           c == Command::zero_scan;
}

} // namespace

std::string command_name(Command c)
{
    for (const auto &[cmd, name] : command_table())
        if (cmd == c)
            return name;
    return "?";
}

Command parse_command(const std::string &name)
{
    for (const auto &[cmd, n] : command_table())
        if (n == name)
            return cmd;
    throw UsageError("unknown command '" + name + "'");
}

const std::vector<Command> &all_commands()
{
    static const std::vector<Command> cmds = [] {
        std::vector<Command> v;
        for (const auto &entry : command_table())
            v.push_back(entry.first);
        return v;
    }();
    return cmds;
}

std::vector<double> parse_p_list(const std::string &text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        field = trim(field);
        double p = 0.0;
        if (field == "inf" || field == "infinity") {
            p = kInfinity;
        } else {
            std::size_t used = 0;
            try {
                p = std::stod(field, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != field.size())
                throw UsageError("--p: '" + field + "' is not a number");
        }
        if (!(p >= 1.0))
            throw UsageError("--p: Schatten exponents must be >= 1");
        out.push_back(p);
    }
    if (out.empty())
        throw UsageError("--p: empty list");
    return out;
}

int RunConfig::resolved_levels() const
{
    if (levels)
        return *levels;
    switch (command) {
    case Command::counterexample:
        return 128;
    case Command::decay_fit:
        return 256;
    default:
        // Per-n defaults; the Fock dimension N^n stays at most 4096.
        return std::array{64, 32, 16, 8}[static_cast<std::size_t>(std::clamp(n, 1, 4) - 1)];
    }
}

double RunConfig::resolved_side() const { return side.value_or(12.0); }

int RunConfig::resolved_points_per_axis() const { return points_per_axis.value_or(command == Command::zero_scan ? 64 : 96); }

std::size_t RunConfig::resolved_nodes() const
{
    if (nodes)
        return *nodes;
    return command == Command::decay_fit ? 4000 : 2000;
}

std::vector<double> RunConfig::resolved_p_list() const
{
    if (!p_list.empty())
        return p_list;
    if (command == Command::counterexample)
        return kCounterexamplePGrid;
    return {2.0, 4.0, kInfinity};
}

void RunConfig::validate() const
{
    if (n < 1 || n > 4)
        throw UsageError("--n must lie in [1, 4]");
    if (needs_single_coordinate(command) && n != 1)
        throw UsageError(command_name(command) + " supports --n 1 only");
    const int lv = resolved_levels();
    if (lv < 2)
        throw UsageError("--N must be >= 2");
    try {
        make_config(n, lv);
    } catch (const std::exception &e) {
        throw UsageError(std::string("--N: ") + e.what());
    }
    if ((command == Command::counterexample || command == Command::decay_fit) && lv < 64)
        throw UsageError("--N must be >= 64 for " + command_name(command));
    // Unit shifts and probes out to |w| = 2 are not resolved by fewer levels.
    if (command == Command::intertwine_check && lv < 32)
        throw UsageError("--N must be >= 32 for intertwine-check");
    if (!(resolved_side() > 0.0) || !std::isfinite(resolved_side()))
        throw UsageError("--L must be positive");
    const int m = resolved_points_per_axis();
    if (m < 8 || m % 2 != 0 || m > 2048)
        throw UsageError("--M must be even and lie in [8, 2048]");
    if (command == Command::transform_check) {
        try {
            PhaseGrid(1, resolved_side(), 2 * m);
        } catch (const std::exception &e) {
            throw UsageError(std::string("--M: ") + e.what());
        }
    }
    const auto nc = resolved_nodes();
    if (nc < kMinCurveNodes || nc > 1000000 || nc % 4 != 0)
        throw UsageError("--nodes must be a multiple of 4 in [64, 1000000]");
    for (double p : p_list)
        if (!(p >= 1.0))
            throw UsageError("--p: Schatten exponents must be >= 1");
    try {
        suites::parse_operator_kind(operator_kind);
    } catch (const std::exception &e) {
        throw UsageError(std::string("--operator: ") + e.what());
    }
    if (operator_kind == "bump" && n != 1)
        throw UsageError("--operator bump needs --n 1");
}

json RunConfig::params_json() const
{
    json p;
    p["n"] = n;
    p["N"] = resolved_levels();
    p["L"] = resolved_side();
    p["M"] = resolved_points_per_axis();
    p["nodes"] = resolved_nodes();
    json ps = json::array();
    for (double v : resolved_p_list())
        ps.push_back(p_text(v));
    p["p"] = ps;
    p["seed"] = seed;
    p["strict"] = strict;
    p["operator"] = operator_kind;
    p["points"] = points_file;
    return p;
}

Report execute(const RunConfig &cfg)
{
    cfg.validate();
    const WeylOptions weyl{cfg.strict ? BoundaryPolicy::strict : BoundaryPolicy::warn};
    const auto fock = make_config(cfg.n, cfg.resolved_levels());
    const int levels = cfg.resolved_levels();

    std::vector<std::pair<std::string, suites::CheckResult>> sections;
    switch (cfg.command) {
    case Command::repr_check:
        // Radius 1 at N = 64; smaller truncations sample proportionally closer to the origin.
        sections.emplace_back("eq1_representation",
                              suites::representation_check(fock, 8, std::min(1.0, levels / 64.0), cfg.seed));
        break;
    case Command::transform_check: {
        const PhaseGrid grid(1, cfg.resolved_side(), cfg.resolved_points_per_axis());
        const auto ps = cfg.resolved_p_list();
        sections.emplace_back("weyl_inversion", suites::inversion_check(grid, levels, weyl));
        sections.emplace_back("plancherel", suites::plancherel_check(grid, levels, 10, cfg.seed, weyl));
        sections.emplace_back("fourier_transforms", suites::fourier_check(grid));
        sections.emplace_back("weyl_covariance", suites::covariance_check(grid, levels, cfg.seed, weyl));
        sections.emplace_back("beta_boundedness", suites::beta_probe(grid, levels, ps, 20, cfg.seed));
        sections.emplace_back("thm21_support_ratio", suites::support_ratio_probe(levels, 4.0, 20, cfg.seed, weyl));
        break;
    }
    case Command::intertwine_check:
        sections.emplace_back("eq2_intertwining", suites::intertwining_check(fock, 10, 10, cfg.seed));
        sections.emplace_back("translation_algebra", suites::translation_algebra_check(fock, 5, cfg.seed));
        break;
    case Command::independence: {
        const auto kind = suites::parse_operator_kind(cfg.operator_kind);
        if (!cfg.points_file.empty()) {
            std::ifstream in(cfg.points_file);
            if (!in)
                throw UsageError("cannot open points file " + cfg.points_file);
            const auto pts = read_points_csv(in);
            for (const auto &p : pts)
                if (p.dim() != static_cast<std::size_t>(cfg.n))
                    throw UsageError("points file dimension does not match --n");
            sections.emplace_back("thm11_independence", suites::independence_check(fock, pts, kind, cfg.seed, weyl));
        } else {
            sections.emplace_back("thm11_pair_margins", suites::pair_margin_check(fock, {0.25, 0.5, 1.0, 2.0}, cfg.seed));
            std::vector<suites::OperatorKind> kinds{suites::OperatorKind::ground_state, suites::OperatorKind::rank3};
            if (cfg.n == 1)
                kinds.push_back(suites::OperatorKind::bump);
            sections.emplace_back("thm11_random_configurations",
                                  suites::random_configuration_check(fock, kinds, 4, cfg.seed, weyl));
        }
        break;
    }
    case Command::counterexample: {
        const auto curve = trace_zero_component(cfg.resolved_nodes());
        sections.emplace_back("s2_curve", suites::curve_check(curve));
        sections.emplace_back("eq4_residual",
                              suites::counterexample_check(curve, levels, cfg.resolved_p_list(), cfg.dump));
        break;
    }
    case Command::decay_fit: {
        const auto curve = trace_zero_component(cfg.resolved_nodes());
        sections.emplace_back("thm22_decay", suites::spectral_decay_check(curve, levels));
        sections.emplace_back("stationary_phase_decay", suites::fourier_decay_check(curve, suites::generic_rays()));
        break;
    }
    case Command::zero_scan:
        sections.emplace_back("zero_set_components", suites::zero_scan_check(cfg.resolved_points_per_axis()));
        break;
    }

    Report report;
    json metrics = json::object();
    for (auto &[anchor, result] : sections) {
        metrics[anchor] = result.metrics;
        for (const auto &f : result.failures)
            report.failures.push_back(anchor + "." + f);
        for (auto &file : result.files)
            report.files.emplace_back(command_name(cfg.command) + "_" + file.first, std::move(file.second));
    }
    report.pass = report.failures.empty();
    auto &doc = report.document;
    doc["command"] = command_name(cfg.command);
    doc["params"] = cfg.params_json();
    doc["pass"] = report.pass;
    doc["failures"] = report.failures;
    doc["metrics"] = std::move(metrics);
    return report;
}

std::filesystem::path report_path(const RunConfig &cfg) { return cfg.out_dir / (command_name(cfg.command) + ".json"); }

int run(const RunConfig &cfg, std::ostream &log)
{
    const auto report = execute(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    {
        std::ofstream os(report_path(cfg), std::ios::binary);
        io::write_json(os, report.document);
        os << '\n';
        if (!os)
            throw std::runtime_error("cannot write " + report_path(cfg).string());
    }
    for (const auto &[name, contents] : report.files) {
        std::ofstream os(cfg.out_dir / name, std::ios::binary);
        os << contents;
    }
    if (report.pass) {
        log << command_name(cfg.command) << ": PASS (" << report_path(cfg).string() << ")\n";
        return 0;
    }
    log << command_name(cfg.command) << ": FAIL";
    for (const auto &f : report.failures)
        log << ' ' << f;
    log << " (" << report_path(cfg).string() << ")\n";
    return 1;
}

std::optional<RunConfig> parse_arguments(int argc, const char *const *argv, std::ostream &out)
{
    // The config file supplies defaults; command-line flags come later and win.
    std::string config_path;
    bool strict_flag = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc)
            config_path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0)
            config_path = a.substr(9);
        else if (a == "--strict")
            strict_flag = true;
    }
    std::vector<std::string> args{argc > 0 ? argv[0] : "qtranslates"};
    if (!config_path.empty()) {
        const auto extra = config_arguments(config_path, strict_flag);
        args.insert(args.end(), extra.begin(), extra.end());
    }
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);

    CLI::App app{"Quantum translates: verification suites and the curve counterexample", "qtranslates"};
    std::string command;
    std::string commands_help;
    for (const auto &[cmd, name] : command_table())
        commands_help += (commands_help.empty() ? "" : ", ") + name;

    RunConfig cfg;
    int levels = 0, m = 0;
    double side = 0.0;
    std::size_t nodes = 0;
    std::string p_list, out_dir = ".", config_ignored;

    app.add_option("command", command, "One of: " + commands_help)->required();
    auto *o_n = app.add_option("--n", cfg.n, "Phase-space half dimension n");
    auto *o_levels = app.add_option("--N", levels, "Hermite levels per coordinate");
    auto *o_side = app.add_option("--L", side, "Grid side length");
    auto *o_m = app.add_option("--M", m, "Grid points per axis (zero-scan: scan resolution)");
    auto *o_nodes = app.add_option("--nodes", nodes, "Curve nodes");
    auto *o_p = app.add_option("--p", p_list, "Comma-separated Schatten exponents, 'inf' allowed");
    auto *o_seed = app.add_option("--seed", cfg.seed, "Seed of the random families");
    auto *o_out = app.add_option("--out", out_dir, "Output directory");
    auto *o_points = app.add_option("--points", cfg.points_file, "Points CSV for independence");
    auto *o_op = app.add_option("--operator", cfg.operator_kind, "Operator family: p0, rank3 or bump");
    app.add_option("--config", config_ignored, "key=value file; flags override it");
    app.add_flag("--strict", cfg.strict, "Boundary-mass warnings and unknown config keys become errors");
    app.add_flag("--dump", cfg.dump, "Write the counterexample operator");
    for (auto *o : {o_n, o_levels, o_side, o_m, o_nodes, o_p, o_seed, o_out, o_points, o_op})
        o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return std::nullopt;
    }

    cfg.command = parse_command(command);
    if (o_levels->count())
        cfg.levels = levels;
    if (o_side->count())
        cfg.side = side;
    if (o_m->count())
        cfg.points_per_axis = m;
    if (o_nodes->count())
        cfg.nodes = nodes;
    if (o_p->count())
        cfg.p_list = parse_p_list(p_list);
    cfg.out_dir = out_dir;
    cfg.validate();
    return cfg;
}

int main_entry(int argc, const char *const *argv)
{
    RunConfig cfg;
    try {
        configure_threads_from_env();
        auto parsed = parse_arguments(argc, argv, std::cout);
        if (!parsed)
            return 0;
        cfg = std::move(*parsed);
    } catch (const CLI::ParseError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    try {
        return run(cfg, std::cerr);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qtr::cli
