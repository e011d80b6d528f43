// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: parses a command and its parameters, runs the matching
// verification suites and writes a JSON report plus CSV sidecars.
//
// Report layout: {command, params, pass, failures, metrics: {anchor: {...}}}.
// Exit status: 0 when every check passes, 1 when a check fails (the failing
// metrics are named on stderr), 2 for usage errors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qtr::cli {

enum class Command { repr_check, transform_check, intertwine_check, independence, counterexample, decay_fit, zero_scan };

std::string command_name(Command c);
/// Throws UsageError for unknown names.
Command parse_command(const std::string &name);
const std::vector<Command> &all_commands();

/// Invalid flags, values or config keys.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 20240521;

/// Unset optionals take the command's default (see resolved_* accessors).
struct RunConfig
{
    Command command = Command::repr_check;
    int n = 1;
    std::optional<int> levels;
    std::optional<double> side;
    std::optional<int> points_per_axis;
    std::optional<std::size_t> nodes;
    std::vector<double> p_list;
    std::uint64_t seed = kDefaultSeed;
    std::filesystem::path out_dir = ".";
    bool strict = false;
    std::string points_file;
    std::string operator_kind = "p0";
    bool dump = false;

    int resolved_levels() const;
    double resolved_side() const;
    int resolved_points_per_axis() const;
    std::size_t resolved_nodes() const;
    std::vector<double> resolved_p_list() const;

    /// Throws UsageError when a parameter is outside the module caps.
    void validate() const;
    /// Parameters that determine the report (the output directory is excluded).
    nlohmann::ordered_json params_json() const;
};

/// "2,4,inf" -> {2, 4, infinity}. Throws UsageError.
std::vector<double> parse_p_list(const std::string &text);

struct Report
{
    nlohmann::ordered_json document;
    bool pass = false;
    std::vector<std::string> failures;
    /// Sidecar files relative to the output directory.
    std::vector<std::pair<std::string, std::string>> files;
};

/// Runs the suites for `cfg.command`; writes nothing.
Report execute(const RunConfig &cfg);

/// execute() plus report and sidecar files under cfg.out_dir. Returns the exit status.
int run(const RunConfig &cfg, std::ostream &log);

/// Report path for a command inside `out_dir`.
std::filesystem::path report_path(const RunConfig &cfg);

/// Parses argv (flags override an optional key=value --config file). Throws
/// UsageError or CLI::ParseError; returns nullopt when --help was handled.
std::optional<RunConfig> parse_arguments(int argc, const char *const *argv, std::ostream &out);

/// Entry point of the command-line tool.
int main_entry(int argc, const char *const *argv);

} // namespace qtr::cli
