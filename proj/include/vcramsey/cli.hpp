#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vcramsey {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitValidation = 2,
    kExitBudget = 3,
    kExitIntegrity = 4,
};

/// Parameters for one command-line run. Unset optionals fall back to per-command defaults,
/// which are echoed in the report.
struct RunConfig {
    std::string command;  // analyze construct random pack partition search trace ramsey-small verify
    std::string input;
    std::string output;
    std::string format = "json";  // json | csv | text

    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::optional<std::size_t> k;
    std::optional<int> d;
    std::optional<std::size_t> delta;
    std::vector<double> budgets;
    std::vector<std::size_t> targets;
    std::optional<std::size_t> color;

    // analyze
    bool vc = false;
    bool dual_vc = false;
    bool coloring_input = false;
    // construct
    bool lower_bound = false;
    // random: coloring | system | intervals
    std::string kind = "coloring";
    std::optional<std::size_t> members;
    // search
    std::string method = "brute";  // brute | descent
    std::optional<std::size_t> menu_bound;
    // ramsey-small
    std::optional<std::size_t> n_max;
    // verify
    std::string certificate;
    std::string system;
    std::string partition;
    std::optional<std::size_t> no_clique;

    std::optional<std::uint64_t> work_budget;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string report;  // formatted for stdout
    std::string error;   // message for stderr when exit_code != 0
};

nlohmann::json echo_config(const RunConfig& config);

/// Dispatches one command. Never throws; failures map onto ExitCode values.
RunResult run(const RunConfig& config);

/// Renders a report as pretty JSON, "key: value" text lines, or "key,value" CSV rows.
/// Nested fields are flattened with '.' separators.
std::string format_report(const nlohmann::json& report, const std::string& format);

}  // namespace vcramsey
