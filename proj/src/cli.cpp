#include "vcramsey/cli.hpp"

#include <sstream>

#include "vcramsey/clique_search.hpp"
#include "vcramsey/coloring.hpp"
#include "vcramsey/errors.hpp"
#include "vcramsey/io.hpp"
#include "vcramsey/packing.hpp"
#include "vcramsey/ramsey_small.hpp"
#include "vcramsey/set_system.hpp"

namespace vcramsey {

using nlohmann::json;

namespace {

// Command result; a failed verification still carries its full report.
struct Outcome {
    Outcome(json r) : result(std::move(r)) {}
    Outcome(json r, std::string failure) : result(std::move(r)), integrity_failure(std::move(failure)) {}
    json result;
    std::optional<std::string> integrity_failure;
};

template <typename T>
json opt(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <typename T>
T require(const std::optional<T>& v, const char* flag)
{
    if (!v) throw ValidationError(std::string("missing required option ") + flag);
    return *v;
}

std::string require_path(const std::string& path, const char* what)
{
    if (path.empty()) throw ValidationError(std::string("missing ") + what);
    return path;
}

WorkBudget vc_budget(const RunConfig& c)
{
    WorkBudget b;
    if (c.work_budget) b.max_shatter_tests = *c.work_budget;
    return b;
}

CliqueBudget clique_budget(const RunConfig& c)
{
    CliqueBudget b;
    if (c.work_budget) b.max_nodes = *c.work_budget;
    return b;
}

std::vector<std::size_t> resolve_targets(const RunConfig& c, std::size_t m)
{
    if (!c.targets.empty()) {
        if (c.targets.size() != m)
            throw ValidationError("--targets needs " + std::to_string(m) + " values, one per color");
        return c.targets;
    }
    return std::vector<std::size_t>(m, c.k.value_or(3));
}

json cmd_analyze(const RunConfig& c)
{
    const std::string path = require_path(c.input, "input file");
    const bool both = !c.vc && !c.dual_vc;
    json r;
    SetSystem system;
    if (c.coloring_input) {
        const EdgeColoring col = load_coloring(path);
        r["n"] = col.n();
        r["m"] = col.m();
        system = neighborhood_family(col);
    } else {
        system = load_set_system(path);
    }
    r["ground_size"] = system.ground_size();
    r["family_size"] = system.size();
    if (c.vc || both) r["vc_dimension"] = vc_dimension(system, vc_budget(c));
    if (c.dual_vc || both) r["dual_vc_dimension"] = dual_vc_dimension(system, vc_budget(c));
    return r;
}

json cmd_construct(const RunConfig& c)
{
    if (!c.lower_bound) throw ValidationError("construct: only --lower-bound is available");
    const std::size_t m = require(c.m, "-m");
    const EdgeColoring col = lower_bound_coloring(m);
    json r{{"n", col.n()}, {"m", col.m()}};
    r["triangle_free"] = !find_monochromatic_clique_bruteforce(col, 3, std::nullopt, clique_budget(c)).has_value();
    if (!c.output.empty()) {
        save_coloring(c.output, col);
        const EdgeColoring back = load_coloring(c.output);
        r["output"] = c.output;
        r["round_trip"] = back == col;
        r["round_trip_triangle_free"] =
            !find_monochromatic_clique_bruteforce(back, 3, std::nullopt, clique_budget(c)).has_value();
        if (!(back == col)) throw IntegrityError("construct: file did not read back identically");
    } else {
        r["coloring"] = to_json(col);
    }
    return r;
}

json cmd_random(const RunConfig& c)
{
    const std::uint64_t seed = c.seed.value_or(0);
    const std::size_t n = require(c.n, "-n");
    json r{{"kind", c.kind}, {"seed", seed}};
    if (c.kind == "coloring") {
        const EdgeColoring col = random_coloring(n, require(c.m, "-m"), seed);
        r["n"] = col.n();
        r["m"] = col.m();
        if (!c.output.empty()) {
            save_coloring(c.output, col);
            r["output"] = c.output;
        } else {
            r["coloring"] = to_json(col);
        }
        return r;
    }
    const std::size_t members = require(c.members, "--members");
    SetSystem system;
    if (c.kind == "system") system = random_set_system(n, members, seed);
    else if (c.kind == "intervals") system = random_interval_system(n, members, seed);
    else throw ValidationError("random: unknown --kind '" + c.kind + "'");
    r["ground_size"] = system.ground_size();
    r["family_size"] = system.size();
    if (!c.output.empty()) {
        save_set_system(c.output, system);
        r["output"] = c.output;
    } else {
        r["system"] = to_json(system);
    }
    return r;
}

json cmd_pack(const RunConfig& c)
{
    const SetSystem system = load_set_system(require_path(c.input, "input file"));
    const Packing p = greedy_delta_packing(system, require(c.delta, "--delta"));
    json r{{"packing", to_json(p)}};
    if (c.d) r["haussler_bound"] = haussler_bound(*c.d, system.size(), p.delta);
    if (!c.output.empty()) save_json(c.output, to_json(p));
    return r;
}

Outcome cmd_partition(const RunConfig& c)
{
    const SetSystem system = load_set_system(require_path(c.input, "input file"));
    json r;
    int d = 0;
    if (c.d) {
        d = *c.d;
        r["d_source"] = "given";
    } else {
        d = std::max(1, dual_vc_dimension(system, vc_budget(c)));
        r["d_source"] = "exact_dual_vc";
    }
    const Partition p = partition(system, require(c.delta, "--delta"), d);
    const PartitionReport check = verify_partition(p, system);
    r["partition"] = to_json(p);
    r["verification"] = to_json(check);
    if (!c.output.empty()) save_json(c.output, to_json(p));
    if (!check.all_passed()) return Outcome(r, "partition: invariant check failed");
    return r;
}

json cmd_search(const RunConfig& c)
{
    const EdgeColoring col = load_coloring(require_path(c.input, "input file"));
    json r{{"method", c.method}};
    json cert = nullptr;
    if (c.method == "brute") {
        std::optional<Color> color;
        if (c.color) color = static_cast<Color>(*c.color);
        const auto found = find_monochromatic_clique_bruteforce(col, require(c.k, "-k"), color, clique_budget(c));
        r["found"] = found.has_value();
        if (found) {
            r["certificate"] = to_json(*found);
            r["verified"] = verify_clique(col, *found);
            cert = r["certificate"];
        }
    } else if (c.method == "descent") {
        const auto targets = resolve_targets(c, col.m());
        const DescentResult d = neighborhood_descent(col, targets, c.menu_bound.value_or(col.m()), clique_budget(c));
        r["targets"] = targets;
        r["descent"] = to_json(d);
        r["verified"] = verify_clique(col, d.certificate);
        cert = r["descent"]["certificate"];
    } else {
        throw ValidationError("search: unknown --method '" + c.method + "'");
    }
    if (!c.output.empty() && !cert.is_null()) save_json(c.output, cert);
    return r;
}

json cmd_trace(const RunConfig& c)
{
    auto col = std::make_shared<const EdgeColoring>(load_coloring(require_path(c.input, "input file")));
    if (c.budgets.empty()) throw ValidationError("trace: missing --budgets");
    json r;
    int d = 0;
    if (c.d) {
        d = *c.d;
        r["d_source"] = "given";
    } else {
        d = std::max(1, coloring_dual_vc(*col, vc_budget(c)));
        r["d_source"] = "exact_dual_vc";
    }
    const TraceReport t = pipeline_trace(col, d, resolve_targets(c, col->m()), c.budgets, clique_budget(c));
    r["trace"] = to_json(t);
    return r;
}

json cmd_ramsey(const RunConfig& c)
{
    RamseyOptions o;
    o.n_max = c.n_max.value_or(10);
    o.seed = c.seed.value_or(0);
    if (c.work_budget) o.node_budget = *c.work_budget;
    const RamseyResult res = ramsey_small(require(c.k, "-k"), require(c.m, "-m"), o);
    json r{{"seed", o.seed}, {"n_max", o.n_max}, {"ramsey", to_json(res)}};
    if (!c.output.empty() && res.witness) save_coloring(c.output, *res.witness);
    return r;
}

Outcome cmd_verify(const RunConfig& c)
{
    json checks = json::array();
    bool ok = true;
    if (!c.partition.empty()) {
        const SetSystem system = load_set_system(require_path(c.system, "--system file"));
        const Partition p = partition_from_json(load_json(c.partition));
        const PartitionReport rep = verify_partition(p, system);
        checks.push_back({{"check", "partition"}, {"passed", rep.all_passed()}, {"report", to_json(rep)}});
        ok = ok && rep.all_passed();
    }
    if (!c.certificate.empty() || c.no_clique) {
        const EdgeColoring col = load_coloring(require_path(c.input, "coloring file"));
        if (!c.certificate.empty()) {
            const CliqueCertificate cert = certificate_from_json(load_json(c.certificate));
            const bool passed = verify_clique(col, cert);
            checks.push_back({{"check", "certificate"}, {"passed", passed}, {"certificate", to_json(cert)}});
            ok = ok && passed;
        }
        if (c.no_clique) {
            const auto found = find_monochromatic_clique_bruteforce(col, *c.no_clique, std::nullopt, clique_budget(c));
            json entry{{"check", "no_monochromatic_clique"}, {"k", *c.no_clique}, {"passed", !found.has_value()}};
            if (found) entry["counterexample"] = to_json(*found);
            checks.push_back(entry);
            ok = ok && !found;
        }
    }
    if (checks.empty()) throw ValidationError("verify: nothing to check (use --certificate, --no-clique or --partition)");
    json r{{"checks", checks}, {"all_passed", ok}};
    if (!ok) return Outcome(r, "verify: at least one check failed");
    return r;
}

Outcome dispatch(const RunConfig& c)
{
    if (c.command == "analyze") return cmd_analyze(c);
    if (c.command == "construct") return cmd_construct(c);
    if (c.command == "random") return cmd_random(c);
    if (c.command == "pack") return cmd_pack(c);
    if (c.command == "partition") return cmd_partition(c);
    if (c.command == "search") return cmd_search(c);
    if (c.command == "trace") return cmd_trace(c);
    if (c.command == "ramsey-small") return cmd_ramsey(c);
    if (c.command == "verify") return cmd_verify(c);
    throw ValidationError("unknown command '" + c.command + "'");
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

}  // namespace

json echo_config(const RunConfig& c)
{
    return json{{"command", c.command},
                {"input", c.input},
                {"output", c.output},
                {"format", c.format},
                {"seed", opt(c.seed)},
                {"n", opt(c.n)},
                {"m", opt(c.m)},
                {"k", opt(c.k)},
                {"d", opt(c.d)},
                {"delta", opt(c.delta)},
                {"budgets", c.budgets},
                {"targets", c.targets},
                {"color", opt(c.color)},
                {"vc", c.vc},
                {"dual_vc", c.dual_vc},
                {"coloring_input", c.coloring_input},
                {"lower_bound", c.lower_bound},
                {"kind", c.kind},
                {"members", opt(c.members)},
                {"method", c.method},
                {"menu_bound", opt(c.menu_bound)},
                {"n_max", opt(c.n_max)},
                {"certificate", c.certificate},
                {"system", c.system},
                {"partition", c.partition},
                {"no_clique", opt(c.no_clique)},
                {"work_budget", opt(c.work_budget)}};
}

std::string format_report(const json& report, const std::string& format)
{
    if (format == "json") return report.dump(2) + "\n";
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::ostringstream out;
    if (format == "csv") {
        out << "key,value\n";
        for (const auto& [k, v] : rows) {
            const bool quote = v.find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                out << k << ',' << v << '\n';
                continue;
            }
            std::string escaped;
            for (char ch : v) escaped += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            out << k << ",\"" << escaped << "\"\n";
        }
    } else if (format == "text") {
        for (const auto& [k, v] : rows) out << k << ": " << v << '\n';
    } else {
        throw ValidationError("unknown output format '" + format + "'");
    }
    return out.str();
}

RunResult run(const RunConfig& config)
{
    RunResult result;
    json report{{"schema_version", kSchemaVersion}, {"version", kLibraryVersion}, {"config", echo_config(config)}};
    try {
        if (config.format != "json" && config.format != "csv" && config.format != "text")
            throw ValidationError("unknown output format '" + config.format + "'");
        Outcome out = dispatch(config);
        report["result"] = std::move(out.result);
        if (!out.integrity_failure) {
            report["status"] = "ok";
            result.report = format_report(report, config.format);
            return result;
        }
        result.exit_code = kExitIntegrity;
        report["status"] = "integrity_failure";
        result.error = *out.integrity_failure;
    } catch (const IntegrityError& e) {
        result.exit_code = kExitIntegrity;
        report["status"] = "integrity_failure";
        result.error = e.what();
    } catch (const ValidationError& e) {
        result.exit_code = kExitValidation;
        report["status"] = "validation_error";
        result.error = e.what();
    } catch (const BudgetExceeded& e) {
        result.exit_code = kExitBudget;
        report["status"] = "budget_exceeded";
        result.error = e.what();
    } catch (const std::exception& e) {
        result.exit_code = kExitInternal;
        report["status"] = "internal_error";
        result.error = e.what();
    }
    report["error"] = result.error;
    result.report = format_report(report, config.format == "csv" || config.format == "text" ? config.format : "json");
    return result;
}

}  // namespace vcramsey
