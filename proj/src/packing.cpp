#include "vcramsey/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vcramsey/errors.hpp"

namespace vcramsey {

std::size_t crossing_count(const SetSystem& system, Index u, Index v)
{
    if (u >= system.ground_size() || v >= system.ground_size())
        throw ValidationError("crossing_count: point outside ground set of size " +
                              std::to_string(system.ground_size()));
    if (u == v) throw ValidationError("crossing_count: pair needs two distinct points");
    std::size_t c = 0;
    for (const BitRow& member : system.members())
        c += member.test(u) != member.test(v);
    return c;
}

CrossingMetric::CrossingMetric(const SetSystem& system) : columns_(system.columns()), family_size_(system.size()) {}

namespace {

Packing greedy_packing(const CrossingMetric& metric, std::size_t delta)
{
    Packing p;
    p.ground_size = metric.ground_size();
    p.family_size = metric.family_size();
    p.delta = delta;
    for (Index v = 0; v < metric.ground_size(); ++v) {
        bool separated = std::all_of(p.points.begin(), p.points.end(),
                                     [&](Index x) { return metric.distance(v, x) >= delta; });
        if (separated) p.points.push_back(v);
    }
    p.maximal = true;
    return p;
}

}  // namespace

Packing greedy_delta_packing(const SetSystem& system, std::size_t delta)
{
    if (delta < 1) throw ValidationError("greedy_delta_packing: delta must be >= 1");
    return greedy_packing(CrossingMetric(system), delta);
}

double packing_constant(int d)
{
    using std::numbers::e;
    return e * (d + 1) * std::pow(2 * e, d);
}

double part_count_constant(int d) { return 2 * packing_constant(d); }

double haussler_bound(int d, std::size_t family_size, std::size_t delta)
{
    if (d < 1) throw ValidationError("haussler_bound: d must be >= 1");
    if (delta < 1) throw ValidationError("haussler_bound: delta must be >= 1");
    return packing_constant(d) * std::pow(static_cast<double>(family_size) / static_cast<double>(delta), d);
}

double Partition::part_count_bound() const
{
    return c2 * std::pow(static_cast<double>(family_size) / static_cast<double>(delta), d);
}

Partition partition(const SetSystem& system, std::size_t delta, int d)
{
    if (d < 1) throw ValidationError("partition: d must be >= 1");
    if (delta < 1 || delta > system.size())
        throw ValidationError("partition: delta " + std::to_string(delta) + " outside [1, " +
                              std::to_string(system.size()) + "]");

    const CrossingMetric metric(system);
    const Packing packing = greedy_packing(metric, delta);

    Partition result;
    result.ground_size = system.ground_size();
    result.family_size = system.size();
    result.delta = delta;
    result.d = d;
    result.c1 = packing_constant(d);
    result.c2 = part_count_constant(d);
    const double bound = haussler_bound(d, system.size(), delta);
    result.size_cap = static_cast<std::uint64_t>(std::floor(2.0 * static_cast<double>(system.ground_size()) / bound));

    std::vector<IndexSet> assigned(packing.points.size());
    for (Index v = 0; v < system.ground_size(); ++v) {
        std::size_t i = 0;
        while (i < packing.points.size() && metric.distance(v, packing.points[i]) > delta) ++i;
        // maximality guarantees some x_i within distance δ (possibly v itself)
        assigned[i].push_back(v);
    }

    const std::size_t chunk = std::max<std::uint64_t>(result.size_cap, 1);
    for (const IndexSet& part : assigned) {
        for (std::size_t begin = 0; begin < part.size(); begin += chunk) {
            const std::size_t end = std::min(part.size(), begin + chunk);
            result.parts.emplace_back(part.begin() + static_cast<std::ptrdiff_t>(begin),
                                      part.begin() + static_cast<std::ptrdiff_t>(end));
        }
    }
    return result;
}

bool PartitionReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& PartitionReport::check(const std::string& name) const
{
    for (const CheckResult& c : checks)
        if (c.name == name) return c;
    throw ValidationError("no partition check named " + name);
}

PartitionReport verify_partition(const Partition& p, const SetSystem& system)
{
    if (p.ground_size != system.ground_size() || p.family_size != system.size())
        throw ValidationError("verify_partition: partition built for ground " + std::to_string(p.ground_size) +
                              " / family " + std::to_string(p.family_size) + ", system has " +
                              std::to_string(system.ground_size()) + " / " + std::to_string(system.size()));

    const std::size_t n = system.ground_size();
    std::vector<std::size_t> owner(n, SIZE_MAX);
    PartitionReport report;

    CheckResult disjoint{"disjointness", true, "", std::nullopt};
    for (std::size_t t = 0; t < p.parts.size(); ++t) {
        for (Index v : p.parts[t]) {
            if (v >= n) throw ValidationError("verify_partition: part " + std::to_string(t) + " names point " +
                                              std::to_string(v) + " outside the ground set");
            if (owner[v] != SIZE_MAX && disjoint.passed) {
                disjoint.passed = false;
                disjoint.detail = "point " + std::to_string(v) + " in parts " + std::to_string(owner[v]) + " and " +
                                  std::to_string(t);
                disjoint.witness = std::make_pair(v, v);
            }
            owner[v] = t;
        }
    }

    CheckResult coverage{"coverage", true, "", std::nullopt};
    for (Index v = 0; v < n; ++v) {
        if (owner[v] == SIZE_MAX) {
            coverage.passed = false;
            coverage.detail = "point " + std::to_string(v) + " is in no part";
            coverage.witness = std::make_pair(v, v);
            break;
        }
    }

    const CrossingMetric metric(system);
    CheckResult crossing{"crossing", true, "", std::nullopt};
    std::size_t worst = 0;
    std::optional<std::pair<Index, Index>> worst_pair;
    for (const IndexSet& part : p.parts) {
        for (std::size_t a = 0; a < part.size(); ++a) {
            for (std::size_t b = a + 1; b < part.size(); ++b) {
                if (part[a] == part[b]) continue;
                const std::size_t c = metric.distance(part[a], part[b]);
                if (!worst_pair || c > worst) {
                    worst = c;
                    worst_pair = std::make_pair(part[a], part[b]);
                }
            }
        }
    }
    report.max_same_part_crossing = worst;
    crossing.passed = worst <= 2 * p.delta;
    crossing.detail = "max same-part crossing " + std::to_string(worst) + " vs limit " + std::to_string(2 * p.delta);
    if (!crossing.passed) crossing.witness = worst_pair;

    CheckResult count{"part_count", true, "", std::nullopt};
    const double bound = p.part_count_bound();
    count.passed = static_cast<double>(p.parts.size()) <= bound;
    count.detail = std::to_string(p.parts.size()) + " parts vs bound " + std::to_string(bound);

    CheckResult cap{"size_cap", true, "", std::nullopt};
    if (p.size_cap >= 1) {
        for (std::size_t t = 0; t < p.parts.size(); ++t) {
            if (p.parts[t].size() > p.size_cap) {
                cap.passed = false;
                cap.detail = "part " + std::to_string(t) + " has " + std::to_string(p.parts[t].size()) +
                             " points, cap " + std::to_string(p.size_cap);
                break;
            }
        }
        if (cap.passed) cap.detail = "cap " + std::to_string(p.size_cap);
    } else {
        cap.detail = "cap below 1, vacuous";
    }

    report.checks = {coverage, disjoint, crossing, count, cap};
    return report;
}

}  // namespace vcramsey
