#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcramsey/set_system.hpp"

namespace vcramsey {

/// Number of members crossing a pair of ground points: members containing exactly one
/// of the two. Equals the Hamming distance between their incidence columns.
/// Throws ValidationError when u == v or either index is out of range.
std::size_t crossing_count(const SetSystem& system, Index u, Index v);

/// Precomputed incidence columns for repeated crossing queries on one system.
class CrossingMetric {
public:
    explicit CrossingMetric(const SetSystem& system);

    std::size_t ground_size() const { return columns_.size(); }
    std::size_t family_size() const { return family_size_; }

    /// Unchecked; distance(u, u) == 0.
    std::size_t distance(Index u, Index v) const { return columns_[u].hamming_distance(columns_[v]); }

private:
    std::vector<BitRow> columns_;
    std::size_t family_size_;
};

/// A δ-separated subset of the ground set: every pair is crossed by >= delta members.
struct Packing {
    std::size_t ground_size = 0;
    std::size_t family_size = 0;
    std::size_t delta = 0;
    IndexSet points;
    bool maximal = false;
};

/// Greedy maximal δ-separated set, scanning ground points in ascending order.
Packing greedy_delta_packing(const SetSystem& system, std::size_t delta);

/// Packing constant e(d+1)(2e)^d from Haussler's packing bound.
double packing_constant(int d);
/// Part-count constant, twice the packing constant.
double part_count_constant(int d);

/// c_1(d) * (family_size / delta)^d.
double haussler_bound(int d, std::size_t family_size, std::size_t delta);

struct Partition {
    std::size_t ground_size = 0;
    std::size_t family_size = 0;
    std::vector<IndexSet> parts;
    std::size_t delta = 0;
    int d = 0;
    double c1 = 0;
    double c2 = 0;
    /// floor(2n / (c1 (|F|/δ)^d)). Zero means the cap is vacuous and parts were cut to singletons.
    std::uint64_t size_cap = 0;

    std::size_t part_count() const { return parts.size(); }
    /// c2 * (|F|/δ)^d
    double part_count_bound() const;
};

/// Partition of the ground set into parts whose internal pairs are crossed by at
/// most 2δ members. Built from a greedy maximal δ-separated set X: each point joins
/// the part of the first x_i within crossing distance δ, then oversized parts are
/// cut into consecutive chunks of size_cap.
///
/// `d` is the caller's claimed dual VC-dimension and is not re-checked here; the
/// part-count bound only holds when it is a true upper bound.
/// Throws ValidationError unless 1 <= delta <= |F| and d >= 1.
Partition partition(const SetSystem& system, std::size_t delta, int d);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
    std::optional<std::pair<Index, Index>> witness;
};

struct PartitionReport {
    std::vector<CheckResult> checks;  // coverage, disjointness, crossing, part_count, size_cap
    std::size_t max_same_part_crossing = 0;

    bool all_passed() const;
    const CheckResult& check(const std::string& name) const;
};

/// Exhaustive check of every partition invariant. Throws ValidationError if the
/// partition was built for a different ground or family size, or names a point
/// outside the ground set.
PartitionReport verify_partition(const Partition& partition, const SetSystem& system);

}  // namespace vcramsey
