#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vcramsey/bitset.hpp"

namespace vcramsey {

using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// An indexed family of subsets of {0, ..., ground_size-1}, stored as incidence rows.
///
/// Members are indexed rather than deduplicated: two members may hold the same
/// bit-vector and still count separately (crossing counts depend on this).
/// Labels are optional opaque tags, either empty or one per member.
class SetSystem {
public:
    SetSystem() = default;
    SetSystem(std::size_t ground_size, std::vector<BitRow> members, std::vector<std::string> labels = {});

    std::size_t ground_size() const { return ground_size_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    const BitRow& member(std::size_t i) const { return members_[i]; }
    const std::vector<BitRow>& members() const { return members_; }
    bool contains(std::size_t member_index, Index point) const { return members_[member_index].test(point); }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Incidence columns: one row per ground point, over the member indices.
    std::vector<BitRow> columns() const;

    friend bool operator==(const SetSystem&, const SetSystem&) = default;

private:
    std::size_t ground_size_ = 0;
    std::vector<BitRow> members_;
    std::vector<std::string> labels_;
};

/// Builds a system from index lists. Throws ValidationError naming the first
/// member holding an index >= ground_size.
SetSystem make_set_system(std::size_t ground_size, const std::vector<IndexSet>& members,
                          std::vector<std::string> labels = {});

/// Distinct traces {A ∩ S : A ∈ F} of the family on a subset S.
struct ShatterWitness {
    IndexSet subset;                       // sorted, no repeats
    std::vector<IndexSet> realized_traces; // sorted lexicographically

    bool shattered() const;
};

ShatterWitness trace(const SetSystem& system, const IndexSet& subset);
bool is_shattered(const SetSystem& system, const IndexSet& subset);

/// Cap on the number of shattering tests an exact VC computation may run.
struct WorkBudget {
    std::uint64_t max_shatter_tests = std::uint64_t{1} << 24;
};

/// Largest d such that some d-subset of the ground set is shattered; -1 for the
/// empty family. Throws BudgetExceeded instead of returning a partial answer.
///
/// Shattered sets are closed under taking subsets, so the search grows candidates
/// level by level from shattered sets only and stops at the first empty level.
/// Sizes above log2(#distinct members) are never tried.
int vc_dimension(const SetSystem& system, WorkBudget budget = {});

/// Transposed system: ground set = member indices, one member per original point.
SetSystem dual(const SetSystem& system);

int dual_vc_dimension(const SetSystem& system, WorkBudget budget = {});

/// Drops repeated members, keeping the first occurrence (and its label).
SetSystem deduplicated(const SetSystem& system);

/// Σ_{i<=d} C(s, i), saturating at UINT64_MAX. Zero when d < 0.
std::uint64_t sauer_shelah_bound(std::size_t s, int d);

}  // namespace vcramsey

namespace vcramsey {

/// Each incidence independently present with probability 1/2 (one mt19937_64 bit per entry).
SetSystem random_set_system(std::size_t ground_size, std::size_t members, std::uint64_t seed);

/// Members are random intervals [a, b] of the points 0..ground_size-1. Dual VC-dimension <= 2:
/// k intervals cut a line into at most 2k+1 cells, fewer than 2^k once k >= 3.
SetSystem random_interval_system(std::size_t ground_size, std::size_t members, std::uint64_t seed);

}  // namespace vcramsey
