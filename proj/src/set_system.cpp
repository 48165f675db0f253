#include "vcramsey/set_system.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>

#include "vcramsey/errors.hpp"

namespace vcramsey {

SetSystem::SetSystem(std::size_t ground_size, std::vector<BitRow> members, std::vector<std::string> labels)
    : ground_size_(ground_size), members_(std::move(members)), labels_(std::move(labels))
{
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].size() != ground_size_)
            throw ValidationError("member " + std::to_string(i) + " has " + std::to_string(members_[i].size()) +
                                  " positions, expected " + std::to_string(ground_size_));
    }
    if (!labels_.empty() && labels_.size() != members_.size())
        throw ValidationError("label count " + std::to_string(labels_.size()) + " does not match member count " +
                              std::to_string(members_.size()));
}

std::vector<BitRow> SetSystem::columns() const
{
    std::vector<BitRow> cols(ground_size_, BitRow(members_.size()));
    for (std::size_t i = 0; i < members_.size(); ++i)
        members_[i].for_each([&](std::size_t v) { cols[v].set(i); });
    return cols;
}

SetSystem make_set_system(std::size_t ground_size, const std::vector<IndexSet>& members, std::vector<std::string> labels)
{
    std::vector<BitRow> rows;
    rows.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        BitRow row(ground_size);
        for (Index v : members[i]) {
            if (v >= ground_size)
                throw ValidationError("member " + std::to_string(i) + " contains index " + std::to_string(v) +
                                      " outside ground set of size " + std::to_string(ground_size));
            row.set(v);
        }
        rows.push_back(std::move(row));
    }
    return SetSystem(ground_size, std::move(rows), std::move(labels));
}

bool ShatterWitness::shattered() const
{
    if (subset.size() >= 64) return false;  // would need more than 2^63 distinct traces
    return realized_traces.size() == (std::uint64_t{1} << subset.size());
}

namespace {

IndexSet normalized_subset(const SetSystem& system, const IndexSet& subset)
{
    IndexSet s = subset;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= system.ground_size())
        throw ValidationError("subset index " + std::to_string(s.back()) + " outside ground set of size " +
                              std::to_string(system.ground_size()));
    return s;
}

// True iff every one of the 2^depth sign patterns over `cols` leaves a nonempty
// intersection. scratch[l] holds the running intersection at depth l.
bool all_patterns_realized(const std::vector<const BitRow*>& cols, std::vector<BitRow>& scratch, std::size_t level)
{
    if (level == cols.size()) return true;
    BitRow& next = scratch[level + 1];
    next = scratch[level];
    next &= *cols[level];
    if (next.none() || !all_patterns_realized(cols, scratch, level + 1)) return false;
    next = scratch[level];
    next.subtract(*cols[level]);
    if (next.none()) return false;
    return all_patterns_realized(cols, scratch, level + 1);
}

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Index v : s) h = (h ^ v) * 0x100000001b3ull;
        return h;
    }
};

}  // namespace

ShatterWitness trace(const SetSystem& system, const IndexSet& subset)
{
    ShatterWitness w;
    w.subset = normalized_subset(system, subset);
    std::set<IndexSet> seen;
    for (const BitRow& member : system.members()) {
        IndexSet t;
        for (Index v : w.subset)
            if (member.test(v)) t.push_back(v);
        seen.insert(std::move(t));
    }
    w.realized_traces.assign(seen.begin(), seen.end());
    return w;
}

bool is_shattered(const SetSystem& system, const IndexSet& subset)
{
    return trace(system, subset).shattered();
}

SetSystem deduplicated(const SetSystem& system)
{
    std::set<BitRow> seen;
    std::vector<BitRow> rows;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (!seen.insert(system.member(i)).second) continue;
        rows.push_back(system.member(i));
        if (system.has_labels()) labels.push_back(system.labels()[i]);
    }
    return SetSystem(system.ground_size(), std::move(rows), std::move(labels));
}

int vc_dimension(const SetSystem& system, WorkBudget budget)
{
    if (system.empty()) return -1;

    const SetSystem distinct = deduplicated(system);
    const std::size_t k = distinct.size();
    const std::size_t n = distinct.ground_size();
    // 2^d distinct traces need at least 2^d distinct members.
    const std::size_t max_d = std::min<std::size_t>(n, static_cast<std::size_t>(std::bit_width(k) - 1));

    const std::vector<BitRow> cols = distinct.columns();
    std::vector<BitRow> scratch;
    std::vector<const BitRow*> picked;
    std::uint64_t tests = 0;

    std::vector<IndexSet> level{IndexSet{}};  // ∅ is shattered by any nonempty family
    int d = 0;
    for (std::size_t s = 0; s < max_d; ++s) {
        std::unordered_set<IndexSet, IndexSetHash> lookup(level.begin(), level.end());
        std::vector<IndexSet> next;
        scratch.assign(s + 2, BitRow::full(k));
        for (const IndexSet& base : level) {
            const Index start = base.empty() ? 0 : base.back() + 1;
            for (Index x = start; x < n; ++x) {
                IndexSet cand = base;
                cand.push_back(x);
                bool faces_ok = true;
                for (std::size_t drop = 0; drop + 1 < cand.size() && faces_ok; ++drop) {
                    IndexSet face;
                    face.reserve(s);
                    for (std::size_t j = 0; j < cand.size(); ++j)
                        if (j != drop) face.push_back(cand[j]);
                    faces_ok = lookup.count(face) != 0;
                }
                if (!faces_ok) continue;
                if (++tests > budget.max_shatter_tests)
                    throw BudgetExceeded("vc_dimension: more than " + std::to_string(budget.max_shatter_tests) +
                                         " shattering tests required");
                picked.clear();
                for (Index v : cand) picked.push_back(&cols[v]);
                if (all_patterns_realized(picked, scratch, 0)) next.push_back(std::move(cand));
            }
        }
        if (next.empty()) break;
        d = static_cast<int>(s + 1);
        level = std::move(next);
    }
    return d;
}

SetSystem dual(const SetSystem& system)
{
    return SetSystem(system.size(), system.columns());
}

int dual_vc_dimension(const SetSystem& system, WorkBudget budget)
{
    return vc_dimension(dual(system), budget);
}

std::uint64_t sauer_shelah_bound(std::size_t s, int d)
{
    if (d < 0) return 0;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(s, 0)
    for (std::size_t i = 0; i <= static_cast<std::size_t>(d) && i <= s; ++i) {
        if (i > 0) {
            // C(s, i) = C(s, i-1) * (s - i + 1) / i, exact at every step
            unsigned __int128 next = static_cast<unsigned __int128>(binom) * (s - i + 1) / i;
            if (next > kMax) return kMax;
            binom = static_cast<std::uint64_t>(next);
        }
        if (total > kMax - binom) return kMax;
        total += binom;
    }
    return total;
}

}  // namespace vcramsey

#include <random>

namespace vcramsey {

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

}  // namespace

SetSystem random_set_system(std::size_t ground_size, std::size_t members, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<BitRow> rows(members, BitRow(ground_size));
    for (BitRow& row : rows)
        for (std::size_t v = 0; v < ground_size; ++v)
            if (rng() & 1u) row.set(v);
    return SetSystem(ground_size, std::move(rows));
}

SetSystem random_interval_system(std::size_t ground_size, std::size_t members, std::uint64_t seed)
{
    if (ground_size == 0 && members > 0) throw ValidationError("random_interval_system: empty ground set");
    std::mt19937_64 rng(seed);
    std::vector<BitRow> rows(members, BitRow(ground_size));
    for (BitRow& row : rows) {
        std::uint64_t a = uniform_below(rng, ground_size);
        std::uint64_t b = uniform_below(rng, ground_size);
        if (a > b) std::swap(a, b);
        for (std::uint64_t v = a; v <= b; ++v) row.set(v);
    }
    return SetSystem(ground_size, std::move(rows));
}

}  // namespace vcramsey
