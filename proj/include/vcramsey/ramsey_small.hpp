#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "vcramsey/coloring.hpp"

namespace vcramsey {

struct RamseyOptions {
    std::size_t n_max = 16;
    std::uint64_t node_budget = std::uint64_t{1} << 26;  // backtracking nodes per vertex count
    std::uint64_t seed = 0;                              // local-search witness hunt
    std::uint64_t local_search_steps = std::uint64_t{1} << 20;
    std::uint64_t exhaustive_limit = std::uint64_t{1} << 24;  // max colorings for the confirmation pass
};

struct RamseyResult {
    std::size_t k = 0;
    std::size_t m = 0;
    std::optional<std::size_t> value;  // exact r(k;m) when decided
    std::size_t lower_bound = 0;       // r(k;m) >= lower_bound, certified by `witness`
    std::optional<EdgeColoring> witness;  // K_{lower_bound-1} without a monochromatic K_k
    std::string witness_method;        // trivial | backtracking | local_search
    std::optional<std::size_t> undecided_at;  // first n neither refuted nor witnessed
    bool exhaustive_confirmed = false;  // every coloring of K_value enumerated and checked
    std::uint64_t colorings_checked = 0;
    std::uint64_t nodes = 0;
};

/// Searches n = 1, 2, ... n_max for the least n at which every m-coloring of K_n has a
/// monochromatic K_k. Each n is decided by backtracking over edges (vertex by vertex)
/// with vertex 0's row forced into sorted canonical form and the first color fixed.
/// When backtracking runs out of budget, a seeded local search (k = 3 only) looks for a
/// witness; failing that the result is a bracket [lower_bound, undecided_at].
/// n_max is limited to 64.
RamseyResult ramsey_small(std::size_t k, std::size_t m, const RamseyOptions& options = {});

/// Number of m-colorings of K_n with no monochromatic K_k, by plain enumeration of all
/// m^C(n,2) colorings. Throws BudgetExceeded if that count exceeds `limit`.
std::uint64_t count_clique_free_colorings(std::size_t k, std::size_t m, std::size_t n, std::uint64_t limit,
                                          std::uint64_t* enumerated = nullptr);

}  // namespace vcramsey
