#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "vcramsey/coloring.hpp"
#include "vcramsey/packing.hpp"
#include "vcramsey/set_system.hpp"

namespace vcramsey {

/// One level of the covering construction: surviving vertices V_j, a color menu Q_v
/// per vertex, and the edges B_j not covered by the family
/// F_j = {N_q(v) ∩ V_j : v ∈ V_j, q ∈ Q_v}.
///
/// `budget` plays the role of the iterated logarithm at this level; every threshold
/// that would depend on it is computed from this number instead.
struct PipelineState {
    std::shared_ptr<const EdgeColoring> coloring;
    std::size_t level = 0;
    BitRow active;              // over vertices
    std::vector<BitRow> menus;  // menus[v] over colors; empty for inactive v
    BitRow uncovered;           // over edge indices of the coloring
    double budget = 0;
    std::vector<std::size_t> k_targets;  // one clique size per color

    std::size_t n() const { return coloring->n(); }
    std::size_t m() const { return coloring->m(); }
    std::size_t s() const;
    std::size_t family_size() const;
    std::size_t max_menu() const;
    IndexSet active_vertices() const { return active.indices(); }

    /// Edge uv is covered iff both endpoints are active and χ(uv) is on both menus.
    bool covers(std::size_t u, std::size_t v) const;
};

/// Level-0 state: every vertex active with the full menu, nothing uncovered.
PipelineState initial_state(std::shared_ptr<const EdgeColoring> coloring, std::vector<std::size_t> k_targets,
                            double budget);

/// F_j as a set system over the compacted ground set V_j (ascending vertex order).
/// Members are ordered by vertex then color, labelled "v:q".
SetSystem active_family(const PipelineState& state);

/// B_j recomputed from the covering definition.
BitRow recompute_uncovered(const PipelineState& state);

struct CoverageReport {
    std::size_t total_edges = 0;
    std::size_t uncovered = 0;
    std::size_t covered() const { return total_edges - uncovered; }
};

/// Recomputes B_j and compares it with state.uncovered. Throws IntegrityError naming
/// the first disagreeing edge.
CoverageReport covered_edges(const PipelineState& state);

/// Q_t and Q'_t for one part.
struct PartMenus {
    IndexSet part;        // vertex ids
    BitRow degree_colors; // Q_t: some v in the part has >= n/budget^2 covered q-edges into V_j
    BitRow clique_colors; // Q'_t: the part contains a q-monochromatic K_{k_q - 1}
    std::vector<Color> undecided;  // clique search ran out of budget for these colors
    std::vector<std::optional<CliqueCertificate>> clique_witnesses;  // per color, for Q'_t
};

/// Number of u in V_j with χ(uv) = q and uv covered.
std::size_t covered_color_degree(const PipelineState& state, std::size_t v, Color q);

/// Q_t and Q'_t for every part (parts given as vertex ids within V_j). Clique searches
/// that exceed `budget` leave the color undecided instead of guessing.
std::vector<PartMenus> color_menus(const PipelineState& state, const std::vector<IndexSet>& parts,
                                   CliqueBudget budget = {});

struct ExtensionResult {
    std::optional<CliqueCertificate> certificate;
    std::size_t target_size = 0;  // |base| + 1
    std::size_t candidates = 0;   // |U|
    std::size_t base_in_candidates = 0;
    std::size_t missing_base = 0;  // candidates whose F_j neighborhood misses part of the base
    std::size_t delta = 0;
    /// The counting argument guarantees an extension when |U| - k > 2 k δ.
    bool guaranteed = false;
};

/// Looks for u ∈ U whose color neighborhood in F_j contains the whole base clique, so that
/// base ∪ {u} is monochromatic. Scans U in the given order and returns the first hit,
/// along with the counts behind the existence argument.
///
/// Throws ValidationError if the base is not a monochromatic clique on active vertices,
/// or if some u ∈ U is not joined to the pivot by a covered edge of the base color.
ExtensionResult clique_extension(const PipelineState& state, const CliqueCertificate& base, std::size_t pivot,
                                 const IndexSet& candidates, std::size_t delta);

struct DescentResult {
    CliqueCertificate certificate;   // best clique found
    std::size_t target = 0;          // k of the certificate's color
    std::vector<std::size_t> achieved;  // per color: largest monochromatic clique found, capped at k
    bool success = false;            // some color reached its target
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
};

/// Monochromatic clique finder that descends into color neighborhoods: choose a pivot v
/// and color q, keep v as part of a q-clique and continue inside N_q(v). Pivots are tried
/// in order of largest single-color degree (lowest index on ties); each vertex offers its
/// `menu_bound` best colors. With menu_bound >= m the search is exhaustive.
///
/// Stops at the first color to reach its target. When the budget runs out the best
/// clique so far is returned with budget_exhausted set.
DescentResult neighborhood_descent(const EdgeColoring& coloring, const std::vector<std::size_t>& k_targets,
                                   std::size_t menu_bound, CliqueBudget budget = {});

enum class UncoveredType : std::uint8_t {
    none = 0,          // edge covered
    carried = 1,       // already in B_j
    small_part = 2,    // an endpoint sits in a discarded small part
    same_part = 3,     // both endpoints in one part
    pruned_color = 4,  // χ(uv) dropped from an endpoint's menu
    unexplained = 5,   // matches no case; never expected
};

const char* to_string(UncoveredType t);

struct LevelSummary {
    std::size_t level = 0;
    double budget = 0;
    std::size_t family_size = 0;
    std::size_t active = 0;
    std::size_t uncovered = 0;
    std::size_t max_menu = 0;
    // the three level properties with budget-substituted right-hand sides
    bool menu_ok = true;
    bool active_ok = true;
    bool covered_ok = true;
    double active_rhs = 0;
    double covered_rhs = 0;
};

struct PartSummary {
    std::size_t size = 0;
    bool small = false;
    std::size_t degree_colors = 0;
    std::size_t clique_colors = 0;
    std::size_t undecided = 0;
    bool menu_overflow = false;  // large part with |Q_t| >= next budget
};

struct StepReport {
    std::size_t from_level = 0;
    double delta_exact = 0;  // |F_j| / budget^4
    std::size_t delta = 0;   // clamped to [1, |F_j|]
    int d = 0;
    std::uint64_t size_cap = 0;
    double small_threshold = 0;   // n / budget^(6d)
    double degree_threshold = 0;  // n / budget^2
    std::vector<IndexSet> parts;  // vertex ids
    std::vector<PartSummary> part_summaries;
    std::vector<BitRow> degree_colors;  // Q_t per part
    std::vector<std::uint8_t> edge_types;  // UncoveredType per edge of the next level
    std::array<std::size_t, 6> histogram{};  // indexed by UncoveredType
    std::vector<CliqueCertificate> extensions;  // cliques produced from Q_t ∩ Q'_t
};

struct TraceReport {
    int d = 0;
    std::vector<double> budgets;
    std::vector<PipelineState> states;
    std::vector<LevelSummary> levels;
    std::vector<StepReport> steps;
    bool halted_empty_family = false;
};

/// Runs the level construction once per consecutive budget pair: partition F_j at
/// δ = |F_j|/b^4, compute Q_t and Q'_t, drop parts smaller than n/b^(6d), restrict
/// each surviving vertex's menu to its part's Q_t, and rebuild the covering.
/// Level properties are reported, never asserted. Budgets must strictly decrease.
TraceReport pipeline_trace(std::shared_ptr<const EdgeColoring> coloring, int d, std::vector<std::size_t> k_targets,
                           std::vector<double> budgets, CliqueBudget part_budget = {});

}  // namespace vcramsey
