#include "vcramsey/clique_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "vcramsey/errors.hpp"

namespace vcramsey {

std::size_t PipelineState::s() const { return std::accumulate(k_targets.begin(), k_targets.end(), std::size_t{0}); }

std::size_t PipelineState::family_size() const
{
    std::size_t total = 0;
    active.for_each([&](std::size_t v) { total += menus[v].count(); });
    return total;
}

std::size_t PipelineState::max_menu() const
{
    std::size_t best = 0;
    active.for_each([&](std::size_t v) { best = std::max(best, menus[v].count()); });
    return best;
}

bool PipelineState::covers(std::size_t u, std::size_t v) const
{
    if (!active.test(u) || !active.test(v)) return false;
    const Color q = coloring->color(u, v);
    return menus[u].test(q) && menus[v].test(q);
}

PipelineState initial_state(std::shared_ptr<const EdgeColoring> coloring, std::vector<std::size_t> k_targets,
                            double budget)
{
    if (!coloring) throw ValidationError("initial_state: no coloring");
    if (k_targets.size() != coloring->m())
        throw ValidationError("expected " + std::to_string(coloring->m()) + " clique targets, got " +
                              std::to_string(k_targets.size()));
    if (budget <= 0) throw ValidationError("level budget must be positive");
    PipelineState state;
    state.active = BitRow::full(coloring->n());
    state.menus.assign(coloring->n(), BitRow::full(coloring->m()));
    state.uncovered = BitRow(coloring->edge_count());
    state.budget = budget;
    state.k_targets = std::move(k_targets);
    state.coloring = std::move(coloring);
    return state;
}

SetSystem active_family(const PipelineState& state)
{
    const IndexSet vertices = state.active_vertices();
    std::vector<std::size_t> local(state.n(), SIZE_MAX);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;

    std::vector<BitRow> rows;
    std::vector<std::string> labels;
    for (std::size_t v : vertices) {
        state.menus[v].for_each([&](std::size_t q) {
            BitRow row(vertices.size());
            for (std::size_t u : vertices)
                if (u != v && state.coloring->color(u, v) == q) row.set(local[u]);
            rows.push_back(std::move(row));
            labels.push_back(std::to_string(v) + ":" + std::to_string(q));
        });
    }
    return SetSystem(vertices.size(), std::move(rows), std::move(labels));
}

BitRow recompute_uncovered(const PipelineState& state)
{
    const EdgeColoring& col = *state.coloring;
    BitRow out(col.edge_count());
    std::size_t e = 0;
    for (std::size_t u = 0; u < col.n(); ++u)
        for (std::size_t v = u + 1; v < col.n(); ++v, ++e)
            if (!state.covers(u, v)) out.set(e);
    return out;
}

CoverageReport covered_edges(const PipelineState& state)
{
    const BitRow fresh = recompute_uncovered(state);
    if (fresh != state.uncovered) {
        const std::size_t e = (fresh ^ state.uncovered).find_first();
        const auto [u, v] = state.coloring->edge_endpoints(e);
        throw IntegrityError("level " + std::to_string(state.level) + ": edge {" + std::to_string(u) + "," +
                             std::to_string(v) + "} is " + (fresh.test(e) ? "uncovered" : "covered") +
                             " but the stored state says otherwise");
    }
    return CoverageReport{fresh.size(), fresh.count()};
}

std::size_t covered_color_degree(const PipelineState& state, std::size_t v, Color q)
{
    std::size_t deg = 0;
    state.active.for_each([&](std::size_t u) {
        if (u != v && state.coloring->color(u, v) == q && !state.uncovered.test(state.coloring->edge_index(u, v)))
            ++deg;
    });
    return deg;
}

std::vector<PartMenus> color_menus(const PipelineState& state, const std::vector<IndexSet>& parts,
                                   CliqueBudget budget)
{
    const std::size_t m = state.m();
    const double threshold = static_cast<double>(state.n()) / (state.budget * state.budget);
    std::vector<PartMenus> out;
    out.reserve(parts.size());
    for (const IndexSet& part : parts) {
        PartMenus pm;
        pm.part = part;
        pm.degree_colors = BitRow(m);
        pm.clique_colors = BitRow(m);
        pm.clique_witnesses.resize(m);
        for (std::size_t v : part) {
            if (v >= state.n() || !state.active.test(v))
                throw ValidationError("color_menus: vertex " + std::to_string(v) + " is not active");
            for (std::size_t q = 0; q < m; ++q)
                if (!pm.degree_colors.test(q) &&
                    static_cast<double>(covered_color_degree(state, v, static_cast<Color>(q))) >= threshold)
                    pm.degree_colors.set(q);
        }
        for (std::size_t q = 0; q < m; ++q) {
            const std::size_t need = state.k_targets[q] - 1;
            if (need == 0) {
                pm.clique_colors.set(q);
                pm.clique_witnesses[q] = CliqueCertificate{{}, static_cast<Color>(q)};
                continue;
            }
            try {
                auto found = find_monochromatic_clique_within(*state.coloring, part, need, static_cast<Color>(q), budget);
                if (found) {
                    pm.clique_colors.set(q);
                    pm.clique_witnesses[q] = std::move(found);
                }
            } catch (const BudgetExceeded&) {
                pm.undecided.push_back(static_cast<Color>(q));
            }
        }
        out.push_back(std::move(pm));
    }
    return out;
}

ExtensionResult clique_extension(const PipelineState& state, const CliqueCertificate& base, std::size_t pivot,
                                 const IndexSet& candidates, std::size_t delta)
{
    const EdgeColoring& col = *state.coloring;
    const Color q = base.color;
    if (q >= col.m() || !verify_clique(col, base)) throw ValidationError("clique_extension: base is not a monochromatic clique");
    for (std::size_t x : base.vertices)
        if (!state.active.test(x)) throw ValidationError("clique_extension: base vertex " + std::to_string(x) + " is not active");
    if (pivot >= col.n() || !state.active.test(pivot)) throw ValidationError("clique_extension: pivot is not active");

    BitRow in_base(col.n());
    for (std::size_t x : base.vertices) in_base.set(x);

    ExtensionResult r;
    r.target_size = base.size() + 1;
    r.candidates = candidates.size();
    r.delta = delta;
    const double k = static_cast<double>(r.target_size);
    r.guaranteed = static_cast<double>(candidates.size()) - k > 2.0 * k * static_cast<double>(delta);

    for (std::size_t u : candidates) {
        if (u >= col.n() || u == pivot || col.color(u, pivot) != q || !state.covers(u, pivot))
            throw ValidationError("clique_extension: candidate " + std::to_string(u) +
                                  " is not joined to the pivot by a covered edge of the base color");
        if (in_base.test(u)) {
            ++r.base_in_candidates;
            continue;
        }
        // (u, q) is in F_j because uv is covered; check N_q(u) ∩ V_j ⊇ base
        const bool holds_base = std::all_of(base.vertices.begin(), base.vertices.end(),
                                            [&](std::size_t x) { return col.color(u, x) == q; });
        if (!holds_base) {
            ++r.missing_base;
            continue;
        }
        if (!r.certificate) {
            CliqueCertificate c = base;
            c.vertices.push_back(u);
            std::sort(c.vertices.begin(), c.vertices.end());
            r.certificate = std::move(c);
        }
    }
    return r;
}

namespace {

class Descent {
public:
    Descent(const EdgeColoring& coloring, const std::vector<std::size_t>& targets, std::size_t menu_bound,
            std::uint64_t max_nodes)
        : n_(coloring.n()), m_(coloring.m()), targets_(targets), menu_bound_(std::min(menu_bound, coloring.m())),
          max_nodes_(max_nodes), pivots_(m_), achieved_(m_, 0), witness_(m_)
    {
        adj_.reserve(m_);
        for (std::size_t c = 0; c < m_; ++c) adj_.push_back(coloring.color_adjacency(static_cast<Color>(c)));
    }

    DescentResult run()
    {
        visit(BitRow::full(n_));
        DescentResult r;
        r.achieved = achieved_;
        r.nodes = nodes_;
        r.budget_exhausted = exhausted_;
        std::size_t best = 0;
        if (success_) {
            best = success_color_;
        } else {
            for (std::size_t c = 1; c < m_; ++c)
                if (achieved_[c] > achieved_[best]) best = c;
        }
        r.success = success_;
        r.certificate = CliqueCertificate{witness_[best], static_cast<Color>(best)};
        std::sort(r.certificate.vertices.begin(), r.certificate.vertices.end());
        r.target = targets_[best];
        return r;
    }

private:
    void record(std::size_t c, IndexSet clique)
    {
        const std::size_t size = std::min(clique.size(), targets_[c]);
        if (size > achieved_[c] || (achieved_[c] == 0 && witness_[c].empty())) {
            clique.resize(size);
            achieved_[c] = size;
            witness_[c] = std::move(clique);
        }
        if (size == targets_[c] && !success_) {
            success_ = true;
            success_color_ = c;
        }
    }

    // Returns true to stop the whole search.
    bool visit(BitRow within)
    {
        if (++nodes_ > max_nodes_) {
            exhausted_ = true;
            return true;
        }
        for (std::size_t c = 0; c < m_ && !success_; ++c) {
            IndexSet clique = pivots_[c];
            const std::size_t first = within.find_first();
            if (first < n_) {
                clique.push_back(first);
                for (std::size_t u = first; u < n_; u = within.find_next(u + 1)) {
                    const std::size_t w = (adj_[c][u] & within).find_first();
                    if (w < n_) {
                        clique.back() = u;
                        clique.push_back(w);
                        break;
                    }
                }
            }
            record(c, std::move(clique));
        }
        if (success_) return true;

        struct Pivot {
            std::size_t vertex;
            std::size_t key;
            std::vector<std::pair<std::size_t, Color>> menu;  // (degree, color)
        };
        std::vector<Pivot> order;
        within.for_each([&](std::size_t v) {
            Pivot p{v, 0, {}};
            for (std::size_t c = 0; c < m_; ++c)
                p.menu.emplace_back(adj_[c][v].and_count(within), static_cast<Color>(c));
            std::stable_sort(p.menu.begin(), p.menu.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
            p.menu.resize(menu_bound_);
            p.key = p.menu.empty() ? 0 : p.menu.front().first;
            order.push_back(std::move(p));
        });
        std::stable_sort(order.begin(), order.end(), [](const Pivot& a, const Pivot& b) { return a.key > b.key; });

        for (const Pivot& p : order) {
            for (const auto& [deg, c] : p.menu) {
                BitRow next = within & adj_[c][p.vertex];
                const std::size_t room = next.count();
                bool useful = false;
                for (std::size_t o = 0; o < m_ && !useful; ++o) {
                    const std::size_t reach = pivots_[o].size() + (o == c ? 1 : 0) + room;
                    useful = std::min(reach, targets_[o]) > achieved_[o];
                }
                if (!useful) continue;
                pivots_[c].push_back(p.vertex);
                const bool stop = visit(std::move(next));
                pivots_[c].pop_back();
                if (stop) return true;
            }
            within.reset(p.vertex);
        }
        return false;
    }

    std::size_t n_;
    std::size_t m_;
    const std::vector<std::size_t>& targets_;
    std::size_t menu_bound_;
    std::uint64_t max_nodes_;
    std::vector<std::vector<BitRow>> adj_;
    std::vector<IndexSet> pivots_;
    std::vector<std::size_t> achieved_;
    std::vector<IndexSet> witness_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    bool success_ = false;
    std::size_t success_color_ = 0;
};

}  // namespace

DescentResult neighborhood_descent(const EdgeColoring& coloring, const std::vector<std::size_t>& k_targets,
                                   std::size_t menu_bound, CliqueBudget budget)
{
    if (coloring.n() < 2) throw ValidationError("neighborhood_descent: need at least two vertices");
    if (k_targets.size() != coloring.m())
        throw ValidationError("neighborhood_descent: expected " + std::to_string(coloring.m()) + " targets");
    for (std::size_t k : k_targets)
        if (k < 1) throw ValidationError("neighborhood_descent: targets must be >= 1");
    if (menu_bound < 1) throw ValidationError("neighborhood_descent: menu_bound must be >= 1");
    return Descent(coloring, k_targets, menu_bound, budget.max_nodes).run();
}

const char* to_string(UncoveredType t)
{
    switch (t) {
    case UncoveredType::none: return "covered";
    case UncoveredType::carried: return "carried";
    case UncoveredType::small_part: return "small_part";
    case UncoveredType::same_part: return "same_part";
    case UncoveredType::pruned_color: return "pruned_color";
    case UncoveredType::unexplained: return "unexplained";
    }
    return "?";
}

namespace {

LevelSummary summarize(const PipelineState& state, const std::vector<double>& budgets)
{
    const double n = static_cast<double>(state.n());
    LevelSummary s;
    s.level = state.level;
    s.budget = state.budget;
    s.family_size = state.family_size();
    s.active = state.active.count();
    s.uncovered = state.uncovered.count();
    s.max_menu = state.max_menu();
    s.menu_ok = static_cast<double>(s.max_menu) <= state.budget &&
                static_cast<double>(s.family_size) <= n * state.budget;
    if (state.level == 0) {
        s.active_rhs = n;
        s.covered_rhs = static_cast<double>(state.coloring->edge_count());
    } else {
        const double prev = budgets[state.level - 1];
        s.active_rhs = n - n / prev;
        s.covered_rhs = static_cast<double>(state.coloring->edge_count()) - 8.0 * n * n / prev;
    }
    s.active_ok = static_cast<double>(s.active) >= s.active_rhs;
    s.covered_ok = static_cast<double>(state.coloring->edge_count() - s.uncovered) >= s.covered_rhs;
    return s;
}

}  // namespace

TraceReport pipeline_trace(std::shared_ptr<const EdgeColoring> coloring, int d, std::vector<std::size_t> k_targets,
                           std::vector<double> budgets, CliqueBudget part_budget)
{
    if (d < 1) throw ValidationError("pipeline_trace: d must be >= 1");
    if (budgets.empty()) throw ValidationError("pipeline_trace: need at least one budget");
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (!(budgets[i] > 0)) throw ValidationError("pipeline_trace: budgets must be positive");
        if (i > 0 && !(budgets[i] < budgets[i - 1]))
            throw ValidationError("pipeline_trace: budgets must be strictly decreasing");
    }
    for (std::size_t k : k_targets)
        if (k < 1) throw ValidationError("pipeline_trace: clique targets must be >= 1");

    TraceReport report;
    report.d = d;
    report.budgets = budgets;
    report.states.push_back(initial_state(std::move(coloring), std::move(k_targets), budgets[0]));
    report.levels.push_back(summarize(report.states.back(), budgets));

    for (std::size_t j = 0; j + 1 < budgets.size(); ++j) {
        const PipelineState& cur = report.states.back();
        const EdgeColoring& col = *cur.coloring;
        const double n = static_cast<double>(col.n());
        const double b = budgets[j];

        const SetSystem family = active_family(cur);
        if (family.empty()) {
            report.halted_empty_family = true;
            break;
        }
        const IndexSet vertices = cur.active_vertices();

        StepReport step;
        step.from_level = j;
        step.d = d;
        step.delta_exact = static_cast<double>(family.size()) / std::pow(b, 4);
        step.delta = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(step.delta_exact)), 1, family.size());
        step.small_threshold = n / std::pow(b, 6 * d);
        step.degree_threshold = n / (b * b);

        const Partition compact = partition(family, step.delta, d);
        step.size_cap = compact.size_cap;
        for (const IndexSet& part : compact.parts) {
            IndexSet ids;
            for (std::size_t i : part) ids.push_back(vertices[i]);
            step.parts.push_back(std::move(ids));
        }

        const std::vector<PartMenus> menus = color_menus(cur, step.parts, part_budget);

        PipelineState next;
        next.coloring = cur.coloring;
        next.level = j + 1;
        next.budget = budgets[j + 1];
        next.k_targets = cur.k_targets;
        next.active = cur.active;
        next.menus = cur.menus;

        std::vector<std::size_t> part_of(col.n(), SIZE_MAX);
        std::vector<bool> small(step.parts.size());
        for (std::size_t t = 0; t < step.parts.size(); ++t) {
            const PartMenus& pm = menus[t];
            small[t] = static_cast<double>(pm.part.size()) < step.small_threshold;
            PartSummary ps;
            ps.size = pm.part.size();
            ps.small = small[t];
            ps.degree_colors = pm.degree_colors.count();
            ps.clique_colors = pm.clique_colors.count();
            ps.undecided = pm.undecided.size();
            ps.menu_overflow = !small[t] && static_cast<double>(ps.degree_colors) >= budgets[j + 1];
            step.part_summaries.push_back(ps);
            step.degree_colors.push_back(pm.degree_colors);

            // a color on both menus extends a (k_q - 1)-clique through a high-degree pivot
            const BitRow both = pm.degree_colors & pm.clique_colors;
            both.for_each([&](std::size_t q) {
                const CliqueCertificate& base = *pm.clique_witnesses[q];
                for (std::size_t v : pm.part) {
                    IndexSet u_set;
                    cur.active.for_each([&](std::size_t u) {
                        if (u != v && col.color(u, v) == q && cur.covers(u, v)) u_set.push_back(u);
                    });
                    if (static_cast<double>(u_set.size()) < step.degree_threshold) continue;
                    const ExtensionResult ext = clique_extension(cur, base, v, u_set, step.delta);
                    if (ext.certificate) step.extensions.push_back(*ext.certificate);
                    break;
                }
            });

            for (std::size_t v : pm.part) {
                part_of[v] = t;
                if (small[t]) {
                    next.active.reset(v);
                    next.menus[v] = BitRow(col.m());
                } else {
                    next.menus[v] &= pm.degree_colors;
                }
            }
        }
        next.uncovered = recompute_uncovered(next);

        step.edge_types.assign(col.edge_count(), static_cast<std::uint8_t>(UncoveredType::none));
        next.uncovered.for_each([&](std::size_t e) {
            const auto [u, v] = col.edge_endpoints(e);
            UncoveredType type = UncoveredType::unexplained;
            if (cur.uncovered.test(e)) {
                type = UncoveredType::carried;
            } else if (small[part_of[u]] || small[part_of[v]]) {
                type = UncoveredType::small_part;
            } else if (part_of[u] == part_of[v]) {
                type = UncoveredType::same_part;
            } else {
                const Color q = col.color(u, v);
                if (!step.degree_colors[part_of[u]].test(q) || !step.degree_colors[part_of[v]].test(q))
                    type = UncoveredType::pruned_color;
            }
            step.edge_types[e] = static_cast<std::uint8_t>(type);
            ++step.histogram[static_cast<std::size_t>(type)];
        });

        report.steps.push_back(std::move(step));
        report.states.push_back(std::move(next));
        report.levels.push_back(summarize(report.states.back(), budgets));
    }
    return report;
}

}  // namespace vcramsey
