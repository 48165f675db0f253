#include "vcramsey/ramsey_small.hpp"

#include <bit>
#include <random>
#include <vector>

#include "vcramsey/errors.hpp"

namespace vcramsey {

namespace {

using Mask = std::uint64_t;

// true iff `within` contains a clique of `need` vertices in the graph `adj`
bool has_clique(const std::vector<Mask>& adj, Mask within, std::size_t need)
{
    if (need == 0) return true;
    if (static_cast<std::size_t>(std::popcount(within)) < need) return false;
    if (need == 1) return within != 0;
    while (within) {
        const int v = std::countr_zero(within);
        within &= within - 1;
        if (has_clique(adj, within & adj[v], need - 1)) return true;
        if (static_cast<std::size_t>(std::popcount(within)) < need) return false;
    }
    return false;
}

class Backtracker {
public:
    Backtracker(std::size_t k, std::size_t m, std::size_t n, std::uint64_t budget)
        : k_(k), m_(m), n_(n), budget_(budget), adj_(m, std::vector<Mask>(n, 0)), row0_(n, 0)
    {
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) edges_.emplace_back(i, j);
        colors_.assign(edges_.size(), 0);
    }

    // true: found a clique-free coloring; false: none exists. Throws BudgetExceeded.
    bool solve() { return place(0); }
    std::uint64_t nodes() const { return nodes_; }

    EdgeColoring coloring() const
    {
        EdgeColoring c(n_, m_, Color{0});
        for (std::size_t e = 0; e < edges_.size(); ++e) c.set_color(edges_[e].first, edges_[e].second, colors_[e]);
        return c;
    }

private:
    bool place(std::size_t e)
    {
        if (e == edges_.size()) return true;
        const auto [i, j] = edges_[e];
        std::size_t lo = 0;
        std::size_t hi = m_;
        if (i == 0) {
            // canonical row 0: starts at color 0, non-decreasing, steps of at most 1
            if (j == 1) {
                hi = 1;
            } else {
                lo = row0_[j - 1];
                hi = std::min(m_, lo + 2);
            }
        }
        for (std::size_t c = lo; c < hi; ++c) {
            if (++nodes_ > budget_) throw BudgetExceeded("ramsey backtracking budget exhausted");
            // a monochromatic K_k through edge ij needs k-2 common c-neighbours among earlier vertices
            const Mask common = adj_[c][i] & adj_[c][j];
            if (k_ >= 2 && has_clique(adj_[c], common, k_ - 2)) continue;
            adj_[c][i] |= Mask{1} << j;
            adj_[c][j] |= Mask{1} << i;
            colors_[e] = static_cast<Color>(c);
            if (i == 0) row0_[j] = c;
            if (place(e + 1)) return true;
            adj_[c][i] &= ~(Mask{1} << j);
            adj_[c][j] &= ~(Mask{1} << i);
        }
        return false;
    }

    std::size_t k_, m_, n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::vector<Mask>> adj_;
    std::vector<std::size_t> row0_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<Color> colors_;
};

// Tabu search for an m-coloring of K_n without monochromatic triangles. The cost is the
// number of monochromatic triangles; each step recolors the edge with the best cost change
// among edges lying in a monochromatic triangle, skipping recently changed (edge, color) pairs.
std::optional<EdgeColoring> triangle_free_local_search(std::size_t m, std::size_t n, std::uint64_t seed,
                                                       std::uint64_t steps)
{
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Mask>> adj(m, std::vector<Mask>(n, 0));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::vector<std::size_t> color(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        const auto [u, v] = pairs[e];
        color[e] = rng() % m;
        adj[color[e]][u] |= Mask{1} << v;
        adj[color[e]][v] |= Mask{1} << u;
    }
    auto through = [&](std::size_t e, std::size_t c) {
        const auto [u, v] = pairs[e];
        return static_cast<long>(std::popcount(adj[c][u] & adj[c][v]));
    };
    long cost = 0;
    for (std::size_t e = 0; e < pairs.size(); ++e) cost += through(e, color[e]);
    cost /= 3;

    std::vector<std::uint64_t> tabu_until(pairs.size() * m, 0);
    long best_cost = cost;
    for (std::uint64_t step = 1; step <= steps && cost > 0; ++step) {
        long best_delta = 0;
        std::size_t best_e = SIZE_MAX, best_c = 0, ties = 0;
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            const long here = through(e, color[e]);
            if (here == 0) continue;
            for (std::size_t c = 0; c < m; ++c) {
                if (c == color[e]) continue;
                const long delta = through(e, c) - here;
                const bool allowed = tabu_until[e * m + c] < step || cost + delta < best_cost;
                if (!allowed) continue;
                if (best_e == SIZE_MAX || delta < best_delta) {
                    best_delta = delta;
                    best_e = e;
                    best_c = c;
                    ties = 1;
                } else if (delta == best_delta && rng() % ++ties == 0) {
                    best_e = e;
                    best_c = c;
                }
            }
        }
        if (best_e == SIZE_MAX) continue;
        const auto [u, v] = pairs[best_e];
        const std::size_t old = color[best_e];
        adj[old][u] &= ~(Mask{1} << v);
        adj[old][v] &= ~(Mask{1} << u);
        adj[best_c][u] |= Mask{1} << v;
        adj[best_c][v] |= Mask{1} << u;
        color[best_e] = best_c;
        cost += best_delta;
        best_cost = std::min(best_cost, cost);
        tabu_until[best_e * m + old] = step + 7 + rng() % 10;
    }
    if (cost > 0) return std::nullopt;
    EdgeColoring col(n, m, Color{0});
    for (std::size_t e = 0; e < pairs.size(); ++e)
        col.set_color(pairs[e].first, pairs[e].second, static_cast<Color>(color[e]));
    return col;
}

}  // namespace

std::uint64_t count_clique_free_colorings(std::size_t k, std::size_t m, std::size_t n, std::uint64_t limit,
                                          std::uint64_t* enumerated)
{
    if (k < 1 || m < 1 || n > 64) throw ValidationError("count_clique_free_colorings: bad parameters");
    const std::size_t edges = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::uint64_t total = 1;
    for (std::size_t e = 0; e < edges; ++e) {
        if (total > limit / m) throw BudgetExceeded("too many colorings to enumerate");
        total *= m;
    }
    if (total > limit) throw BudgetExceeded("too many colorings to enumerate");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

    std::vector<std::size_t> digits(edges, 0);
    std::vector<std::vector<Mask>> adj(m, std::vector<Mask>(n, 0));
    std::uint64_t free_count = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        for (auto& a : adj) std::fill(a.begin(), a.end(), 0);
        for (std::size_t e = 0; e < edges; ++e) {
            const auto [u, v] = pairs[e];
            adj[digits[e]][u] |= Mask{1} << v;
            adj[digits[e]][v] |= Mask{1} << u;
        }
        const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
        bool found = false;
        for (std::size_t c = 0; c < m && !found; ++c) found = has_clique(adj[c], all, k);
        if (!found) ++free_count;
        for (std::size_t e = 0; e < edges; ++e) {
            if (++digits[e] < m) break;
            digits[e] = 0;
        }
    }
    if (enumerated) *enumerated = total;
    return free_count;
}

RamseyResult ramsey_small(std::size_t k, std::size_t m, const RamseyOptions& options)
{
    if (k < 1) throw ValidationError("ramsey_small: k must be >= 1");
    if (m < 1) throw ValidationError("ramsey_small: m must be >= 1");
    if (options.n_max < 1 || options.n_max > 64) throw ValidationError("ramsey_small: n_max must be in [1, 64]");

    RamseyResult r;
    r.k = k;
    r.m = m;
    r.lower_bound = 1;
    if (k == 1) {
        // K_1 holds a monochromatic K_1
        r.value = 1;
        r.exhaustive_confirmed = true;
        r.colorings_checked = 1;
        return r;
    }
    for (std::size_t n = 1; n <= options.n_max; ++n) {
        if (n < k) {
            r.witness = EdgeColoring(n, m, Color{0});
            r.witness_method = "trivial";
            r.lower_bound = n + 1;
            continue;
        }
        Backtracker bt(k, m, n, options.node_budget);
        try {
            const bool found = bt.solve();
            r.nodes += bt.nodes();
            if (!found) {
                r.value = n;
                break;
            }
            r.witness = bt.coloring();
            r.witness_method = "backtracking";
            r.lower_bound = n + 1;
            continue;
        } catch (const BudgetExceeded&) {
            r.nodes += bt.nodes();
        }
        std::optional<EdgeColoring> hunted;
        if (k == 3) hunted = triangle_free_local_search(m, n, options.seed + n, options.local_search_steps);
        if (!hunted) {
            r.undecided_at = n;
            break;
        }
        r.witness = std::move(hunted);
        r.witness_method = "local_search";
        r.lower_bound = n + 1;
    }

    if (r.witness && find_monochromatic_clique_bruteforce(*r.witness, k))
        throw IntegrityError("ramsey_small: witness coloring contains a monochromatic clique");

    if (r.value) {
        try {
            std::uint64_t enumerated = 0;
            const std::uint64_t free_count = count_clique_free_colorings(k, m, *r.value, options.exhaustive_limit,
                                                                         &enumerated);
            if (free_count != 0)
                throw IntegrityError("ramsey_small: enumeration found a clique-free coloring of K_" +
                                     std::to_string(*r.value));
            r.exhaustive_confirmed = true;
            r.colorings_checked = enumerated;
        } catch (const BudgetExceeded&) {
            r.exhaustive_confirmed = false;
        }
    }
    return r;
}

}  // namespace vcramsey
