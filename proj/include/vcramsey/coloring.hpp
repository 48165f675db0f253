#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vcramsey/bitset.hpp"
#include "vcramsey/set_system.hpp"

namespace vcramsey {

using Color = std::uint16_t;

/// Largest vertex count for a dense coloring (upper-triangular storage, 2 bytes per edge).
inline constexpr std::size_t kMaxColoringVertices = std::size_t{1} << 13;
inline constexpr std::size_t kMaxColors = 65535;

/// An m-coloring of the edges of K_n, stored as a dense upper-triangular array.
/// Colors are indices 0..m-1.
class EdgeColoring {
public:
    EdgeColoring() = default;
    /// Every edge gets `fill`.
    EdgeColoring(std::size_t n, std::size_t m, Color fill = 0);
    /// `upper` lists colors of (0,1),(0,2),...,(0,n-1),(1,2),... in that order.
    EdgeColoring(std::size_t n, std::size_t m, std::vector<Color> upper);

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::size_t edge_count() const { return colors_.size(); }

    Color color(std::size_t u, std::size_t v) const { return colors_[edge_index(u, v)]; }
    void set_color(std::size_t u, std::size_t v, Color c);

    /// Row-major position of the unordered pair {u, v}, u != v.
    std::size_t edge_index(std::size_t u, std::size_t v) const
    {
        if (u > v) std::swap(u, v);
        return u * n_ - u * (u + 1) / 2 + (v - u - 1);
    }
    /// Inverse of edge_index.
    std::pair<std::size_t, std::size_t> edge_endpoints(std::size_t index) const;

    const std::vector<Color>& upper_triangle() const { return colors_; }

    /// {u : χ(u, v) = c} as a bit row over all n vertices.
    BitRow neighborhood(std::size_t v, Color c) const;
    /// adjacency[v] for a single color class.
    std::vector<BitRow> color_adjacency(Color c) const;

    friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<Color> colors_;
};

/// Vertex set claimed to span a monochromatic clique of `color`.
struct CliqueCertificate {
    IndexSet vertices;
    Color color = 0;

    std::size_t size() const { return vertices.size(); }
    friend bool operator==(const CliqueCertificate&, const CliqueCertificate&) = default;
};

/// True iff the vertices are distinct and every internal edge has the stated color.
/// Throws ValidationError for out-of-range vertices.
bool verify_clique(const EdgeColoring& coloring, const CliqueCertificate& certificate);

/// One member per (color i, vertex v), color-major (index i*n + v), holding
/// N_i(v) ∩ restriction. Ground set is all n vertices; labels are "v:i".
SetSystem neighborhood_family(const EdgeColoring& coloring, const std::optional<IndexSet>& restriction = std::nullopt);

/// Coloring of K_{2^m} with χ(u, v) = highest bit where u and v differ: two copies of
/// the (m-1)-color construction joined by edges of color m-1. Triangle-free in every color.
/// Throws CapacityError when 2^m exceeds kMaxColoringVertices.
EdgeColoring lower_bound_coloring(std::size_t m);

/// Each edge uniform in [0, m), drawn from mt19937_64 seeded with `seed`.
EdgeColoring random_coloring(std::size_t n, std::size_t m, std::uint64_t seed);

int coloring_dual_vc(const EdgeColoring& coloring, WorkBudget budget = {});

struct CliqueBudget {
    std::uint64_t max_nodes = std::uint64_t{1} << 26;
};

/// Exhaustive search for a monochromatic K_k, colors tried in ascending order (or only
/// `color`), vertices in ascending order. Throws BudgetExceeded if the search tree
/// grows past the budget; std::nullopt means no such clique exists.
std::optional<CliqueCertificate> find_monochromatic_clique_bruteforce(const EdgeColoring& coloring, std::size_t k,
                                                                      std::optional<Color> color = std::nullopt,
                                                                      CliqueBudget budget = {});

/// Same search restricted to the induced subgraph on `vertices`.
std::optional<CliqueCertificate> find_monochromatic_clique_within(const EdgeColoring& coloring,
                                                                  const IndexSet& vertices, std::size_t k,
                                                                  std::optional<Color> color = std::nullopt,
                                                                  CliqueBudget budget = {});

}  // namespace vcramsey
