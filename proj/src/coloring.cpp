#include "vcramsey/coloring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "vcramsey/errors.hpp"

namespace vcramsey {

namespace {

void check_shape(std::size_t n, std::size_t m)
{
    if (n > kMaxColoringVertices)
        throw CapacityError("coloring of K_" + std::to_string(n) + " exceeds the " +
                            std::to_string(kMaxColoringVertices) + "-vertex limit");
    if (m > kMaxColors) throw ValidationError("too many colors: " + std::to_string(m));
    if (m == 0 && n >= 2) throw ValidationError("a coloring of K_" + std::to_string(n) + " needs at least one color");
}

}  // namespace

EdgeColoring::EdgeColoring(std::size_t n, std::size_t m, Color fill) : n_(n), m_(m)
{
    check_shape(n, m);
    if (n >= 2 && fill >= m) throw ValidationError("fill color out of range");
    colors_.assign(n * (n - (n > 0 ? 1 : 0)) / 2, fill);
}

EdgeColoring::EdgeColoring(std::size_t n, std::size_t m, std::vector<Color> upper)
    : n_(n), m_(m), colors_(std::move(upper))
{
    check_shape(n, m);
    const std::size_t expected = n * (n - (n > 0 ? 1 : 0)) / 2;
    if (colors_.size() != expected)
        throw ValidationError("expected " + std::to_string(expected) + " edge colors, got " +
                              std::to_string(colors_.size()));
    for (std::size_t i = 0; i < colors_.size(); ++i)
        if (colors_[i] >= m)
            throw ValidationError("edge " + std::to_string(i) + " has color " + std::to_string(colors_[i]) +
                                  " outside [0, " + std::to_string(m) + ")");
}

void EdgeColoring::set_color(std::size_t u, std::size_t v, Color c)
{
    if (u == v || u >= n_ || v >= n_) throw ValidationError("set_color: invalid edge");
    if (c >= m_) throw ValidationError("set_color: color out of range");
    colors_[edge_index(u, v)] = c;
}

std::pair<std::size_t, std::size_t> EdgeColoring::edge_endpoints(std::size_t index) const
{
    std::size_t u = 0;
    std::size_t row = n_ - 1;  // edges in row u
    while (index >= row) {
        index -= row;
        ++u;
        --row;
    }
    return {u, u + 1 + index};
}

BitRow EdgeColoring::neighborhood(std::size_t v, Color c) const
{
    BitRow row(n_);
    for (std::size_t u = 0; u < n_; ++u)
        if (u != v && color(u, v) == c) row.set(u);
    return row;
}

std::vector<BitRow> EdgeColoring::color_adjacency(Color c) const
{
    std::vector<BitRow> adj(n_, BitRow(n_));
    std::size_t e = 0;
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = u + 1; v < n_; ++v, ++e) {
            if (colors_[e] == c) {
                adj[u].set(v);
                adj[v].set(u);
            }
        }
    }
    return adj;
}

bool verify_clique(const EdgeColoring& coloring, const CliqueCertificate& cert)
{
    for (Index v : cert.vertices)
        if (v >= coloring.n()) throw ValidationError("verify_clique: vertex " + std::to_string(v) + " out of range");
    for (std::size_t a = 0; a < cert.vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < cert.vertices.size(); ++b) {
            if (cert.vertices[a] == cert.vertices[b]) return false;
            if (coloring.color(cert.vertices[a], cert.vertices[b]) != cert.color) return false;
        }
    }
    return true;
}

SetSystem neighborhood_family(const EdgeColoring& coloring, const std::optional<IndexSet>& restriction)
{
    const std::size_t n = coloring.n();
    BitRow mask = BitRow::full(n);
    if (restriction) {
        mask = BitRow(n);
        for (Index v : *restriction) {
            if (v >= n) throw ValidationError("neighborhood_family: restriction vertex out of range");
            mask.set(v);
        }
    }
    std::vector<BitRow> rows(n * coloring.m(), BitRow(n));
    std::vector<std::string> labels(n * coloring.m());
    for (std::size_t c = 0; c < coloring.m(); ++c)
        for (std::size_t v = 0; v < n; ++v) labels[c * n + v] = std::to_string(v) + ":" + std::to_string(c);
    std::size_t e = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v, ++e) {
            const std::size_t c = coloring.upper_triangle()[e];
            if (mask.test(v)) rows[c * n + u].set(v);
            if (mask.test(u)) rows[c * n + v].set(u);
        }
    }
    return SetSystem(n, std::move(rows), std::move(labels));
}

EdgeColoring lower_bound_coloring(std::size_t m)
{
    if (m < 1) throw ValidationError("lower_bound_coloring: m must be >= 1");
    if (m >= 63 || (std::size_t{1} << m) > kMaxColoringVertices)
        throw CapacityError("lower_bound_coloring: K_{2^" + std::to_string(m) + "} exceeds the " +
                            std::to_string(kMaxColoringVertices) + "-vertex limit");
    const std::size_t n = std::size_t{1} << m;
    std::vector<Color> upper;
    upper.reserve(n * (n - 1) / 2);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) upper.push_back(static_cast<Color>(std::bit_width(u ^ v) - 1));
    return EdgeColoring(n, m, std::move(upper));
}

EdgeColoring random_coloring(std::size_t n, std::size_t m, std::uint64_t seed)
{
    if (n < 2) throw ValidationError("random_coloring: n must be >= 2");
    if (m < 1) throw ValidationError("random_coloring: m must be >= 1");
    check_shape(n, m);
    std::mt19937_64 rng(seed);
    // Rejection sampling keeps the draw unbiased and independent of the standard
    // library's distribution implementation.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % m;
    std::vector<Color> upper(n * (n - 1) / 2);
    for (Color& c : upper) {
        std::uint64_t x;
        do x = rng();
        while (x >= limit);
        c = static_cast<Color>(x % m);
    }
    return EdgeColoring(n, m, std::move(upper));
}

int coloring_dual_vc(const EdgeColoring& coloring, WorkBudget budget)
{
    return dual_vc_dimension(neighborhood_family(coloring), budget);
}

namespace {

class CliqueSearch {
public:
    CliqueSearch(const std::vector<BitRow>& adj, std::size_t k, std::uint64_t max_nodes, std::uint64_t& nodes)
        : adj_(adj), k_(k), max_nodes_(max_nodes), nodes_(nodes)
    {}

    bool run(BitRow candidates)
    {
        clique_.clear();
        return extend(std::move(candidates));
    }
    const IndexSet& clique() const { return clique_; }

private:
    bool extend(BitRow cand)
    {
        if (clique_.size() == k_) return true;
        if (++nodes_ > max_nodes_)
            throw BudgetExceeded("clique search: more than " + std::to_string(max_nodes_) + " search nodes");
        std::size_t remaining = cand.count();
        for (std::size_t v = cand.find_first(); v < cand.size(); v = cand.find_next(v + 1)) {
            if (clique_.size() + remaining < k_) return false;
            cand.reset(v);
            --remaining;
            clique_.push_back(v);
            if (extend(cand & adj_[v])) return true;
            clique_.pop_back();
        }
        return false;
    }

    const std::vector<BitRow>& adj_;
    std::size_t k_;
    std::uint64_t max_nodes_;
    std::uint64_t& nodes_;
    IndexSet clique_;
};

}  // namespace

std::optional<CliqueCertificate> find_monochromatic_clique_within(const EdgeColoring& coloring,
                                                                  const IndexSet& vertices, std::size_t k,
                                                                  std::optional<Color> color, CliqueBudget budget)
{
    if (k < 1) throw ValidationError("clique search: k must be >= 1");
    if (color && *color >= coloring.m()) throw ValidationError("clique search: color out of range");
    BitRow within(coloring.n());
    for (Index v : vertices) {
        if (v >= coloring.n()) throw ValidationError("clique search: vertex out of range");
        within.set(v);
    }
    if (within.count() < k) return std::nullopt;
    if (k == 1) return CliqueCertificate{{within.find_first()}, color.value_or(0)};

    const std::size_t first = color ? *color : 0;
    const std::size_t last = color ? *color + 1 : coloring.m();
    std::uint64_t nodes = 0;  // shared across colors
    for (std::size_t c = first; c < last; ++c) {
        const auto adj = coloring.color_adjacency(static_cast<Color>(c));
        CliqueSearch search(adj, k, budget.max_nodes, nodes);
        if (search.run(within)) return CliqueCertificate{search.clique(), static_cast<Color>(c)};
    }
    return std::nullopt;
}

std::optional<CliqueCertificate> find_monochromatic_clique_bruteforce(const EdgeColoring& coloring, std::size_t k,
                                                                      std::optional<Color> color, CliqueBudget budget)
{
    IndexSet all(coloring.n());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    return find_monochromatic_clique_within(coloring, all, k, color, budget);
}

}  // namespace vcramsey
