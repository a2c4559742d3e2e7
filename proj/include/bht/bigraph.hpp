#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bht {

// Hard cap per side: adjacency rows are single 64-bit masks.
inline constexpr int kMaxPartSize = 64;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Part : std::uint8_t { X, Y };

inline char part_name(Part p) { return p == Part::X ? 'X' : 'Y'; }

struct Vertex {
    Part part;
    int index;

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend bool operator<(const Vertex& a, const Vertex& b) {
        if (a.part != b.part) return a.part == Part::X;
        return a.index < b.index;
    }
};

inline Vertex vx(int i) { return {Part::X, i}; }
inline Vertex vy(int j) { return {Part::Y, j}; }

inline std::uint64_t mask_below(int n) {
    return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

/// Bipartite graph with parts X (size nx) and Y (size ny).
/// Adjacency is stored as one Y-index bit mask per X vertex; the Y-side view
/// is derived on demand. Values are immutable once built: the mutating
/// operations below all return fresh graphs.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    BipartiteGraph(int nx, int ny) : nx_(nx), ny_(ny), rows_(static_cast<std::size_t>(std::max(nx, 0))) {
        if (nx < 0 || ny < 0) throw std::invalid_argument("negative part size");
        if (nx > kMaxPartSize || ny > kMaxPartSize)
            throw limit_error("part size exceeds the 64-vertex build limit");
    }

    static BipartiteGraph from_rows(int nx, int ny, std::vector<std::uint64_t> rows) {
        BipartiteGraph g(nx, ny);
        if (rows.size() != static_cast<std::size_t>(nx))
            throw std::invalid_argument("row count does not match nx");
        for (std::uint64_t r : rows)
            if (r & ~mask_below(ny)) throw std::invalid_argument("row mask exceeds ny");
        g.rows_ = std::move(rows);
        return g;
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int order() const { return nx_ + ny_; }
    bool balanced() const { return nx_ == ny_; }

    std::uint64_t row(int x) const { return rows_[static_cast<std::size_t>(check_x(x))]; }

    std::uint64_t col(int y) const {
        check_y(y);
        std::uint64_t m = 0;
        for (int i = 0; i < nx_; ++i)
            if (rows_[static_cast<std::size_t>(i)] >> y & 1) m |= 1ull << i;
        return m;
    }

    bool has_edge(int x, int y) const { return row(x) >> check_y(y) & 1; }

    int deg_x(int x) const { return std::popcount(row(x)); }
    int deg_y(int y) const { return std::popcount(col(y)); }

    long edge_count() const {
        long e = 0;
        for (std::uint64_t r : rows_) e += std::popcount(r);
        return e;
    }

    int min_degree() const {
        if (order() == 0) return 0;
        int d = order();
        for (int i = 0; i < nx_; ++i) d = std::min(d, deg_x(i));
        for (int j = 0; j < ny_; ++j) d = std::min(d, deg_y(j));
        return d;
    }

    bool is_complete() const { return edge_count() == static_cast<long>(nx_) * ny_; }

    BipartiteGraph with_edge(int x, int y) const {
        BipartiteGraph g = *this;
        g.rows_[static_cast<std::size_t>(check_x(x))] |= 1ull << check_y(y);
        return g;
    }

    BipartiteGraph without_edge(int x, int y) const {
        BipartiteGraph g = *this;
        g.rows_[static_cast<std::size_t>(check_x(x))] &= ~(1ull << check_y(y));
        return g;
    }

    /// Graph with X and Y roles exchanged.
    BipartiteGraph transposed() const {
        BipartiteGraph g(ny_, nx_);
        for (int j = 0; j < ny_; ++j) g.rows_[static_cast<std::size_t>(j)] = col(j);
        return g;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(edge_count()));
        for (int i = 0; i < nx_; ++i)
            for (std::uint64_t r = row(i); r; r &= r - 1)
                out.emplace_back(i, std::countr_zero(r));
        return out;
    }

    /// FNV-1a over (nx, ny, row masks); stable record identity across runs.
    std::uint64_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](std::uint64_t v, int bytes) {
            for (int b = 0; b < bytes; ++b) {
                h ^= (v >> (8 * b)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(static_cast<std::uint64_t>(nx_), 4);
        mix(static_cast<std::uint64_t>(ny_), 4);
        for (std::uint64_t r : rows_) mix(r, 8);
        return h;
    }

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
        return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.rows_ == b.rows_;
    }

private:
    int check_x(int x) const {
        if (x < 0 || x >= nx_) throw std::invalid_argument("X index out of range: " + std::to_string(x));
        return x;
    }
    int check_y(int y) const {
        if (y < 0 || y >= ny_) throw std::invalid_argument("Y index out of range: " + std::to_string(y));
        return y;
    }

    int nx_ = 0, ny_ = 0;
    std::vector<std::uint64_t> rows_;
};

inline BipartiteGraph complete_bipartite(int m, int n) {
    BipartiteGraph g(m, n);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), mask_below(n));
    return BipartiteGraph::from_rows(m, n, std::move(rows));
}

/// K_{n,n-3} plus three Y vertices of degree 2: v_1,v_2,v_3 (indices 0..2)
/// all joined to u_1 (index 0), and v_i joined to u_{i+1} (index i).
/// Y indices 3..n-1 play v_4..v_n and are joined to every X vertex.
inline BipartiteGraph extremal_gnn(int n) {
    if (n < 5) throw std::invalid_argument("extremal family needs n >= 5");
    BipartiteGraph g(n, n);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), mask_below(n) & ~mask_below(3));
    rows[0] |= 0b111;
    for (int i = 1; i <= 3; ++i) rows[static_cast<std::size_t>(i)] |= 1ull << (i - 1);
    return BipartiteGraph::from_rows(n, n, std::move(rows));
}

/// Induced subgraph on V(G) - S. Surviving vertices keep their relative
/// order; part indices are re-based.
inline BipartiteGraph delete_vertices(const BipartiteGraph& g, std::span<const Vertex> s) {
    std::uint64_t xdel = 0, ydel = 0;
    for (const Vertex& v : s) {
        if (v.index < 0 || v.index >= (v.part == Part::X ? g.nx() : g.ny()))
            throw std::invalid_argument("vertex outside the graph");
        (v.part == Part::X ? xdel : ydel) |= 1ull << v.index;
    }
    std::vector<int> ymap(static_cast<std::size_t>(g.ny()), -1);
    int ny2 = 0;
    for (int j = 0; j < g.ny(); ++j)
        if (!(ydel >> j & 1)) ymap[static_cast<std::size_t>(j)] = ny2++;
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < g.nx(); ++i) {
        if (xdel >> i & 1) continue;
        std::uint64_t r = 0;
        for (std::uint64_t m = g.row(i) & ~ydel; m; m &= m - 1)
            r |= 1ull << ymap[static_cast<std::size_t>(std::countr_zero(m))];
        rows.push_back(r);
    }
    int nx2 = static_cast<int>(rows.size());
    return BipartiteGraph::from_rows(nx2, ny2, std::move(rows));
}

inline BipartiteGraph delete_vertices(const BipartiteGraph& g, const std::vector<Vertex>& s) {
    return delete_vertices(g, std::span<const Vertex>(s));
}

inline long edges_between_masks(const BipartiteGraph& g, std::uint64_t xsub, std::uint64_t ysub) {
    if (xsub & ~mask_below(g.nx())) throw std::invalid_argument("X subset out of range");
    if (ysub & ~mask_below(g.ny())) throw std::invalid_argument("Y subset out of range");
    long e = 0;
    for (std::uint64_t m = xsub; m; m &= m - 1)
        e += std::popcount(g.row(std::countr_zero(m)) & ysub);
    return e;
}

/// Number of edges with one end in U (X indices) and one in W (Y indices).
inline long edges_between(const BipartiteGraph& g, const std::vector<int>& u, const std::vector<int>& w) {
    std::uint64_t xsub = 0, ysub = 0;
    for (int i : u) {
        if (i < 0 || i >= g.nx()) throw std::invalid_argument("X subset out of range");
        xsub |= 1ull << i;
    }
    for (int j : w) {
        if (j < 0 || j >= g.ny()) throw std::invalid_argument("Y subset out of range");
        ysub |= 1ull << j;
    }
    return edges_between_masks(g, xsub, ysub);
}

}  // namespace bht
