#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "bht/bigraph.hpp"

namespace bht {

struct SpectralResult {
    double rho = 0.0;    // spectral radius estimate
    int iterations = 0;  // Gram mat-vec rounds
    double residual = 0.0;  // final enclosure width on the Gram eigenvalue
};

/// Largest adjacency eigenvalue of G, i.e. the largest singular value of the
/// biadjacency matrix B. Power-iterates the X-side Gram operator M = B*B^T
/// from the all-ones vector; adjacency iteration would oscillate between the
/// paired +/- eigenvalues, while M is PSD and converges on every component
/// the start vector overlaps (all of them).
///
/// Convergence is certified, not guessed: for the nonnegative M and a
/// positive iterate w, the Rayleigh quotient is a lower bound on lambda_max
/// and max_i (Mw)_i / w_i is an upper bound (Collatz-Wielandt). We stop once
/// the enclosure width is <= tol and report it as the residual.
inline SpectralResult spectral_radius(const BipartiteGraph& g, double tol = 1e-10,
                                      int max_iterations = 100000) {
    if (g.order() == 0) throw std::invalid_argument("spectral radius of an empty graph");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (g.edge_count() == 0) return {0.0, 0, 0.0};

    const int nx = g.nx(), ny = g.ny();
    std::vector<double> w(static_cast<std::size_t>(nx), 1.0), t(static_cast<std::size_t>(ny));
    // Vertices of positive degree; w stays strictly positive there because M
    // has a positive diagonal on this support.
    std::vector<int> support;
    for (int i = 0; i < nx; ++i)
        if (g.row(i)) support.push_back(i);

    double lower = 0.0, upper = std::numeric_limits<double>::infinity();
    int iter = 0;
    while (iter < max_iterations) {
        ++iter;
        std::fill(t.begin(), t.end(), 0.0);
        for (int i : support)
            for (std::uint64_t m = g.row(i); m; m &= m - 1)
                t[static_cast<std::size_t>(std::countr_zero(m))] += w[static_cast<std::size_t>(i)];
        double num = 0.0, den = 0.0, ratio_max = 0.0, wmax = 0.0;
        for (int i : support) {
            double wi = w[static_cast<std::size_t>(i)];
            double mi = 0.0;
            for (std::uint64_t m = g.row(i); m; m &= m - 1)
                mi += t[static_cast<std::size_t>(std::countr_zero(m))];
            num += wi * mi;
            den += wi * wi;
            ratio_max = std::max(ratio_max, mi / wi);
            w[static_cast<std::size_t>(i)] = mi;
            wmax = std::max(wmax, mi);
        }
        lower = std::max(lower, num / den);
        upper = std::min(upper, ratio_max);
        if (upper - lower <= tol) {
            double lambda = 0.5 * (lower + upper);
            return {std::sqrt(std::max(lambda, 0.0)), iter, upper - lower};
        }
        for (int i : support) w[static_cast<std::size_t>(i)] /= wmax;
    }
    throw convergence_error("spectral radius: iteration cap " + std::to_string(max_iterations) +
                            " reached with enclosure width " + std::to_string(upper - lower));
}

struct Partition {
    std::vector<std::vector<Vertex>> cells;
};

/// True iff every vertex of each cell has the same number of neighbors in
/// every (ordered) cell. Throws if the cells do not partition V(G).
inline bool check_equitable(const BipartiteGraph& g, const Partition& p) {
    std::uint64_t seen_x = 0, seen_y = 0;
    struct CellMasks {
        std::uint64_t x = 0, y = 0;
    };
    std::vector<CellMasks> masks;
    for (const auto& cell : p.cells) {
        CellMasks cm;
        for (const Vertex& v : cell) {
            if (v.index < 0 || v.index >= (v.part == Part::X ? g.nx() : g.ny()))
                throw std::invalid_argument("partition cell contains a vertex outside the graph");
            std::uint64_t bit = 1ull << v.index;
            std::uint64_t& seen = v.part == Part::X ? seen_x : seen_y;
            if (seen & bit) throw std::invalid_argument("partition cells overlap");
            seen |= bit;
            (v.part == Part::X ? cm.x : cm.y) |= bit;
        }
        masks.push_back(cm);
    }
    if (seen_x != mask_below(g.nx()) || seen_y != mask_below(g.ny()))
        throw std::invalid_argument("partition does not cover V(G)");

    for (std::size_t ci = 0; ci < p.cells.size(); ++ci) {
        for (std::size_t cj = 0; cj < p.cells.size(); ++cj) {
            int expected = -1;
            for (const Vertex& v : p.cells[ci]) {
                std::uint64_t nbrs = v.part == Part::X ? g.row(v.index) : g.col(v.index);
                std::uint64_t target = v.part == Part::X ? masks[cj].y : masks[cj].x;
                int cnt = std::popcount(nbrs & target);
                if (expected < 0) expected = cnt;
                else if (cnt != expected) return false;
            }
        }
    }
    return true;
}

/// The 5-cell partition of G_{n,n} used for the exact threshold:
/// {u_1}, {u_2,u_3,u_4}, {u_5..u_n}, {v_1,v_2,v_3}, {v_4..v_n}.
inline Partition gnn_quotient_partition(int n) {
    if (n < 5) throw std::invalid_argument("quotient partition needs n >= 5");
    Partition p;
    p.cells.resize(5);
    p.cells[0] = {vx(0)};
    for (int i = 1; i <= 3; ++i) p.cells[1].push_back(vx(i));
    for (int i = 4; i < n; ++i) p.cells[2].push_back(vx(i));
    for (int j = 0; j < 3; ++j) p.cells[3].push_back(vy(j));
    for (int j = 3; j < n; ++j) p.cells[4].push_back(vy(j));
    return p;
}

namespace detail {

// det(Q - x I) for the 5x5 quotient matrix of G_{n,n}, by elimination with
// partial pivoting.
inline double gnn_charpoly(int n, double x) {
    double q[5][5] = {{0, 0, 0, 3, double(n - 3)},
                      {0, 0, 0, 1, double(n - 3)},
                      {0, 0, 0, 0, double(n - 3)},
                      {1, 1, 0, 0, 0},
                      {1, 3, double(n - 4), 0, 0}};
    for (int i = 0; i < 5; ++i) q[i][i] -= x;
    double det = 1.0;
    for (int c = 0; c < 5; ++c) {
        int pivot = c;
        for (int r = c + 1; r < 5; ++r)
            if (std::abs(q[r][c]) > std::abs(q[pivot][c])) pivot = r;
        if (q[pivot][c] == 0.0) return 0.0;
        if (pivot != c) {
            for (int k = 0; k < 5; ++k) std::swap(q[pivot][k], q[c][k]);
            det = -det;
        }
        det *= q[c][c];
        for (int r = c + 1; r < 5; ++r) {
            double f = q[r][c] / q[c][c];
            for (int k = c; k < 5; ++k) q[r][k] -= f * q[c][k];
        }
    }
    return det;
}

}  // namespace detail

/// rho(G_{n,n}), the spectral threshold, from the 5x5 quotient matrix of the
/// partition above. The largest quotient eigenvalue equals the graph's
/// spectral radius and is the only root of the characteristic polynomial in
/// (sqrt(n(n-3)), sqrt(n(n-3)+6)), so plain bisection on that bracket finds
/// it without a general eigensolver.
inline double rho_gnn_exact(int n, double tol = 1e-10) {
    if (n < 5) throw std::invalid_argument("extremal family needs n >= 5");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    double lo = std::sqrt(double(n) * (n - 3));
    double hi = std::sqrt(double(n) * (n - 3) + 6);
    double flo = detail::gnn_charpoly(n, lo);
    double fhi = detail::gnn_charpoly(n, hi);
    if (!(flo > 0) || !(fhi < 0))
        throw convergence_error("quotient polynomial does not bracket the threshold root");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (detail::gnn_charpoly(n, mid) > 0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

enum class EdgeBound { strict, equality };

/// Classifies the bound rho(G) <= sqrt(e(G)): equality holds exactly when
/// stripping isolated vertices leaves a complete bipartite graph, i.e. when
/// e(G) equals the product of the non-isolated part sizes.
inline EdgeBound edge_bound_classify(const BipartiteGraph& g) {
    if (g.order() == 0) throw std::invalid_argument("edge bound of an empty graph");
    long live_x = 0, live_y = 0;
    for (int i = 0; i < g.nx(); ++i)
        if (g.row(i)) ++live_x;
    for (int j = 0; j < g.ny(); ++j)
        if (g.col(j)) ++live_y;
    return g.edge_count() == live_x * live_y ? EdgeBound::equality : EdgeBound::strict;
}

}  // namespace bht
