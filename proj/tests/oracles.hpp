#pragma once

// Test-only oracles. Each one takes an independent route from the library
// implementation it is used to check: dense Jacobi instead of power
// iteration, unpruned subset scans instead of the pruned search, explicit
// enumeration instead of flow, permutation enumeration instead of
// backtracking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bht/bigraph.hpp"
#include "bht/detail/rng.hpp"

namespace oracle {

using bht::BipartiteGraph;
using bht::Part;
using bht::Vertex;

/// Largest adjacency eigenvalue by cyclic Jacobi on the full symmetric
/// (nx+ny) x (nx+ny) matrix.
inline double spectral_radius_dense(const BipartiteGraph& g) {
    const int n = g.order();
    if (n == 0) return 0.0;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (auto [x, y] : g.edges()) {
        a[static_cast<std::size_t>(x)][static_cast<std::size_t>(g.nx() + y)] = 1.0;
        a[static_cast<std::size_t>(g.nx() + y)][static_cast<std::size_t>(x)] = 1.0;
    }
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                                                   a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                if (std::abs(apq) < 1e-18) continue;
                double app = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
                double aqq = a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
                    double akq = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
                    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] =
                        a[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] = c * akp - s * akq;
                    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] =
                        a[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)] = s * akp + c * akq;
                }
                a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = app - t * apq;
                a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)] = aqq + t * apq;
                a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                    a[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = 0.0;
            }
    }
    double best = 0.0;
    for (int k = 0; k < n; ++k) best = std::max(best, a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)]);
    return best;
}

/// Component count by plain adjacency-list BFS over the surviving vertices.
inline long components_plain(const BipartiteGraph& g, std::uint64_t xdel, std::uint64_t ydel) {
    const int n = g.nx() + g.ny();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [x, y] : g.edges()) {
        if ((xdel >> x & 1) || (ydel >> y & 1)) continue;
        adj[static_cast<std::size_t>(x)].push_back(g.nx() + y);
        adj[static_cast<std::size_t>(g.nx() + y)].push_back(x);
    }
    std::vector<bool> alive(static_cast<std::size_t>(n), false), seen(static_cast<std::size_t>(n), false);
    for (int i = 0; i < g.nx(); ++i) alive[static_cast<std::size_t>(i)] = !(xdel >> i & 1);
    for (int j = 0; j < g.ny(); ++j) alive[static_cast<std::size_t>(g.nx() + j)] = !(ydel >> j & 1);
    long comps = 0;
    for (int v = 0; v < n; ++v) {
        if (!alive[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)]) continue;
        ++comps;
        std::vector<int> stack{v};
        seen[static_cast<std::size_t>(v)] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
        }
    }
    return comps;
}

struct BruteToughness {
    bool defined = false;   // false on complete bipartite graphs
    long size = 0, comps = 1;  // minimizing |S| / c(G-S)
    bool one_tough = true;
};

/// Unpruned scan of every proper one-sided subset on both sides.
inline BruteToughness brute_toughness(const BipartiteGraph& g) {
    BruteToughness out;
    out.defined = !g.is_complete();
    bool have = false;
    const auto consider = [&](long k, long c) {
        if (c > std::max(k, 1l)) out.one_tough = false;
        if (c <= 1) return;
        if (!have || k * out.comps < out.size * c) {
            have = true;
            out.size = k;
            out.comps = c;
        }
    };
    consider(0, components_plain(g, 0, 0));
    for (std::uint64_t s = 1; s + 1 < (1ull << g.nx()); ++s) consider(std::popcount(s), components_plain(g, s, 0));
    for (std::uint64_t s = 1; s + 1 < (1ull << g.ny()); ++s) consider(std::popcount(s), components_plain(g, 0, s));
    return out;
}

/// Existence of a degree-2 spanning subgraph by choosing a neighbor pair for
/// every X vertex and checking the Y degrees.
inline bool brute_two_factor(const BipartiteGraph& g) {
    const int n = g.nx();
    if (!g.balanced()) return false;
    if (n == 0) return true;
    std::vector<std::vector<std::pair<int, int>>> pairs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> nbrs;
        for (std::uint64_t m = g.row(i); m; m &= m - 1) nbrs.push_back(std::countr_zero(m));
        for (std::size_t a = 0; a < nbrs.size(); ++a)
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) pairs[static_cast<std::size_t>(i)].push_back({nbrs[a], nbrs[b]});
        if (pairs[static_cast<std::size_t>(i)].empty()) return false;
    }
    std::vector<int> ydeg(static_cast<std::size_t>(n), 0);
    const auto dfs = [&](auto&& self, int i) -> bool {
        if (i == n) {
            for (int d : ydeg)
                if (d != 2) return false;
            return true;
        }
        for (auto [a, b] : pairs[static_cast<std::size_t>(i)]) {
            if (ydeg[static_cast<std::size_t>(a)] >= 2 || ydeg[static_cast<std::size_t>(b)] >= 2) continue;
            ++ydeg[static_cast<std::size_t>(a)];
            ++ydeg[static_cast<std::size_t>(b)];
            if (self(self, i + 1)) return true;
            --ydeg[static_cast<std::size_t>(a)];
            --ydeg[static_cast<std::size_t>(b)];
        }
        return false;
    };
    return dfs(dfs, 0);
}

/// Hamiltonicity by enumerating the X order (first fixed) and the Y order.
/// Factorial; keep n <= 5.
inline bool brute_hamilton(const BipartiteGraph& g) {
    const int n = g.nx();
    if (!g.balanced() || n < 2) return false;
    std::vector<int> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
    std::iota(px.begin(), px.end(), 0);
    std::iota(py.begin(), py.end(), 0);
    do {
        do {
            bool ok = true;
            for (int i = 0; ok && i < n; ++i) {
                ok = g.has_edge(px[static_cast<std::size_t>(i)], py[static_cast<std::size_t>(i)]) &&
                     g.has_edge(px[static_cast<std::size_t>((i + 1) % n)], py[static_cast<std::size_t>(i)]);
            }
            if (ok) return true;
        } while (std::next_permutation(py.begin(), py.end()));
    } while (std::next_permutation(px.begin() + 1, px.end()));
    return false;
}

namespace detail {

inline bool iso_same_orientation(const BipartiteGraph& a, const BipartiteGraph& b) {
    const int nx = a.nx(), ny = a.ny();
    std::vector<int> image(static_cast<std::size_t>(nx), -1);
    std::vector<bool> used(static_cast<std::size_t>(nx), false);
    std::vector<std::uint64_t> bcols;
    for (int j = 0; j < ny; ++j) bcols.push_back(b.col(j));
    std::sort(bcols.begin(), bcols.end());
    const auto dfs = [&](auto&& self, int i) -> bool {
        if (i == nx) {
            // Y images are determined up to permutation: the multiset of
            // remapped X-neighborhoods must match b's.
            std::vector<std::uint64_t> acols;
            for (int j = 0; j < ny; ++j) {
                std::uint64_t mapped = 0;
                for (std::uint64_t m = a.col(j); m; m &= m - 1)
                    mapped |= 1ull << image[static_cast<std::size_t>(std::countr_zero(m))];
                acols.push_back(mapped);
            }
            std::sort(acols.begin(), acols.end());
            return acols == bcols;
        }
        for (int t = 0; t < nx; ++t) {
            if (used[static_cast<std::size_t>(t)] || b.deg_x(t) != a.deg_x(i)) continue;
            used[static_cast<std::size_t>(t)] = true;
            image[static_cast<std::size_t>(i)] = t;
            if (self(self, i + 1)) return true;
            used[static_cast<std::size_t>(t)] = false;
        }
        return false;
    };
    return dfs(dfs, 0);
}

}  // namespace detail

/// Bipartite isomorphism (allowing the parts to swap roles) by backtracking
/// over X images with degree pruning. Exponential; for small test graphs.
inline bool bipartite_isomorphic(const BipartiteGraph& a, const BipartiteGraph& b) {
    if (a.edge_count() != b.edge_count()) return false;
    if (a.nx() == b.nx() && a.ny() == b.ny() && detail::iso_same_orientation(a, b)) return true;
    BipartiteGraph bt = b.transposed();
    return a.nx() == bt.nx() && a.ny() == bt.ny() && detail::iso_same_orientation(a, bt);
}

/// Seeded relabeling within each part.
inline BipartiteGraph permuted(const BipartiteGraph& g, std::uint64_t seed) {
    bht::detail::SplitMix rng(seed);
    std::vector<int> px(static_cast<std::size_t>(g.nx())), py(static_cast<std::size_t>(g.ny()));
    std::iota(px.begin(), px.end(), 0);
    std::iota(py.begin(), py.end(), 0);
    for (std::size_t i = px.size(); i > 1; --i) std::swap(px[i - 1], px[rng.next_below(i)]);
    for (std::size_t j = py.size(); j > 1; --j) std::swap(py[j - 1], py[rng.next_below(j)]);
    BipartiteGraph out(g.nx(), g.ny());
    for (auto [x, y] : g.edges()) out = out.with_edge(px[static_cast<std::size_t>(x)], py[static_cast<std::size_t>(y)]);
    return out;
}

}  // namespace oracle
