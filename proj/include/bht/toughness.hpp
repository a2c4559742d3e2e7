#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bht/bigraph.hpp"

namespace bht {

inline constexpr int kDefaultToughnessLimit = 24;

/// A one-sided cut S together with the component count it leaves behind.
/// The ratio |S| / c(G-S) is kept exact as an integer pair.
struct ToughnessWitness {
    Part side = Part::X;
    std::vector<int> vertices;  // ascending indices within `side`
    long components = 0;

    std::pair<long, long> ratio() const {
        return {static_cast<long>(vertices.size()), components};
    }
    double ratio_value() const {
        return static_cast<double>(vertices.size()) / static_cast<double>(components);
    }
};

namespace detail {

// One part chosen as the cut side: `cut[i]` is vertex i's mask over the other
// side, `other[j]` the reverse view.
struct SideView {
    Part side;
    int ncut = 0, nother = 0;
    std::vector<std::uint64_t> cut, other;
};

inline SideView make_side_view(const BipartiteGraph& g, Part side) {
    SideView v;
    v.side = side;
    const BipartiteGraph t = side == Part::X ? g : g.transposed();
    v.ncut = t.nx();
    v.nother = t.ny();
    for (int i = 0; i < t.nx(); ++i) v.cut.push_back(t.row(i));
    for (int j = 0; j < t.ny(); ++j) v.other.push_back(t.col(j));
    return v;
}

// Components of G - S for S a subset of the cut side. Other-side vertices
// whose whole neighborhood fell into S are isolated; every other component
// contains a surviving cut vertex, and two survivors share a component iff
// they are linked through common other-side neighbors, so we count
// components of that co-neighbor relation over the survivors.
inline long components_after_cut(const SideView& v, std::uint64_t s) {
    long iso = 0;
    for (int j = 0; j < v.nother; ++j)
        if ((v.other[static_cast<std::size_t>(j)] & ~s) == 0) ++iso;
    std::uint64_t unvisited = mask_below(v.ncut) & ~s;
    long comps = 0;
    while (unvisited) {
        ++comps;
        std::uint64_t frontier = unvisited & -unvisited;
        unvisited &= ~frontier;
        while (frontier) {
            int i = std::countr_zero(frontier);
            frontier &= frontier - 1;
            for (std::uint64_t m = v.cut[static_cast<std::size_t>(i)]; m; m &= m - 1) {
                int j = std::countr_zero(m);
                std::uint64_t grab = v.other[static_cast<std::size_t>(j)] & unvisited;
                frontier |= grab;
                unvisited &= ~grab;
            }
        }
    }
    return iso + comps;
}

// Whether every pair of cut-side vertices has a common other-side neighbor.
// When true, the survivors always form one component, so c(G-S) is exactly
// (isolated count) + 1 and a minimal violating/minimizing S is a union of
// neighborhoods of low-degree other-side vertices.
inline bool co_neighbor_complete(const SideView& v) {
    for (int a = 1; a < v.ncut; ++a)
        for (int b = 0; b < a; ++b)
            if ((v.cut[static_cast<std::size_t>(a)] & v.cut[static_cast<std::size_t>(b)]) == 0) return false;
    return true;
}

// Upper bound on how many other-side vertices a completion of the partial cut
// `chosen` (next candidate bit >= next) can isolate, given `budget` further
// picks restricted to `allowed`.
inline int isolatable_bound(const SideView& v, std::uint64_t chosen, std::uint64_t allowed,
                            std::uint64_t next_and_up, int budget) {
    int cnt = 0;
    std::uint64_t reach = chosen | (allowed & next_and_up);
    for (int j = 0; j < v.nother; ++j) {
        std::uint64_t need = v.other[static_cast<std::size_t>(j)] & ~chosen;
        if ((v.other[static_cast<std::size_t>(j)] & ~reach) == 0 && std::popcount(need) <= budget) ++cnt;
    }
    return cnt;
}

// Depth-first enumeration of k-subsets of `pool` on one side, ascending and
// therefore lexicographic. `visit` sees each leaf's mask and its exact
// component count and returns true to stop the whole search. `rest_bound`
// bounds the component count of the surviving cut side from above.
template <typename Visit>
bool enumerate_cuts(const SideView& v, std::uint64_t pool, int k, long rest_bound, long need_components,
                    const Visit& visit) {
    std::vector<int> pool_bits;
    for (std::uint64_t m = pool; m; m &= m - 1) pool_bits.push_back(std::countr_zero(m));
    if (static_cast<int>(pool_bits.size()) < k) return false;

    const auto dfs = [&](auto&& self, std::uint64_t chosen, int from) -> bool {
        int j = std::popcount(chosen);
        if (j == k) {
            long c = components_after_cut(v, chosen);
            if (c >= need_components && visit(chosen, c)) return true;
            return false;
        }
        for (std::size_t p = static_cast<std::size_t>(from); p < pool_bits.size(); ++p) {
            if (static_cast<int>(pool_bits.size() - p) < k - j) break;
            std::uint64_t bit = 1ull << pool_bits[p];
            std::uint64_t next_and_up = ~mask_below(pool_bits[p] + 1);
            long bound = isolatable_bound(v, chosen | bit, pool, next_and_up, k - j - 1) + rest_bound;
            if (bound >= need_components && self(self, chosen | bit, static_cast<int>(p) + 1)) return true;
        }
        return false;
    };
    return dfs(dfs, 0, 0);
}

// Candidate pool for cuts of size k on the co-neighbor-complete fast path:
// only neighborhoods of other-side vertices of degree <= k can matter.
inline std::uint64_t isolation_pool(const SideView& v, int k) {
    std::uint64_t pool = 0;
    for (int j = 0; j < v.nother; ++j)
        if (std::popcount(v.other[static_cast<std::size_t>(j)]) <= k) pool |= v.other[static_cast<std::size_t>(j)];
    return pool;
}

inline std::vector<int> mask_to_indices(std::uint64_t m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

inline void check_toughness_limit(const BipartiteGraph& g, int limit) {
    if (g.nx() > limit || g.ny() > limit)
        throw limit_error("toughness search refused: part size exceeds limit " + std::to_string(limit) +
                          " (raise the limit to force the exponential search)");
}

}  // namespace detail

/// Number of connected components of G - S; isolated vertices count.
inline long count_components(const BipartiteGraph& g, std::span<const Vertex> s) {
    std::uint64_t xdel = 0, ydel = 0;
    for (const Vertex& v : s) {
        if (v.index < 0 || v.index >= (v.part == Part::X ? g.nx() : g.ny()))
            throw std::invalid_argument("vertex outside the graph");
        (v.part == Part::X ? xdel : ydel) |= 1ull << v.index;
    }
    std::uint64_t ux = mask_below(g.nx()) & ~xdel;
    std::uint64_t uy = mask_below(g.ny()) & ~ydel;
    long comps = 0;
    while (ux | uy) {
        ++comps;
        std::uint64_t fx = 0, fy = 0;
        if (ux) {
            fx = ux & -ux;
            ux &= ~fx;
        } else {
            fy = uy & -uy;
            uy &= ~fy;
        }
        while (fx | fy) {
            std::uint64_t nfy = 0, nfx = 0;
            for (std::uint64_t m = fx; m; m &= m - 1) nfy |= g.row(std::countr_zero(m));
            for (std::uint64_t m = fy; m; m &= m - 1) nfx |= g.col(std::countr_zero(m));
            fx = nfx & ux;
            fy = nfy & uy;
            ux &= ~fx;
            uy &= ~fy;
        }
    }
    return comps;
}

inline long count_components(const BipartiteGraph& g, const std::vector<Vertex>& s) {
    return count_components(g, std::span<const Vertex>(s));
}

struct OneToughReport {
    bool one_tough = true;
    std::optional<ToughnessWitness> witness;  // a violating cut when not 1-tough
};

/// Is t^B(G) >= 1? Equivalently: no proper one-sided S leaves more than
/// max(|S|, 1) components. Complete bipartite graphs, for which t^B is
/// undefined, are reported 1-tough so the theorem hypothesis stays checkable.
/// The search enumerates cuts by increasing size with an isolation-count
/// prune, restricted to unions of small neighborhoods whenever every pair of
/// cut-side vertices shares a neighbor (then survivors form one component).
inline OneToughReport is_one_tough(const BipartiteGraph& g, int limit = kDefaultToughnessLimit) {
    if (g.is_complete()) return {true, std::nullopt};
    long c0 = count_components(g, std::vector<Vertex>{});
    if (c0 > 1) {
        ToughnessWitness w;
        w.side = g.nx() > 0 ? Part::X : Part::Y;
        w.components = c0;
        return {false, w};
    }
    detail::check_toughness_limit(g, limit);
    for (Part side : {Part::X, Part::Y}) {
        detail::SideView v = detail::make_side_view(g, side);
        if (v.ncut == 0) continue;
        bool complete_co = detail::co_neighbor_complete(v);
        for (int k = 1; k < v.ncut; ++k) {
            std::uint64_t pool = complete_co ? detail::isolation_pool(v, k) : mask_below(v.ncut);
            long rest_bound = complete_co ? 1 : v.ncut - k;
            std::optional<ToughnessWitness> found;
            detail::enumerate_cuts(v, pool, k, rest_bound, k + 1, [&](std::uint64_t s, long c) {
                found = ToughnessWitness{side, detail::mask_to_indices(s), c};
                return true;
            });
            if (found) return {false, found};
        }
    }
    return {true, std::nullopt};
}

/// The bipartite toughness minimizer: a witness with minimal |S| / c(G-S)
/// over proper one-sided subsets with c(G-S) > 1. Ties break toward smaller
/// |S|, then the lexicographically smallest vertex set, with the X side
/// preferred over Y. Undefined (std::domain_error) on complete bipartite
/// graphs, which admit no such S.
inline ToughnessWitness bipartite_toughness(const BipartiteGraph& g, int limit = kDefaultToughnessLimit) {
    if (g.is_complete())
        throw std::domain_error("bipartite toughness is undefined for complete bipartite graphs");
    long c0 = count_components(g, std::vector<Vertex>{});
    if (c0 > 1) {
        ToughnessWitness w;
        w.side = g.nx() > 0 ? Part::X : Part::Y;
        w.components = c0;
        return w;  // ratio 0 cannot be beaten
    }
    detail::check_toughness_limit(g, limit);

    std::optional<ToughnessWitness> best;
    // Strictly better ratio, or equal ratio with smaller |S|. Equal (ratio,
    // size) keeps the earlier find, which the X-then-Y ascending-lex
    // enumeration order makes the canonical witness.
    const auto improves = [&](long k, long c) {
        if (!best) return true;
        long bk = static_cast<long>(best->vertices.size()), bc = best->components;
        if (k * bc != bk * c) return k * bc < bk * c;
        return k < bk;
    };

    for (Part side : {Part::X, Part::Y}) {
        detail::SideView v = detail::make_side_view(g, side);
        if (v.ncut == 0) continue;
        bool complete_co = detail::co_neighbor_complete(v);
        for (int k = 1; k < v.ncut; ++k) {
            std::uint64_t pool = complete_co ? detail::isolation_pool(v, k) : mask_below(v.ncut);
            long rest_bound = complete_co ? 1 : v.ncut - k;
            long best_possible = detail::isolatable_bound(v, 0, pool, ~0ull, k) + rest_bound;
            if (best_possible < 2 || !improves(k, best_possible)) continue;
            detail::enumerate_cuts(v, pool, k, rest_bound, 2, [&](std::uint64_t s, long c) {
                if (improves(k, c)) best = ToughnessWitness{side, detail::mask_to_indices(s), c};
                return false;  // keep scanning: later cuts may still improve
            });
        }
    }
    if (!best) throw std::domain_error("no admissible cut found");  // unreachable for non-complete G
    return *best;
}

}  // namespace bht
