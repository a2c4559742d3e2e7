#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "bht/bigraph.hpp"
#include "bht/detail/rng.hpp"

namespace bht {

// ---------------------------------------------------------------------------
// Certificates. Each one is checkable against the host graph on its own.

/// Alternating vertex sequence x, y, x, y, ... of length 2n; consecutive
/// vertices (cyclically) are adjacent.
struct HamiltonCycle {
    std::vector<Vertex> order;
};

/// Spanning edge set in which every vertex has degree exactly 2, i.e. a
/// disjoint union of cycles covering V.
struct TwoFactor {
    std::vector<std::pair<int, int>> edges;  // (x, y), sorted
};

/// Vertex-disjoint paths whose end-vertices all lie in X and whose Y-vertices
/// are exactly the three designated special vertices.
struct GoodLinearForest {
    std::array<int, 3> special{};                 // ascending Y indices
    std::vector<std::vector<Vertex>> paths;       // each path alternates X,Y,...,X
};

inline bool is_valid_hamilton_cycle(const BipartiteGraph& g, const HamiltonCycle& c) {
    if (!g.balanced() || g.nx() < 2) return false;
    const int n = g.nx();
    if (static_cast<int>(c.order.size()) != 2 * n) return false;
    std::uint64_t seen_x = 0, seen_y = 0;
    for (std::size_t i = 0; i < c.order.size(); ++i) {
        const Vertex& v = c.order[i];
        Part expect = i % 2 == 0 ? Part::X : Part::Y;
        if (v.part != expect || v.index < 0 || v.index >= n) return false;
        std::uint64_t& seen = v.part == Part::X ? seen_x : seen_y;
        if (seen >> v.index & 1) return false;
        seen |= 1ull << v.index;
    }
    for (std::size_t i = 0; i < c.order.size(); ++i) {
        const Vertex& a = c.order[i];
        const Vertex& b = c.order[(i + 1) % c.order.size()];
        int x = a.part == Part::X ? a.index : b.index;
        int y = a.part == Part::X ? b.index : a.index;
        if (!g.has_edge(x, y)) return false;
    }
    return true;
}

inline bool is_valid_two_factor(const BipartiteGraph& g, const TwoFactor& f) {
    std::vector<int> dx(static_cast<std::size_t>(g.nx()), 0), dy(static_cast<std::size_t>(g.ny()), 0);
    std::uint64_t seen[64] = {};
    for (auto [x, y] : f.edges) {
        if (x < 0 || x >= g.nx() || y < 0 || y >= g.ny() || !g.has_edge(x, y)) return false;
        if (seen[x] >> y & 1) return false;
        seen[x] |= 1ull << y;
        ++dx[static_cast<std::size_t>(x)];
        ++dy[static_cast<std::size_t>(y)];
    }
    for (int d : dx)
        if (d != 2) return false;
    for (int d : dy)
        if (d != 2) return false;
    return true;
}

inline bool is_valid_good_linear_forest(const BipartiteGraph& g, const GoodLinearForest& f) {
    std::uint64_t special_mask = 0;
    for (int s : f.special) {
        if (s < 0 || s >= g.ny() || (special_mask >> s & 1)) return false;
        special_mask |= 1ull << s;
    }
    if (f.paths.empty() || f.paths.size() > 3) return false;
    std::uint64_t used_x = 0, used_y = 0;
    for (const auto& path : f.paths) {
        if (path.size() < 3 || path.size() % 2 == 0) return false;
        for (std::size_t i = 0; i < path.size(); ++i) {
            const Vertex& v = path[i];
            Part expect = i % 2 == 0 ? Part::X : Part::Y;
            int limit = expect == Part::X ? g.nx() : g.ny();
            if (v.part != expect || v.index < 0 || v.index >= limit) return false;
            std::uint64_t& used = v.part == Part::X ? used_x : used_y;
            if (used >> v.index & 1) return false;
            used |= 1ull << v.index;
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int x = path[i].part == Part::X ? path[i].index : path[i + 1].index;
            int y = path[i].part == Part::X ? path[i + 1].index : path[i].index;
            if (!g.has_edge(x, y)) return false;
        }
    }
    return used_y == special_mask;
}

// ---------------------------------------------------------------------------
// Bipartite closure.

namespace detail {

struct ClosureTrace {
    BipartiteGraph graph;
    std::vector<std::pair<int, int>> added;  // in addition order
};

// Worklist closure: a vertex re-enters the queue whenever its degree changes,
// and processing a vertex re-examines only its non-neighbors. `order_seed`
// nonzero pops the worklist pseudo-randomly instead of FIFO; the closure is
// order-independent, which the test suites verify by comparing the two.
inline ClosureTrace close_with_order(const BipartiteGraph& g, std::uint64_t order_seed) {
    if (!g.balanced()) throw std::invalid_argument("bipartite closure needs a balanced graph");
    const int n = g.nx();
    std::vector<std::uint64_t> rows;
    std::vector<int> degx, degy;
    for (int i = 0; i < n; ++i) {
        rows.push_back(g.row(i));
        degx.push_back(g.deg_x(i));
    }
    for (int j = 0; j < n; ++j) degy.push_back(g.deg_y(j));

    std::vector<Vertex> work;
    for (int i = 0; i < n; ++i) work.push_back(vx(i));
    SplitMix rng(order_seed);

    ClosureTrace out;
    while (!work.empty()) {
        Vertex v;
        if (order_seed == 0) {  // FIFO is the canonical order
            v = work.front();
            work.erase(work.begin());
        } else {
            std::size_t k = static_cast<std::size_t>(rng.next_below(work.size()));
            v = work[k];
            work[k] = work.back();
            work.pop_back();
        }
        if (v.part == Part::X) {
            int x = v.index;
            for (std::uint64_t m = mask_below(n) & ~rows[static_cast<std::size_t>(x)]; m; m &= m - 1) {
                int y = std::countr_zero(m);
                if (degx[static_cast<std::size_t>(x)] + degy[static_cast<std::size_t>(y)] >= n + 1) {
                    rows[static_cast<std::size_t>(x)] |= 1ull << y;
                    ++degx[static_cast<std::size_t>(x)];
                    ++degy[static_cast<std::size_t>(y)];
                    out.added.emplace_back(x, y);
                    work.push_back(vx(x));
                    work.push_back(vy(y));
                }
            }
        } else {
            int y = v.index;
            for (int x = 0; x < n; ++x) {
                if (rows[static_cast<std::size_t>(x)] >> y & 1) continue;
                if (degx[static_cast<std::size_t>(x)] + degy[static_cast<std::size_t>(y)] >= n + 1) {
                    rows[static_cast<std::size_t>(x)] |= 1ull << y;
                    ++degx[static_cast<std::size_t>(x)];
                    ++degy[static_cast<std::size_t>(y)];
                    out.added.emplace_back(x, y);
                    work.push_back(vx(x));
                    work.push_back(vy(y));
                }
            }
        }
    }
    out.graph = BipartiteGraph::from_rows(n, n, std::move(rows));
    return out;
}

}  // namespace detail

/// The bipartite closure: repeatedly join non-adjacent x in X, y in Y with
/// d(x) + d(y) >= n + 1 until no such pair remains. Independent of the
/// processing order.
inline BipartiteGraph bipartite_closure(const BipartiteGraph& g) {
    return detail::close_with_order(g, 0).graph;
}

/// Same fixpoint computed under a seeded pseudo-random processing order;
/// exists so determinism suites can compare many orders.
inline BipartiteGraph bipartite_closure_ordered(const BipartiteGraph& g, std::uint64_t order_seed) {
    return detail::close_with_order(g, order_seed | 1).graph;
}

// ---------------------------------------------------------------------------
// Hamilton cycle search.

enum class HamiltonMode { direct, closure_first };

namespace detail {

struct CycleSearch {
    const BipartiteGraph& g;
    int n;
    std::vector<std::uint64_t> cols;
    std::uint64_t vis_x = 0, vis_y = 0;
    std::vector<Vertex> path;
    std::uint64_t budget = 0, steps = 0;

    explicit CycleSearch(const BipartiteGraph& graph, std::uint64_t budget_) : g(graph), n(graph.nx()), budget(budget_) {
        for (int j = 0; j < n; ++j) cols.push_back(g.col(j));
    }

    // Unvisited w must keep >= 2 usable cycle slots: unvisited neighbors plus
    // the path tip and (for Y vertices) the fixed start u_1. The tip and the
    // start each have a single remaining slot, so at most one vertex may
    // depend on either of them; at most one unvisited degree-2 Y vertex can
    // close the cycle through u_1, which is what kills the extremal family
    // without touching its complete core.
    bool feasible(Vertex tip) const {
        std::uint64_t ux = mask_below(n) & ~vis_x;
        std::uint64_t uy = mask_below(n) & ~vis_y;
        int need_start = 0, need_tip = 0;
        for (std::uint64_t m = uy; m; m &= m - 1) {
            int y = std::countr_zero(m);
            std::uint64_t nbrs = cols[static_cast<std::size_t>(y)];
            int avail = std::popcount(nbrs & ux);
            bool tip_adj = tip.part == Part::X && (nbrs >> tip.index & 1);
            bool start_adj = (nbrs & 1) != 0;  // start is always u_1
            avail += tip_adj + start_adj;
            if (avail < 2) return false;
            if (avail == 2 && start_adj && ++need_start > 1) return false;
            if (avail == 2 && tip_adj && ++need_tip > 1) return false;
        }
        for (std::uint64_t m = ux; m; m &= m - 1) {
            int x = std::countr_zero(m);
            std::uint64_t nbrs = g.row(x);
            int avail = std::popcount(nbrs & uy);
            bool tip_adj = tip.part == Part::Y && (nbrs >> tip.index & 1);
            avail += tip_adj;
            if (avail < 2) return false;
            if (avail == 2 && tip_adj && ++need_tip > 1) return false;
        }
        // Remainder reachability from the tip.
        if (ux | uy) {
            std::uint64_t fx = 0, fy = 0;
            if (tip.part == Part::X) fy = g.row(tip.index) & uy;
            else fx = cols[static_cast<std::size_t>(tip.index)] & ux;
            std::uint64_t rx = ux & ~fx, ry = uy & ~fy;
            while (fx | fy) {
                std::uint64_t nfy = 0, nfx = 0;
                for (std::uint64_t m = fx; m; m &= m - 1) nfy |= g.row(std::countr_zero(m));
                for (std::uint64_t m = fy; m; m &= m - 1) nfx |= cols[static_cast<std::size_t>(std::countr_zero(m))];
                fx = nfx & rx;
                fy = nfy & ry;
                rx &= ~fx;
                ry &= ~fy;
            }
            if (rx | ry) return false;
        }
        return true;
    }

    bool extend() {
        if (budget && ++steps > budget)
            throw limit_error("hamilton search: step budget exhausted");
        Vertex tip = path.back();
        if (static_cast<int>(path.size()) == 2 * n)
            return (cols[static_cast<std::size_t>(tip.index)] & 1) != 0;  // close at u_1
        if (tip.part == Part::X) {
            for (std::uint64_t m = g.row(tip.index) & ~vis_y; m; m &= m - 1) {
                int y = std::countr_zero(m);
                vis_y |= 1ull << y;
                path.push_back(vy(y));
                if (feasible(path.back()) && extend()) return true;
                path.pop_back();
                vis_y &= ~(1ull << y);
            }
        } else {
            for (std::uint64_t m = cols[static_cast<std::size_t>(tip.index)] & ~vis_x; m; m &= m - 1) {
                int x = std::countr_zero(m);
                vis_x |= 1ull << x;
                path.push_back(vx(x));
                if (feasible(path.back()) && extend()) return true;
                path.pop_back();
                vis_x &= ~(1ull << x);
            }
        }
        return false;
    }
};

inline std::optional<HamiltonCycle> find_cycle_direct(const BipartiteGraph& g, std::uint64_t budget) {
    const int n = g.nx();
    if (n < 2) return std::nullopt;
    if (g.min_degree() < 2) return std::nullopt;
    CycleSearch s(g, budget);
    s.vis_x = 1;
    s.path.push_back(vx(0));
    if (s.extend()) return HamiltonCycle{s.path};
    return std::nullopt;
}

// Rebuild a Hamilton cycle that uses the closure edge (x, y) into one that
// does not, inside `level` = the graph just before that edge was added.
// Orient the cycle as a path p_0 = x, ..., p_{2n-1} = y. Because
// d(x) + d(y) >= n + 1 held when the edge was added, some even position e
// has y ~ p_e and x ~ p_{e+1}, and splicing the path there closes a cycle
// that avoids (x, y).
inline HamiltonCycle relink_without_edge(const BipartiteGraph& level, const HamiltonCycle& c, int x, int y) {
    const int len = static_cast<int>(c.order.size());
    std::vector<Vertex> p;
    for (int i = 0; i < len; ++i) {
        const Vertex& a = c.order[static_cast<std::size_t>(i)];
        const Vertex& b = c.order[static_cast<std::size_t>((i + 1) % len)];
        bool match = (a == vx(x) && b == vy(y)) || (a == vy(y) && b == vx(x));
        if (!match) continue;
        // Walk the long way round, from x away from y.
        int start = a == vx(x) ? i : (i + 1) % len;
        int step = a == vx(x) ? -1 : 1;
        for (int k = 0, pos = start; k < len; ++k, pos = (pos + step + len) % len)
            p.push_back(c.order[static_cast<std::size_t>(pos)]);
        break;
    }
    if (p.empty()) throw std::logic_error("relink: edge not on cycle");
    for (int e = 0; e + 1 < len; e += 2) {
        if (level.has_edge(p[static_cast<std::size_t>(e)].index, y) &&
            level.has_edge(x, p[static_cast<std::size_t>(e + 1)].index)) {
            std::vector<Vertex> out(p.begin(), p.begin() + e + 1);
            for (int k = len - 1; k > e; --k) out.push_back(p[static_cast<std::size_t>(k)]);
            return HamiltonCycle{std::move(out)};
        }
    }
    throw std::logic_error("relink: no crossing pair despite degree condition");
}

}  // namespace detail

/// Exact Hamilton cycle search. The direct mode backtracks over alternating
/// extensions from u_1, taking the lowest-index unvisited neighbor first, so
/// certificates are reproducible. closure_first searches the bipartite
/// closure instead and then peels the added edges in reverse, relinking the
/// cycle at each step; the returned cycle is always a cycle of G itself.
/// `step_budget` = 0 means unlimited; a positive budget throws limit_error
/// when exhausted.
inline std::optional<HamiltonCycle> find_hamilton_cycle(const BipartiteGraph& g,
                                                        HamiltonMode mode = HamiltonMode::direct,
                                                        std::uint64_t step_budget = 0) {
    if (!g.balanced()) throw std::invalid_argument("hamilton search needs a balanced graph");
    if (mode == HamiltonMode::direct) return detail::find_cycle_direct(g, step_budget);

    detail::ClosureTrace t = detail::close_with_order(g, 0);
    std::optional<HamiltonCycle> cyc = detail::find_cycle_direct(t.graph, step_budget);
    if (!cyc) return std::nullopt;
    BipartiteGraph level = t.graph;
    for (std::size_t k = t.added.size(); k-- > 0;) {
        auto [x, y] = t.added[k];
        level = level.without_edge(x, y);
        bool used = false;
        for (std::size_t i = 0; i < cyc->order.size() && !used; ++i) {
            const Vertex& a = cyc->order[i];
            const Vertex& b = cyc->order[(i + 1) % cyc->order.size()];
            used = (a == vx(x) && b == vy(y)) || (a == vy(y) && b == vx(x));
        }
        if (used) *cyc = detail::relink_without_edge(level, *cyc, x, y);
    }
    return cyc;
}

// ---------------------------------------------------------------------------
// 2-factor via maximum flow.

namespace detail {

// Dinic on the unit network: source -> X (cap 2), X -> Y per edge (cap 1),
// Y -> sink (cap 2). A 2-factor exists iff the max flow saturates everything.
struct FlowNet {
    struct Arc {
        int to, cap;
        std::size_t rev;
    };
    std::vector<std::vector<Arc>> adj;
    std::vector<int> level, iter;

    explicit FlowNet(int nodes) : adj(static_cast<std::size_t>(nodes)) {}

    void add(int a, int b, int cap) {
        adj[static_cast<std::size_t>(a)].push_back({b, cap, adj[static_cast<std::size_t>(b)].size()});
        adj[static_cast<std::size_t>(b)].push_back({a, 0, adj[static_cast<std::size_t>(a)].size() - 1});
    }

    bool bfs(int s, int t) {
        level.assign(adj.size(), -1);
        std::deque<int> q{s};
        level[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (const Arc& a : adj[static_cast<std::size_t>(v)])
                if (a.cap > 0 && level[static_cast<std::size_t>(a.to)] < 0) {
                    level[static_cast<std::size_t>(a.to)] = level[static_cast<std::size_t>(v)] + 1;
                    q.push_back(a.to);
                }
        }
        return level[static_cast<std::size_t>(t)] >= 0;
    }

    int dfs(int v, int t, int f) {
        if (v == t) return f;
        for (int& i = iter[static_cast<std::size_t>(v)]; i < static_cast<int>(adj[static_cast<std::size_t>(v)].size()); ++i) {
            Arc& a = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
            if (a.cap <= 0 || level[static_cast<std::size_t>(a.to)] != level[static_cast<std::size_t>(v)] + 1) continue;
            int d = dfs(a.to, t, std::min(f, a.cap));
            if (d > 0) {
                a.cap -= d;
                adj[static_cast<std::size_t>(a.to)][a.rev].cap += d;
                return d;
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            iter.assign(adj.size(), 0);
            while (int f = dfs(s, t, 1 << 30)) flow += f;
        }
        return flow;
    }
};

}  // namespace detail

/// Degree-constrained 2-factor found by maximum flow; returns the saturated
/// edge set, or nothing when the flow falls short of 2n.
inline std::optional<TwoFactor> find_two_factor(const BipartiteGraph& g) {
    if (!g.balanced()) throw std::invalid_argument("2-factor search needs a balanced graph");
    const int n = g.nx();
    const int src = 2 * n, sink = 2 * n + 1;
    detail::FlowNet net(2 * n + 2);
    for (int i = 0; i < n; ++i) net.add(src, i, 2);
    for (int j = 0; j < n; ++j) net.add(n + j, sink, 2);
    std::vector<std::pair<std::size_t, std::pair<int, int>>> arc_of_edge;
    for (int i = 0; i < n; ++i)
        for (std::uint64_t m = g.row(i); m; m &= m - 1) {
            int j = std::countr_zero(m);
            arc_of_edge.push_back({net.adj[static_cast<std::size_t>(i)].size(), {i, j}});
            net.add(i, n + j, 1);
        }
    if (net.max_flow(src, sink) != 2 * n) return std::nullopt;
    TwoFactor f;
    for (auto& [idx, e] : arc_of_edge)
        if (net.adj[static_cast<std::size_t>(e.first)][idx].cap == 0) f.edges.push_back(e);
    return f;
}

// ---------------------------------------------------------------------------
// Good linear forests and the constructive cycle extensions.

/// Exhaustive search for a good linear forest on the three special Y
/// vertices. Path shapes are tried with fewer paths first; within a shape,
/// special-vertex sequences are canonical (a sequence never appears alongside
/// its reversal) and X slots are filled lowest-index first, so the first hit
/// is deterministic.
inline std::optional<GoodLinearForest> find_good_linear_forest(const BipartiteGraph& g,
                                                               std::array<int, 3> special) {
    if (!g.balanced()) throw std::invalid_argument("forest search needs a balanced graph");
    std::sort(special.begin(), special.end());
    if (special[0] < 0 || special[2] >= g.ny() || special[0] == special[1] || special[1] == special[2])
        throw std::invalid_argument("three distinct special Y vertices required");
    const int a = special[0], b = special[1], c = special[2];

    // Each system is a list of Y-index sequences, one per path.
    std::vector<std::vector<std::vector<int>>> systems = {
        {{a, b, c}}, {{a, c, b}}, {{b, a, c}},        // one path
        {{a}, {b, c}}, {{b}, {a, c}}, {{c}, {a, b}},  // two paths
        {{a}, {b}, {c}},                              // three paths
    };

    std::vector<std::uint64_t> cols;
    for (int j = 0; j < g.ny(); ++j) cols.push_back(g.col(j));

    for (const auto& system : systems) {
        // Slot constraint masks, path by path: end slots see one special,
        // interior slots the intersection of two consecutive ones.
        std::vector<std::vector<std::uint64_t>> slots;
        for (const auto& ys : system) {
            std::vector<std::uint64_t> s;
            s.push_back(cols[static_cast<std::size_t>(ys.front())]);
            for (std::size_t i = 1; i < ys.size(); ++i)
                s.push_back(cols[static_cast<std::size_t>(ys[i - 1])] & cols[static_cast<std::size_t>(ys[i])]);
            s.push_back(cols[static_cast<std::size_t>(ys.back())]);
            slots.push_back(std::move(s));
        }
        std::vector<std::vector<int>> chosen(system.size());
        const auto dfs = [&](auto&& self, std::size_t pi, std::size_t si, std::uint64_t used) -> bool {
            if (pi == system.size()) return true;
            if (si == slots[pi].size()) return self(self, pi + 1, 0, used);
            for (std::uint64_t m = slots[pi][si] & ~used; m; m &= m - 1) {
                int x = std::countr_zero(m);
                chosen[pi].push_back(x);
                if (self(self, pi, si + 1, used | (1ull << x))) return true;
                chosen[pi].pop_back();
            }
            return false;
        };
        if (!dfs(dfs, 0, 0, 0)) continue;

        GoodLinearForest f;
        f.special = special;
        for (std::size_t pi = 0; pi < system.size(); ++pi) {
            std::vector<Vertex> path;
            for (std::size_t i = 0; i < system[pi].size(); ++i) {
                path.push_back(vx(chosen[pi][i]));
                path.push_back(vy(system[pi][i]));
            }
            path.push_back(vx(chosen[pi].back()));
            f.paths.push_back(std::move(path));
        }
        return f;
    }
    return std::nullopt;
}

/// Threads a good linear forest into a Hamilton cycle of H, assuming
/// H[X u Y0] is complete bipartite (Y0 = the non-special Y vertices):
/// consecutive paths are joined through the lowest-index unused Y0 vertices,
/// then the rest of the complete part is swept in index order.
inline HamiltonCycle forest_to_hamilton(const BipartiteGraph& g, const GoodLinearForest& f) {
    if (!g.balanced()) throw std::invalid_argument("forest extension needs a balanced graph");
    const int n = g.nx();
    if (!is_valid_good_linear_forest(g, f)) throw std::invalid_argument("invalid good linear forest");
    std::uint64_t special_mask = 0;
    for (int s : f.special) special_mask |= 1ull << s;
    const std::uint64_t y0 = mask_below(n) & ~special_mask;
    for (int i = 0; i < n; ++i)
        if ((g.row(i) & y0) != y0)
            throw std::invalid_argument("host graph is not complete between X and the non-special side");

    std::uint64_t used_x = 0, used_y = special_mask;
    for (const auto& path : f.paths)
        for (const Vertex& v : path)
            if (v.part == Part::X) used_x |= 1ull << v.index;

    std::vector<Vertex> order;
    for (std::size_t pi = 0; pi < f.paths.size(); ++pi) {
        if (pi > 0) {
            int conn = std::countr_zero(y0 & ~used_y);  // lowest unused connector
            used_y |= 1ull << conn;
            order.push_back(vy(conn));
        }
        for (const Vertex& v : f.paths[pi]) order.push_back(v);
    }
    std::uint64_t rest_y = y0 & ~used_y, rest_x = mask_below(n) & ~used_x;
    while (rest_y) {
        order.push_back(vy(std::countr_zero(rest_y)));
        rest_y &= rest_y - 1;
        if (rest_x) {
            order.push_back(vx(std::countr_zero(rest_x)));
            rest_x &= rest_x - 1;
        }
    }
    HamiltonCycle cycle{std::move(order)};
    if (!is_valid_hamilton_cycle(g, cycle))
        throw std::logic_error("forest extension produced an invalid cycle");
    return cycle;
}

// ---------------------------------------------------------------------------
// Extremal-family recognizer.

namespace detail {

inline bool gnn_shape_with_specials_in_y(const BipartiteGraph& g) {
    const int n = g.nx();
    std::vector<int> deg2;
    for (int j = 0; j < n; ++j)
        if (g.deg_y(j) == 2) deg2.push_back(j);
    if (deg2.size() != 3) return false;
    std::uint64_t c0 = g.col(deg2[0]), c1 = g.col(deg2[1]), c2 = g.col(deg2[2]);
    std::uint64_t common = c0 & c1 & c2;
    for (std::uint64_t m = common; m; m &= m - 1) {
        std::uint64_t hub = m & -m;
        std::uint64_t s0 = c0 & ~hub, s1 = c1 & ~hub, s2 = c2 & ~hub;
        if (!s0 || !s1 || !s2) continue;
        if (std::popcount(s0 | s1 | s2) != 3) continue;  // second neighbors must be distinct
        std::uint64_t y0 = mask_below(n);
        for (int j : deg2) y0 &= ~(1ull << j);
        bool complete = true;
        for (int i = 0; i < n && complete; ++i) complete = (g.row(i) & y0) == y0;
        if (complete) return true;
    }
    return false;
}

}  // namespace detail

/// Structural test for G being (isomorphic to) the extremal graph G_{n,n}:
/// one part holds exactly three degree-2 vertices sharing a hub neighbor with
/// pairwise distinct second neighbors, and deleting those three leaves a
/// complete bipartite graph. Part roles may be swapped.
inline bool recognize_gnn(const BipartiteGraph& g) {
    if (!g.balanced()) throw std::invalid_argument("extremal recognition needs a balanced graph");
    if (g.nx() < 5) throw std::invalid_argument("extremal family needs n >= 5");
    return detail::gnn_shape_with_specials_in_y(g) || detail::gnn_shape_with_specials_in_y(g.transposed());
}

}  // namespace bht
