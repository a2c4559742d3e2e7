#include <catch2/catch_amalgamated.hpp>

#include "bht/hamilton.hpp"
#include "bht/toughness.hpp"
#include "bht/verify.hpp"
#include "oracles.hpp"

using namespace bht;

namespace {

BipartiteGraph c6() {
    BipartiteGraph g(3, 3);
    for (auto [x, y] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}}) g = g.with_edge(x, y);
    return g;
}

std::uint64_t to_mask(const std::vector<Vertex>& s, Part part) {
    std::uint64_t m = 0;
    for (const Vertex& v : s)
        if (v.part == part) m |= 1ull << v.index;
    return m;
}

}  // namespace

TEST_CASE("component counting") {
    CHECK(count_components(complete_bipartite(3, 3), std::vector<Vertex>{vx(0)}) == 1);
    CHECK(count_components(extremal_gnn(5), std::vector<Vertex>{vx(0), vx(1), vx(2), vx(3)}) == 4);
    CHECK(count_components(c6(), std::vector<Vertex>{vx(0), vx(1)}) == 2);
    CHECK(count_components(BipartiteGraph(3, 2), std::vector<Vertex>{}) == 5);  // isolated vertices count
    CHECK_THROWS_AS(count_components(c6(), std::vector<Vertex>{vy(3)}), std::invalid_argument);

    // mixed deletions against the plain BFS oracle
    for (std::uint64_t s = 0; s < 40; ++s) {
        BipartiteGraph g = sample_bipartite(6, 0.35, 4200 + s);
        std::vector<Vertex> del;
        std::uint64_t pick = detail::splitmix64(s);
        for (int i = 0; i < 6; ++i) {
            if (pick >> i & 1) del.push_back(vx(i));
            if (pick >> (8 + i) & 1) del.push_back(vy(i));
        }
        CHECK(count_components(g, del) ==
              oracle::components_plain(g, to_mask(del, Part::X), to_mask(del, Part::Y)));
    }
}

TEST_CASE("bipartite toughness witnesses") {
    ToughnessWitness w = bipartite_toughness(c6());
    CHECK(w.side == Part::X);
    CHECK(w.vertices == std::vector<int>{0, 1});
    CHECK(w.components == 2);
    CHECK(w.ratio() == std::pair<long, long>{2, 2});

    ToughnessWitness g5w = bipartite_toughness(extremal_gnn(5));
    CHECK(g5w.ratio().first == g5w.ratio().second);  // ratio exactly 1

    CHECK_THROWS_AS(bipartite_toughness(complete_bipartite(3, 3)), std::domain_error);
    CHECK_THROWS_AS(bipartite_toughness(complete_bipartite(2, 5)), std::domain_error);
}

TEST_CASE("witnesses are independently checkable") {
    for (std::uint64_t s = 0; s < 60; ++s) {
        BipartiteGraph g = sample_bipartite(2 + static_cast<int>(s % 5), 0.5, 910 + s);
        if (g.is_complete()) continue;
        ToughnessWitness w = bipartite_toughness(g);
        std::vector<Vertex> del;
        for (int i : w.vertices) del.push_back({w.side, i});
        CHECK(count_components(g, del) == w.components);
        CHECK(w.components > 1);
        CHECK(static_cast<int>(w.vertices.size()) <
              (w.side == Part::X ? g.nx() : g.ny()));  // proper subset
    }
}

TEST_CASE("one-tough decision") {
    CHECK(is_one_tough(extremal_gnn(16)).one_tough);
    CHECK(is_one_tough(complete_bipartite(3, 3)).one_tough);  // t^B undefined; treated 1-tough
    CHECK(is_one_tough(complete_bipartite(4, 2)).one_tough);

    // X = {u1,u2}, Y = {v1,v2}, edges u1v1, u1v2, u2v1: removing u1 isolates v2
    BipartiteGraph g(2, 2);
    g = g.with_edge(0, 0).with_edge(0, 1).with_edge(1, 0);
    OneToughReport rep = is_one_tough(g);
    REQUIRE_FALSE(rep.one_tough);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->side == Part::X);
    CHECK(rep.witness->vertices == std::vector<int>{0});
    CHECK(rep.witness->components == 2);

    // disconnected graphs fail with the empty cut
    BipartiteGraph disc(2, 2);
    disc = disc.with_edge(0, 0).with_edge(1, 1);
    OneToughReport drep = is_one_tough(disc);
    REQUIRE_FALSE(drep.one_tough);
    REQUIRE(drep.witness.has_value());
    CHECK(drep.witness->vertices.empty());
    CHECK(drep.witness->components == 2);
}

TEST_CASE("both toughness routines agree with brute force") {
    const auto check_graph = [](const BipartiteGraph& g) {
        oracle::BruteToughness bt = oracle::brute_toughness(g);
        OneToughReport rep = is_one_tough(g);
        if (!bt.defined) {
            REQUIRE(rep.one_tough);
            return;
        }
        REQUIRE(rep.one_tough == bt.one_tough);
        ToughnessWitness w = bipartite_toughness(g);
        // same minimal ratio, compared exactly
        REQUIRE(static_cast<long>(w.vertices.size()) * bt.comps == bt.size * w.components);
        REQUIRE(rep.one_tough == (w.ratio().first >= w.ratio().second));
        if (!rep.one_tough) {
            std::vector<Vertex> del;
            for (int i : rep.witness->vertices) del.push_back({rep.witness->side, i});
            REQUIRE(count_components(g, del) == rep.witness->components);
            REQUIRE(rep.witness->components > std::max<long>(1, static_cast<long>(del.size())));
        }
    };
    enumerate_balanced(3, check_graph);
    for (std::uint64_t s = 0; s < 80; ++s)
        check_graph(sample_bipartite(4 + static_cast<int>(s % 3), s % 2 ? 0.35 : 0.6, 5500 + s));
}

TEST_CASE("adding an edge never lowers the toughness") {
    for (std::uint64_t s = 0; s < 60; ++s) {
        BipartiteGraph g = sample_bipartite(5, 0.4, 660 + s);
        if (g.is_complete()) continue;
        detail::SplitMix rng(s);
        int x = static_cast<int>(rng.next_below(5)), y = static_cast<int>(rng.next_below(5));
        if (g.has_edge(x, y)) continue;
        BipartiteGraph g2 = g.with_edge(x, y);
        if (g2.is_complete()) continue;
        ToughnessWitness a = bipartite_toughness(g), b = bipartite_toughness(g2);
        // b.ratio >= a.ratio, compared exactly
        CHECK(static_cast<long>(b.vertices.size()) * a.components >=
              static_cast<long>(a.vertices.size()) * b.components);
    }
}

TEST_CASE("graphs that are not 1-tough are never Hamiltonian") {
    for (int n = 1; n <= 4; ++n)
        enumerate_balanced(n, [](const BipartiteGraph& g) {
            if (!is_one_tough(g).one_tough) REQUIRE_FALSE(find_hamilton_cycle(g).has_value());
        });
}

TEST_CASE("part-size limit refusal and override") {
    // K_{25,25} minus a perfect matching: dense, every co-neighbor pair intact,
    // so the pruned search is instant once allowed to run
    BipartiteGraph g(25, 25);
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < 25; ++i) rows.push_back(mask_below(25) & ~(1ull << i));
    g = BipartiteGraph::from_rows(25, 25, std::move(rows));

    CHECK_THROWS_AS(is_one_tough(g), limit_error);
    CHECK_THROWS_AS(bipartite_toughness(g), limit_error);
    CHECK(is_one_tough(g, 25).one_tough);
}
