#include <catch2/catch_amalgamated.hpp>

#include "bht/bigraph.hpp"
#include "bht/io.hpp"
#include "bht/verify.hpp"

using namespace bht;

namespace {

BipartiteGraph c6() {
    // u1 v1 u2 v2 u3 v3 u1 as a bipartite 3+3 graph
    BipartiteGraph g(3, 3);
    for (auto [x, y] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}}) g = g.with_edge(x, y);
    return g;
}

}  // namespace

TEST_CASE("complete bipartite construction") {
    BipartiteGraph k33 = complete_bipartite(3, 3);
    CHECK(k33.edge_count() == 9);
    for (int i = 0; i < 3; ++i) CHECK(k33.deg_x(i) == 3);
    for (int j = 0; j < 3; ++j) CHECK(k33.deg_y(j) == 3);

    BipartiteGraph big = complete_bipartite(16, 13);
    CHECK(big.edge_count() == 208);
    CHECK(big.deg_x(0) == 13);
    CHECK(big.deg_y(0) == 16);

    BipartiteGraph empty = complete_bipartite(0, 5);
    CHECK(empty.nx() == 0);
    CHECK(empty.ny() == 5);
    CHECK(empty.edge_count() == 0);

    CHECK_THROWS_AS(complete_bipartite(65, 1), limit_error);
    CHECK_THROWS_AS(complete_bipartite(-1, 1), std::invalid_argument);
}

TEST_CASE("extremal family construction") {
    CHECK_THROWS_AS(extremal_gnn(4), std::invalid_argument);

    BipartiteGraph g5 = extremal_gnn(5);
    CHECK(g5.edge_count() == 16);  // 5*2 + 6

    BipartiteGraph g16 = extremal_gnn(16);
    CHECK(g16.deg_y(0) == 2);    // v_1
    CHECK(g16.deg_x(0) == 16);   // u_1
    CHECK(g16.deg_x(4) == 13);   // u_5
    CHECK(g16.col(0) == 0b11ull);         // v_1 ~ u_1, u_2
    CHECK(g16.col(1) == 0b101ull);        // v_2 ~ u_1, u_3
    CHECK(g16.col(2) == 0b1001ull);       // v_3 ~ u_1, u_4

    for (int n = 5; n <= 24; ++n) {
        BipartiteGraph g = extremal_gnn(n);
        CHECK(g.edge_count() == long(n) * (n - 3) + 6);
        // exactly three degree-2 vertices in Y, common neighbor u_1,
        // pairwise distinct second neighbors
        std::vector<int> deg2;
        for (int j = 0; j < n; ++j)
            if (g.deg_y(j) == 2) deg2.push_back(j);
        REQUIRE(deg2 == std::vector<int>{0, 1, 2});
        std::uint64_t common = g.col(0) & g.col(1) & g.col(2);
        CHECK(common == 1ull);
        std::uint64_t seconds = 0;
        for (int j : deg2) seconds |= g.col(j) & ~1ull;
        CHECK(std::popcount(seconds) == 3);
    }
}

TEST_CASE("degree sums equal the edge count") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        BipartiteGraph g = sample_bipartite(7, 0.4, s);
        long dx = 0, dy = 0;
        for (int i = 0; i < g.nx(); ++i) dx += g.deg_x(i);
        for (int j = 0; j < g.ny(); ++j) dy += g.deg_y(j);
        CHECK(dx == g.edge_count());
        CHECK(dy == g.edge_count());
    }
}

TEST_CASE("vertex deletion") {
    BipartiteGraph k33 = complete_bipartite(3, 3);
    BipartiteGraph d = delete_vertices(k33, std::vector<Vertex>{vx(0)});
    CHECK(d.nx() == 2);
    CHECK(d.ny() == 3);
    CHECK(d.edge_count() == 6);  // K_{2,3}

    BipartiteGraph g5 = extremal_gnn(5);
    BipartiteGraph r = delete_vertices(g5, std::vector<Vertex>{vx(0), vx(1), vx(2), vx(3)});
    CHECK(r.nx() == 1);
    CHECK(r.deg_y(0) == 0);
    CHECK(r.deg_y(1) == 0);
    CHECK(r.deg_y(2) == 0);
    CHECK(r.deg_y(3) == 1);
    CHECK(r.deg_y(4) == 1);

    CHECK(delete_vertices(g5, std::vector<Vertex>{}) == g5);
    CHECK_THROWS_AS(delete_vertices(g5, std::vector<Vertex>{vx(5)}), std::invalid_argument);

    // composition: (G - S) - T == G - (S u T) for disjoint S, T
    for (std::uint64_t s = 0; s < 10; ++s) {
        BipartiteGraph g = sample_bipartite(6, 0.5, 100 + s);
        std::vector<Vertex> sv{vx(1), vy(4)}, tv{vx(3), vy(0)};
        std::vector<Vertex> both{vx(1), vx(3), vy(0), vy(4)};
        // T's indices shift after deleting S: x3 -> x2 (x1 gone), y0 stays
        std::vector<Vertex> t_shifted{vx(2), vy(0)};
        CHECK(delete_vertices(delete_vertices(g, sv), t_shifted) == delete_vertices(g, both));
    }
}

TEST_CASE("edges between subsets") {
    BipartiteGraph k33 = complete_bipartite(3, 3);
    CHECK(edges_between(k33, {0, 1, 2}, {0, 1, 2}) == 9);
    CHECK(edges_between(k33, {}, {0, 1, 2}) == 0);

    BipartiteGraph g16 = extremal_gnn(16);
    std::vector<int> all_x, y0;
    for (int i = 0; i < 16; ++i) all_x.push_back(i);
    for (int j = 3; j < 16; ++j) y0.push_back(j);
    CHECK(edges_between(g16, all_x, y0) == 208);  // the K_{16,13} core

    CHECK_THROWS_AS(edges_between(k33, {3}, {}), std::invalid_argument);
}

TEST_CASE("graph6 codec round trips") {
    // reference strings checked against an independent encoder
    CHECK(encode_graph6(c6()) == "EEY_");
    CHECK(encode_graph6(complete_bipartite(3, 3)) == "EFz_");
    CHECK(encode_graph6(extremal_gnn(5)) == "I?BDCbw}?");

    for (const BipartiteGraph& g : {c6(), complete_bipartite(3, 3), complete_bipartite(1, 1), extremal_gnn(5),
                                    extremal_gnn(16), complete_bipartite(63, 63)}) {
        GraphDocument doc;
        doc.format = GraphFormat::graph6;
        doc.payload = encode_graph6(g);
        CHECK(load_graph(doc) == g);
    }
}

TEST_CASE("graph6 rejects what it cannot represent faithfully") {
    GraphDocument doc;
    doc.format = GraphFormat::graph6;

    doc.payload = "Bw";  // triangle
    CHECK_THROWS_WITH(load_graph(doc), Catch::Matchers::ContainsSubstring("not bipartite"));

    doc.payload = "C`";  // two disjoint edges: bipartite but the bipartition is ambiguous
    CHECK_THROWS_WITH(load_graph(doc), Catch::Matchers::ContainsSubstring("unambiguous"));

    // the same graph with declared parts is fine
    doc.declared_parts = {{0, 2}, {1, 3}};
    BipartiteGraph g = load_graph(doc);
    CHECK(g.nx() == 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 0));
    CHECK(g.has_edge(1, 1));

    // declared parts must cover, not overlap, and respect the edges
    doc.declared_parts = {{0, 1}, {2, 3}};
    CHECK_THROWS_WITH(load_graph(doc), Catch::Matchers::ContainsSubstring("same declared part"));
    doc.declared_parts = {{0}, {1, 3}};
    CHECK_THROWS_AS(load_graph(doc), parse_error);

    doc.declared_parts.reset();
    doc.payload = "B";  // truncated
    CHECK_THROWS_AS(load_graph(doc), parse_error);
    doc.payload = "Bw  extra";
    CHECK_THROWS_AS(load_graph(doc), parse_error);
    doc.payload = std::string(1, char(20));
    CHECK_THROWS_AS(load_graph(doc), parse_error);
    doc.payload = "";
    CHECK_THROWS_AS(load_graph(doc), parse_error);
}

TEST_CASE("edge-json codec") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        BipartiteGraph g = sample_bipartite(6, 0.5, 500 + s);
        GraphDocument doc;
        doc.format = GraphFormat::edge_json;
        doc.payload = encode_edge_json(g);
        CHECK(load_graph(doc) == g);
    }

    // disconnected and unbalanced graphs round-trip too; parts are explicit
    BipartiteGraph odd = complete_bipartite(2, 5).without_edge(0, 0);
    GraphDocument doc;
    doc.format = GraphFormat::edge_json;
    doc.payload = encode_edge_json(odd);
    CHECK(load_graph(doc) == odd);

    const auto fails = [](const std::string& payload) {
        GraphDocument d;
        d.format = GraphFormat::edge_json;
        d.payload = payload;
        CHECK_THROWS_AS(load_graph(d), std::runtime_error);
    };
    fails("{");
    fails("[]");
    fails(R"({"nx": 2, "ny": 2})");
    fails(R"({"nx": 2, "ny": 2, "edges": [[0]]})");
    fails(R"({"nx": 2, "ny": 2, "edges": [[0, 2]]})");
    fails(R"({"nx": 2, "ny": 2, "edges": [[0, 0], [0, 0]]})");
    fails(R"({"nx": -1, "ny": 2, "edges": []})");

    GraphDocument big;
    big.format = GraphFormat::edge_json;
    big.payload = R"({"nx": 65, "ny": 2, "edges": []})";
    CHECK_THROWS_AS(load_graph(big), limit_error);
}

TEST_CASE("graph hash is stable and shape-sensitive") {
    BipartiteGraph a = complete_bipartite(3, 3), b = complete_bipartite(3, 3);
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != a.without_edge(0, 0).hash());
    CHECK(complete_bipartite(2, 3).hash() != complete_bipartite(3, 2).hash());
}
