#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bht/bigraph.hpp"
#include "bht/hamilton.hpp"
#include "bht/verify.hpp"

namespace bht {

enum class GraphFormat { graph6, edge_json };

/// A serialized graph plus (optionally) an explicit bipartition, given as the
/// global vertex ids of each part. edge-json payloads always carry their
/// parts; graph6 payloads never do.
struct GraphDocument {
    GraphFormat format = GraphFormat::edge_json;
    std::string payload;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> declared_parts;
};

// ---------------------------------------------------------------------------
// graph6 (McKay's format): N(n) header, then the upper triangle of the
// adjacency matrix as a big-endian bit stream, 6 bits per printable char.

namespace detail {

inline void g6_append_sixtets(std::string& out, const std::vector<bool>& bits) {
    int acc = 0, have = 0;
    for (bool b : bits) {
        acc = acc << 1 | (b ? 1 : 0);
        if (++have == 6) {
            out.push_back(static_cast<char>(acc + 63));
            acc = have = 0;
        }
    }
    if (have) out.push_back(static_cast<char>((acc << (6 - have)) + 63));
}

}  // namespace detail

/// Flattens the bipartite graph onto nx + ny vertices, X first, and encodes.
inline std::string encode_graph6(const BipartiteGraph& g) {
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    std::vector<bool> bits;
    bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            bits.push_back(i < g.nx() && j >= g.nx() && g.has_edge(i, j - g.nx()));
    detail::g6_append_sixtets(out, bits);
    return out;
}

inline std::string encode_edge_json(const BipartiteGraph& g) {
    nlohmann::json j;
    j["nx"] = g.nx();
    j["ny"] = g.ny();
    j["edges"] = nlohmann::json::array();
    for (auto [x, y] : g.edges()) j["edges"].push_back({x, y});
    return j.dump();
}

inline std::string encode_document(const BipartiteGraph& g, GraphFormat f) {
    return f == GraphFormat::graph6 ? encode_graph6(g) : encode_edge_json(g);
}

namespace detail {

struct FlatGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
};

inline FlatGraph decode_graph6(const std::string& payload) {
    std::string s = payload;
    if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    if (s.empty()) throw parse_error("graph6: empty payload");
    for (char c : s)
        if (c < 63 || c > 126) throw parse_error("graph6: byte outside the printable range");

    std::size_t pos = 0;
    long n;
    if (s[0] == '~') {
        if (s.size() >= 4 && s[1] == '~') throw parse_error("graph6: order beyond the supported range");
        if (s.size() < 4) throw parse_error("graph6: truncated header");
        n = (long(s[1] - 63) << 12) | (long(s[2] - 63) << 6) | long(s[3] - 63);
        pos = 4;
    } else {
        n = s[0] - 63;
        pos = 1;
    }
    if (n > 2 * kMaxPartSize) throw limit_error("graph6: order exceeds the 128-vertex build limit");

    const long nbits = n * (n - 1) / 2;
    const std::size_t need = static_cast<std::size_t>((nbits + 5) / 6);
    if (s.size() - pos != need) throw parse_error("graph6: payload length does not match the header");

    FlatGraph fg;
    fg.n = static_cast<int>(n);
    fg.adj.resize(static_cast<std::size_t>(n));
    long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            int ch = s[pos + static_cast<std::size_t>(bit / 6)] - 63;
            if (ch >> (5 - bit % 6) & 1) {
                fg.adj[static_cast<std::size_t>(i)].push_back(j);
                fg.adj[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    return fg;
}

// 2-coloring by breadth-first search; returns (colors, component count) or
// throws on an odd cycle.
inline std::pair<std::vector<int>, int> two_color(const FlatGraph& fg) {
    std::vector<int> color(static_cast<std::size_t>(fg.n), -1);
    int comps = 0;
    for (int start = 0; start < fg.n; ++start) {
        if (color[static_cast<std::size_t>(start)] >= 0) continue;
        ++comps;
        color[static_cast<std::size_t>(start)] = 0;
        std::vector<int> queue{start};
        for (std::size_t head = 0; head < queue.size();) {
            int v = queue[head++];
            for (int w : fg.adj[static_cast<std::size_t>(v)]) {
                if (color[static_cast<std::size_t>(w)] < 0) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
                    queue.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    throw parse_error("graph6: graph is not bipartite (odd cycle)");
                }
            }
        }
    }
    return {color, comps};
}

inline BipartiteGraph flat_to_bipartite(const FlatGraph& fg, std::vector<int> xs, std::vector<int> ys) {
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (static_cast<int>(xs.size()) > kMaxPartSize || static_cast<int>(ys.size()) > kMaxPartSize)
        throw limit_error("part size exceeds the 64-vertex build limit");
    std::vector<int> side(static_cast<std::size_t>(fg.n), -1), local(static_cast<std::size_t>(fg.n), -1);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        side[static_cast<std::size_t>(xs[k])] = 0;
        local[static_cast<std::size_t>(xs[k])] = static_cast<int>(k);
    }
    for (std::size_t k = 0; k < ys.size(); ++k) {
        if (side[static_cast<std::size_t>(ys[k])] != -1) throw parse_error("declared parts overlap");
        side[static_cast<std::size_t>(ys[k])] = 1;
        local[static_cast<std::size_t>(ys[k])] = static_cast<int>(k);
    }
    for (int v = 0; v < fg.n; ++v)
        if (side[static_cast<std::size_t>(v)] == -1) throw parse_error("declared parts do not cover every vertex");

    std::vector<std::uint64_t> rows(xs.size(), 0);
    for (int v = 0; v < fg.n; ++v)
        for (int w : fg.adj[static_cast<std::size_t>(v)]) {
            if (v > w) continue;
            if (side[static_cast<std::size_t>(v)] == side[static_cast<std::size_t>(w)])
                throw parse_error("an edge joins two vertices of the same declared part");
            int x = side[static_cast<std::size_t>(v)] == 0 ? v : w;
            int y = x == v ? w : v;
            rows[static_cast<std::size_t>(local[static_cast<std::size_t>(x)])] |=
                1ull << local[static_cast<std::size_t>(y)];
        }
    return BipartiteGraph::from_rows(static_cast<int>(xs.size()), static_cast<int>(ys.size()), std::move(rows));
}

}  // namespace detail

/// Parses a document into a bipartite graph. For graph6 the bipartition is
/// recovered by BFS 2-coloring and is accepted only when it is unambiguous:
/// the graph must be bipartite and either connected or accompanied by
/// declared parts. The X part is the color class of vertex 0.
inline BipartiteGraph load_graph(const GraphDocument& doc) {
    if (doc.format == GraphFormat::edge_json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(doc.payload);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("edge-json: ") + e.what());
        }
        if (!j.is_object() || !j.contains("nx") || !j.contains("ny") || !j.contains("edges"))
            throw parse_error("edge-json: need an object with nx, ny and edges");
        if (!j["nx"].is_number_integer() || !j["ny"].is_number_integer() || !j["edges"].is_array())
            throw parse_error("edge-json: malformed fields");
        long nx = j["nx"].get<long>(), ny = j["ny"].get<long>();
        if (nx < 0 || ny < 0) throw parse_error("edge-json: negative part size");
        if (nx > kMaxPartSize || ny > kMaxPartSize)
            throw limit_error("edge-json: part size exceeds the 64-vertex build limit");
        BipartiteGraph g(static_cast<int>(nx), static_cast<int>(ny));
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw parse_error("edge-json: each edge must be an [x, y] index pair");
            long x = e[0].get<long>(), y = e[1].get<long>();
            if (x < 0 || x >= nx || y < 0 || y >= ny) throw parse_error("edge-json: edge index out of range");
            if (g.has_edge(static_cast<int>(x), static_cast<int>(y)))
                throw parse_error("edge-json: duplicate edge");
            g = g.with_edge(static_cast<int>(x), static_cast<int>(y));
        }
        return g;
    }

    detail::FlatGraph fg = detail::decode_graph6(doc.payload);
    auto [color, comps] = detail::two_color(fg);
    std::vector<int> xs, ys;
    if (doc.declared_parts) {
        xs = doc.declared_parts->first;
        ys = doc.declared_parts->second;
    } else {
        if (comps > 1)
            throw parse_error(
                "graph6: disconnected graph has no unambiguous bipartition; supply explicit parts");
        for (int v = 0; v < fg.n; ++v) (color[static_cast<std::size_t>(v)] == 0 ? xs : ys).push_back(v);
    }
    return detail::flat_to_bipartite(fg, std::move(xs), std::move(ys));
}

// ---------------------------------------------------------------------------
// Certificates: edge-json sidecar documents with a "certificate" tag.

inline nlohmann::json cycle_to_json(const BipartiteGraph& g, const HamiltonCycle& c) {
    nlohmann::json j;
    j["certificate"] = "cycle";
    j["nx"] = g.nx();
    j["ny"] = g.ny();
    j["order"] = nlohmann::json::array();
    for (const Vertex& v : c.order) j["order"].push_back(v.index);
    return j;
}

inline nlohmann::json two_factor_to_json(const BipartiteGraph& g, const TwoFactor& f) {
    nlohmann::json j;
    j["certificate"] = "two_factor";
    j["nx"] = g.nx();
    j["ny"] = g.ny();
    j["edges"] = nlohmann::json::array();
    for (auto [x, y] : f.edges) j["edges"].push_back({x, y});
    return j;
}

inline nlohmann::json forest_to_json(const BipartiteGraph& g, const GoodLinearForest& f) {
    nlohmann::json j;
    j["certificate"] = "forest";
    j["nx"] = g.nx();
    j["ny"] = g.ny();
    j["special"] = f.special;
    j["paths"] = nlohmann::json::array();
    for (const auto& path : f.paths) {
        nlohmann::json p = nlohmann::json::array();
        for (const Vertex& v : path) p.push_back(v.index);
        j["paths"].push_back(std::move(p));
    }
    return j;
}

/// Rebuilds a cycle certificate from its sidecar document ("order" holds
/// alternating X and Y indices, X first).
inline HamiltonCycle cycle_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("certificate", "") != "cycle" || !j.contains("order"))
        throw parse_error("certificate: expected a cycle document");
    HamiltonCycle c;
    std::size_t i = 0;
    for (const auto& v : j["order"]) {
        if (!v.is_number_integer()) throw parse_error("certificate: order entries must be indices");
        c.order.push_back({i % 2 == 0 ? Part::X : Part::Y, v.get<int>()});
        ++i;
    }
    return c;
}

inline TwoFactor two_factor_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("certificate", "") != "two_factor" || !j.contains("edges"))
        throw parse_error("certificate: expected a two_factor document");
    TwoFactor f;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw parse_error("certificate: malformed edge");
        f.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return f;
}

inline GoodLinearForest forest_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("certificate", "") != "forest" || !j.contains("special") || !j.contains("paths"))
        throw parse_error("certificate: expected a forest document");
    GoodLinearForest f;
    if (!j["special"].is_array() || j["special"].size() != 3)
        throw parse_error("certificate: forest needs three special vertices");
    for (std::size_t k = 0; k < 3; ++k) f.special[k] = j["special"][k].get<int>();
    for (const auto& path : j["paths"]) {
        std::vector<Vertex> p;
        std::size_t i = 0;
        for (const auto& v : path) {
            if (!v.is_number_integer()) throw parse_error("certificate: path entries must be indices");
            p.push_back({i % 2 == 0 ? Part::X : Part::Y, v.get<int>()});
            ++i;
        }
        f.paths.push_back(std::move(p));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Records and traces.

namespace detail {

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string csv_double(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline nlohmann::json record_to_json(const VerificationRecord& r, bool timing = false) {
    nlohmann::json j;
    j["hash"] = detail::hash_hex(r.hash);
    j["n"] = r.n;
    j["e"] = r.e;
    j["rho"] = r.rho;
    if (std::isnan(r.threshold)) j["threshold"] = nullptr;
    else j["threshold"] = r.threshold;
    j["one_tough"] = r.one_tough;
    j["verdict"] = verdict_name(r.verdict);
    j["certificate_path"] = r.certificate_path;
    j["micros"] = timing ? r.micros : 0;
    return j;
}

inline constexpr const char* kRecordCsvHeader = "hash,n,e,rho,threshold,one_tough,verdict,certificate_path,micros";

inline std::string record_to_csv(const VerificationRecord& r, bool timing = false) {
    std::string out = detail::hash_hex(r.hash);
    out += ',' + std::to_string(r.n);
    out += ',' + std::to_string(r.e);
    out += ',' + detail::csv_double(r.rho);
    out += ',' + detail::csv_double(r.threshold);
    out += ',' + std::string(r.one_tough ? "true" : "false");
    out += ',' + std::string(verdict_name(r.verdict));
    out += ',' + r.certificate_path;
    out += ',' + std::to_string(timing ? r.micros : 0);
    return out;
}

inline nlohmann::json trace_to_json(const ProofTrace& t) {
    nlohmann::json j;
    j["n"] = t.n;
    j["e_closure"] = t.e_closure;
    j["threshold_pass"] = t.threshold_pass;
    j["x0"] = t.x0;
    j["y0"] = t.y0;
    j["s"] = t.s;
    j["t"] = t.t;
    j["parts_swapped"] = t.parts_swapped;
    j["outside_theorem_range"] = t.outside_theorem_range;
    j["steps"] = nlohmann::json::array();
    for (const TraceStep& s : t.steps) j["steps"].push_back({{"id", s.id}, {"pass", s.pass}, {"detail", s.detail}});
    j["verdict"] = trace_verdict_name(t.verdict);
    if (t.verdict == TraceVerdict::Infeasible) {
        j["infeasible_step"] = t.infeasible_step;
        j["infeasible_detail"] = t.infeasible_detail;
    }
    if (t.cycle) {
        nlohmann::json c;
        c["certificate"] = "cycle";
        c["nx"] = t.n;
        c["ny"] = t.n;
        c["order"] = nlohmann::json::array();
        for (const Vertex& v : t.cycle->order) c["order"].push_back(v.index);
        j["cycle"] = std::move(c);
    } else {
        j["cycle"] = nullptr;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Suite config files: flat key=value lines, '#' comments.

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    throw parse_error("suite config: expected key=value, got: " + line);
            continue;
        }
        auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
            return s;
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error("suite config: empty key");
        kv[key] = value;
    }
    return kv;
}

inline void apply_config_pairs(const std::map<std::string, std::string>& kv, SuiteConfig& cfg) {
    const auto to_long = [](const std::string& k, const std::string& v) {
        try {
            return std::stol(v);
        } catch (...) {
            throw parse_error("suite config: bad integer for " + k + ": " + v);
        }
    };
    for (const auto& [k, v] : kv) {
        if (k == "suite") cfg.suite = v;
        else if (k == "n-min") cfg.n_min = static_cast<int>(to_long(k, v));
        else if (k == "n-max") cfg.n_max = static_cast<int>(to_long(k, v));
        else if (k == "samples") cfg.samples = to_long(k, v);
        else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(k, v));
        else if (k == "tol") cfg.tol = std::stod(v);
        else if (k == "limit") cfg.limit = static_cast<int>(to_long(k, v));
        else if (k == "workers") cfg.workers = static_cast<int>(to_long(k, v));
        else if (k == "output") cfg.output = v;
        else if (k == "records") cfg.records_format = v;
        else if (k == "cert-dir") cfg.cert_dir = v;
        else if (k == "timing") cfg.timing = v == "1" || v == "true";
        else throw parse_error("suite config: unknown key " + k);
    }
    if (cfg.records_format != "jsonl" && cfg.records_format != "csv")
        throw parse_error("suite config: records must be jsonl or csv");
}

/// Streams suite records (one per line) plus a trailing summary row. The
/// summary's wall time goes to the diagnostic stream so the data stream stays
/// byte-stable across runs.
inline void write_suite_records(std::ostream& out, const SuiteResult& res, const std::string& format, bool timing) {
    if (format == "csv") {
        out << kRecordCsvHeader << '\n';
        for (const VerificationRecord& r : res.records) out << record_to_csv(r, timing) << '\n';
        out << "# summary: suite=" << res.summary.suite << " total=" << res.summary.total
            << " passed=" << res.summary.passed << " failed=" << res.summary.failed
            << " counterexamples=" << res.summary.counterexamples
            << " max_deviation=" << detail::csv_double(res.summary.max_deviation) << '\n';
    } else {
        for (const VerificationRecord& r : res.records) out << record_to_json(r, timing).dump() << '\n';
        nlohmann::json s;
        s["summary"] = {{"suite", res.summary.suite},
                        {"total", res.summary.total},
                        {"passed", res.summary.passed},
                        {"failed", res.summary.failed},
                        {"counterexamples", res.summary.counterexamples},
                        {"max_deviation", res.summary.max_deviation}};
        out << s.dump() << '\n';
    }
}

}  // namespace bht
