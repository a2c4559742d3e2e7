#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bht/io.hpp"

namespace bht::cli {

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot read input: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline GraphFormat pick_format(const std::string& flag, const std::string& payload) {
    if (flag == "graph6") return GraphFormat::graph6;
    if (flag == "edge-json") return GraphFormat::edge_json;
    if (!flag.empty()) throw parse_error("unknown format: " + flag + " (use graph6 or edge-json)");
    for (char c : payload) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? GraphFormat::edge_json : GraphFormat::graph6;
    }
    throw parse_error("empty input");
}

inline BipartiteGraph load_from(const std::string& path, const std::string& format, std::istream& in) {
    GraphDocument doc;
    doc.payload = detail::read_source(path, in);
    doc.format = pick_format(format, doc.payload);
    return load_graph(doc);
}

// Data goes to --output when given, otherwise to the standard output stream.
struct DataSink {
    std::ofstream file;
    std::ostream* os;
    DataSink(const std::string& path, std::ostream& fallback) : os(&fallback) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw parse_error("cannot write output: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

inline std::pair<int, int> parse_range(const std::string& s) {
    std::size_t dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (...) {
        throw parse_error("bad range (expected A..B): " + s);
    }
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace detail

/// Argument-list entry point; the binary in tools/ is a thin wrapper around
/// this so the whole surface stays testable in-process.
///
/// Exit codes: 0 verdict computed, 1 usage error, 2 input/output error,
/// 3 counterexample found (scan/verify), 4 resource limit refused.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectral Hamiltonicity toolkit for balanced bipartite graphs"};
    app.name("bht");
    app.require_subcommand(1);

    std::string input = "-", format, output, spec, suite, nrange, records;
    double tol = 1e-10;
    std::uint64_t seed = 1;
    long samples = -1;
    int limit = kDefaultToughnessLimit;

    const auto add_io = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("--input", input, "input file ('-' = stdin)");
        sub->add_option("--format", format, "graph format: graph6 | edge-json (default: sniffed)");
        sub->add_option("--output", output, "write data to this file instead of stdout");
    };

    CLI::App* c_construct = app.add_subcommand("construct", "emit a named graph: gnn:<n> or complete:<m>,<n>");
    c_construct->add_option("spec", spec, "construction spec")->required();
    add_io(c_construct, false);

    CLI::App* c_rho = app.add_subcommand("rho", "spectral radius of a bipartite graph");
    add_io(c_rho, true);
    c_rho->add_option("--tol", tol, "eigenvalue enclosure tolerance");

    CLI::App* c_tough = app.add_subcommand("tough", "bipartite toughness and the 1-tough test");
    add_io(c_tough, true);
    c_tough->add_option("--limit", limit, "largest part size the subset search will accept");

    CLI::App* c_closure = app.add_subcommand("closure", "bipartite closure of a balanced graph");
    add_io(c_closure, true);

    CLI::App* c_ham = app.add_subcommand("hamilton", "find a Hamilton cycle or report none");
    add_io(c_ham, true);

    CLI::App* c_two = app.add_subcommand("two-factor", "find a 2-factor or report none");
    add_io(c_two, true);

    CLI::App* c_trace = app.add_subcommand("trace", "replay the case analysis on the closure");
    add_io(c_trace, true);

    CLI::App* c_verify = app.add_subcommand("verify", "run a named verification suite");
    c_verify->add_option("--input", input, "suite config file (key=value lines)");
    c_verify->add_option("--suite", suite, "suite name");
    c_verify->add_option("--n-range", nrange, "part size range A..B");
    c_verify->add_option("--samples", samples, "sample count");
    c_verify->add_option("--seed", seed, "base RNG seed");
    c_verify->add_option("--tol", tol, "spectral tolerance");
    c_verify->add_option("--limit", limit, "toughness search part-size limit");
    c_verify->add_option("--output", output, "write records to this file instead of stdout");

    CLI::App* c_scan = app.add_subcommand("scan", "classify each graph6 line of a file");
    add_io(c_scan, true);
    c_scan->add_option("--tol", tol, "spectral tolerance");
    c_scan->add_option("--limit", limit, "toughness search part-size limit");

    int code = 0;

    c_construct->callback([&] {
        BipartiteGraph g;
        if (spec.rfind("gnn:", 0) == 0) {
            g = extremal_gnn(std::stoi(spec.substr(4)));
        } else if (spec.rfind("complete:", 0) == 0) {
            std::string rest = spec.substr(9);
            std::size_t comma = rest.find(',');
            if (comma == std::string::npos) throw parse_error("complete spec needs two sizes: complete:<m>,<n>");
            g = complete_bipartite(std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)));
        } else {
            throw parse_error("unknown construction spec: " + spec);
        }
        GraphFormat f = format == "graph6" ? GraphFormat::graph6 : GraphFormat::edge_json;
        if (!format.empty() && format != "graph6" && format != "edge-json")
            throw parse_error("unknown format: " + format);
        detail::DataSink sink(output, out);
        sink.stream() << encode_document(g, f) << '\n';
    });

    c_rho->callback([&] {
        BipartiteGraph g = detail::load_from(input, format, in);
        SpectralResult r = spectral_radius(g, tol);
        detail::DataSink sink(output, out);
        sink.stream() << detail::format_double(r.rho) << '\n';
        err << "iterations=" << r.iterations << " residual=" << detail::format_double(r.residual) << '\n';
    });

    c_tough->callback([&] {
        BipartiteGraph g = detail::load_from(input, format, in);
        nlohmann::json j;
        OneToughReport rep = is_one_tough(g, limit);
        j["one_tough"] = rep.one_tough;
        if (g.is_complete()) {
            j["complete"] = true;
            j["toughness"] = nullptr;  // t^B undefined on complete bipartite graphs
        } else {
            j["complete"] = false;
            ToughnessWitness w = bipartite_toughness(g, limit);
            j["toughness"] = {{"size", w.vertices.size()},
                              {"components", w.components},
                              {"ratio", w.ratio_value()},
                              {"side", std::string(1, part_name(w.side))},
                              {"vertices", w.vertices}};
        }
        detail::DataSink sink(output, out);
        sink.stream() << j.dump() << '\n';
    });

    c_closure->callback([&] {
        BipartiteGraph g = detail::load_from(input, format, in);
        detail::DataSink sink(output, out);
        GraphFormat f = format == "graph6" ? GraphFormat::graph6 : GraphFormat::edge_json;
        sink.stream() << encode_document(bipartite_closure(g), f) << '\n';
    });

    c_ham->callback([&] {
        BipartiteGraph g = detail::load_from(input, format, in);
        detail::DataSink sink(output, out);
        if (auto cyc = find_hamilton_cycle(g)) sink.stream() << cycle_to_json(g, *cyc).dump() << '\n';
        else sink.stream() << "none\n";
    });

    c_two->callback([&] {
        BipartiteGraph g = detail::load_from(input, format, in);
        detail::DataSink sink(output, out);
        if (auto f2 = find_two_factor(g)) sink.stream() << two_factor_to_json(g, *f2).dump() << '\n';
        else sink.stream() << "none\n";
    });

    c_trace->callback([&] {
        BipartiteGraph g = detail::load_from(input, format, in);
        detail::DataSink sink(output, out);
        sink.stream() << trace_to_json(proof_trace(g)).dump() << '\n';
    });

    c_verify->callback([&] {
        SuiteConfig cfg;
        if (c_verify->count("--input")) {
            std::istringstream cfgin(detail::read_source(input, in));
            apply_config_pairs(parse_key_values(cfgin), cfg);
        }
        if (c_verify->count("--suite")) cfg.suite = suite;
        if (c_verify->count("--n-range")) {
            auto [lo, hi] = detail::parse_range(nrange);
            cfg.n_min = lo;
            cfg.n_max = hi;
        }
        if (c_verify->count("--samples")) cfg.samples = samples;
        if (c_verify->count("--seed")) cfg.seed = seed;
        if (c_verify->count("--tol")) cfg.tol = tol;
        if (c_verify->count("--limit")) cfg.limit = limit;
        if (c_verify->count("--output")) cfg.output = output;
        if (cfg.suite.empty()) throw parse_error("verify needs a suite name (--suite or a config file)");

        CertWriter writer;
        if (!cfg.cert_dir.empty()) {
            std::filesystem::create_directories(cfg.cert_dir);
            writer = [&cfg](const VerificationRecord& r, const HamiltonCycle& c) {
                std::string path = cfg.cert_dir + "/" + bht::detail::hash_hex(r.hash) + ".json";
                std::ofstream f(path, std::ios::binary);
                if (!f) throw parse_error("cannot write certificate: " + path);
                nlohmann::json j;
                j["certificate"] = "cycle";
                j["nx"] = r.n;
                j["ny"] = r.n;
                j["order"] = nlohmann::json::array();
                for (const Vertex& v : c.order) j["order"].push_back(v.index);
                f << j.dump() << '\n';
                return path;
            };
        }
        SuiteResult res = run_suite(cfg, writer);
        detail::DataSink sink(cfg.output, out);
        write_suite_records(sink.stream(), res, cfg.records_format, cfg.timing);
        err << "suite " << res.summary.suite << ": " << res.summary.passed << "/" << res.summary.total
            << " passed, " << res.summary.counterexamples << " counterexamples, wall " << res.summary.wall_ms
            << " ms\n";
        for (const std::string& f : res.failures) err << "failure: " << f << '\n';
        for (const auto& [hash, g] : res.dumps)
            err << "counterexample " << bht::detail::hash_hex(hash) << ": " << encode_edge_json(g) << '\n';
        if (res.summary.counterexamples > 0) code = 3;
    });

    c_scan->callback([&] {
        std::istringstream lines(detail::read_source(input, in));
        detail::DataSink sink(output, out);
        std::string line;
        long lineno = 0;
        bool counterexample = false;
        while (std::getline(lines, line)) {
            ++lineno;
            if (line.empty()) continue;
            GraphDocument doc;
            doc.format = GraphFormat::graph6;
            doc.payload = line;
            BipartiteGraph g;
            try {
                g = load_graph(doc);
            } catch (const parse_error& e) {
                throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
            }
            TheoremVerification v = verify_main_theorem(g, tol, limit);
            sink.stream() << record_to_json(v.record).dump() << '\n';
            if (v.record.verdict == Verdict::Counterexample) {
                counterexample = true;
                err << "counterexample at line " << lineno << ": " << encode_edge_json(g) << '\n';
            }
        }
        if (counterexample) code = 3;
    });

    try {
        std::vector<const char*> argv;
        argv.push_back("bht");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    } catch (const limit_error& e) {
        err << "refused: " << e.what() << '\n';
        return 4;
    } catch (const convergence_error& e) {
        err << "no convergence: " << e.what() << '\n';
        return 4;
    } catch (const parse_error& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    }
    return code;
}

}  // namespace bht::cli
