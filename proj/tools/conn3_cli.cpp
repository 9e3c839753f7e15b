#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "conn3/verify.hpp"

namespace {

using conn3::Graph;
using conn3::Oracle;
using conn3::Vertex;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::vector<Vertex> parse_csv(const std::string& csv) {
    std::vector<Vertex> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<Vertex>(std::stol(item)));
    }
    return out;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int cmd_build(const std::string& file, bool asJson) {
    auto t0 = Clock::now();
    Graph g = conn3::read_graph_file(file);
    Oracle o{std::move(g)};
    double ms = ms_since(t0);
    if (asJson) {
        json j{{"n", o.graph().n},
               {"m", o.graph().m()},
               {"transformed_n", o.transformed().n()},
               {"table_words", o.table_words()},
               {"preprocess_ms", ms}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "built oracle: n=" << o.graph().n << " m=" << o.graph().m()
                  << " transformed_n=" << o.transformed().n()
                  << " table_words=" << o.table_words() << " preprocess_ms=" << ms << "\n";
    }
    return 0;
}

std::vector<Vertex> parse_failures(const std::string& csv) {
    std::vector<Vertex> f = parse_csv(csv);
    if (f.empty() || f.size() > 3)
        throw conn3::InputError("at most 3 failures (and at least 1) may be given");
    return f;
}

int cmd_query(const std::string& file, const std::string& fcsv, Vertex s, Vertex t,
              const std::vector<std::string>& extraPairs, bool asJson) {
    Oracle o{conn3::read_graph_file(file)};
    std::vector<Vertex> f = parse_failures(fcsv);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (s != 0 || t != 0) pairs.emplace_back(s, t);
    for (const std::string& p : extraPairs) {
        std::vector<Vertex> st = parse_csv(p);
        if (st.size() != 2) throw conn3::InputError("-q expects s,t");
        pairs.emplace_back(st[0], st[1]);
    }
    if (pairs.empty()) throw conn3::InputError("no query pair given (-s/-t or -q)");
    json answers = json::array();
    for (auto [x, y] : pairs) {
        bool conn = o.connected(f, x, y);
        if (asJson)
            answers.push_back({{"s", x}, {"t", y}, {"connected", conn}});
        else
            std::cout << (conn ? "connected" : "disconnected") << "\n";
    }
    if (asJson) {
        if (answers.size() == 1)
            std::cout << json{{"connected", answers[0]["connected"]}}.dump() << "\n";
        else
            std::cout << answers.dump() << "\n";
    }
    return 0;
}

int cmd_count(const std::string& file, const std::string& fcsv, bool cut, bool asJson) {
    Oracle o{conn3::read_graph_file(file)};
    std::vector<Vertex> f = parse_failures(fcsv);
    if (cut) {
        bool isCut = o.is_cut(f);
        if (asJson)
            std::cout << json{{"cut", isCut}}.dump() << "\n";
        else
            std::cout << (isCut ? "cut" : "not-a-cut") << "\n";
    } else {
        std::int64_t c = o.count_components(f);
        if (asJson)
            std::cout << json{{"components", c}}.dump() << "\n";
        else
            std::cout << c << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& corpus, std::uint64_t seed, int threads, bool asJson) {
    std::vector<Graph> graphs;
    conn3::verify::DiffOptions opt;
    opt.seed = seed;
    if (corpus == "small" || corpus == "default") {
        graphs = conn3::verify::corpus_small(seed, 120, 4, 16);
        opt.exhaustive = true;
    } else if (corpus == "adversarial") {
        graphs = conn3::verify::corpus_adversarial(seed, 120);
        opt.exhaustive = true;
    } else if (corpus == "large") {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 25; ++i) {
            Vertex n = 200 + static_cast<Vertex>(rng() % 1801);
            graphs.push_back(conn3::verify::gen_random(rng(), n, 3 * n));
        }
        opt.exhaustive = false;
        opt.sampleTriples = 500;
    } else {
        std::cerr << "unknown corpus: " << corpus << " (small|adversarial|large)\n";
        return 2;
    }
    auto t0 = Clock::now();
    conn3::verify::DiffResult res = conn3::verify::run_differential(graphs, opt, threads);
    double ms = ms_since(t0);
    if (asJson) {
        std::cout << res.to_json() << "\n";
    } else {
        std::cout << "graphs=" << res.graphs << " connectivity_checks=" << res.connectivityChecks
                  << " count_checks=" << res.countChecks << " mismatches=" << res.mismatches
                  << " elapsed_ms=" << ms << "\n";
        if (!res.firstCase.empty()) std::cout << "counterexample: " << res.firstCase << "\n";
    }
    return res.mismatches == 0 ? 0 : 1;
}

int cmd_bench(const std::string& file, Vertex synthN, std::uint64_t seed, bool asJson) {
    Graph g = file.empty() ? conn3::verify::gen_random(seed, synthN, 3LL * synthN)
                           : conn3::read_graph_file(file);
    Vertex n = g.n;
    auto t0 = Clock::now();
    Oracle o{std::move(g)};
    double buildMs = ms_since(t0);

    std::mt19937_64 rng(seed + 1);
    const int warm = 200, runs = 4000;
    std::vector<double> lat;
    lat.reserve(runs);
    auto randomQuery = [&] {
        std::vector<Vertex> f;
        std::set<Vertex> fs;
        int k = static_cast<int>(rng() % 3) + 1;
        while (static_cast<int>(fs.size()) < k)
            fs.insert(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1);
        f.assign(fs.begin(), fs.end());
        Vertex x = 0, y = 0;
        do {
            x = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        } while (fs.count(x));
        do {
            y = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        } while (fs.count(y) || y == x);
        return std::tuple<std::vector<Vertex>, Vertex, Vertex>(f, x, y);
    };
    volatile bool sink = false;
    for (int i = 0; i < warm; ++i) {
        auto [f, x, y] = randomQuery();
        sink = sink ^ o.connected(f, x, y);
    }
    for (int i = 0; i < runs; ++i) {
        auto [f, x, y] = randomQuery();
        auto q0 = Clock::now();
        sink = sink ^ o.connected(f, x, y);
        lat.push_back(std::chrono::duration<double, std::micro>(Clock::now() - q0).count());
    }
    std::sort(lat.begin(), lat.end());
    double median = lat[lat.size() / 2];
    double p99 = lat[static_cast<size_t>(static_cast<double>(lat.size()) * 0.99)];
    if (asJson) {
        json j{{"n", n},
               {"m", o.graph().m()},
               {"preprocess_ms", buildMs},
               {"query_median_us", median},
               {"query_p99_us", p99},
               {"table_words", o.table_words()}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "n=" << n << " m=" << o.graph().m() << " preprocess_ms=" << buildMs
                  << " query_median_us=" << median << " query_p99_us=" << p99
                  << " table_words=" << o.table_words() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connectivity oracle for up to three vertex failures"};
    app.require_subcommand(1);

    std::string file, fcsv, corpus = "small";
    Vertex s = 0, t = 0, synthN = 100000;
    std::vector<std::string> pairs;
    bool asJson = false, cut = false;
    std::uint64_t seed = 1;
    int threads = 1;

    auto addCommon = [&](CLI::App* sub, bool needsGraph) {
        if (needsGraph) sub->add_option("-g,--graph", file, "graph file")->required();
        sub->add_flag("--json", asJson, "machine-readable output");
    };

    CLI::App* build = app.add_subcommand("build", "build the oracle and print stats");
    addCommon(build, true);

    CLI::App* query = app.add_subcommand("query", "pairwise connectivity under failures");
    addCommon(query, true);
    query->add_option("-f,--failures", fcsv, "failed vertices, comma separated")->required();
    query->add_option("-s", s, "source vertex");
    query->add_option("-t", t, "target vertex");
    query->add_option("-q", pairs, "additional s,t pairs (repeatable)");

    CLI::App* count = app.add_subcommand("count", "number of components under failures");
    addCommon(count, true);
    count->add_option("-f,--failures", fcsv, "failed vertices, comma separated")->required();

    CLI::App* cutCmd = app.add_subcommand("cut", "is the failure set a vertex cut");
    addCommon(cutCmd, true);
    cutCmd->add_option("-f,--failures", fcsv, "failed vertices, comma separated")->required();

    CLI::App* verify = app.add_subcommand("verify", "differential check against BFS");
    verify->add_option("--corpus", corpus, "small | adversarial | large");
    verify->add_option("--seed", seed, "corpus seed");
    verify->add_option("--threads", threads, "worker threads");
    verify->add_flag("--json", asJson, "machine-readable output");

    CLI::App* bench = app.add_subcommand("bench", "preprocess/query timing");
    bench->add_option("-g,--graph", file, "graph file (else synthetic)");
    bench->add_option("-n", synthN, "synthetic graph size (m = 3n)");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_flag("--json", asJson, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build(file, asJson);
        if (query->parsed()) return cmd_query(file, fcsv, s, t, pairs, asJson);
        if (count->parsed()) return cmd_count(file, fcsv, false, asJson);
        if (cutCmd->parsed()) return cmd_count(file, fcsv, true, asJson);
        if (verify->parsed()) return cmd_verify(corpus, seed, threads, asJson);
        if (bench->parsed()) return cmd_bench(file, synthN, seed, asJson);
    } catch (const conn3::QueryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const conn3::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
