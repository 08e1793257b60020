#include "treepack/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "treepack/generate.hpp"
#include "treepack/io.hpp"

namespace treepack {

namespace {

// Configuration problems detected after parsing; mapped to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TREEPACK_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("TREEPACK_SEED is not an unsigned integer: '") + env + "'");
        }
    }
    return 0;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        out << content;
        if (!content.empty() && content.back() != '\n') out << "\n";
    } else {
        write_file(path, content + (content.empty() || content.back() == '\n' ? "" : "\n"));
    }
}

std::string dump(const json& j) { return j.dump(2); }

struct EmbedKnobs {
    double gamma = 0.3, eps = 0.05, d = 0.2, c = 0.05, mu = 0.0;
    int s = 4;
    double beta = 0.0;  // 0 = auto
    std::string engine = "regularity";
    std::string preset;
    bool no_witness_search = false;
    int witness_budget = 32;

    void attach(CLI::App* app) {
        app->add_option("--gamma", gamma, "degree slack gamma in (0, 1/2)");
        app->add_option("--eps", eps, "regularity parameter");
        app->add_option("--d", d, "reduced-graph density threshold");
        app->add_option("--s", s, "number of clusters per side");
        app->add_option("--c", c, "maximum degree coefficient, Delta(T) <= c n");
        app->add_option("--beta", beta, "fixed decomposition beta (default: schedule)");
        app->add_option("--mu", mu, "assignment slack");
        app->add_option("--engine", engine, "regularity | greedy")->check(CLI::IsMember({"regularity", "greedy"}));
        app->add_option("--preset", preset, "paper: wire the proof constants (unreachable at desk n)")->check(CLI::IsMember({"paper"}));
        app->add_flag("--no-witness-search", no_witness_search, "reduced graph from densities only");
        app->add_option("--witness-budget", witness_budget, "random subset pairs per witness search");
    }

    EmbedderConfig build(std::uint64_t seed, std::ostream& err) const {
        EmbedderConfig cfg;
        if (preset == "paper") {
            err << "warning: the proof-constant preset makes the preconditions unreachable at desk-scale n\n";
            cfg = EmbedderConfig::proof_constants(gamma, s);
        } else {
            cfg.gamma = gamma;
            cfg.eps = eps;
            cfg.d = d;
            cfg.s = s;
            cfg.c = c;
            cfg.mu = mu;
            if (beta > 0.0) cfg.beta = beta;
        }
        cfg.engine = parse_engine(engine);
        cfg.seed = seed;
        cfg.search_witnesses = !no_witness_search;
        cfg.witness_budget = witness_budget;
        try {
            cfg.validate();
        } catch (const EmbedError& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

std::map<std::string, std::string> key_values(const std::vector<std::string>& tokens) {
    std::map<std::string, std::string> kv;
    for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw UsageError("--random expects key=value tokens, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

struct PackInput {
    int n = 0;
    double gamma = 0.25;
    std::vector<RootedTree> trees;
    json source;
};

PackInput random_pack_input(const std::map<std::string, std::string>& kv, double c, std::uint64_t seed) {
    static const std::vector<std::string> known = {"t", "n", "gamma", "maxdeg", "per_class", "seed"};
    for (const auto& [k, v] : kv)
        if (std::find(known.begin(), known.end(), k) == known.end()) throw UsageError("unknown --random key '" + k + "'");
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        return it == kv.end() ? std::nullopt : std::optional<std::string>(it->second);
    };
    PackInput in;
    try {
        if (!get("n")) throw UsageError("--random needs n=");
        in.n = std::stoi(*get("n"));
        in.gamma = get("gamma") ? std::stod(*get("gamma")) : 0.25;
        if (in.n < 2 || !(in.gamma > 0.0 && in.gamma < 0.5)) throw UsageError("--random needs n >= 2 and gamma in (0, 1/2)");
        const int t = get("t") ? std::stoi(*get("t"))
                               : static_cast<int>(std::floor(std::pow(in.n, 0.5 - in.gamma) + 1e-9));
        const int maxdeg = get("maxdeg") ? std::stoi(*get("maxdeg"))
                                         : std::max(2, static_cast<int>(std::floor(c * std::sqrt(in.n) + 1e-9)));
        const int per_class = get("per_class") ? std::stoi(*get("per_class"))
                                               : static_cast<int>(std::floor((1.0 - in.gamma) * in.n + 1e-9));
        if (get("seed")) seed = std::stoull(*get("seed"));
        if (t < 1 || per_class < 1) throw UsageError("--random needs t >= 1 and per_class >= 1");
        std::mt19937_64 rng(seed);
        for (int i = 0; i < t; ++i) in.trees.push_back(gen_tree(per_class, maxdeg, rng()));
        in.source = {{"random", {{"t", t}, {"n", in.n}, {"gamma", in.gamma}, {"maxdeg", maxdeg}, {"per_class", per_class},
                                 {"seed", seed}}}};
    } catch (const std::invalid_argument&) {
        throw UsageError("--random values must be numbers");
    } catch (const std::out_of_range&) {
        throw UsageError("--random value out of range");
    }
    return in;
}

// Manifest: either "random t n gamma maxdeg seed" or "host n [gamma]" followed by "tree <path>" lines.
PackInput manifest_pack_input(const std::string& path, double c, std::uint64_t seed) {
    std::istringstream is(read_file(path));
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    PackInput in;
    std::string line;
    bool have_host = false;
    std::vector<std::string> files;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "random") {
            std::string t, n, gamma, maxdeg, s;
            if (!(ls >> t >> n >> gamma >> maxdeg >> s)) throw ParseError("manifest: random t n gamma maxdeg seed");
            return random_pack_input({{"t", t}, {"n", n}, {"gamma", gamma}, {"maxdeg", maxdeg}, {"seed", s}}, c, seed);
        }
        if (tag == "host") {
            if (!(ls >> in.n)) throw ParseError("manifest: host n [gamma]");
            ls >> in.gamma;
            have_host = true;
        } else if (tag == "tree") {
            std::string file;
            if (!(ls >> file)) throw ParseError("manifest: tree <path>");
            files.push_back(file);
            in.trees.push_back(load_tree((dir / file).string()));
        } else {
            throw ParseError("manifest: unknown directive '" + tag + "'");
        }
    }
    if (!have_host) throw ParseError("manifest: missing host line");
    in.source = {{"manifest", path}, {"trees", files}};
    return in;
}

json ledger_json(const ForestPacking& fp) {
    json ledger = json::array();
    for (const auto& e : fp.ledger)
        ledger.push_back({{"forest", e.index}, {"min_degree", e.min_degree}, {"required", e.required}, {"floor", e.floor}});
    return ledger;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"treepack: tree packing into complete bipartite graphs"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string output;

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { seed = v; seed_given = true; },
                                                "RNG seed (default: TREEPACK_SEED or 0)");
    };
    auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "output path (default stdout)"); };

    // gen-tree
    auto* gen_tree_cmd = app.add_subcommand("gen-tree", "random balanced tree");
    int per_class = 0, max_degree = 3;
    std::string tree_format = "text";
    gen_tree_cmd->add_option("--per-class", per_class, "vertices per class")->required();
    gen_tree_cmd->add_option("--max-degree", max_degree, "degree cap");
    gen_tree_cmd->add_option("--format", tree_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    add_seed(gen_tree_cmd);
    add_output(gen_tree_cmd);

    // gen-graph
    auto* gen_graph_cmd = app.add_subcommand("gen-graph", "random or complete bipartite host");
    int size_a = 0, size_b = -1;
    double p = 1.0;
    gen_graph_cmd->add_option("--size-a", size_a, "side A size")->required();
    gen_graph_cmd->add_option("--size-b", size_b, "side B size (default: size-a)");
    gen_graph_cmd->add_option("--p", p, "edge probability")->check(CLI::Range(0.0, 1.0));
    add_seed(gen_graph_cmd);
    add_output(gen_graph_cmd);

    // decompose
    auto* decompose_cmd = app.add_subcommand("decompose", "beta-decomposition of a tree");
    std::string tree_path, graph_path;
    double beta = 0.0;
    decompose_cmd->add_option("tree", tree_path, "tree file")->required();
    decompose_cmd->add_option("--beta", beta, "beta in (0, 1)")->required();
    add_output(decompose_cmd);

    // assign
    auto* assign_cmd = app.add_subcommand("assign", "split demand pairs into cluster groups");
    std::string csv_path;
    int groups_s = 1;
    double assign_m = 0.0, assign_mu = 0.0;
    bool check_hypotheses = false;
    std::int64_t assign_budget = 1'000'000;
    assign_cmd->add_option("pairs", csv_path, "CSV file of x,y demand pairs")->required();
    assign_cmd->add_option("--s", groups_s, "number of groups")->required();
    assign_cmd->add_option("--m", assign_m, "P-slice size m")->required();
    assign_cmd->add_option("--mu", assign_mu, "slack mu; capacity is (1 - 7 mu) m");
    assign_cmd->add_flag("--check-hypotheses", check_hypotheses, "reject instances violating hypotheses (a)-(c)");
    assign_cmd->add_option("--budget", assign_budget, "branch-and-bound node budget");
    add_output(assign_cmd);

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "embed a tree into a host");
    EmbedKnobs knobs;
    embed_cmd->add_option("graph", graph_path, "host graph file")->required();
    embed_cmd->add_option("tree", tree_path, "tree file")->required();
    knobs.attach(embed_cmd);
    add_seed(embed_cmd);
    add_output(embed_cmd);

    // pack
    auto* pack_cmd = app.add_subcommand("pack", "pack trees into K_{n,n}");
    std::string manifest;
    std::vector<std::string> random_spec;
    std::string pack_engine = "greedy";
    double pack_c = 0.5, hub_c = 8.0;
    int hub_count = -1;
    pack_cmd->add_option("manifest", manifest, "manifest file");
    pack_cmd->add_option("--random", random_spec, "generator spec, e.g. t=4 n=400 gamma=0.25")->expected(1, -1);
    pack_cmd->add_option("--engine", pack_engine, "greedy | regularity")->check(CLI::IsMember({"regularity", "greedy"}));
    pack_cmd->add_option("--c", pack_c, "tree degree coefficient, Delta <= c sqrt(n)");
    pack_cmd->add_option("--hub-c", hub_c, "hub count k = ceil(8 sqrt(n) / hub-c)");
    pack_cmd->add_option("--hubs", hub_count, "explicit hub count per class");
    add_seed(pack_cmd);
    add_output(pack_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a packing or embedding against a host");
    std::string packing_path;
    verify_cmd->add_option("graph", graph_path, "host graph file")->required();
    verify_cmd->add_option("packing", packing_path, "packing or embedding JSON")->required();

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search and extremal constructions");
    oracle_cmd->require_subcommand(1);
    std::int64_t budget = 100'000'000;
    auto* o_pack = oracle_cmd->add_subcommand("pack", "exhaustive packing search");
    std::vector<std::string> guest_paths;
    o_pack->add_option("graph", graph_path, "host graph file")->required();
    o_pack->add_option("trees", guest_paths, "guest tree files")->required();
    o_pack->add_option("--budget", budget, "node budget");
    add_output(o_pack);
    auto* o_k53 = oracle_cmd->add_subcommand("k53", "three 6-vertex paths into K_{5,3}");
    o_k53->add_option("--budget", budget, "node budget");
    add_output(o_k53);
    auto* o_ds = oracle_cmd->add_subcommand("doublestar", "decompose K_{2n-1,n} into double stars");
    int ds_n = 2;
    o_ds->add_option("--n", ds_n, "n >= 1")->required();
    add_output(o_ds);
    auto* o_bound = oracle_cmd->add_subcommand("dstar-bound", "double-star copy counting bound");
    double eps = 0.1;
    int bound_n = 100;
    bool brute = false;
    o_bound->add_option("--n", bound_n, "host side")->required();
    o_bound->add_option("--eps", eps, "eps in (0, 1/2)")->required();
    o_bound->add_flag("--brute", brute, "also search for the maximum number of copies");
    o_bound->add_option("--budget", budget, "node budget for --brute");
    add_output(o_bound);
    auto* o_log = oracle_cmd->add_subcommand("logstar", "two joined copies of r plus ceil(alpha log n) stars");
    int log_n = 16;
    double alpha = 1.0;
    std::string log_format = "text";
    o_log->add_option("--n", log_n, "vertices per copy")->required();
    o_log->add_option("--alpha", alpha, "star count coefficient");
    o_log->add_option("--format", log_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    add_output(o_log);
    auto* o_probe = oracle_cmd->add_subcommand("probe", "containment of the log-star tree in G(n,n,p)");
    int trials = 50;
    o_probe->add_option("--n", log_n, "vertices per copy")->required();
    o_probe->add_option("--alpha", alpha, "star count coefficient");
    o_probe->add_option("--p", p, "edge probability")->check(CLI::Range(0.0, 1.0));
    o_probe->add_option("--trials", trials, "number of hosts");
    o_probe->add_option("--budget", budget, "node budget per host");
    add_seed(o_probe);
    add_output(o_probe);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "embedding trials on complete hosts");
    std::vector<int> bench_n = {60, 120};
    int bench_trials = 10;
    double class_ratio = 0.7, degree_ratio = 0.05;
    bool csv = false;
    bench_cmd->add_option("--n", bench_n, "host sides")->expected(1, -1);
    bench_cmd->add_option("--trials", bench_trials, "trials per n");
    bench_cmd->add_option("--class-ratio", class_ratio, "tree vertices per class as a fraction of n");
    bench_cmd->add_option("--degree-ratio", degree_ratio, "tree degree cap as a fraction of n");
    bench_cmd->add_flag("--csv", csv, "CSV instead of JSON");
    knobs.attach(bench_cmd);
    add_seed(bench_cmd);
    add_output(bench_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) out << sub->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!seed_given) seed = default_seed();
        auto announce_seed = [&] { err << "seed: " << seed << "\n"; };

        if (gen_tree_cmd->parsed()) {
            announce_seed();
            RootedTree t = [&] {
                try {
                    return gen_tree(per_class, max_degree, seed);
                } catch (const TreeError& e) {
                    throw UsageError(e.what());
                }
            }();
            if (tree_format == "json") {
                json j = to_json(t);
                j["schema_version"] = kSchemaVersion;
                j["seed"] = seed;
                emit(out, output, dump(j));
            } else {
                std::ostringstream os;
                write_tree(os, t);
                emit(out, output, os.str());
            }
            return 0;
        }
        if (gen_graph_cmd->parsed()) {
            announce_seed();
            if (size_b < 0) size_b = size_a;
            if (size_a < 0) throw UsageError("--size-a must be non-negative");
            const BipartiteGraph g = p >= 1.0 ? BipartiteGraph::complete(size_a, size_b)
                                              : BipartiteGraph::random(size_a, size_b, p, seed);
            std::ostringstream os;
            write_graph(os, g);
            emit(out, output, os.str());
            return 0;
        }
        if (decompose_cmd->parsed()) {
            const RootedTree t = load_tree(tree_path);
            if (!(beta > 0.0 && beta < 1.0)) throw UsageError("--beta must lie in (0, 1)");
            const BetaDecomposition d = beta_decompose(t, beta);
            json j = to_json(d);
            j["schema_version"] = kSchemaVersion;
            j["kind"] = "decomposition";
            emit(out, output, dump(j));
            return 0;
        }
        if (assign_cmd->parsed()) {
            std::istringstream is(read_file(csv_path));
            std::vector<DemandPair> pairs;
            std::string line;
            while (std::getline(is, line)) {
                if (line.empty() || line[0] == '#') continue;
                std::replace(line.begin(), line.end(), ',', ' ');
                std::istringstream ls(line);
                DemandPair d;
                if (!(ls >> d.x >> d.y)) {
                    if (pairs.empty()) continue;  // header row
                    throw ParseError("assign: bad CSV row '" + line + "'");
                }
                pairs.push_back(d);
            }
            AssignmentInstance inst{pairs, assign_m, groups_s, assign_mu};
            json j = {{"schema_version", kSchemaVersion}, {"kind", "assignment"}, {"capacity", inst.capacity()}};
            try {
                const Groups groups = check_hypotheses ? partition_pieces(inst, assign_budget)
                                                       : assign_groups(pairs, groups_s, inst.capacity(), assign_budget);
                json loads = json::array();
                for (const auto& g : groups) {
                    std::int64_t x = 0, y = 0;
                    for (int i : g) {
                        x += pairs[i].x;
                        y += pairs[i].y;
                    }
                    loads.push_back({x, y});
                }
                j["groups"] = groups;
                j["loads"] = loads;
                j["ok"] = true;
                emit(out, output, dump(j));
                return 0;
            } catch (const AssignmentError& e) {
                j["ok"] = false;
                j["error"] = e.kind() == AssignmentError::Kind::PreconditionViolated ? "PreconditionViolated" : "AssignmentFailed";
                j["message"] = e.what();
                emit(out, output, dump(j));
                return 1;
            }
        }
        if (embed_cmd->parsed()) {
            announce_seed();
            const EmbedderConfig cfg = knobs.build(seed, err);
            const BipartiteGraph host = load_graph(graph_path);
            const RootedTree tree = load_tree(tree_path);
            json j = {{"schema_version", kSchemaVersion}, {"kind", "embedding"}, {"engine", to_string(cfg.engine)},
                      {"seed", seed}, {"config", to_json(cfg)}};
            try {
                Embedding e = embed_tree(host, tree, cfg);
                e.guest_id = std::filesystem::path(tree_path).stem().string();
                const GuestGraph guest = GuestGraph::from_tree(tree);
                const Verdict v = verify_embedding(host, guest, e);
                j.update(to_json(e));
                j["guest"] = to_json(guest);
                j["ok"] = !v.has_value();
                if (v) j["violation"] = to_json(*v);
                emit(out, output, dump(j));
                return v ? 1 : 0;
            } catch (const EmbedError& e) {
                if (e.stage() == EmbedStage::Precondition) throw UsageError(e.what());
                j["ok"] = false;
                j["stage"] = to_string(e.stage());
                j["message"] = e.what();
                emit(out, output, dump(j));
                return 1;
            }
        }
        if (pack_cmd->parsed()) {
            announce_seed();
            if (manifest.empty() == random_spec.empty()) throw UsageError("pack needs exactly one of a manifest or --random");
            PackInput in = random_spec.empty() ? manifest_pack_input(manifest, pack_c, seed)
                                               : random_pack_input(key_values(random_spec), pack_c, seed);
            PackerConfig cfg;
            cfg.gamma = in.gamma;
            cfg.c = pack_c;
            cfg.hub_c = hub_c;
            if (hub_count >= 0) cfg.hub_count = hub_count;
            cfg.engine = parse_engine(pack_engine);
            cfg.seed = seed;
            const BipartiteGraph host = BipartiteGraph::complete(in.n, in.n);
            json j = {{"schema_version", kSchemaVersion}, {"kind", "packing"}, {"engine", pack_engine}, {"seed", seed},
                      {"source", in.source}};
            try {
                const TreePacking tp = pack_trees(in.n, in.trees, cfg);
                const Verdict v = verify_packing(host, tp.packing);
                j.update(packing_to_json(host, tp.packing));
                j["kind"] = "packing";
                j["zones"] = {{"size", tp.zone_size}, {"start", tp.zone_start}, {"hubs_per_class", tp.hub_count}};
                j["ledger"] = ledger_json(tp.forests);
                j["forest_degree_bound"] = tp.forests.degree_bound;
                j["ok"] = !v.has_value();
                if (v) j["violation"] = to_json(*v);
                emit(out, output, dump(j));
                return v ? 1 : 0;
            } catch (const PackError& e) {
                if (e.kind() == PackError::Kind::Precondition) throw UsageError(e.what());
                j["ok"] = false;
                j["error"] = to_string(e.kind());
                j["message"] = e.what();
                emit(out, output, dump(j));
                return 1;
            }
        }
        if (verify_cmd->parsed()) {
            const BipartiteGraph host = load_graph(graph_path);
            json doc;
            try {
                doc = json::parse(read_file(packing_path));
            } catch (const json::parse_error& e) {
                throw ParseError(std::string("verify: ") + e.what());
            }
            const Packing packing = packing_from_json(doc);
            const Verdict v = verify_packing(host, packing);
            json j = {{"schema_version", kSchemaVersion}, {"kind", "verdict"}, {"ok", !v.has_value()},
                      {"embeddings", packing.size()}};
            if (v) j["violation"] = to_json(*v);
            out << dump(j) << "\n";
            return v ? 1 : 0;
        }
        if (oracle_cmd->parsed()) {
            SearchOptions options;
            options.budget = budget;
            if (o_pack->parsed()) {
                const BipartiteGraph host = load_graph(graph_path);
                std::vector<GuestGraph> guests;
                for (const auto& path : guest_paths) guests.push_back(GuestGraph::from_tree(load_tree(path)));
                const SearchReport r = brute_force_pack(host, guests, options, graph_path);
                emit(out, output, dump(to_json(r)));
                return r.result == SearchResult::Found ? 0 : 1;
            }
            if (o_k53->parsed()) {
                const SearchReport r = k53_paths_unsat(options);
                json j = to_json(r);
                j["claim_confirmed"] = r.result == SearchResult::Unsat;
                emit(out, output, dump(j));
                return r.result == SearchResult::Unsat ? 0 : 1;
            }
            if (o_ds->parsed()) {
                if (ds_n < 1) throw UsageError("--n must be at least 1");
                const BipartiteGraph host = BipartiteGraph::complete(2 * ds_n - 1, ds_n);
                const Packing packing = double_star_decomposition(ds_n);
                const Verdict v = verify_packing(host, packing);
                json j = packing_to_json(host, packing);
                j["kind"] = "double_star_decomposition";
                j["ok"] = !v.has_value();
                j["covered_edges"] = static_cast<std::int64_t>(ds_n) * (2 * ds_n - 1);
                emit(out, output, dump(j));
                return v ? 1 : 0;
            }
            if (o_bound->parsed()) {
                DoubleStarBound b;
                try {
                    b = double_star_copy_bound(bound_n, eps);
                } catch (const Error& e) {
                    throw UsageError(e.what());
                }
                json j = {{"schema_version", kSchemaVersion}, {"kind", "double_star_bound"}, {"n", b.n}, {"eps", b.eps},
                          {"k", b.k}, {"bound", b.bound}, {"needed", b.needed}, {"impossible", b.impossible},
                          {"max_coverage", b.max_coverage}};
                if (brute) {
                    const CopyMaximum m = max_disjoint_copies(BipartiteGraph::complete(b.n, b.n), double_star(b.k), options);
                    j["brute_force"] = {{"max_copies", m.lower}, {"exact", m.exact}};
                }
                emit(out, output, dump(j));
                return 0;
            }
            if (o_log->parsed()) {
                RootedTree t = [&] {
                    try {
                        return log_star_tree(log_n, alpha);
                    } catch (const TreeError& e) {
                        throw UsageError(e.what());
                    }
                }();
                if (log_format == "json") {
                    json j = to_json(t);
                    j["schema_version"] = kSchemaVersion;
                    emit(out, output, dump(j));
                } else {
                    std::ostringstream os;
                    write_tree(os, t);
                    emit(out, output, os.str());
                }
                return 0;
            }
            if (o_probe->parsed()) {
                announce_seed();
                const ProbeReport r = empirical_containment_probe(log_n, alpha, p, trials, seed, budget);
                json j = {{"schema_version", kSchemaVersion}, {"kind", "containment_probe"}, {"n", log_n}, {"alpha", alpha},
                          {"p", p}, {"trials", r.trials}, {"found", r.found}, {"unsat", r.unsat},
                          {"budget_exceeded", r.budget_exceeded}, {"frequency", r.frequency}, {"seed", r.seed}};
                emit(out, output, dump(j));
                return 0;
            }
        }
        if (bench_cmd->parsed()) {
            announce_seed();
            const EmbedderConfig base = knobs.build(seed, err);
            std::ostringstream csv_out;
            json rows = json::array();
            if (csv) csv_out << "n,trial,seed,engine,vertices,max_degree,ok,seconds,error\n";
            for (int n : bench_n) {
                const BipartiteGraph host = BipartiteGraph::complete(n, n);
                const int k = static_cast<int>(std::floor(class_ratio * n + 1e-9));
                const int cap = std::max(2, static_cast<int>(std::floor(degree_ratio * n + 1e-9)));
                for (int trial = 0; trial < bench_trials; ++trial) {
                    EmbedderConfig cfg = base;
                    cfg.seed = seed + trial;
                    const RootedTree t = gen_tree(k, cap, cfg.seed);
                    const auto start = std::chrono::steady_clock::now();
                    std::string error;
                    try {
                        const Embedding e = embed_tree(host, t, cfg);
                        if (auto v = verify_embedding(host, GuestGraph::from_tree(t), e)) error = v->describe();
                    } catch (const Error& e) {
                        error = e.what();
                    }
                    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    if (csv) {
                        std::string quoted = error;
                        std::replace(quoted.begin(), quoted.end(), '"', '\'');
                        csv_out << n << "," << trial << "," << cfg.seed << "," << to_string(cfg.engine) << "," << t.size()
                                << "," << t.max_degree() << "," << (error.empty() ? 1 : 0) << "," << secs << ",\"" << quoted
                                << "\"\n";
                    } else {
                        rows.push_back({{"n", n}, {"trial", trial}, {"seed", cfg.seed}, {"engine", to_string(cfg.engine)},
                                        {"vertices", t.size()}, {"max_degree", t.max_degree()}, {"ok", error.empty()},
                                        {"seconds", secs}, {"error", error}});
                    }
                }
            }
            if (csv) {
                emit(out, output, csv_out.str());
            } else {
                emit(out, output, dump({{"schema_version", kSchemaVersion}, {"kind", "bench"}, {"rows", rows}}));
            }
            return 0;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no command given\n";
    return 2;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace treepack
