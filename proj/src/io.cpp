#include "treepack/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace treepack {

namespace {

// Next line that is neither blank nor a '#' comment.
bool next_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        return true;
    }
    return false;
}

std::string side_name(Side s) { return std::string(1, side_char(s)); }

Side side_from(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "A") return Side::A;
    if (s == "B") return Side::B;
    throw ParseError("side must be \"A\" or \"B\", got \"" + s + "\"");
}

}  // namespace

void write_graph(std::ostream& os, const BipartiteGraph& g) {
    const bool complete = g.edge_count() == static_cast<std::int64_t>(g.size_a()) * g.size_b();
    os << "bipartite " << g.size_a() << " " << g.size_b() << (complete ? " complete" : "") << "\n";
    if (complete) return;
    for (const Edge& e : g.edges()) os << e.a << " " << e.b << "\n";
}

BipartiteGraph read_graph(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw ParseError("graph: missing header");
    std::istringstream header(line);
    std::string tag, flag;
    int na = -1, nb = -1;
    header >> tag >> na >> nb;
    if (tag != "bipartite" || header.fail() || na < 0 || nb < 0) throw ParseError("graph: bad header '" + line + "'");
    header >> flag;
    if (!flag.empty() && flag != "complete") throw ParseError("graph: unknown header flag '" + flag + "'");
    if (flag == "complete") return BipartiteGraph::complete(na, nb);
    std::vector<Edge> edges;
    while (next_line(is, line)) {
        std::istringstream ls(line);
        Edge e;
        std::string rest;
        if (!(ls >> e.a >> e.b) || (ls >> rest)) throw ParseError("graph: bad edge line '" + line + "'");
        edges.push_back(e);
    }
    return BipartiteGraph::from_edges(na, nb, edges);
}

void write_tree(std::ostream& os, const RootedTree& t) {
    os << "tree " << t.size() << " " << t.root() << "\n";
    for (int v = 0; v < t.size(); ++v) os << (v ? " " : "") << t.parent(v);
    os << "\n";
}

RootedTree read_tree(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw ParseError("tree: missing header");
    std::istringstream header(line);
    std::string tag;
    int n = -1, root = -1;
    header >> tag >> n >> root;
    if (tag != "tree" || header.fail() || n < 1) throw ParseError("tree: bad header '" + line + "'");
    std::vector<int> parents;
    while (next_line(is, line)) {
        std::istringstream ls(line);
        int p;
        while (ls >> p) parents.push_back(p);
        if (!ls.eof()) throw ParseError("tree: non-integer parent entry");
    }
    if (static_cast<int>(parents.size()) != n) {
        throw ParseError("tree: expected " + std::to_string(n) + " parents, got " + std::to_string(parents.size()));
    }
    return RootedTree::from_parents(std::move(parents), root);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

BipartiteGraph load_graph(const std::string& path) {
    std::istringstream is(read_file(path));
    return read_graph(is);
}

RootedTree load_tree(const std::string& path) {
    std::istringstream is(read_file(path));
    return read_tree(is);
}

json to_json(const GuestGraph& g) {
    std::string sides;
    for (Side s : g.sides) sides += side_char(s);
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    return {{"sides", sides}, {"edges", edges}};
}

GuestGraph guest_from_json(const json& j) {
    GuestGraph g;
    for (char c : j.at("sides").get<std::string>()) {
        if (c != 'A' && c != 'B') throw ParseError("guest sides must be a string over {A,B}");
        g.sides.push_back(c == 'A' ? Side::A : Side::B);
    }
    for (const auto& e : j.at("edges")) {
        const int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) throw ParseError("guest edge out of range");
        g.edges.emplace_back(u, v);
    }
    return g;
}

json to_json(const Embedding& e) {
    json map = json::array();
    for (std::size_t v = 0; v < e.map.size(); ++v) map.push_back({v, side_name(e.map[v].side), e.map[v].index});
    return {{"guest_id", e.guest_id}, {"map", map}};
}

Embedding embedding_from_json(const json& j) {
    Embedding e;
    e.guest_id = j.value("guest_id", "");
    const auto& map = j.at("map");
    e.map.assign(map.size(), HostVertex{});
    std::vector<char> seen(map.size(), 0);
    for (const auto& entry : map) {
        const int v = entry.at(0).get<int>();
        if (v < 0 || v >= static_cast<int>(map.size()) || seen[v]) throw ParseError("embedding map entries must cover 0..n-1 once");
        seen[v] = 1;
        e.map[v] = HostVertex{side_from(entry.at(1)), entry.at(2).get<int>()};
    }
    return e;
}

json packing_to_json(const BipartiteGraph& host, const Packing& packing) {
    json guests = json::array();
    for (const auto& pg : packing) {
        json g = to_json(pg.embedding);
        g["guest"] = to_json(pg.guest);
        guests.push_back(std::move(g));
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "packing"},
            {"host", {{"size_a", host.size_a()}, {"size_b", host.size_b()}}},
            {"embeddings", guests}};
}

Packing packing_from_json(const json& j) {
    Packing out;
    if (j.contains("embeddings")) {
        for (const auto& g : j.at("embeddings")) out.push_back(PackedGuest{guest_from_json(g.at("guest")), embedding_from_json(g)});
    } else if (j.contains("map") && j.contains("guest")) {
        out.push_back(PackedGuest{guest_from_json(j.at("guest")), embedding_from_json(j)});
    } else {
        throw ParseError("document holds neither a packing nor an embedding with its guest");
    }
    return out;
}

json to_json(const RootedTree& t) {
    return {{"vertices", t.size()}, {"root", t.root()}, {"parents", t.parents()}, {"max_degree", t.max_degree()},
            {"balanced", t.balanced()}};
}

json to_json(const BetaDecomposition& d) {
    json pieces = json::array();
    for (const auto& p : d.pieces) pieces.push_back({{"root", p.root}, {"vertices", p.vertices}});
    return {{"beta", d.beta}, {"t", d.t}, {"seeds", d.seeds}, {"linking", d.linking}, {"pieces", pieces}};
}

json to_json(const EmbedderConfig& cfg) {
    json j = {{"gamma", cfg.gamma}, {"eps", cfg.eps}, {"d", cfg.d}, {"s", cfg.s}, {"c", cfg.c},
              {"engine", to_string(cfg.engine)}, {"mu", cfg.mu}, {"preset", cfg.proof_preset ? "paper" : "desk"}};
    j["beta"] = cfg.beta ? json(*cfg.beta) : json("auto");
    return j;
}

json to_json(const SearchReport& r) {
    json j = {{"schema_version", kSchemaVersion}, {"kind", "search_report"}, {"instance", r.instance},
              {"result", to_string(r.result)}, {"nodes", r.nodes}, {"seconds", r.seconds}};
    if (r.packing) {
        json emb = json::array();
        for (const auto& pg : *r.packing) {
            json g = to_json(pg.embedding);
            g["guest"] = to_json(pg.guest);
            emb.push_back(std::move(g));
        }
        j["embeddings"] = emb;
    }
    return j;
}

json to_json(const Violation& v) {
    return {{"kind", to_string(v.kind)},
            {"embedding", v.embedding},
            {"other_embedding", v.other_embedding},
            {"guest_vertex", v.guest_vertex},
            {"other_guest_vertex", v.other_guest_vertex},
            {"host_edge", {v.host_edge.a, v.host_edge.b}},
            {"message", v.describe()}};
}

}  // namespace treepack
