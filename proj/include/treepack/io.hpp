#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "treepack/assignment.hpp"
#include "treepack/decomposition.hpp"
#include "treepack/embedder.hpp"
#include "treepack/graph.hpp"
#include "treepack/oracle.hpp"
#include "treepack/packer.hpp"
#include "treepack/tree.hpp"
#include "treepack/verify.hpp"

namespace treepack {

inline constexpr int kSchemaVersion = 1;

class ParseError : public Error {
public:
    using Error::Error;
};

// Text formats.
//   graph: "bipartite <nA> <nB> [complete]" then one "a b" line per edge
//   tree:  "tree <n> <root>" then the n parent entries, -1 at the root
void write_graph(std::ostream& os, const BipartiteGraph& g);
BipartiteGraph read_graph(std::istream& is);
void write_tree(std::ostream& os, const RootedTree& t);
RootedTree read_tree(std::istream& is);

BipartiteGraph load_graph(const std::string& path);
RootedTree load_tree(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

using nlohmann::json;

json to_json(const GuestGraph& g);
GuestGraph guest_from_json(const json& j);
json to_json(const Embedding& e);
Embedding embedding_from_json(const json& j);
/// Packing document: host sizes plus guests with their maps.
json packing_to_json(const BipartiteGraph& host, const Packing& packing);
Packing packing_from_json(const json& j);
json to_json(const RootedTree& t);
json to_json(const BetaDecomposition& d);
json to_json(const EmbedderConfig& cfg);
json to_json(const SearchReport& r);
json to_json(const Violation& v);

}  // namespace treepack
