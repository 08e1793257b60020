#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/tree.hpp"

namespace treepack {

struct HostVertex {
    Side side = Side::A;
    int index = -1;
    friend bool operator==(const HostVertex&, const HostVertex&) = default;
};

/// Vertex map of one guest into a host; map[v] is the image of guest vertex v.
struct Embedding {
    std::string guest_id;
    std::vector<HostVertex> map;

    /// Host edges used by the guest's edges, in guest edge order.
    std::vector<Edge> host_edges(const GuestGraph& guest) const;
    friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct PackedGuest {
    GuestGraph guest;
    Embedding embedding;
    friend bool operator==(const PackedGuest&, const PackedGuest&) = default;
};

using Packing = std::vector<PackedGuest>;

enum class ViolationKind {
    SizeMismatch,   // map length differs from guest vertex count
    OutOfRange,     // image index outside its host side
    SideMismatch,   // guest class not mapped to the matching host side
    Injectivity,    // two guest vertices share an image
    MissingEdge,    // guest edge lands on a host non-edge
    EdgeReuse,      // host edge used by two embeddings
};

const char* to_string(ViolationKind kind);

/// Witness of a failed verification. Fields that do not apply stay -1.
struct Violation {
    ViolationKind kind = ViolationKind::SizeMismatch;
    int embedding = -1;        // index into the packing
    int other_embedding = -1;  // second embedding for EdgeReuse
    int guest_vertex = -1;
    int other_guest_vertex = -1;
    Edge host_edge{-1, -1};
    std::string describe() const;
};

/// nullopt means the check passed.
using Verdict = std::optional<Violation>;

Verdict verify_embedding(const BipartiteGraph& host, const GuestGraph& guest, const Embedding& embedding);
Verdict verify_packing(const BipartiteGraph& host, const Packing& packing);

/// Host minus the image of the guest's edges. Throws GraphError if an image
/// edge is missing from the host.
BipartiteGraph remove_embedding_edges(const BipartiteGraph& host, const GuestGraph& guest, const Embedding& embedding);

}  // namespace treepack
