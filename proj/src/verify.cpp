#include "treepack/verify.hpp"

#include <sstream>

namespace treepack {

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::SizeMismatch: return "size_mismatch";
        case ViolationKind::OutOfRange: return "out_of_range";
        case ViolationKind::SideMismatch: return "side_mismatch";
        case ViolationKind::Injectivity: return "injectivity";
        case ViolationKind::MissingEdge: return "missing_edge";
        case ViolationKind::EdgeReuse: return "edge_reuse";
    }
    return "unknown";
}

std::string Violation::describe() const {
    std::ostringstream os;
    os << to_string(kind);
    if (embedding >= 0) os << " embedding=" << embedding;
    if (other_embedding >= 0) os << " other_embedding=" << other_embedding;
    if (guest_vertex >= 0) os << " guest_vertex=" << guest_vertex;
    if (other_guest_vertex >= 0) os << " other_guest_vertex=" << other_guest_vertex;
    if (host_edge.a >= 0) os << " host_edge=(" << host_edge.a << "," << host_edge.b << ")";
    return os.str();
}

std::vector<Edge> Embedding::host_edges(const GuestGraph& guest) const {
    std::vector<Edge> out;
    out.reserve(guest.edges.size());
    for (auto [u, v] : guest.edges) {
        const HostVertex& hu = map[u];
        const HostVertex& hv = map[v];
        out.push_back(hu.side == Side::A ? Edge{hu.index, hv.index} : Edge{hv.index, hu.index});
    }
    return out;
}

Verdict verify_embedding(const BipartiteGraph& host, const GuestGraph& guest, const Embedding& embedding) {
    if (embedding.map.size() != guest.sides.size()) return Violation{.kind = ViolationKind::SizeMismatch};

    std::vector<int> owner_a(host.size_a(), -1);
    std::vector<int> owner_b(host.size_b(), -1);
    for (int v = 0; v < guest.vertex_count(); ++v) {
        const HostVertex& h = embedding.map[v];
        if (h.index < 0 || h.index >= host.side_size(h.side)) {
            return Violation{.kind = ViolationKind::OutOfRange, .guest_vertex = v};
        }
        if (h.side != guest.sides[v]) return Violation{.kind = ViolationKind::SideMismatch, .guest_vertex = v};
        int& owner = (h.side == Side::A ? owner_a : owner_b)[h.index];
        if (owner >= 0) {
            return Violation{.kind = ViolationKind::Injectivity, .guest_vertex = owner, .other_guest_vertex = v};
        }
        owner = v;
    }
    for (auto [u, v] : guest.edges) {
        const HostVertex& hu = embedding.map[u];
        const HostVertex& hv = embedding.map[v];
        if (hu.side == hv.side) return Violation{.kind = ViolationKind::SideMismatch, .guest_vertex = u, .other_guest_vertex = v};
        const Edge e = hu.side == Side::A ? Edge{hu.index, hv.index} : Edge{hv.index, hu.index};
        if (!host.has_edge(e.a, e.b)) {
            return Violation{.kind = ViolationKind::MissingEdge, .guest_vertex = u, .other_guest_vertex = v, .host_edge = e};
        }
    }
    return std::nullopt;
}

Verdict verify_packing(const BipartiteGraph& host, const Packing& packing) {
    // user[a * size_b + b] = index of the embedding that owns host edge (a,b).
    std::vector<int> user(static_cast<std::size_t>(host.size_a()) * static_cast<std::size_t>(host.size_b()), -1);
    for (int i = 0; i < static_cast<int>(packing.size()); ++i) {
        const auto& [guest, embedding] = packing[i];
        if (Verdict v = verify_embedding(host, guest, embedding)) {
            v->embedding = i;
            return v;
        }
        for (const Edge& e : embedding.host_edges(guest)) {
            int& owner = user[static_cast<std::size_t>(e.a) * static_cast<std::size_t>(host.size_b()) + static_cast<std::size_t>(e.b)];
            if (owner >= 0) {
                return Violation{.kind = ViolationKind::EdgeReuse, .embedding = i, .other_embedding = owner, .host_edge = e};
            }
            owner = i;
        }
    }
    return std::nullopt;
}

BipartiteGraph remove_embedding_edges(const BipartiteGraph& host, const GuestGraph& guest, const Embedding& embedding) {
    if (embedding.map.size() != guest.sides.size()) throw GraphError("embedding does not match guest");
    const std::vector<Edge> edges = embedding.host_edges(guest);
    return host.without_edges(edges);
}

}  // namespace treepack
