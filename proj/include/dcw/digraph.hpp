#ifndef DCW_DIGRAPH_HPP
#define DCW_DIGRAPH_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dcw {

using VertexSet = std::set<std::string>;

struct Arc {
    std::string from;
    std::string to;
    auto operator<=>(const Arc&) const = default;
};

/// Loop-free simple digraph over opaque string labels.
///
/// Immutable after construction. Vertices keep their construction order and
/// map to dense indices 0..n-1; algorithms work in index space, outputs are
/// translated back to labels.
class Digraph {
public:
    Digraph() = default;

    // Rejects duplicate labels, self-loops, unknown arc endpoints.
    // Duplicate arcs collapse.
    Digraph(std::vector<std::string> vertices, const std::vector<Arc>& arcs);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int arc_count() const { return n_arcs_; }

    const std::vector<std::string>& vertices() const { return labels_; }
    const std::string& label(int v) const { return labels_.at(static_cast<size_t>(v)); }
    int index_of(const std::string& label) const;  // -1 if unknown
    bool has_vertex(const std::string& label) const { return index_of(label) >= 0; }

    bool has_arc(int u, int v) const;
    bool has_arc(const std::string& u, const std::string& v) const;
    const std::vector<int>& out_neighbors(int v) const { return out_.at(static_cast<size_t>(v)); }
    const std::vector<int>& in_neighbors(int v) const { return in_.at(static_cast<size_t>(v)); }

    std::vector<Arc> arcs() const;  // sorted by (from, to)
    VertexSet vertex_set() const;

    // Equality on vertex *sets* and arc sets; construction order is ignored.
    bool operator==(const Digraph& other) const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> out_, in_;
    std::unordered_set<std::uint64_t> arc_keys_;
    int n_arcs_ = 0;
};

/// Loop-free simple undirected graph; edges stored as ordered label pairs
/// (small, large).
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    UndirectedGraph(std::vector<std::string> vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& vertices() const { return labels_; }
    bool has_vertex(const std::string& label) const;
    bool has_edge(const std::string& u, const std::string& v) const;
    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
    VertexSet vertex_set() const { return VertexSet(labels_.begin(), labels_.end()); }

    bool operator==(const UndirectedGraph& other) const;

private:
    std::vector<std::string> labels_;
    std::set<std::pair<std::string, std::string>> edges_;
};

/// Strongly connected components in a topological order of the acyclic
/// condensation; component_arcs pairs (i, j) always satisfy i < j.
struct Condensation {
    std::vector<VertexSet> components;
    std::set<std::pair<int, int>> component_arcs;
};

Digraph induced_subdigraph(const Digraph& g, const VertexSet& s);
UndirectedGraph underlying_graph(const Digraph& g);
Digraph complete_biorientation(const UndirectedGraph& g);
Digraph complement_digraph(const Digraph& g);
Digraph converse_digraph(const Digraph& g);

// Topological order is normalized: among ready components the one holding
// the lexicographically smallest label goes first.
Condensation strong_components(const Digraph& g);

// Maximum vertex set inducing a bidirectional complete subdigraph.
// Branch and bound on the graph of mutual arc pairs; throws CapExceeded
// for more than `cap` vertices.
VertexSet largest_bioriented_clique(const Digraph& g, int cap = 20);

// Edge-list text format: `n m`, then n labels, then m lines `u v`.
// '#' starts a comment, blank lines are skipped.
Digraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Digraph& g);

}  // namespace dcw

#endif
