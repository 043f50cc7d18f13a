#include "dcw/digraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "dcw/errors.hpp"

namespace dcw {

namespace {

std::uint64_t arc_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

}  // namespace

Digraph::Digraph(std::vector<std::string> vertices, const std::vector<Arc>& arcs)
    : labels_(std::move(vertices)) {
    index_.reserve(labels_.size());
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate vertex label: " + labels_[i]);
    }
    out_.resize(labels_.size());
    in_.resize(labels_.size());
    for (const Arc& a : arcs) {
        auto iu = index_.find(a.from);
        auto iv = index_.find(a.to);
        if (iu == index_.end())
            throw std::invalid_argument("arc endpoint not a vertex: " + a.from);
        if (iv == index_.end())
            throw std::invalid_argument("arc endpoint not a vertex: " + a.to);
        if (iu->second == iv->second)
            throw std::invalid_argument("self-loop rejected: " + a.from);
        if (arc_keys_.insert(arc_key(iu->second, iv->second)).second) {
            out_[static_cast<size_t>(iu->second)].push_back(iv->second);
            in_[static_cast<size_t>(iv->second)].push_back(iu->second);
            ++n_arcs_;
        }
    }
    for (auto& v : out_) std::sort(v.begin(), v.end());
    for (auto& v : in_) std::sort(v.begin(), v.end());
}

int Digraph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

bool Digraph::has_arc(int u, int v) const {
    return arc_keys_.count(arc_key(u, v)) > 0;
}

bool Digraph::has_arc(const std::string& u, const std::string& v) const {
    int iu = index_of(u), iv = index_of(v);
    return iu >= 0 && iv >= 0 && has_arc(iu, iv);
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> result;
    result.reserve(static_cast<size_t>(n_arcs_));
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : out_[static_cast<size_t>(u)])
            result.push_back({labels_[static_cast<size_t>(u)], labels_[static_cast<size_t>(v)]});
    std::sort(result.begin(), result.end());
    return result;
}

VertexSet Digraph::vertex_set() const {
    return VertexSet(labels_.begin(), labels_.end());
}

bool Digraph::operator==(const Digraph& other) const {
    return vertex_set() == other.vertex_set() && arcs() == other.arcs();
}

UndirectedGraph::UndirectedGraph(std::vector<std::string> vertices,
                                 const std::vector<std::pair<std::string, std::string>>& edges)
    : labels_(std::move(vertices)) {
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate vertex label: " + l);
    for (const auto& [u, v] : edges) {
        if (!seen.count(u)) throw std::invalid_argument("edge endpoint not a vertex: " + u);
        if (!seen.count(v)) throw std::invalid_argument("edge endpoint not a vertex: " + v);
        if (u == v) throw std::invalid_argument("self-loop rejected: " + u);
        edges_.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
    }
}

bool UndirectedGraph::has_vertex(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

bool UndirectedGraph::has_edge(const std::string& u, const std::string& v) const {
    return edges_.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) > 0;
}

bool UndirectedGraph::operator==(const UndirectedGraph& other) const {
    return vertex_set() == other.vertex_set() && edges_ == other.edges_;
}

Digraph induced_subdigraph(const Digraph& g, const VertexSet& s) {
    std::vector<std::string> verts;
    for (const auto& l : g.vertices()) {
        if (s.count(l)) verts.push_back(l);
    }
    if (verts.size() != s.size()) {
        for (const auto& l : s)
            if (!g.has_vertex(l))
                throw std::invalid_argument("induced subdigraph: unknown vertex " + l);
    }
    std::vector<Arc> arcs;
    for (const Arc& a : g.arcs())
        if (s.count(a.from) && s.count(a.to)) arcs.push_back(a);
    return Digraph(std::move(verts), arcs);
}

UndirectedGraph underlying_graph(const Digraph& g) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Arc& a : g.arcs()) edges.emplace_back(a.from, a.to);
    return UndirectedGraph(g.vertices(), edges);
}

Digraph complete_biorientation(const UndirectedGraph& g) {
    std::vector<Arc> arcs;
    for (const auto& [u, v] : g.edges()) {
        arcs.push_back({u, v});
        arcs.push_back({v, u});
    }
    return Digraph(g.vertices(), arcs);
}

Digraph complement_digraph(const Digraph& g) {
    std::vector<Arc> arcs;
    for (const auto& u : g.vertices())
        for (const auto& v : g.vertices())
            if (u != v && !g.has_arc(u, v)) arcs.push_back({u, v});
    return Digraph(g.vertices(), arcs);
}

Digraph converse_digraph(const Digraph& g) {
    std::vector<Arc> arcs;
    for (const Arc& a : g.arcs()) arcs.push_back({a.to, a.from});
    return Digraph(g.vertices(), arcs);
}

Condensation strong_components(const Digraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int n_comp = 0;
    {
        // Tarjan, iterative.
        std::vector<int> low(static_cast<size_t>(n), 0), num(static_cast<size_t>(n), -1);
        std::vector<bool> on_stack(static_cast<size_t>(n), false);
        std::vector<int> stack;
        int counter = 0;
        struct Frame { int v; size_t next_child; };
        std::vector<Frame> call;
        for (int root = 0; root < n; ++root) {
            if (num[static_cast<size_t>(root)] != -1) continue;
            call.push_back({root, 0});
            while (!call.empty()) {
                auto& [v, child] = call.back();
                if (child == 0) {
                    num[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = counter++;
                    stack.push_back(v);
                    on_stack[static_cast<size_t>(v)] = true;
                }
                const auto& succ = g.out_neighbors(v);
                if (child < succ.size()) {
                    int w = succ[child++];
                    if (num[static_cast<size_t>(w)] == -1) {
                        call.push_back({w, 0});
                    } else if (on_stack[static_cast<size_t>(w)]) {
                        low[static_cast<size_t>(v)] =
                            std::min(low[static_cast<size_t>(v)], num[static_cast<size_t>(w)]);
                    }
                } else {
                    if (low[static_cast<size_t>(v)] == num[static_cast<size_t>(v)]) {
                        int w;
                        do {
                            w = stack.back();
                            stack.pop_back();
                            on_stack[static_cast<size_t>(w)] = false;
                            comp[static_cast<size_t>(w)] = n_comp;
                        } while (w != v);
                        ++n_comp;
                    }
                    int finished = v;
                    call.pop_back();
                    if (!call.empty()) {
                        int parent = call.back().v;
                        low[static_cast<size_t>(parent)] = std::min(
                            low[static_cast<size_t>(parent)], low[static_cast<size_t>(finished)]);
                    }
                }
            }
        }
    }

    // Condensation DAG in raw component ids.
    std::vector<std::set<int>> comp_out(static_cast<size_t>(n_comp));
    std::vector<int> in_deg(static_cast<size_t>(n_comp), 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.out_neighbors(u)) {
            int cu = comp[static_cast<size_t>(u)], cv = comp[static_cast<size_t>(v)];
            if (cu != cv && comp_out[static_cast<size_t>(cu)].insert(cv).second)
                ++in_deg[static_cast<size_t>(cv)];
        }

    std::vector<std::string> min_label(static_cast<size_t>(n_comp));
    for (int v = 0; v < n; ++v) {
        auto& m = min_label[static_cast<size_t>(comp[static_cast<size_t>(v)])];
        if (m.empty() || g.label(v) < m) m = g.label(v);
    }

    // Kahn with smallest-min-label tie-break.
    auto cmp = [&](int a, int b) {
        return min_label[static_cast<size_t>(a)] > min_label[static_cast<size_t>(b)];
    };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int c = 0; c < n_comp; ++c)
        if (in_deg[static_cast<size_t>(c)] == 0) ready.push(c);
    std::vector<int> order;  // position -> raw id
    std::vector<int> pos(static_cast<size_t>(n_comp), -1);
    while (!ready.empty()) {
        int c = ready.top();
        ready.pop();
        pos[static_cast<size_t>(c)] = static_cast<int>(order.size());
        order.push_back(c);
        for (int d : comp_out[static_cast<size_t>(c)])
            if (--in_deg[static_cast<size_t>(d)] == 0) ready.push(d);
    }

    Condensation result;
    result.components.resize(static_cast<size_t>(n_comp));
    for (int v = 0; v < n; ++v)
        result.components[static_cast<size_t>(pos[static_cast<size_t>(comp[static_cast<size_t>(v)])])]
            .insert(g.label(v));
    for (int c = 0; c < n_comp; ++c)
        for (int d : comp_out[static_cast<size_t>(c)])
            result.component_arcs.insert({pos[static_cast<size_t>(c)], pos[static_cast<size_t>(d)]});
    return result;
}

namespace {

// Max clique on the mutual-arc graph, DFS in label order with the
// size bound |clique| + |candidates| <= best as the prune.
struct CliqueSearch {
    int n = 0;
    std::vector<std::uint64_t> adj;
    std::uint64_t best_mask = 0;
    int best_size = 0;

    void run(std::uint64_t current, int size, std::uint64_t candidates) {
        if (size > best_size) {
            best_size = size;
            best_mask = current;
        }
        while (candidates) {
            if (size + __builtin_popcountll(candidates) <= best_size) return;
            int v = __builtin_ctzll(candidates);
            candidates &= candidates - 1;
            run(current | (1ULL << v), size + 1, candidates & adj[static_cast<size_t>(v)]);
        }
    }
};

}  // namespace

VertexSet largest_bioriented_clique(const Digraph& g, int cap) {
    const int n = g.vertex_count();
    if (n > cap || n > 63) throw CapExceeded("largest_bioriented_clique", n, std::min(cap, 63));
    if (n == 0) return {};

    // Work in label-sorted order so the answer is reproducible.
    std::vector<std::string> sorted = g.vertices();
    std::sort(sorted.begin(), sorted.end());
    CliqueSearch search;
    search.n = n;
    search.adj.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.has_arc(sorted[static_cast<size_t>(i)], sorted[static_cast<size_t>(j)]) &&
                g.has_arc(sorted[static_cast<size_t>(j)], sorted[static_cast<size_t>(i)]))
                search.adj[static_cast<size_t>(i)] |= 1ULL << j;
    search.run(0, 0, n == 63 ? ~0ULL >> 1 : (1ULL << n) - 1);

    VertexSet result;
    for (int i = 0; i < n; ++i)
        if (search.best_mask & (1ULL << i)) result.insert(sorted[static_cast<size_t>(i)]);
    return result;
}

namespace {

// Strips comments, returns significant lines with their 1-based numbers.
std::vector<std::pair<std::string, std::size_t>> significant_lines(std::istream& in) {
    std::vector<std::pair<std::string, std::size_t>> lines;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        lines.emplace_back(line.substr(begin, end - begin + 1), number);
    }
    return lines;
}

}  // namespace

Digraph read_edge_list(std::istream& in) {
    auto lines = significant_lines(in);
    if (lines.empty()) throw ParseError("edge list: missing header line", 1);
    std::istringstream header(lines[0].first);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0)
        throw ParseError("edge list: header must be `n m`", lines[0].second);
    if (lines.size() != static_cast<size_t>(1 + n + m))
        throw ParseError("edge list: expected " + std::to_string(1 + n + m) + " lines, found " +
                             std::to_string(lines.size()),
                         lines.back().second);
    std::vector<std::string> vertices;
    for (long long i = 0; i < n; ++i) {
        std::istringstream row(lines[static_cast<size_t>(1 + i)].first);
        std::string label, extra;
        if (!(row >> label) || (row >> extra))
            throw ParseError("edge list: expected one vertex label",
                             lines[static_cast<size_t>(1 + i)].second);
        vertices.push_back(label);
    }
    std::vector<Arc> arcs;
    for (long long i = 0; i < m; ++i) {
        std::istringstream row(lines[static_cast<size_t>(1 + n + i)].first);
        std::string u, v, extra;
        if (!(row >> u >> v) || (row >> extra))
            throw ParseError("edge list: expected `u v`", lines[static_cast<size_t>(1 + n + i)].second);
        arcs.push_back({u, v});
    }
    try {
        return Digraph(std::move(vertices), arcs);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("edge list: ") + e.what(), lines[0].second);
    }
}

void write_edge_list(std::ostream& out, const Digraph& g) {
    auto arcs = g.arcs();
    out << g.vertex_count() << ' ' << arcs.size() << '\n';
    for (const auto& l : g.vertices()) out << l << '\n';
    for (const Arc& a : arcs) out << a.from << ' ' << a.to << '\n';
}

}  // namespace dcw
