#include "dcw/verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dcw {

namespace {

void require_known(const Digraph& g, const VertexSet& s, const char* where) {
    for (const auto& v : s)
        if (!g.has_vertex(v))
            throw std::invalid_argument(std::string(where) + " names unknown vertex " + v);
}

std::string join_walk(const std::vector<std::string>& walk) {
    std::string out;
    for (size_t i = 0; i < walk.size(); ++i) {
        if (i) out += "->";
        out += walk[i];
    }
    return out;
}

}  // namespace

Verdict verify_path_decomposition(const Digraph& g, const PathDecomposition& p) {
    for (const auto& bag : p.bags) require_known(g, bag, "bag");

    Verdict verdict;
    verdict.width = p.width();

    std::map<std::string, std::pair<int, int>> occurrence;  // first and last bag
    for (size_t i = 0; i < p.bags.size(); ++i)
        for (const auto& v : p.bags[i]) {
            auto [it, fresh] = occurrence.try_emplace(v, static_cast<int>(i), static_cast<int>(i));
            if (!fresh) it->second.second = static_cast<int>(i);
        }

    for (const auto& v : g.vertices())
        if (!occurrence.count(v)) verdict.violations.push_back({"dpw-1", "vertex " + v});

    for (const auto& [v, range] : occurrence)
        for (int i = range.first; i <= range.second; ++i)
            if (!p.bags[static_cast<size_t>(i)].count(v)) {
                verdict.violations.push_back({"dpw-3", "vertex " + v});
                break;
            }

    for (const Arc& a : g.arcs()) {
        auto tail = occurrence.find(a.from);
        auto head = occurrence.find(a.to);
        if (tail == occurrence.end() || head == occurrence.end()) continue;  // dpw-1 already
        if (tail->second.first > head->second.second)
            verdict.violations.push_back({"dpw-2", "arc " + a.from + "->" + a.to});
    }

    std::sort(verdict.violations.begin(), verdict.violations.end());
    verdict.valid = verdict.violations.empty();
    return verdict;
}

NormalityResult is_z_normal(const Digraph& g, const VertexSet& s, const VertexSet& z,
                            Normality variant) {
    require_known(g, s, "S");
    require_known(g, z, "Z");
    VertexSet guard;
    if (variant == Normality::Strict) {
        guard = z;
    } else {
        for (const auto& v : z)
            if (!s.count(v)) guard.insert(v);
    }

    const int n = g.vertex_count();
    std::vector<char> in_s(static_cast<size_t>(n), 0), in_guard(static_cast<size_t>(n), 0);
    for (const auto& v : s) in_s[static_cast<size_t>(g.index_of(v))] = 1;
    for (const auto& v : guard) in_guard[static_cast<size_t>(g.index_of(v))] = 1;

    // fwd[v]: a walk from S reaches v inside g - guard; parent chains give
    // the witness. back[] is the mirror on reversed arcs.
    auto search = [&](bool forward) {
        std::vector<int> parent(static_cast<size_t>(n), -2);
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (in_s[static_cast<size_t>(v)] && !in_guard[static_cast<size_t>(v)]) {
                parent[static_cast<size_t>(v)] = -1;
                queue.push_back(v);
            }
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            const auto& next = forward ? g.out_neighbors(u) : g.in_neighbors(u);
            for (int v : next)
                if (parent[static_cast<size_t>(v)] == -2 && !in_guard[static_cast<size_t>(v)]) {
                    parent[static_cast<size_t>(v)] = u;
                    queue.push_back(v);
                }
        }
        return parent;
    };
    std::vector<int> fwd = search(true);
    std::vector<int> back = search(false);

    int bad = -1;
    for (int v = 0; v < n; ++v)
        if (!in_s[static_cast<size_t>(v)] && !in_guard[static_cast<size_t>(v)] &&
            fwd[static_cast<size_t>(v)] != -2 && back[static_cast<size_t>(v)] != -2)
            if (bad == -1 || g.label(v) < g.label(bad)) bad = v;

    NormalityResult result;
    if (bad == -1) return result;
    result.normal = false;
    std::vector<std::string> prefix;
    for (int v = bad; v != -1; v = fwd[static_cast<size_t>(v)]) prefix.push_back(g.label(v));
    std::reverse(prefix.begin(), prefix.end());
    result.witness_walk = std::move(prefix);
    for (int v = back[static_cast<size_t>(bad)]; v != -1; v = back[static_cast<size_t>(v)])
        result.witness_walk.push_back(g.label(v));
    return result;
}

Verdict verify_tree_decomposition(const Digraph& g, const ArborealDecomposition& d,
                                  Normality variant) {
    const int n = d.node_count();
    if (d.bag_w.size() != d.parent.size() || d.bag_x.size() != d.parent.size())
        throw std::invalid_argument("node, class and guard counts differ");
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        int p = d.parent[static_cast<size_t>(i)];
        if (p == -1)
            ++roots;
        else if (p < 0 || p >= n || p == i)
            throw std::invalid_argument("bad parent index at node " + std::to_string(i));
    }
    if (n > 0 && roots != 1) throw std::invalid_argument("tree must have exactly one root");
    for (int i = 0; i < n; ++i) {
        int steps = 0;
        for (int v = i; v != -1; v = d.parent[static_cast<size_t>(v)])
            if (++steps > n) throw std::invalid_argument("parent links contain a cycle");
    }
    for (int i = 0; i < n; ++i) {
        require_known(g, d.bag_w[static_cast<size_t>(i)], "class");
        require_known(g, d.bag_x[static_cast<size_t>(i)], "guard");
    }

    Verdict verdict;
    verdict.width = d.width();

    std::map<std::string, int> owner;
    for (int i = 0; i < n; ++i) {
        if (d.bag_w[static_cast<size_t>(i)].empty())
            verdict.violations.push_back({"dtw-1", "node " + std::to_string(i)});
        for (const auto& v : d.bag_w[static_cast<size_t>(i)])
            if (!owner.emplace(v, i).second)
                verdict.violations.push_back({"dtw-1", "vertex " + v});
    }
    for (const auto& v : g.vertices())
        if (!owner.count(v)) verdict.violations.push_back({"dtw-1", "vertex " + v});

    // Subtree unions, children before parents.
    std::vector<VertexSet> below(static_cast<size_t>(n));
    {
        std::vector<int> depth(static_cast<size_t>(n), 0);
        std::vector<int> nodes(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            nodes[static_cast<size_t>(i)] = i;
            for (int v = d.parent[static_cast<size_t>(i)]; v != -1;
                 v = d.parent[static_cast<size_t>(v)])
                ++depth[static_cast<size_t>(i)];
        }
        std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
            return depth[static_cast<size_t>(a)] > depth[static_cast<size_t>(b)];
        });
        for (int i : nodes) {
            below[static_cast<size_t>(i)].insert(d.bag_w[static_cast<size_t>(i)].begin(),
                                                 d.bag_w[static_cast<size_t>(i)].end());
            int p = d.parent[static_cast<size_t>(i)];
            if (p != -1)
                below[static_cast<size_t>(p)].insert(below[static_cast<size_t>(i)].begin(),
                                                     below[static_cast<size_t>(i)].end());
        }
    }

    for (int i = 0; i < n; ++i) {
        if (d.parent[static_cast<size_t>(i)] == -1) continue;
        NormalityResult r =
            is_z_normal(g, below[static_cast<size_t>(i)], d.bag_x[static_cast<size_t>(i)], variant);
        if (!r.normal)
            verdict.violations.push_back(
                {"dtw-2", "node " + std::to_string(i) + " walk " + join_walk(r.witness_walk)});
    }

    std::sort(verdict.violations.begin(), verdict.violations.end());
    verdict.violations.erase(std::unique(verdict.violations.begin(), verdict.violations.end()),
                             verdict.violations.end());
    verdict.valid = verdict.violations.empty();
    return verdict;
}

}  // namespace dcw
