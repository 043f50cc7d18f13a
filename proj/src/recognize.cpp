#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dcw/coexpr.hpp"
#include "dcw/errors.hpp"

namespace dcw {

namespace {

// Connected components under a caller-supplied symmetric adjacency, listed
// by smallest contained label (labels come in sorted because s is ordered).
template <typename Adjacent>
std::vector<VertexSet> split_components(const VertexSet& s, Adjacent adjacent) {
    std::vector<std::string> verts(s.begin(), s.end());
    std::vector<bool> seen(verts.size(), false);
    std::vector<VertexSet> comps;
    for (size_t seed = 0; seed < verts.size(); ++seed) {
        if (seen[seed]) continue;
        VertexSet comp;
        std::vector<size_t> queue{seed};
        seen[seed] = true;
        while (!queue.empty()) {
            size_t u = queue.back();
            queue.pop_back();
            comp.insert(verts[u]);
            for (size_t v = 0; v < verts.size(); ++v)
                if (!seen[v] && adjacent(verts[u], verts[v])) {
                    seen[v] = true;
                    queue.push_back(v);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

struct Recognizer {
    const Digraph& g;
    VertexSet witness;

    ExprPtr rec(const VertexSet& s) {
        if (s.size() == 1) return make_leaf(*s.begin());

        auto weakly = [&](const std::string& u, const std::string& v) {
            return g.has_arc(u, v) || g.has_arc(v, u);
        };
        if (auto comps = split_components(s, weakly); comps.size() >= 2)
            return combine(comps, make_disjoint_union);

        auto not_mutual = [&](const std::string& u, const std::string& v) {
            return !(g.has_arc(u, v) && g.has_arc(v, u));
        };
        if (auto comps = split_components(s, not_mutual); comps.size() >= 2)
            return combine(comps, make_series);

        if (auto comps = order_split(s); comps.size() >= 2) return combine(comps, make_order);

        witness = s;
        return nullptr;
    }

    ExprPtr combine(const std::vector<VertexSet>& parts, ExprPtr (*make)(std::vector<ExprPtr>)) {
        std::vector<ExprPtr> children;
        for (const auto& p : parts) {
            ExprPtr c = rec(p);
            if (!c) return nullptr;
            children.push_back(std::move(c));
        }
        return make(std::move(children));
    }

    // Finest ordered partition realizing an order composition, or a single
    // part when none exists. Starts from the strong components and merges
    // any two groups that are not related by "every arc forward, none back"
    // until the relation is total.
    std::vector<VertexSet> order_split(const VertexSet& s) {
        Condensation cond = strong_components(induced_subdigraph(g, s));
        const size_t k = cond.components.size();
        if (k <= 1) return {s};

        std::vector<std::vector<char>> fwd(k, std::vector<char>(k, 0));
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                if (a == b) continue;
                bool all = true;
                for (const auto& u : cond.components[a]) {
                    for (const auto& v : cond.components[b])
                        if (!g.has_arc(u, v) || g.has_arc(v, u)) {
                            all = false;
                            break;
                        }
                    if (!all) break;
                }
                fwd[a][b] = all;
            }

        std::vector<std::vector<size_t>> blocks(k);
        for (size_t a = 0; a < k; ++a) blocks[a] = {a};
        auto all_fwd = [&](const std::vector<size_t>& p, const std::vector<size_t>& q) {
            for (size_t a : p)
                for (size_t b : q)
                    if (!fwd[a][b]) return false;
            return true;
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < blocks.size() && !changed; ++i)
                for (size_t j = i + 1; j < blocks.size() && !changed; ++j)
                    if (!all_fwd(blocks[i], blocks[j]) && !all_fwd(blocks[j], blocks[i])) {
                        blocks[i].insert(blocks[i].end(), blocks[j].begin(), blocks[j].end());
                        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
                        changed = true;
                    }
        }
        if (blocks.size() <= 1) return {s};

        // At the fixpoint the blocks are totally ordered and a single
        // representative pair decides the direction.
        std::sort(blocks.begin(), blocks.end(),
                  [&](const std::vector<size_t>& p, const std::vector<size_t>& q) {
                      return fwd[p.front()][q.front()] != 0;
                  });
        std::vector<VertexSet> parts;
        for (const auto& block : blocks) {
            VertexSet part;
            for (size_t a : block)
                part.insert(cond.components[a].begin(), cond.components[a].end());
            parts.push_back(std::move(part));
        }
        return parts;
    }
};

}  // namespace

Recognition recognize_di_cograph(const Digraph& g, int cap) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("empty digraph has no expression");
    if (g.vertex_count() > cap) throw CapExceeded("recognize_di_cograph", g.vertex_count(), cap);
    Recognizer r{g, {}};
    ExprPtr e = r.rec(g.vertex_set());
    if (e) return {std::move(e), {}};
    return {nullptr, std::move(r.witness)};
}

ExprPtr strong_component_expression(const Digraph& g,
                                    const std::map<VertexSet, ExprPtr>* provided) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("empty digraph has no expression");
    Condensation cond = strong_components(g);
    const size_t k = cond.components.size();

    auto component_expr = [&](const VertexSet& comp) -> ExprPtr {
        Digraph sub = induced_subdigraph(g, comp);
        if (provided) {
            if (auto it = provided->find(comp); it != provided->end()) {
                if (!it->second) throw std::invalid_argument("null component expression");
                if (!(evaluate(it->second) == sub))
                    throw std::invalid_argument("component expression does not match component " +
                                                *comp.begin());
                return it->second;
            }
        }
        if (comp.size() == 1) return make_leaf(*comp.begin());
        return make_block(sub.vertices(), sub.arcs());
    };

    std::map<std::string, size_t> comp_of;
    for (size_t i = 0; i < k; ++i)
        for (const auto& v : cond.components[i]) comp_of[v] = i;
    std::vector<std::vector<Arc>> outgoing(k);
    for (const Arc& a : g.arcs())
        if (comp_of[a.from] != comp_of[a.to]) outgoing[comp_of[a.from]].push_back(a);

    ExprPtr acc = component_expr(cond.components[k - 1]);
    for (size_t i = k - 1; i-- > 0;)
        acc = make_directed_union({component_expr(cond.components[i]), acc},
                                  std::move(outgoing[i]));
    return acc;
}

}  // namespace dcw
