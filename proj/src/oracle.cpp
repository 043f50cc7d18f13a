#include "dcw/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "dcw/coexpr.hpp"
#include "dcw/errors.hpp"
#include "dcw/width.hpp"

namespace dcw {

namespace {

// Decision search for "is there a vertex order whose every prefix has at
// most `limit` members with an in-neighbor outside the prefix". Iterative
// deepening over `limit` turns it into the optimum; `dead` memoizes prefix
// sets that cannot be completed at the current limit.
struct LayoutSearch {
    int n = 0;
    std::vector<std::uint64_t> in_mask;
    std::uint64_t full = 0;
    int limit = 0;
    std::unordered_set<std::uint64_t> dead;
    std::vector<int> order;

    int boundary(std::uint64_t s) const {
        int count = 0;
        for (std::uint64_t t = s; t; t &= t - 1)
            if (in_mask[static_cast<size_t>(__builtin_ctzll(t))] & ~s) ++count;
        return count;
    }

    bool extend(std::uint64_t s) {
        if (s == full) return true;
        if (dead.count(s)) return false;
        const std::uint64_t rest = full & ~s;
        // A vertex whose in-neighbors are all placed can go next without
        // loss: moving it to the front of any completion never raises a
        // prefix boundary. Branching is then pointless.
        for (std::uint64_t t = rest; t; t &= t - 1) {
            int v = __builtin_ctzll(t);
            if ((in_mask[static_cast<size_t>(v)] & rest) == 0) {
                order.push_back(v);
                if (extend(s | (1ULL << v))) return true;
                order.pop_back();
                dead.insert(s);
                return false;
            }
        }
        for (std::uint64_t t = rest; t; t &= t - 1) {
            int v = __builtin_ctzll(t);
            std::uint64_t s2 = s | (1ULL << v);
            if (boundary(s2) > limit) continue;
            order.push_back(v);
            if (extend(s2)) return true;
            order.pop_back();
        }
        dead.insert(s);
        return false;
    }
};

}  // namespace

OracleResult dpw_exact(const Digraph& g, int cap) {
    const int n = g.vertex_count();
    const int effective_cap = std::min(cap, 63);
    if (n > effective_cap) throw CapExceeded("dpw_exact", n, effective_cap);
    if (n == 0) return {-1, {}};

    std::vector<std::string> sorted = g.vertices();
    std::sort(sorted.begin(), sorted.end());
    LayoutSearch search;
    search.n = n;
    search.full = n == 63 ? ~0ULL >> 1 : (1ULL << n) - 1;
    search.in_mask.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.has_arc(sorted[static_cast<size_t>(j)], sorted[static_cast<size_t>(i)]))
                search.in_mask[static_cast<size_t>(i)] |= 1ULL << j;

    int width = n - 1;
    for (int k = 0; k < n; ++k) {
        search.limit = k;
        search.dead.clear();
        search.order.clear();
        if (search.extend(0)) {
            width = k;
            break;
        }
    }

    // Bag at step i: the new vertex plus every placed vertex that still has
    // an unplaced in-neighbor.
    OracleResult result;
    result.width = width;
    std::uint64_t placed = 0;
    for (int i = 0; i < n; ++i) {
        int v = search.order[static_cast<size_t>(i)];
        VertexSet bag{sorted[static_cast<size_t>(v)]};
        for (std::uint64_t t = placed; t; t &= t - 1) {
            int w = __builtin_ctzll(t);
            if (search.in_mask[static_cast<size_t>(w)] & ~placed)
                bag.insert(sorted[static_cast<size_t>(w)]);
        }
        result.decomposition.bags.push_back(std::move(bag));
        placed |= 1ULL << v;
    }
    return result;
}

int pw_exact_undirected(const UndirectedGraph& g, int cap) {
    const int n = g.vertex_count();
    const int effective_cap = std::min(cap, 63);
    if (n > effective_cap) throw CapExceeded("pw_exact_undirected", n, effective_cap);
    return dpw_exact(complete_biorientation(g), effective_cap).width;
}

DtwBracket dtw_bracket(const Digraph& g, int oracle_cap, int clique_cap, int recognizer_cap) {
    DtwBracket total;
    for (const VertexSet& comp : strong_components(g).components) {
        Digraph sub = induced_subdigraph(g, comp);
        int lower, upper;
        Recognition rec = sub.vertex_count() <= recognizer_cap
                              ? recognize_di_cograph(sub, recognizer_cap)
                              : Recognition{};
        if (rec.ok()) {
            lower = upper = compute_dpw(binarize(rec.expr));
        } else {
            lower = static_cast<int>(largest_bioriented_clique(sub, clique_cap).size()) - 1;
            upper = dpw_exact(sub, oracle_cap).width;
        }
        total.lower = std::max(total.lower, lower);
        total.upper = std::max(total.upper, upper);
    }
    return total;
}

}  // namespace dcw
