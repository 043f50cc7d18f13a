#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcw/decompose.hpp"
#include "dcw/generate.hpp"
#include "dcw/oracle.hpp"
#include "dcw/verify.hpp"
#include "dcw/width.hpp"
#include "doctest.h"

using namespace dcw;

namespace {

Digraph eval(const std::string& text) { return evaluate(parse_expression(text)); }

std::vector<Violation> axioms_of(const Verdict& v) { return v.violations; }

// Direct transcription of the three path axioms, kept independent of the
// library implementation.
bool axioms_hold(const Digraph& g, const std::vector<VertexSet>& bags) {
    for (const auto& v : g.vertices()) {
        bool seen = false;
        for (const auto& bag : bags) seen = seen || bag.count(v) > 0;
        if (!seen) return false;
    }
    for (const Arc& a : g.arcs()) {
        bool ok = false;
        for (size_t i = 0; i < bags.size() && !ok; ++i)
            for (size_t j = i; j < bags.size() && !ok; ++j)
                ok = bags[i].count(a.from) > 0 && bags[j].count(a.to) > 0;
        if (!ok) return false;
    }
    for (const auto& v : g.vertices())
        for (size_t i = 0; i < bags.size(); ++i)
            for (size_t j = i + 1; j < bags.size(); ++j)
                for (size_t k = i + 1; k < j; ++k)
                    if (bags[i].count(v) && bags[j].count(v) && !bags[k].count(v)) return false;
    return true;
}

// Walk-space product construction: states are (vertex, set of visited
// vertices outside S); any closed S-to-S walk corresponds to a reachable
// state, so no length bound is needed.
bool normal_by_states(const Digraph& g, const VertexSet& s, const VertexSet& z,
                      Normality variant) {
    VertexSet guard = z;
    if (variant == Normality::Disjoint) {
        guard.clear();
        for (const auto& v : z)
            if (!s.count(v)) guard.insert(v);
    }
    const int n = g.vertex_count();
    std::uint32_t s_mask = 0, guard_mask = 0;
    for (const auto& v : s) s_mask |= 1u << g.index_of(v);
    for (const auto& v : guard) guard_mask |= 1u << g.index_of(v);

    std::vector<char> seen(static_cast<size_t>(n) << n, 0);
    std::vector<std::pair<int, std::uint32_t>> queue;
    auto push = [&](int v, std::uint32_t outside) {
        size_t key = (static_cast<size_t>(v) << n) | outside;
        if (!seen[key]) {
            seen[key] = 1;
            queue.emplace_back(v, outside);
        }
    };
    for (int v = 0; v < n; ++v)
        if ((s_mask >> v & 1) && !(guard_mask >> v & 1)) push(v, 0);
    for (size_t head = 0; head < queue.size(); ++head) {
        auto [u, outside] = queue[head];
        if ((s_mask >> u & 1) && outside != 0) return false;
        for (int v : g.out_neighbors(u)) {
            if (guard_mask >> v & 1) continue;
            std::uint32_t next = outside;
            if (!(s_mask >> v & 1)) next |= 1u << v;
            push(v, next);
        }
    }
    return true;
}

}  // namespace

TEST_CASE("path verdict fixtures") {
    Digraph k2 = eval("a*b");
    Verdict ok = verify_path_decomposition(k2, {{{"a", "b"}}});
    CHECK(ok.valid);
    CHECK(ok.width == 1);

    Digraph back({"a", "b"}, {{"b", "a"}});
    Verdict miss = verify_path_decomposition(back, {{{"a"}, {"b"}}});
    CHECK_FALSE(miss.valid);
    CHECK(axioms_of(miss) == std::vector<Violation>{{"dpw-2", "arc b->a"}});
    CHECK(miss.width == 0);

    Digraph three({"a", "b", "c"}, {});
    Verdict gap = verify_path_decomposition(three, {{{"a"}, {"b"}, {"a", "c"}}});
    CHECK_FALSE(gap.valid);
    CHECK(axioms_of(gap) == std::vector<Violation>{{"dpw-3", "vertex a"}});

    Verdict missing = verify_path_decomposition(three, {{{"a"}}});
    CHECK(axioms_of(missing) ==
          std::vector<Violation>{{"dpw-1", "vertex b"}, {"dpw-1", "vertex c"}});

    CHECK_THROWS_AS(verify_path_decomposition(k2, {{{"z"}}}), std::invalid_argument);
}

TEST_CASE("the path verifier matches a direct axiom transcription") {
    std::vector<std::string> labels = {"a", "b", "c"};
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            if (u != v) pairs.emplace_back(u, v);
    std::vector<VertexSet> subsets;
    for (int m = 0; m < 8; ++m) {
        VertexSet s;
        for (int i = 0; i < 3; ++i)
            if (m >> i & 1) s.insert(labels[static_cast<size_t>(i)]);
        subsets.push_back(s);
    }

    for (int arcs_mask = 0; arcs_mask < 64; ++arcs_mask) {
        std::vector<Arc> arcs;
        for (int i = 0; i < 6; ++i)
            if (arcs_mask >> i & 1)
                arcs.push_back({labels[static_cast<size_t>(pairs[static_cast<size_t>(i)].first)],
                                labels[static_cast<size_t>(pairs[static_cast<size_t>(i)].second)]});
        Digraph g(labels, arcs);
        for (int len = 1; len <= 3; ++len) {
            std::vector<int> idx(static_cast<size_t>(len), 0);
            while (true) {
                PathDecomposition p;
                for (int i : idx) p.bags.push_back(subsets[static_cast<size_t>(i)]);
                CHECK(verify_path_decomposition(g, p).valid == axioms_hold(g, p.bags));
                int pos = len - 1;
                while (pos >= 0 && idx[static_cast<size_t>(pos)] == 7) idx[static_cast<size_t>(pos--)] = 0;
                if (pos < 0) break;
                ++idx[static_cast<size_t>(pos)];
            }
        }
    }
}

TEST_CASE("normality fixtures") {
    Digraph cyc({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    CHECK(is_z_normal(cyc, {"a", "b", "c"}, {}).normal);

    NormalityResult bad = is_z_normal(cyc, {"a"}, {});
    CHECK_FALSE(bad.normal);
    CHECK(bad.witness_walk == std::vector<std::string>{"a", "b", "c", "a"});

    CHECK(is_z_normal(cyc, {"a"}, {"b"}).normal);
    CHECK(is_z_normal(cyc, {}, {}).normal);
    CHECK_THROWS_AS(is_z_normal(cyc, {"q"}, {}), std::invalid_argument);
}

TEST_CASE("normality variants differ when S and Z intersect") {
    Digraph g({"a", "x", "b"}, {{"a", "x"}, {"x", "b"}, {"b", "a"}});
    CHECK(is_z_normal(g, {"a", "x"}, {"x"}, Normality::Strict).normal);
    NormalityResult r = is_z_normal(g, {"a", "x"}, {"x"}, Normality::Disjoint);
    CHECK_FALSE(r.normal);
    CHECK(r.witness_walk == std::vector<std::string>{"x", "b", "a"});
}

TEST_CASE("normality matches the walk-state oracle") {
    for (int i = 0; i < 16; ++i) {
        int n = 4 + i % 3;
        Digraph g = random_digraph(700 + static_cast<std::uint64_t>(i), n, 0.25 + 0.05 * (i % 5));
        std::vector<std::string> verts(g.vertices().begin(), g.vertices().end());
        for (int sm = 0; sm < 1 << n; ++sm)
            for (int zm = 0; zm < 1 << n; zm += (i % 2) + 1) {
                VertexSet s, z;
                for (int v = 0; v < n; ++v) {
                    if (sm >> v & 1) s.insert(verts[static_cast<size_t>(v)]);
                    if (zm >> v & 1) z.insert(verts[static_cast<size_t>(v)]);
                }
                for (Normality variant : {Normality::Strict, Normality::Disjoint}) {
                    NormalityResult r = is_z_normal(g, s, z, variant);
                    CAPTURE(i);
                    CAPTURE(sm);
                    CAPTURE(zm);
                    CHECK(r.normal == normal_by_states(g, s, z, variant));
                    if (!r.normal) {
                        // the walk must itself witness the violation
                        REQUIRE(r.witness_walk.size() >= 2);
                        CHECK(s.count(r.witness_walk.front()) == 1);
                        CHECK(s.count(r.witness_walk.back()) == 1);
                        bool outside = false;
                        for (size_t k = 0; k + 1 < r.witness_walk.size(); ++k) {
                            CHECK(g.has_arc(r.witness_walk[k], r.witness_walk[k + 1]));
                            outside = outside || s.count(r.witness_walk[k]) == 0;
                        }
                        CHECK(outside);
                    }
                }
            }
    }
}

TEST_CASE("tree verdict fixtures") {
    Digraph k2 = eval("a*b");
    ArborealDecomposition one;
    one.parent = {-1};
    one.bag_w = {{"a", "b"}};
    one.bag_x = {{}};
    Verdict ok = verify_tree_decomposition(k2, one);
    CHECK(ok.valid);
    CHECK(ok.width == 1);

    ArborealDecomposition split;
    split.parent = {-1, 0};
    split.bag_w = {{"b"}, {"a"}};
    split.bag_x = {{}, {"b"}};
    CHECK(verify_tree_decomposition(k2, split).valid);

    // dropping the guard exposes the walk a -> b -> a
    split.bag_x[1] = {};
    Verdict bad = verify_tree_decomposition(k2, split);
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].axiom == "dtw-2");
    CHECK(bad.violations[0].witness == "node 1 walk a->b->a");
}

TEST_CASE("tree class axioms") {
    Digraph three({"a", "b", "c"}, {});
    ArborealDecomposition d;
    d.parent = {-1, 0};
    d.bag_w = {{"a"}, {}};
    d.bag_x = {{}, {}};
    Verdict empty_class = verify_tree_decomposition(three, d);
    CHECK_FALSE(empty_class.valid);
    CHECK(axioms_of(empty_class) == std::vector<Violation>{{"dtw-1", "node 1"},
                                                           {"dtw-1", "vertex b"},
                                                           {"dtw-1", "vertex c"}});

    d.bag_w = {{"a", "b"}, {"b", "c"}};
    Verdict dup = verify_tree_decomposition(three, d);
    CHECK_FALSE(dup.valid);
    CHECK(axioms_of(dup) == std::vector<Violation>{{"dtw-1", "vertex b"}});
}

TEST_CASE("tree structural defects are input errors") {
    Digraph k2 = eval("a*b");
    ArborealDecomposition two_roots;
    two_roots.parent = {-1, -1};
    two_roots.bag_w = {{"a"}, {"b"}};
    two_roots.bag_x = {{}, {}};
    CHECK_THROWS_AS(verify_tree_decomposition(k2, two_roots), std::invalid_argument);

    ArborealDecomposition cycle;
    cycle.parent = {1, 0};
    cycle.bag_w = {{"a"}, {"b"}};
    cycle.bag_x = {{}, {}};
    CHECK_THROWS_AS(verify_tree_decomposition(k2, cycle), std::invalid_argument);

    ArborealDecomposition bad_index;
    bad_index.parent = {-1, 7};
    bad_index.bag_w = {{"a"}, {"b"}};
    bad_index.bag_x = {{}, {}};
    CHECK_THROWS_AS(verify_tree_decomposition(k2, bad_index), std::invalid_argument);
}

TEST_CASE("certificate bags cover bioriented cliques") {
    GeneratorConfig cfg;
    cfg.seed = 71;
    cfg.count = 40;
    cfg.max_leaves = 8;
    cfg.max_arity = 3;
    cfg.weight_series = 2;
    for (const ExprPtr& e : generate_expressions(cfg)) {
        ExprPtr b = binarize(e);
        WidthAnnotation ann;
        compute_dpw(b, &ann);
        Digraph g = evaluate(b);
        VertexSet clique = largest_bioriented_clique(g);

        PathDecomposition p = build_path_decomposition(b, ann);
        bool in_bag = false;
        for (const auto& bag : p.bags)
            in_bag = in_bag || std::includes(bag.begin(), bag.end(), clique.begin(), clique.end());
        CAPTURE(print_expression(e));
        CHECK(in_bag);

        ArborealDecomposition t = build_tree_decomposition(b, ann);
        bool in_node = false;
        for (int i = 0; i < t.node_count(); ++i) {
            VertexSet node = t.bag_w[static_cast<size_t>(i)];
            if (t.parent[static_cast<size_t>(i)] != -1)
                node.insert(t.bag_x[static_cast<size_t>(i)].begin(),
                            t.bag_x[static_cast<size_t>(i)].end());
            for (int j = 0; j < t.node_count(); ++j)
                if (t.parent[static_cast<size_t>(j)] == i)
                    node.insert(t.bag_x[static_cast<size_t>(j)].begin(),
                                t.bag_x[static_cast<size_t>(j)].end());
            in_node = in_node ||
                      std::includes(node.begin(), node.end(), clique.begin(), clique.end());
        }
        CHECK(in_node);
    }
}

TEST_CASE("valid decompositions of a bioriented complete bipartite digraph keep a side together") {
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            std::string left = "x1", right = "y1";
            for (int i = 2; i <= a; ++i) left += "+x" + std::to_string(i);
            for (int i = 2; i <= b; ++i) right += "+y" + std::to_string(i);
            Digraph g = eval("(" + left + ")*(" + right + ")");
            OracleResult r = dpw_exact(g);
            VertexSet xs, ys;
            for (int i = 1; i <= a; ++i) xs.insert("x" + std::to_string(i));
            for (int i = 1; i <= b; ++i) ys.insert("y" + std::to_string(i));
            bool side = false;
            for (const auto& bag : r.decomposition.bags)
                side = side ||
                       std::includes(bag.begin(), bag.end(), xs.begin(), xs.end()) ||
                       std::includes(bag.begin(), bag.end(), ys.begin(), ys.end());
            CAPTURE(a);
            CAPTURE(b);
            CHECK(side);
        }
}
