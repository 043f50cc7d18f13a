#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcw/generate.hpp"
#include "dcw/oracle.hpp"
#include "dcw/width.hpp"
#include "doctest.h"

using namespace dcw;

namespace {

int width_of(const std::string& text) { return compute_dpw(binarize(parse_expression(text))); }

// Mirror of binarize that nests to the right, used to show the result does
// not depend on how a wide operator is split.
ExprPtr right_binarize(const ExprPtr& e) {
    if (e->op == ExprOp::Leaf || e->op == ExprOp::Block) return e;
    std::vector<ExprPtr> kids;
    for (const ExprPtr& c : e->children) kids.push_back(right_binarize(c));
    ExprPtr acc = kids.back();
    for (int i = static_cast<int>(kids.size()) - 2; i >= 0; --i) {
        std::vector<ExprPtr> pair = {kids[static_cast<std::size_t>(i)], acc};
        switch (e->op) {
            case ExprOp::DisjointUnion: acc = make_disjoint_union(std::move(pair)); break;
            case ExprOp::Series: acc = make_series(std::move(pair)); break;
            case ExprOp::Order: acc = make_order(std::move(pair)); break;
            case ExprOp::DirectedUnion: {
                VertexSet left = leaf_labels(kids[static_cast<std::size_t>(i)]);
                std::vector<Arc> arcs;
                for (const Arc& a : e->cross_arcs)
                    if (left.count(a.from)) arcs.push_back(a);
                acc = make_directed_union(std::move(pair), std::move(arcs));
                break;
            }
            default: throw std::logic_error("unreachable");
        }
    }
    return acc;
}

// Expression with one leaf dropped; arcs touching the label go with it.
ExprPtr remove_leaf(const ExprPtr& e, const std::string& label) {
    if (e->op == ExprOp::Leaf) return e->label == label ? nullptr : e;
    std::vector<ExprPtr> kids;
    for (const ExprPtr& c : e->children)
        if (ExprPtr k = remove_leaf(c, label)) kids.push_back(k);
    if (kids.empty()) return nullptr;
    if (kids.size() == 1) return kids[0];
    if (e->op == ExprOp::DisjointUnion) return make_disjoint_union(std::move(kids));
    if (e->op == ExprOp::Series) return make_series(std::move(kids));
    if (e->op == ExprOp::Order) return make_order(std::move(kids));
    std::vector<Arc> arcs;
    for (const Arc& a : e->cross_arcs)
        if (a.from != label && a.to != label) arcs.push_back(a);
    return make_directed_union(std::move(kids), std::move(arcs));
}

bool contains_op(const ExprPtr& e, ExprOp op) {
    if (e->op == op) return true;
    for (const ExprPtr& c : e->children)
        if (contains_op(c, op)) return true;
    return false;
}

}  // namespace

TEST_CASE("width recurrence fixtures") {
    CHECK(width_of("a") == 0);
    CHECK(width_of("a+b") == 0);
    CHECK(width_of("a/b/c") == 0);
    CHECK(width_of("(a*b)+(c*d*e)") == 2);
    CHECK(width_of("du(a, b, c; a->b, a->c)") == 0);

    std::string kn = "v1";
    for (int n = 2; n <= 8; ++n) {
        kn += "*v" + std::to_string(n);
        CHECK(width_of(kn) == n - 1);
    }

    std::string star = "c*(l1";
    for (int n = 1; n <= 8; ++n) {
        CHECK(width_of(star + ")") == 1);
        star += "+l" + std::to_string(n + 1);
    }
}

TEST_CASE("path and tree widths agree on every expression") {
    GeneratorConfig cfg;
    cfg.seed = 21;
    cfg.count = 120;
    cfg.max_arity = 3;
    cfg.weight_directed_union = 1;
    for (const ExprPtr& e : generate_expressions(cfg)) {
        ExprPtr b = binarize(e);
        CHECK(compute_dtw(b) == compute_dpw(b));
    }
}

TEST_CASE("the recurrence rejects blocks and wide nodes") {
    CHECK_THROWS_AS(compute_dpw(parse_expression("block(x, y; x->y)")), std::invalid_argument);
    CHECK_THROWS_AS(compute_dpw(parse_expression("a+b+c")), std::invalid_argument);
    CHECK_THROWS_AS(compute_dpw(binarize(parse_expression("du(a, block(x, y; x->y); a->x)"))),
                    std::invalid_argument);
}

TEST_CASE("width does not depend on the binarization") {
    GeneratorConfig cfg;
    cfg.seed = 22;
    cfg.count = 100;
    cfg.max_leaves = 9;
    cfg.max_arity = 4;
    cfg.weight_directed_union = 2;
    for (const ExprPtr& e : generate_expressions(cfg)) {
        CAPTURE(print_expression(e));
        CHECK(compute_dpw(binarize(e)) == compute_dpw(right_binarize(e)));
    }
}

TEST_CASE("removing a leaf never increases the width") {
    GeneratorConfig cfg;
    cfg.seed = 23;
    cfg.count = 80;
    cfg.min_leaves = 3;
    cfg.max_leaves = 9;
    cfg.max_arity = 3;
    cfg.weight_directed_union = 1;
    for (const ExprPtr& e : generate_expressions(cfg)) {
        int w = compute_dpw(binarize(e));
        VertexSet labels = leaf_labels(e);
        for (const std::string& v : labels) {
            ExprPtr smaller = remove_leaf(e, v);
            REQUIRE(smaller != nullptr);
            CAPTURE(print_expression(e));
            CAPTURE(v);
            CHECK(compute_dpw(binarize(smaller)) <= w);
        }
    }
}

TEST_CASE("width is zero exactly when the expression is series-free") {
    GeneratorConfig series_free;
    series_free.seed = 24;
    series_free.count = 60;
    series_free.max_arity = 3;
    series_free.weight_series = 0;
    series_free.weight_directed_union = 2;
    for (const ExprPtr& e : generate_expressions(series_free))
        CHECK(compute_dpw(binarize(e)) == 0);

    GeneratorConfig mixed;
    mixed.seed = 25;
    mixed.count = 60;
    mixed.max_arity = 3;
    mixed.weight_series = 3;
    for (const ExprPtr& e : generate_expressions(mixed)) {
        if (!contains_op(e, ExprOp::Series)) continue;
        CAPTURE(print_expression(e));
        CHECK(compute_dpw(binarize(e)) >= 1);
    }
}

TEST_CASE("without order and directed union the digraph forgets direction") {
    GeneratorConfig cfg;
    cfg.seed = 26;
    cfg.count = 50;
    cfg.max_leaves = 8;
    cfg.max_arity = 3;
    cfg.weight_order = 0;
    for (const ExprPtr& e : generate_expressions(cfg)) {
        CAPTURE(print_expression(e));
        CHECK(compute_dpw(binarize(e)) ==
              pw_exact_undirected(underlying_graph(evaluate(e))));
    }
}

TEST_CASE("the width dominates the bioriented clique bound") {
    GeneratorConfig cfg;
    cfg.seed = 27;
    cfg.count = 60;
    cfg.max_arity = 3;
    cfg.weight_directed_union = 1;
    for (const ExprPtr& e : generate_expressions(cfg)) {
        Digraph g = evaluate(e);
        CHECK(compute_dpw(binarize(e)) >=
              static_cast<int>(largest_bioriented_clique(g).size()) - 1);
    }
}

TEST_CASE("whole-digraph width uses the recurrence on recognized components") {
    // two bioriented triangles joined by one arc
    std::vector<Arc> arcs;
    for (const auto& [u, v] : std::vector<std::pair<std::string, std::string>>{
             {"a", "b"}, {"b", "c"}, {"a", "c"}, {"x", "y"}, {"y", "z"}, {"x", "z"}}) {
        arcs.push_back({u, v});
        arcs.push_back({v, u});
    }
    arcs.push_back({"c", "x"});
    Digraph g({"a", "b", "c", "x", "y", "z"}, arcs);

    DigraphWidthReport r = width_of_digraph(g);
    CHECK(r.dpw_exact());
    CHECK(r.dtw_exact());
    CHECK(r.dpw_lower == 2);
    CHECK(r.dtw_lower == 2);
    REQUIRE(r.components.size() == 2);
    for (const ComponentReport& c : r.components) {
        CHECK(c.method == ComponentMethod::Formula);
        REQUIRE(c.expr != nullptr);
        CHECK(evaluate(c.expr) == induced_subdigraph(g, c.vertices));
    }
}

TEST_CASE("whole-digraph width falls back to search on small strange components") {
    Digraph c5({"a", "b", "c", "d", "e"},
               {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}});
    DigraphWidthReport r = width_of_digraph(c5);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].method == ComponentMethod::Oracle);
    CHECK(r.dpw_exact());
    CHECK(r.dpw_lower == 1);
    CHECK(r.dtw_lower == 0);
    CHECK(r.dtw_upper == 1);
}

TEST_CASE("whole-digraph width degrades to bounds instead of throwing") {
    std::vector<std::string> verts;
    std::vector<Arc> arcs;
    for (int i = 0; i < 14; ++i) verts.push_back("v" + std::to_string(i));
    for (int i = 0; i < 14; ++i) arcs.push_back({verts[static_cast<std::size_t>(i)],
                                                 verts[static_cast<std::size_t>((i + 1) % 14)]});
    Digraph ring(verts, arcs);
    DigraphWidthReport r = width_of_digraph(ring, 4);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].method == ComponentMethod::Bounds);
    CHECK_FALSE(r.dpw_exact());
    CHECK(r.dpw_lower == 0);
    CHECK(r.dpw_upper == 13);
    CHECK(r.dtw_lower >= 0);
}

TEST_CASE("whole-digraph width of a directed acyclic graph is zero") {
    Digraph tt4({"a", "b", "c", "d"},
                {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
    DigraphWidthReport r = width_of_digraph(tt4);
    CHECK(r.dpw_exact());
    CHECK(r.dpw_upper == 0);
    CHECK(r.dtw_upper == 0);
    CHECK(r.components.size() == 4);
}

TEST_CASE("whole-digraph width of the empty digraph is empty") {
    DigraphWidthReport r = width_of_digraph(Digraph({}, {}));
    CHECK(r.components.empty());
    CHECK(r.dpw_lower == -1);
    CHECK(r.dpw_upper == -1);
}
