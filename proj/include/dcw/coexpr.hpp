#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dcw/digraph.hpp"

namespace dcw {

// Expression AST over labelled digraphs. Operator glossary, with L/R the
// operand vertex sets (always disjoint):
//   DisjointUnion  no arcs between L and R
//   Series         all arcs between L and R, both directions
//   Order          all arcs L -> R, none back
//   DirectedUnion  an explicit subset of the L -> R arcs (cross_arcs)
//   Block          opaque leaf holding a concrete digraph
// DirectedUnion and Block require >=2 children / explicit data and make the
// value of the expression depend on more than the operand values, so they
// carry their extra payload inline.
enum class ExprOp { Leaf, DisjointUnion, Series, Order, DirectedUnion, Block };

struct CoExpr;
using ExprPtr = std::shared_ptr<const CoExpr>;

struct CoExpr {
    ExprOp op = ExprOp::Leaf;
    std::string label;                // Leaf only
    std::vector<ExprPtr> children;    // inner nodes; >=2, in operand order
    std::vector<Arc> cross_arcs;      // DirectedUnion only
    std::vector<std::string> block_vertices;  // Block only
    std::vector<Arc> block_arcs;              // Block only
};

// Factories validate operand disjointness (and for directed unions, that
// every cross arc goes from an earlier child to a later one). They throw
// std::invalid_argument on violations.
ExprPtr make_leaf(std::string label);
ExprPtr make_disjoint_union(std::vector<ExprPtr> children);
ExprPtr make_series(std::vector<ExprPtr> children);
ExprPtr make_order(std::vector<ExprPtr> children);
ExprPtr make_directed_union(std::vector<ExprPtr> children, std::vector<Arc> cross_arcs);
ExprPtr make_block(std::vector<std::string> vertices, std::vector<Arc> arcs);

VertexSet leaf_labels(const ExprPtr& e);
int leaf_count(const ExprPtr& e);
Digraph evaluate(const ExprPtr& e);

// Concrete syntax: `+` disjoint union, `*` series, `/` order, all
// left-associative and non-mixing (a+b*c needs parentheses),
// `du(e1, e2, ...; u->v, ...)` for directed unions and
// `block(v1, v2, ...; u->v, ...)` for opaque leaves.
ExprPtr parse_expression(const std::string& text);
std::string print_expression(const ExprPtr& e);

// Rewrites every node to arity <= 2 by left-nesting; directed-union cross
// arcs move to the node that introduces their target child. Values agree.
ExprPtr binarize(const ExprPtr& e);

struct Recognition {
    ExprPtr expr;       // set when the digraph is a directed co-graph
    VertexSet witness;  // otherwise a vertex set with no admissible split
    bool ok() const { return expr != nullptr; }
};

// Decides whether g is a directed co-graph (disjoint union, series and
// order compositions of single vertices) and produces an expression for
// it. Digraphs needing explicit directed unions are rejected with a
// witness; see strong_component_expression for those. Deterministic: children of commutative operators are
// ordered by smallest contained label. Throws CapExceeded above `cap`
// vertices.
Recognition recognize_di_cograph(const Digraph& g, int cap = 512);

// Expression for g via its condensation: strong components become operands
// of a nested directed union carrying the inter-component arcs. `provided`
// optionally maps a component's vertex set to an expression for it (checked
// against the component); components without one become Block leaves.
ExprPtr strong_component_expression(const Digraph& g,
                                    const std::map<VertexSet, ExprPtr>* provided = nullptr);

}  // namespace dcw
