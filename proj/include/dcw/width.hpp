#pragma once

#include <map>
#include <vector>

#include "dcw/coexpr.hpp"

namespace dcw {

// Per-node result of the width recurrence over a binary expression.
// Directed path-width and directed tree-width coincide on every digraph an
// expression can denote, so one number serves both queries.
struct NodeWidths {
    int width = 0;
    int size = 0;             // vertices of the subexpression
    bool series_left = true;  // series nodes: certificate built on the left operand
};

using WidthAnnotation = std::map<const CoExpr*, NodeWidths>;

// Both run the same linear fold:
//   leaf                      -> 0
//   union / order / directed  -> max of the operands
//   series                    -> min(w(L) + |R|, w(R) + |L|), ties resolved left
// The expression must be binary (see binarize) and block-free; otherwise
// std::invalid_argument. `out`, when given, receives the annotation of every
// node, which the decomposition builders consume.
int compute_dpw(const ExprPtr& e, WidthAnnotation* out = nullptr);
int compute_dtw(const ExprPtr& e, WidthAnnotation* out = nullptr);

enum class ComponentMethod { Formula, Oracle, Bounds };

struct ComponentReport {
    VertexSet vertices;
    ComponentMethod method = ComponentMethod::Bounds;
    int dpw_lower = 0, dpw_upper = 0;
    int dtw_lower = 0, dtw_upper = 0;
    ExprPtr expr;  // binary expression when method == Formula
};

struct DigraphWidthReport {
    std::vector<ComponentReport> components;  // condensation order
    int dpw_lower = -1, dpw_upper = -1;
    int dtw_lower = -1, dtw_upper = -1;
    bool dpw_exact() const { return dpw_lower == dpw_upper; }
    bool dtw_exact() const { return dtw_lower == dtw_upper; }
};

// Width of an arbitrary digraph, component by component: recognized
// components use the recurrence, small ones fall back to exhaustive search,
// the rest get sound bounds (bioriented-clique size below, vertex count
// above). Totals are maxima over components; never throws for size reasons.
DigraphWidthReport width_of_digraph(const Digraph& g, int oracle_cap = 12,
                                    int recognizer_cap = 512, int clique_cap = 20);

}  // namespace dcw
