#include "dcw/dot.hpp"

#include <stdexcept>

namespace dcw {

namespace {

std::string set_label(const VertexSet& s) {
    if (s.empty()) return "-";
    std::string out;
    for (const auto& v : s) {
        if (!out.empty()) out += ',';
        out += v;
    }
    return out;
}

void expr_nodes(const CoExpr& e, std::string& out, int& next) {
    int self = next++;
    std::string label;
    switch (e.op) {
        case ExprOp::Leaf:
            label = e.label;
            break;
        case ExprOp::DisjointUnion:
            label = "+";
            break;
        case ExprOp::Series:
            label = "*";
            break;
        case ExprOp::Order:
            label = "/";
            break;
        case ExprOp::DirectedUnion: {
            label = "du";
            for (const Arc& a : e.cross_arcs) label += "\\n" + a.from + "->" + a.to;
            break;
        }
        case ExprOp::Block: {
            label = "block";
            for (const auto& v : e.block_vertices) label += "\\n" + v;
            break;
        }
    }
    out += "  n" + std::to_string(self) + " [label=\"" + label + "\"];\n";
    for (const auto& c : e.children) {
        int child = next;
        expr_nodes(*c, out, next);
        out += "  n" + std::to_string(self) + " -> n" + std::to_string(child) + ";\n";
    }
}

}  // namespace

std::string to_dot(const Digraph& g) {
    std::string out = "digraph G {\n";
    for (const auto& v : g.vertices()) out += "  \"" + v + "\";\n";
    for (const Arc& a : g.arcs()) out += "  \"" + a.from + "\" -> \"" + a.to + "\";\n";
    out += "}\n";
    return out;
}

std::string to_dot(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("null expression");
    std::string out = "digraph expression {\n  ordering=out;\n";
    int next = 0;
    expr_nodes(*e, out, next);
    out += "}\n";
    return out;
}

std::string to_dot(const PathDecomposition& p) {
    std::string out = "digraph path_decomposition {\n  node [shape=box];\n";
    for (size_t i = 0; i < p.bags.size(); ++i)
        out += "  b" + std::to_string(i) + " [label=\"" + set_label(p.bags[i]) + "\"];\n";
    for (size_t i = 1; i < p.bags.size(); ++i)
        out += "  b" + std::to_string(i - 1) + " -> b" + std::to_string(i) + ";\n";
    out += "}\n";
    return out;
}

std::string to_dot(const ArborealDecomposition& d) {
    std::string out = "digraph arboreal_decomposition {\n  node [shape=box];\n";
    for (int i = 0; i < d.node_count(); ++i)
        out += "  t" + std::to_string(i) + " [label=\"W: " +
               set_label(d.bag_w[static_cast<size_t>(i)]) + "\"];\n";
    for (int i = 0; i < d.node_count(); ++i)
        if (d.parent[static_cast<size_t>(i)] != -1)
            out += "  t" + std::to_string(d.parent[static_cast<size_t>(i)]) + " -> t" +
                   std::to_string(i) + " [label=\"X: " +
                   set_label(d.bag_x[static_cast<size_t>(i)]) + "\"];\n";
    out += "}\n";
    return out;
}

}  // namespace dcw
