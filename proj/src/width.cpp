#include "dcw/width.hpp"

#include <algorithm>
#include <stdexcept>

#include "dcw/errors.hpp"
#include "dcw/oracle.hpp"

namespace dcw {

namespace {

NodeWidths fold(const CoExpr* e, WidthAnnotation& ann) {
    NodeWidths w;
    switch (e->op) {
        case ExprOp::Leaf:
            w = {0, 1, true};
            break;
        case ExprOp::Block:
            throw std::invalid_argument("width recurrence is undefined on block leaves");
        default: {
            if (e->children.size() != 2)
                throw std::invalid_argument("width recurrence needs a binary expression");
            NodeWidths l = fold(e->children[0].get(), ann);
            NodeWidths r = fold(e->children[1].get(), ann);
            w.size = l.size + r.size;
            if (e->op == ExprOp::Series) {
                int left = l.width + r.size;
                int right = r.width + l.size;
                w.width = std::min(left, right);
                w.series_left = left <= right;
            } else {
                w.width = std::max(l.width, r.width);
            }
        }
    }
    ann[e] = w;
    return w;
}

int compute(const ExprPtr& e, WidthAnnotation* out) {
    if (!e) throw std::invalid_argument("null expression");
    WidthAnnotation ann;
    NodeWidths w = fold(e.get(), ann);
    if (out) *out = std::move(ann);
    return w.width;
}

}  // namespace

int compute_dpw(const ExprPtr& e, WidthAnnotation* out) { return compute(e, out); }

int compute_dtw(const ExprPtr& e, WidthAnnotation* out) { return compute(e, out); }

DigraphWidthReport width_of_digraph(const Digraph& g, int oracle_cap, int recognizer_cap,
                                    int clique_cap) {
    DigraphWidthReport report;
    for (const VertexSet& comp : strong_components(g).components) {
        Digraph sub = induced_subdigraph(g, comp);
        const int n = sub.vertex_count();
        ComponentReport cr;
        cr.vertices = comp;
        bool done = false;
        if (n <= recognizer_cap) {
            Recognition rec = recognize_di_cograph(sub, recognizer_cap);
            if (rec.ok()) {
                cr.expr = binarize(rec.expr);
                int w = compute_dpw(cr.expr);
                cr.method = ComponentMethod::Formula;
                cr.dpw_lower = cr.dpw_upper = cr.dtw_lower = cr.dtw_upper = w;
                done = true;
            }
        }
        if (!done) {
            int clique_lower = 0;
            if (n <= std::min(clique_cap, 63))
                clique_lower =
                    static_cast<int>(largest_bioriented_clique(sub, clique_cap).size()) - 1;
            if (n <= std::min(oracle_cap, 63)) {
                cr.method = ComponentMethod::Oracle;
                int w = dpw_exact(sub, oracle_cap).width;
                cr.dpw_lower = cr.dpw_upper = w;
                cr.dtw_lower = clique_lower;
                cr.dtw_upper = w;
            } else {
                cr.method = ComponentMethod::Bounds;
                cr.dpw_lower = cr.dtw_lower = clique_lower;
                cr.dpw_upper = cr.dtw_upper = n - 1;
            }
        }
        report.dpw_lower = std::max(report.dpw_lower, cr.dpw_lower);
        report.dpw_upper = std::max(report.dpw_upper, cr.dpw_upper);
        report.dtw_lower = std::max(report.dtw_lower, cr.dtw_lower);
        report.dtw_upper = std::max(report.dtw_upper, cr.dtw_upper);
        report.components.push_back(std::move(cr));
    }
    return report;
}

}  // namespace dcw
