#pragma once

#include <iosfwd>
#include <vector>

#include "dcw/digraph.hpp"
#include "dcw/width.hpp"

namespace dcw {

struct PathDecomposition {
    std::vector<VertexSet> bags;
    int width() const;  // max bag size - 1, or -1 without bags
};

// Out-tree with one vertex class W per node and one guard set X per tree
// arc. Node 0 conventions do not apply: any node may be the root
// (parent -1); bag_x of the root is empty and unused.
struct ArborealDecomposition {
    std::vector<int> parent;
    std::vector<VertexSet> bag_w;
    std::vector<VertexSet> bag_x;  // on the arc from parent[i] to i
    int node_count() const { return static_cast<int>(parent.size()); }
    int width() const;  // max over nodes of |W + incident X| - 1
};

// Certifying constructions matching the width recurrence; `ann` comes from
// compute_dpw / compute_dtw on the same nodes. The result realizes exactly
// the computed width. Binary, block-free expressions only.
PathDecomposition build_path_decomposition(const ExprPtr& e, const WidthAnnotation& ann);
ArborealDecomposition build_tree_decomposition(const ExprPtr& e, const WidthAnnotation& ann);

// Turns a valid path decomposition of g into an arboreal one of no larger
// width (the tree is a directed path). Throws std::invalid_argument when p
// is not valid for g.
ArborealDecomposition path_to_tree_decomposition(const Digraph& g, const PathDecomposition& p);

// Splits every node with several vertices in its class into a chain of
// single-vertex nodes. Validity and width are preserved.
ArborealDecomposition normalize_singleton_bags(const Digraph& g, const ArborealDecomposition& d);

// Text form. A file holds one or more blocks:
//   kind=path          kind=tree
//   bag=a,b            node=0 parent=- W=a,b X=-
//   bag=-              node=1 parent=0 W=c X=a
// `-` is the empty set; `#` starts a comment.
struct DecompositionBlock {
    enum class Kind { Path, Tree };
    Kind kind = Kind::Path;
    PathDecomposition path;
    ArborealDecomposition tree;
};

std::vector<DecompositionBlock> read_decompositions(std::istream& in);
void write_decomposition(std::ostream& out, const PathDecomposition& p);
void write_decomposition(std::ostream& out, const ArborealDecomposition& d);

}  // namespace dcw
