#pragma once

#include "dcw/decompose.hpp"
#include "dcw/digraph.hpp"

namespace dcw {

struct OracleResult {
    int width = -1;
    PathDecomposition decomposition;
};

// Exact directed path-width by exhaustive search over vertex orderings
// (iterative deepening on the answer, with memoized dead states). The
// returned decomposition is valid and realizes `width`. Deterministic.
// Throws CapExceeded beyond `cap` vertices.
OracleResult dpw_exact(const Digraph& g, int cap = 12);

// Exact undirected path-width; the undirected problem is the directed one
// on the complete biorientation.
int pw_exact_undirected(const UndirectedGraph& g, int cap = 12);

struct DtwBracket {
    int lower = -1;
    int upper = -1;
    bool exact() const { return lower == upper; }
};

// Directed tree-width enclosure, per strong component: recognized
// components are exact via the recurrence; the rest get the
// bioriented-clique lower bound and the exact directed path-width as upper
// bound. Throws CapExceeded when an unrecognized component defeats the caps.
DtwBracket dtw_bracket(const Digraph& g, int oracle_cap = 12, int clique_cap = 20,
                       int recognizer_cap = 512);

}  // namespace dcw
