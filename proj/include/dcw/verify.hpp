#pragma once

#include <string>
#include <vector>

#include "dcw/decompose.hpp"
#include "dcw/digraph.hpp"

namespace dcw {

struct Violation {
    std::string axiom;  // "dpw-1", "dpw-2", "dpw-3", "dtw-1", "dtw-2"
    std::string witness;
    auto operator<=>(const Violation&) const = default;
};

struct Verdict {
    bool valid = false;
    int width = -1;  // width of the structure, reported even when invalid
    std::vector<Violation> violations;  // sorted
};

// Axioms for a path decomposition of g: every vertex occurs, every arc has
// a tail occurrence no later than some head occurrence, occurrences form an
// interval. Bags naming unknown vertices raise std::invalid_argument.
Verdict verify_path_decomposition(const Digraph& g, const PathDecomposition& p);

// Guard-set semantics for the tree axiom. Strict removes every vertex of
// Z, even those lying in S; Disjoint guards with Z - S instead, the older
// convention.
enum class Normality { Strict, Disjoint };

struct NormalityResult {
    bool normal = true;
    std::vector<std::string> witness_walk;  // violating walk when not normal
};

// S is Z-normal when no directed walk of g - Z starts and ends in S while
// visiting a vertex outside S and Z.
NormalityResult is_z_normal(const Digraph& g, const VertexSet& s, const VertexSet& z,
                            Normality variant = Normality::Strict);

// Axioms for an arboreal decomposition of g: the classes partition the
// vertices into nonempty sets, and for every tree arc the classes below it
// form a set normal for that arc's guard. Structural defects (bad parent
// indices, multiple roots, cycles) and unknown vertices raise
// std::invalid_argument.
Verdict verify_tree_decomposition(const Digraph& g, const ArborealDecomposition& d,
                                  Normality variant = Normality::Strict);

}  // namespace dcw
