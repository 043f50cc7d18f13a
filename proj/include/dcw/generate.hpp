#pragma once

#include <cstdint>
#include <vector>

#include "dcw/coexpr.hpp"
#include "dcw/digraph.hpp"

namespace dcw {

// Seeded expression sampler. Output is a pure function of the config, byte
// for byte, across platforms; leaves are named v0, v1, ... within each
// expression.
struct GeneratorConfig {
    std::uint64_t seed = 1;
    int count = 1;
    int min_leaves = 2;
    int max_leaves = 10;
    int max_arity = 2;
    int weight_disjoint_union = 2;
    int weight_series = 1;
    int weight_order = 1;
    int weight_directed_union = 0;
    double cross_arc_probability = 0.5;
};

std::vector<ExprPtr> generate_expressions(const GeneratorConfig& config);

// Digraph on v0..v(n-1) keeping each ordered pair as an arc with the given
// probability. Deterministic in the seed.
Digraph random_digraph(std::uint64_t seed, int n, double arc_probability);

}  // namespace dcw
