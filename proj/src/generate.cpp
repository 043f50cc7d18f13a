#include "dcw/generate.hpp"

#include <random>
#include <stdexcept>

namespace dcw {

namespace {

// mt19937_64 output is pinned by the standard; the draw helpers avoid
// std::uniform_int_distribution, whose mapping is not, so streams replay
// identically on any platform. Modulo bias is irrelevant at these ranges.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    int range(int lo, int hi) {
        return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(double p) { return static_cast<double>(engine() >> 11) * 0x1.0p-53 < p; }
};

void check(const GeneratorConfig& cfg) {
    if (cfg.count < 0) throw std::invalid_argument("count must be nonnegative");
    if (cfg.min_leaves < 1 || cfg.max_leaves < cfg.min_leaves)
        throw std::invalid_argument("need 1 <= min_leaves <= max_leaves");
    if (cfg.max_arity < 2) throw std::invalid_argument("max_arity must be at least 2");
    if (cfg.weight_disjoint_union < 0 || cfg.weight_series < 0 || cfg.weight_order < 0 ||
        cfg.weight_directed_union < 0)
        throw std::invalid_argument("weights must be nonnegative");
    if (cfg.weight_disjoint_union + cfg.weight_series + cfg.weight_order +
            cfg.weight_directed_union <= 0)
        throw std::invalid_argument("at least one weight must be positive");
    if (cfg.cross_arc_probability < 0.0 || cfg.cross_arc_probability > 1.0)
        throw std::invalid_argument("cross_arc_probability must be in [0,1]");
}

ExprPtr grow(Rng& rng, const GeneratorConfig& cfg, int leaves, int& next_label) {
    if (leaves == 1) return make_leaf("v" + std::to_string(next_label++));

    int pick = rng.range(1, cfg.weight_disjoint_union + cfg.weight_series + cfg.weight_order +
                                cfg.weight_directed_union);
    ExprOp op;
    if ((pick -= cfg.weight_disjoint_union) <= 0)
        op = ExprOp::DisjointUnion;
    else if ((pick -= cfg.weight_series) <= 0)
        op = ExprOp::Series;
    else if ((pick -= cfg.weight_order) <= 0)
        op = ExprOp::Order;
    else
        op = ExprOp::DirectedUnion;

    int arity = rng.range(2, std::min(cfg.max_arity, leaves));
    std::vector<int> part_sizes;
    int remaining = leaves;
    for (int i = 0; i < arity; ++i) {
        int slots_after = arity - i - 1;
        int take = i + 1 == arity ? remaining : rng.range(1, remaining - slots_after);
        part_sizes.push_back(take);
        remaining -= take;
    }

    std::vector<ExprPtr> children;
    for (int size : part_sizes) children.push_back(grow(rng, cfg, size, next_label));

    switch (op) {
        case ExprOp::DisjointUnion:
            return make_disjoint_union(std::move(children));
        case ExprOp::Series:
            return make_series(std::move(children));
        case ExprOp::Order:
            return make_order(std::move(children));
        default: {
            std::vector<Arc> arcs;
            for (size_t i = 0; i < children.size(); ++i)
                for (size_t j = i + 1; j < children.size(); ++j)
                    for (const auto& u : leaf_labels(children[i]))
                        for (const auto& v : leaf_labels(children[j]))
                            if (rng.chance(cfg.cross_arc_probability)) arcs.push_back({u, v});
            return make_directed_union(std::move(children), std::move(arcs));
        }
    }
}

}  // namespace

std::vector<ExprPtr> generate_expressions(const GeneratorConfig& config) {
    check(config);
    Rng rng(config.seed);
    std::vector<ExprPtr> out;
    for (int i = 0; i < config.count; ++i) {
        int leaves = rng.range(config.min_leaves, config.max_leaves);
        int next_label = 0;
        out.push_back(grow(rng, config, leaves, next_label));
    }
    return out;
}

Digraph random_digraph(std::uint64_t seed, int n, double arc_probability) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    if (arc_probability < 0.0 || arc_probability > 1.0)
        throw std::invalid_argument("arc probability must be in [0,1]");
    Rng rng(seed);
    std::vector<std::string> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng.chance(arc_probability))
                arcs.push_back({vertices[static_cast<size_t>(i)], vertices[static_cast<size_t>(j)]});
    return Digraph(std::move(vertices), arcs);
}

}  // namespace dcw
