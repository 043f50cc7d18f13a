#include "dcw/decompose.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dcw/errors.hpp"
#include "dcw/verify.hpp"

namespace dcw {

int PathDecomposition::width() const {
    int max_size = 0;
    for (const auto& bag : bags) max_size = std::max(max_size, static_cast<int>(bag.size()));
    return max_size - 1;
}

int ArborealDecomposition::width() const {
    int max_size = 0;
    for (size_t i = 0; i < parent.size(); ++i) {
        VertexSet bag = bag_w[i];
        if (parent[i] != -1) bag.insert(bag_x[i].begin(), bag_x[i].end());
        for (size_t c = 0; c < parent.size(); ++c)
            if (parent[c] == static_cast<int>(i)) bag.insert(bag_x[c].begin(), bag_x[c].end());
        max_size = std::max(max_size, static_cast<int>(bag.size()));
    }
    return max_size - 1;
}

namespace {

const NodeWidths& annotation_of(const CoExpr* e, const WidthAnnotation& ann) {
    auto it = ann.find(e);
    if (it == ann.end())
        throw std::invalid_argument("annotation missing, run the width recurrence on this expression");
    return it->second;
}

void check_buildable(const CoExpr* e) {
    if (e->op == ExprOp::Block)
        throw std::invalid_argument("no construction for block leaves");
    if (e->op != ExprOp::Leaf && e->children.size() != 2)
        throw std::invalid_argument("construction needs a binary expression");
}

void build_path(const CoExpr* e, const WidthAnnotation& ann, std::vector<VertexSet>& out) {
    check_buildable(e);
    if (e->op == ExprOp::Leaf) {
        out.push_back({e->label});
        return;
    }
    if (e->op == ExprOp::Series) {
        bool left = annotation_of(e, ann).series_left;
        const ExprPtr& chosen = e->children[left ? 0 : 1];
        VertexSet other = leaf_labels(e->children[left ? 1 : 0]);
        std::vector<VertexSet> sub;
        build_path(chosen.get(), ann, sub);
        for (auto& bag : sub) {
            bag.insert(other.begin(), other.end());
            out.push_back(std::move(bag));
        }
        return;
    }
    build_path(e->children[0].get(), ann, out);
    build_path(e->children[1].get(), ann, out);
}

// The tree the construction grows is always a directed path, held here as
// (class, guard on the incoming arc) from the root down.
using PathShapedTree = std::vector<std::pair<VertexSet, VertexSet>>;

void build_tree(const CoExpr* e, const WidthAnnotation& ann, PathShapedTree& out) {
    check_buildable(e);
    if (e->op == ExprOp::Leaf) {
        out.push_back({{e->label}, {}});
        return;
    }
    if (e->op == ExprOp::Series) {
        bool left = annotation_of(e, ann).series_left;
        const ExprPtr& chosen = e->children[left ? 0 : 1];
        VertexSet other = leaf_labels(e->children[left ? 1 : 0]);
        PathShapedTree sub;
        build_tree(chosen.get(), ann, sub);
        out.push_back({other, {}});
        for (auto& [w, x] : sub) {
            x.insert(other.begin(), other.end());
            out.push_back({std::move(w), std::move(x)});
        }
        return;
    }
    build_tree(e->children[0].get(), ann, out);
    build_tree(e->children[1].get(), ann, out);
}

}  // namespace

PathDecomposition build_path_decomposition(const ExprPtr& e, const WidthAnnotation& ann) {
    if (!e) throw std::invalid_argument("null expression");
    PathDecomposition p;
    build_path(e.get(), ann, p.bags);
    p.bags.erase(std::unique(p.bags.begin(), p.bags.end()), p.bags.end());
    return p;
}

ArborealDecomposition build_tree_decomposition(const ExprPtr& e, const WidthAnnotation& ann) {
    if (!e) throw std::invalid_argument("null expression");
    PathShapedTree nodes;
    build_tree(e.get(), ann, nodes);
    ArborealDecomposition d;
    for (size_t i = 0; i < nodes.size(); ++i) {
        d.parent.push_back(static_cast<int>(i) - 1);
        d.bag_w.push_back(std::move(nodes[i].first));
        d.bag_x.push_back(std::move(nodes[i].second));
    }
    return d;
}

ArborealDecomposition path_to_tree_decomposition(const Digraph& g, const PathDecomposition& p) {
    if (!verify_path_decomposition(g, p).valid)
        throw std::invalid_argument("path decomposition is not valid for the digraph");
    std::vector<VertexSet> bags;
    for (const auto& bag : p.bags)
        if (!bag.empty()) bags.push_back(bag);

    // Node for bag i keeps the vertices first seen there; its incoming
    // guard is the overlap with the bag right before. Bags introducing
    // nothing are skipped, which leaves every remaining (suffix, guard)
    // pair untouched.
    ArborealDecomposition d;
    VertexSet seen;
    for (size_t i = 0; i < bags.size(); ++i) {
        VertexSet fresh;
        for (const auto& v : bags[i])
            if (!seen.count(v)) fresh.insert(v);
        seen.insert(bags[i].begin(), bags[i].end());
        if (fresh.empty()) continue;
        VertexSet guard;
        if (!d.parent.empty())
            for (const auto& v : bags[i])
                if (bags[i - 1].count(v)) guard.insert(v);
        d.parent.push_back(static_cast<int>(d.parent.size()) - 1);
        d.bag_w.push_back(std::move(fresh));
        d.bag_x.push_back(std::move(guard));
    }
    return d;
}

ArborealDecomposition normalize_singleton_bags(const Digraph& g, const ArborealDecomposition& d) {
    if (!verify_tree_decomposition(g, d).valid)
        throw std::invalid_argument("arboreal decomposition is not valid for the digraph");
    const int n = d.node_count();

    // Parents before children.
    std::vector<int> order;
    {
        std::vector<std::vector<int>> children(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            if (d.parent[static_cast<size_t>(i)] != -1)
                children[static_cast<size_t>(d.parent[static_cast<size_t>(i)])].push_back(i);
            else
                order.push_back(i);
        for (size_t head = 0; head < order.size(); ++head)
            for (int c : children[static_cast<size_t>(order[head])]) order.push_back(c);
    }

    ArborealDecomposition out;
    std::vector<int> chain_end(static_cast<size_t>(n), -1);
    for (int node : order) {
        const bool is_root = d.parent[static_cast<size_t>(node)] == -1;
        const VertexSet& incoming = d.bag_x[static_cast<size_t>(node)];
        std::vector<std::string> verts(d.bag_w[static_cast<size_t>(node)].begin(),
                                       d.bag_w[static_cast<size_t>(node)].end());
        int attach = is_root ? -1 : chain_end[static_cast<size_t>(d.parent[static_cast<size_t>(node)])];
        VertexSet accumulated = is_root ? VertexSet{} : incoming;
        for (size_t j = 0; j < verts.size(); ++j) {
            out.parent.push_back(attach);
            out.bag_w.push_back({verts[j]});
            out.bag_x.push_back(j == 0 ? (is_root ? VertexSet{} : incoming) : accumulated);
            attach = out.node_count() - 1;
            accumulated.insert(verts[j]);
        }
        chain_end[static_cast<size_t>(node)] = attach;
    }
    return out;
}

namespace {

std::vector<std::pair<std::string, std::size_t>> significant_lines(std::istream& in) {
    std::vector<std::pair<std::string, std::size_t>> lines;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        lines.emplace_back(line.substr(begin, end - begin + 1), number);
    }
    return lines;
}

VertexSet parse_set(const std::string& text, std::size_t line) {
    VertexSet out;
    if (text == "-") return out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        if (item.empty()) throw ParseError("empty element in vertex set", line);
        out.insert(item);
    }
    if (text.empty() || text.back() == ',') throw ParseError("empty element in vertex set", line);
    return out;
}

std::string set_text(const VertexSet& s) {
    if (s.empty()) return "-";
    std::string out;
    for (const auto& v : s) {
        if (!out.empty()) out += ',';
        out += v;
    }
    return out;
}

std::string field(const std::string& token, const std::string& key, std::size_t line) {
    if (token.size() < key.size() || token.compare(0, key.size(), key) != 0)
        throw ParseError("expected `" + key + "...`", line);
    return token.substr(key.size());
}

struct RawTreeNode {
    long long id;
    std::string parent;
    VertexSet w, x;
    std::size_t line;
};

ArborealDecomposition finish_tree(const std::vector<RawTreeNode>& raw) {
    ArborealDecomposition d;
    std::map<long long, int> index;
    for (size_t i = 0; i < raw.size(); ++i)
        if (!index.emplace(raw[i].id, static_cast<int>(i)).second)
            throw ParseError("duplicate node id " + std::to_string(raw[i].id), raw[i].line);
    int roots = 0;
    for (const auto& node : raw) {
        int p = -1;
        if (node.parent == "-") {
            ++roots;
        } else {
            long long pid;
            try {
                pid = std::stoll(node.parent);
            } catch (const std::exception&) {
                throw ParseError("bad parent id `" + node.parent + "`", node.line);
            }
            auto it = index.find(pid);
            if (it == index.end())
                throw ParseError("parent id " + node.parent + " is not a node", node.line);
            p = it->second;
            if (p == index[node.id]) throw ParseError("node is its own parent", node.line);
        }
        d.parent.push_back(p);
        d.bag_w.push_back(node.w);
        d.bag_x.push_back(node.x);
    }
    if (!raw.empty() && roots != 1)
        throw ParseError("tree must have exactly one root", raw.front().line);
    for (size_t i = 0; i < raw.size(); ++i) {
        int steps = 0;
        for (int v = static_cast<int>(i); v != -1; v = d.parent[static_cast<size_t>(v)])
            if (++steps > d.node_count())
                throw ParseError("parent links contain a cycle", raw[i].line);
    }
    return d;
}

}  // namespace

std::vector<DecompositionBlock> read_decompositions(std::istream& in) {
    auto lines = significant_lines(in);
    std::vector<DecompositionBlock> blocks;
    bool in_tree = false;
    std::vector<RawTreeNode> raw;
    auto flush_tree = [&] {
        if (!in_tree) return;
        blocks.back().tree = finish_tree(raw);
        raw.clear();
        in_tree = false;
    };
    for (const auto& [text, number] : lines) {
        if (text.rfind("kind=", 0) == 0) {
            flush_tree();
            std::string kind = text.substr(5);
            DecompositionBlock block;
            if (kind == "path") {
                block.kind = DecompositionBlock::Kind::Path;
            } else if (kind == "tree") {
                block.kind = DecompositionBlock::Kind::Tree;
                in_tree = true;
            } else {
                throw ParseError("unknown kind `" + kind + "`", number);
            }
            blocks.push_back(std::move(block));
        } else if (text.rfind("bag=", 0) == 0) {
            if (blocks.empty() || blocks.back().kind != DecompositionBlock::Kind::Path || in_tree)
                throw ParseError("bag line outside a path block", number);
            blocks.back().path.bags.push_back(parse_set(text.substr(4), number));
        } else if (text.rfind("node=", 0) == 0) {
            if (!in_tree) throw ParseError("node line outside a tree block", number);
            std::istringstream stream(text);
            std::string t_node, t_parent, t_w, t_x, extra;
            if (!(stream >> t_node >> t_parent >> t_w >> t_x) || (stream >> extra))
                throw ParseError("expected `node=N parent=P W=... X=...`", number);
            RawTreeNode node;
            try {
                node.id = std::stoll(field(t_node, "node=", number));
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
                throw ParseError("bad node id", number);
            }
            node.parent = field(t_parent, "parent=", number);
            node.w = parse_set(field(t_w, "W=", number), number);
            node.x = parse_set(field(t_x, "X=", number), number);
            node.line = number;
            raw.push_back(std::move(node));
        } else {
            throw ParseError("unrecognized line `" + text + "`", number);
        }
    }
    flush_tree();
    return blocks;
}

void write_decomposition(std::ostream& out, const PathDecomposition& p) {
    out << "kind=path\n";
    for (const auto& bag : p.bags) out << "bag=" << set_text(bag) << '\n';
}

void write_decomposition(std::ostream& out, const ArborealDecomposition& d) {
    out << "kind=tree\n";
    for (int i = 0; i < d.node_count(); ++i) {
        out << "node=" << i << " parent=";
        if (d.parent[static_cast<size_t>(i)] == -1)
            out << '-';
        else
            out << d.parent[static_cast<size_t>(i)];
        out << " W=" << set_text(d.bag_w[static_cast<size_t>(i)]) << " X="
            << (d.parent[static_cast<size_t>(i)] == -1 ? "-"
                                                       : set_text(d.bag_x[static_cast<size_t>(i)]))
            << '\n';
    }
}

}  // namespace dcw
