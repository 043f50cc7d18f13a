#include "dcw/coexpr.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "dcw/errors.hpp"

namespace dcw {

namespace {

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

void collect_labels(const CoExpr& e, VertexSet& out) {
    switch (e.op) {
        case ExprOp::Leaf:
            out.insert(e.label);
            return;
        case ExprOp::Block:
            out.insert(e.block_vertices.begin(), e.block_vertices.end());
            return;
        default:
            for (const auto& c : e.children) collect_labels(*c, out);
    }
}

// Shared validation for all inner factories; returns the children's label
// sets for callers that need them.
std::vector<VertexSet> check_children(const std::vector<ExprPtr>& children) {
    if (children.size() < 2)
        throw std::invalid_argument("expression operator needs at least two operands");
    std::vector<VertexSet> sets;
    VertexSet all;
    for (const auto& c : children) {
        if (!c) throw std::invalid_argument("null operand");
        VertexSet s;
        collect_labels(*c, s);
        for (const auto& l : s)
            if (!all.insert(l).second)
                throw std::invalid_argument("operands share the vertex " + l);
        sets.push_back(std::move(s));
    }
    return sets;
}

ExprPtr make_inner(ExprOp op, std::vector<ExprPtr> children) {
    check_children(children);
    auto node = std::make_shared<CoExpr>();
    node->op = op;
    node->children = std::move(children);
    return node;
}

}  // namespace

ExprPtr make_leaf(std::string label) {
    if (!valid_label(label)) throw std::invalid_argument("bad vertex label: " + label);
    auto node = std::make_shared<CoExpr>();
    node->label = std::move(label);
    return node;
}

ExprPtr make_disjoint_union(std::vector<ExprPtr> children) {
    return make_inner(ExprOp::DisjointUnion, std::move(children));
}

ExprPtr make_series(std::vector<ExprPtr> children) {
    return make_inner(ExprOp::Series, std::move(children));
}

ExprPtr make_order(std::vector<ExprPtr> children) {
    return make_inner(ExprOp::Order, std::move(children));
}

ExprPtr make_directed_union(std::vector<ExprPtr> children, std::vector<Arc> cross_arcs) {
    auto sets = check_children(children);
    auto child_of = [&](const std::string& label) {
        for (size_t i = 0; i < sets.size(); ++i)
            if (sets[i].count(label)) return static_cast<int>(i);
        return -1;
    };
    for (const Arc& a : cross_arcs) {
        int iu = child_of(a.from), iv = child_of(a.to);
        if (iu < 0) throw std::invalid_argument("cross arc endpoint not in any operand: " + a.from);
        if (iv < 0) throw std::invalid_argument("cross arc endpoint not in any operand: " + a.to);
        if (iu >= iv)
            throw std::invalid_argument("cross arc must go from an earlier operand to a later one: " +
                                        a.from + "->" + a.to);
    }
    std::sort(cross_arcs.begin(), cross_arcs.end());
    cross_arcs.erase(std::unique(cross_arcs.begin(), cross_arcs.end()), cross_arcs.end());
    auto node = std::make_shared<CoExpr>();
    node->op = ExprOp::DirectedUnion;
    node->children = std::move(children);
    node->cross_arcs = std::move(cross_arcs);
    return node;
}

ExprPtr make_block(std::vector<std::string> vertices, std::vector<Arc> arcs) {
    if (vertices.empty()) throw std::invalid_argument("block needs at least one vertex");
    for (const auto& v : vertices)
        if (!valid_label(v)) throw std::invalid_argument("bad vertex label: " + v);
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    Digraph check(vertices, arcs);  // validates labels, endpoints, loops
    auto node = std::make_shared<CoExpr>();
    node->op = ExprOp::Block;
    node->block_vertices = std::move(vertices);
    node->block_arcs = std::move(arcs);
    return node;
}

VertexSet leaf_labels(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("null expression");
    VertexSet s;
    collect_labels(*e, s);
    return s;
}

int leaf_count(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("null expression");
    switch (e->op) {
        case ExprOp::Leaf:
            return 1;
        case ExprOp::Block:
            return static_cast<int>(e->block_vertices.size());
        default: {
            int total = 0;
            for (const auto& c : e->children) total += leaf_count(c);
            return total;
        }
    }
}

Digraph evaluate(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("null expression");
    switch (e->op) {
        case ExprOp::Leaf:
            return Digraph({e->label}, {});
        case ExprOp::Block:
            return Digraph(e->block_vertices, e->block_arcs);
        default:
            break;
    }
    std::vector<std::string> vertices;
    std::vector<Arc> arcs;
    std::vector<std::vector<std::string>> parts;
    for (const auto& c : e->children) {
        Digraph d = evaluate(c);
        parts.push_back(d.vertices());
        vertices.insert(vertices.end(), parts.back().begin(), parts.back().end());
        auto child_arcs = d.arcs();
        arcs.insert(arcs.end(), child_arcs.begin(), child_arcs.end());
    }
    switch (e->op) {
        case ExprOp::DisjointUnion:
            break;
        case ExprOp::Series:
            for (size_t i = 0; i < parts.size(); ++i)
                for (size_t j = i + 1; j < parts.size(); ++j)
                    for (const auto& u : parts[i])
                        for (const auto& v : parts[j]) {
                            arcs.push_back({u, v});
                            arcs.push_back({v, u});
                        }
            break;
        case ExprOp::Order:
            for (size_t i = 0; i < parts.size(); ++i)
                for (size_t j = i + 1; j < parts.size(); ++j)
                    for (const auto& u : parts[i])
                        for (const auto& v : parts[j]) arcs.push_back({u, v});
            break;
        case ExprOp::DirectedUnion:
            arcs.insert(arcs.end(), e->cross_arcs.begin(), e->cross_arcs.end());
            break;
        default:
            break;
    }
    return Digraph(std::move(vertices), arcs);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected `") + c + "`");
        ++pos_;
    }

    std::string parse_label() {
        skip_ws();
        std::size_t begin = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == begin) fail("expected a label");
        return text_.substr(begin, pos_ - begin);
    }

    template <typename Make>
    ExprPtr checked(std::size_t at, Make make) {
        try {
            return make();
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), at);
        }
    }

    ExprPtr parse_expr() {
        skip_ws();
        std::size_t chain_start = pos_;
        ExprPtr first = parse_term();
        skip_ws();
        char op = peek();
        if (op != '+' && op != '*' && op != '/') return first;
        std::vector<ExprPtr> children{first};
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '*' && c != '/') break;
            if (c != op) fail("mixed operators in one chain, parenthesize to disambiguate");
            ++pos_;
            children.push_back(parse_term());
        }
        return checked(chain_start, [&] {
            switch (op) {
                case '+':
                    return make_disjoint_union(std::move(children));
                case '*':
                    return make_series(std::move(children));
                default:
                    return make_order(std::move(children));
            }
        });
    }

    ExprPtr parse_term() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            skip_ws();
            expect(')');
            return e;
        }
        std::string label = parse_label();
        skip_ws();
        if (label == "du" && peek() == '(') return parse_directed_union(start);
        if (label == "block" && peek() == '(') return parse_block(start);
        return checked(start, [&] { return make_leaf(std::move(label)); });
    }

    ExprPtr parse_directed_union(std::size_t start) {
        expect('(');
        std::vector<ExprPtr> children;
        children.push_back(parse_expr());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            children.push_back(parse_expr());
            skip_ws();
        }
        std::vector<Arc> arcs;
        if (peek() == ';') {
            ++pos_;
            arcs = parse_arc_list();
            skip_ws();
        }
        expect(')');
        return checked(start,
                       [&] { return make_directed_union(std::move(children), std::move(arcs)); });
    }

    ExprPtr parse_block(std::size_t start) {
        expect('(');
        std::vector<std::string> vertices;
        vertices.push_back(parse_label());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            vertices.push_back(parse_label());
            skip_ws();
        }
        std::vector<Arc> arcs;
        if (peek() == ';') {
            ++pos_;
            arcs = parse_arc_list();
            skip_ws();
        }
        expect(')');
        return checked(start, [&] { return make_block(std::move(vertices), std::move(arcs)); });
    }

    std::vector<Arc> parse_arc_list() {
        std::vector<Arc> arcs;
        while (true) {
            std::string from = parse_label();
            skip_ws();
            expect('-');
            expect('>');
            std::string to = parse_label();
            arcs.push_back({std::move(from), std::move(to)});
            skip_ws();
            if (peek() != ',') break;
            ++pos_;
        }
        return arcs;
    }
};

void print_arcs(std::string& out, const std::vector<Arc>& arcs) {
    if (arcs.empty()) return;
    out += "; ";
    for (size_t i = 0; i < arcs.size(); ++i) {
        if (i) out += ", ";
        out += arcs[i].from;
        out += "->";
        out += arcs[i].to;
    }
}

void print_node(std::string& out, const CoExpr& e, bool parenthesize) {
    switch (e.op) {
        case ExprOp::Leaf:
            out += e.label;
            return;
        case ExprOp::Block: {
            out += "block(";
            for (size_t i = 0; i < e.block_vertices.size(); ++i) {
                if (i) out += ", ";
                out += e.block_vertices[i];
            }
            print_arcs(out, e.block_arcs);
            out += ')';
            return;
        }
        case ExprOp::DirectedUnion: {
            out += "du(";
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                print_node(out, *e.children[i], false);
            }
            print_arcs(out, e.cross_arcs);
            out += ')';
            return;
        }
        default:
            break;
    }
    char op = e.op == ExprOp::DisjointUnion ? '+' : e.op == ExprOp::Series ? '*' : '/';
    if (parenthesize) out += '(';
    for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += op;
        print_node(out, *e.children[i], true);
    }
    if (parenthesize) out += ')';
}

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).run(); }

std::string print_expression(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("null expression");
    std::string out;
    print_node(out, *e, false);
    return out;
}

ExprPtr binarize(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("null expression");
    if (e->op == ExprOp::Leaf || e->op == ExprOp::Block) return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->children.size());
    for (const auto& c : e->children) kids.push_back(binarize(c));
    if (e->op != ExprOp::DirectedUnion) {
        ExprPtr acc = kids[0];
        for (size_t i = 1; i < kids.size(); ++i) {
            switch (e->op) {
                case ExprOp::DisjointUnion:
                    acc = make_disjoint_union({acc, kids[i]});
                    break;
                case ExprOp::Series:
                    acc = make_series({acc, kids[i]});
                    break;
                default:
                    acc = make_order({acc, kids[i]});
                    break;
            }
        }
        return acc;
    }
    // Each cross arc reattaches to the binary node that introduces the child
    // holding its head.
    std::vector<VertexSet> sets;
    for (const auto& c : kids) sets.push_back(leaf_labels(c));
    auto child_of_head = [&](const Arc& a) {
        for (size_t i = 0; i < sets.size(); ++i)
            if (sets[i].count(a.to)) return i;
        return sets.size();
    };
    std::vector<std::vector<Arc>> grouped(kids.size());
    for (const Arc& a : e->cross_arcs) grouped[child_of_head(a)].push_back(a);
    ExprPtr acc = kids[0];
    for (size_t i = 1; i < kids.size(); ++i)
        acc = make_directed_union({acc, kids[i]}, std::move(grouped[i]));
    return acc;
}

}  // namespace dcw
