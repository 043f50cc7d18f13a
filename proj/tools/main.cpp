#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dcw/coexpr.hpp"
#include "dcw/decompose.hpp"
#include "dcw/digraph.hpp"
#include "dcw/dot.hpp"
#include "dcw/errors.hpp"
#include "dcw/generate.hpp"
#include "dcw/oracle.hpp"
#include "dcw/verify.hpp"
#include "dcw/width.hpp"

namespace {

using namespace dcw;

// Exit codes are a stable contract: 0 success or valid, 1 invalid
// certificate or failed recognition, 2 input error, 3 cap exceeded.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInputError = 2;
constexpr int kCapExceeded = 3;

struct Caps {
    int oracle = 12;
    int recognizer = 512;
    int clique = 20;
};

enum class Format { Text, Structured, Dot };

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool has_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

std::string with_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).replace_extension(ext).string();
}

void write_atomic(const std::string& path, const std::string& content) {
    static std::atomic<unsigned> counter{0};
    std::string tmp = path + ".tmp" + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

bool expr_has_block(const ExprPtr& e) {
    if (e->op == ExprOp::Block) return true;
    for (const auto& c : e->children)
        if (expr_has_block(c)) return true;
    return false;
}

Digraph load_digraph(const std::string& path) {
    std::string text = slurp(path);
    if (has_extension(path, ".dce")) return evaluate(parse_expression(text));
    std::istringstream stream(text);
    return read_edge_list(stream);
}

std::string format_range(int lo, int hi) {
    if (lo == hi) return std::to_string(lo);
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::string set_text(const VertexSet& s) {
    std::string out;
    for (const auto& v : s) {
        if (!out.empty()) out += ',';
        out += v;
    }
    return out.empty() ? "-" : out;
}

const char* op_symbol(ExprOp op) {
    switch (op) {
        case ExprOp::DisjointUnion: return "+";
        case ExprOp::Series: return "*";
        case ExprOp::Order: return "/";
        case ExprOp::DirectedUnion: return "du";
        case ExprOp::Block: return "block";
        default: return "leaf";
    }
}

void node_report(const CoExpr* e, const WidthAnnotation& ann, int& next, std::ostream& out) {
    int self = next++;
    const NodeWidths& w = ann.at(e);
    out << "node=" << self << " op=" << op_symbol(e->op);
    if (e->op == ExprOp::Leaf) out << " label=" << e->label;
    out << " width=" << w.width << " size=" << w.size << '\n';
    for (const auto& c : e->children) node_report(c.get(), ann, next, out);
}

// One result per input file; printed in sorted-path order at the end.
struct FileResult {
    int code = kOk;
    std::string output;
};

int run_pool(std::vector<std::string> inputs, int jobs,
             const std::function<FileResult(const std::string&)>& work) {
    std::sort(inputs.begin(), inputs.end());
    std::vector<FileResult> results(inputs.size());
    std::atomic<size_t> cursor{0};
    auto drain = [&] {
        for (size_t i = cursor++; i < inputs.size(); i = cursor++) {
            try {
                results[i] = work(inputs[i]);
            } catch (const CapExceeded& e) {
                results[i] = {kCapExceeded, "input=" + inputs[i] + "\nerror=" + e.what() + "\n"};
            } catch (const std::exception& e) {
                results[i] = {kInputError, "input=" + inputs[i] + "\nerror=" + e.what() + "\n"};
            }
        }
    };
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(inputs.size())));
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; ++t) threads.emplace_back(drain);
    drain();
    for (auto& t : threads) t.join();
    int code = kOk;
    for (size_t i = 0; i < inputs.size(); ++i) {
        std::cout << results[i].output;
        code = std::max(code, results[i].code);
    }
    return code;
}

// Per-component certificates joined along the condensation order; the
// result certifies the whole digraph because all remaining arcs point from
// earlier components to later ones.
PathDecomposition stitch_components(const Digraph& g, const DigraphWidthReport& report,
                                    const Caps& caps) {
    PathDecomposition whole;
    for (const ComponentReport& cr : report.components) {
        PathDecomposition part;
        if (cr.method == ComponentMethod::Formula) {
            WidthAnnotation ann;
            compute_dpw(cr.expr, &ann);
            part = build_path_decomposition(cr.expr, ann);
        } else {
            part = dpw_exact(induced_subdigraph(g, cr.vertices), caps.oracle).decomposition;
        }
        whole.bags.insert(whole.bags.end(), part.bags.begin(), part.bags.end());
    }
    return whole;
}

std::string decomposition_text(const PathDecomposition& p) {
    std::ostringstream out;
    write_decomposition(out, p);
    return out.str();
}

std::string decomposition_text(const ArborealDecomposition& d) {
    std::ostringstream out;
    write_decomposition(out, d);
    return out.str();
}

FileResult cmd_width_one(const std::string& path, Format fmt, const Caps& caps) {
    std::ostringstream meta;
    std::string certificates;
    std::string dot;

    if (has_extension(path, ".dce")) {
        ExprPtr e = parse_expression(slurp(path));
        if (!expr_has_block(e)) {
            ExprPtr bin = binarize(e);
            WidthAnnotation ann;
            int w = compute_dpw(bin, &ann);
            meta << "input=" << path << "\nkind=expression\n";
            meta << "dpw=" << w << " dtw=" << w << '\n';
            if (fmt == Format::Text) {
                int next = 0;
                node_report(bin.get(), ann, next, meta);
            } else {
                PathDecomposition p = build_path_decomposition(bin, ann);
                ArborealDecomposition t = build_tree_decomposition(bin, ann);
                certificates = decomposition_text(p) + decomposition_text(t);
                dot = to_dot(p);
            }
            std::string body;
            if (fmt == Format::Dot) {
                body = dot;
            } else if (fmt == Format::Structured) {
                std::istringstream lines(meta.str());
                for (std::string line; std::getline(lines, line);) body += "# " + line + "\n";
                body += certificates;
            } else {
                body = meta.str();
            }
            return {kOk, body};
        }
    }

    Digraph g = load_digraph(path);
    DigraphWidthReport report = width_of_digraph(g, caps.oracle, caps.recognizer, caps.clique);
    int dtw_upper = report.dtw_upper;
    if (report.dpw_exact() && fmt != Format::Text) {
        PathDecomposition p = stitch_components(g, report, caps);
        ArborealDecomposition t = path_to_tree_decomposition(g, p);
        if (!report.components.empty()) dtw_upper = std::min(dtw_upper, t.width());
        certificates = decomposition_text(p) + decomposition_text(t);
        dot = to_dot(p);
    } else if (fmt == Format::Dot) {
        dot = to_dot(g);
    }
    meta << "input=" << path << "\nkind=digraph\n";
    meta << "dpw=" << format_range(report.dpw_lower, report.dpw_upper) << " dtw="
         << format_range(report.dtw_lower, dtw_upper) << '\n';
    for (size_t i = 0; i < report.components.size(); ++i) {
        const ComponentReport& cr = report.components[i];
        const char* method = cr.method == ComponentMethod::Formula ? "formula"
                             : cr.method == ComponentMethod::Oracle ? "oracle"
                                                                    : "bounds";
        meta << "component=" << i << " vertices=" << set_text(cr.vertices) << " method=" << method
             << " dpw=" << format_range(cr.dpw_lower, cr.dpw_upper) << " dtw="
             << format_range(cr.dtw_lower, cr.dtw_upper) << '\n';
    }
    std::string body;
    if (fmt == Format::Dot) {
        body = dot;
    } else if (fmt == Format::Structured) {
        std::istringstream lines(meta.str());
        for (std::string line; std::getline(lines, line);) body += "# " + line + "\n";
        body += certificates;
    } else {
        body = meta.str();
    }
    return {kOk, body};
}

FileResult cmd_decompose_one(const std::string& path, const std::string& kind, Format fmt,
                             const std::string& out_override) {
    ExprPtr e = binarize(parse_expression(slurp(path)));
    WidthAnnotation ann;
    int w = compute_dpw(e, &ann);
    Digraph g = evaluate(e);

    std::string payload;
    int width = -1;
    bool ok;
    if (kind == "path") {
        PathDecomposition p = build_path_decomposition(e, ann);
        Verdict v = verify_path_decomposition(g, p);
        ok = v.valid && v.width == w;
        width = v.width;
        payload = fmt == Format::Dot ? to_dot(p) : decomposition_text(p);
    } else {
        ArborealDecomposition t = build_tree_decomposition(e, ann);
        Verdict v = verify_tree_decomposition(g, t);
        ok = v.valid && v.width == w;
        width = v.width;
        payload = fmt == Format::Dot ? to_dot(t) : decomposition_text(t);
    }
    if (!ok)
        return {kInvalid, "input=" + path + "\nerror=construction failed self-verification\n"};

    std::string out_path = out_override.empty()
                               ? with_extension(path, fmt == Format::Dot ? ".dot" : ".dpd")
                               : out_override;
    write_atomic(out_path, payload);
    return {kOk, "input=" + path + " kind=" + kind + " width=" + std::to_string(width) +
                     " out=" + out_path + "\n"};
}

int cmd_verify(const std::string& graph_path, const std::string& decomp_path, Normality variant) {
    Digraph g = load_digraph(graph_path);
    std::string text = slurp(decomp_path);
    std::istringstream stream(text);
    std::vector<DecompositionBlock> blocks = read_decompositions(stream);
    bool all_valid = true;
    for (size_t i = 0; i < blocks.size(); ++i) {
        Verdict v = blocks[i].kind == DecompositionBlock::Kind::Path
                        ? verify_path_decomposition(g, blocks[i].path)
                        : verify_tree_decomposition(g, blocks[i].tree, variant);
        std::cout << "block=" << i << " kind="
                  << (blocks[i].kind == DecompositionBlock::Kind::Path ? "path" : "tree") << '\n';
        if (v.valid) {
            std::cout << "valid width=" << v.width << '\n';
        } else {
            all_valid = false;
            std::cout << "invalid " << v.violations.front().axiom
                      << " witness: " << v.violations.front().witness << '\n';
            for (const Violation& violation : v.violations)
                std::cout << "violation=" << violation.axiom << " " << violation.witness << '\n';
        }
    }
    return all_valid ? kOk : kInvalid;
}

FileResult cmd_oracle_one(const std::string& path, Format fmt, const Caps& caps) {
    Digraph g = load_digraph(path);
    OracleResult r = dpw_exact(g, caps.oracle);
    DtwBracket bracket = dtw_bracket(g, caps.oracle, caps.clique, caps.recognizer);
    std::ostringstream meta;
    meta << "input=" << path << '\n';
    meta << "dpw=" << r.width << '\n';
    meta << "dtw_lower=" << bracket.lower << " dtw_upper=" << bracket.upper << '\n';
    if (fmt == Format::Dot) return {kOk, to_dot(r.decomposition)};
    if (fmt == Format::Structured) {
        std::string body;
        std::istringstream lines(meta.str());
        for (std::string line; std::getline(lines, line);) body += "# " + line + "\n";
        body += decomposition_text(r.decomposition);
        body += decomposition_text(path_to_tree_decomposition(g, r.decomposition));
        return {kOk, body};
    }
    return {kOk, meta.str()};
}

FileResult cmd_recognize_one(const std::string& path, const Caps& caps) {
    Digraph g = load_digraph(path);
    Recognition rec = recognize_di_cograph(g, caps.recognizer);
    std::ostringstream out;
    out << "input=" << path << '\n';
    if (rec.ok()) {
        out << "cograph=true\nexpr=" << print_expression(rec.expr) << '\n';
        return {kOk, out.str()};
    }
    out << "cograph=false\nwitness=" << set_text(rec.witness) << '\n';
    return {kInvalid, out.str()};
}

FileResult cmd_condense_one(const std::string& path, const Caps& caps) {
    Digraph g = load_digraph(path);
    Condensation cond = strong_components(g);
    std::map<VertexSet, ExprPtr> provided;
    for (const VertexSet& comp : cond.components) {
        if (static_cast<int>(comp.size()) > caps.recognizer) continue;
        Recognition rec = recognize_di_cograph(induced_subdigraph(g, comp), caps.recognizer);
        if (rec.ok()) provided[comp] = rec.expr;
    }
    ExprPtr e = strong_component_expression(g, &provided);
    std::ostringstream out;
    out << "input=" << path << '\n';
    out << "components=" << cond.components.size() << '\n';
    for (size_t i = 0; i < cond.components.size(); ++i)
        out << "component=" << i << " vertices=" << set_text(cond.components[i]) << '\n';
    out << "expr=" << print_expression(e) << '\n';
    if (!(evaluate(e) == g))
        return {kInvalid, out.str() + "error=expression does not reproduce the input\n"};
    return {kOk, out.str()};
}

FileResult cmd_export_one(const std::string& path, const std::string& out_override) {
    std::string dot;
    if (has_extension(path, ".dce")) {
        dot = to_dot(parse_expression(slurp(path)));
    } else if (has_extension(path, ".dpd")) {
        std::istringstream stream(slurp(path));
        for (const DecompositionBlock& block : read_decompositions(stream))
            dot += block.kind == DecompositionBlock::Kind::Path ? to_dot(block.path)
                                                                : to_dot(block.tree);
    } else {
        dot = to_dot(load_digraph(path));
    }
    std::string out_path = out_override.empty() ? path + ".dot" : out_override;
    write_atomic(out_path, dot);
    return {kOk, "input=" + path + " out=" + out_path + "\n"};
}

int cmd_generate(const GeneratorConfig& cfg, const std::string& out_dir) {
    std::vector<ExprPtr> exprs = generate_expressions(cfg);
    std::filesystem::create_directories(out_dir);
    for (size_t i = 0; i < exprs.size(); ++i) {
        std::ostringstream name;
        name << "expr_" << std::setw(5) << std::setfill('0') << i << ".dce";
        std::string path = (std::filesystem::path(out_dir) / name.str()).string();
        write_atomic(path, print_expression(exprs[i]) + "\n");
        std::cout << "wrote " << path << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed co-graph width toolkit"};
    app.require_subcommand(1);

    Caps caps;
    std::string format_name = "text";
    std::string kind = "path";
    std::string normality_name = "strict";
    std::string out_path;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* sub, bool with_inputs = true) {
        sub->add_option("--oracle-cap", caps.oracle, "exhaustive search size limit");
        sub->add_option("--recognizer-cap", caps.recognizer, "recognizer size limit");
        sub->add_option("--clique-cap", caps.clique, "clique search size limit");
        sub->add_option("--format", format_name, "text, structured or dot")
            ->check(CLI::IsMember({"text", "structured", "dot"}));
        sub->add_option("--jobs", jobs, "worker threads for multiple inputs");
        if (with_inputs)
            sub->add_option("inputs", inputs, "input files")->required()->expected(-1);
    };

    CLI::App* width = app.add_subcommand("width", "compute dpw and dtw");
    add_common(width);

    CLI::App* decompose = app.add_subcommand("decompose", "build a certifying decomposition");
    add_common(decompose);
    decompose->add_option("--kind", kind, "path or tree")
        ->check(CLI::IsMember({"path", "tree"}));
    decompose->add_option("--out", out_path, "output file (single input only)");

    std::string graph_path, decomp_path;
    CLI::App* verify = app.add_subcommand("verify", "check a decomposition against a digraph");
    verify->add_option("graph", graph_path, "digraph or expression file")->required();
    verify->add_option("decomposition", decomp_path, "decomposition file")->required();
    verify->add_option("--normality", normality_name, "strict or disjoint guard semantics")
        ->check(CLI::IsMember({"strict", "disjoint"}));

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive widths for small digraphs");
    add_common(oracle);

    CLI::App* recognize = app.add_subcommand("recognize", "directed co-graph recognition");
    add_common(recognize);

    CLI::App* condense = app.add_subcommand("condense", "strong components and their expression");
    add_common(condense);

    GeneratorConfig gen_cfg;
    std::string out_dir = ".";
    CLI::App* generate = app.add_subcommand("generate", "seeded expression corpus");
    generate->add_option("--seed", gen_cfg.seed, "generator seed");
    generate->add_option("--count", gen_cfg.count, "number of expressions");
    generate->add_option("--min-leaves", gen_cfg.min_leaves, "minimum leaves");
    generate->add_option("--max-leaves", gen_cfg.max_leaves, "maximum leaves");
    generate->add_option("--max-arity", gen_cfg.max_arity, "maximum children per node");
    generate->add_option("--weight-union", gen_cfg.weight_disjoint_union, "disjoint union weight");
    generate->add_option("--weight-series", gen_cfg.weight_series, "series weight");
    generate->add_option("--weight-order", gen_cfg.weight_order, "order weight");
    generate->add_option("--weight-du", gen_cfg.weight_directed_union, "directed union weight");
    generate->add_option("--cross-prob", gen_cfg.cross_arc_probability,
                         "cross arc probability for directed unions");
    generate->add_option("--out-dir", out_dir, "output directory");

    CLI::App* export_dot = app.add_subcommand("export-dot", "DOT for digraphs, expressions, "
                                                            "decompositions");
    add_common(export_dot);
    export_dot->add_option("--out", out_path, "output file (single input only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kInputError;
    }

    Format fmt = format_name == "text" ? Format::Text
                 : format_name == "structured" ? Format::Structured
                                               : Format::Dot;
    Normality variant = normality_name == "strict" ? Normality::Strict : Normality::Disjoint;

    try {
        if (width->parsed())
            return run_pool(inputs, jobs,
                            [&](const std::string& p) { return cmd_width_one(p, fmt, caps); });
        if (decompose->parsed()) {
            if (!out_path.empty() && inputs.size() > 1) {
                std::cerr << "error=--out needs a single input\n";
                return kInputError;
            }
            return run_pool(inputs, jobs, [&](const std::string& p) {
                return cmd_decompose_one(p, kind, fmt, out_path);
            });
        }
        if (verify->parsed()) return cmd_verify(graph_path, decomp_path, variant);
        if (oracle->parsed())
            return run_pool(inputs, jobs,
                            [&](const std::string& p) { return cmd_oracle_one(p, fmt, caps); });
        if (recognize->parsed())
            return run_pool(inputs, jobs,
                            [&](const std::string& p) { return cmd_recognize_one(p, caps); });
        if (condense->parsed())
            return run_pool(inputs, jobs,
                            [&](const std::string& p) { return cmd_condense_one(p, caps); });
        if (generate->parsed()) return cmd_generate(gen_cfg, out_dir);
        if (export_dot->parsed()) {
            if (!out_path.empty() && inputs.size() > 1) {
                std::cerr << "error=--out needs a single input\n";
                return kInputError;
            }
            return run_pool(inputs, jobs,
                            [&](const std::string& p) { return cmd_export_one(p, out_path); });
        }
    } catch (const CapExceeded& e) {
        std::cerr << "error=" << e.what() << '\n';
        return kCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error=" << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}
