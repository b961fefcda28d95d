// ctree: command-line front-end for coding trees and their point orders.
//
// Exit status: 0 success or predicate true, 1 predicate false, 2 usage or data error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ctree/coding_tree.hpp"
#include "ctree/error.hpp"
#include "ctree/order_expr.hpp"
#include "ctree/points.hpp"
#include "ctree/serialize.hpp"
#include "ctree/suites.hpp"
#include "ctree/transitivity.hpp"

namespace {

using namespace ctree;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

bool is_json_path(const std::string& s) { return s.size() > 5 && s.ends_with(".json"); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
}

CodingTree load_tree(const std::string& arg) {
    if (is_json_path(arg)) return tree_from_json_text(read_file(arg));
    return compile(arg);
}

Value parse_inline_value(std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s == "top") return Top{};
    if (s.find('/') != std::string::npos) return parse_rational(s);
    try {
        std::size_t used = 0;
        const long long k = std::stoll(s, &used);
        if (used == s.size()) return static_cast<std::int64_t>(k);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Decode, "malformed value '" + s + "'");
}

// Inline points are written "(v1, v2, ...)", root first. Integers are read as
// rationals at dense vertices.
Point load_point(const CodingTree& t, const std::string& arg) {
    Point p;
    if (is_json_path(arg)) {
        const auto j = nlohmann::json::parse(read_file(arg), nullptr, false);
        if (j.is_discarded()) throw Error(ErrorCode::Decode, arg + " is not valid JSON");
        p = point_from_json(j);
    } else {
        std::string body = arg;
        if (!body.empty() && body.front() == '(') body.erase(0, 1);
        if (!body.empty() && body.back() == ')') body.pop_back();
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) p.values.push_back(parse_inline_value(item));
    }
    VertexId v = t.root();
    for (Value& value : p.values) {
        if (t.is_leaf(v)) break;
        if (t.label(v).is_dense() && value.is_int()) value = Rational(value.as_int());
        const auto next = route(t, v, value);
        if (!next) break;
        v = *next;
    }
    const auto report = validate_point(t, p);
    if (!report.ok()) throw Error(ErrorCode::InvalidPoint, to_string(p) + ": " + report.issues.front().message);
    return p;
}

int cmd_compile(const std::string& expr, const std::string& json_path, const std::string& dot_path) {
    const OrderExpr e = parse(expr);
    const CodingTree t = compile(e);
    std::cout << "expr: " << print(e) << "\n";
    std::cout << "height: " << t.height() << "\n";
    std::cout << "vertices: " << t.size() << "\n";
    for (int level = t.height(); level >= 0; --level) {
        std::cout << "level " << level << ":";
        for (VertexId v : t.level_vertices(level)) std::cout << " " << to_string(t.label(v));
        std::cout << "\n";
    }
    std::cout << "signature:\n";
    for (const auto& l : signature(t).levels)
        std::cout << "  " << l.level << ": " << l.label_class << " " << l.left_forest_code << "\n";
    if (!json_path.empty()) write_file(json_path, to_json_text(t));
    if (!dot_path.empty()) write_file(dot_path, to_dot(t));
    return kTrue;
}

int cmd_validate(const std::string& arg) {
    const CodingTree t = load_tree(arg);
    const auto report = validate(t);
    if (report.ok()) {
        std::cout << "valid\n";
        return kTrue;
    }
    for (const auto& v : report.violations) std::cout << v.invariant << ": " << v.message << "\n";
    return kFalse;
}

int cmd_witness(const std::string& expr, const std::string& f_arg, const std::string& g_arg,
                std::size_t probes, std::uint64_t seed, const std::string& trace_path) {
    const CodingTree t = load_tree(expr);
    const Point f = load_point(t, f_arg);
    const Point g = load_point(t, g_arg);
    Witness w = initial_segment_witness(t, f, g);
    w.set_tracing(!trace_path.empty());
    PointSampler s(t, seed, 8);
    std::size_t order_failures = 0, inverse_failures = 0;
    for (std::size_t k = 0; k < probes; ++k) {
        const Point p = s.below(f), q = s.below(f);
        const Point fp = w.apply(p), fq = w.apply(q);
        if (compare(t, p, q) != compare(t, fp, fq)) ++order_failures;
        if (!(w.invert(fp) == p)) ++inverse_failures;
    }
    std::cout << "f: " << to_string(f) << "\n";
    std::cout << "g: " << to_string(g) << "\n";
    std::cout << "probes: " << probes << "\n";
    std::cout << "order violations: " << order_failures << "\n";
    std::cout << "inverse failures: " << inverse_failures << "\n";
    if (!trace_path.empty()) write_file(trace_path, w.trace_json().dump(2) + "\n");
    return order_failures + inverse_failures == 0 ? kTrue : kFalse;
}

int cmd_check(const std::string& expr, const std::string& suite, std::uint64_t seed) {
    const CodingTree t = load_tree(expr);
    SuiteResult r;
    if (suite == "order") r = order_suite(t, seed);
    else if (suite == "transitivity") r = transitivity_suite(t, seed);
    else r = invariance_suite(t, seed);
    std::cout << r.name << ": passed " << r.passed << ", failed " << r.failed << "\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    return r.ok() ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coding trees for countable lower 1-transitive linear orders"};
    app.require_subcommand(1);

    std::string expr, a, b, json_path, dot_path, p_arg, q_arg, f_arg, g_arg, trace_path, suite;
    std::uint64_t seed = 0;
    std::size_t count = 10, probes = 100;
    int magnitude = 10;

    auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of an expression");
    parse_cmd->add_option("expr", expr)->required();

    auto* compile_cmd = app.add_subcommand("compile", "Compile an expression to a coding tree");
    compile_cmd->add_option("expr", expr)->required();
    compile_cmd->add_option("--json", json_path, "Write the tree as JSON ('-' for stdout)");
    compile_cmd->add_option("--dot", dot_path, "Write the tree as Graphviz DOT ('-' for stdout)");

    auto* validate_cmd = app.add_subcommand("validate", "Check the coding-tree conditions");
    validate_cmd->add_option("tree", a)->required();

    auto* canon_cmd = app.add_subcommand("canon", "Merge isomorphic left siblings");
    canon_cmd->add_option("tree", a)->required();
    canon_cmd->add_option("--json", json_path, "Output path (default stdout)");

    auto* iso_cmd = app.add_subcommand("iso", "Exit 0 iff the trees are isomorphic");
    iso_cmd->add_option("a", a)->required();
    iso_cmd->add_option("b", b)->required();

    auto* loweriso_cmd = app.add_subcommand("loweriso", "Exit 0 iff the trees are lower-isomorphic");
    loweriso_cmd->add_option("a", a)->required();
    loweriso_cmd->add_option("b", b)->required();

    auto* sample_cmd = app.add_subcommand("sample", "Emit random points as JSON lines");
    sample_cmd->add_option("tree", expr)->required();
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--count", count);
    sample_cmd->add_option("--magnitude", magnitude)->check(CLI::PositiveNumber);

    auto* compare_cmd = app.add_subcommand("compare", "Compare two points");
    compare_cmd->add_option("tree", expr)->required();
    compare_cmd->add_option("--p", p_arg)->required();
    compare_cmd->add_option("--q", q_arg)->required();

    auto* witness_cmd = app.add_subcommand("witness", "Audit an initial-segment isomorphism");
    witness_cmd->add_option("tree", expr)->required();
    witness_cmd->add_option("--f", f_arg)->required();
    witness_cmd->add_option("--g", g_arg)->required();
    witness_cmd->add_option("--probes", probes);
    witness_cmd->add_option("--seed", seed);
    witness_cmd->add_option("--trace", trace_path, "Write the query trace as JSON");

    auto* check_cmd = app.add_subcommand("check", "Run a property suite");
    check_cmd->add_option("tree", expr)->required();
    check_cmd->add_option("--suite", suite)->required()->check(
        CLI::IsMember({"order", "transitivity", "invariance"}));
    check_cmd->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*parse_cmd) {
            std::cout << print(parse(expr)) << "\n";
            return kTrue;
        }
        if (*compile_cmd) return cmd_compile(expr, json_path, dot_path);
        if (*validate_cmd) return cmd_validate(a);
        if (*canon_cmd) {
            write_file(json_path.empty() ? "-" : json_path, to_json_text(canonicalize(load_tree(a))));
            return kTrue;
        }
        if (*iso_cmd) {
            const bool yes = tree_iso(load_tree(a), load_tree(b)).has_value();
            std::cout << (yes ? "isomorphic" : "not isomorphic") << "\n";
            return yes ? kTrue : kFalse;
        }
        if (*loweriso_cmd) {
            const bool yes = lower_isomorphic(load_tree(a), load_tree(b));
            std::cout << (yes ? "lower-isomorphic" : "not lower-isomorphic") << "\n";
            return yes ? kTrue : kFalse;
        }
        if (*sample_cmd) {
            const CodingTree t = load_tree(expr);
            PointSampler s(t, seed, magnitude);
            for (std::size_t k = 0; k < count; ++k) std::cout << to_json(s.any()).dump() << "\n";
            return kTrue;
        }
        if (*compare_cmd) {
            const CodingTree t = load_tree(expr);
            std::cout << to_string(compare(t, load_point(t, p_arg), load_point(t, q_arg))) << "\n";
            return kTrue;
        }
        if (*witness_cmd) return cmd_witness(expr, f_arg, g_arg, probes, seed, trace_path);
        if (*check_cmd) return cmd_check(expr, suite, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
