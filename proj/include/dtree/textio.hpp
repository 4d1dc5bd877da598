// Text format and DOT export.
//
// Line grammar ('#' starts a comment, blank lines ignored):
//   vertex <id>
//   arrow <id> f=<int>
//   edge <idA> <idB> [qA=<int>] [qB=<int>]     omitted decorations default to 1
//   bundle <vertexId> n=<int>                  n fresh unit arrows (input only)
//   root <id>                                  optional, at most once
//
// Parsing validates the tree and, when a root line is present, checks the
// named vertex against the pseudo-root conditions.  Serialization is
// canonical — sorted ids, unit decorations omitted, root line last — so
// parse(serialize(t)) reproduces t exactly and serialize(parse(text))
// canonicalizes text.  DOT export renders vertices as circles (filled when
// N_v = 0), arrows as arrowheads labeled (f), and both near-end decorations
// on every edge (units omitted, matching the drawing convention).

#pragma once

#include <dtree/invariants.hpp>
#include <dtree/rooted.hpp>
#include <dtree/tree.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dtree {

struct ParseResult {
    DecoratedTree tree;
    std::optional<std::string> root;

    RootedTree rooted() const {
        if (!root) throw std::invalid_argument("document has no root line");
        return make_rooted(tree, *root);
    }
};

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& message) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + message);
}

inline Int parse_int(const std::string& text, std::size_t line_no) {
    bool ok = !text.empty();
    std::size_t start = (ok && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size()) ok = false;
    for (std::size_t i = start; ok && i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') ok = false;
    }
    if (!ok) parse_fail(line_no, "expected an integer, got '" + text + "'");
    return Int(text);
}

// "key=<int>" with a fixed expected key.
inline Int parse_keyed_int(const std::string& tok, const std::string& key,
                           std::size_t line_no) {
    if (tok.size() < key.size() + 1 || tok.compare(0, key.size(), key) != 0 ||
        tok[key.size()] != '=') {
        parse_fail(line_no, "expected '" + key + "=<int>', got '" + tok + "'");
    }
    return parse_int(tok.substr(key.size() + 1), line_no);
}

}  // namespace detail

inline ParseResult parse(const std::string& text) {
    TreeBuilder builder;
    std::optional<std::string> root;
    std::size_t root_line = 0;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto toks = detail::tokens_of(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        try {
            if (kw == "vertex") {
                if (toks.size() != 2) detail::parse_fail(line_no, "usage: vertex <id>");
                builder.add_vertex(toks[1]);
            } else if (kw == "arrow") {
                if (toks.size() != 3) detail::parse_fail(line_no, "usage: arrow <id> f=<int>");
                builder.add_arrow(toks[1], detail::parse_keyed_int(toks[2], "f", line_no));
            } else if (kw == "edge") {
                if (toks.size() < 3 || toks.size() > 5) {
                    detail::parse_fail(line_no, "usage: edge <idA> <idB> [qA=<int>] [qB=<int>]");
                }
                Int qa = 1, qb = 1;
                bool saw_a = false, saw_b = false;
                for (std::size_t i = 3; i < toks.size(); ++i) {
                    if (toks[i].rfind("qA=", 0) == 0) {
                        if (saw_a) detail::parse_fail(line_no, "duplicate qA");
                        qa = detail::parse_keyed_int(toks[i], "qA", line_no);
                        saw_a = true;
                    } else if (toks[i].rfind("qB=", 0) == 0) {
                        if (saw_b) detail::parse_fail(line_no, "duplicate qB");
                        qb = detail::parse_keyed_int(toks[i], "qB", line_no);
                        saw_b = true;
                    } else {
                        detail::parse_fail(line_no, "expected qA=<int> or qB=<int>, got '" +
                                                        toks[i] + "'");
                    }
                }
                builder.add_edge(toks[1], toks[2], qa, qb);
            } else if (kw == "bundle") {
                if (toks.size() != 3) detail::parse_fail(line_no, "usage: bundle <vertexId> n=<int>");
                Int n = detail::parse_keyed_int(toks[2], "n", line_no);
                if (n < 0 || n > 1000000) detail::parse_fail(line_no, "unreasonable bundle size");
                for (Int i = 1; i <= n; ++i) {
                    std::string id = builder.fresh_id(toks[1] + ".k" + i.str());
                    builder.add_arrow(id, 1);
                    builder.add_edge(toks[1], id, 1, 1);
                }
            } else if (kw == "root") {
                if (toks.size() != 2) detail::parse_fail(line_no, "usage: root <id>");
                if (root) detail::parse_fail(line_no, "duplicate root line");
                root = toks[1];
                root_line = line_no;
            } else {
                detail::parse_fail(line_no, "unknown keyword '" + kw + "'");
            }
        } catch (const std::invalid_argument& e) {
            detail::parse_fail(line_no, e.what());
        }
    }

    ParseResult result{builder.build(), root};
    auto report = validate(result.tree);
    if (!report.ok()) {
        throw std::runtime_error("validation failed:\n" + report.to_string());
    }
    if (root) {
        if (!result.tree.has_node(*root)) {
            detail::parse_fail(root_line, "unknown root '" + *root + "'");
        }
        if (!result.tree.is_vertex(*root) ||
            classify_vertex(result.tree, *root) == RootClass::Neither) {
            detail::parse_fail(root_line, "'" + *root + "' is not a pseudo-root");
        }
    }
    return result;
}

inline std::string serialize(const DecoratedTree& t,
                             const std::optional<std::string>& root = std::nullopt) {
    std::string out;
    for (const auto& v : t.vertices()) out += "vertex " + v + "\n";
    for (const auto& a : t.arrows()) out += "arrow " + a + " f=" + t.arrow_f(a).str() + "\n";
    for (const auto& e : t.edges()) {
        out += "edge " + e.a + " " + e.b;
        if (t.q(e, e.a) != 1) out += " qA=" + t.q(e, e.a).str();
        if (t.q(e, e.b) != 1) out += " qB=" + t.q(e, e.b).str();
        out += "\n";
    }
    if (root) out += "root " + *root + "\n";
    return out;
}

inline std::string serialize(const RootedTree& rt) {
    return serialize(rt.tree, rt.root);
}

inline std::string to_dot(const DecoratedTree& t) {
    std::string out = "digraph decorated_tree {\n";
    out += "  graph [rankdir=TB];\n";
    out += "  node [fontsize=11];\n";
    detail::BranchMemo memo(t);
    for (const auto& v : t.vertices()) {
        out += "  \"" + v + "\" [shape=circle";
        if (detail::node_count_with(t, memo, v) == 0) {
            out += ", style=filled, fillcolor=gray70";
        }
        out += "];\n";
    }
    for (const auto& a : t.arrows()) {
        out += "  \"" + a + "\" [shape=none, label=\"(" + t.arrow_f(a).str() + ")\"];\n";
    }
    for (const auto& e : t.edges()) {
        // Point the arrowhead at arrow nodes; plain line between vertices.
        std::string tail = e.a, head = e.b;
        if (t.is_arrow(tail) && !t.is_arrow(head)) std::swap(tail, head);
        out += "  \"" + tail + "\" -> \"" + head + "\"";
        std::string attrs;
        if (t.is_arrow(head) && t.is_arrow(tail)) attrs += "dir=both";
        else if (!t.is_arrow(head)) attrs += "dir=none";
        if (t.q(e, tail) != 1) {
            if (!attrs.empty()) attrs += ", ";
            attrs += "taillabel=\"" + t.q(e, tail).str() + "\"";
        }
        if (t.q(e, head) != 1) {
            if (!attrs.empty()) attrs += ", ";
            attrs += "headlabel=\"" + t.q(e, head).str() + "\"";
        }
        if (!attrs.empty()) out += " [" + attrs + "]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace dtree
