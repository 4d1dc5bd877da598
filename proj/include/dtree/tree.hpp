// Core data model: decorated trees.
//
// A decorated tree consists of
//   * vertices and arrows (two disjoint kinds of node, identified by
//     caller-supplied string ids),
//   * undirected edges, at most one per node pair, forming a tree,
//   * an integer decoration f on every arrow,
//   * an integer decoration q(e, x) on every edge e near each endpoint x.
//
// Well-formedness contract, checked by validate():
//   (i)   the nodes and edges form a finite tree (connected, acyclic);
//   (ii)  every arrow has valency exactly 1;
//   (iii) every arrow carries an integer decoration   [holds by construction];
//   (iv)  every edge end carries an integer decoration [holds by construction];
//   (v)   q(e, a) == 1 whenever the endpoint a is an arrow;
//   (vi)  decorations of distinct edges near a common node are coprime.
//
// Arrows with decoration 0 are called zero-arrows; an edge incident to a
// zero-arrow is called a dead end.  The empty tree and the single-vertex tree
// are both well-formed; a single arrow with no edge is not (violates (ii)).
//
// DecoratedTree is an immutable value; all construction and surgery goes
// through TreeBuilder, which enforces structural impossibilities (duplicate
// ids, unknown endpoints, self-loops, parallel edges) eagerly, while the
// semantic contract above is the business of validate().

#pragma once

#include <dtree/ints.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtree {

enum class NodeKind { Vertex, Arrow };

// Unordered node pair in canonical order (a < b lexicographically).
struct Edge {
    std::string a;
    std::string b;

    Edge(std::string x, std::string y) {
        if (x == y) throw std::invalid_argument("edge endpoints must differ: '" + x + "'");
        if (x < y) { a = std::move(x); b = std::move(y); }
        else       { a = std::move(y); b = std::move(x); }
    }

    bool has_end(const std::string& x) const { return x == a || x == b; }

    const std::string& other(const std::string& end) const {
        if (end == a) return b;
        if (end == b) return a;
        throw std::invalid_argument("node '" + end + "' is not an endpoint of " + label());
    }

    std::string label() const { return "{" + a + "," + b + "}"; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {
inline void check_id(const std::string& id) {
    if (id.empty()) throw std::invalid_argument("node id must be nonempty");
    for (char c : id) {
        if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '=' || c == ',' || c == ';') {
            throw std::invalid_argument("node id '" + id + "' contains a reserved character");
        }
    }
}
}  // namespace detail

class TreeBuilder;

class DecoratedTree {
public:
    DecoratedTree() = default;  // the empty tree

    bool empty() const { return kind_.empty(); }
    std::size_t node_count() const { return kind_.size(); }
    std::size_t edge_count() const { return q_.size(); }

    bool has_node(const std::string& id) const { return kind_.count(id) != 0; }

    NodeKind kind(const std::string& id) const {
        auto it = kind_.find(id);
        if (it == kind_.end()) throw std::invalid_argument("unknown node '" + id + "'");
        return it->second;
    }

    bool is_vertex(const std::string& id) const { return kind(id) == NodeKind::Vertex; }
    bool is_arrow(const std::string& id) const { return kind(id) == NodeKind::Arrow; }
    bool is_zero_arrow(const std::string& id) const { return is_arrow(id) && arrow_f(id) == 0; }
    bool is_nonzero_arrow(const std::string& id) const { return is_arrow(id) && arrow_f(id) != 0; }

    const Int& arrow_f(const std::string& id) const {
        auto it = f_.find(id);
        if (it == f_.end()) throw std::invalid_argument("node '" + id + "' is not an arrow");
        return it->second;
    }

    // Sorted id lists; stable across runs.
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::string>& arrows() const { return arrows_; }
    const std::vector<std::string>& zero_arrows() const { return zero_arrows_; }
    const std::vector<std::string>& nonzero_arrows() const { return nonzero_arrows_; }

    // Vertices plus zero-arrows, sorted: the index set for per-node counts.
    std::vector<std::string> count_support() const {
        std::vector<std::string> out = vertices_;
        out.insert(out.end(), zero_arrows_.begin(), zero_arrows_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(const std::string& x, const std::string& y) const {
        return x != y && q_.count(Edge(x, y)) != 0;
    }

    Edge edge(const std::string& x, const std::string& y) const {
        Edge e(x, y);
        if (q_.count(e) == 0) throw std::invalid_argument("no edge " + e.label());
        return e;
    }

    const Int& q(const Edge& e, const std::string& end) const {
        auto it = q_.find(e);
        if (it == q_.end()) throw std::invalid_argument("no edge " + e.label());
        if (end == e.a) return it->second.first;
        if (end == e.b) return it->second.second;
        throw std::invalid_argument("node '" + end + "' is not an endpoint of " + e.label());
    }

    const Int& q(const std::string& x, const std::string& y, const std::string& end) const {
        return q(edge(x, y), end);
    }

    const std::vector<std::string>& neighbors(const std::string& id) const {
        auto it = adj_.find(id);
        if (it == adj_.end()) throw std::invalid_argument("unknown node '" + id + "'");
        return it->second;
    }

    std::size_t valency(const std::string& id) const { return neighbors(id).size(); }

    // Incident edges in canonical (sorted) order.
    std::vector<Edge> incident_edges(const std::string& id) const {
        std::vector<Edge> out;
        out.reserve(neighbors(id).size());
        for (const auto& nb : neighbors(id)) out.emplace_back(id, nb);
        return out;
    }

    bool is_dead_end(const Edge& e) const {
        return (is_arrow(e.a) && arrow_f(e.a) == 0) || (is_arrow(e.b) && arrow_f(e.b) == 0);
    }

    // Unique simple path from x to y as a node sequence (x == y gives {x}).
    // Requires a well-formed (connected) tree to succeed for all pairs.
    std::vector<std::string> path(const std::string& x, const std::string& y) const {
        if (!has_node(x)) throw std::invalid_argument("unknown node '" + x + "'");
        if (!has_node(y)) throw std::invalid_argument("unknown node '" + y + "'");
        if (x == y) return {x};
        std::map<std::string, std::string> parent;
        std::deque<std::string> queue{x};
        parent[x] = x;
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            if (cur == y) break;
            for (const auto& nb : neighbors(cur)) {
                if (parent.emplace(nb, cur).second) queue.push_back(nb);
            }
        }
        if (parent.count(y) == 0) {
            throw std::invalid_argument("nodes '" + x + "' and '" + y + "' are not connected");
        }
        std::vector<std::string> out;
        for (std::string cur = y; cur != x; cur = parent.at(cur)) out.push_back(cur);
        out.push_back(x);
        std::reverse(out.begin(), out.end());
        return out;
    }

    std::vector<Edge> path_edges(const std::string& x, const std::string& y) const {
        auto nodes = path(x, y);
        std::vector<Edge> out;
        out.reserve(nodes.size() - 1);
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) out.emplace_back(nodes[i], nodes[i + 1]);
        return out;
    }

    // True if e lies on the path from x to y.
    bool path_contains(const std::string& x, const std::string& y, const Edge& e) const {
        auto es = path_edges(x, y);
        return std::find(es.begin(), es.end(), e) != es.end();
    }

private:
    friend class TreeBuilder;

    std::map<std::string, NodeKind> kind_;
    std::map<std::string, Int> f_;                       // arrows only
    std::map<Edge, std::pair<Int, Int>> q_;              // (near e.a, near e.b)
    std::map<std::string, std::vector<std::string>> adj_;  // sorted neighbor ids

    std::vector<std::string> vertices_, arrows_, zero_arrows_, nonzero_arrows_;
    std::vector<Edge> edges_;
};

class TreeBuilder {
public:
    TreeBuilder() = default;

    explicit TreeBuilder(const DecoratedTree& t) {
        for (const auto& [id, k] : t.kind_) kind_[id] = k;
        f_ = t.f_;
        q_ = t.q_;
    }

    bool has_node(const std::string& id) const { return kind_.count(id) != 0; }
    bool has_edge(const std::string& x, const std::string& y) const {
        return x != y && q_.count(Edge(x, y)) != 0;
    }

    TreeBuilder& add_vertex(const std::string& id) {
        detail::check_id(id);
        if (!kind_.emplace(id, NodeKind::Vertex).second) {
            throw std::invalid_argument("duplicate node id '" + id + "'");
        }
        return *this;
    }

    TreeBuilder& add_arrow(const std::string& id, Int f) {
        detail::check_id(id);
        if (!kind_.emplace(id, NodeKind::Arrow).second) {
            throw std::invalid_argument("duplicate node id '" + id + "'");
        }
        f_[id] = std::move(f);
        return *this;
    }

    // q defaults to 1 near both ends (the common case at arrow ends).
    TreeBuilder& add_edge(const std::string& x, const std::string& y,
                          Int q_near_x = 1, Int q_near_y = 1) {
        require_node(x);
        require_node(y);
        Edge e(x, y);
        auto value = (x == e.a) ? std::make_pair(std::move(q_near_x), std::move(q_near_y))
                                : std::make_pair(std::move(q_near_y), std::move(q_near_x));
        if (!q_.emplace(e, std::move(value)).second) {
            throw std::invalid_argument("duplicate edge " + e.label());
        }
        return *this;
    }

    TreeBuilder& remove_edge(const std::string& x, const std::string& y) {
        Edge e(x, y);
        if (q_.erase(e) == 0) throw std::invalid_argument("no edge " + e.label());
        return *this;
    }

    // Removes the node together with all incident edges.
    TreeBuilder& remove_node(const std::string& id) {
        require_node(id);
        kind_.erase(id);
        f_.erase(id);
        for (auto it = q_.begin(); it != q_.end();) {
            if (it->first.has_end(id)) it = q_.erase(it);
            else ++it;
        }
        return *this;
    }

    TreeBuilder& set_q(const std::string& x, const std::string& y,
                       const std::string& end, Int value) {
        Edge e(x, y);
        auto it = q_.find(e);
        if (it == q_.end()) throw std::invalid_argument("no edge " + e.label());
        if (end == e.a) it->second.first = std::move(value);
        else if (end == e.b) it->second.second = std::move(value);
        else throw std::invalid_argument("node '" + end + "' is not an endpoint of " + e.label());
        return *this;
    }

    TreeBuilder& set_arrow_f(const std::string& id, Int value) {
        auto it = f_.find(id);
        if (it == f_.end()) throw std::invalid_argument("node '" + id + "' is not an arrow");
        it->second = std::move(value);
        return *this;
    }

    // First unused id among base, base.1, base.2, ...
    std::string fresh_id(const std::string& base) const {
        detail::check_id(base);
        if (!has_node(base)) return base;
        for (int n = 1;; ++n) {
            std::string candidate = base + "." + std::to_string(n);
            if (!has_node(candidate)) return candidate;
        }
    }

    DecoratedTree build() const {
        DecoratedTree t;
        t.kind_ = kind_;
        t.f_ = f_;
        t.q_ = q_;
        for (const auto& [id, k] : kind_) {
            t.adj_[id];  // ensure entry even for isolated nodes
            switch (k) {
                case NodeKind::Vertex: t.vertices_.push_back(id); break;
                case NodeKind::Arrow:
                    t.arrows_.push_back(id);
                    if (f_.at(id) == 0) t.zero_arrows_.push_back(id);
                    else t.nonzero_arrows_.push_back(id);
                    break;
            }
        }
        for (const auto& [e, qs] : q_) {
            (void)qs;
            if (kind_.count(e.a) == 0) throw std::invalid_argument("edge " + e.label() + " references unknown node '" + e.a + "'");
            if (kind_.count(e.b) == 0) throw std::invalid_argument("edge " + e.label() + " references unknown node '" + e.b + "'");
            t.adj_[e.a].push_back(e.b);
            t.adj_[e.b].push_back(e.a);
            t.edges_.push_back(e);
        }
        for (auto& [id, nbs] : t.adj_) {
            (void)id;
            std::sort(nbs.begin(), nbs.end());
        }
        return t;
    }

private:
    void require_node(const std::string& id) const {
        if (kind_.count(id) == 0) throw std::invalid_argument("unknown node '" + id + "'");
    }

    std::map<std::string, NodeKind> kind_;
    std::map<std::string, Int> f_;
    std::map<Edge, std::pair<Int, Int>> q_;
};

// ---------------------------------------------------------------------------
// Well-formedness checking.

struct Violation {
    std::string clause;   // "(i)" .. "(vi)"
    std::string where;    // node id or edge label
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    std::string to_string() const {
        if (ok()) return "well-formed";
        std::string out;
        for (const auto& v : violations) {
            out += v.clause + " at " + v.where + ": " + v.message + "\n";
        }
        return out;
    }
};

inline ValidationReport validate(const DecoratedTree& t) {
    ValidationReport report;
    auto flag = [&](std::string clause, std::string where, std::string message) {
        report.violations.push_back({std::move(clause), std::move(where), std::move(message)});
    };

    // (i) connected and acyclic.  Uniqueness of edges and absence of
    // self-loops hold by construction, so with connectivity it suffices to
    // compare edge and node counts.
    if (!t.empty()) {
        std::set<std::string> seen;
        std::deque<std::string> queue{t.vertices().empty() ? t.arrows().front()
                                                           : t.vertices().front()};
        seen.insert(queue.front());
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            for (const auto& nb : t.neighbors(cur)) {
                if (seen.insert(nb).second) queue.push_back(nb);
            }
        }
        if (seen.size() != t.node_count()) {
            flag("(i)", "tree", "not connected: reached " + std::to_string(seen.size()) +
                                " of " + std::to_string(t.node_count()) + " nodes");
        } else if (t.edge_count() + 1 != t.node_count()) {
            flag("(i)", "tree", "cycle present: " + std::to_string(t.edge_count()) +
                                " edges on " + std::to_string(t.node_count()) + " nodes");
        }
    }

    // (ii) arrows have valency exactly 1.
    for (const auto& a : t.arrows()) {
        if (t.valency(a) != 1) {
            flag("(ii)", a, "arrow has valency " + std::to_string(t.valency(a)));
        }
    }

    // (v) edge decorations near arrows equal 1.
    for (const auto& e : t.edges()) {
        for (const std::string* end : {&e.a, &e.b}) {
            if (t.is_arrow(*end) && t.q(e, *end) != 1) {
                flag("(v)", e.label(), "decoration near arrow '" + *end + "' is " +
                                           t.q(e, *end).str());
            }
        }
    }

    // (vi) distinct edges near a common node have coprime decorations.
    // Arrows have valency <= 1 whenever (ii) holds, so only vertices matter.
    for (const auto& v : t.vertices()) {
        auto inc = t.incident_edges(v);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                const Int& qi = t.q(inc[i], v);
                const Int& qj = t.q(inc[j], v);
                if (!coprime(qi, qj)) {
                    flag("(vi)", v, "edges " + inc[i].label() + " and " + inc[j].label() +
                                        " carry non-coprime decorations " + qi.str() +
                                        ", " + qj.str());
                }
            }
        }
    }

    return report;
}

// Throwing convenience wrapper.
inline void require_valid(const DecoratedTree& t, const std::string& context = "tree") {
    auto report = validate(t);
    if (!report.ok()) {
        throw std::invalid_argument(context + " is not well-formed:\n" + report.to_string());
    }
}

}  // namespace dtree
