// Path products and the machinery built on them: predicted branch sums at
// out-pairs, decoration reversal about a central node, and the root
// decomposition whose piece defects recover the genus.
//
//   * path_product(t, x, y) multiplies the off-path decorations along the
//     path from x to y, skipping the start: for every node u != x on the
//     path and every edge at u that is not itself a path edge, the factor
//     q(e, u) enters the product.  The direction matters.
//   * beyond_edge(t, x, e) lists the vertices and zero-arrows whose path
//     from x crosses e, i.e. the population of the far side of e.
//   * Every edge of a rooted tree has exactly one endpoint closer to the
//     root; the pair (closer endpoint, edge) is an out-pair.  When every
//     arrow flag is 0 or 1, the branch sum at an out-pair equals
//     1 + sum over the far side of path_product(t, x, y) * (valency(y) - 2),
//     and conversely: if that identity holds at every out-pair, all flags
//     are 0 or 1.
//   * reverse_about(t, eta) flips the decorations "facing" a central node
//     eta: near eta nothing changes, and for every vertex v != eta only the
//     decoration on v's edge toward eta changes, in the unique way that
//     negates the determinant of every edge not incident to eta.  For v
//     adjacent to eta the new value is Q(e,v) - q(e,v).  Applying the
//     reversal twice gives back the original tree.
//   * root_decompose(rt) cuts the root off: each root neighbor keeps its
//     branch, gets a fresh zero-arrow in place of the root (decorations of
//     the old root edge preserved on the branch side, 1 near the arrow),
//     and the piece is then reversed about that arrow.  The arrow is always
//     central there because rt is rooted.
//   * genus_via_decomposition(rt) evaluates
//     (d-1)(d-2)/2 - sum of piece defects, with d the degree of rt; this
//     equals the genus of the tree whenever every arrow flag is 0 or 1.

#pragma once

#include <dtree/invariants.hpp>
#include <dtree/rooted.hpp>
#include <dtree/split.hpp>
#include <dtree/tree.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtree {

// ---------------------------------------------------------------------------
// Path products.

// Product of q(e, u) over the nodes u != x of the path from x to y and the
// edges e at u that do not lie on the path.  Requires x != y.
inline Int path_product(const DecoratedTree& t, const std::string& x, const std::string& y) {
    if (x == y) {
        throw std::invalid_argument("path products need two distinct nodes; got '" + x +
                                    "' twice");
    }
    auto nodes = t.path(x, y);
    Int value = 1;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        for (const auto& e : t.incident_edges(nodes[i])) {
            if (e.has_end(nodes[i - 1])) continue;
            if (i + 1 < nodes.size() && e.has_end(nodes[i + 1])) continue;
            value *= t.q(e, nodes[i]);
        }
    }
    return value;
}

// The vertices and zero-arrows separated from x by e (the far side of e as
// seen from x), sorted by id.  x itself is never listed.
inline std::vector<std::string> beyond_edge(const DecoratedTree& t, const std::string& x,
                                            const Edge& e) {
    if (!t.has_node(x)) throw std::invalid_argument("unknown node '" + x + "'");
    if (!t.has_edge(e.a, e.b)) throw std::invalid_argument("no edge " + e.label());
    // The far endpoint is the one whose path back to x uses e.
    std::string far = t.path_contains(x, e.a, e) ? e.a : e.b;
    std::vector<std::string> out;
    std::deque<std::string> queue{far};
    std::map<std::string, bool> seen{{far, true}};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        if (t.is_vertex(cur) || t.is_zero_arrow(cur)) out.push_back(cur);
        for (const auto& nb : t.neighbors(cur)) {
            Edge step(cur, nb);
            if (step == e) continue;
            if (seen.emplace(nb, true).second) queue.push_back(nb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Out-pairs and the predicted branch sum.

// The (node, edge) pairs in which the node is the endpoint closer to the
// root; every edge appears exactly once.
inline std::vector<std::pair<std::string, Edge>> out_pairs(const RootedTree& rt) {
    const DecoratedTree& t = rt.tree;
    std::map<std::string, std::string> toward;  // neighbor in the direction of the root
    std::deque<std::string> queue{rt.root};
    toward[rt.root] = rt.root;
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const auto& nb : t.neighbors(cur)) {
            if (toward.emplace(nb, cur).second) queue.push_back(nb);
        }
    }
    std::vector<std::pair<std::string, Edge>> out;
    for (const auto& e : t.edges()) {
        out.emplace_back(toward.at(e.a) == e.b ? e.b : e.a, e);
    }
    return out;
}

// 1 + sum over the far side of e of path_product(t, x, y) * (valency(y) - 2).
// Equals branch_sum(t, x, e) at every out-pair (x, e) exactly when all arrow
// flags are 0 or 1.
inline Int predicted_branch_sum(const DecoratedTree& t, const std::string& x, const Edge& e) {
    Int value = 1;
    for (const auto& y : beyond_edge(t, x, e)) {
        value += path_product(t, x, y) * (Int(t.valency(y)) - 2);
    }
    return value;
}

inline bool arrows_flagged_zero_or_one(const DecoratedTree& t) {
    for (const auto& a : t.arrows()) {
        const Int& f = t.arrow_f(a);
        if (f != 0 && f != 1) return false;
    }
    return true;
}

// True when the predicted branch sum is exact at every out-pair.
inline bool branch_identity_holds(const RootedTree& rt) {
    for (const auto& [x, e] : out_pairs(rt)) {
        if (branch_sum(rt.tree, x, e) != predicted_branch_sum(rt.tree, x, e)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Reversal about a central node.

// For each vertex v != eta let e_v be v's edge toward eta and s_v the sum of
// the old and new decorations of e_v near v.  Adjacent to eta, s_v is the
// product Q(e_v, v) of the other decorations at v; one step further out,
// s_v = Q(e_v, v) * (Q_bar / y_v)^2 * (s_bar / Q_bar) with y_v the
// decoration of e_v near the parent and Q_bar, s_bar the parent's values.
// Both divisions are exact (y_v is one of the factors of Q_bar, and Q_bar
// divides s_bar by induction); centrality of eta keeps the divisors
// positive.  This is the unique assignment that fixes all other decorations
// and negates the determinants of the edges not incident to eta.
inline DecoratedTree reverse_about(const DecoratedTree& t, const std::string& eta) {
    if (!t.has_node(eta)) throw std::invalid_argument("unknown node '" + eta + "'");
    if (!is_central(t, eta)) {
        throw std::invalid_argument("reversal needs a central node; '" + eta + "' is not central");
    }
    TreeBuilder b(t);
    std::map<std::string, std::string> parent{{eta, eta}};
    std::map<std::string, Int> s;
    std::deque<std::string> queue{eta};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const auto& nb : t.neighbors(cur)) {
            if (parent.emplace(nb, cur).second) queue.push_back(nb);
        }
        if (cur == eta || !t.is_vertex(cur)) continue;
        const std::string& par = parent.at(cur);
        Edge ev(cur, par);
        Int qv = Q(t, ev, cur);
        Int sv;
        if (par == eta) {
            sv = qv;
        } else {
            Int ratio = exact_div(Q(t, Edge(par, parent.at(par)), par), t.q(ev, par));
            sv = qv * ratio * ratio * exact_div(s.at(par), Q(t, Edge(par, parent.at(par)), par));
        }
        b.set_q(cur, par, cur, sv - t.q(ev, cur));
        s.emplace(cur, std::move(sv));
    }
    DecoratedTree out = b.build();
    require_valid(out);
    return out;
}

// ---------------------------------------------------------------------------
// Root decomposition.

struct RootPiece {
    DecoratedTree tree;  // the branch, reversed about the added arrow
    std::string attach;  // the root neighbor the piece grew from
    std::string arrow;   // id of the added zero-arrow
};

// One piece per root neighbor, in sorted neighbor order.  Piece i keeps the
// component of the i-th neighbor after the root edges are cut, replaces the
// root by a fresh zero-arrow "<root>.a<i>" (old decoration near the
// neighbor, 1 near the arrow), and reverses the result about that arrow.
// The root must be genuine (not merely a pseudo-root) and have a neighbor.
inline std::vector<RootPiece> root_decompose(const RootedTree& rt) {
    const DecoratedTree& t = rt.tree;
    if (rt.strength != RootStrength::Root) {
        throw std::invalid_argument("root decomposition needs a root, not merely a pseudo-root");
    }
    auto neighbors = t.neighbors(rt.root);
    if (neighbors.empty()) {
        throw std::invalid_argument("root decomposition needs the root to have a neighbor");
    }
    std::vector<RootPiece> pieces;
    int i = 0;
    for (const auto& vi : neighbors) {
        ++i;
        Edge ei(rt.root, vi);
        TreeBuilder b = detail::component_builder(t, ei, vi);
        std::string ai = b.fresh_id(rt.root + ".a" + std::to_string(i));
        b.add_arrow(ai, 0);
        b.add_edge(vi, ai, t.q(ei, vi), 1);
        DecoratedTree prime = b.build();
        if (!is_central(prime, ai)) {
            throw std::logic_error("added arrow is not central in the cut-off branch");
        }
        RootPiece piece;
        piece.tree = reverse_about(prime, ai);
        piece.attach = vi;
        piece.arrow = ai;
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

// (d-1)(d-2)/2 minus the summed defect of the decomposition pieces, with
// d the degree of rt.  Equals the genus of the underlying tree whenever
// every arrow flag is 0 or 1.
inline Int genus_via_decomposition(const RootedTree& rt) {
    Int d = degree(rt);
    Int sum = 0;
    for (const auto& piece : root_decompose(rt)) {
        sum += genus_delta(piece.tree).delta;
    }
    return exact_div((d - 1) * (d - 2), 2) - sum;
}

}  // namespace dtree
