// Rooted and pseudo-rooted trees.
//
// A pseudo-root is a vertex v0 with all incident decorations equal to 1 such
// that every other vertex v has at most one "off-path" edge (an edge at v
// not lying on the path from v0 to v) decorated differently from 1.  A root
// additionally requires all off-path decorations to be >= 1.  Decorations on
// the paths themselves are unconstrained.
//
// This header also provides:
//   * the central set: nodes x such that walking from x to any vertex v the
//     continuation decorations at v are all >= 1 with at most one > 1;
//   * the partial order: x <= y when x lies on the path from the root to y;
//   * arrow-set subtrees T_X: the union of root paths to the arrows of X,
//     with a compensating zero-arrow absorbing the pruned decoration product
//     at each kept node;
//   * vertex-vertex determinant sign classification;
//   * the degree of a rooted tree (the root's count N_{v0});
//   * the block corrections splitting the pairing defect between delta and
//     genus.

#pragma once

#include <dtree/canonical.hpp>
#include <dtree/invariants.hpp>
#include <dtree/tree.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace dtree {

enum class RootClass { Root, PseudoRootOnly, Neither };

namespace detail {
// Walk the tree once from v0; for each vertex v != v0 examine the edges at v
// other than the one toward v0 (exactly the edges off the path from v0).
template <typename Visit>
void for_each_off_path(const DecoratedTree& t, const std::string& v0, Visit visit) {
    std::map<std::string, std::string> toward;  // neighbor in the direction of v0
    std::deque<std::string> queue{v0};
    toward[v0] = v0;
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const auto& nb : t.neighbors(cur)) {
            if (toward.emplace(nb, cur).second) queue.push_back(nb);
        }
        if (cur == v0 || !t.is_vertex(cur)) continue;
        std::vector<Edge> off;
        for (const auto& e : t.incident_edges(cur)) {
            if (!e.has_end(toward.at(cur))) off.push_back(e);
        }
        visit(cur, off);
    }
}
}  // namespace detail

// Classification against the root/pseudo-root conditions.  v0 must be a
// vertex of a valid tree.
inline RootClass classify_vertex(const DecoratedTree& t, const std::string& v0) {
    if (!t.is_vertex(v0)) {
        throw std::invalid_argument("roots are vertices; '" + v0 + "' is not");
    }
    for (const auto& e : t.incident_edges(v0)) {
        if (t.q(e, v0) != 1) return RootClass::Neither;
    }
    bool pseudo = true;
    bool strong = true;
    detail::for_each_off_path(t, v0, [&](const std::string& v, const std::vector<Edge>& off) {
        int nonunit = 0;
        for (const auto& e : off) {
            const Int& qe = t.q(e, v);
            if (qe != 1) ++nonunit;
            if (qe < 1) strong = false;
        }
        if (nonunit > 1) pseudo = false;
    });
    if (!pseudo) return RootClass::Neither;
    return strong ? RootClass::Root : RootClass::PseudoRootOnly;
}

enum class RootStrength { Root, PseudoRoot };

struct RootedTree {
    DecoratedTree tree;
    std::string root;
    RootStrength strength;
};

inline RootedTree make_rooted(const DecoratedTree& t, const std::string& v0) {
    switch (classify_vertex(t, v0)) {
        case RootClass::Root: return {t, v0, RootStrength::Root};
        case RootClass::PseudoRootOnly: return {t, v0, RootStrength::PseudoRoot};
        default:
            throw std::invalid_argument("'" + v0 + "' is not a pseudo-root");
    }
}

inline std::vector<std::string> find_roots(const DecoratedTree& t) {
    std::vector<std::string> out;
    for (const auto& v : t.vertices()) {
        if (classify_vertex(t, v) == RootClass::Root) out.push_back(v);
    }
    return out;
}

inline std::vector<std::string> find_pseudo_roots(const DecoratedTree& t) {
    std::vector<std::string> out;
    for (const auto& v : t.vertices()) {
        if (classify_vertex(t, v) != RootClass::Neither) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Central set.

// x is central when, for every vertex v != x, the edges at v other than the
// one toward x all carry decorations >= 1, at most one of them > 1.
inline bool is_central(const DecoratedTree& t, const std::string& x) {
    if (!t.has_node(x)) throw std::invalid_argument("unknown node '" + x + "'");
    for (const auto& v : t.vertices()) {
        if (v == x) continue;
        auto toward = t.path(v, x)[1];  // next node from v in the direction of x
        int big = 0;
        for (const auto& e : t.incident_edges(v)) {
            if (e.has_end(toward)) continue;
            const Int& qe = t.q(e, v);
            if (qe < 1) return false;
            if (qe > 1) ++big;
        }
        if (big > 1) return false;
    }
    return true;
}

// All central nodes, sorted.  The set is always connected in the tree; a
// failure of that is a broken internal assumption, not an input error.
inline std::vector<std::string> central_set(const DecoratedTree& t) {
    std::vector<std::string> cent;
    for (const auto& v : t.vertices()) {
        if (is_central(t, v)) cent.push_back(v);
    }
    for (const auto& a : t.arrows()) {
        if (is_central(t, a)) cent.push_back(a);
    }
    std::sort(cent.begin(), cent.end());
    if (cent.size() > 1) {
        std::set<std::string> in_cent(cent.begin(), cent.end());
        std::set<std::string> seen{cent.front()};
        std::deque<std::string> queue{cent.front()};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            for (const auto& nb : t.neighbors(cur)) {
                if (in_cent.count(nb) && seen.insert(nb).second) queue.push_back(nb);
            }
        }
        if (seen.size() != cent.size()) {
            throw std::logic_error("central set is not connected");
        }
    }
    return cent;
}

// ---------------------------------------------------------------------------
// The partial order below the root.

// x < y: x != y and x lies on the path from the root to y.
inline bool lt(const RootedTree& rt, const std::string& x, const std::string& y) {
    if (x == y) return false;
    auto nodes = rt.tree.path(rt.root, y);
    return std::find(nodes.begin(), nodes.end(), x) != nodes.end();
}

inline bool le(const RootedTree& rt, const std::string& x, const std::string& y) {
    return x == y || lt(rt, x, y);
}

inline bool comparable(const RootedTree& rt, const std::string& x, const std::string& y) {
    return le(rt, x, y) || le(rt, y, x);
}

// ---------------------------------------------------------------------------
// Arrow-set subtrees.

// T_X: keep the paths from the root to the arrows of X (decorations
// unchanged); at each kept node whose pruned decoration product b_v differs
// from 1, attach a fresh zero-arrow "<v>.b0" with q = b_v near v.
inline RootedTree subtree_TX(const RootedTree& rt, const std::vector<std::string>& X) {
    const DecoratedTree& t = rt.tree;
    if (X.empty()) throw std::invalid_argument("arrow-set subtree of an empty set");
    for (const auto& a : X) {
        if (!t.is_nonzero_arrow(a)) {
            throw std::invalid_argument("subtree arrow sets consist of nonzero arrows; got '" +
                                        a + "'");
        }
    }

    std::set<std::string> keep_nodes{rt.root};
    std::set<Edge> keep_edges;
    for (const auto& a : X) {
        auto nodes = t.path(rt.root, a);
        keep_nodes.insert(nodes.begin(), nodes.end());
        for (const auto& e : t.path_edges(rt.root, a)) keep_edges.insert(e);
    }

    TreeBuilder b;
    for (const auto& id : keep_nodes) {
        if (t.is_vertex(id)) b.add_vertex(id);
        else b.add_arrow(id, t.arrow_f(id));
    }
    for (const auto& e : keep_edges) {
        b.add_edge(e.a, e.b, t.q(e, e.a), t.q(e, e.b));
    }
    for (const auto& id : keep_nodes) {
        Int pruned = 1;
        for (const auto& e : t.incident_edges(id)) {
            if (!keep_edges.count(e)) pruned *= t.q(e, id);
        }
        if (pruned != 1) {
            std::string fresh = b.fresh_id(id + ".b0");
            b.add_arrow(fresh, 0);
            b.add_edge(id, fresh, pruned, 1);
        }
    }
    return make_rooted(b.build(), rt.root);
}

inline RootedTree subtree_arrow(const RootedTree& rt, const std::string& alpha) {
    return subtree_TX(rt, {alpha});
}

// ---------------------------------------------------------------------------
// Determinant signs.

enum class DetSign { Negative, Positive, Nonzero, Mixed, Vacuous };

// Classify the edge determinants over edges with both endpoints vertices.
inline DetSign determinant_sign(const DecoratedTree& t) {
    bool any = false, all_neg = true, all_pos = true, all_nonzero = true;
    for (const auto& e : t.edges()) {
        if (!t.is_vertex(e.a) || !t.is_vertex(e.b)) continue;
        any = true;
        Int d = det_edge(t, e);
        if (d >= 0) all_neg = false;
        if (d <= 0) all_pos = false;
        if (d == 0) all_nonzero = false;
    }
    if (!any) return DetSign::Vacuous;
    if (all_neg) return DetSign::Negative;
    if (all_pos) return DetSign::Positive;
    if (all_nonzero) return DetSign::Nonzero;
    return DetSign::Mixed;
}

// deg: the count N at the root.
inline Int degree(const RootedTree& rt) {
    return multiplicity_node(rt.tree, rt.root);
}

// ---------------------------------------------------------------------------
// Block corrections.

// Sum of F(alpha) - F_X(alpha) over alpha in X, where F_X is computed in the
// subtree T_X.
namespace detail {
inline Int f_drop(const RootedTree& rt, const std::vector<std::string>& X) {
    RootedTree tx = subtree_TX(rt, X);
    Int drop = 0;
    for (const auto& a : X) {
        drop += F_arrow(rt.tree, a) - F_arrow(tx.tree, a);
    }
    return drop;
}
}  // namespace detail

// The defect-side share of the block correction:
// (correction_M - sum of F-drops) / 2, always an integer.
inline Int correction_D(const RootedTree& rt, const std::vector<std::string>& X) {
    return exact_div(correction_M(rt.tree, X) - detail::f_drop(rt, X), 2);
}

// The genus-side share: (correction_M + sum of F-drops) / 2.
inline Int correction_G(const RootedTree& rt, const std::vector<std::string>& X) {
    return exact_div(correction_M(rt.tree, X) + detail::f_drop(rt, X), 2);
}

}  // namespace dtree
