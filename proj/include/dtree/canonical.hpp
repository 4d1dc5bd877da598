// Structural comparison of decorated trees.
//
// Two trees are structurally equal when some bijection of their nodes
// preserves kinds, arrow decorations, edges and near-end edge decorations —
// ids are irrelevant.  The test is by canonical form: an encoding rooted at
// the (isomorphism-invariant) tree center in which each node sorts its
// subtree encodings, so equal keys correspond exactly to isomorphic trees.

#pragma once

#include <dtree/tree.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace dtree {

// The one or two middle nodes of the underlying tree, by leaf peeling.
inline std::vector<std::string> tree_centers(const DecoratedTree& t) {
    std::vector<std::string> remaining;
    std::map<std::string, std::size_t> degree;
    for (const auto& v : t.vertices()) remaining.push_back(v);
    for (const auto& a : t.arrows()) remaining.push_back(a);
    for (const auto& id : remaining) degree[id] = t.valency(id);

    std::vector<std::string> layer;
    for (const auto& id : remaining) {
        if (degree[id] <= 1) layer.push_back(id);
    }
    std::size_t alive = remaining.size();
    while (alive > 2) {
        std::vector<std::string> next;
        for (const auto& leaf : layer) {
            --alive;
            degree[leaf] = 0;
            for (const auto& nb : t.neighbors(leaf)) {
                if (degree[nb] > 1 && --degree[nb] == 1) next.push_back(nb);
            }
        }
        layer = std::move(next);
    }
    std::vector<std::string> centers;
    for (const auto& id : remaining) {
        if (degree[id] >= 1 || (alive <= 2 && t.valency(id) == 0)) centers.push_back(id);
    }
    // Isolated single node: the loop above keeps it via the valency-0 case.
    std::sort(centers.begin(), centers.end());
    return centers;
}

namespace detail {
inline std::string encode_down(const DecoratedTree& t, const std::string& node,
                               const std::string& parent) {
    std::string head = t.is_arrow(node) ? "A" + t.arrow_f(node).str() : "V";
    std::vector<std::string> parts;
    for (const auto& nb : t.neighbors(node)) {
        if (nb == parent) continue;
        Edge e(node, nb);
        parts.push_back("(" + t.q(e, node).str() + "," + t.q(e, nb).str() +
                        encode_down(t, nb, node) + ")");
    }
    std::sort(parts.begin(), parts.end());
    std::string out = head + "[";
    for (const auto& p : parts) out += p;
    out += "]";
    return out;
}
}  // namespace detail

inline std::string canonical_key(const DecoratedTree& t) {
    if (t.empty()) return "";
    auto centers = tree_centers(t);
    if (centers.size() == 1) return detail::encode_down(t, centers[0], "");
    const std::string& c1 = centers[0];
    const std::string& c2 = centers[1];
    Edge e(c1, c2);
    auto side = [&](const std::string& near, const std::string& far) {
        return "(" + t.q(e, near).str() + detail::encode_down(t, near, far) + ")";
    };
    std::string s1 = side(c1, c2);
    std::string s2 = side(c2, c1);
    if (s2 < s1) std::swap(s1, s2);
    return "E" + s1 + s2;
}

inline bool structurally_equal(const DecoratedTree& a, const DecoratedTree& b) {
    return canonical_key(a) == canonical_key(b);
}

// Equality on the nose: same ids, kinds, decorations and edges.
inline bool identically_equal(const DecoratedTree& a, const DecoratedTree& b) {
    if (a.vertices() != b.vertices() || a.arrows() != b.arrows()) return false;
    for (const auto& ar : a.arrows()) {
        if (a.arrow_f(ar) != b.arrow_f(ar)) return false;
    }
    if (a.edges() != b.edges()) return false;
    for (const auto& e : a.edges()) {
        if (a.q(e, e.a) != b.q(e, e.a) || a.q(e, e.b) != b.q(e, e.b)) return false;
    }
    return true;
}

}  // namespace dtree
