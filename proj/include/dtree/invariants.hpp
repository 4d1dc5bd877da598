// Counting invariants of decorated trees.
//
// The workhorse is the branch sum p(u, e): the sum, over all nonzero arrows
// reached from u through e, of the arrow decoration multiplied by every edge
// decoration hanging off the connecting path beyond u.  All per-node counts
// N_v, the total count M, and the arrow invariant F reduce to branch sums.
// Branch sums satisfy a local recursion over directed edges, so one
// memoized pass covers a whole tree; the definitional path-product formulas
// are exercised against this implementation by an independent transcription
// in the test suite.
//
// Conventions: N_v is defined for vertices and zero-arrows only; empty
// products are 1; empty sums are 0; gcd is nonnegative.

#pragma once

#include <dtree/ints.hpp>
#include <dtree/tree.hpp>

#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dtree {

// Q(e, end): product of the decorations near `end` on the other edges at `end`.
inline Int Q(const DecoratedTree& t, const Edge& e, const std::string& end) {
    Int prod = 1;
    for (const auto& d : t.incident_edges(end)) {
        if (d == e) continue;
        prod *= t.q(d, end);
    }
    return prod;
}

inline Int det_edge(const DecoratedTree& t, const Edge& e) {
    return t.q(e, e.a) * t.q(e, e.b) - Q(t, e, e.a) * Q(t, e, e.b);
}

namespace detail {

// Memoized branch sums.  p(u, e) depends only on the directed edge
// (e, far endpoint), so values are shared between all queries on one tree.
class BranchMemo {
public:
    explicit BranchMemo(const DecoratedTree& t) : t_(t) {}

    const Int& p(const std::string& u, const Edge& e) {
        return p_toward(e.other(u), e);
    }

private:
    const Int& p_toward(const std::string& far, const Edge& e) {
        auto key = std::make_pair(e, far);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Int value = 0;
        if (t_.is_arrow(far)) {
            value = t_.arrow_f(far);
        } else {
            std::vector<Edge> onward;
            for (const auto& d : t_.incident_edges(far)) {
                if (!(d == e)) onward.push_back(d);
            }
            // The coefficient of branch i is the product of the decorations
            // of the other onward edges; build all of them with prefix and
            // suffix products so one visit costs O(k) multiplications.
            std::size_t k = onward.size();
            std::vector<Int> before(k + 1, 1), after(k + 1, 1);
            for (std::size_t i = 0; i < k; ++i) {
                before[i + 1] = before[i] * t_.q(onward[i], far);
            }
            for (std::size_t i = k; i-- > 0;) {
                after[i] = after[i + 1] * t_.q(onward[i], far);
            }
            for (std::size_t i = 0; i < k; ++i) {
                value += before[i] * after[i + 1] * p_toward(onward[i].other(far), onward[i]);
            }
        }
        return memo_.emplace(std::move(key), std::move(value)).first->second;
    }

    const DecoratedTree& t_;
    std::map<std::pair<Edge, std::string>, Int> memo_;
};

inline Int node_count_with(const DecoratedTree& t, BranchMemo& memo,
                           const std::string& v) {
    Int sum = 0;
    for (const auto& e : t.incident_edges(v)) sum += Q(t, e, v) * memo.p(v, e);
    return sum;
}

}  // namespace detail

// p(u, e) for an endpoint u of e.
inline Int branch_sum(const DecoratedTree& t, const std::string& u, const Edge& e) {
    detail::BranchMemo memo(t);
    return memo.p(u, e);
}

// The branch sum seen from the other endpoint.
inline Int p_star(const DecoratedTree& t, const std::string& u, const Edge& e) {
    detail::BranchMemo memo(t);
    return memo.p(e.other(u), e);
}

// The nonzero arrows reached from u through e, sorted.
inline std::vector<std::string> arrows_through(const DecoratedTree& t,
                                               const std::string& u, const Edge& e) {
    std::vector<std::string> out;
    std::set<std::string> seen{u};
    std::deque<std::string> queue{e.other(u)};
    seen.insert(e.other(u));
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        if (t.is_nonzero_arrow(cur)) out.push_back(cur);
        for (const auto& nb : t.neighbors(cur)) {
            if (seen.insert(nb).second) queue.push_back(nb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// N_v; defined for vertices and zero-arrows.
inline Int multiplicity_node(const DecoratedTree& t, const std::string& v) {
    if (t.is_arrow(v) && t.arrow_f(v) != 0) {
        throw std::invalid_argument("N is defined on vertices and zero-arrows; '" +
                                    v + "' is a nonzero arrow");
    }
    detail::BranchMemo memo(t);
    return detail::node_count_with(t, memo, v);
}

// M = -sum over vertices and zero-arrows of N_v (valency - 2).
inline Int multiplicity(const DecoratedTree& t) {
    detail::BranchMemo memo(t);
    Int m = 0;
    for (const auto& v : t.count_support()) {
        m -= detail::node_count_with(t, memo, v) * (Int(t.valency(v)) - 2);
    }
    return m;
}

// F(alpha) = gcd(f(alpha), p(alpha, e)) for the unique edge e at alpha;
// defined for nonzero arrows, where it is >= 1.
inline Int F_arrow(const DecoratedTree& t, const std::string& alpha) {
    if (!t.is_nonzero_arrow(alpha)) {
        throw std::invalid_argument("F is defined on nonzero arrows; got '" + alpha + "'");
    }
    auto e = t.incident_edges(alpha).at(0);
    return gcd(t.arrow_f(alpha), branch_sum(t, alpha, e));
}

inline Int F_total(const DecoratedTree& t) {
    detail::BranchMemo memo(t);
    Int sum = 0;
    for (const auto& a : t.nonzero_arrows()) {
        sum += gcd(t.arrow_f(a), memo.p(a, t.incident_edges(a).at(0)));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Path quantities.  All of these require a path of positive length.

namespace detail {
inline std::vector<std::string> positive_path(const DecoratedTree& t,
                                              const std::string& x,
                                              const std::string& y) {
    auto nodes = t.path(x, y);
    if (nodes.size() < 2) {
        throw std::invalid_argument("path from '" + x + "' to '" + y +
                                    "' must have positive length");
    }
    return nodes;
}

// Product of decorations near u on the edges at u avoiding `avoid`.
inline Int off_product(const DecoratedTree& t, const std::string& u,
                       const std::set<Edge>& avoid) {
    Int prod = 1;
    for (const auto& d : t.incident_edges(u)) {
        if (avoid.count(d)) continue;
        prod *= t.q(d, u);
    }
    return prod;
}
}  // namespace detail

// Decoration near x of the first edge of the path from x to y.
inline Int q_along(const DecoratedTree& t, const std::string& x, const std::string& y) {
    auto nodes = detail::positive_path(t, x, y);
    return t.q(Edge(nodes[0], nodes[1]), x);
}

// Product of the off-path decorations at a node u of the path from x to y.
inline Int Q_along(const DecoratedTree& t, const std::string& x,
                   const std::string& y, const std::string& u) {
    auto nodes = detail::positive_path(t, x, y);
    if (std::find(nodes.begin(), nodes.end(), u) == nodes.end()) {
        throw std::invalid_argument("node '" + u + "' is not on the path from '" +
                                    x + "' to '" + y + "'");
    }
    auto edges = t.path_edges(x, y);
    std::set<Edge> on_path(edges.begin(), edges.end());
    return detail::off_product(t, u, on_path);
}

// Q*: the off-path decoration product over the interior nodes of the path.
inline Int Q_star(const DecoratedTree& t, const std::string& x, const std::string& y) {
    auto nodes = detail::positive_path(t, x, y);
    auto edges = t.path_edges(x, y);
    std::set<Edge> on_path(edges.begin(), edges.end());
    Int prod = 1;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        prod *= detail::off_product(t, nodes[i], on_path);
    }
    return prod;
}

// det of a path: q(x-end) q(y-end) - Q*^2 Q(x-end) Q(y-end).  For a single
// edge this is det_edge.
inline Int det_path(const DecoratedTree& t, const std::string& x, const std::string& y) {
    auto nodes = detail::positive_path(t, x, y);
    auto edges = t.path_edges(x, y);
    std::set<Edge> on_path(edges.begin(), edges.end());
    Int qx = t.q(edges.front(), x);
    Int qy = t.q(edges.back(), y);
    Int Qx = detail::off_product(t, x, on_path);
    Int Qy = detail::off_product(t, y, on_path);
    Int Qs = 1;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        Qs *= detail::off_product(t, nodes[i], on_path);
    }
    return qx * qy - Qs * Qs * Qx * Qy;
}

// ---------------------------------------------------------------------------
// Genus and defect.

struct GenusDelta {
    Int g;
    Int delta;
};

// g = (2 - M - F)/2 and delta = (F - M)/2; M + F is even on well-formed
// trees, and a parity failure here means the input was broken.
inline GenusDelta genus_delta(const DecoratedTree& t) {
    Int m = multiplicity(t);
    Int f = F_total(t);
    if (!is_even(m + f)) {
        throw std::logic_error("M + F should be even; got M=" + m.str() +
                               ", F=" + f.str());
    }
    return {exact_div(2 - m - f, 2), exact_div(f - m, 2)};
}

// ---------------------------------------------------------------------------
// Arrow pairings and per-arrow counts.

// I(X, Y): sum over ordered pairs of distinct arrows (a, b) in X x Y of
// Q*(path) f(a) f(b).  Zero arrows contribute nothing.
inline Int pairing_I(const DecoratedTree& t, const std::vector<std::string>& X,
                     const std::vector<std::string>& Y) {
    Int sum = 0;
    for (const auto& a : X) {
        const Int& fa = t.arrow_f(a);
        if (fa == 0) continue;
        for (const auto& b : Y) {
            if (b == a) continue;
            const Int& fb = t.arrow_f(b);
            if (fb == 0) continue;
            sum += Q_star(t, a, b) * fa * fb;
        }
    }
    return sum;
}

// I of one arrow against all other nonzero arrows.
inline Int I_arrow(const DecoratedTree& t, const std::string& alpha) {
    std::vector<std::string> rest;
    for (const auto& b : t.nonzero_arrows()) {
        if (b != alpha) rest.push_back(b);
    }
    return pairing_I(t, {alpha}, rest);
}

// M_alpha: the share of M carried by a single arrow; the shares sum to M.
inline Int m_alpha(const DecoratedTree& t, const std::string& alpha) {
    const Int& f = t.arrow_f(alpha);
    if (f == 0) return 0;

    // Propagate the reduced path weight xhat_{v,alpha} outward from alpha:
    // crossing from w to its neighbor v away from alpha multiplies by the
    // decorations at w on edges other than {v,w} and w's edge toward alpha.
    std::map<std::string, Int> xhat;
    std::map<std::string, std::string> toward;  // neighbor on the path to alpha
    std::deque<std::string> queue{alpha};
    toward[alpha] = alpha;
    Int m = 0;
    while (!queue.empty()) {
        std::string w = queue.front();
        queue.pop_front();
        for (const auto& nb : t.neighbors(w)) {
            if (toward.count(nb)) continue;
            toward[nb] = w;
            Int value;
            if (w == alpha) {
                value = f;
            } else {
                Int factor = 1;
                for (const auto& d : t.incident_edges(w)) {
                    if (d.has_end(nb) || d.has_end(toward.at(w))) continue;
                    factor *= t.q(d, w);
                }
                value = xhat.at(w) * factor;
            }
            xhat[nb] = value;
            queue.push_back(nb);
        }
        if (w != alpha && (t.is_vertex(w) || t.arrow_f(w) == 0)) {
            // x_{w,alpha} = xhat_{w,alpha} times the decorations at w off the path.
            Int at_w = 1;
            for (const auto& d : t.incident_edges(w)) {
                if (d.has_end(toward.at(w))) continue;
                at_w *= t.q(d, w);
            }
            m -= xhat.at(w) * at_w * (Int(t.valency(w)) - 2);
        }
    }
    return m;
}

// Correction term for a block X of nonzero arrows: the pairing of each
// arrow against the complement, scaled by (1 - 1/f).  The pairing of a
// single arrow against the complement is always divisible by its decoration.
inline Int correction_M(const DecoratedTree& t, const std::vector<std::string>& X) {
    std::set<std::string> in_X(X.begin(), X.end());
    for (const auto& a : X) {
        if (!t.is_nonzero_arrow(a)) {
            throw std::invalid_argument("correction blocks consist of nonzero arrows; got '" +
                                        a + "'");
        }
    }
    std::vector<std::string> complement;
    for (const auto& b : t.nonzero_arrows()) {
        if (!in_X.count(b)) complement.push_back(b);
    }
    Int total = 0;
    for (const auto& a : X) {
        Int ia = pairing_I(t, {a}, complement);
        total += ia - exact_div(ia, t.arrow_f(a));
    }
    return total;
}

}  // namespace dtree
