// Local simplification moves.  Each move preserves both the total count M
// and the arrow invariant F:
//
//   (a) delete_dead_end_1:       drop a zero-arrow whose edge is decorated 1
//                                near its vertex;
//   (b) delete_pending_vertex_1: drop a valency-1 vertex whose edge is
//                                decorated 1 near the surviving vertex;
//   (c) smooth_valency2:         replace a valency-2 vertex by a single edge
//                                keeping the two outer decorations;
//   (d) contract_det_zero:       merge the endpoints of an edge whose
//                                decorations equal the opposite cofactors
//                                (which forces det = 0).
//
// normalize applies the moves to exhaustion with rule priority a, b, c, d
// and a canonical scan order, so its output is deterministic and the map is
// idempotent.  The rewriting system is not confluent — other application
// orders can reach differently-shaped trees — but any normal form has the
// same M and F as the input.

#pragma once

#include <dtree/invariants.hpp>
#include <dtree/tree.hpp>

#include <string>
#include <vector>

namespace dtree {

// (a) alpha must be a zero-arrow attached to a vertex by an edge decorated 1
// near the vertex.
inline DecoratedTree delete_dead_end_1(const DecoratedTree& t, const std::string& alpha) {
    if (!t.is_arrow(alpha) || t.arrow_f(alpha) != 0) {
        throw std::invalid_argument("'" + alpha + "' is not a zero-arrow");
    }
    if (t.valency(alpha) != 1) {
        throw std::invalid_argument("'" + alpha + "' is not attached");
    }
    Edge e = t.incident_edges(alpha).at(0);
    const std::string& v = e.other(alpha);
    if (!t.is_vertex(v)) {
        throw std::invalid_argument("dead-end deletion needs a vertex at the other end of " +
                                    e.label());
    }
    if (t.q(e, v) != 1) {
        throw std::invalid_argument("dead-end deletion needs decoration 1 near '" + v +
                                    "' on " + e.label());
    }
    TreeBuilder b(t);
    b.remove_node(alpha);
    return b.build();
}

// (b) pending must be a valency-1 vertex joined to another vertex by an edge
// decorated 1 near the survivor.
inline DecoratedTree delete_pending_vertex_1(const DecoratedTree& t,
                                             const std::string& pending) {
    if (!t.is_vertex(pending) || t.valency(pending) != 1) {
        throw std::invalid_argument("'" + pending + "' is not a valency-1 vertex");
    }
    Edge e = t.incident_edges(pending).at(0);
    const std::string& v = e.other(pending);
    if (!t.is_vertex(v)) {
        throw std::invalid_argument("pending-vertex deletion needs a vertex at the other end of " +
                                    e.label());
    }
    if (t.q(e, v) != 1) {
        throw std::invalid_argument("pending-vertex deletion needs decoration 1 near '" +
                                    v + "' on " + e.label());
    }
    TreeBuilder b(t);
    b.remove_node(pending);
    return b.build();
}

// (c) v must be a valency-2 vertex; its two edges fuse into one that keeps
// the decorations near the two outer nodes.
inline DecoratedTree smooth_valency2(const DecoratedTree& t, const std::string& v) {
    if (!t.is_vertex(v) || t.valency(v) != 2) {
        throw std::invalid_argument("'" + v + "' is not a valency-2 vertex");
    }
    auto inc = t.incident_edges(v);
    const std::string& u1 = inc[0].other(v);
    const std::string& u2 = inc[1].other(v);
    Int q1 = t.q(inc[0], u1);
    Int q2 = t.q(inc[1], u2);
    TreeBuilder b(t);
    b.remove_node(v);
    b.add_edge(u1, u2, q1, q2);
    return b.build();
}

// (d) e must join two vertices whose decorations match the opposite
// cofactors: q(e,v1) = Q(e,v2) and q(e,v2) = Q(e,v1).  The merged vertex
// takes the lexicographically smaller id; all outer edges keep their
// decorations.
inline DecoratedTree contract_det_zero(const DecoratedTree& t, const Edge& e) {
    const std::string& v1 = e.a;
    const std::string& v2 = e.b;
    if (!t.is_vertex(v1) || !t.is_vertex(v2)) {
        throw std::invalid_argument("contraction needs two vertices on " + e.label());
    }
    if (!(t.q(e, v1) == Q(t, e, v2) && t.q(e, v2) == Q(t, e, v1))) {
        if (det_edge(t, e) == 0) {
            throw std::invalid_argument(
                "edge " + e.label() +
                " has det = 0 but the wrong orientation: decorations are the "
                "negated cofactors, so no contraction applies");
        }
        throw std::invalid_argument("edge " + e.label() +
                                    " has nonzero det; contraction needs det = 0");
    }

    TreeBuilder b(t);
    // Collect the outer attachments before removing anything.
    struct Outer {
        std::string x;
        Int q_x, q_v;
    };
    std::vector<Outer> outer;
    for (const std::string* side : {&v1, &v2}) {
        for (const auto& d : t.incident_edges(*side)) {
            if (d == e) continue;
            const std::string& x = d.other(*side);
            outer.push_back({x, t.q(d, x), t.q(d, *side)});
        }
    }
    b.remove_node(v1);
    b.remove_node(v2);
    b.add_vertex(v1);  // v1 < v2 by Edge normalization
    for (const auto& o : outer) b.add_edge(o.x, v1, o.q_x, o.q_v);
    return b.build();
}

// ---------------------------------------------------------------------------
// Exhaustive simplification.

namespace detail {

// Apply the highest-priority applicable move at the canonically first
// position; report what was done.
inline bool normalize_step(const DecoratedTree& t, DecoratedTree& out, std::string* note) {
    for (const auto& alpha : t.zero_arrows()) {
        if (t.valency(alpha) != 1) continue;
        Edge e = t.incident_edges(alpha).at(0);
        const std::string& v = e.other(alpha);
        if (t.is_vertex(v) && t.q(e, v) == 1) {
            out = delete_dead_end_1(t, alpha);
            if (note) *note = "deleted dead end '" + alpha + "'";
            return true;
        }
    }
    for (const auto& pending : t.vertices()) {
        if (t.valency(pending) != 1) continue;
        Edge e = t.incident_edges(pending).at(0);
        const std::string& v = e.other(pending);
        if (t.is_vertex(v) && t.q(e, v) == 1) {
            out = delete_pending_vertex_1(t, pending);
            if (note) *note = "deleted pending vertex '" + pending + "'";
            return true;
        }
    }
    for (const auto& v : t.vertices()) {
        if (t.valency(v) == 2) {
            out = smooth_valency2(t, v);
            if (note) *note = "smoothed valency-2 vertex '" + v + "'";
            return true;
        }
    }
    for (const auto& e : t.edges()) {
        if (!t.is_vertex(e.a) || !t.is_vertex(e.b)) continue;
        if (t.q(e, e.a) == Q(t, e, e.b) && t.q(e, e.b) == Q(t, e, e.a)) {
            out = contract_det_zero(t, e);
            if (note) *note = "contracted edge " + e.label();
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Apply the four moves to exhaustion (priority a, b, c, d; canonical scan).
// Each move strictly shrinks the tree, so this terminates; the result has
// the same M and F as the input.  Pass a trace to record the moves applied.
inline DecoratedTree normalize(const DecoratedTree& t,
                               std::vector<std::string>* trace = nullptr) {
    DecoratedTree cur = t;
    DecoratedTree next;
    std::string note;
    while (detail::normalize_step(cur, next, trace ? &note : nullptr)) {
        cur = std::move(next);
        if (trace) trace->push_back(note);
    }
    return cur;
}

}  // namespace dtree
