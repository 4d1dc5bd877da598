// Hand-built trees with independently verified invariant values, used across
// the test suites.  Each builder returns a well-formed tree; the expected
// numbers live in the tests that consume them.

#pragma once

#include <dtree/tree.hpp>

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using dtree::DecoratedTree;
using dtree::TreeBuilder;

// Two vertices u, v; a unit arrow and a zero-arrow at v.
// N_u = 2, N_v = 6, N_{a0} = 3, M = -1, F = 1, det{u,v} = -8.
inline DecoratedTree two_vertex() {
    TreeBuilder b;
    b.add_vertex("u").add_vertex("v");
    b.add_arrow("a1", 1).add_arrow("a0", 0);
    b.add_edge("u", "v", -2, 3);
    b.add_edge("v", "a1", 1, 1);
    b.add_edge("v", "a0", 2, 1);
    return b.build();
}

// Five-vertex chain with a three-arrow bundle; the canonical edge-splitting
// example.  N_A = N_D = N_E = 0, N_B = 6, N_C = 9, M = -9, F = 5;
// splitting at {B,C} has degree 3 and yields parts with (M,F) = (0,6), (-9,5).
inline DecoratedTree split_five() {
    TreeBuilder b;
    for (const char* v : {"A", "B", "C", "D", "E"}) b.add_vertex(v);
    b.add_arrow("k1", 1).add_arrow("k2", 1).add_arrow("k3", 1).add_arrow("z", 0);
    b.add_arrow("d1", 1).add_arrow("dz", 0);
    b.add_arrow("e1", 1).add_arrow("ez", 0);
    b.add_edge("A", "B", -1, 1);
    b.add_edge("B", "C", 1, 1);
    b.add_edge("C", "D", 2, -4);
    b.add_edge("C", "E", 1, -7);
    for (const char* a : {"k1", "k2", "k3", "z"}) b.add_edge("A", a);
    b.add_edge("D", "d1").add_edge("D", "dz");
    b.add_edge("E", "e1").add_edge("E", "ez");
    return b.build();
}

// Five-vertex star with decorated dead ends; the canonical edge-EN-splitting
// example.  M = -273, F = 5; EN-splitting at {R,W} has branch sums
// p(W,.) = 24, p(R,.) = 2, degree 2, type 0, and yields parts with
// (M,F) = (-29,3) on the W side and (-244,6) on the other.
inline DecoratedTree ensplit_five() {
    TreeBuilder b;
    for (const char* v : {"P", "R", "W", "S", "T"}) b.add_vertex(v);
    b.add_arrow("p0", 0).add_arrow("p3", 3);
    b.add_arrow("w0", 0).add_arrow("w1", 1);
    b.add_arrow("s0", 0).add_arrow("s2", 2);
    b.add_arrow("t0", 0).add_arrow("t1", 1);
    b.add_edge("P", "R", 3, 3);
    b.add_edge("R", "W", 2, 5);
    b.add_edge("R", "S", 1, 13);
    b.add_edge("R", "T", 1, 15);
    b.add_edge("P", "p0", 2, 1).add_edge("P", "p3", 1, 1);
    b.add_edge("W", "w0", 2, 1).add_edge("W", "w1", 1, 1);
    b.add_edge("S", "s0", 2, 1).add_edge("S", "s2", 1, 1);
    b.add_edge("T", "t0", 2, 1).add_edge("T", "t1", 1, 1);
    return b.build();
}

// Nine-node pseudo-rooted tree exercising arrow-set subtrees: the subtree at
// a single arrow keeps only its root path and picks up compensating
// zero-arrows for the pruned decorations.
inline DecoratedTree subtree_nine() {
    TreeBuilder b;
    for (const char* v : {"A", "B", "C", "D", "E", "v0", "G", "H", "I"}) b.add_vertex(v);
    b.add_arrow("beta", 3);
    b.add_arrow("h0", 0);
    b.add_arrow("al", 2).add_arrow("a2", 1);
    b.add_arrow("a3", 2).add_arrow("a4", 1);
    b.add_edge("A", "B", 1, 1);
    b.add_edge("B", "C", 1, 5);
    b.add_edge("C", "D", 1, 1);
    b.add_edge("D", "E", 3, -1);
    b.add_edge("C", "v0", 2, 1);
    b.add_edge("A", "G", 2, 1);
    b.add_edge("A", "H", 1, 1);
    b.add_edge("H", "I", 7, -1);
    b.add_edge("A", "beta", 1, 1);
    b.add_edge("H", "h0", 1, 1);
    b.add_edge("D", "al", 1, 1).add_edge("D", "a2", 1, 1);
    b.add_edge("E", "a3", 1, 1).add_edge("E", "a4", 4, 1);
    return b.build();
}

// Rooted chain with a side vertex; the two-block decomposition example.
// M = -4, F = 6, root v0; blocks X1 = {al2,al3,al4,al5}, X2 = {al1,al6}
// give (M,F) = (-2,4) and (-2,2) with vanishing cross pairing.
inline DecoratedTree genus_chain() {
    TreeBuilder b;
    for (const char* v : {"u0", "u1", "v0", "u3", "u4", "u5", "w"}) b.add_vertex(v);
    b.add_arrow("z0", 0).add_arrow("al1", 1);
    b.add_arrow("al2", 1);
    b.add_arrow("al3", 1).add_arrow("al4", 1);
    b.add_arrow("z3", 0).add_arrow("z4", 0);
    b.add_arrow("al5", 1).add_arrow("al6", 1);
    b.add_edge("u0", "u1", -13, 1);
    b.add_edge("u1", "v0", -3, 1);
    b.add_edge("v0", "u3", 1, -1);
    b.add_edge("u3", "u4", 1, -7);
    b.add_edge("u4", "u5", 1, -24);
    b.add_edge("u1", "w", 2, -2);
    b.add_edge("u0", "z0", 2, 1).add_edge("u0", "al1", 1, 1);
    b.add_edge("u1", "al2", 1, 1);
    b.add_edge("w", "al3", 1, 1).add_edge("w", "al4", 1, 1);
    b.add_edge("u3", "z3", 2, 1);
    b.add_edge("u4", "z4", 3, 1);
    b.add_edge("u5", "al5", 1, 1).add_edge("u5", "al6", 1, 1);
    return b.build();
}

// Same tree with the two outer arrows doubled: M = -6, F = 8; both blocks
// have vanishing genus correction.
inline DecoratedTree genus_chain_doubled() {
    TreeBuilder b(genus_chain());
    b.set_arrow_f("al1", 2).set_arrow_f("al6", 2);
    return b.build();
}

// Six-vertex pseudo-rooted tree (the EN-splitting example with its long edge
// subdivided by the pseudo-root).  M = -273, F = 5, delta = 139; blocks
// X1 = {a1,a2}, X2 = {a3,a4} give delta 36 and 27 with cross pairing 120 and
// defect corrections 24 and 20.
inline DecoratedTree delta_six() {
    TreeBuilder b;
    for (const char* v : {"P", "v0", "R", "W", "S", "T"}) b.add_vertex(v);
    b.add_arrow("p0", 0).add_arrow("a4", 3);
    b.add_arrow("w0", 0).add_arrow("a1", 1);
    b.add_arrow("s0", 0).add_arrow("a2", 2);
    b.add_arrow("t0", 0).add_arrow("a3", 1);
    b.add_edge("P", "v0", 3, 1);
    b.add_edge("v0", "R", 1, 3);
    b.add_edge("R", "W", 2, 5);
    b.add_edge("R", "S", 1, 13);
    b.add_edge("R", "T", 1, 15);
    b.add_edge("P", "p0", 2, 1).add_edge("P", "a4", 1, 1);
    b.add_edge("W", "w0", 2, 1).add_edge("W", "a1", 1, 1);
    b.add_edge("S", "s0", 2, 1).add_edge("S", "a2", 1, 1);
    b.add_edge("T", "t0", 2, 1).add_edge("T", "a3", 1, 1);
    return b.build();
}

inline std::vector<std::pair<std::string, DecoratedTree>> all() {
    return {
        {"two-vertex", two_vertex()},
        {"split-five", split_five()},
        {"ensplit-five", ensplit_five()},
        {"subtree-nine", subtree_nine()},
        {"genus-chain", genus_chain()},
        {"genus-chain-doubled", genus_chain_doubled()},
        {"delta-six", delta_six()},
    };
}

}  // namespace fixtures
