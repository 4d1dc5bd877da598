// Randomized identity suites: each suite generates trees satisfying the
// hypotheses of one family of library identities and checks every equation
// exactly.  run_suite(name, params, count) draws deterministic instances
// from the generator (filtering to the hypotheses, so `count` counts only
// admitted instances), evaluates the suite's checks on each, and reports the
// number of failures.  The first failing instance is shrunk — branch pruning
// and single simplification moves, kept while the failure persists — and the
// smallest reproducer is serialized into the report.
//
// Reports render as stable "key: value" lines (suite, seed, count, failures,
// then note and the serialized counterexample when something failed), so
// they are equally readable by humans and scripts.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <dtree/canonical.hpp>
#include <dtree/generate.hpp>
#include <dtree/genus.hpp>
#include <dtree/invariants.hpp>
#include <dtree/rooted.hpp>
#include <dtree/simplify.hpp>
#include <dtree/split.hpp>
#include <dtree/textio.hpp>
#include <dtree/tree.hpp>

namespace dtree {

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t count = 0;     // admitted instances actually checked
    std::size_t failures = 0;  // instances with at least one failed equation
    std::string note;          // first failure, human-readable
    std::string first_counterexample;  // shrunk reproducer, serialized
};

inline std::string to_text(const SuiteReport& r) {
    std::ostringstream out;
    out << "suite: " << r.suite << '\n'
        << "seed: " << r.seed << '\n'
        << "count: " << r.count << '\n'
        << "failures: " << r.failures << '\n';
    if (!r.note.empty()) out << "note: " << r.note << '\n';
    if (!r.first_counterexample.empty()) {
        out << "first_counterexample:\n" << r.first_counterexample;
    }
    return out.str();
}

namespace detail {

// Collects the first failed expectation; later ones only bump the flag.
struct Check {
    bool ok = true;
    std::string why;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        if (ok) why = what;
        ok = false;
    }
};

// Splitting degrees above this are skipped by the suites (the library caps
// far higher; this just keeps suite runtime flat).
inline const Int max_suite_degree = 64;

// ---------------------------------------------------------------------------
// Small shared helpers.

inline bool linear_between(const DecoratedTree& t, const std::vector<std::string>& nodes) {
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        if (t.valency(nodes[i]) != 2) return false;
    }
    return true;
}

// True when every path between members stays inside the member set.
inline bool paths_stay_inside(const DecoratedTree& t, const std::vector<std::string>& members) {
    std::set<std::string> in(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            for (const auto& x : t.path(members[i], members[j])) {
                if (in.find(x) == in.end()) return false;
            }
        }
    }
    return true;
}

// Random partition of `items` into at most 4 non-empty blocks.
inline std::vector<std::vector<std::string>> random_partition(const std::vector<std::string>& items,
                                                              Rng& rng) {
    long cap = std::min<long>(4, static_cast<long>(items.size()));
    long k = rng.pick(1, cap);
    std::vector<std::vector<std::string>> blocks(static_cast<std::size_t>(k));
    for (const auto& x : items) blocks[static_cast<std::size_t>(rng.pick(0, k - 1))].push_back(x);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const std::vector<std::string>& b) { return b.empty(); }),
                 blocks.end());
    return blocks;
}

inline std::vector<std::vector<std::string>> singleton_blocks(const std::vector<std::string>& items) {
    std::vector<std::vector<std::string>> blocks;
    for (const auto& x : items) blocks.push_back({x});
    return blocks;
}

// Sum of the arrow pairings over unordered pairs of distinct blocks.
inline Int cross_pairing(const DecoratedTree& t,
                         const std::vector<std::vector<std::string>>& blocks) {
    Int sum = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            sum += pairing_I(t, blocks[i], blocks[j]);
        }
    }
    return sum;
}

// Flip the sign of randomly chosen outward decorations with |q| >= 2.  On a
// generated rooted tree this preserves the pseudo-root property (the count
// of non-unit ends per vertex is unchanged) while usually destroying the
// all-nonnegative "strong" property, so downstream suites see genuinely
// pseudo-rooted instances, not only fully rooted ones.
inline Generated pseudo_reshape(Generated g, Rng& rng) {
    if (!g.root) return g;
    const DecoratedTree& t = g.tree;
    TreeBuilder b(t);
    bool changed = false;
    for (const auto& e : t.edges()) {
        for (const std::string* end : {&e.a, &e.b}) {
            const std::string& u = *end;
            if (!t.is_vertex(u) || u == *g.root) continue;
            const Int& q = t.q(e, u);
            if (q >= -1 && q <= 1) continue;
            auto toward = t.path(u, *g.root);
            if (Edge(u, toward[1]) == e) continue;  // keep ends that face the root
            if (rng.chance(1, 2)) {
                b.set_q(e.a, e.b, u, -q);
                changed = true;
            }
        }
    }
    if (changed) g.tree = b.build();
    return g;
}

// ---------------------------------------------------------------------------
// Per-suite checks.  Each receives an admitted instance plus a deterministic
// Rng for the suite's own sampling choices, and records failed expectations.

inline void check_parity(const Generated& g, Rng&, Check& c) {
    c.expect(is_even(multiplicity(g.tree) + F_total(g.tree)),
             "global count plus flag sum is odd");
}

inline void expect_counts_preserved(const DecoratedTree& before, const DecoratedTree& after,
                                    const std::string& rule, Check& c) {
    c.expect(validate(after).ok(), rule + " produced an invalid tree");
    c.expect(multiplicity(after) == multiplicity(before), rule + " changed the global count");
    c.expect(F_total(after) == F_total(before), rule + " changed the flag sum");
    for (const auto& x : after.count_support()) {
        if (!before.has_node(x)) continue;
        c.expect(multiplicity_node(after, x) == multiplicity_node(before, x),
                 rule + " changed the count at '" + x + "'");
    }
}

inline void check_simplify_invariance(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    for (const auto& a : t.zero_arrows()) {
        try {
            expect_counts_preserved(t, delete_dead_end_1(t, a), "dead-end deletion", c);
        } catch (const std::invalid_argument&) {
        }
    }
    for (const auto& v : t.vertices()) {
        try {
            expect_counts_preserved(t, delete_pending_vertex_1(t, v), "pending-vertex deletion", c);
        } catch (const std::invalid_argument&) {
        }
        try {
            expect_counts_preserved(t, smooth_valency2(t, v), "valency-2 smoothing", c);
        } catch (const std::invalid_argument&) {
        }
    }
    for (const auto& e : t.edges()) {
        try {
            DecoratedTree after = contract_det_zero(t, e);
            c.expect(multiplicity_node(t, e.a) == multiplicity_node(t, e.b),
                     "contractible edge ends disagree on the count");
            expect_counts_preserved(t, after, "contraction", c);
        } catch (const std::invalid_argument&) {
        }
    }
    DecoratedTree n = normalize(t);
    expect_counts_preserved(t, n, "normalization", c);
    DecoratedTree scratch;
    c.expect(!detail::normalize_step(n, scratch, nullptr),
             "normalization left an applicable move");
}

inline void check_detzero_roundtrip(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    auto vs = t.vertices();
    const std::string& v = vs[static_cast<std::size_t>(
        rng.pick(0, static_cast<long>(vs.size()) - 1))];
    TwoPrepartition parts;
    for (const auto& e : t.incident_edges(v)) {
        (rng.chance(1, 2) ? parts.part1 : parts.part2).push_back(e);
    }
    EdzResult r = edz(t, v, parts);
    c.expect(validate(r.tree).ok(), "expansion produced an invalid tree");
    c.expect(det_edge(r.tree, r.created) == 0, "created edge has nonzero determinant");
    c.expect(multiplicity(r.tree) == multiplicity(t), "expansion changed the global count");
    c.expect(F_total(r.tree) == F_total(t), "expansion changed the flag sum");
    Int nv = multiplicity_node(t, v);
    c.expect(multiplicity_node(r.tree, r.v1) == nv, "first half misses the original count");
    c.expect(multiplicity_node(r.tree, r.v2) == nv, "second half misses the original count");
    for (const auto& x : t.count_support()) {
        if (x == v) continue;
        c.expect(multiplicity_node(r.tree, x) == multiplicity_node(t, x),
                 "expansion changed the count at '" + x + "'");
    }
    DecoratedTree back = contract_det_zero(r.tree, r.created);
    c.expect(structurally_equal(back, t), "contracting the created edge does not undo it");
}

// Shared by the edge and vertex cases of the splitting suite; `host` is the
// tree actually split (for the vertex case, the expanded tree) while m and f
// are the invariants of the original instance.
inline void check_one_split(const DecoratedTree& host, const Edge& e, const Int& m, const Int& f,
                            Check& c) {
    Int p1 = branch_sum(host, e.a, e);
    Int p2 = branch_sum(host, e.b, e);
    Int d = gcd(p1, p2);
    if (d > max_suite_degree) return;
    SplitOutcome out = split_at_edge(host, e);
    c.expect(out.degree == d, "split degree disagrees with the branch gcd");
    c.expect(validate(out.tree1).ok() && validate(out.tree2).ok(),
             "split produced an invalid tree");
    c.expect(multiplicity(out.tree1) + multiplicity(out.tree2) == m,
             "split halves do not add up to the global count");
    c.expect(F_total(out.tree1) + F_total(out.tree2) == f + 2 * d,
             "split flag sums miss twice the degree");
    std::string z1 = e.a + ".z1";
    std::string z2 = e.a + ".z2";
    c.expect(out.tree1.has_node(z1) && out.tree2.has_node(z2), "cap vertices missing");
    if (host.is_vertex(e.a)) {
        c.expect(is_good_pair(out.tree1, z1, e.a).ok, "first cap is not a good pair");
    }
    if (host.is_vertex(e.b)) {
        c.expect(is_good_pair(out.tree2, z2, e.b).ok, "second cap is not a good pair");
    }
    if (d != 0 && host.is_vertex(e.a) && host.is_vertex(e.b)) {
        c.expect(det_edge(out.tree1, out.tree1.edge(e.a, z1)) ==
                     -exact_div(multiplicity_node(host, e.a), d),
                 "first cap determinant is off");
        c.expect(det_edge(out.tree2, out.tree2.edge(e.b, z2)) ==
                     -exact_div(multiplicity_node(host, e.b), d),
                 "second cap determinant is off");
    }
}

inline void check_split_identities(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    Int m = multiplicity(t);
    Int f = F_total(t);
    for (const auto& e : t.edges()) check_one_split(t, e, m, f, c);
    // One random vertex splitting, via the same det-zero expansion the
    // library uses internally (so the degree can be capped first).
    auto vs = t.vertices();
    const std::string& v = vs[static_cast<std::size_t>(
        rng.pick(0, static_cast<long>(vs.size()) - 1))];
    TwoPrepartition parts;
    for (const auto& e : t.incident_edges(v)) {
        (rng.chance(1, 2) ? parts.part1 : parts.part2).push_back(e);
    }
    EdzResult r = edz(t, v, parts);
    check_one_split(r.tree, r.created, m, f, c);
}

inline void check_split_F(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    Int f = F_total(t);
    for (const auto& e : t.edges()) {
        Int d = gcd(branch_sum(t, e.a, e), branch_sum(t, e.b, e));
        if (d > max_suite_degree) continue;
        SplitOutcome out = split_at_edge(t, e);
        c.expect(F_total(out.tree1) + F_total(out.tree2) == f + 2 * out.degree,
                 "split flag sums miss twice the degree");
    }
}

inline void check_one_ensplit(const DecoratedTree& host, const Edge& e, const Int& m, const Int& f,
                              Check& c) {
    Int p1 = branch_sum(host, e.a, e);
    Int p2 = branch_sum(host, e.b, e);
    if (gcd(p1, p2) > max_suite_degree) return;
    EnSplitOutcome out = ensplit_at_edge(host, e);
    c.expect(validate(out.tree1).ok() && validate(out.tree2).ok(),
             "EN-split produced an invalid tree");
    int zeros = (p1 == 0 ? 1 : 0) + (p2 == 0 ? 1 : 0);
    int want_type = zeros % 2 == 0 ? 0 : sign(p1 + p2);
    c.expect(out.type == want_type, "EN-split type disagrees with the vanishing pattern");
    Int m12 = multiplicity(out.tree1) + multiplicity(out.tree2);
    Int f12 = F_total(out.tree1) + F_total(out.tree2);
    c.expect(m12 == m + Int(out.type) * out.degree,
             "EN-split counts miss the type-weighted degree");
    c.expect(f12 == f + Int(2 - (out.type < 0 ? -out.type : out.type)) * out.degree,
             "EN-split flag sums miss the degree correction");
    c.expect(is_even(m + f - m12 - f12), "EN-split changed the parity");
}

inline void check_ensplit_identities(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    Int m = multiplicity(t);
    Int f = F_total(t);
    for (const auto& e : t.edges()) check_one_ensplit(t, e, m, f, c);
    auto vs = t.vertices();
    const std::string& v = vs[static_cast<std::size_t>(
        rng.pick(0, static_cast<long>(vs.size()) - 1))];
    TwoPrepartition parts;
    for (const auto& e : t.incident_edges(v)) {
        (rng.chance(1, 2) ? parts.part1 : parts.part2).push_back(e);
    }
    EdzResult r = edz(t, v, parts);
    check_one_ensplit(r.tree, r.created, m, f, c);
}

inline void check_edge_identity(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    for (const auto& e : t.edges()) {
        for (const std::string* end : {&e.a, &e.b}) {
            const std::string& x = *end;
            if (t.is_nonzero_arrow(x)) continue;
            const std::string& y = e.other(x);
            c.expect(multiplicity_node(t, x) ==
                         Q(t, e, x) * branch_sum(t, x, e) + t.q(e, x) * branch_sum(t, y, e),
                     "two-sided edge expansion misses the count at '" + x + "'");
        }
        if (t.is_dead_end(e)) {
            const std::string& a = t.is_zero_arrow(e.a) ? e.a : e.b;
            const std::string& v = e.other(a);
            c.expect(multiplicity_node(t, v) == t.q(e, v) * multiplicity_node(t, a),
                     "dead-end counts are not proportional");
        }
        // A vanishing count next to a flagged arrow forces divisibility.
        for (const std::string* end : {&e.a, &e.b}) {
            const std::string& v = *end;
            const std::string& a = e.other(v);
            if (!t.is_vertex(v) || !t.is_nonzero_arrow(a)) continue;
            if (multiplicity_node(t, v) != 0) continue;
            const Int& q = t.q(e, v);
            c.expect(q != 0 && t.arrow_f(a) % q == 0,
                     "vanishing count does not divide the adjacent flag");
        }
    }
    Int share = 0;
    for (const auto& a : t.arrows()) share += m_alpha(t, a);
    c.expect(share == multiplicity(t), "per-arrow shares do not sum to the global count");
    for (const auto& a : t.nonzero_arrows()) {
        Int fa = F_arrow(t, a);
        c.expect(fa >= 1, "flag invariant is not positive at '" + a + "'");
        const Int& flag = t.arrow_f(a);
        if (flag == 1 || flag == -1) {
            c.expect(fa == 1, "unit flag has flag invariant != 1 at '" + a + "'");
        }
    }
}

inline void check_linear_path(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    auto support = t.count_support();
    for (const auto& x : support) {
        for (const auto& y : support) {
            if (x == y) continue;
            auto nodes = t.path(x, y);
            if (!linear_between(t, nodes)) continue;
            Edge first(nodes[0], nodes[1]);
            c.expect(q_along(t, x, y) * multiplicity_node(t, y) -
                             Q_along(t, x, y, y) * multiplicity_node(t, x) ==
                         det_path(t, x, y) * branch_sum(t, x, first),
                     "linear-path determinant identity fails from '" + x + "' to '" + y + "'");
        }
    }
}

inline void check_full_subtree(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    RootedTree rt = make_rooted(t, *g.root);
    auto arrows = t.nonzero_arrows();
    c.expect(multiplicity(subtree_TX(rt, arrows).tree) == multiplicity(t),
             "full arrow-set subtree changes the global count");
    if (arrows.size() == 1) {
        c.expect(multiplicity(subtree_arrow(rt, arrows.front()).tree) == multiplicity(t),
                 "single-arrow subtree changes the global count");
    }
}

// Additivity of the count, defect, and genus over partition subtrees when
// every flagged arrow carries flag 1; includes the per-arrow share identity.
inline void check_unit_flag_additivity(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    RootedTree rt = make_rooted(t, *g.root);
    auto arrows = t.nonzero_arrows();
    Int m = multiplicity(t);
    GenusDelta gd = genus_delta(t);
    for (const auto& a : arrows) {
        c.expect(multiplicity(subtree_arrow(rt, a).tree) - m_alpha(t, a) == I_arrow(t, a),
                 "arrow share misses its pairing at '" + a + "'");
    }
    for (const auto& blocks : {singleton_blocks(arrows), random_partition(arrows, rng)}) {
        Int cross = cross_pairing(t, blocks);
        Int msum = 0, dsum = 0, gsum = 0;
        for (const auto& X : blocks) {
            DecoratedTree sub = subtree_TX(rt, X).tree;
            msum += multiplicity(sub);
            GenusDelta sgd = genus_delta(sub);
            dsum += sgd.delta;
            gsum += sgd.g - 1;
        }
        c.expect(m == msum - 2 * cross, "partition count additivity fails");
        c.expect(gd.delta == dsum + cross, "partition defect additivity fails");
        c.expect(gd.g - 1 == gsum + cross, "partition genus additivity fails");
    }
}

// The same ledger with general flags, balanced by per-block corrections.
inline void check_corrected_additivity(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    RootedTree rt = make_rooted(t, *g.root);
    auto arrows = t.nonzero_arrows();
    Int m = multiplicity(t);
    GenusDelta gd = genus_delta(t);
    auto blocks = random_partition(arrows, rng);
    Int cross = cross_pairing(t, blocks);
    Int msum = 0, dsum = 0, gsum = 0, corr_m = 0, corr_d = 0, corr_g = 0;
    for (const auto& X : blocks) {
        DecoratedTree sub = subtree_TX(rt, X).tree;
        msum += multiplicity(sub);
        GenusDelta sgd = genus_delta(sub);
        dsum += sgd.delta;
        gsum += sgd.g - 1;
        corr_m += correction_M(t, X);
        corr_d += correction_D(rt, X);
        corr_g += correction_G(rt, X);
    }
    c.expect(m == msum + corr_m - 2 * cross, "corrected count additivity fails");
    c.expect(gd.delta == dsum - corr_d + cross, "corrected defect additivity fails");
    c.expect(gd.g - 1 == gsum - corr_g + cross, "corrected genus additivity fails");
}

inline void check_central_connected(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    auto cent = central_set(t);
    c.expect(paths_stay_inside(t, cent), "central set is not path-connected");
    std::set<std::string> in(cent.begin(), cent.end());
    for (const auto& v : find_roots(t)) {
        c.expect(in.find(v) != in.end(), "a root escapes the central set");
    }
}

// Path determinants, two-sided bounds, and sign monotonicity on rooted trees
// whose vertex-vertex edges all have negative determinant and whose flags
// are nonnegative.
inline void check_negative_det_order(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    RootedTree rt = make_rooted(t, *g.root);
    auto vs = t.vertices();
    auto arrows = t.nonzero_arrows();
    auto has_arrow_beyond = [&](const std::string& w) {
        for (const auto& a : arrows) {
            if (lt(rt, w, a)) return true;
        }
        return false;
    };
    for (const auto& v : vs) {
        for (const auto& w : vs) {
            if (!lt(rt, v, w)) continue;
            c.expect(det_path(t, v, w) < 0, "comparable pair with nonnegative path determinant");
            Int nv = multiplicity_node(t, v);
            Int nw = multiplicity_node(t, w);
            bool beyond = has_arrow_beyond(w);
            if (nv < 0) c.expect(nw < 0, "negative count fails to propagate outward");
            if (nv <= 0) {
                c.expect(nw <= 0, "nonpositive count fails to propagate outward");
                if (beyond) c.expect(nw < 0, "flagged branch keeps a zero count outward");
            }
            auto nodes = t.path(v, w);
            if (!linear_between(t, nodes)) continue;
            Int qv = q_along(t, v, w);
            Int Qw = Q_along(t, v, w, w);
            c.expect(qv > 0, "inner decoration of a linear comparable pair is not positive");
            c.expect(Qw > 0, "outer product of a linear comparable pair is not positive");
            Int lhs = qv * nw - Qw * nv;
            c.expect(lhs <= 0, "linear comparable pair breaks the count bound");
            if (beyond) c.expect(lhs < 0, "flagged branch keeps the count bound slack");
        }
    }
    std::vector<std::string> nonneg, positive;
    for (const auto& v : vs) {
        Int n = multiplicity_node(t, v);
        if (n >= 0) nonneg.push_back(v);
        if (n > 0) positive.push_back(v);
    }
    c.expect(paths_stay_inside(t, nonneg), "nonnegative-count vertices are not connected");
    c.expect(paths_stay_inside(t, positive), "positive-count vertices are not connected");
}

// The closed form for outward branch sums on rooted trees with flags in
// {0,1}, plus the converse direction: bumping one flag out of {0,1} must
// break the identity somewhere.
inline void check_branch_formula(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    RootedTree rt = make_rooted(t, *g.root);
    for (const auto& [x, e] : out_pairs(rt)) {
        c.expect(branch_sum(t, x, e) == predicted_branch_sum(t, x, e),
                 "outward branch sum misses the closed form at '" + x + "'");
    }
    auto arrows = t.nonzero_arrows();
    if (!arrows.empty()) {
        const std::string& a = arrows[static_cast<std::size_t>(
            rng.pick(0, static_cast<long>(arrows.size()) - 1))];
        TreeBuilder b(t);
        b.set_arrow_f(a, rng.chance(1, 2) ? Int(2) : Int(-1));
        RootedTree bumped = make_rooted(b.build(), *g.root);
        c.expect(!branch_identity_holds(bumped),
                 "out-of-range flag fails to break the branch identity");
    }
}

// Reversal about a central node: the fixed parts stay fixed, facing
// decorations complement to the off-products next to the pivot, interior
// determinants flip sign, the decoration sums at facing ends are divisible
// by the off-products, and the operation is an involution.
inline void check_reversal(const Generated& g, Rng& rng, Check& c) {
    const DecoratedTree& t = g.tree;
    auto cent = central_set(t);
    c.expect(!cent.empty(), "central set of a rooted tree is empty");
    {
        std::set<std::string> in(cent.begin(), cent.end());
        c.expect(in.find(*g.root) != in.end(), "the root is not central");
    }
    if (cent.empty()) return;
    const std::string& eta = cent[static_cast<std::size_t>(
        rng.pick(0, static_cast<long>(cent.size()) - 1))];
    DecoratedTree r = reverse_about(t, eta);
    c.expect(r.vertices() == t.vertices() && r.arrows() == t.arrows() && r.edges() == t.edges(),
             "reversal changed the underlying tree");
    for (const auto& a : t.arrows()) {
        c.expect(r.arrow_f(a) == t.arrow_f(a), "reversal changed a flag");
    }
    bool can_flip = false;
    for (const auto& e : t.edges()) {
        for (const std::string* end : {&e.a, &e.b}) {
            const std::string& u = *end;
            bool faces_pivot = false;
            if (u != eta && t.is_vertex(u)) {
                auto toward = t.path(u, eta);
                faces_pivot = Edge(u, toward[1]) == e;
            }
            if (!faces_pivot) {
                c.expect(r.q(e, u) == t.q(e, u), "reversal moved a non-facing decoration");
                continue;
            }
            Int off = Q(t, e, u);
            if (e.has_end(eta)) {
                c.expect(r.q(e, u) == off - t.q(e, u),
                         "a pivot-adjacent end misses its complement");
            }
            Int s = t.q(e, u) + r.q(e, u);
            c.expect(off == 0 ? s == 0 : s % off == 0,
                     "off-product fails to divide the decoration sum at '" + u + "'");
        }
        if (t.is_vertex(e.a) && t.is_vertex(e.b) && !e.has_end(eta)) {
            c.expect(det_edge(r, e) == -det_edge(t, e),
                     "an interior determinant kept its sign");
            if (det_edge(t, e) != 0) can_flip = true;
        }
    }
    c.expect(identically_equal(reverse_about(r, eta), t), "double reversal is not the identity");
    if (can_flip) {
        c.expect(!identically_equal(r, t), "reversal fixed a tree with a flippable edge");
    }
}

// Cutting the root off: each non-root node lands in exactly one piece, its
// counts in the tree and in its piece complement to the outward product
// times the degree, and each added arrow carries its branch degree.
inline void check_decomposition_counts(const Generated& g, Rng&, Check& c) {
    const DecoratedTree& t = g.tree;
    RootedTree rt = make_rooted(t, *g.root);
    auto pieces = root_decompose(rt);
    Int d = degree(rt);
    for (const auto& x : t.count_support()) {
        if (x == *g.root) continue;
        int owners = 0;
        const RootPiece* owner = nullptr;
        for (const auto& piece : pieces) {
            if (piece.tree.has_node(x)) {
                ++owners;
                owner = &piece;
            }
        }
        c.expect(owners == 1, "node '" + x + "' is not in exactly one piece");
        if (owners != 1) continue;
        c.expect(multiplicity_node(t, x) + multiplicity_node(owner->tree, x) ==
                     path_product(t, *g.root, x) * d,
                 "piece count fails to complement at '" + x + "'");
    }
    for (const auto& piece : pieces) {
        c.expect(multiplicity_node(piece.tree, piece.arrow) ==
                     branch_sum(t, *g.root, t.edge(*g.root, piece.attach)),
                 "added arrow misses its branch degree");
    }
}

inline void check_genus_formula(const Generated& g, Rng&, Check& c) {
    RootedTree rt = make_rooted(g.tree, *g.root);
    c.expect(genus_via_decomposition(rt) == genus_delta(g.tree).g,
             "decomposition genus disagrees with the direct genus");
}

// ---------------------------------------------------------------------------
// Suite table.

struct SuiteDef {
    void (*shape)(GenParams&) = nullptr;
    Generated (*reshape)(Generated, Rng&) = nullptr;
    bool (*admits)(const Generated&) = nullptr;
    void (*check)(const Generated&, Rng&, Check&) = nullptr;
};

inline void shape_rooted(GenParams& p) { p.require_rooted = true; }

inline void shape_rooted_unit_flags(GenParams& p) {
    p.require_rooted = true;
    p.arrow_decoration_set = {Int(0), Int(1)};
}

inline void shape_negative_dets(GenParams& p) {
    p.require_rooted = true;
    p.require_negative_determinants = true;
    p.force_f_nonnegative = true;
}

inline bool admits_flagged_pseudo(const Generated& g) {
    return g.root && classify_vertex(g.tree, *g.root) != RootClass::Neither &&
           !g.tree.nonzero_arrows().empty();
}

inline bool admits_rooted(const Generated& g) {
    return g.root && classify_vertex(g.tree, *g.root) != RootClass::Neither;
}

inline bool admits_branching_root(const Generated& g) {
    return g.root && g.tree.node_count() >= 2 &&
           classify_vertex(g.tree, *g.root) == RootClass::Root;
}

inline bool admits_branching_unit_root(const Generated& g) {
    return admits_branching_root(g) && arrows_flagged_zero_or_one(g.tree);
}

inline const std::vector<std::pair<std::string, SuiteDef>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteDef>> table = {
        {"parity", {nullptr, nullptr, nullptr, check_parity}},
        {"simplify-invariance", {nullptr, nullptr, nullptr, check_simplify_invariance}},
        {"detzero-roundtrip", {nullptr, nullptr, nullptr, check_detzero_roundtrip}},
        {"split-identities", {nullptr, nullptr, nullptr, check_split_identities}},
        {"ensplit-identities", {nullptr, nullptr, nullptr, check_ensplit_identities}},
        {"edge-identity", {nullptr, nullptr, nullptr, check_edge_identity}},
        {"linear-path", {nullptr, nullptr, nullptr, check_linear_path}},
        {"full-subtree-M",
         {shape_rooted, pseudo_reshape, admits_flagged_pseudo, check_full_subtree}},
        {"unit-flag-additivity",
         {shape_rooted_unit_flags, pseudo_reshape, admits_flagged_pseudo,
          check_unit_flag_additivity}},
        {"corrected-additivity",
         {shape_rooted, pseudo_reshape, admits_flagged_pseudo, check_corrected_additivity}},
        {"central-connected", {nullptr, nullptr, nullptr, check_central_connected}},
        {"negative-det-order",
         {shape_negative_dets, nullptr, admits_rooted, check_negative_det_order}},
        {"branch-formula",
         {shape_rooted_unit_flags, nullptr, admits_rooted, check_branch_formula}},
        {"reversal", {shape_rooted, nullptr, admits_rooted, check_reversal}},
        {"decomposition-counts",
         {shape_rooted, nullptr, admits_branching_root, check_decomposition_counts}},
        {"genus-formula",
         {shape_rooted_unit_flags, nullptr, admits_branching_unit_root, check_genus_formula}},
        {"split-F", {nullptr, nullptr, nullptr, check_split_F}},
    };
    return table;
}

inline const SuiteDef& suite_def(const std::string& name) {
    for (const auto& [n, def] : suite_table()) {
        if (n == name) return def;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [n, def] : detail::suite_table()) names.push_back(n);
    return names;
}

// Runs one suite on `count` admitted instances derived deterministically
// from params.seed.  Instances that do not meet the suite's hypotheses are
// regenerated without being counted.  All of the suite's expectations are
// evaluated exactly; an exception from a check counts as a failure of that
// instance.
inline SuiteReport run_suite(const std::string& name, const GenParams& params,
                             std::size_t count) {
    const detail::SuiteDef& def = detail::suite_def(name);
    GenParams shaped = params;
    if (def.shape) def.shape(shaped);

    SuiteReport report;
    report.suite = name;
    report.seed = params.seed;

    std::size_t attempts = 0;
    const std::size_t max_attempts = 50 * count + 100;
    for (std::uint64_t k = 0; report.count < count; ++k) {
        if (++attempts > max_attempts) {
            throw std::runtime_error("suite '" + name +
                                     "': generator cannot reach the requested count");
        }
        GenParams pi = shaped;
        pi.seed = detail::mix64(params.seed ^ detail::mix64(0x9e3779b97f4a7c15ULL + k));
        Generated g = random_tree(pi);
        if (def.reshape) {
            detail::Rng reshape_rng(detail::mix64(pi.seed ^ 0x7265736861706521ULL));
            g = def.reshape(std::move(g), reshape_rng);
        }
        if (def.admits && !def.admits(g)) continue;
        ++report.count;

        const std::uint64_t check_seed = detail::mix64(pi.seed ^ 0x636865636b212121ULL);
        auto evaluate = [&](const Generated& inst) -> std::string {
            detail::Rng rng(check_seed);
            detail::Check c;
            try {
                def.check(inst, rng, c);
            } catch (const std::exception& ex) {
                return std::string("unexpected error: ") + ex.what();
            }
            return c.ok ? std::string() : c.why;
        };
        std::string why = evaluate(g);
        if (why.empty()) continue;

        ++report.failures;
        if (report.first_counterexample.empty()) {
            Generated small = shrink(std::move(g), [&](const Generated& cand) {
                if (def.admits && !def.admits(cand)) return false;
                return !evaluate(cand).empty();
            });
            report.note = evaluate(small);
            report.first_counterexample = serialize(small.tree, small.root);
        }
    }
    return report;
}

}  // namespace dtree
