// Random decorated trees under structural constraints, plus counterexample
// shrinking.
//
// Generation is deterministic for a fixed seed.  Decorations violating the
// pairwise-coprimality requirement at a node are repaired by replacing the
// offender with the nearest coprime integer of the same sign.  Rooted
// generation plants the root with all-1 incident decorations and gives every
// other vertex at most one off-path decoration exceeding 1, so the root
// condition holds by construction.  Negative-determinant generation
// additionally hangs a zero-arrow carrying the off-path non-unit on every
// eligible vertex and caps each toward-root decoration below the opposing
// cofactor product, so every vertex-vertex edge ends up with det < 0.

#pragma once

#include <dtree/invariants.hpp>
#include <dtree/rooted.hpp>
#include <dtree/simplify.hpp>
#include <dtree/split.hpp>
#include <dtree/tree.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtree {

struct GenParams {
    std::uint64_t seed = 0;
    std::size_t max_nodes = 12;            // total vertices + arrows
    int decoration_range = 6;              // magnitudes drawn from [1, range]
    std::vector<Int> arrow_decoration_set; // empty: draw from the range
    bool require_rooted = false;
    bool require_negative_determinants = false;
    bool force_f_nonnegative = false;
};

struct Generated {
    DecoratedTree tree;
    std::optional<std::string> root;
};

namespace detail {

// splitmix64: decorrelates derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable bounded draw (uniform_int_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return state_ = mix64(state_); }

    // Uniform-ish integer in [lo, hi]; requires lo <= hi.
    long pick(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(int num, int den) { return pick(0, den - 1) < num; }

private:
    std::uint64_t state_;
};

inline bool coprime_all(const Int& x, const std::vector<Int>& taken) {
    for (const auto& y : taken) {
        if (!coprime(x, y)) return false;
    }
    return true;
}

// Nearest integer to `want` that is coprime to every taken value and keeps
// the sign of `want` (zero counts as nonnegative).  Terminates because 1 and
// -1 are coprime to everything.
inline Int nearest_coprime(const Int& want, const std::vector<Int>& taken) {
    for (Int d = 0;; ++d) {
        for (const Int& cand : {Int(want - d), Int(want + d)}) {
            bool sign_ok = want > 0 ? cand >= 1 : want < 0 ? cand <= -1 : cand >= 0;
            if (sign_ok && coprime_all(cand, taken)) return cand;
        }
    }
}

// Largest x in [1, want] coprime to b (1 always qualifies).
inline Int coprime_at_most(Int want, const Int& b) {
    for (; want > 1; --want) {
        if (coprime(want, b)) return want;
    }
    return 1;
}

inline Int pick_from(Rng& rng, const std::vector<Int>& set) {
    return set.at(static_cast<std::size_t>(rng.pick(0, static_cast<long>(set.size()) - 1)));
}

inline Int draw_arrow_flag(Rng& rng, const GenParams& p) {
    if (!p.arrow_decoration_set.empty()) {
        std::vector<Int> usable;
        for (const auto& f : p.arrow_decoration_set) {
            if (!p.force_f_nonnegative || f >= 0) usable.push_back(f);
        }
        if (usable.empty()) {
            throw std::invalid_argument(
                "arrow decoration set has no nonnegative member to draw from");
        }
        return pick_from(rng, usable);
    }
    long lo = p.force_f_nonnegative ? 0 : -p.decoration_range;
    return Int(rng.pick(lo, p.decoration_range));
}

// Unconstrained tree: random vertex skeleton, arrows attached as leaves,
// decorations drawn from the range and repaired per vertex.
inline DecoratedTree random_free_tree(Rng& rng, const GenParams& p) {
    long total = rng.pick(2, static_cast<long>(std::max<std::size_t>(p.max_nodes, 2)));
    long n_arrows = rng.pick(0, total - 1);
    long n_vertices = total - n_arrows;

    TreeBuilder b;
    std::vector<std::string> vs, as;
    for (long i = 0; i < n_vertices; ++i) {
        vs.push_back("v" + std::to_string(i));
        b.add_vertex(vs.back());
        if (i > 0) b.add_edge(vs.back(), vs[static_cast<std::size_t>(rng.pick(0, i - 1))]);
    }
    for (long i = 0; i < n_arrows; ++i) {
        as.push_back("a" + std::to_string(i));
        b.add_arrow(as.back(), draw_arrow_flag(rng, p));
        b.add_edge(as.back(), vs[static_cast<std::size_t>(rng.pick(0, n_vertices - 1))]);
    }
    DecoratedTree shape = b.build();

    // Decorate the ends near each vertex; arrow ends stay 1.
    for (const auto& v : shape.vertices()) {
        std::vector<Int> taken;
        for (const auto& e : shape.incident_edges(v)) {
            long mag = rng.pick(1, p.decoration_range);
            Int want = rng.chance(1, 12) ? Int(0)
                                         : Int(rng.chance(1, 2) ? mag : -mag);
            Int value = nearest_coprime(want, taken);
            taken.push_back(value);
            b.set_q(e.a, e.b, v, std::move(value));
        }
    }
    return b.build();
}

// Rooted tree: the root keeps all-1 incident decorations; every other vertex
// receives at most one off-path decoration >= 2 (its "carrier") with the rest
// equal to 1, and a signed toward-root decoration coprime to the carrier.
// With `negative_dets`, the carrier sits on a dedicated zero-arrow child of
// the vertex and the toward decoration c_w is capped so that every
// vertex-vertex edge {v,w} satisfies c_w * 1 - Q(e,w) * Q(e,v) < 0.
inline DecoratedTree random_rooted_tree(Rng& rng, const GenParams& p,
                                        bool negative_dets) {
    long budget = static_cast<long>(std::max<std::size_t>(p.max_nodes, 2));
    long n_vertices, n_arrows;
    if (negative_dets) {
        // Each vertex past the root carries its own zero-arrow gadget.
        n_vertices = rng.pick(2, std::max<long>(2, budget / 2));
        n_arrows = rng.pick(0, std::max<long>(0, budget - 2 * n_vertices + 1));
    } else {
        long total = rng.pick(2, budget);
        n_vertices = rng.pick(1, total);
        n_arrows = total - n_vertices;
    }

    TreeBuilder b;
    std::vector<std::string> vs{"v0"};
    std::vector<long> parent{-1};
    b.add_vertex("v0");
    for (long i = 1; i < n_vertices; ++i) {
        vs.push_back("u" + std::to_string(i));
        parent.push_back(rng.pick(0, i - 1));
        b.add_vertex(vs.back());
        b.add_edge(vs.back(), vs[static_cast<std::size_t>(parent.back())]);
    }
    std::vector<std::pair<std::string, long>> arrow_home;  // (id, vertex index)
    for (long i = 0; i < n_arrows; ++i) {
        std::string id = "a" + std::to_string(i);
        long at = rng.pick(0, n_vertices - 1);
        arrow_home.emplace_back(id, at);
        b.add_arrow(id, draw_arrow_flag(rng, p));
        b.add_edge(id, vs[static_cast<std::size_t>(at)]);
    }
    if (n_vertices == 1 && n_arrows == 0) {
        b.add_arrow("a0", draw_arrow_flag(rng, p));
        b.add_edge("a0", "v0");
    }

    // Off-path carriers.  c[i] stays at 1 for the root; b_carrier[i] is the
    // carrier value at vertex i (1 when the vertex has none).
    std::vector<Int> c(static_cast<std::size_t>(n_vertices), 1);
    std::vector<Int> carrier(static_cast<std::size_t>(n_vertices), 1);

    if (negative_dets) {
        for (long i = 1; i < n_vertices; ++i) {
            std::string gz = "z" + std::to_string(i);
            Int bw(rng.pick(2, p.decoration_range + 1));
            b.add_arrow(gz, 0);
            b.add_edge(gz, vs[static_cast<std::size_t>(i)]);
            b.set_q(gz, vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(i)], bw);
            carrier[static_cast<std::size_t>(i)] = bw;
            // Opposing cofactor product on the parent side of the toward edge.
            long par = parent[static_cast<std::size_t>(i)];
            Int opposing = c[static_cast<std::size_t>(par)] *
                           carrier[static_cast<std::size_t>(par)] * bw;
            Int hi = opposing - 1;
            if (hi > p.decoration_range) hi = p.decoration_range;
            Int want(rng.pick(1, static_cast<long>(hi)));
            Int cw = coprime_at_most(want, bw);
            c[static_cast<std::size_t>(i)] = cw;
            b.set_q(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(par)],
                    vs[static_cast<std::size_t>(i)], cw);
        }
        return b.build();
    }

    // Plain rooted generation: pick the carrier among each vertex's off-path
    // ends (child edges and arrow edges).
    DecoratedTree shape = b.build();
    for (long i = 1; i < n_vertices; ++i) {
        const std::string& w = vs[static_cast<std::size_t>(i)];
        const std::string& par = vs[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        std::vector<Edge> off;
        for (const auto& e : shape.incident_edges(w)) {
            if (!e.has_end(par)) off.push_back(e);
        }
        Int bw = 1;
        if (!off.empty() && rng.chance(2, 3)) {
            const Edge& site = off[static_cast<std::size_t>(
                rng.pick(0, static_cast<long>(off.size()) - 1))];
            bw = Int(rng.pick(2, p.decoration_range + 1));
            b.set_q(site.a, site.b, w, bw);
        }
        long mag = rng.pick(1, p.decoration_range);
        Int want(rng.chance(1, 2) ? mag : -mag);
        b.set_q(w, par, w, nearest_coprime(want, {bw}));
    }
    return b.build();
}

}  // namespace detail

// Deterministic for a fixed seed.  Throws std::runtime_error if no valid tree
// emerges within a bounded number of attempts (which indicates a bug or
// unsatisfiable parameters rather than bad luck).
inline Generated random_tree(const GenParams& p) {
    if (p.decoration_range < 1) {
        throw std::invalid_argument("decoration_range must be at least 1");
    }
    if (p.force_f_nonnegative && !p.arrow_decoration_set.empty() &&
        std::none_of(p.arrow_decoration_set.begin(), p.arrow_decoration_set.end(),
                     [](const Int& f) { return f >= 0; })) {
        throw std::invalid_argument("arrow decoration set has no nonnegative member to draw from");
    }
    detail::Rng rng(detail::mix64(p.seed ^ 0x5bf03635ca1fd5a1ULL));
    for (int attempt = 0; attempt < 32; ++attempt) {
        DecoratedTree t = p.require_rooted || p.require_negative_determinants
                              ? detail::random_rooted_tree(rng, p, p.require_negative_determinants)
                              : detail::random_free_tree(rng, p);
        if (!validate(t).ok()) continue;
        if (p.require_negative_determinants) {
            DetSign s = determinant_sign(t);
            if (s != DetSign::Negative && s != DetSign::Vacuous) continue;
        }
        if (p.require_rooted) {
            if (classify_vertex(t, "v0") != RootClass::Root) continue;
            return {std::move(t), "v0"};
        }
        return {std::move(t), std::nullopt};
    }
    throw std::runtime_error("random_tree: no valid tree within the attempt bound");
}

// ---------------------------------------------------------------------------
// Shrinking.

namespace detail {

// Structural reductions one step smaller: every cut-away branch (both sides
// of every edge), then every single simplification move.
inline std::vector<DecoratedTree> shrink_candidates(const DecoratedTree& t) {
    std::vector<DecoratedTree> out;
    for (const auto& e : t.edges()) {
        for (const std::string* keep : {&e.a, &e.b}) {
            TreeBuilder b = component_builder(t, e, *keep);
            out.push_back(b.build());
        }
    }
    auto attempt = [&](auto&& move) {
        try {
            out.push_back(move());
        } catch (const std::invalid_argument&) {
        }
    };
    for (const auto& a : t.zero_arrows()) {
        attempt([&] { return delete_dead_end_1(t, a); });
    }
    for (const auto& v : t.vertices()) {
        attempt([&] { return delete_pending_vertex_1(t, v); });
        attempt([&] { return smooth_valency2(t, v); });
    }
    for (const auto& e : t.edges()) {
        attempt([&] { return contract_det_zero(t, e); });
    }
    return out;
}

}  // namespace detail

// Greedily reduces a failing instance: keeps applying the first structural
// reduction (branch pruning or a simplification move) under which
// `still_fails` remains true.  The predicate must treat hypothesis
// violations as "not failing".
template <typename Fails>
Generated shrink(Generated g, Fails&& still_fails) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& cand : detail::shrink_candidates(g.tree)) {
            if (!validate(cand).ok()) continue;
            if (g.root &&
                (!cand.has_node(*g.root) ||
                 classify_vertex(cand, *g.root) == RootClass::Neither)) {
                continue;
            }
            Generated next{std::move(cand), g.root};
            if (still_fails(next)) {
                g = std::move(next);
                progress = true;
                break;
            }
        }
    }
    return g;
}

}  // namespace dtree
