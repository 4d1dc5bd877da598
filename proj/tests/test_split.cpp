// Tests for det-zero edge creation, good pairs, splitting and EN-splitting.

#include <catch2/catch_amalgamated.hpp>

#include <dtree/canonical.hpp>
#include <dtree/invariants.hpp>
#include <dtree/simplify.hpp>
#include <dtree/split.hpp>

#include "support/fixtures.hpp"

using namespace dtree;

TEST_CASE("edz replaces a vertex by a det-zero edge") {
    auto t = fixtures::delta_six();
    auto p = prepartition_by_neighbors(t, "R", {"W"});
    auto r = edz(t, "R", p);

    SECTION("shape and decorations") {
        CHECK(r.v1 == "R.z1");
        CHECK(r.v2 == "R.z2");
        REQUIRE(r.tree.has_edge("R.z1", "R.z2"));
        // a1 = q({R,W},R) = 2 goes near v2; a2 = 3*1*1 goes near v1.
        CHECK(r.tree.q(r.created, "R.z1") == 3);
        CHECK(r.tree.q(r.created, "R.z2") == 2);
        CHECK(r.tree.q("R.z1", "W", "R.z1") == 2);
        CHECK(r.tree.q("R.z1", "W", "W") == 5);
        CHECK(r.tree.q("R.z2", "v0", "R.z2") == 3);
        CHECK(validate(r.tree).ok());
        CHECK(det_edge(r.tree, r.created) == 0);
    }

    SECTION("M, F and every count are preserved") {
        CHECK(multiplicity(r.tree) == multiplicity(t));
        CHECK(F_total(r.tree) == F_total(t));
        Int nv = multiplicity_node(t, "R");
        CHECK(multiplicity_node(r.tree, "R.z1") == nv);
        CHECK(multiplicity_node(r.tree, "R.z2") == nv);
        for (const auto& w : t.count_support()) {
            if (w == "R") continue;
            CHECK(multiplicity_node(r.tree, w) == multiplicity_node(t, w));
        }
    }

    SECTION("contracting the created edge restores the tree up to renaming") {
        auto back = contract_det_zero(r.tree, r.created);
        CHECK(structurally_equal(back, t));
        CHECK_FALSE(identically_equal(back, t));  // R is now named R.z1
    }

    SECTION("empty part gives a unit decoration") {
        auto r0 = edz(t, "W", prepartition_by_neighbors(t, "W", {}));
        // part1 empty: a1 = 1 sits near v2.
        CHECK(r0.tree.q(r0.created, "W.z2") == 1);
        CHECK(validate(r0.tree).ok());
        CHECK(multiplicity(r0.tree) == multiplicity(t));
        auto back = contract_det_zero(r0.tree, r0.created);
        CHECK(structurally_equal(back, t));
    }

    SECTION("non-prepartitions are rejected") {
        CHECK_THROWS_WITH(edz(t, "R", TwoPrepartition{{t.edge("R", "W")}, {}}),
                          Catch::Matchers::ContainsSubstring("do not cover"));
        TwoPrepartition twice{{t.edge("R", "W")},
                              {t.edge("R", "W"), t.edge("R", "S"), t.edge("R", "T"),
                               t.edge("v0", "R")}};
        CHECK_THROWS_WITH(edz(t, "R", twice),
                          Catch::Matchers::ContainsSubstring("appears twice"));
        TwoPrepartition stranger{{t.edge("P", "v0")},
                                 {t.edge("R", "W"), t.edge("R", "S"), t.edge("R", "T"),
                                  t.edge("v0", "R")}};
        CHECK_THROWS_WITH(edz(t, "R", stranger),
                          Catch::Matchers::ContainsSubstring("not incident"));
        CHECK_THROWS(edz(t, "p0", prepartition_by_neighbors(t, "P", {})));
        CHECK_THROWS_WITH(prepartition_by_neighbors(t, "R", {"P"}),
                          Catch::Matchers::ContainsSubstring("not adjacent"));
    }
}

TEST_CASE("good pairs") {
    SECTION("direct construction, including the degenerate d=0 case") {
        TreeBuilder b;
        b.add_vertex("z");
        b.add_vertex("v");
        b.add_arrow("a0", 0);
        b.add_edge("z", "v", 4, 9);
        b.add_edge("z", "a0", 7, 1);
        auto t = b.build();
        auto r = is_good_pair(t, "z", "v");
        CHECK(r.ok);
        CHECK(r.alpha0 == "a0");
        CHECK(r.reasons.empty());
    }

    SECTION("failures carry clause-by-clause reasons") {
        auto t = fixtures::two_vertex();
        auto r = is_good_pair(t, "v", "u");
        REQUIRE_FALSE(r.ok);
        // v has the zero-arrow a0 and the unit arrow a1, so only the balance
        // condition fails.
        REQUIRE(r.reasons.size() == 1);
        CHECK(r.reasons[0].find("(iv)") != std::string::npos);

        auto r2 = is_good_pair(t, "u", "v");
        REQUIRE_FALSE(r2.ok);
        CHECK(r2.reasons[0].find("(ii)") != std::string::npos);

        CHECK_FALSE(is_good_pair(t, "a0", "v").ok);   // z must be a vertex
        CHECK_FALSE(is_good_pair(t, "u", "a1").ok);   // not an edge
        CHECK_FALSE(is_good_pair(t, "u", "ghost").ok);
    }

    SECTION("non-unit neighbor arrows violate clause (iii)") {
        auto t = fixtures::ensplit_five();
        auto r = is_good_pair(t, "S", "R");  // S carries s0 (0) and s2 (2)
        REQUIRE_FALSE(r.ok);
        bool found = false;
        for (const auto& m : r.reasons) found = found || m.find("(iii)") != std::string::npos;
        CHECK(found);
    }
}

TEST_CASE("splitting at an edge: worked five-vertex example") {
    auto t = fixtures::split_five();
    auto out = split_at_edge(t, t.edge("B", "C"));

    CHECK(out.degree == 3);
    CHECK(out.provenance == "edge {B,C}");

    SECTION("exact gadget on the B side") {
        const auto& t1 = out.tree1;
        REQUIRE(t1.has_node("B.z1"));
        REQUIRE(t1.has_edge("B", "B.z1"));
        CHECK(t1.q("B", "B.z1", "B") == 1);       // q(e,B)
        CHECK(t1.q("B", "B.z1", "B.z1") == -1);   // x1 = -a2
        CHECK(t1.q("B.z1", "B.a1.0", "B.z1") == 1);  // a1 = p1/d
        CHECK(t1.is_zero_arrow("B.a1.0"));
        CHECK(t1.is_nonzero_arrow("B.a1.1"));
        CHECK(t1.is_nonzero_arrow("B.a1.3"));
        CHECK_FALSE(t1.has_node("B.a1.4"));
        CHECK(t1.has_node("A"));
        CHECK_FALSE(t1.has_node("C"));
    }

    SECTION("book-keeping identities") {
        CHECK(multiplicity(out.tree1) == 0);
        CHECK(F_total(out.tree1) == 6);
        CHECK(multiplicity(out.tree2) == -9);
        CHECK(F_total(out.tree2) == 5);
        CHECK(validate(out.tree1).ok());
        CHECK(validate(out.tree2).ok());
    }

    SECTION("good pairs and the determinant formula") {
        CHECK(is_good_pair(out.tree1, "B.z1", "B").ok);
        CHECK(is_good_pair(out.tree2, "B.z2", "C").ok);
        // det{v_i, z_i} = -N(v_i)/d with N computed upstream.
        CHECK(det_edge(out.tree1, out.tree1.edge("B", "B.z1")) == -2);  // -6/3
        CHECK(det_edge(out.tree2, out.tree2.edge("C", "B.z2")) == -3);  // -9/3
    }
}

TEST_CASE("splitting at a dead end") {
    // two_vertex: e = {a0,v} has a = q(e,v) = 2 and N_v = 6, so the
    // zero-arrow side gets M = N_v/a = 3 and F = |N_v/a| = 3.
    auto t = fixtures::two_vertex();
    Edge e = t.edge("v", "a0");
    REQUIRE(t.is_dead_end(e));
    auto out = split_at_edge(t, e);
    CHECK(out.degree == 3);

    // tree1 holds the smaller endpoint a0: the arrow side.
    CHECK(out.tree1.has_node("a0"));
    CHECK(multiplicity(out.tree1) == 3);
    CHECK(F_total(out.tree1) == 3);
    CHECK(multiplicity(out.tree2) == -4);  // M - N_v/a
    CHECK(F_total(out.tree2) == 4);        // F + d
    CHECK(validate(out.tree1).ok());
    CHECK(validate(out.tree2).ok());

    // Good pairs against an arrow partner.
    CHECK(is_good_pair(out.tree1, "a0.z1", "a0").ok);
    CHECK(is_good_pair(out.tree2, "a0.z2", "v").ok);
}

TEST_CASE("splitting identities hold at every edge of every fixture") {
    for (const auto& [name, t] : fixtures::all()) {
        Int m = multiplicity(t);
        Int f = F_total(t);
        for (const auto& e : t.edges()) {
            INFO("fixture " << name << ", edge " << e.label());
            auto out = split_at_edge(t, e);
            CHECK(validate(out.tree1).ok());
            CHECK(validate(out.tree2).ok());
            CHECK(multiplicity(out.tree1) + multiplicity(out.tree2) == m);
            CHECK(F_total(out.tree1) + F_total(out.tree2) == f + 2 * out.degree);
            // Advertised good pairs, with tree1 holding e.a.
            CHECK(is_good_pair(out.tree1, e.a + ".z1", e.a).ok);
            CHECK(is_good_pair(out.tree2, e.a + ".z2", e.b).ok);
            // Determinant formula for vertex-vertex edges of nonzero degree.
            if (out.degree != 0 && t.is_vertex(e.a) && t.is_vertex(e.b)) {
                CHECK(det_edge(out.tree1, out.tree1.edge(e.a, e.a + ".z1")) ==
                      -exact_div(multiplicity_node(t, e.a), out.degree));
                CHECK(det_edge(out.tree2, out.tree2.edge(e.b, e.a + ".z2")) ==
                      -exact_div(multiplicity_node(t, e.b), out.degree));
            }
        }
    }
}

TEST_CASE("splitting at a vertex goes through the det-zero edge") {
    auto t = fixtures::delta_six();
    auto p = prepartition_by_neighbors(t, "R", {"W"});
    auto out = split_at_vertex(t, "R", p);

    CHECK(out.degree == 2);
    CHECK(out.provenance == "vertex 'R'");
    CHECK(multiplicity(out.tree1) + multiplicity(out.tree2) == -273);
    CHECK(F_total(out.tree1) + F_total(out.tree2) == 5 + 2 * 2);

    // Vertex form of the determinant formula: both new edges carry -N_R/d.
    Int nr = multiplicity_node(t, "R");  // 54
    REQUIRE(nr == 54);
    CHECK(det_edge(out.tree1, out.tree1.edge("R.z1", "R.z1.z1")) == -27);
    CHECK(det_edge(out.tree2, out.tree2.edge("R.z2", "R.z1.z2")) == -27);

    for (const auto& [name, t2] : fixtures::all()) {
        for (const auto& v : t2.vertices()) {
            auto nb = t2.neighbors(v);
            std::vector<std::string> half(nb.begin(), nb.begin() + nb.size() / 2);
            INFO("fixture " << name << ", vertex " << v);
            auto o = split_at_vertex(t2, v, prepartition_by_neighbors(t2, v, half));
            CHECK(multiplicity(o.tree1) + multiplicity(o.tree2) == multiplicity(t2));
            CHECK(F_total(o.tree1) + F_total(o.tree2) == F_total(t2) + 2 * o.degree);
        }
    }
}

TEST_CASE("EN-splitting at an edge: worked example") {
    auto t = fixtures::ensplit_five();
    auto out = ensplit_at_edge(t, t.edge("R", "W"));

    CHECK(out.degree == 2);
    CHECK(out.type == 0);

    // tree1 holds R; the W side is tree2 and carries the arrow (24).
    REQUIRE(out.tree2.has_node("R.a2"));
    CHECK(out.tree2.arrow_f("R.a2") == 24);
    CHECK(out.tree2.q("W", "R.a2", "W") == 5);
    CHECK(out.tree2.q("W", "R.a2", "R.a2") == 1);
    REQUIRE(out.tree1.has_node("R.a1"));
    CHECK(out.tree1.arrow_f("R.a1") == 2);

    CHECK(multiplicity(out.tree2) == -29);
    CHECK(F_total(out.tree2) == 3);
    CHECK(multiplicity(out.tree1) == -244);
    CHECK(F_total(out.tree1) == 6);
    CHECK(validate(out.tree1).ok());
    CHECK(validate(out.tree2).ok());
}

TEST_CASE("EN-splitting identities and types") {
    SECTION("count and flag identities at every edge of every fixture") {
        for (const auto& [name, t] : fixtures::all()) {
            Int m = multiplicity(t);
            Int f = F_total(t);
            for (const auto& e : t.edges()) {
                INFO("fixture " << name << ", edge " << e.label());
                auto out = ensplit_at_edge(t, e);
                CHECK(validate(out.tree1).ok());
                CHECK(validate(out.tree2).ok());
                Int m12 = multiplicity(out.tree1) + multiplicity(out.tree2);
                Int f12 = F_total(out.tree1) + F_total(out.tree2);
                CHECK(m12 == m + out.type * out.degree);
                CHECK(f12 == f + (2 - (out.type < 0 ? -out.type : out.type)) * out.degree);
                CHECK(is_even(m + f - m12 - f12));
            }
        }
    }

    SECTION("single vanishing branch gives type +-1") {
        auto t = fixtures::two_vertex();
        // p(a0,e) = 3, p(v,e) = 0: one zero, positive sum.
        auto out = ensplit_at_edge(t, t.edge("v", "a0"));
        CHECK(out.degree == 3);
        CHECK(out.type == 1);

        // Negating the unit arrow flips the branch and the type.
        TreeBuilder b(t);
        b.set_arrow_f("a1", -1);
        auto out2 = ensplit_at_edge(b.build(), t.edge("v", "a0"));
        CHECK(out2.degree == 3);
        CHECK(out2.type == -1);
    }

    SECTION("both branches vanishing is type 0") {
        auto t = fixtures::split_five();
        // At the dead end {A,z} both branch quantities vanish.
        auto out = ensplit_at_edge(t, t.edge("A", "z"));
        CHECK(out.degree == 0);
        CHECK(out.type == 0);
    }
}

TEST_CASE("EN-splitting at a vertex with an empty part") {
    // Putting every edge of v into part1 leaves the bare vertex v.z2, which
    // receives the whole tree's count as an arrow decoration; the other side
    // reproduces the tree plus a fresh zero-arrow.
    auto t = fixtures::two_vertex();
    auto all = t.neighbors("v");
    auto out = ensplit_at_vertex(t, "v", prepartition_by_neighbors(t, "v", all));

    CHECK(out.provenance == "vertex 'v'");
    CHECK(out.degree == 6);
    CHECK(out.type == 1);

    // tree2 = bare vertex + arrow decorated N_v = 6, edge decorated a1 = 6.
    CHECK(out.tree2.node_count() == 2);
    REQUIRE(out.tree2.has_node("v.z1.a2"));
    CHECK(out.tree2.arrow_f("v.z1.a2") == 6);
    CHECK(out.tree2.q("v.z2", "v.z1.a2", "v.z2") == 6);

    // tree1 = original tree with v renamed and one extra zero-arrow.
    TreeBuilder b(t);
    b.add_arrow("extra", 0);
    b.add_edge("v", "extra", 1, 1);
    CHECK(structurally_equal(out.tree1, b.build()));

    CHECK(multiplicity(out.tree1) + multiplicity(out.tree2) ==
          multiplicity(t) + out.type * out.degree);

    for (const auto& [name, t2] : fixtures::all()) {
        for (const auto& v : t2.vertices()) {
            auto nb = t2.neighbors(v);
            std::vector<std::string> half(nb.begin(), nb.begin() + nb.size() / 2);
            INFO("fixture " << name << ", vertex " << v);
            auto o = ensplit_at_vertex(t2, v, prepartition_by_neighbors(t2, v, half));
            Int am = (o.type < 0 ? -o.type : o.type);
            CHECK(multiplicity(o.tree1) + multiplicity(o.tree2) ==
                  multiplicity(t2) + o.type * o.degree);
            CHECK(F_total(o.tree1) + F_total(o.tree2) == F_total(t2) + (2 - am) * o.degree);
        }
    }
}
