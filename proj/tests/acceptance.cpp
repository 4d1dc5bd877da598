// Acceptance gate.  Four criteria, one PASS/FAIL line each:
//   1. exact reproduction of the worked examples (under one second);
//   2. every identity suite at ten thousand admitted instances, zero
//      failures, under sixty seconds per suite;
//   3. equivalence of the optimized invariants with a naive reference
//      evaluator on trees of at most eight nodes;
//   4. round-trip laws (text format on the corpus; det-zero expansion
//      against contraction on random trees).
// Exits nonzero if any criterion fails.

#include <dtree/canonical.hpp>
#include <dtree/generate.hpp>
#include <dtree/genus.hpp>
#include <dtree/invariants.hpp>
#include <dtree/rooted.hpp>
#include <dtree/simplify.hpp>
#include <dtree/split.hpp>
#include <dtree/suites.hpp>
#include <dtree/textio.hpp>
#include <dtree/tree.hpp>

#include "support/fixtures.hpp"
#include "support/naive.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace dtree;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Criterion {
    bool ok = true;

    void check(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        std::cout << "  mismatch: " << what << "\n";
    }
};

// --------------------------------------------------------------------------
// Criterion 1: worked examples, exact, under one second.

bool worked_examples() {
    Criterion c;
    auto start = std::chrono::steady_clock::now();

    {
        DecoratedTree t = fixtures::split_five();
        c.check(multiplicity(t) == -9 && F_total(t) == 5, "splitting example invariants");
        SplitOutcome out = split_at_edge(t, t.edge("B", "C"));
        c.check(out.degree == 3, "splitting degree");
        std::set<std::pair<Int, Int>> got = {
            {multiplicity(out.tree1), F_total(out.tree1)},
            {multiplicity(out.tree2), F_total(out.tree2)},
        };
        std::set<std::pair<Int, Int>> want = {{Int(0), Int(6)}, {Int(-9), Int(5)}};
        c.check(got == want, "splitting halves");
    }

    {
        DecoratedTree t = fixtures::ensplit_five();
        c.check(multiplicity(t) == -273 && F_total(t) == 5, "EN-splitting example invariants");
        EnSplitOutcome out = ensplit_at_edge(t, t.edge("R", "W"));
        c.check(out.degree == 2, "EN-splitting degree");
        c.check(out.type == 0, "EN-splitting type");
        std::set<std::pair<Int, Int>> got = {
            {multiplicity(out.tree1), F_total(out.tree1)},
            {multiplicity(out.tree2), F_total(out.tree2)},
        };
        std::set<std::pair<Int, Int>> want = {{Int(-29), Int(3)}, {Int(-244), Int(6)}};
        c.check(got == want, "EN-splitting halves");
    }

    const std::vector<std::string> chain_X1 = {"al2", "al3", "al4", "al5"};
    const std::vector<std::string> chain_X2 = {"al1", "al6"};

    {
        DecoratedTree t = fixtures::genus_chain();
        RootedTree rt = make_rooted(t, "v0");
        c.check(multiplicity(t) == -4 && F_total(t) == 6, "genus chain invariants");
        DecoratedTree t1 = subtree_TX(rt, chain_X1).tree;
        DecoratedTree t2 = subtree_TX(rt, chain_X2).tree;
        c.check(multiplicity(t1) == -2 && F_total(t1) == 4, "genus chain first block");
        c.check(multiplicity(t2) == -2 && F_total(t2) == 2, "genus chain second block");
        Int cross = pairing_I(t, chain_X1, chain_X2);
        c.check(cross == 0, "genus chain pairing");
        Int g = genus_delta(t).g, g1 = genus_delta(t1).g, g2 = genus_delta(t2).g;
        c.check(g == 0 && g1 == 0 && g2 == 1, "genus chain ledger values");
        c.check(g - 1 == (g1 - 1) + (g2 - 1) + cross, "genus chain ledger balance");
    }

    {
        DecoratedTree t = fixtures::genus_chain_doubled();
        RootedTree rt = make_rooted(t, "v0");
        c.check(multiplicity(t) == -6 && F_total(t) == 8, "doubled chain invariants");
        c.check(correction_G(rt, chain_X1) == 0 && correction_G(rt, chain_X2) == 0,
                "doubled chain genus corrections");
        DecoratedTree t1 = subtree_TX(rt, chain_X1).tree;
        DecoratedTree t2 = subtree_TX(rt, chain_X2).tree;
        Int cross = pairing_I(t, chain_X1, chain_X2);
        c.check(genus_delta(t).g - 1 == (genus_delta(t1).g - 1) + (genus_delta(t2).g - 1) -
                                            (correction_G(rt, chain_X1) + correction_G(rt, chain_X2)) +
                                            cross,
                "doubled chain corrected ledger");
    }

    {
        DecoratedTree t = fixtures::delta_six();
        RootedTree rt = make_rooted(t, "v0");
        c.check(genus_delta(t).delta == 139, "defect example invariant");
        const std::vector<std::string> X1 = {"a1", "a2"};
        const std::vector<std::string> X2 = {"a3", "a4"};
        DecoratedTree t1 = subtree_TX(rt, X1).tree;
        DecoratedTree t2 = subtree_TX(rt, X2).tree;
        c.check(genus_delta(t1).delta == 36, "defect first block");
        c.check(genus_delta(t2).delta == 27, "defect second block");
        Int cross = pairing_I(t, X1, X2);
        c.check(cross == 120, "defect pairing");
        c.check(correction_D(rt, X1) == 24 && correction_D(rt, X2) == 20, "defect corrections");
        c.check(genus_delta(t).delta ==
                    genus_delta(t1).delta + genus_delta(t2).delta -
                        (correction_D(rt, X1) + correction_D(rt, X2)) + cross,
                "defect corrected ledger");
    }

    double secs = seconds_since(start);
    std::cout << "  worked examples: " << secs << " s\n";
    c.check(secs < 1.0, "worked examples exceed one second");
    return c.ok;
}

// --------------------------------------------------------------------------
// Criterion 2: every suite at 10^4 admitted instances.

bool suites_at_scale() {
    bool ok = true;
    for (const auto& name : suite_names()) {
        GenParams p;
        p.seed = 20260822;
        auto start = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(name, p, 10'000);
        double secs = seconds_since(start);
        bool this_ok = rep.failures == 0 && secs < 60.0;
        std::cout << "  suite " << name << ": " << rep.count << " instances, " << rep.failures
                  << " failures, " << secs << " s\n";
        if (rep.failures != 0) {
            std::cout << "    note: " << rep.note << "\n";
            std::istringstream lines(rep.first_counterexample);
            for (std::string line; std::getline(lines, line);) {
                std::cout << "    | " << line << "\n";
            }
        }
        ok = ok && this_ok;
    }
    return ok;
}

// --------------------------------------------------------------------------
// Criterion 3: naive-oracle equivalence on trees of at most eight nodes.

bool oracle_equivalence() {
    Criterion c;
    std::size_t trees = 0;
    auto compare = [&](const DecoratedTree& t, const std::string& label) {
        ++trees;
        for (const auto& x : t.count_support()) {
            c.check(naive::multiplicity_node(t, x) == multiplicity_node(t, x),
                    label + ": count at '" + x + "'");
        }
        c.check(naive::multiplicity(t) == multiplicity(t), label + ": global count");
        c.check(naive::F_total(t) == F_total(t), label + ": flag sum");
        for (const auto& e : t.edges()) {
            c.check(naive::det_edge(t, e) == det_edge(t, e),
                    label + ": determinant of " + e.label());
        }
    };

    for (const auto& [name, t] : fixtures::all()) {
        if (t.node_count() <= 8) compare(t, name);
    }
    for (std::uint64_t s = 0; s < 3000; ++s) {
        GenParams p;
        p.seed = s;
        p.max_nodes = 8;
        compare(random_tree(p).tree, "seed " + std::to_string(s));
    }
    for (std::uint64_t s = 0; s < 1000; ++s) {
        GenParams p;
        p.seed = s;
        p.max_nodes = 8;
        p.require_rooted = true;
        compare(random_tree(p).tree, "rooted seed " + std::to_string(s));
    }
    std::cout << "  oracle equivalence: " << trees << " trees compared\n";
    return c.ok;
}

// --------------------------------------------------------------------------
// Criterion 4: round-trip laws.

bool round_trips() {
    Criterion c;
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(DTREE_CORPUS_DIR)) {
        if (entry.path().extension() != ".dtree") continue;
        ++files;
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        ParseResult a = parse(buf.str());
        std::string once = serialize(a.tree, a.root);
        ParseResult b = parse(once);
        c.check(identically_equal(a.tree, b.tree) && a.root == b.root &&
                    serialize(b.tree, b.root) == once,
                "text round-trip for " + entry.path().filename().string());
    }
    c.check(files >= 7, "corpus holds every example tree");

    std::size_t expansions = 0;
    for (std::uint64_t s = 0; s < 1500; ++s) {
        GenParams p;
        p.seed = s + 5'000'000;
        Generated g = random_tree(p);
        detail::Rng rng(detail::mix64(p.seed ^ 0x0edbull));
        auto vs = g.tree.vertices();
        const std::string& v = vs[static_cast<std::size_t>(
            rng.pick(0, static_cast<long>(vs.size()) - 1))];
        TwoPrepartition parts;
        for (const auto& e : g.tree.incident_edges(v)) {
            (rng.chance(1, 2) ? parts.part1 : parts.part2).push_back(e);
        }
        EdzResult r = edz(g.tree, v, parts);
        DecoratedTree back = contract_det_zero(r.tree, r.created);
        c.check(structurally_equal(back, g.tree), "expansion round-trip at seed " + std::to_string(s));
        ++expansions;
    }
    std::cout << "  round-trips: " << files << " corpus files, " << expansions << " expansions\n";
    return c.ok;
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        bool (*run)();
    };
    const Entry entries[] = {
        {"worked-example reproduction", worked_examples},
        {"property suites at ten thousand instances", suites_at_scale},
        {"naive-oracle equivalence", oracle_equivalence},
        {"round-trip laws", round_trips},
    };
    bool all_ok = true;
    int i = 0;
    for (const auto& entry : entries) {
        ++i;
        bool ok = false;
        try {
            ok = entry.run();
        } catch (const std::exception& e) {
            std::cout << "  exception: " << e.what() << "\n";
        }
        std::cout << (ok ? "PASS" : "FAIL") << ": criterion " << i << " (" << entry.label << ")\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
