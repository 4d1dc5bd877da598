// Command-line front end: validation, invariants, normalization, splitting,
// EN-splitting, arrow-set subtrees, root decomposition, identity suites, and
// DOT export for decorated-tree files.
//
// Exit codes: 0 success, 1 domain error (invalid input tree, impossible
// operation, failing suite), 2 usage error.

#include <CLI11.hpp>

#include <dtree/generate.hpp>
#include <dtree/genus.hpp>
#include <dtree/invariants.hpp>
#include <dtree/rooted.hpp>
#include <dtree/simplify.hpp>
#include <dtree/split.hpp>
#include <dtree/suites.hpp>
#include <dtree/textio.hpp>
#include <dtree/tree.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

// "x,y,z" -> {"x","y","z"}; empty string -> {}.
std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string default_prefix(const std::string& path) {
    const std::string ext = ".dtree";
    if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
        return path.substr(0, path.size() - ext.size());
    }
    return path;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

// Resolves --edge / --vertex --part addressing against a parsed tree.
struct SiteArgs {
    std::string edge;    // "A,B"
    std::string vertex;  // vertex id
    std::string part;    // "n1,n2;n3" neighbor lists
};

dtree::TwoPrepartition parse_parts(const dtree::DecoratedTree& t, const std::string& v,
                                   const std::string& part) {
    auto semi = part.find(';');
    if (semi == std::string::npos) {
        throw std::runtime_error("--part wants two ';'-separated neighbor lists");
    }
    dtree::TwoPrepartition parts;
    for (const auto& nb : split_list(part.substr(0, semi))) {
        parts.part1.push_back(t.edge(v, nb));
    }
    for (const auto& nb : split_list(part.substr(semi + 1))) {
        parts.part2.push_back(t.edge(v, nb));
    }
    return parts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decorated-tree toolkit"};
    app.require_subcommand(1);

    std::string file, out_path, prefix;
    bool per_node = false;
    SiteArgs site;
    std::string suite_name;
    std::uint64_t seed = 0;
    std::size_t count = 10'000;
    std::size_t max_nodes = 12;

    CLI::App* cmd_validate = app.add_subcommand("validate", "check well-formedness");
    cmd_validate->add_option("file", file)->required();

    CLI::App* cmd_inv = app.add_subcommand("invariants", "print the global invariants");
    cmd_inv->add_option("file", file)->required();
    cmd_inv->add_flag("--per-node", per_node, "also print the per-node counts");

    CLI::App* cmd_simplify = app.add_subcommand("simplify", "apply the simplification rules to a fixpoint");
    cmd_simplify->add_option("file", file)->required();
    cmd_simplify->add_option("-o,--output", out_path, "write the result here instead of stdout");

    CLI::App* cmd_split = app.add_subcommand("split", "split at an edge or vertex");
    cmd_split->add_option("file", file)->required();
    cmd_split->add_option("--edge", site.edge, "edge as 'A,B'");
    cmd_split->add_option("--vertex", site.vertex, "vertex id");
    cmd_split->add_option("--part", site.part, "two ';'-separated neighbor lists");
    cmd_split->add_option("-o,--output-prefix", prefix, "output file prefix");

    CLI::App* cmd_ensplit = app.add_subcommand("ensplit", "EN-split at an edge or vertex");
    cmd_ensplit->add_option("file", file)->required();
    cmd_ensplit->add_option("--edge", site.edge, "edge as 'A,B'");
    cmd_ensplit->add_option("--vertex", site.vertex, "vertex id");
    cmd_ensplit->add_option("--part", site.part, "two ';'-separated neighbor lists");
    cmd_ensplit->add_option("-o,--output-prefix", prefix, "output file prefix");

    CLI::App* cmd_subtree = app.add_subcommand("subtree", "arrow-set subtree of a rooted tree");
    cmd_subtree->add_option("file", file)->required();
    std::string arrows_list;
    cmd_subtree->add_option("--arrows", arrows_list, "comma-separated arrow ids")->required();
    cmd_subtree->add_option("-o,--output", out_path, "write the result here instead of stdout");

    CLI::App* cmd_decompose = app.add_subcommand("decompose", "cut a rooted tree at its root");
    cmd_decompose->add_option("file", file)->required();
    cmd_decompose->add_option("-o,--output-prefix", prefix, "output file prefix");

    CLI::App* cmd_check = app.add_subcommand("check", "run an identity suite on random trees");
    cmd_check->add_option("--suite", suite_name, "suite name")->required();
    cmd_check->add_option("--seed", seed, "base seed");
    cmd_check->add_option("--count", count, "admitted instances to check");
    cmd_check->add_option("--max-nodes", max_nodes, "size bound per generated tree");

    CLI::App* cmd_dot = app.add_subcommand("dot", "export to DOT");
    cmd_dot->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using namespace dtree;
    try {
        if (*cmd_validate) {
            ValidationReport rep = validate(parse(read_file(file)).tree);
            if (rep.ok()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& v : rep.violations) {
                std::cout << "violation: " << v.clause << " at " << v.where << ": " << v.message
                          << "\n";
            }
            return 1;
        }

        if (*cmd_inv) {
            ParseResult pr = parse(read_file(file));
            const DecoratedTree& t = pr.tree;
            GenusDelta gd = genus_delta(t);
            std::cout << "M: " << multiplicity(t) << "\n"
                      << "F: " << F_total(t) << "\n"
                      << "g: " << gd.g << "\n"
                      << "delta: " << gd.delta << "\n";
            if (pr.root) {
                RootedTree rt = make_rooted(t, *pr.root);
                std::cout << "root: " << rt.root << "\n"
                          << "root_class: "
                          << (rt.strength == RootStrength::Root ? "root" : "pseudo-root") << "\n"
                          << "deg: " << degree(rt) << "\n";
            }
            if (per_node) {
                for (const auto& x : t.count_support()) {
                    std::cout << "N[" << x << "]: " << multiplicity_node(t, x) << "\n";
                }
            }
            return 0;
        }

        if (*cmd_simplify) {
            ParseResult pr = parse(read_file(file));
            DecoratedTree n = normalize(pr.tree);
            std::optional<std::string> root;
            if (pr.root && n.has_node(*pr.root)) root = pr.root;
            emit(serialize(n, root), out_path);
            return 0;
        }

        if (*cmd_split || *cmd_ensplit) {
            bool by_edge = !site.edge.empty();
            bool by_vertex = !site.vertex.empty();
            if (by_edge == by_vertex) {
                std::cerr << "error: give exactly one of --edge or --vertex\n";
                return 2;
            }
            if (by_vertex && site.part.empty()) {
                std::cerr << "error: --vertex needs --part\n";
                return 2;
            }
            ParseResult pr = parse(read_file(file));
            const DecoratedTree& t = pr.tree;
            std::string stem = prefix.empty() ? default_prefix(file) : prefix;
            if (*cmd_split) {
                SplitOutcome out =
                    by_edge ? split_at_edge(t, [&] {
                          auto ids = split_list(site.edge);
                          if (ids.size() != 2) throw std::runtime_error("--edge wants 'A,B'");
                          return t.edge(ids[0], ids[1]);
                      }())
                            : split_at_vertex(t, site.vertex,
                                              parse_parts(t, site.vertex, site.part));
                std::string p1 = stem + ".split1.dtree";
                std::string p2 = stem + ".split2.dtree";
                write_file(p1, serialize(out.tree1));
                write_file(p2, serialize(out.tree2));
                std::cout << "degree: " << out.degree << "\n"
                          << "tree1: " << p1 << "\n"
                          << "tree2: " << p2 << "\n";
            } else {
                EnSplitOutcome out =
                    by_edge ? ensplit_at_edge(t, [&] {
                          auto ids = split_list(site.edge);
                          if (ids.size() != 2) throw std::runtime_error("--edge wants 'A,B'");
                          return t.edge(ids[0], ids[1]);
                      }())
                            : ensplit_at_vertex(t, site.vertex,
                                                parse_parts(t, site.vertex, site.part));
                std::string p1 = stem + ".en1.dtree";
                std::string p2 = stem + ".en2.dtree";
                write_file(p1, serialize(out.tree1));
                write_file(p2, serialize(out.tree2));
                std::cout << "degree: " << out.degree << "\n"
                          << "type: " << out.type << "\n"
                          << "tree1: " << p1 << "\n"
                          << "tree2: " << p2 << "\n";
            }
            return 0;
        }

        if (*cmd_subtree) {
            ParseResult pr = parse(read_file(file));
            if (!pr.root) throw std::runtime_error("subtree needs a rooted file (root line)");
            RootedTree rt = make_rooted(pr.tree, *pr.root);
            RootedTree sub = subtree_TX(rt, split_list(arrows_list));
            emit(serialize(sub), out_path);
            return 0;
        }

        if (*cmd_decompose) {
            ParseResult pr = parse(read_file(file));
            if (!pr.root) throw std::runtime_error("decompose needs a rooted file (root line)");
            RootedTree rt = make_rooted(pr.tree, *pr.root);
            auto pieces = root_decompose(rt);
            Int d = degree(rt);
            std::string stem = prefix.empty() ? default_prefix(file) : prefix;
            std::cout << "deg: " << d << "\n"
                      << "pieces: " << pieces.size() << "\n";
            Int defect_sum = 0;
            int i = 0;
            for (const auto& piece : pieces) {
                ++i;
                std::string path = stem + ".piece" + std::to_string(i) + ".dtree";
                write_file(path, serialize(piece.tree));
                Int defect = genus_delta(piece.tree).delta;
                defect_sum += defect;
                std::cout << "piece" << i << ": " << path << " (attach " << piece.attach << ")\n"
                          << "delta" << i << ": " << defect << "\n";
            }
            std::cout << "genus: " << genus_delta(pr.tree).g << "\n"
                      << "decomposition: " << exact_div((d - 1) * (d - 2), 2) - defect_sum << "\n";
            return 0;
        }

        if (*cmd_check) {
            GenParams params;
            params.seed = seed;
            params.max_nodes = max_nodes;
            SuiteReport rep = run_suite(suite_name, params, count);
            std::cout << to_text(rep);
            return rep.failures == 0 ? 0 : 1;
        }

        if (*cmd_dot) {
            std::cout << to_dot(parse(read_file(file)).tree);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
