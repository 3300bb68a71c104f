#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "modsem/errors.hpp"
#include "modsem/extract.hpp"
#include "modsem/graph.hpp"
#include "modsem/graph_io.hpp"

using namespace modsem;
namespace fs = std::filesystem;

namespace {
const fs::path kFixtures = MODSEM_FIXTURE_DIR;

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("modsem_test_" + name);
}
} // namespace

TEST_CASE("extraction finds the import edge in the antlr-style fixture") {
    auto result = extract_dependencies(kFixtures / "mini_antlr");
    CHECK(result.graph.node_count() == 2);
    CHECK(result.graph.has_node("org.antlr.v4.automata.ParserATNFactory"));
    CHECK(result.graph.has_node("org.antlr.v4.tool.LexerGrammar"));
    CHECK(result.graph.weight("org.antlr.v4.automata.ParserATNFactory", "org.antlr.v4.tool.LexerGrammar") >= 1);
    CHECK(result.graph.weight("org.antlr.v4.tool.LexerGrammar", "org.antlr.v4.automata.ParserATNFactory") == 0);
    result.graph.validate();
}

TEST_CASE("single file with no external references gives one node, zero edges") {
    auto result = extract_dependencies(kFixtures / "single");
    CHECK(result.graph.node_count() == 1);
    CHECK(result.graph.edge_count() == 0);
    CHECK(result.graph.has_node("Solo")); // default package
}

TEST_CASE("use count = import + field type + constructor call") {
    auto result = extract_dependencies(kFixtures / "usecount");
    CHECK(result.graph.weight("a.A", "b.B") == 3);
    CHECK(result.graph.edge_count() == 1);
}

TEST_CASE("extraction is deterministic") {
    auto first = extract_dependencies(kFixtures / "mini_antlr");
    auto second = extract_dependencies(kFixtures / "mini_antlr");
    CHECK(first.graph == second.graph);
}

TEST_CASE("extraction errors") {
    CHECK_THROWS_AS(extract_dependencies(kFixtures / "does_not_exist"), IoError);

    // a directory with only unparsable java files is an empty project
    fs::path dir = fs::temp_directory_path() / "modsem_test_empty_project";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "NotReallyJava.java");
        out << "// just a comment, no type declaration\n";
    }
    CHECK_THROWS_AS(extract_dependencies(dir), EmptyProjectError);
    fs::remove_all(dir);
}

TEST_CASE("references in comments and strings do not count") {
    fs::path dir = fs::temp_directory_path() / "modsem_test_strings";
    fs::create_directories(dir / "p");
    {
        std::ofstream out(dir / "p" / "User.java");
        out << "package p;\n"
               "public class User {\n"
               "    // Helper mentioned in a comment\n"
               "    /* Helper again */\n"
               "    String s = \"Helper\";\n"
               "    Helper h;\n"
               "}\n";
    }
    {
        std::ofstream out(dir / "p" / "Helper.java");
        out << "package p;\npublic class Helper {}\n";
    }
    auto result = extract_dependencies(dir);
    CHECK(result.graph.weight("p.User", "p.Helper") == 1); // only the field type
    fs::remove_all(dir);
}

TEST_CASE("wildcard imports resolve only within the project") {
    fs::path dir = fs::temp_directory_path() / "modsem_test_wildcard";
    fs::create_directories(dir / "x");
    fs::create_directories(dir / "y");
    {
        std::ofstream out(dir / "x" / "Caller.java");
        out << "package x;\n"
               "import y.*;\n"
               "import java.util.*;\n"
               "public class Caller {\n"
               "    Target t;\n"
               "    List<Target> all;\n"
               "}\n";
    }
    {
        std::ofstream out(dir / "y" / "Target.java");
        out << "package y;\npublic class Target {}\n";
    }
    auto result = extract_dependencies(dir);
    CHECK(result.graph.weight("x.Caller", "y.Target") == 2);
    CHECK(result.graph.node_count() == 2); // no node for java.util.List
    fs::remove_all(dir);
}

TEST_CASE("symmetrize sums reciprocal weights") {
    DependencyGraph g;
    g.add_use("A", "B", 2);
    g.add_use("B", "A", 1);
    UndirectedGraph u = symmetrize(g);
    CHECK(u.weight("A", "B") == doctest::Approx(3.0));

    DependencyGraph one_way;
    one_way.add_use("A", "B", 2);
    CHECK(symmetrize(one_way).weight("A", "B") == doctest::Approx(2.0));

    DependencyGraph no_edges;
    no_edges.add_node("A");
    no_edges.add_node("B");
    UndirectedGraph empty = symmetrize(no_edges);
    CHECK(empty.node_count() == 2);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("symmetrize preserves total weight") {
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        DependencyGraph g;
        std::uniform_int_distribution<int> node(0, 7);
        std::uniform_int_distribution<int> weight(1, 5);
        for (int e = 0; e < 12; ++e) {
            int a = node(rng), b = node(rng);
            if (a != b)
                g.add_use("c" + std::to_string(a), "c" + std::to_string(b), weight(rng));
        }
        UndirectedGraph u = symmetrize(g);
        CHECK(u.total_weight() == doctest::Approx(static_cast<double>(g.total_weight())));
    }
}

TEST_CASE("graph invariants are enforced") {
    DependencyGraph g;
    CHECK_THROWS_AS(g.add_use("A", "A", 1), DomainError);
    CHECK_THROWS_AS(g.add_use("A", "B", 0), DomainError);
    g.add_use("A", "B", 1);
    g.add_use("A", "B", 2); // accumulates instead of duplicating
    CHECK(g.weight("A", "B") == 3);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("graph io round-trip is the identity") {
    DependencyGraph g;
    g.add_use("pkg.Alpha", "pkg.Beta", 2);
    g.add_use("pkg.Beta", "pkg.Gamma", 1);
    g.add_node("pkg.Isolated");

    fs::path file = temp_file("roundtrip.tsv");
    write_graph(g, file);
    DependencyGraph back = read_graph(file);
    CHECK(back == g);
    fs::remove(file);
}

TEST_CASE("graph io round-trip property on random graphs") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> size(1, 9);
    std::uniform_int_distribution<int> weight(1, 9);
    for (int round = 0; round < 30; ++round) {
        DependencyGraph g;
        int n = size(rng);
        for (int i = 0; i < n; ++i)
            g.add_node("node.N" + std::to_string(i));
        std::uniform_int_distribution<int> pick(0, n - 1);
        int edges = size(rng);
        for (int e = 0; e < edges; ++e) {
            int a = pick(rng), b = pick(rng);
            if (a != b)
                g.add_use("node.N" + std::to_string(a), "node.N" + std::to_string(b), weight(rng));
        }
        fs::path file = temp_file("prop.tsv");
        write_graph(g, file);
        CHECK(read_graph(file) == g);
        fs::remove(file);
    }
}

TEST_CASE("graph io parse errors") {
    fs::path file = temp_file("bad.tsv");

    {
        std::ofstream out(file);
        out << "A\tB\t0\n";
    }
    CHECK_THROWS_AS(read_graph(file), ParseError);

    {
        std::ofstream out(file);
        out << "A\tB\n";
    }
    CHECK_THROWS_AS(read_graph(file), ParseError);

    {
        std::ofstream out(file);
        out << "A\tB\t1\nA\tB\t2\n";
    }
    CHECK_THROWS_AS(read_graph(file), ParseError); // duplicate directed edge

    {
        std::ofstream out(file);
        out << "# comment\nLonely\t-\t0\n";
    }
    DependencyGraph g = read_graph(file);
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);

    fs::remove(file);
}
