#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "hyperlim/errors.hpp"
#include "hyperlim/hypergraph.hpp"

using namespace hyperlim;
using testing_support::Rng;

TEST_CASE("degree examples") {
    const UniformHypergraph single(3, 3, {{0, 1, 2}});
    CHECK(degree(single, 0) == 1);
    const UniformHypergraph empty(5, 3, {});
    CHECK(degree(empty, 4) == 0);
    const UniformHypergraph all(4, 3, testing_support::subsets(4, 3));
    // triples through 0: choose 2 of the other 3
    CHECK(degree(all, 0) == 3);
    CHECK_THROWS_AS(degree(all, 4), InputError);
}

TEST_CASE("codegree examples") {
    const UniformHypergraph single(4, 3, {{0, 1, 2}});
    CHECK(codegree(single, 0, 1) == 1);
    CHECK(codegree(single, 0, 3) == 0);
    CHECK(codegree(single, 2, 2) == degree(single, 2));
    const UniformHypergraph two(4, 3, {{0, 1, 2}, {0, 1, 3}});
    CHECK(codegree(two, 0, 1) == 2);
    CHECK_THROWS_AS(codegree(two, 0, 9), InputError);
}

TEST_CASE("decompose examples") {
    const Hypergraph h(3, {{0, 1}, {0, 1, 2}});
    const auto d = decompose(h);
    CHECK(d.rank == 3);
    REQUIRE(d.levels.size() == 2);
    CHECK(d.levels.at(2).edges() == std::vector<Edge>{{0, 1}});
    CHECK(d.levels.at(3).edges() == std::vector<Edge>{{0, 1, 2}});

    const auto only3 = decompose(Hypergraph(4, {{0, 1, 2}, {1, 2, 3}}));
    CHECK(only3.rank == 3);
    CHECK(only3.levels.size() == 1);

    const auto mixed = decompose(Hypergraph(5, {{0, 1}, {1, 2, 3}, {0, 1, 2, 4}, {3}}));
    CHECK(mixed.rank == 4);
    CHECK(mixed.levels.size() == 3);
    CHECK(mixed.ignored_singletons == 1);

    CHECK_THROWS_AS(decompose(Hypergraph(3, {{0}, {1}})), InputError);
}

TEST_CASE("is_linear examples") {
    CHECK(is_linear(UniformHypergraph(5, 3, {{0, 1, 2}, {2, 3, 4}})));
    CHECK_FALSE(is_linear(UniformHypergraph(4, 3, {{0, 1, 2}, {0, 1, 3}})));
}

TEST_CASE("invalid hypergraphs are rejected") {
    CHECK_THROWS_AS(Hypergraph(3, {{}}), InputError);
    CHECK_THROWS_AS(Hypergraph(3, {{0, 0, 1}}), InputError);
    CHECK_THROWS_AS(Hypergraph(3, {{0, 3}}), InputError);
    CHECK_THROWS_AS(Hypergraph(3, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(UniformHypergraph(3, 3, {{0, 1}}), InputError);
    // unsorted input is normalized
    CHECK(Hypergraph(3, {{2, 0, 1}}).edges() == std::vector<Edge>{{0, 1, 2}});
}

TEST_CASE("weighted graph validation") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    CHECK_NOTHROW(WeightedGraph{m});
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(WeightedGraph{m}, InputError);
    m << 0, -1, -1, 0;
    CHECK_THROWS_AS(WeightedGraph{m}, InputError);
}

TEST_CASE("degree and codegree properties on random hypergraphs") {
    Rng rng(0xdecade);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng.below(6);
        const std::size_t r = 2 + rng.below(std::min<std::size_t>(3, n - 1));
        const auto h = testing_support::random_uniform(rng, n, r, rng.uniform());
        std::size_t total = 0;
        for (Vertex u = 0; u < n; ++u) {
            total += degree(h, u);
            std::size_t row = 0;
            for (Vertex v = 0; v < n; ++v) {
                CHECK(codegree(h, u, v) == codegree(h, v, u));
                if (v != u) {
                    row += codegree(h, u, v);
                }
            }
            CHECK(row == (r - 1) * degree(h, u));
        }
        CHECK(total == r * h.num_edges());
    }
}

TEST_CASE("decompose reunion reproduces edges of size >= 2") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.below(6);
        std::vector<Edge> edges;
        for (std::size_t k = 1; k <= n; ++k) {
            for (auto& e : testing_support::subsets(n, k)) {
                if (rng.coin(0.3)) {
                    edges.push_back(e);
                }
            }
        }
        edges.push_back({0, 1});
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        const Hypergraph h(n, edges);
        const auto d = decompose(h);
        std::vector<Edge> reunion;
        std::size_t singles = 0;
        std::size_t rank = 0;
        for (const auto& e : h.edges()) {
            singles += e.size() == 1;
            rank = std::max(rank, e.size());
        }
        for (const auto& [r, level] : d.levels) {
            for (const auto& e : level.edges()) {
                CHECK(e.size() == r);
                reunion.push_back(e);
            }
        }
        std::sort(reunion.begin(), reunion.end());
        std::vector<Edge> expected;
        for (const auto& e : h.edges()) {
            if (e.size() >= 2) {
                expected.push_back(e);
            }
        }
        CHECK(reunion == expected);
        CHECK(d.ignored_singletons == singles);
        CHECK(d.rank == rank);
    }
}

TEST_CASE("text format round trip is bit exact") {
    const std::string text = "N 5\n0 1 2\n0 3\n2 3 4\n";
    std::istringstream in(text);
    const auto h = read_hypergraph(in);
    std::ostringstream out;
    write_hypergraph(out, h);
    CHECK(out.str() == text);

    std::istringstream comments("# header\nN 3\n\n# an edge\n0 1 2\n");
    CHECK(read_hypergraph(comments).num_edges() == 1);
}

TEST_CASE("text format errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_hypergraph(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("N 3\n0 1 2") == 2);    // missing final newline
    CHECK(line_of("N 3\n0 2 1\n") == 2);  // not ascending
    CHECK(line_of("N 3\n0 1\n1 x\n") == 3);
    CHECK(line_of("M 3\n") == 1);
    CHECK(line_of("N 3\n0 1 5\n") == 2);
}
