#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "hyperlim/contractions.hpp"
#include "hyperlim/errors.hpp"

using namespace hyperlim;
using testing_support::Rng;

namespace {

// Codegree section straight from the tensor: sum over ordered completions.
Eigen::MatrixXd tensor_codegree_section(const UniformHypergraph& h) {
    const std::size_t n = h.num_vertices();
    const std::size_t r = h.uniformity();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) {
                continue;
            }
            double s = 0;
            testing_support::for_each_tuple(n, r - 2, [&](const std::vector<Vertex>& t) {
                std::vector<Vertex> idx{u, v};
                idx.insert(idx.end(), t.begin(), t.end());
                s += testing_support::tensor_entry(h.base(), idx);
            });
            a(u, v) = s / testing_support::factorial(r - 2) / std::pow(double(n), double(r - 2));
        }
    }
    return a;
}

// B[u][v] = 1/(r-1)! sum over ordered (r-1)-tuples of A(u, t) A(t, v).
Eigen::MatrixXd tensor_intersection(const UniformHypergraph& h) {
    const std::size_t n = h.num_vertices();
    const std::size_t r = h.uniformity();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            double s = 0;
            testing_support::for_each_tuple(n, r - 1, [&](const std::vector<Vertex>& t) {
                std::vector<Vertex> left{u};
                left.insert(left.end(), t.begin(), t.end());
                std::vector<Vertex> right(t);
                right.push_back(v);
                s += testing_support::tensor_entry(h.base(), left) * testing_support::tensor_entry(h.base(), right);
            });
            b(u, v) = s / testing_support::factorial(r - 1);
        }
    }
    return b;
}

}  // namespace

TEST_CASE("codegree section examples") {
    const UniformHypergraph single(3, 3, {{0, 1, 2}});
    const auto g = codegree_section(single).weights();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(g(i, j) == doctest::Approx(i == j ? 0.0 : 1.0 / 3.0).epsilon(1e-15));
        }
    }
    const UniformHypergraph graph(4, 2, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(codegree_section(graph).weights() == adjacency_matrix(graph).weights());
    CHECK(codegree_section(UniformHypergraph(4, 3, {})).weights().isZero(0));
}

TEST_CASE("intersection matrix examples") {
    const auto one = intersection_matrix(UniformHypergraph(3, 3, {{0, 1, 2}}));
    Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(3, 3);
    CHECK(one.raw.weights() == expect);

    const auto two = intersection_matrix(UniformHypergraph(4, 3, {{0, 1, 2}, {1, 2, 3}}));
    CHECK(two.raw(0, 3) == 1.0);
    CHECK(two.raw(3, 0) == 1.0);
    CHECK(two.raw(1, 1) == 2.0);
    CHECK(intersection_matrix(UniformHypergraph(4, 3, {})).raw.weights().isZero(0));
}

TEST_CASE("contractions match brute-force tensor sums") {
    Rng rng(0xc0de);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.below(4);
        const std::size_t r = 2 + rng.below(std::min<std::size_t>(3, n - 1));
        const auto h = testing_support::random_uniform(rng, n, r, rng.uniform());
        const auto g = codegree_section(h).weights();
        const auto b = intersection_matrix(h);
        const auto g_ref = tensor_codegree_section(h);
        const auto b_ref = tensor_intersection(h);
        CHECK((g - g_ref).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((b.raw.weights() - b_ref).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(testing_support::bitwise_symmetric(g));
        CHECK(testing_support::bitwise_symmetric(b.raw.weights()));
        const double scale = std::pow(double(n), double(r) - 1.0);
        for (Vertex u = 0; u < n; ++u) {
            CHECK(b.raw(u, u) == double(degree(h, u)));
            CHECK(g(u, u) == 0.0);
            for (Vertex v = 0; v < n; ++v) {
                CHECK(b.normalized(u, v) == b.raw(u, v) / scale);
            }
        }
    }
}

TEST_CASE("p-weighted adjacency") {
    const UniformHypergraph graph(4, 2, {{0, 1}, {2, 3}});
    const std::vector<double> one{1.0};
    CHECK(p_weighted_adjacency(graph.base(), one).weights() == adjacency_matrix(graph).weights());

    const std::vector<double> top{0.0, 1.0};
    const UniformHypergraph tri(4, 3, {{0, 1, 2}, {1, 2, 3}});
    CHECK((p_weighted_adjacency(tri.base(), top).weights() - codegree_section(tri).weights()).cwiseAbs().maxCoeff() <
          1e-15);

    // two levels, N = 4, evaluated term by term
    const Hypergraph h(4, {{0, 1}, {1, 3}, {0, 1, 2}, {1, 2, 3}});
    const std::vector<double> half{0.5, 0.5};
    const auto a = p_weighted_adjacency(h, half).weights();
    for (Vertex u = 0; u < 4; ++u) {
        for (Vertex v = 0; v < 4; ++v) {
            double c2 = 0;
            double c3 = 0;
            for (const auto& e : h.edges()) {
                const bool has = u != v && std::count(e.begin(), e.end(), u) && std::count(e.begin(), e.end(), v);
                if (has) {
                    (e.size() == 2 ? c2 : c3) += 1;
                }
            }
            const double expect = 0.5 / 4.0 * c2 + 0.5 * c3 / 4.0;
            CHECK(a(u, v) == doctest::Approx(expect).epsilon(1e-14));
        }
    }
    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(p_weighted_adjacency(h, wrong), InputError);
}

TEST_CASE("random walk matrices") {
    const Hypergraph edge(2, {{0, 1}});
    for (auto v : {RandomWalkVariant::incidence, RandomWalkVariant::uniform_edge,
                   RandomWalkVariant::codegree_weighted}) {
        const auto m = rw_matrices(edge, v);
        CHECK(m.degree(0) == 1.0);
        CHECK(m.degree(1) == 1.0);
        CHECK(m.adjacency(0, 1) == 1.0);
        CHECK(m.adjacency(0, 0) == 0.0);
    }
    const auto tri = rw_matrices(Hypergraph(3, {{0, 1, 2}}), RandomWalkVariant::incidence);
    CHECK(tri.degree(1) == 2.0);
    CHECK(tri.adjacency(0, 2) == 1.0);
    const auto p = random_walk_matrix(tri.degree, tri.adjacency);
    CHECK(p(0, 1) == 0.5);

    try {
        rw_matrices(Hypergraph(4, {{0, 1, 2}}), RandomWalkVariant::incidence);
        FAIL("expected degeneracy");
    } catch (const DegeneracyError& e) {
        CHECK(e.index() == 3);
    }
}

TEST_CASE("random walk rows follow the literal edge definitions") {
    Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.below(5);
        std::vector<Edge> edges;
        for (std::size_t k = 2; k <= std::min<std::size_t>(4, n); ++k) {
            for (auto& e : testing_support::subsets(n, k)) {
                if (rng.coin(0.35)) {
                    edges.push_back(e);
                }
            }
        }
        // star through vertex 0 so nobody is isolated
        for (Vertex v = 1; v < n; ++v) {
            Edge e{0, v};
            if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
                edges.push_back(e);
            }
        }
        const Hypergraph h(n, edges);
        struct Rule {
            RandomWalkVariant v;
            double (*d)(double);
            double (*a)(double);
        };
        const Rule rules[] = {
            {RandomWalkVariant::incidence, [](double s) { return s - 1; }, [](double) { return 1.0; }},
            {RandomWalkVariant::uniform_edge, [](double) { return 1.0; }, [](double s) { return 1.0 / (s - 1); }},
            {RandomWalkVariant::codegree_weighted, [](double s) { return (s - 1) * (s - 1); },
             [](double s) { return s - 1; }},
        };
        for (const auto& rule : rules) {
            const auto m = rw_matrices(h, rule.v);
            Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
            for (const auto& e : h.edges()) {
                const double s = double(e.size());
                for (Vertex x : e) {
                    d(x) += rule.d(s);
                    for (Vertex y : e) {
                        if (x != y) {
                            a(x, y) += rule.a(s);
                        }
                    }
                }
            }
            CHECK((m.degree - d).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((m.adjacency.weights() - a).cwiseAbs().maxCoeff() <= 1e-12);
            const auto walk = random_walk_matrix(m.degree, m.adjacency);
            for (Eigen::Index i = 0; i < walk.rows(); ++i) {
                CHECK(std::abs(walk.row(i).sum() - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("random walk matrix zero rows and uniform walk") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(4, 4, 2.0);
    a.diagonal().setZero();
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(4, 6.0);
    const auto m = random_walk_matrix(d, WeightedGraph(a));
    CHECK(m(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(m(2, 2) == 0.0);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    const auto m0 = random_walk_matrix(Eigen::VectorXd::Ones(2), WeightedGraph(z));
    CHECK(m0.isZero(0));
    CHECK_THROWS_AS(random_walk_matrix(Eigen::VectorXd::Zero(2), WeightedGraph(z)), DegeneracyError);
}

TEST_CASE("matrix csv uses 17 significant digits") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0 / 3.0, 0, 0, 2;
    std::ostringstream out;
    write_matrix_csv(out, m);
    CHECK(out.str() == "0.33333333333333331,0\n0,2\n");
}
