#include "hyperlim/contractions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "hyperlim/errors.hpp"
#include "hyperlim/format.hpp"

namespace hyperlim {

CountMatrix codegree_counts(const UniformHypergraph& h) {
    const auto n = static_cast<Eigen::Index>(h.num_vertices());
    CountMatrix c = CountMatrix::Zero(n, n);
    for (const auto& e : h.edges()) {
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (std::size_t b = a + 1; b < e.size(); ++b) {
                ++c(e[a], e[b]);
                ++c(e[b], e[a]);
            }
        }
    }
    return c;
}

CountMatrix intersection_counts(const UniformHypergraph& h) {
    const auto n = static_cast<Eigen::Index>(h.num_vertices());
    // (edge minus one vertex, the removed vertex)
    std::vector<std::pair<Edge, Vertex>> faces;
    faces.reserve(h.num_edges() * h.uniformity());
    for (const auto& e : h.edges()) {
        for (std::size_t skip = 0; skip < e.size(); ++skip) {
            Edge rest;
            rest.reserve(e.size() - 1);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i != skip) {
                    rest.push_back(e[i]);
                }
            }
            faces.emplace_back(std::move(rest), e[skip]);
        }
    }
    std::sort(faces.begin(), faces.end());

    CountMatrix b = CountMatrix::Zero(n, n);
    for (std::size_t lo = 0; lo < faces.size();) {
        std::size_t hi = lo;
        while (hi < faces.size() && faces[hi].first == faces[lo].first) {
            ++hi;
        }
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = lo; j < hi; ++j) {
                ++b(faces[i].second, faces[j].second);
            }
        }
        lo = hi;
    }
    return b;
}

WeightedGraph codegree_section(const UniformHypergraph& h) {
    const double scale = std::pow(static_cast<double>(h.num_vertices()), static_cast<int>(h.uniformity()) - 2);
    return WeightedGraph(codegree_counts(h).cast<double>() / scale);
}

IntersectionMatrix intersection_matrix(const UniformHypergraph& h) {
    Eigen::MatrixXd raw = intersection_counts(h).cast<double>();
    const double scale = std::pow(static_cast<double>(h.num_vertices()), static_cast<int>(h.uniformity()) - 1);
    Eigen::MatrixXd normalized = raw / scale;
    return {WeightedGraph(std::move(raw)), WeightedGraph(std::move(normalized))};
}

WeightedGraph p_weighted_adjacency(const Hypergraph& h, std::span<const double> p) {
    const auto levels = decompose(h);
    const std::size_t rank = levels.rank;
    if (p.size() != rank - 1) {
        throw InputError("probability vector has " + std::to_string(p.size()) + " entries but the hypergraph has rank " +
                         std::to_string(rank) + " (expected " + std::to_string(rank - 1) + ")");
    }
    double total = 0.0;
    for (double pr : p) {
        if (!(pr >= 0.0)) {
            throw InputError("probability vector entries must be nonnegative");
        }
        total += pr;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InputError("probability vector must sum to 1");
    }
    if (!(p.back() > 0.0)) {
        throw InputError("p_R must be positive");
    }

    const auto n = static_cast<Eigen::Index>(h.num_vertices());
    const double big_n = static_cast<double>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [r, level] : levels.levels) {
        const double pr = p[r - 2];
        if (pr == 0.0) {
            continue;
        }
        const double factor = pr * std::pow(big_n, static_cast<int>(r) - 2) / std::pow(big_n, static_cast<int>(rank) - 2);
        a += factor * codegree_section(level).weights();
    }
    return WeightedGraph(std::move(a));
}

RandomWalkMatrices rw_matrices(const Hypergraph& h, RandomWalkVariant variant) {
    const auto n = static_cast<Eigen::Index>(h.num_vertices());
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : h.edges()) {
        if (e.size() < 2) {
            continue;
        }
        const double m = static_cast<double>(e.size()) - 1.0;  // r - 1
        double d_weight = 0.0;
        double a_weight = 0.0;
        switch (variant) {
        case RandomWalkVariant::incidence:
            d_weight = m;
            a_weight = 1.0;
            break;
        case RandomWalkVariant::uniform_edge:
            d_weight = 1.0;
            a_weight = 1.0 / m;
            break;
        case RandomWalkVariant::codegree_weighted:
            d_weight = m * m;
            a_weight = m;
            break;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            d(e[i]) += d_weight;
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                a(e[i], e[j]) += a_weight;
                a(e[j], e[i]) += a_weight;
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i) <= 0.0) {
            throw DegeneracyError(static_cast<std::size_t>(i),
                                  "vertex " + std::to_string(i) + " is isolated (zero random-walk degree)");
        }
    }
    return {std::move(d), WeightedGraph(std::move(a))};
}

Eigen::MatrixXd random_walk_matrix(const Eigen::VectorXd& degree, const WeightedGraph& adjacency) {
    const auto n = static_cast<Eigen::Index>(adjacency.num_vertices());
    if (degree.size() != n) {
        throw InputError("degree vector and adjacency matrix sizes differ");
    }
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(degree(i) > 0.0)) {
            throw DegeneracyError(static_cast<std::size_t>(i),
                                  "vertex " + std::to_string(i) + " has nonpositive degree");
        }
        m.row(i) = adjacency.weights().row(i) / degree(i);
    }
    return m;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format17(m(i, j));
        }
        out << '\n';
    }
}

}  // namespace hyperlim
