#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include <Eigen/Dense>

#include "hyperlim/hypergraph.hpp"

namespace hyperlim {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// codeg(u, v) for u != v; zero diagonal.
CountMatrix codegree_counts(const UniformHypergraph& h);

/// Number of (r-1)-sets S with S + {u} and S + {v} both edges. Equals the
/// ordered-tuple sum of the vertex-vertex intersection matrix once the
/// (r-1)! orderings of S cancel the normalizing factor. Diagonal is deg(u).
CountMatrix intersection_counts(const UniformHypergraph& h);

/// Codegree-section G[H]: weights codeg(u, v) / N^(r-2), loopless.
WeightedGraph codegree_section(const UniformHypergraph& h);

struct IntersectionMatrix {
    WeightedGraph raw;         // B(H), diagonal = degree
    WeightedGraph normalized;  // B(H) / N^(r-1), the step-graphon scaling
};

IntersectionMatrix intersection_matrix(const UniformHypergraph& h);

/// p-weighted adjacency matrix A(H; p) of a rank-R hypergraph.
/// `p` holds p_2, ..., p_R (size R - 1), sums to 1 and has p_R > 0.
WeightedGraph p_weighted_adjacency(const Hypergraph& h, std::span<const double> p);

enum class RandomWalkVariant {
    incidence,          // D = sum (|e|-1),   A = #shared edges
    uniform_edge,       // D = #edges,        A = sum 1/(|e|-1)
    codegree_weighted,  // D = sum (|e|-1)^2, A = sum (|e|-1)
};

struct RandomWalkMatrices {
    Eigen::VectorXd degree;  // diagonal of D
    WeightedGraph adjacency;
};

/// (D, A) pair of one of the three literature walks, assembled from per-level
/// degrees and codegrees. Size-1 edges are ignored. Throws DegeneracyError on
/// the first vertex with D_ii = 0.
RandomWalkMatrices rw_matrices(const Hypergraph& h, RandomWalkVariant variant);

/// M_ij = A_ij / D_i.
Eigen::MatrixXd random_walk_matrix(const Eigen::VectorXd& degree, const WeightedGraph& adjacency);

/// One row per line, comma separated, 17 significant digits, no header.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace hyperlim
