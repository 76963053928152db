#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "hyperlim/hypergraph.hpp"
#include "hyperlim/stepfunctions.hpp"

namespace hyperlim {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Loopless simple graph; edges are stored as (u, v) with u < v, sorted.
class SimpleGraph {
public:
    SimpleGraph() = default;
    SimpleGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::pair<Vertex, Vertex>> edges_;
};

/// Directed graph without loops or repeated arcs (u -> v and v -> u may both
/// be present).
class DirectedGraph {
public:
    DirectedGraph() = default;
    DirectedGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> arcs);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_arcs() const noexcept { return arcs_.size(); }
    const std::vector<std::pair<Vertex, Vertex>>& arcs() const noexcept { return arcs_; }

private:
    std::size_t n_ = 0;
    std::vector<std::pair<Vertex, Vertex>> arcs_;
};

SimpleGraph complete_graph(std::size_t n);
SimpleGraph cycle_graph(std::size_t k);  // k >= 3
SimpleGraph path_graph(std::size_t vertices);
DirectedGraph directed_cycle(std::size_t k);  // k >= 2
DirectedGraph directed_path(std::size_t vertices);

/// Sum over all maps V(F) -> V(G) of the product of the edge weights.
/// Diagonal (loop) weights take part for non-injective maps.
double hom_weighted(const SimpleGraph& f, const WeightedGraph& g);
Rational hom_weighted(const SimpleGraph& f, const RationalMatrix& g);

/// Number of maps sending every edge of F onto an edge of H. Throws
/// InputError on a uniformity mismatch.
std::uint64_t hom_hypergraph(const UniformHypergraph& f, const UniformHypergraph& h);

double t_density(const SimpleGraph& f, const WeightedGraph& g);
/// Requires a symmetric kernel.
double t_density(const SimpleGraph& f, const StepKernel& w);
/// Arcs are read as ordered kernel arguments; the kernel may be asymmetric.
double t_density(const DirectedGraph& f, const StepKernel& w);
double t_density(const UniformHypergraph& f, const StepTensor& w);

/// t(directed k-cycle, K) = trace((K diag(w))^k).
double directed_cycle_density(const StepKernel& w, std::size_t k);

struct MomentCheck {
    double hom;        // hom(C_k, G) by enumeration
    double trace;      // trace(A^k)
    double eigen_sum;  // sum of lambda^k
};

MomentCheck spectral_moment_check(const WeightedGraph& g, std::size_t k);

/// (r+2)-uniform: edge i = {u, v} gains fresh vertices n + i*r .. n + i*r + r - 1.
UniformHypergraph subdivide(const SimpleGraph& f, std::size_t r);

/// (r+1)-uniform: edge i = {u, v} yields {u} + W_i and {v} + W_i with
/// W_i = {n + i*r, ..., n + i*r + r - 1}.
UniformHypergraph intersection_pattern(const SimpleGraph& f, std::size_t r);

enum class Arithmetic { floating, exact };

struct IdentityCheck {
    double lhs;
    double rhs;
    bool equal;  // exact equality in exact mode, 1e-9 relative otherwise
};

/// hom(F_r, H) against (r! N^r)^|E(F)| hom(F, G[H]); H must be (r+2)-uniform.
IdentityCheck verify_subdivision_identity(const SimpleGraph& f, const UniformHypergraph& h, std::size_t r,
                                          Arithmetic mode = Arithmetic::exact);

/// hom(F^(r), H) against (r!)^|E(F)| hom(F, B[H]) with the raw intersection
/// matrix, diagonal included; H must be (r+1)-uniform.
IdentityCheck verify_intersection_identity(const SimpleGraph& f, const UniformHypergraph& h, std::size_t r,
                                           Arithmetic mode = Arithmetic::exact);

// Text format: `N <n>`, then one `u v` pair per line; `#` comments.
SimpleGraph read_simple_graph(std::istream& in);
SimpleGraph read_simple_graph(const std::filesystem::path& path);
void write_simple_graph(std::ostream& out, const SimpleGraph& g);

}  // namespace hyperlim
