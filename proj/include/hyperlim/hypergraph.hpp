#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace hyperlim {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

/// A finite hypergraph on vertices 0..n-1.
///
/// Edges are stored sorted ascending and the edge list is sorted
/// lexicographically, so two hypergraphs are equal iff they compare equal
/// structurally. The adjacency tensor is never materialized; an entry is 1 iff
/// its (distinct) indices form an edge, and 0 on any index tuple with a repeat.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Edges may be given in any vertex order; they are normalized. Throws
    /// InputError on an empty edge, a repeated vertex, an id outside [0, n)
    /// or a duplicate edge.
    Hypergraph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Binary search; `e` must be sorted ascending.
    bool contains_edge(const Edge& e) const;

    /// Largest edge cardinality (0 for an edgeless hypergraph).
    std::size_t max_edge_size() const noexcept;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Hypergraph whose edges all have exactly r >= 2 vertices.
class UniformHypergraph {
public:
    UniformHypergraph(Hypergraph base, std::size_t r);
    UniformHypergraph(std::size_t n, std::size_t r, std::vector<Edge> edges)
        : UniformHypergraph(Hypergraph(n, std::move(edges)), r) {}

    const Hypergraph& base() const noexcept { return base_; }
    std::size_t uniformity() const noexcept { return r_; }
    std::size_t num_vertices() const noexcept { return base_.num_vertices(); }
    std::size_t num_edges() const noexcept { return base_.num_edges(); }
    const std::vector<Edge>& edges() const noexcept { return base_.edges(); }

    friend bool operator==(const UniformHypergraph&, const UniformHypergraph&) = default;

private:
    Hypergraph base_;
    std::size_t r_;
};

/// Returns r if every edge has size r >= 2. Edgeless hypergraphs have no
/// detectable uniformity and yield nullopt.
std::optional<std::size_t> uniformity(const Hypergraph& h);

/// Dense symmetric nonnegative weight matrix. The diagonal may carry loop
/// weights.
class WeightedGraph {
public:
    explicit WeightedGraph(std::size_t n) : weights_(Eigen::MatrixXd::Zero(n, n)) {}

    /// Throws InputError unless `weights` is square, exactly symmetric and
    /// entry-wise nonnegative.
    explicit WeightedGraph(Eigen::MatrixXd weights);

    std::size_t num_vertices() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
    const Eigen::MatrixXd& weights() const noexcept { return weights_; }
    double operator()(std::size_t u, std::size_t v) const { return weights_(u, v); }

private:
    Eigen::MatrixXd weights_;
};

/// 0/1 adjacency matrix of a 2-uniform hypergraph.
WeightedGraph adjacency_matrix(const UniformHypergraph& g);

struct RankDecomposition {
    std::map<std::size_t, UniformHypergraph> levels;  // keyed by edge size r >= 2
    std::size_t rank = 0;
    std::size_t ignored_singletons = 0;  // size-1 edges dropped
};

std::size_t degree(const UniformHypergraph& h, Vertex v);

/// codegree(u, u) == degree(u): the set {u, u} is {u}.
std::size_t codegree(const UniformHypergraph& h, Vertex u, Vertex v);

RankDecomposition decompose(const Hypergraph& h);

bool is_linear(const UniformHypergraph& h);

// Text format: first line `N <n>`, then one edge per non-blank line as
// ascending space-separated ids. `#` lines are comments. The final newline is
// mandatory.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph(const std::filesystem::path& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_hypergraph(const std::filesystem::path& path, const Hypergraph& h);

}  // namespace hyperlim
