#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hyperlim/hypergraph.hpp"

namespace hyperlim {

/// Measures of the parts of a finite partition of [0,1]. Positive, summing to
/// one (to within 1e-12).
class Partition {
public:
    explicit Partition(std::vector<double> weights);

    static Partition equal(std::size_t k);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// True when every part has measure exactly 1/k.
    bool is_equal() const noexcept;

    /// Splits every part into q equal subparts; part i becomes parts
    /// i*q .. i*q + q - 1.
    Partition refine(std::size_t q) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<double> weights_;
};

/// Piecewise-constant kernel W(x, y) = values(i, j) for x in part i, y in
/// part j. Symmetric iff `values` is exactly symmetric.
class StepKernel {
public:
    StepKernel(Partition partition, Eigen::MatrixXd values);

    const Partition& partition() const noexcept { return partition_; }
    const Eigen::MatrixXd& values() const noexcept { return values_; }
    std::size_t parts() const noexcept { return partition_.size(); }
    bool symmetric() const noexcept { return symmetric_; }
    bool graphon_valued() const noexcept;

    /// values * diag(weights): the matrix of the integral operator acting on
    /// step functions, whose eigenvalues are those of the kernel operator.
    Eigen::MatrixXd operating_matrix() const;

private:
    Partition partition_;
    Eigen::MatrixXd values_;
    bool symmetric_;
};

/// Piecewise-constant symmetric function on [0,1]^r, stored densely in
/// row-major (lexicographic) index order. Invariant under every permutation
/// of its coordinates.
class StepTensor {
public:
    StepTensor(Partition partition, std::size_t order, std::vector<double> values);

    const Partition& partition() const noexcept { return partition_; }
    std::size_t parts() const noexcept { return partition_.size(); }
    std::size_t order() const noexcept { return order_; }
    const std::vector<double>& values() const noexcept { return values_; }
    bool graphon_valued() const noexcept;

    std::size_t flat_index(std::span<const std::size_t> index) const;
    double at(std::span<const std::size_t> index) const { return values_[flat_index(index)]; }

private:
    Partition partition_;
    std::size_t order_;
    std::vector<double> values_;
};

/// Step 3-hypergraphon W(x1, x2, x3, x12, x13, x23); one partition shared by
/// all six coordinates. Values are invariant under the S3 action that
/// permutes vertex coordinates and the pair coordinates along with them.
class StepHypergraphon3 {
public:
    using Index = std::array<std::size_t, 6>;  // (i1, i2, i3, i12, i13, i23)

    static constexpr std::size_t default_max_parts = 4;

    StepHypergraphon3(Partition partition, std::vector<double> values,
                      std::size_t max_parts = default_max_parts);

    const Partition& partition() const noexcept { return partition_; }
    std::size_t parts() const noexcept { return partition_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    bool graphon_valued() const noexcept;

    std::size_t flat_index(const Index& i) const;
    double at(const Index& i) const { return values_[flat_index(i)]; }

    /// Image of an index under the vertex permutation sigma of {0, 1, 2}.
    static Index act(const std::array<std::size_t, 3>& sigma, const Index& i);

private:
    Partition partition_;
    std::vector<double> values_;
};

/// Step function on [0,1], e.g. a degree function.
struct PartProfile {
    Partition partition;
    Eigen::VectorXd values;
};

StepKernel from_graph(const WeightedGraph& g);
StepTensor from_hypergraph(const UniformHypergraph& h);

StepTensor to_tensor(const StepKernel& w);  // requires a symmetric kernel
StepKernel to_kernel(const StepTensor& w);  // requires order 2

PartProfile degree_profile(const StepKernel& w);
/// Integrates out every coordinate except the first.
PartProfile degree_profile(const StepTensor& w);

/// Asymmetric kernel together with a positive weight s such that
/// s_i K_ij = s_j K_ji (the degree profile). Spectra are computed through the
/// s-weighted symmetrization.
struct RandomWalkKernel {
    StepKernel kernel;
    PartProfile degree;
    bool assumption_holds;  // min degree >= epsilon
};

/// K_W = W / d_W on parts with d_W > 0, zero rows elsewhere. Throws
/// InputError unless W is a symmetric graphon and epsilon > 0.
RandomWalkKernel random_walk_kernel(const StepKernel& w, double epsilon);

/// L_W = Id - K_W, represented by its kernel part.
struct RandomWalkLaplacian {
    RandomWalkKernel walk;

    Eigen::MatrixXd operating_matrix() const;
    Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
};

RandomWalkLaplacian rw_laplacian(const StepKernel& w, double epsilon);

/// G[W](x, y) = 1/(r-2)! * integral of W(x, x2, ..., x_{r-1}, y).
StepKernel codegree_section_step(const StepTensor& w);

/// B(W)(x1, x4) = 1/2 * integral of W(x1, x2, x3) W(x2, x3, x4).
StepKernel intersection_graphon(const StepTensor& w);

/// B(W)(x1, x4) = 1/2 * integral of
/// W(x1, x2, x3, x12, x13, x23) W(x2, x3, x4, x23, x24, x34)
/// over x2, x3, x12, x13, x23, x24, x34.
StepKernel intersection_graphon(const StepHypergraphon3& w);

/// Constant in the pair coordinates.
StepHypergraphon3 lift_to_hypergraphon(const StepTensor& w);

/// Common limit kernel of the hypergraph random walks built on the top level
/// W of order R: S = G[W] / ((R-1) * deg), where deg = d_W / (R-1)! is the
/// hypergraph-normalized degree (d_W the full integral). Rows integrate to 1.
/// Throws DegeneracyError on a part with zero degree.
RandomWalkKernel limit_rw_kernel(const StepTensor& w);

// File format: `STEP <order> <k>`, then the k part weights, then the k^order
// values in row-major order; whitespace separated.
using StepObject = std::variant<StepKernel, StepTensor>;

StepObject read_step(std::istream& in);
StepObject read_step(const std::filesystem::path& path);
void write_step(std::ostream& out, const StepKernel& w);
void write_step(std::ostream& out, const StepTensor& w);

}  // namespace hyperlim
