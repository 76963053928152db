#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "hyperlim/hypergraph.hpp"
#include "hyperlim/stepfunctions.hpp"

namespace hyperlim {

/// Real eigenvalues sorted descending, multiplicities repeated.
struct Spectrum {
    std::vector<double> eigenvalues;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    double sum() const noexcept;
};

/// Throws InputError unless `a` is exactly symmetric.
Spectrum spectrum_symmetric(const Eigen::MatrixXd& a);
Spectrum spectrum_symmetric(const WeightedGraph& a);

/// Eigenvalues of values * diag(weights), through the similarity
/// diag(sqrt w) values diag(sqrt w). Throws InputError for an asymmetric
/// kernel: pass a RandomWalkKernel, which carries its symmetrizing weight.
Spectrum spectrum_step_operator(const StepKernel& w);

/// Uses the degree profile s (s_i K_ij = s_j K_ji) to symmetrize. Throws
/// InputError if the symmetrized matrix is asymmetric beyond 1e-10 relative,
/// i.e. the profile does not symmetrize the kernel.
Spectrum spectrum_step_operator(const RandomWalkKernel& k);

/// Spectrum of I - K diag(w).
Spectrum spectrum_step_operator(const RandomWalkLaplacian& l);

/// Spectrum of the finite walk matrix D^-1 A via D^-1/2 A D^-1/2.
Spectrum spectrum_random_walk(const Eigen::VectorXd& degree, const WeightedGraph& adjacency);

struct RwSpectra {
    Spectrum kernel;
    Spectrum laplacian;
};

/// Throws DegeneracyError naming the first part whose degree is below eps.
RwSpectra rw_spectra(const StepKernel& w, double epsilon);

/// Pads with zeros, orders both by |lambda| descending (ties: larger value
/// first) and returns the largest gap among the first m positions.
double pointwise_distance(const Spectrum& s, const Spectrum& t, std::size_t m);

inline constexpr std::size_t kDefaultTopEigenvalues = 5;

struct MomentRow {
    std::size_t k;
    double density;  // cycle homomorphism density by enumeration
    double moment;   // sum of lambda^k
};

struct MomentReport {
    std::vector<MomentRow> rows;
    double max_relative_deviation;
};

/// Undirected cycles against the symmetric step operator spectrum.
MomentReport moment_spectrum_consistency(const StepKernel& w, std::size_t kmax);
/// Directed cycles against the spectrum of a random-walk kernel.
MomentReport moment_spectrum_consistency(const RandomWalkKernel& k, std::size_t kmax);

/// One eigenvalue per line, 17 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

}  // namespace hyperlim
