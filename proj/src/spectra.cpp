#include "hyperlim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "hyperlim/errors.hpp"
#include "hyperlim/format.hpp"
#include "hyperlim/homomorphism.hpp"

namespace hyperlim {

double Spectrum::sum() const noexcept {
    double s = 0.0;
    for (double x : eigenvalues) {
        s += x;
    }
    return s;
}

namespace {

Spectrum solve_symmetric(const Eigen::MatrixXd& a) {
    Spectrum s;
    if (a.rows() == 0) {
        return s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigensolver did not converge");
    }
    const auto& ev = solver.eigenvalues();
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

Eigen::VectorXd sqrt_weights(const Partition& p) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = std::sqrt(p[i]);
    }
    return out;
}

// sqrt(w_i w_j) sqrt(s_i / s_j) K_ij: similar to K diag(w) and symmetric
// whenever s_i K_ij = s_j K_ji.
Eigen::MatrixXd symmetrized(const RandomWalkKernel& k) {
    const auto& part = k.kernel.partition();
    const auto& s = k.degree.values;
    const auto n = static_cast<Eigen::Index>(part.size());
    if (s.size() != n) {
        throw InputError("symmetrizing profile has the wrong length");
    }
    const Eigen::VectorXd sw = sqrt_weights(part);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (s(i) > 0.0 && s(j) > 0.0) {
                m(i, j) = sw(i) * sw(j) * std::sqrt(s(i) / s(j)) * k.kernel.values()(i, j);
            } else {
                m(i, j) = 0.0;
            }
        }
    }
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    const double residue = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (residue > 1e-10 * scale) {
        throw InputError("degree profile does not symmetrize the kernel (residue " + format12(residue) + ")");
    }
    return 0.5 * (m + m.transpose());
}

}  // namespace

Spectrum spectrum_symmetric(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a != a.transpose()) {
        throw InputError("spectrum_symmetric needs a symmetric matrix");
    }
    return solve_symmetric(a);
}

Spectrum spectrum_symmetric(const WeightedGraph& a) { return solve_symmetric(a.weights()); }

Spectrum spectrum_step_operator(const StepKernel& w) {
    if (!w.symmetric()) {
        throw InputError("asymmetric kernel: supply its symmetrizing degree profile (RandomWalkKernel)");
    }
    const Eigen::VectorXd sw = sqrt_weights(w.partition());
    Eigen::MatrixXd m = sw.asDiagonal() * w.values() * sw.asDiagonal();
    // rounding can break bitwise symmetry of the product
    m = 0.5 * (m + m.transpose());
    return solve_symmetric(m);
}

Spectrum spectrum_step_operator(const RandomWalkKernel& k) { return solve_symmetric(symmetrized(k)); }

Spectrum spectrum_step_operator(const RandomWalkLaplacian& l) {
    const Eigen::MatrixXd m = symmetrized(l.walk);
    return solve_symmetric(Eigen::MatrixXd::Identity(m.rows(), m.cols()) - m);
}

Spectrum spectrum_random_walk(const Eigen::VectorXd& degree, const WeightedGraph& adjacency) {
    const auto n = static_cast<Eigen::Index>(adjacency.num_vertices());
    if (degree.size() != n) {
        throw InputError("degree vector and adjacency matrix sizes differ");
    }
    Eigen::VectorXd inv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(degree(i) > 0.0)) {
            throw DegeneracyError(static_cast<std::size_t>(i),
                                  "vertex " + std::to_string(i) + " has nonpositive degree");
        }
        inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
    }
    Eigen::MatrixXd m = inv_sqrt.asDiagonal() * adjacency.weights() * inv_sqrt.asDiagonal();
    m = 0.5 * (m + m.transpose());
    return solve_symmetric(m);
}

RwSpectra rw_spectra(const StepKernel& w, double epsilon) {
    const auto walk = random_walk_kernel(w, epsilon);
    if (!walk.assumption_holds) {
        const auto& d = walk.degree.values;
        Eigen::Index bad = 0;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (d(i) < epsilon) {
                bad = i;
                break;
            }
        }
        throw DegeneracyError(static_cast<std::size_t>(bad), "part " + std::to_string(bad) + " has degree " +
                                                                 format12(d(bad)) + " below epsilon " +
                                                                 format12(epsilon));
    }
    RwSpectra out;
    out.kernel = spectrum_step_operator(walk);
    out.laplacian = spectrum_step_operator(RandomWalkLaplacian{walk});
    return out;
}

namespace {

std::vector<double> by_modulus(const Spectrum& s, std::size_t n) {
    std::vector<double> v = s.eigenvalues;
    v.resize(std::max(n, v.size()), 0.0);
    std::stable_sort(v.begin(), v.end(), [](double a, double b) {
        const double fa = std::abs(a);
        const double fb = std::abs(b);
        if (fa != fb) {
            return fa > fb;
        }
        return a > b;
    });
    return v;
}

}  // namespace

double pointwise_distance(const Spectrum& s, const Spectrum& t, std::size_t m) {
    if (m < 1) {
        throw InputError("pointwise_distance needs m >= 1");
    }
    const std::size_t n = std::max({s.size(), t.size(), m});
    const auto a = by_modulus(s, n);
    const auto b = by_modulus(t, n);
    double out = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out = std::max(out, std::abs(a[i] - b[i]));
    }
    return out;
}

namespace {

MomentReport compare(const Spectrum& s, std::size_t kmax, const std::function<double(std::size_t)>& density) {
    if (kmax < 3) {
        throw InputError("kmax must be at least 3");
    }
    MomentReport report{{}, 0.0};
    for (std::size_t k = 3; k <= kmax; ++k) {
        double moment = 0.0;
        double absolute = 0.0;  // sum |lambda|^k, the scale when odd moments cancel
        for (double x : s.eigenvalues) {
            moment += std::pow(x, static_cast<double>(k));
            absolute += std::pow(std::abs(x), static_cast<double>(k));
        }
        const double t = density(k);
        const double scale = std::max({std::abs(t), absolute, 1e-300});
        report.max_relative_deviation = std::max(report.max_relative_deviation, std::abs(t - moment) / scale);
        report.rows.push_back({k, t, moment});
    }
    return report;
}

}  // namespace

MomentReport moment_spectrum_consistency(const StepKernel& w, std::size_t kmax) {
    return compare(spectrum_step_operator(w), kmax,
                   [&](std::size_t k) { return t_density(cycle_graph(k), w); });
}

MomentReport moment_spectrum_consistency(const RandomWalkKernel& walk, std::size_t kmax) {
    return compare(spectrum_step_operator(walk), kmax,
                   [&](std::size_t k) { return t_density(directed_cycle(k), walk.kernel); });
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    for (double x : s.eigenvalues) {
        out << format17(x) << '\n';
    }
}

}  // namespace hyperlim
