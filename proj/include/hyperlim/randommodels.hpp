#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "hyperlim/hypergraph.hpp"
#include "hyperlim/stepfunctions.hpp"

namespace hyperlim {

/// C(n, k) as a double (exact below 2^53).
double binomial(std::size_t n, std::size_t k);

/// Seed of level r inside gen_nonuniform.
std::uint64_t level_seed(std::uint64_t seed, std::size_t r);

/// Each r-subset enters independently with probability p. The decision for
/// the subset of colexicographic rank q uses splitmix64 keyed by (seed, q),
/// so it does not depend on enumeration order.
UniformHypergraph gen_uniform_er(std::size_t n, double p, std::size_t r, std::uint64_t seed);

/// Triangles of gen_uniform_er(n, p, 2, seed).
UniformHypergraph gen_triangle_hypergraph(std::size_t n, double p, std::uint64_t seed);

/// `p` holds p_2, ..., p_R; level r uses level_seed(seed, r).
Hypergraph gen_nonuniform(std::size_t n, std::span<const double> p, std::uint64_t seed);

struct RandomStepOptions {
    bool symmetric = true;          // kernels only
    bool random_partition = false;  // otherwise equal parts
};

/// Uniform [0,1] values averaged over the symmetry orbit of each index; the
/// average is computed once per orbit so the invariance is exact.
StepKernel gen_random_kernel(std::size_t k, std::uint64_t seed, const RandomStepOptions& options = {});
StepTensor gen_random_tensor(std::size_t k, std::size_t order, std::uint64_t seed,
                             const RandomStepOptions& options = {});
StepHypergraphon3 gen_random_hypergraphon3(std::size_t k, std::uint64_t seed, const RandomStepOptions& options = {});

}  // namespace hyperlim
