#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperlim/stepfunctions.hpp"

namespace hyperlim {

enum class NormMethod { exact, heuristic };

std::string to_string(NormMethod m);

/// Norm value with its provenance. Heuristic values are lower bounds on the
/// true supremum.
struct NormValue {
    double value;
    NormMethod method;
    bool lower_bound() const noexcept { return method == NormMethod::heuristic; }
};

inline constexpr std::size_t kCutNormCap = 20;

/// sup over f, g: [0,1] -> [0,1] of |int W f g|. Enumerates f over the cube
/// vertices and picks g greedily. Throws CapacityError when k > cap.
double cut_norm_exact(const StepKernel& w, std::size_t cap = kCutNormCap);

struct HeuristicCut {
    double value;
    std::vector<bool> f;  // argmax part indicators
    std::vector<bool> g;
};

/// Alternating maximization from `restarts` starting points (restart 0 starts
/// from f = 1). A lower bound on cut_norm_exact.
HeuristicCut cut_norm_heuristic(const StepKernel& w, std::size_t restarts, std::uint64_t seed);

/// Exact mode enumerates the first r-1 functions, so it needs k*(r-1) <= 20.
NormValue one_cut_norm(const StepTensor& w, NormMethod mode, std::uint64_t seed = 0, std::size_t restarts = 8);

/// Exact cap for two_cut_norm: the first two test functions are enumerated
/// over {0,1}^(k^3) each.
inline constexpr std::size_t kTwoCutExactMaxParts = 2;

struct TwoCutOptions {
    // Restrict test functions to f(a, b, c) = f(b, a, c).
    bool symmetric_tests = false;
    std::size_t restarts = 8;
};

NormValue two_cut_norm(const StepHypergraphon3& d, NormMethod mode, std::uint64_t seed = 0,
                       const TwoCutOptions& options = {});

enum class OverlaySearch { identity, exhaustive, annealing };

std::string to_string(OverlaySearch s);

/// Upper bound on a cut distance from permutation overlays of q-fold
/// refinements. `certified` holds when every inner norm was computed exactly;
/// otherwise the value is an estimate (inner heuristic norms are lower bounds).
struct DistanceBound {
    double value;
    NormMethod inner;
    OverlaySearch search;
    std::vector<std::size_t> permutation;  // W part matched to U part i
    std::size_t blowup;
    bool certified() const noexcept { return inner == NormMethod::exact; }
};

struct DistanceOptions {
    std::size_t blowup = 1;
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
    // Annealing is skipped (identity overlay) when its estimated number of
    // elementary operations exceeds this budget.
    double annealing_budget = 2e9;
};

/// Both kernels need equal-weight partitions; they are refined to a common
/// number of parts (least common multiple times blowup).
DistanceBound cut_distance_upper(const StepKernel& u, const StepKernel& w, const DistanceOptions& options = {});
DistanceBound one_cut_distance_upper(const StepTensor& u, const StepTensor& w, const DistanceOptions& options = {});

StepKernel refine(const StepKernel& w, std::size_t q);
StepTensor refine(const StepTensor& w, std::size_t q);

/// Entry-wise difference on a common partition.
StepKernel difference(const StepKernel& a, const StepKernel& b);
StepTensor difference(const StepTensor& a, const StepTensor& b);
StepHypergraphon3 difference(const StepHypergraphon3& a, const StepHypergraphon3& b);

StepKernel scaled(const StepKernel& a, double c);

}  // namespace hyperlim
