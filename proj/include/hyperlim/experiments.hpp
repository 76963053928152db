#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlim {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentRecord {
    std::string experiment;
    std::string model;
    std::size_t n;
    std::int64_t seed;  // -1 marks a row aggregated over seeds
    std::string statistic;
    double value;
};

bool operator<(const ExperimentRecord& a, const ExperimentRecord& b);

/// Empty / zero fields fall back to the per-experiment defaults.
struct ExperimentConfig {
    std::vector<std::size_t> sizes;
    std::size_t seeds = 0;        // trials per size (pairs for the audits)
    std::uint64_t base_seed = 0;
    double p = -1.0;              // edge probability
    std::vector<double> levels;   // p_2..p_R for rw-equivalence
};

const std::vector<std::string>& experiment_names();

/// Throws InputError on an unknown name.
std::vector<ExperimentRecord> run_experiment(const std::string& name, const ExperimentConfig& config);

/// Header, rows sorted by key, values with 12 significant digits, trailing
/// metadata comment.
void write_experiment_csv(std::ostream& out, std::vector<ExperimentRecord> records);

/// Seed of one trial, derived from the base seed, a model tag, the size and
/// the trial index.
std::uint64_t trial_seed(std::uint64_t base, const std::string& model, std::size_t n, std::size_t trial);

/// max_x |F_emp(x) - F(x)| over integer x for Binomial(trials, p).
double ks_binomial(const std::vector<std::size_t>& samples, std::size_t trials, double p);

}  // namespace hyperlim
