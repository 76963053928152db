#pragma once

// Hand-rolled seeded generators and brute-force oracles shared by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "hyperlim/hypergraph.hpp"

namespace testing_support {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t m) { return static_cast<std::size_t>(next() % m); }
    bool coin(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

// All k-subsets of {0..n-1}, lexicographic.
inline std::vector<hyperlim::Edge> subsets(std::size_t n, std::size_t k) {
    std::vector<hyperlim::Edge> out;
    if (k > n) {
        return out;
    }
    std::vector<char> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
        hyperlim::Edge e;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) {
                e.push_back(static_cast<hyperlim::Vertex>(i));
            }
        }
        out.push_back(e);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

inline hyperlim::UniformHypergraph random_uniform(Rng& rng, std::size_t n, std::size_t r, double p) {
    std::vector<hyperlim::Edge> edges;
    for (auto& e : subsets(n, r)) {
        if (rng.coin(p)) {
            edges.push_back(e);
        }
    }
    return hyperlim::UniformHypergraph(n, r, std::move(edges));
}

// Adjacency tensor entry: 1 iff the indices are distinct and form an edge.
inline int tensor_entry(const hyperlim::Hypergraph& h, std::vector<hyperlim::Vertex> idx) {
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
        return 0;
    }
    return h.contains_edge(idx) ? 1 : 0;
}

// Calls f on every tuple in {0..n-1}^len.
template <class F>
void for_each_tuple(std::size_t n, std::size_t len, F&& f) {
    std::vector<hyperlim::Vertex> t(len, 0);
    while (true) {
        f(t);
        std::size_t pos = len;
        while (pos-- > 0) {
            if (++t[pos] < n) {
                break;
            }
            t[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) {
            return;
        }
    }
}

inline double factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) {
        f *= static_cast<double>(i);
    }
    return f;
}

inline bool bitwise_symmetric(const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace testing_support
