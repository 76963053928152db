#include "hyperlim/randommodels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hyperlim/errors.hpp"
#include "hyperlim/hash.hpp"

namespace hyperlim {

double binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double out = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(out);
}

std::uint64_t level_seed(std::uint64_t seed, std::size_t r) { return mix_seed(seed, 0x1e7e1000ULL + r); }

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError("edge probability must lie in [0, 1]");
    }
}

}  // namespace

UniformHypergraph gen_uniform_er(std::size_t n, double p, std::size_t r, std::uint64_t seed) {
    check_probability(p);
    if (r < 2) {
        throw InputError("uniformity must be at least 2");
    }
    if (n < r) {
        throw InputError("need at least r vertices");
    }
    std::vector<Edge> edges;
    if (p > 0.0) {
        // colex order: the rank goes up by one per step
        Edge c(r);
        std::iota(c.begin(), c.end(), Vertex{0});
        std::uint64_t rank = 0;
        while (true) {
            if (unit_double(mix_seed(seed, rank)) < p) {
                edges.push_back(c);
            }
            ++rank;
            std::size_t j = 0;
            while (j < r && c[j] + 1 == (j + 1 < r ? c[j + 1] : static_cast<Vertex>(n))) {
                ++j;
            }
            if (j == r) {
                break;
            }
            ++c[j];
            for (std::size_t i = 0; i < j; ++i) {
                c[i] = static_cast<Vertex>(i);
            }
        }
    }
    return UniformHypergraph(n, r, std::move(edges));
}

UniformHypergraph gen_triangle_hypergraph(std::size_t n, double p, std::uint64_t seed) {
    if (n < 3) {
        throw InputError("need at least 3 vertices");
    }
    const auto g = gen_uniform_er(n, p, 2, seed);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) {
        adj[e[0]][e[1]] = 1;
        adj[e[1]][e[0]] = 1;
    }
    std::vector<Edge> triangles;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (!adj[u][v]) {
                continue;
            }
            for (Vertex w = v + 1; w < n; ++w) {
                if (adj[u][w] && adj[v][w]) {
                    triangles.push_back({u, v, w});
                }
            }
        }
    }
    return UniformHypergraph(n, 3, std::move(triangles));
}

Hypergraph gen_nonuniform(std::size_t n, std::span<const double> p, std::uint64_t seed) {
    if (p.empty()) {
        throw InputError("probability vector must cover at least level 2");
    }
    for (double x : p) {
        check_probability(x);
    }
    if (!(p.back() > 0.0)) {
        throw InputError("top level probability must be positive");
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::size_t r = i + 2;
        if (p[i] == 0.0) {
            continue;
        }
        const auto level = gen_uniform_er(n, p[i], r, level_seed(seed, r));
        edges.insert(edges.end(), level.edges().begin(), level.edges().end());
    }
    return Hypergraph(n, std::move(edges));
}

// ---------------------------------------------------------------- step objects

namespace {

class UnitStream {
public:
    explicit UnitStream(std::uint64_t seed) : rng_(seed) {}
    double next() { return unit_double(rng_()); }

private:
    std::mt19937_64 rng_;
};

Partition draw_partition(std::size_t k, UnitStream& stream, bool random) {
    if (k == 0) {
        throw InputError("need at least one part");
    }
    if (!random) {
        return Partition::equal(k);
    }
    std::vector<double> w(k);
    double total = 0.0;
    for (double& x : w) {
        x = 0.1 + stream.next();  // bounded away from zero
        total += x;
    }
    for (double& x : w) {
        x /= total;
    }
    return Partition(std::move(w));
}

}  // namespace

StepKernel gen_random_kernel(std::size_t k, std::uint64_t seed, const RandomStepOptions& options) {
    UnitStream stream(seed);
    auto part = draw_partition(k, stream, options.random_partition);
    const auto n = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd u(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            u(i, j) = stream.next();
        }
    }
    if (options.symmetric) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (u(i, j) + u(j, i));
                u(i, j) = avg;
                u(j, i) = avg;
            }
        }
    }
    return StepKernel(std::move(part), std::move(u));
}

StepTensor gen_random_tensor(std::size_t k, std::size_t order, std::uint64_t seed, const RandomStepOptions& options) {
    if (order < 2) {
        throw InputError("tensor order must be at least 2");
    }
    UnitStream stream(seed);
    auto part = draw_partition(k, stream, options.random_partition);
    std::size_t total = 1;
    for (std::size_t i = 0; i < order; ++i) {
        total *= k;
    }
    std::vector<double> u(total);
    for (double& x : u) {
        x = stream.next();
    }
    auto flat = [k](const std::vector<std::size_t>& idx) {
        std::size_t f = 0;
        for (std::size_t i : idx) {
            f = f * k + i;
        }
        return f;
    };
    std::vector<double> values(total, 0.0);
    std::vector<std::size_t> index(order, 0);
    std::vector<std::size_t> perm(order);
    do {
        if (std::is_sorted(index.begin(), index.end())) {
            // average over all order! rearrangements, then write the orbit
            double sum = 0.0;
            std::size_t count = 0;
            perm = index;
            do {
                sum += u[flat(perm)];
                ++count;
            } while (std::next_permutation(perm.begin(), perm.end()));
            // next_permutation visits distinct rearrangements only; every one
            // has the same stabilizer size, so this equals the group average
            const double avg = sum / static_cast<double>(count);
            perm = index;
            do {
                values[flat(perm)] = avg;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        std::size_t pos = order;
        while (pos-- > 0) {
            if (++index[pos] < k) {
                break;
            }
            index[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) {
            break;
        }
    } while (true);
    return StepTensor(std::move(part), order, std::move(values));
}

StepHypergraphon3 gen_random_hypergraphon3(std::size_t k, std::uint64_t seed, const RandomStepOptions& options) {
    UnitStream stream(seed);
    auto part = draw_partition(k, stream, options.random_partition);
    const std::size_t total = k * k * k * k * k * k;
    std::vector<double> u(total);
    for (double& x : u) {
        x = stream.next();
    }
    static constexpr std::array<std::array<std::size_t, 3>, 6> perms = {{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    }};
    auto flat = [k](const StepHypergraphon3::Index& idx) {
        std::size_t f = 0;
        for (std::size_t i : idx) {
            f = f * k + i;
        }
        return f;
    };
    std::vector<double> values(total, 0.0);
    std::vector<char> done(total, 0);
    StepHypergraphon3::Index idx{};
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t rest = f;
        for (std::size_t pos = 6; pos-- > 0;) {
            idx[pos] = rest % k;
            rest /= k;
        }
        if (done[f]) {
            continue;
        }
        double sum = 0.0;
        for (const auto& sigma : perms) {
            sum += u[flat(StepHypergraphon3::act(sigma, idx))];
        }
        const double avg = sum / 6.0;
        for (const auto& sigma : perms) {
            const std::size_t g = flat(StepHypergraphon3::act(sigma, idx));
            values[g] = avg;
            done[g] = 1;
        }
    }
    return StepHypergraphon3(std::move(part), std::move(values), std::max(k, StepHypergraphon3::default_max_parts));
}

}  // namespace hyperlim
