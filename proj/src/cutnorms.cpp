#include "hyperlim/cutnorms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "hyperlim/errors.hpp"
#include "hyperlim/hash.hpp"

namespace hyperlim {

std::string to_string(NormMethod m) { return m == NormMethod::exact ? "exact" : "heuristic"; }

std::string to_string(OverlaySearch s) {
    switch (s) {
    case OverlaySearch::identity:
        return "identity";
    case OverlaySearch::exhaustive:
        return "exhaustive";
    case OverlaySearch::annealing:
        return "annealing";
    }
    return "identity";
}

namespace {

// Integrand with the part measures folded in: a_ij = w_i w_j W_ij.
Eigen::MatrixXd measured(const StepKernel& w) {
    const Eigen::VectorXd wt = Eigen::Map<const Eigen::VectorXd>(w.partition().weights().data(),
                                                                 static_cast<Eigen::Index>(w.parts()));
    return wt.asDiagonal() * w.values() * wt.asDiagonal();
}

std::vector<double> measured(const StepTensor& w) {
    const std::size_t k = w.parts();
    const std::size_t r = w.order();
    const auto& part = w.partition().weights();
    std::vector<double> a(w.values());
    std::vector<std::size_t> index(r, 0);
    for (double& x : a) {
        double m = 1.0;
        for (std::size_t i : index) {
            m *= part[i];
        }
        x *= m;
        for (std::size_t pos = r; pos-- > 0;) {
            if (++index[pos] < k) {
                break;
            }
            index[pos] = 0;
        }
    }
    return a;
}

double best_of_signs(const double* c, std::size_t n) {
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (c[j] > 0.0) {
            pos += c[j];
        } else {
            neg -= c[j];
        }
    }
    return std::max(pos, neg);
}

std::uint64_t restart_stream(std::uint64_t seed, std::size_t restart) { return mix_seed(seed, restart); }

bool random_bit(std::uint64_t stream, std::size_t i) { return (splitmix64(stream + i) >> 63) != 0; }

}  // namespace

// ---------------------------------------------------------------- cut norm

double cut_norm_exact(const StepKernel& w, std::size_t cap) {
    const std::size_t k = w.parts();
    if (k > cap) {
        throw CapacityError("exact cut norm limited to " + std::to_string(cap) + " parts (got " +
                            std::to_string(k) + "); use cut_norm_heuristic");
    }
    const Eigen::MatrixXd a = measured(w);
    // c = f^T a, updated one Gray-code flip at a time and rebuilt every 256
    // steps so rounding cannot drift.
    std::vector<double> c(k, 0.0);
    std::vector<bool> f(k, false);
    double best = 0.0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t s = 1; s < total; ++s) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(s));
        f[bit] = !f[bit];
        if ((s & 0xff) == 0) {
            std::fill(c.begin(), c.end(), 0.0);
            for (std::size_t i = 0; i < k; ++i) {
                if (f[i]) {
                    for (std::size_t j = 0; j < k; ++j) {
                        c[j] += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    }
                }
            }
        } else {
            const double sign = f[bit] ? 1.0 : -1.0;
            for (std::size_t j = 0; j < k; ++j) {
                c[j] += sign * a(static_cast<Eigen::Index>(bit), static_cast<Eigen::Index>(j));
            }
        }
        best = std::max(best, best_of_signs(c.data(), k));
    }
    return best;
}

HeuristicCut cut_norm_heuristic(const StepKernel& w, std::size_t restarts, std::uint64_t seed) {
    if (restarts < 1) {
        throw InputError("at least one restart is required");
    }
    const std::size_t k = w.parts();
    const Eigen::MatrixXd a = measured(w);
    HeuristicCut best{0.0, std::vector<bool>(k, false), std::vector<bool>(k, false)};
    Eigen::VectorXd f(k);
    Eigen::VectorXd g(k);
    for (std::size_t restart = 0; restart < restarts; ++restart) {
        const std::uint64_t stream = restart_stream(seed, restart);
        for (double sign : {1.0, -1.0}) {
            for (std::size_t i = 0; i < k; ++i) {
                f(static_cast<Eigen::Index>(i)) = restart == 0 || random_bit(stream, i) ? 1.0 : 0.0;
            }
            double value = -1.0;
            for (int iter = 0; iter < 100; ++iter) {
                const Eigen::VectorXd col = sign * (a.transpose() * f);
                for (Eigen::Index j = 0; j < col.size(); ++j) {
                    g(j) = col(j) > 0.0 ? 1.0 : 0.0;
                }
                const Eigen::VectorXd row = sign * (a * g);
                double next = 0.0;
                for (Eigen::Index i = 0; i < row.size(); ++i) {
                    f(i) = row(i) > 0.0 ? 1.0 : 0.0;
                    next += std::max(row(i), 0.0);
                }
                if (!(next > value)) {
                    break;
                }
                value = next;
            }
            if (value > best.value) {
                best.value = value;
                for (std::size_t i = 0; i < k; ++i) {
                    best.f[i] = f(static_cast<Eigen::Index>(i)) > 0.0;
                    best.g[i] = g(static_cast<Eigen::Index>(i)) > 0.0;
                }
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------- 1-cut norm

namespace {

// Contracts the leading coordinate of `levels[m]` against indicator flips and
// recurses; the last coordinate is chosen greedily.
class OneCutEnumerator {
public:
    OneCutEnumerator(std::vector<double> a, std::size_t k, std::size_t r) : k_(k), r_(r) {
        levels_.resize(r);
        levels_[0] = std::move(a);
        std::size_t size = levels_[0].size();
        for (std::size_t m = 1; m < r; ++m) {
            size /= k;
            levels_[m].assign(size, 0.0);
        }
    }

    double run() {
        if (r_ == 1) {
            return best_of_signs(levels_[0].data(), k_);
        }
        enumerate(0);
        return best_;
    }

private:
    void enumerate(std::size_t m) {
        auto& next = levels_[m + 1];
        const auto& cur = levels_[m];
        const std::size_t slice = next.size();
        std::fill(next.begin(), next.end(), 0.0);
        std::vector<bool> f(k_, false);
        const std::uint64_t total = std::uint64_t{1} << k_;
        visit(m + 1);
        for (std::uint64_t s = 1; s < total; ++s) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(s));
            f[bit] = !f[bit];
            if ((s & 0xff) == 0) {
                std::fill(next.begin(), next.end(), 0.0);
                for (std::size_t i = 0; i < k_; ++i) {
                    if (f[i]) {
                        const double* row = cur.data() + i * slice;
                        for (std::size_t j = 0; j < slice; ++j) {
                            next[j] += row[j];
                        }
                    }
                }
            } else {
                const double sign = f[bit] ? 1.0 : -1.0;
                const double* row = cur.data() + bit * slice;
                for (std::size_t j = 0; j < slice; ++j) {
                    next[j] += sign * row[j];
                }
            }
            visit(m + 1);
        }
    }

    void visit(std::size_t level) {
        if (level + 1 == r_) {
            best_ = std::max(best_, best_of_signs(levels_[level].data(), k_));
        } else {
            enumerate(level);
        }
    }

    std::size_t k_;
    std::size_t r_;
    std::vector<std::vector<double>> levels_;
    double best_ = 0.0;
};

// Coefficient of f_m(j) with the other functions fixed.
void one_cut_coefficients(const std::vector<double>& a, std::size_t k, std::size_t r,
                          const std::vector<std::vector<char>>& fs, std::size_t m, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<std::size_t> index(r, 0);
    for (double x : a) {
        bool on = x != 0.0;
        for (std::size_t l = 0; on && l < r; ++l) {
            if (l != m && !fs[l][index[l]]) {
                on = false;
            }
        }
        if (on) {
            out[index[m]] += x;
        }
        for (std::size_t pos = r; pos-- > 0;) {
            if (++index[pos] < k) {
                break;
            }
            index[pos] = 0;
        }
    }
}

double one_cut_heuristic(const std::vector<double>& a, std::size_t k, std::size_t r, std::uint64_t seed,
                         std::size_t restarts) {
    double best = 0.0;
    std::vector<std::vector<char>> fs(r, std::vector<char>(k, 1));
    std::vector<double> coef(k);
    for (std::size_t restart = 0; restart < std::max<std::size_t>(restarts, 1); ++restart) {
        const std::uint64_t stream = restart_stream(seed, restart);
        for (double sign : {1.0, -1.0}) {
            for (std::size_t l = 0; l < r; ++l) {
                for (std::size_t i = 0; i < k; ++i) {
                    fs[l][i] = restart == 0 || random_bit(stream, l * k + i) ? 1 : 0;
                }
            }
            double value = -1.0;
            for (int sweep = 0; sweep < 100; ++sweep) {
                double next = 0.0;
                for (std::size_t m = 0; m < r; ++m) {
                    one_cut_coefficients(a, k, r, fs, m, coef);
                    next = 0.0;
                    for (std::size_t j = 0; j < k; ++j) {
                        const double c = sign * coef[j];
                        fs[m][j] = c > 0.0 ? 1 : 0;
                        next += std::max(c, 0.0);
                    }
                }
                if (!(next > value)) {
                    break;
                }
                value = next;
            }
            best = std::max(best, value);
        }
    }
    return best;
}

bool one_cut_exact_feasible(std::size_t k, std::size_t r) { return k * (r - 1) <= 20; }

}  // namespace

NormValue one_cut_norm(const StepTensor& w, NormMethod mode, std::uint64_t seed, std::size_t restarts) {
    const std::size_t k = w.parts();
    const std::size_t r = w.order();
    auto a = measured(w);
    if (mode == NormMethod::exact) {
        if (!one_cut_exact_feasible(k, r)) {
            throw CapacityError("exact 1-cut norm needs k*(r-1) <= 20 (k = " + std::to_string(k) +
                                ", r = " + std::to_string(r) + "); use heuristic mode");
        }
        OneCutEnumerator e(std::move(a), k, r);
        return {e.run(), NormMethod::exact};
    }
    return {one_cut_heuristic(a, k, r, seed, restarts), NormMethod::heuristic};
}

// ---------------------------------------------------------------- 2-cut norm

namespace {

// Which test function a 6-index feeds: f(i1, i2, i12), g(i2, i3, i23),
// h(i1, i3, i13). Cells are numbered (a*k + b)*k + c.
struct TwoCutCells {
    std::vector<std::size_t> f, g, h;
};

TwoCutCells two_cut_cells(std::size_t k) {
    TwoCutCells cells;
    const std::size_t total = k * k * k * k * k * k;
    cells.f.resize(total);
    cells.g.resize(total);
    cells.h.resize(total);
    std::size_t flat = 0;
    for (std::size_t i1 = 0; i1 < k; ++i1)
        for (std::size_t i2 = 0; i2 < k; ++i2)
            for (std::size_t i3 = 0; i3 < k; ++i3)
                for (std::size_t i12 = 0; i12 < k; ++i12)
                    for (std::size_t i13 = 0; i13 < k; ++i13)
                        for (std::size_t i23 = 0; i23 < k; ++i23) {
                            cells.f[flat] = (i1 * k + i2) * k + i12;
                            cells.g[flat] = (i2 * k + i3) * k + i23;
                            cells.h[flat] = (i1 * k + i3) * k + i13;
                            ++flat;
                        }
    return cells;
}

// Cell -> free variable. Symmetric test functions share (a, b, c) and (b, a, c).
std::vector<std::size_t> cell_orbits(std::size_t k, bool symmetric, std::size_t& count) {
    std::vector<std::size_t> orbit(k * k * k, 0);
    count = 0;
    std::vector<std::size_t> seen(k * k * k, std::numeric_limits<std::size_t>::max());
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            for (std::size_t c = 0; c < k; ++c) {
                const std::size_t cell = (a * k + b) * k + c;
                const std::size_t rep = symmetric ? (std::min(a, b) * k + std::max(a, b)) * k + c : cell;
                if (seen[rep] == std::numeric_limits<std::size_t>::max()) {
                    seen[rep] = count++;
                }
                orbit[cell] = seen[rep];
            }
        }
    }
    return orbit;
}

// Which function is left free: 0 = f, 1 = g, 2 = h.
void two_cut_coefficients(const std::vector<double>& a, const TwoCutCells& cells, const std::vector<char>& f,
                          const std::vector<char>& g, const std::vector<char>& h, int free_fn,
                          std::vector<double>& coef) {
    std::fill(coef.begin(), coef.end(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a[i];
        if (x == 0.0) {
            continue;
        }
        switch (free_fn) {
        case 0:
            if (g[cells.g[i]] && h[cells.h[i]]) coef[cells.f[i]] += x;
            break;
        case 1:
            if (f[cells.f[i]] && h[cells.h[i]]) coef[cells.g[i]] += x;
            break;
        default:
            if (f[cells.f[i]] && g[cells.g[i]]) coef[cells.h[i]] += x;
            break;
        }
    }
}

// Greedy choice of one test function for the signed objective; returns its
// value and writes the indicator.
double greedy_cells(const std::vector<double>& coef, const std::vector<std::size_t>& orbit, std::size_t orbits,
                    double sign, std::vector<char>& out, std::vector<double>& scratch) {
    scratch.assign(orbits, 0.0);
    for (std::size_t cell = 0; cell < coef.size(); ++cell) {
        scratch[orbit[cell]] += sign * coef[cell];
    }
    double value = 0.0;
    for (double s : scratch) {
        value += std::max(s, 0.0);
    }
    for (std::size_t cell = 0; cell < coef.size(); ++cell) {
        out[cell] = scratch[orbit[cell]] > 0.0 ? 1 : 0;
    }
    return value;
}

}  // namespace

NormValue two_cut_norm(const StepHypergraphon3& d, NormMethod mode, std::uint64_t seed, const TwoCutOptions& options) {
    const std::size_t k = d.parts();
    const auto& part = d.partition().weights();
    const auto cells = two_cut_cells(k);
    std::vector<double> a(d.values());
    {
        std::size_t flat = 0;
        StepHypergraphon3::Index idx{};
        for (double& x : a) {
            double m = 1.0;
            for (std::size_t i : idx) {
                m *= part[i];
            }
            x *= m;
            ++flat;
            for (std::size_t pos = 6; pos-- > 0;) {
                if (++idx[pos] < k) {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    std::size_t orbits = 0;
    const auto orbit = cell_orbits(k, options.symmetric_tests, orbits);
    const std::size_t ncells = k * k * k;
    std::vector<char> f(ncells, 1), g(ncells, 1), h(ncells, 1);
    std::vector<double> coef(ncells), scratch;

    if (mode == NormMethod::exact) {
        if (k > kTwoCutExactMaxParts) {
            throw CapacityError("exact 2-cut norm limited to " + std::to_string(kTwoCutExactMaxParts) +
                                " parts (got " + std::to_string(k) + "); use heuristic mode");
        }
        // representatives of each orbit, so bits map to cells
        const std::uint64_t total = std::uint64_t{1} << orbits;
        double best = 0.0;
        for (std::uint64_t fb = 0; fb < total; ++fb) {
            for (std::size_t cell = 0; cell < ncells; ++cell) {
                f[cell] = static_cast<char>((fb >> orbit[cell]) & 1U);
            }
            for (std::uint64_t gb = 0; gb < total; ++gb) {
                for (std::size_t cell = 0; cell < ncells; ++cell) {
                    g[cell] = static_cast<char>((gb >> orbit[cell]) & 1U);
                }
                two_cut_coefficients(a, cells, f, g, h, 2, coef);
                for (double sign : {1.0, -1.0}) {
                    best = std::max(best, greedy_cells(coef, orbit, orbits, sign, h, scratch));
                }
            }
        }
        return {best, NormMethod::exact};
    }

    double best = 0.0;
    for (std::size_t restart = 0; restart < std::max<std::size_t>(options.restarts, 1); ++restart) {
        const std::uint64_t stream = restart_stream(seed, restart);
        for (double sign : {1.0, -1.0}) {
            for (std::size_t cell = 0; cell < ncells; ++cell) {
                f[cell] = restart == 0 || random_bit(stream, orbit[cell]) ? 1 : 0;
                g[cell] = restart == 0 || random_bit(stream, orbits + orbit[cell]) ? 1 : 0;
            }
            double value = -1.0;
            for (int round = 0; round < 100; ++round) {
                for (int sweep = 0; sweep < 100; ++sweep) {
                    double next = 0.0;
                    for (int fn : {2, 0, 1}) {
                        two_cut_coefficients(a, cells, f, g, h, fn, coef);
                        auto& target = fn == 0 ? f : fn == 1 ? g : h;
                        next = greedy_cells(coef, orbit, orbits, sign, target, scratch);
                    }
                    if (!(next > value)) {
                        break;
                    }
                    value = next;
                }
                // single orbit flips of f or g with h re-chosen; restart the
                // sweeps from the first improving flip
                bool improved = false;
                for (int fn = 0; fn < 2 && !improved; ++fn) {
                    auto& target = fn == 0 ? f : g;
                    for (std::size_t o = 0; o < orbits && !improved; ++o) {
                        auto flipped = target;
                        for (std::size_t cell = 0; cell < ncells; ++cell) {
                            if (orbit[cell] == o) {
                                flipped[cell] ^= 1;
                            }
                        }
                        two_cut_coefficients(a, cells, fn == 0 ? flipped : f, fn == 1 ? flipped : g, h, 2, coef);
                        std::vector<char> h_trial(ncells);
                        const double trial = greedy_cells(coef, orbit, orbits, sign, h_trial, scratch);
                        if (trial > value + 1e-15) {
                            target = std::move(flipped);
                            h = std::move(h_trial);
                            value = trial;
                            improved = true;
                        }
                    }
                }
                if (!improved) {
                    break;
                }
            }
            best = std::max(best, value);
        }
    }
    return {best, NormMethod::heuristic};
}

// ---------------------------------------------------------------- refinement

StepKernel refine(const StepKernel& w, std::size_t q) {
    const std::size_t k = w.parts();
    Eigen::MatrixXd v(k * q, k * q);
    for (std::size_t i = 0; i < k * q; ++i) {
        for (std::size_t j = 0; j < k * q; ++j) {
            v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                w.values()(static_cast<Eigen::Index>(i / q), static_cast<Eigen::Index>(j / q));
        }
    }
    return StepKernel(w.partition().refine(q), std::move(v));
}

StepTensor refine(const StepTensor& w, std::size_t q) {
    const std::size_t k = w.parts();
    const std::size_t kq = k * q;
    const std::size_t r = w.order();
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
        total *= kq;
    }
    std::vector<double> values(total);
    std::vector<std::size_t> index(r, 0);
    std::vector<std::size_t> coarse(r);
    for (double& x : values) {
        for (std::size_t i = 0; i < r; ++i) {
            coarse[i] = index[i] / q;
        }
        x = w.at(coarse);
        for (std::size_t pos = r; pos-- > 0;) {
            if (++index[pos] < kq) {
                break;
            }
            index[pos] = 0;
        }
    }
    return StepTensor(w.partition().refine(q), r, std::move(values));
}

StepKernel difference(const StepKernel& a, const StepKernel& b) {
    if (!(a.partition() == b.partition())) {
        throw InputError("kernels live on different partitions");
    }
    return StepKernel(a.partition(), a.values() - b.values());
}

StepTensor difference(const StepTensor& a, const StepTensor& b) {
    if (!(a.partition() == b.partition()) || a.order() != b.order()) {
        throw InputError("tensors live on different partitions or orders");
    }
    std::vector<double> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = a.values()[i] - b.values()[i];
    }
    return StepTensor(a.partition(), a.order(), std::move(v));
}

StepHypergraphon3 difference(const StepHypergraphon3& a, const StepHypergraphon3& b) {
    if (!(a.partition() == b.partition())) {
        throw InputError("hypergraphons live on different partitions");
    }
    std::vector<double> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = a.values()[i] - b.values()[i];
    }
    return StepHypergraphon3(a.partition(), std::move(v), std::max(a.parts(), StepHypergraphon3::default_max_parts));
}

StepKernel scaled(const StepKernel& a, double c) { return StepKernel(a.partition(), c * a.values()); }

// ---------------------------------------------------------------- distances

namespace {

std::size_t common_parts(std::size_t ku, std::size_t kw, std::size_t q) {
    if (q < 1) {
        throw InputError("blowup must be at least 1");
    }
    return std::lcm(ku, kw) * q;
}

// Minimizes objective(perm) over permutations of [k].
DistanceBound search_overlays(std::size_t k, const std::function<double(const std::vector<std::size_t>&)>& objective,
                              NormMethod inner, double eval_cost, const DistanceOptions& options, std::size_t blowup) {
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    DistanceBound out{objective(perm), inner, OverlaySearch::identity, perm, blowup};
    if (out.value == 0.0 || k <= 1) {
        return out;
    }
    double factorial = 1.0;
    for (std::size_t i = 2; i <= k; ++i) {
        factorial *= static_cast<double>(i);
    }
    if (k <= 8 && factorial * eval_cost <= options.annealing_budget) {
        out.search = OverlaySearch::exhaustive;
        while (std::next_permutation(perm.begin(), perm.end())) {
            const double v = objective(perm);
            if (v < out.value) {
                out.value = v;
                out.permutation = perm;
            }
        }
        return out;
    }
    const std::size_t iterations = 200 * k;
    if (static_cast<double>(iterations) * eval_cost > options.annealing_budget) {
        return out;
    }
    out.search = OverlaySearch::annealing;
    std::mt19937_64 rng(mix_seed(options.seed, 0x5eed));
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    double current = out.value;
    double temperature = 0.1 * current;
    for (std::size_t it = 0; it < iterations; ++it) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j) {
            j = (j + 1) % k;
        }
        std::swap(perm[i], perm[j]);
        const double candidate = objective(perm);
        const double delta = candidate - current;
        const double u = unit_double(rng());
        if (delta <= 0.0 || (temperature > 0.0 && u < std::exp(-delta / temperature))) {
            current = candidate;
            if (candidate < out.value) {
                out.value = candidate;
                out.permutation = perm;
            }
        } else {
            std::swap(perm[i], perm[j]);
        }
        temperature *= 0.995;
    }
    return out;
}

}  // namespace

DistanceBound cut_distance_upper(const StepKernel& u, const StepKernel& w, const DistanceOptions& options) {
    if (!u.partition().is_equal() || !w.partition().is_equal()) {
        throw InputError("cut distance bounds need equal-weight partitions");
    }
    const std::size_t k = common_parts(u.parts(), w.parts(), options.blowup);
    const StepKernel ur = refine(u, k / u.parts());
    const StepKernel wr = refine(w, k / w.parts());
    const bool exact = k <= kCutNormCap;
    const NormMethod inner = exact ? NormMethod::exact : NormMethod::heuristic;
    const auto& uv = ur.values();
    const auto& wv = wr.values();
    auto objective = [&](const std::vector<std::size_t>& perm) {
        Eigen::MatrixXd dv(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                dv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    uv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                    wv(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
            }
        }
        const StepKernel d(ur.partition(), std::move(dv));
        return exact ? cut_norm_exact(d) : cut_norm_heuristic(d, options.restarts, options.seed).value;
    };
    const double kd = static_cast<double>(k);
    const double cost = exact ? std::ldexp(kd, static_cast<int>(k)) : static_cast<double>(options.restarts) * 40.0 * kd * kd;
    return search_overlays(k, objective, inner, cost, options, options.blowup);
}

DistanceBound one_cut_distance_upper(const StepTensor& u, const StepTensor& w, const DistanceOptions& options) {
    if (u.order() != w.order()) {
        throw InputError("tensors of different orders");
    }
    if (!u.partition().is_equal() || !w.partition().is_equal()) {
        throw InputError("cut distance bounds need equal-weight partitions");
    }
    const std::size_t k = common_parts(u.parts(), w.parts(), options.blowup);
    const std::size_t r = u.order();
    const StepTensor ur = u.parts() == k ? u : refine(u, k / u.parts());
    const StepTensor wr = w.parts() == k ? w : refine(w, k / w.parts());
    const bool exact = one_cut_exact_feasible(k, r);
    const NormMethod inner = exact ? NormMethod::exact : NormMethod::heuristic;
    const std::size_t total = ur.values().size();
    std::vector<std::size_t> index(r);
    std::vector<std::size_t> mapped(r);
    auto objective = [&](const std::vector<std::size_t>& perm) {
        std::vector<double> dv(total);
        std::fill(index.begin(), index.end(), 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            for (std::size_t i = 0; i < r; ++i) {
                mapped[i] = perm[index[i]];
            }
            dv[flat] = ur.values()[flat] - wr.at(mapped);
            for (std::size_t pos = r; pos-- > 0;) {
                if (++index[pos] < k) {
                    break;
                }
                index[pos] = 0;
            }
        }
        const StepTensor d(ur.partition(), r, std::move(dv));
        return one_cut_norm(d, inner, options.seed, options.restarts).value;
    };
    const double kd = static_cast<double>(k);
    const double entries = std::pow(kd, static_cast<double>(r));
    const double cost = exact ? std::ldexp(kd, static_cast<int>(k * (r - 1))) + entries
                              : static_cast<double>(options.restarts) * 20.0 * static_cast<double>(r) * entries;
    return search_overlays(k, objective, inner, cost, options, options.blowup);
}

}  // namespace hyperlim
