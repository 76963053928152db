#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "hyperlim/cutnorms.hpp"
#include "hyperlim/errors.hpp"
#include "hyperlim/randommodels.hpp"

using namespace hyperlim;
using testing_support::Rng;

namespace {

// Both test functions enumerated.
double brute_cut(const StepKernel& w) {
    const std::size_t k = w.parts();
    const auto& p = w.partition();
    double best = 0;
    for (std::uint32_t f = 0; f < (1u << k); ++f) {
        for (std::uint32_t g = 0; g < (1u << k); ++g) {
            double s = 0;
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    if ((f >> i & 1) && (g >> j & 1)) {
                        s += w.values()(i, j) * p[i] * p[j];
                    }
                }
            }
            best = std::max(best, std::abs(s));
        }
    }
    return best;
}

// All r indicator functions enumerated.
double brute_one_cut(const StepTensor& w) {
    const std::size_t k = w.parts();
    const std::size_t r = w.order();
    const auto& p = w.partition();
    double best = 0;
    testing_support::for_each_tuple(std::size_t{1} << k, r, [&](const std::vector<Vertex>& masks) {
        double s = 0;
        testing_support::for_each_tuple(k, r, [&](const std::vector<Vertex>& idx) {
            double m = 1;
            for (std::size_t a = 0; a < r; ++a) {
                if (!(masks[a] >> idx[a] & 1)) {
                    return;
                }
                m *= p[idx[a]];
            }
            std::vector<std::size_t> id(idx.begin(), idx.end());
            s += w.at(id) * m;
        });
        best = std::max(best, std::abs(s));
    });
    return best;
}

// f and h enumerated, g greedy; f(x1,x2,x12) g(x2,x3,x23) h(x1,x3,x13).
double brute_two_cut(const StepHypergraphon3& d) {
    const std::size_t k = d.parts();
    const std::size_t k3 = k * k * k;
    const auto& p = d.partition();
    auto slot = [k](std::size_t a, std::size_t b, std::size_t c) { return (a * k + b) * k + c; };
    double best = 0;
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << k3); ++f) {
        for (std::uint64_t h = 0; h < (std::uint64_t{1} << k3); ++h) {
            std::vector<double> coef(k3, 0.0);
            testing_support::for_each_tuple(k, 6, [&](const std::vector<Vertex>& t) {
                const std::size_t x1 = t[0], x2 = t[1], x3 = t[2], x12 = t[3], x13 = t[4], x23 = t[5];
                if (!(f >> slot(x1, x2, x12) & 1) || !(h >> slot(x1, x3, x13) & 1)) {
                    return;
                }
                double m = 1;
                for (auto x : t) {
                    m *= p[x];
                }
                coef[slot(x2, x3, x23)] += d.at({x1, x2, x3, x12, x13, x23}) * m;
            });
            double pos = 0;
            double neg = 0;
            for (double c : coef) {
                pos += std::max(c, 0.0);
                neg += std::min(c, 0.0);
            }
            best = std::max({best, pos, -neg});
        }
    }
    return best;
}

StepKernel random_signed_kernel(Rng& rng, std::size_t k, bool equal_parts = false) {
    const auto a = gen_random_kernel(k, rng.next(), {rng.coin(0.5), !equal_parts});
    const auto b = gen_random_kernel(k, rng.next(), {rng.coin(0.5), false});
    return StepKernel(a.partition(), a.values() - b.values());
}

}  // namespace

TEST_CASE("cut norm examples") {
    CHECK(cut_norm_exact(StepKernel(Partition::equal(3), Eigen::MatrixXd::Zero(3, 3))) == 0.0);
    CHECK(cut_norm_exact(StepKernel(Partition::equal(4), Eigen::MatrixXd::Constant(4, 4, 0.3))) ==
          doctest::Approx(0.3).epsilon(1e-15));
    Eigen::MatrixXd m(2, 2);
    m << 1, -1, -1, 1;
    CHECK(cut_norm_exact(StepKernel(Partition::equal(2), m)) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(cut_norm_exact(StepKernel(Partition::equal(21), Eigen::MatrixXd::Zero(21, 21))), CapacityError);
}

TEST_CASE("exact cut norm against full enumeration and algebraic properties") {
    Rng rng(1);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 1 + rng.below(7);
        const auto w = random_signed_kernel(rng, k);
        const double c = cut_norm_exact(w);
        CHECK(c == doctest::Approx(brute_cut(w)).epsilon(1e-12));
        CHECK(cut_norm_exact(scaled(w, -1.0)) == doctest::Approx(c).epsilon(1e-12));
        CHECK(cut_norm_exact(scaled(w, 2.0)) == doctest::Approx(2 * c).epsilon(1e-12));
        CHECK(cut_norm_exact(scaled(w, -0.5)) == doctest::Approx(0.5 * c).epsilon(1e-12));
        if (w.symmetric()) {
            CHECK(cut_norm_exact(StepKernel(w.partition(), w.values().transpose())) ==
                  doctest::Approx(c).epsilon(1e-12));
        }
        const auto u = StepKernel(w.partition(), random_signed_kernel(rng, k).values());
        const auto sum = StepKernel(w.partition(), w.values() + u.values());
        CHECK(cut_norm_exact(sum) <= c + cut_norm_exact(u) + 1e-12);
    }
}

TEST_CASE("heuristic cut norm") {
    const auto c = StepKernel(Partition::equal(5), Eigen::MatrixXd::Constant(5, 5, 0.4));
    CHECK(cut_norm_heuristic(c, 1, 0).value == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(cut_norm_heuristic(scaled(c, 0.0), 3, 0).value == 0.0);

    Rng rng(2);
    int hits = 0;
    const int total = 200;
    for (int trial = 0; trial < total; ++trial) {
        const std::size_t k = 1 + rng.below(12);
        const auto w = random_signed_kernel(rng, k);
        const double exact = cut_norm_exact(w);
        const auto h = cut_norm_heuristic(w, 8, rng.next());
        CHECK(h.value <= exact + 1e-12);
        hits += h.value >= exact - 1e-12;
    }
    CHECK(hits >= 190);
}

TEST_CASE("one-cut norm") {
    const std::vector<double> c(27, 0.6);
    const StepTensor t(Partition::equal(3), 3, c);
    CHECK(one_cut_norm(t, NormMethod::exact).value == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(one_cut_norm(StepTensor(Partition::equal(3), 3, std::vector<double>(27, 0.0)), NormMethod::exact).value ==
          0.0);

    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 1 + rng.below(6);
        const auto w = random_signed_kernel(rng, k);
        const auto sym = StepKernel(w.partition(), 0.5 * (w.values() + w.values().transpose()));
        const auto v = one_cut_norm(to_tensor(sym), NormMethod::exact);
        CHECK(v.method == NormMethod::exact);
        CHECK(std::abs(v.value - cut_norm_exact(sym)) <= 1e-12);
    }
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 1 + rng.below(3);
        const auto a = gen_random_tensor(k, 3, rng.next(), {true, true});
        const auto b = gen_random_tensor(k, 3, rng.next(), {true, false});
        const auto d = difference(a, StepTensor(a.partition(), 3, b.values()));
        const auto exact = one_cut_norm(d, NormMethod::exact);
        CHECK(exact.value == doctest::Approx(brute_one_cut(d)).epsilon(1e-12));
        const auto h = one_cut_norm(d, NormMethod::heuristic, rng.next());
        CHECK(h.lower_bound());
        CHECK(h.value <= exact.value + 1e-12);
    }
    CHECK_THROWS_AS(one_cut_norm(StepTensor(Partition::equal(11), 3, std::vector<double>(1331, 0.0)),
                                 NormMethod::exact),
                    CapacityError);
}

TEST_CASE("two-cut norm") {
    const std::vector<double> z(64, 0.0);
    CHECK(two_cut_norm(StepHypergraphon3(Partition::equal(2), z), NormMethod::exact).value == 0.0);
    const std::vector<double> c(64, 0.45);
    CHECK(two_cut_norm(StepHypergraphon3(Partition::equal(2), c), NormMethod::exact).value ==
          doctest::Approx(0.45).epsilon(1e-14));
    CHECK_THROWS_AS(two_cut_norm(StepHypergraphon3(Partition::equal(3), std::vector<double>(729, 0.0)),
                                 NormMethod::exact),
                    CapacityError);

    Rng rng(4);
    int hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = gen_random_hypergraphon3(2, rng.next(), {true, rng.coin(0.5)});
        const auto b = gen_random_hypergraphon3(2, rng.next(), {true, false});
        const auto d = difference(a, StepHypergraphon3(a.partition(), b.values()));
        const auto exact = two_cut_norm(d, NormMethod::exact);
        const auto h = two_cut_norm(d, NormMethod::heuristic, rng.next());
        CHECK(h.value <= exact.value + 1e-12);
        hits += h.value >= exact.value - 1e-12;
        if (trial < 4) {
            CHECK(exact.value == doctest::Approx(brute_two_cut(d)).epsilon(1e-12));
        }
    }
    CHECK(hits >= 90);
}

TEST_CASE("cut distance upper bounds") {
    Rng rng(5);
    const auto w = gen_random_kernel(4, 77);
    CHECK(cut_distance_upper(w, w).value == 0.0);

    // relabel the parts
    const std::vector<int> perm{2, 0, 3, 1};
    Eigen::MatrixXd pv(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            pv(i, j) = w.values()(perm[i], perm[j]);
        }
    }
    const auto d = cut_distance_upper(w, StepKernel(Partition::equal(4), pv));
    CHECK(d.value <= 1e-15);
    CHECK(d.search == OverlaySearch::exhaustive);
    CHECK(d.certified());

    const StepKernel p(Partition::equal(2), Eigen::MatrixXd::Constant(2, 2, 0.7));
    const StepKernel q(Partition::equal(3), Eigen::MatrixXd::Constant(3, 3, 0.2));
    CHECK(cut_distance_upper(p, q).value == doctest::Approx(0.5).epsilon(1e-12));
    DistanceOptions opts;
    opts.blowup = 2;
    CHECK(cut_distance_upper(p, q, opts).blowup == 2);

    const auto big = gen_random_kernel(10, 1);
    const auto big2 = gen_random_kernel(10, 2);
    const auto ann = cut_distance_upper(big, big2);
    CHECK(ann.search == OverlaySearch::annealing);
    CHECK(ann.value <= cut_norm_exact(difference(big, big2)) + 1e-12);
    CHECK(ann.value == cut_distance_upper(big, big2).value);

    CHECK_THROWS_AS(cut_distance_upper(gen_random_kernel(3, 1, {true, true}), w), InputError);
}

TEST_CASE("one-cut distance upper bounds") {
    const auto t = gen_random_tensor(3, 3, 9);
    CHECK(one_cut_distance_upper(t, t).value == 0.0);
    const StepTensor a(Partition::equal(2), 3, std::vector<double>(8, 0.9));
    const StepTensor b(Partition::equal(2), 3, std::vector<double>(8, 0.15));
    CHECK(one_cut_distance_upper(a, b).value == doctest::Approx(0.75).epsilon(1e-12));

    const std::vector<std::size_t> perm{1, 2, 0};
    std::vector<double> pv(27);
    testing_support::for_each_tuple(3, 3, [&](const std::vector<Vertex>& i) {
        const std::array<std::size_t, 3> src{perm[i[0]], perm[i[1]], perm[i[2]]};
        pv[(i[0] * 3 + i[1]) * 3 + i[2]] = t.at(src);
    });
    CHECK(one_cut_distance_upper(t, StepTensor(Partition::equal(3), 3, pv)).value <= 1e-15);
}

TEST_CASE("lipschitz lemmas on small random pairs") {
    Rng rng(6);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 1 + rng.below(5);
        const auto u = gen_random_kernel(k, rng.next());
        const auto w = gen_random_kernel(k, rng.next());
        const double eps = std::min(degree_profile(u).values.minCoeff(), degree_profile(w).values.minCoeff());
        const double lhs = cut_norm_exact(
            difference(random_walk_kernel(u, eps).kernel, random_walk_kernel(w, eps).kernel));
        CHECK(lhs <= 2.0 / eps * cut_norm_exact(difference(u, w)) + 1e-12);

        const auto a = gen_random_tensor(k, 3, rng.next());
        const auto b = gen_random_tensor(k, 3, rng.next());
        const double g = cut_norm_exact(difference(codegree_section_step(a), codegree_section_step(b)));
        CHECK(g <= one_cut_norm(difference(a, b), NormMethod::exact).value + 1e-12);
    }
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 1 + rng.below(2);
        const auto a = gen_random_hypergraphon3(k, rng.next());
        const auto b = gen_random_hypergraphon3(k, rng.next());
        const double lhs = cut_norm_exact(difference(intersection_graphon(a), intersection_graphon(b)));
        CHECK(lhs <= two_cut_norm(difference(a, b), NormMethod::exact).value + 1e-12);
    }
}
