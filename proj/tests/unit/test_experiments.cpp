#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"

#include "hyperlim/errors.hpp"
#include "hyperlim/experiments.hpp"
#include "hyperlim/hash.hpp"

using namespace hyperlim;

namespace {

ExperimentConfig small() {
    ExperimentConfig c;
    c.sizes = {12, 16};
    c.seeds = 3;
    return c;
}

}  // namespace

TEST_CASE("experiment names and unknown names") {
    const auto& names = experiment_names();
    CHECK(names.size() == 6);
    CHECK_THROWS_AS(run_experiment("bogus", small()), InputError);
}

TEST_CASE("rows are keyed uniquely and sorted") {
    for (const auto& name : experiment_names()) {
        const auto rows = run_experiment(name, small());
        CHECK_FALSE(rows.empty());
        CHECK(std::is_sorted(rows.begin(), rows.end()));
        std::set<std::tuple<std::string, std::string, std::size_t, std::int64_t, std::string>> keys;
        for (const auto& r : rows) {
            CHECK(r.experiment == name);
            keys.insert({r.experiment, r.model, r.n, r.seed, r.statistic});
        }
        CHECK(keys.size() == rows.size());
    }
}

TEST_CASE("csv layout") {
    std::vector<ExperimentRecord> rows = {
        {"x", "m", 10, 1, "b", 1.0 / 3.0},
        {"x", "m", 10, 0, "a", -0.0},
    };
    std::ostringstream out;
    write_experiment_csv(out, rows);
    CHECK(out.str() ==
          "experiment,model,n,seed,statistic,value\n"
          "x,m,10,0,a,0\n"
          "x,m,10,1,b,0.333333333333\n"
          "# version=0.1.0 seed-policy=splitmix64\n");
}

TEST_CASE("seeds are derived deterministically and differ across keys") {
    CHECK(trial_seed(0, "er3", 40, 1) == trial_seed(0, "er3", 40, 1));
    std::set<std::uint64_t> seen;
    for (const std::string m : {"er3", "triangle"}) {
        for (std::size_t n : {40, 80}) {
            for (std::size_t t = 0; t < 10; ++t) {
                seen.insert(trial_seed(3, m, n, t));
            }
        }
    }
    CHECK(seen.size() == 40);
    CHECK(trial_seed(1, "er3", 40, 0) != trial_seed(2, "er3", 40, 0));
}

TEST_CASE("ks distance on integer points") {
    // Binomial(1, 0.5): F(0) = 0.5, F(1) = 1
    CHECK(ks_binomial({0, 0, 0, 1}, 1, 0.5) == doctest::Approx(0.25));
    CHECK(ks_binomial({0, 1}, 1, 0.5) == doctest::Approx(0.0));
    // a point mass at 2 for Binomial(2, 0.5): gap 0.75 at x = 1
    CHECK(ks_binomial({2, 2}, 2, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("small audits keep their inequalities") {
    ExperimentConfig c;
    c.seeds = 30;
    for (const auto& r : run_experiment("lipschitz-audit", c)) {
        if (r.statistic == "slack" || r.statistic == "min_slack") {
            CHECK(r.value >= -1e-12);
        }
    }
    for (const auto& r : run_experiment("counting-lemma-audit", c)) {
        if (r.statistic == "violation") {
            CHECK(r.value <= 1e-12);
        }
    }
}

TEST_CASE("same config, same records") {
    auto c = small();
    c.base_seed = 99;
    for (const auto& name : experiment_names()) {
        std::ostringstream a;
        std::ostringstream b;
        write_experiment_csv(a, run_experiment(name, c));
        write_experiment_csv(b, run_experiment(name, c));
        CHECK(a.str() == b.str());
    }
}
