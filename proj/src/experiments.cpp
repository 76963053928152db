#include "hyperlim/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <tuple>
#include <type_traits>

#include "hyperlim/contractions.hpp"
#include "hyperlim/cutnorms.hpp"
#include "hyperlim/errors.hpp"
#include "hyperlim/format.hpp"
#include "hyperlim/hash.hpp"
#include "hyperlim/homomorphism.hpp"
#include "hyperlim/randommodels.hpp"
#include "hyperlim/spectra.hpp"

namespace hyperlim {

bool operator<(const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tie(a.experiment, a.model, a.n, a.seed, a.statistic) <
           std::tie(b.experiment, b.model, b.n, b.seed, b.statistic);
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "spectral-convergence", "intersection-discrimination", "lipschitz-audit",
        "rw-equivalence",       "counting-lemma-audit",        "codegree-distribution",
    };
    return names;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, const std::string& model, std::size_t n, std::size_t trial) {
    return mix_seed(mix_seed(base, fnv1a(model)), (static_cast<std::uint64_t>(n) << 32) ^ trial);
}

double ks_binomial(const std::vector<std::size_t>& samples, std::size_t trials, double p) {
    if (samples.empty()) {
        throw InputError("no samples");
    }
    std::size_t top = trials;
    for (std::size_t s : samples) {
        top = std::max(top, s);
    }
    std::vector<double> counts(top + 1, 0.0);
    for (std::size_t s : samples) {
        counts[s] += 1.0;
    }
    const double nt = static_cast<double>(trials);
    auto pmf = [&](std::size_t x) {
        if (x > trials) {
            return 0.0;
        }
        if (p <= 0.0) {
            return x == 0 ? 1.0 : 0.0;
        }
        if (p >= 1.0) {
            return x == trials ? 1.0 : 0.0;
        }
        const double xd = static_cast<double>(x);
        return std::exp(std::lgamma(nt + 1.0) - std::lgamma(xd + 1.0) - std::lgamma(nt - xd + 1.0) +
                        xd * std::log(p) + (nt - xd) * std::log1p(-p));
    };
    double emp = 0.0;
    double cdf = 0.0;
    double ks = 0.0;
    const double total = static_cast<double>(samples.size());
    for (std::size_t x = 0; x <= top; ++x) {
        emp += counts[x] / total;
        cdf += pmf(x);
        ks = std::max(ks, std::abs(emp - std::min(cdf, 1.0)));
    }
    return ks;
}

namespace {

using Records = std::vector<ExperimentRecord>;

std::vector<std::size_t> sizes_or(const ExperimentConfig& c, std::vector<std::size_t> fallback) {
    return c.sizes.empty() ? fallback : c.sizes;
}

std::size_t seeds_or(const ExperimentConfig& c, std::size_t fallback) { return c.seeds == 0 ? fallback : c.seeds; }

double p_or(const ExperimentConfig& c, double fallback) { return c.p < 0.0 ? fallback : c.p; }

struct Recorder {
    std::string experiment;
    Records& out;

    void add(const std::string& model, std::size_t n, std::int64_t seed, const std::string& statistic, double value) {
        out.push_back({experiment, model, n, seed, statistic, value});
    }
};

// ---------------------------------------------------------------- spectral-convergence

Records spectral_convergence(const ExperimentConfig& config) {
    Records out;
    Recorder rec{"spectral-convergence", out};
    const double p = p_or(config, 0.5);
    const double p3 = p * p * p;
    const Spectrum limit{{p3}};
    for (std::size_t n : sizes_or(config, {40, 80, 160})) {
        for (std::size_t s = 0; s < seeds_or(config, 20); ++s) {
            for (const std::string model : {"triangle", "er3"}) {
                const std::uint64_t seed = trial_seed(config.base_seed, model, n, s);
                const auto h = model == "triangle" ? gen_triangle_hypergraph(n, p, seed) : gen_uniform_er(n, p3, 3, seed);
                const auto spec = spectrum_step_operator(from_graph(codegree_section(h)));
                const auto sid = static_cast<std::int64_t>(s);
                rec.add(model, n, sid, "pointwise_distance_m3", pointwise_distance(spec, limit, 3));
                rec.add(model, n, sid, "pointwise_distance_m5", pointwise_distance(spec, limit, 5));
                rec.add(model, n, sid, "top_eigenvalue", spec.eigenvalues.front());
                rec.add(model, n, sid, "edges", static_cast<double>(h.num_edges()));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- intersection-discrimination

double mean_entry(const WeightedGraph& g) {
    const double n = static_cast<double>(g.num_vertices());
    return g.weights().sum() / (n * n);
}

Records intersection_discrimination(const ExperimentConfig& config) {
    Records out;
    Recorder rec{"intersection-discrimination", out};
    const double p = p_or(config, 0.5);
    for (std::size_t n : sizes_or(config, {40, 80, 160})) {
        for (std::size_t s = 0; s < seeds_or(config, 5); ++s) {
            const auto sid = static_cast<std::int64_t>(s);
            const auto t = gen_triangle_hypergraph(n, p, trial_seed(config.base_seed, "triangle", n, s));
            const auto e = gen_uniform_er(n, p * p * p, 3, trial_seed(config.base_seed, "er3", n, s));
            // normalized intersection matrix == intersection_graphon(from_hypergraph(.)) blockwise
            const auto bt = intersection_matrix(t).normalized;
            const auto be = intersection_matrix(e).normalized;
            const double mt = mean_entry(bt);
            const double me = mean_entry(be);
            rec.add("triangle", n, sid, "mean_entry", mt);
            rec.add("er3", n, sid, "mean_entry", me);
            rec.add("triangle-vs-er3", n, sid, "mean_entry_ratio", mt / me);

            const StepKernel kt = from_graph(bt);
            const StepKernel ke = from_graph(be);
            const StepKernel diff = difference(kt, ke);
            const std::uint64_t norm_seed = trial_seed(config.base_seed, "cut", n, s);
            const double bdist = n <= kCutNormCap ? cut_norm_exact(diff) : cut_norm_heuristic(diff, 8, norm_seed).value;
            rec.add("triangle-vs-er3", n, sid, "intersection_cut_norm", bdist);

            DistanceOptions opts;
            opts.seed = norm_seed;
            const auto d1 = one_cut_distance_upper(from_hypergraph(t), from_hypergraph(e), opts);
            rec.add("triangle-vs-er3", n, sid, "one_cut_distance", d1.value);
            rec.add("triangle-vs-er3", n, sid, "one_cut_certified", d1.certified() ? 1.0 : 0.0);
        }
    }
    return out;
}

// ---------------------------------------------------------------- lipschitz-audit

StepKernel blend(const StepKernel& u, const StepKernel& v, double t) {
    return StepKernel(u.partition(), (1.0 - t) * u.values() + t * v.values());
}

StepKernel on_partition(const StepKernel& w, const Partition& part) { return StepKernel(part, w.values()); }

StepTensor on_partition(const StepTensor& w, const Partition& part) {
    return StepTensor(part, w.order(), w.values());
}

StepHypergraphon3 on_partition(const StepHypergraphon3& w, const Partition& part) {
    return StepHypergraphon3(part, w.values(), std::max(part.size(), StepHypergraphon3::default_max_parts));
}

template <class T>
T blend_values(const T& u, const T& v, double t) {
    std::vector<double> out(u.values().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - t) * u.values()[i] + t * v.values()[i];
    }
    if constexpr (std::is_same_v<T, StepTensor>) {
        return StepTensor(u.partition(), u.order(), std::move(out));
    } else {
        return StepHypergraphon3(u.partition(), std::move(out),
                                 std::max(u.parts(), StepHypergraphon3::default_max_parts));
    }
}

struct PairDraw {
    std::size_t k;
    bool random_partition;
    bool blended;
    double t;
    double scale;
};

PairDraw draw_pair(std::uint64_t seed, std::size_t kmax, std::size_t trial) {
    const std::uint64_t h = splitmix64(seed);
    PairDraw d{};
    d.k = 1 + static_cast<std::size_t>(h % kmax);
    d.random_partition = ((h >> 8) & 1U) != 0;
    d.blended = trial % 2 == 1;
    d.t = 0.02 + 0.96 * unit_double(splitmix64(seed ^ 0x7ULL));
    d.scale = 0.05 + 0.95 * unit_double(splitmix64(seed ^ 0x13ULL));
    return d;
}

double min_degree(const StepKernel& w) { return degree_profile(w).values.minCoeff(); }

Records lipschitz_audit(const ExperimentConfig& config) {
    Records out;
    Recorder rec{"lipschitz-audit", out};
    const std::size_t pairs = seeds_or(config, 200);
    std::map<std::string, double> min_slack;
    auto note = [&](const std::string& model, std::size_t k, std::size_t i, double lhs, double rhs) {
        const auto sid = static_cast<std::int64_t>(i);
        rec.add(model, k, sid, "lhs", lhs);
        rec.add(model, k, sid, "rhs", rhs);
        rec.add(model, k, sid, "slack", rhs - lhs);
        auto it = min_slack.find(model);
        if (it == min_slack.end() || rhs - lhs < it->second) {
            min_slack[model] = rhs - lhs;
        }
    };

    for (std::size_t i = 0; i < pairs; ++i) {
        // random-walk kernels: ||K_W - K_U|| <= (2/eps) ||W - U||
        {
            const std::uint64_t seed = trial_seed(config.base_seed, "rw-kernel", 0, i);
            const auto d = draw_pair(seed, 6, i);
            RandomStepOptions opt;
            opt.random_partition = d.random_partition;
            const auto u = scaled(gen_random_kernel(d.k, mix_seed(seed, 1), opt), d.scale);
            auto v = on_partition(gen_random_kernel(d.k, mix_seed(seed, 2)), u.partition());
            const auto w = d.blended ? blend(u, v, d.t) : v;
            const double eps = std::min(min_degree(u), min_degree(w));
            if (eps > 0.0) {
                const auto ku = random_walk_kernel(u, eps).kernel;
                const auto kw = random_walk_kernel(w, eps).kernel;
                note("rw-kernel", d.k, i, cut_norm_exact(difference(kw, ku)),
                     (2.0 / eps) * cut_norm_exact(difference(w, u)));
            }
        }
        // codegree sections: ||G[W] - G[U]|| <= ||W - U||_{1} / (r-2)!, r = 3
        {
            const std::uint64_t seed = trial_seed(config.base_seed, "codegree-section", 0, i);
            const auto d = draw_pair(seed, 6, i);
            RandomStepOptions opt;
            opt.random_partition = d.random_partition;
            const auto u = gen_random_tensor(d.k, 3, mix_seed(seed, 1), opt);
            const auto v = on_partition(gen_random_tensor(d.k, 3, mix_seed(seed, 2)), u.partition());
            const auto w = d.blended ? blend_values(u, v, d.t) : v;
            const double lhs = cut_norm_exact(difference(codegree_section_step(w), codegree_section_step(u)));
            const double rhs = one_cut_norm(difference(w, u), NormMethod::exact).value;
            note("codegree-section", d.k, i, lhs, rhs);
        }
        // intersection graphons: ||B(W) - B(U)|| <= ||W - U||_{2}
        {
            const std::uint64_t seed = trial_seed(config.base_seed, "intersection-graphon", 0, i);
            const auto d = draw_pair(seed, kTwoCutExactMaxParts, i);
            RandomStepOptions opt;
            opt.random_partition = d.random_partition;
            const auto u = gen_random_hypergraphon3(d.k, mix_seed(seed, 1), opt);
            const auto v = on_partition(gen_random_hypergraphon3(d.k, mix_seed(seed, 2)), u.partition());
            const auto w = d.blended ? blend_values(u, v, d.t) : v;
            const double lhs = cut_norm_exact(difference(intersection_graphon(w), intersection_graphon(u)));
            const auto dw = difference(w, u);
            note("intersection-graphon", d.k, i, lhs, two_cut_norm(dw, NormMethod::exact).value);
            TwoCutOptions sym;
            sym.symmetric_tests = true;
            note("intersection-graphon-symmetric-tests", d.k, i, lhs, two_cut_norm(dw, NormMethod::exact, 0, sym).value);
        }
    }
    for (const auto& [model, slack] : min_slack) {
        rec.add(model, 0, -1, "min_slack", slack);
    }
    return out;
}

// ---------------------------------------------------------------- rw-equivalence

const char* variant_name(RandomWalkVariant v) {
    switch (v) {
    case RandomWalkVariant::incidence:
        return "incidence";
    case RandomWalkVariant::uniform_edge:
        return "uniform-edge";
    case RandomWalkVariant::codegree_weighted:
        return "codegree-weighted";
    }
    return "incidence";
}

Records rw_equivalence(const ExperimentConfig& config) {
    Records out;
    Recorder rec{"rw-equivalence", out};
    const std::vector<double> levels = config.levels.empty() ? std::vector<double>{0.3, 0.4} : config.levels;
    const std::size_t top = levels.size() + 1;
    const std::string model = "nonuniform";
    const std::array<RandomWalkVariant, 3> variants = {RandomWalkVariant::incidence, RandomWalkVariant::uniform_edge,
                                                        RandomWalkVariant::codegree_weighted};
    // limit of the model: constant top level p_R
    const StepTensor model_top(Partition::equal(1), top, {levels.back()});
    const Spectrum model_limit = spectrum_step_operator(limit_rw_kernel(model_top));
    const std::size_t m = kDefaultTopEigenvalues;
    for (std::size_t n : sizes_or(config, {40, 80, 160})) {
        for (std::size_t s = 0; s < seeds_or(config, 10); ++s) {
            const auto sid = static_cast<std::int64_t>(s);
            const auto h = gen_nonuniform(n, levels, trial_seed(config.base_seed, model, n, s));
            std::array<Spectrum, 3> spectra;
            for (std::size_t v = 0; v < 3; ++v) {
                const auto rw = rw_matrices(h, variants[v]);
                spectra[v] = spectrum_random_walk(rw.degree, rw.adjacency);
            }
            double max_pair = 0.0;
            for (std::size_t a = 0; a < 3; ++a) {
                for (std::size_t b = a + 1; b < 3; ++b) {
                    const double dist = pointwise_distance(spectra[a], spectra[b], m);
                    max_pair = std::max(max_pair, dist);
                    rec.add(model, n, sid,
                            std::string("dist_") + variant_name(variants[a]) + "_" + variant_name(variants[b]), dist);
                }
            }
            rec.add(model, n, sid, "max_pairwise_distance", max_pair);

            const auto levels_of_h = decompose(h);
            const auto top_level = levels_of_h.levels.find(top);
            double max_sample = 0.0;
            double max_model = 0.0;
            Spectrum sample_limit;
            const bool have_sample = top_level != levels_of_h.levels.end();
            if (have_sample) {
                sample_limit = spectrum_step_operator(limit_rw_kernel(from_hypergraph(top_level->second)));
            }
            for (std::size_t v = 0; v < 3; ++v) {
                const double dm = pointwise_distance(spectra[v], model_limit, m);
                rec.add(model, n, sid, std::string("dist_limit_model_") + variant_name(variants[v]), dm);
                max_model = std::max(max_model, dm);
                if (have_sample) {
                    const double ds = pointwise_distance(spectra[v], sample_limit, m);
                    rec.add(model, n, sid, std::string("dist_limit_sample_") + variant_name(variants[v]), ds);
                    max_sample = std::max(max_sample, ds);
                }
            }
            rec.add(model, n, sid, "max_dist_limit_model", max_model);
            if (have_sample) {
                rec.add(model, n, sid, "max_dist_limit_sample", max_sample);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- counting-lemma-audit

Records counting_lemma_audit(const ExperimentConfig& config) {
    Records out;
    Recorder rec{"counting-lemma-audit", out};
    const std::size_t pairs = seeds_or(config, 200);
    const std::vector<std::pair<std::string, DirectedGraph>> patterns = {
        {"dcycle3", directed_cycle(3)},
        {"dcycle4", directed_cycle(4)},
        {"dpath3", directed_path(3)},
    };
    std::map<std::string, double> worst;
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::uint64_t seed = trial_seed(config.base_seed, "counting", 0, i);
        const auto d = draw_pair(seed, 6, i);
        RandomStepOptions opt;
        opt.symmetric = false;
        opt.random_partition = d.random_partition;
        const auto u = gen_random_kernel(d.k, mix_seed(seed, 1), opt);
        opt.random_partition = false;
        const auto v = on_partition(gen_random_kernel(d.k, mix_seed(seed, 2), opt), u.partition());
        const auto w = d.blended ? blend(u, v, d.t) : v;
        const double cut = cut_norm_exact(difference(u, w));
        for (const auto& [name, f] : patterns) {
            const double gap = std::abs(t_density(f, u) - t_density(f, w));
            const double violation = gap - static_cast<double>(f.num_arcs()) * cut;
            rec.add(name, d.k, static_cast<std::int64_t>(i), "violation", violation);
            auto it = worst.find(name);
            if (it == worst.end() || violation > it->second) {
                worst[name] = violation;
            }
        }
    }
    for (const auto& [name, v] : worst) {
        rec.add(name, 0, -1, "max_violation", v);
    }
    return out;
}

// ---------------------------------------------------------------- codegree-distribution

Records codegree_distribution(const ExperimentConfig& config) {
    Records out;
    Recorder rec{"codegree-distribution", out};
    const double p = p_or(config, 0.5);
    const std::size_t r = 3;
    for (std::size_t n : sizes_or(config, {30})) {
        const std::size_t seeds = seeds_or(config, 500);
        std::vector<std::size_t> samples;
        double sum = 0.0;
        for (std::size_t s = 0; s < seeds; ++s) {
            const auto h = gen_uniform_er(n, p, r, trial_seed(config.base_seed, "er-uniform", n, s));
            const std::size_t c = codegree(h, 0, 1);
            samples.push_back(c);
            sum += static_cast<double>(c);
            rec.add("er-uniform", n, static_cast<std::int64_t>(s), "codegree_0_1", static_cast<double>(c));
        }
        const auto trials = static_cast<std::size_t>(binomial(n - 2, r - 2));
        const auto literal = static_cast<std::size_t>(binomial(n, r));
        rec.add("er-uniform", n, -1, "mean_codegree", sum / static_cast<double>(seeds));
        rec.add("er-uniform", n, -1, "ks_distance", ks_binomial(samples, trials, p));
        rec.add("er-uniform", n, -1, "ks_distance_literal_parameter", ks_binomial(samples, literal, p));
    }
    return out;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const std::string& name, const ExperimentConfig& config) {
    static const std::map<std::string, std::function<Records(const ExperimentConfig&)>> table = {
        {"spectral-convergence", spectral_convergence},
        {"intersection-discrimination", intersection_discrimination},
        {"lipschitz-audit", lipschitz_audit},
        {"rw-equivalence", rw_equivalence},
        {"counting-lemma-audit", counting_lemma_audit},
        {"codegree-distribution", codegree_distribution},
    };
    const auto it = table.find(name);
    if (it == table.end()) {
        throw InputError("unknown experiment `" + name + "`");
    }
    auto records = it->second(config);
    std::sort(records.begin(), records.end());
    return records;
}

void write_experiment_csv(std::ostream& out, std::vector<ExperimentRecord> records) {
    std::sort(records.begin(), records.end());
    out << "experiment,model,n,seed,statistic,value\n";
    for (const auto& r : records) {
        out << r.experiment << ',' << r.model << ',' << r.n << ',' << r.seed << ',' << r.statistic << ','
            << format12(r.value) << '\n';
    }
    out << "# version=" << kVersion << " seed-policy=" << kSeedPolicy << '\n';
}

}  // namespace hyperlim
