// hyperlim command line: generators, contractions, hom counts, cut norms,
// spectra and the scripted experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "hyperlim/contractions.hpp"
#include "hyperlim/cutnorms.hpp"
#include "hyperlim/errors.hpp"
#include "hyperlim/experiments.hpp"
#include "hyperlim/format.hpp"
#include "hyperlim/homomorphism.hpp"
#include "hyperlim/randommodels.hpp"
#include "hyperlim/spectra.hpp"

using namespace hyperlim;

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw InputError("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    bool to_file() const { return file_ != nullptr; }

private:
    std::unique_ptr<std::ofstream> file_;
};

UniformHypergraph as_uniform(const Hypergraph& h, const char* what) {
    const auto r = uniformity(h);
    if (!r) {
        throw InputError(std::string(what) + " must be a uniform hypergraph with edges of size >= 2");
    }
    return UniformHypergraph(h, *r);
}

// STEP files start with the STEP keyword; anything else is read as a
// hypergraph.
bool looks_like_step(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::string word;
    in >> word;
    return word == "STEP";
}

std::string bound_tag(NormMethod m, bool distance) {
    if (distance) {
        return m == NormMethod::exact ? "upper" : "estimate";
    }
    return m == NormMethod::exact ? "value" : "lower";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperlim: hypergraph limits, cut norms and spectra"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Base seed (u64)");
    app.add_option("--out", g.out, "Output path (default stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv"}));
    app.set_version_flag("--version", std::string(kVersion));

    // gen
    auto* gen = app.add_subcommand("gen", "Sample a random hypergraph");
    std::string gen_model;
    std::size_t gen_n = 0;
    std::vector<double> gen_p;
    std::size_t gen_r = 3;
    gen->add_option("model", gen_model, "er-uniform | triangle | nonuniform")
        ->required()
        ->check(CLI::IsMember({"er-uniform", "triangle", "nonuniform"}));
    gen->add_option("--n", gen_n, "Vertex count")->required();
    gen->add_option("--p", gen_p, "Edge probability (nonuniform: p_2 .. p_R)")->required();
    gen->add_option("--r", gen_r, "Uniformity (er-uniform)");

    // contract
    auto* contract = app.add_subcommand("contract", "Contract a hypergraph to a matrix");
    std::string contract_in;
    std::string contract_kind = "codegree";
    std::vector<double> contract_p;
    contract->add_option("input", contract_in, "Hypergraph file")->required();
    contract->add_option("--kind", contract_kind, "codegree | intersection-raw | intersection-normalized | p-weighted")
        ->check(CLI::IsMember({"codegree", "intersection-raw", "intersection-normalized", "p-weighted"}));
    contract->add_option("--p", contract_p, "p_2 .. p_R for p-weighted");

    // hom
    auto* hom = app.add_subcommand("hom", "Homomorphism counts and identity checks");
    std::string hom_pattern;
    std::string hom_target;
    std::string hom_identity;
    std::size_t hom_r = 1;
    bool hom_float = false;
    hom->add_option("pattern", hom_pattern, "Pattern hypergraph (simple graph for --identity)")->required();
    hom->add_option("target", hom_target, "Target hypergraph")->required();
    hom->add_option("--identity", hom_identity, "subdivision | intersection")
        ->check(CLI::IsMember({"subdivision", "intersection"}));
    hom->add_option("--r", hom_r, "Subdivision / intersection parameter");
    hom->add_flag("--float", hom_float, "Floating-point instead of exact rational arithmetic");

    // cutnorm
    auto* cut = app.add_subcommand("cutnorm", "Cut norms of step objects and distance bounds");
    std::vector<std::string> cut_inputs;
    std::string cut_norm = "cut";
    std::string cut_method = "auto";
    bool cut_distance = false;
    std::size_t cut_blowup = 1;
    std::size_t cut_restarts = 8;
    cut->add_option("inputs", cut_inputs, "One STEP file (norm) or two (norm of the difference / distance)")
        ->required()
        ->expected(1, 2);
    cut->add_option("--norm", cut_norm, "cut | one-cut | two-cut")->check(CLI::IsMember({"cut", "one-cut", "two-cut"}));
    cut->add_option("--method", cut_method, "auto | exact | heuristic")
        ->check(CLI::IsMember({"auto", "exact", "heuristic"}));
    cut->add_flag("--distance", cut_distance, "Bound the cut distance over permutation overlays");
    cut->add_option("--blowup", cut_blowup, "Refinement factor q for --distance")->check(CLI::PositiveNumber);
    cut->add_option("--restarts", cut_restarts, "Heuristic restarts")->check(CLI::PositiveNumber);

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "Spectrum of a step operator");
    std::string spec_in;
    std::string spec_op = "adjacency";
    std::optional<double> spec_eps;
    spec->add_option("input", spec_in, "STEP file or hypergraph")->required();
    spec->add_option("--operator", spec_op, "adjacency | rw-kernel | rw-laplacian")
        ->check(CLI::IsMember({"adjacency", "rw-kernel", "rw-laplacian"}));
    spec->add_option("--eps", spec_eps, "Minimum degree for random-walk operators");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a scripted experiment and write CSV");
    std::string exp_name;
    ExperimentConfig exp_config;
    exp->add_option("name", exp_name, "Experiment name or `all`")->required();
    exp->add_option("--sizes", exp_config.sizes, "Sizes n")->delimiter(',');
    exp->add_option("--seeds", exp_config.seeds, "Trials per size (pairs for audits)");
    exp->add_option("--p", exp_config.p, "Edge probability");
    exp->add_option("--levels", exp_config.levels, "p_2 .. p_R for rw-equivalence")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::string subject = "part";
    try {
        if (*gen) {
            Hypergraph h;
            if (gen_model == "nonuniform") {
                h = gen_nonuniform(gen_n, gen_p, g.seed);
            } else {
                if (gen_p.size() != 1) {
                    throw UsageError("--p takes exactly one value for " + gen_model);
                }
                h = gen_model == "triangle" ? gen_triangle_hypergraph(gen_n, gen_p[0], g.seed).base()
                                            : gen_uniform_er(gen_n, gen_p[0], gen_r, g.seed).base();
            }
            Output out(g.out);
            write_hypergraph(out.stream(), h);
            (out.to_file() ? std::cout : std::cerr) << "edges=" << h.num_edges() << '\n';
        } else if (*contract) {
            const auto h = read_hypergraph(contract_in);
            Eigen::MatrixXd m;
            if (contract_kind == "p-weighted") {
                if (contract_p.empty()) {
                    throw UsageError("--p is required for p-weighted");
                }
                m = p_weighted_adjacency(h, contract_p).weights();
            } else {
                const auto u = as_uniform(h, "input");
                if (contract_kind == "codegree") {
                    m = codegree_section(u).weights();
                } else {
                    const auto b = intersection_matrix(u);
                    m = contract_kind == "intersection-raw" ? b.raw.weights() : b.normalized.weights();
                }
            }
            Output out(g.out);
            write_matrix_csv(out.stream(), m);
        } else if (*hom) {
            const auto target = as_uniform(read_hypergraph(hom_target), "target");
            Output out(g.out);
            if (!hom_identity.empty()) {
                const auto f = read_simple_graph(hom_pattern);
                const auto mode = hom_float ? Arithmetic::floating : Arithmetic::exact;
                const auto check = hom_identity == "subdivision" ? verify_subdivision_identity(f, target, hom_r, mode)
                                                                 : verify_intersection_identity(f, target, hom_r, mode);
                out.stream() << "lhs=" << format12(check.lhs) << " rhs=" << format12(check.rhs)
                             << " equal=" << (check.equal ? "true" : "false")
                             << " arithmetic=" << (hom_float ? "float" : "exact") << '\n';
            } else {
                const auto f = as_uniform(read_hypergraph(hom_pattern), "pattern");
                const std::uint64_t count = hom_hypergraph(f, target);
                const double t = static_cast<double>(count) /
                                 std::pow(static_cast<double>(target.num_vertices()),
                                          static_cast<double>(f.num_vertices()));
                out.stream() << "hom=" << count << " t=" << format12(t) << '\n';
            }
        } else if (*cut) {
            std::vector<StepObject> objs;
            for (const auto& path : cut_inputs) {
                objs.push_back(read_step(std::filesystem::path(path)));
            }
            if (cut_distance && objs.size() != 2) {
                throw UsageError("--distance needs two inputs");
            }
            const bool two = objs.size() == 2;
            Output out(g.out);
            double value = 0.0;
            NormMethod method = NormMethod::exact;
            std::string extra;
            const bool want_exact = cut_method == "exact";
            const bool want_heuristic = cut_method == "heuristic";
            if (cut_norm == "cut") {
                auto kernel = [](const StepObject& o) {
                    if (const auto* k = std::get_if<StepKernel>(&o)) {
                        return *k;
                    }
                    return to_kernel(std::get<StepTensor>(o));
                };
                const StepKernel a = kernel(objs[0]);
                if (cut_distance) {
                    DistanceOptions opts;
                    opts.blowup = cut_blowup;
                    opts.seed = g.seed;
                    opts.restarts = cut_restarts;
                    const auto d = cut_distance_upper(a, kernel(objs[1]), opts);
                    value = d.value;
                    method = d.inner;
                    extra = " overlay=" + to_string(d.search) + " blowup=" + std::to_string(d.blowup);
                } else {
                    const StepKernel w = two ? difference(a, kernel(objs[1])) : a;
                    const bool exact = !want_heuristic && (want_exact || w.parts() <= kCutNormCap);
                    if (exact) {
                        value = cut_norm_exact(w);
                    } else {
                        value = cut_norm_heuristic(w, cut_restarts, g.seed).value;
                        method = NormMethod::heuristic;
                    }
                }
            } else {
                auto tensor = [](const StepObject& o) {
                    if (const auto* t = std::get_if<StepTensor>(&o)) {
                        return *t;
                    }
                    return to_tensor(std::get<StepKernel>(o));
                };
                const StepTensor a = tensor(objs[0]);
                if (cut_norm == "one-cut") {
                    if (cut_distance) {
                        DistanceOptions opts;
                        opts.blowup = cut_blowup;
                        opts.seed = g.seed;
                        opts.restarts = cut_restarts;
                        const auto d = one_cut_distance_upper(a, tensor(objs[1]), opts);
                        value = d.value;
                        method = d.inner;
                        extra = " overlay=" + to_string(d.search) + " blowup=" + std::to_string(d.blowup);
                    } else {
                        const StepTensor w = two ? difference(a, tensor(objs[1])) : a;
                        const bool exact =
                            !want_heuristic && (want_exact || w.parts() * (w.order() - 1) <= 20);
                        const auto v = one_cut_norm(w, exact ? NormMethod::exact : NormMethod::heuristic, g.seed,
                                                    cut_restarts);
                        value = v.value;
                        method = v.method;
                    }
                } else {
                    if (cut_distance) {
                        throw UsageError("--distance is not available for the 2-cut norm");
                    }
                    if (a.order() != 3) {
                        throw InputError("the 2-cut norm needs order-3 inputs");
                    }
                    auto h = lift_to_hypergraphon(a);
                    if (two) {
                        h = difference(h, lift_to_hypergraphon(tensor(objs[1])));
                    }
                    const bool exact = !want_heuristic && (want_exact || h.parts() <= kTwoCutExactMaxParts);
                    TwoCutOptions opts;
                    opts.restarts = cut_restarts;
                    const auto v = two_cut_norm(h, exact ? NormMethod::exact : NormMethod::heuristic, g.seed, opts);
                    value = v.value;
                    method = v.method;
                }
            }
            out.stream() << "value=" << format12(value) << " method=" << to_string(method)
                         << " bound=" << bound_tag(method, cut_distance) << extra << '\n';
        } else if (*spec) {
            std::optional<StepKernel> w;
            if (looks_like_step(spec_in)) {
                const auto obj = read_step(std::filesystem::path(spec_in));
                if (const auto* k = std::get_if<StepKernel>(&obj)) {
                    w = *k;
                } else {
                    w = codegree_section_step(std::get<StepTensor>(obj));
                }
            } else {
                subject = "vertex";
                const auto h = as_uniform(read_hypergraph(spec_in), "input");
                w = from_graph(h.uniformity() == 2 ? adjacency_matrix(h) : codegree_section(h));
            }
            Spectrum s;
            if (spec_op == "adjacency") {
                s = spectrum_step_operator(*w);
            } else {
                if (!spec_eps) {
                    throw UsageError("--eps is required for " + spec_op);
                }
                const auto rw = rw_spectra(*w, *spec_eps);
                s = spec_op == "rw-kernel" ? rw.kernel : rw.laplacian;
            }
            Output out(g.out);
            write_spectrum_csv(out.stream(), s);
        } else if (*exp) {
            exp_config.base_seed = g.seed;
            std::vector<ExperimentRecord> records;
            if (exp_name == "all") {
                for (const auto& name : experiment_names()) {
                    auto part = run_experiment(name, exp_config);
                    records.insert(records.end(), part.begin(), part.end());
                }
            } else {
                const auto& names = experiment_names();
                if (std::find(names.begin(), names.end(), exp_name) == names.end()) {
                    throw UsageError("unknown experiment `" + exp_name + "`");
                }
                records = run_experiment(exp_name, exp_config);
            }
            Output out(g.out);
            write_experiment_csv(out.stream(), std::move(records));
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    } catch (const DegeneracyError& e) {
        std::string msg = e.what();
        if (subject == "vertex" && msg.rfind("part ", 0) == 0) {
            msg.replace(0, 4, "vertex");
        }
        std::cerr << "degenerate: " << msg << '\n';
        return kExitDegenerate;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
