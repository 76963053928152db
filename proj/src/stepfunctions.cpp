#include "hyperlim/stepfunctions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <locale>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "hyperlim/errors.hpp"
#include "hyperlim/format.hpp"

namespace hyperlim {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exponent) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
            throw CapacityError("step object too large");
        }
        out *= base;
    }
    return out;
}

// Advances a mixed-radix counter; returns false after the last index.
bool next_index(std::span<std::size_t> index, std::size_t k) {
    for (std::size_t pos = index.size(); pos-- > 0;) {
        if (++index[pos] < k) {
            return true;
        }
        index[pos] = 0;
    }
    return false;
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<double>(i);
    }
    return f;
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw InputError("partition must have at least one part");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InputError("partition weights must be positive and finite");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InputError("partition weights must sum to 1");
    }
}

Partition Partition::equal(std::size_t k) {
    if (k == 0) {
        throw InputError("partition must have at least one part");
    }
    return Partition(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

bool Partition::is_equal() const noexcept {
    const double w = 1.0 / static_cast<double>(weights_.size());
    return std::all_of(weights_.begin(), weights_.end(), [w](double x) { return x == w; });
}

Partition Partition::refine(std::size_t q) const {
    if (q == 0) {
        throw InputError("refinement factor must be positive");
    }
    std::vector<double> out;
    out.reserve(weights_.size() * q);
    for (double w : weights_) {
        for (std::size_t i = 0; i < q; ++i) {
            out.push_back(w / static_cast<double>(q));
        }
    }
    return Partition(std::move(out));
}

// ---------------------------------------------------------------- StepKernel

StepKernel::StepKernel(Partition partition, Eigen::MatrixXd values)
    : partition_(std::move(partition)), values_(std::move(values)) {
    const auto k = static_cast<Eigen::Index>(partition_.size());
    if (values_.rows() != k || values_.cols() != k) {
        throw InputError("kernel values must be a k x k matrix");
    }
    if (!values_.allFinite()) {
        throw InputError("kernel values must be finite");
    }
    symmetric_ = values_ == values_.transpose();
}

bool StepKernel::graphon_valued() const noexcept {
    return (values_.array() >= 0.0).all() && (values_.array() <= 1.0).all();
}

Eigen::MatrixXd StepKernel::operating_matrix() const {
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(partition_.weights().data(), values_.cols());
    return values_ * w.asDiagonal();
}

// ---------------------------------------------------------------- StepTensor

StepTensor::StepTensor(Partition partition, std::size_t order, std::vector<double> values)
    : partition_(std::move(partition)), order_(order), values_(std::move(values)) {
    if (order_ < 2) {
        throw InputError("step tensor order must be at least 2");
    }
    const std::size_t k = partition_.size();
    if (values_.size() != checked_power(k, order_)) {
        throw InputError("step tensor must have k^order values");
    }
    std::vector<std::size_t> index(order_, 0);
    std::vector<std::size_t> sorted(order_);
    std::size_t flat = 0;
    do {
        if (!std::isfinite(values_[flat])) {
            throw InputError("step tensor values must be finite");
        }
        if (!std::is_sorted(index.begin(), index.end())) {
            sorted = index;
            std::sort(sorted.begin(), sorted.end());
            if (values_[flat] != values_[flat_index(sorted)]) {
                throw InputError("step tensor is not symmetric under coordinate permutations");
            }
        }
        ++flat;
    } while (next_index(index, k));
}

bool StepTensor::graphon_valued() const noexcept {
    return std::all_of(values_.begin(), values_.end(), in_unit_interval);
}

std::size_t StepTensor::flat_index(std::span<const std::size_t> index) const {
    std::size_t flat = 0;
    for (std::size_t i : index) {
        flat = flat * partition_.size() + i;
    }
    return flat;
}

// ---------------------------------------------------------------- StepHypergraphon3

namespace {

constexpr std::array<std::array<std::size_t, 3>, 6> kPermutations3 = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

// Position of the pair coordinate {a, b} (a != b) inside the 6-index.
std::size_t pair_slot(std::size_t a, std::size_t b) {
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    if (lo == 0) {
        return hi == 1 ? 3 : 4;
    }
    return 5;
}

}  // namespace

StepHypergraphon3::StepHypergraphon3(Partition partition, std::vector<double> values, std::size_t max_parts)
    : partition_(std::move(partition)), values_(std::move(values)) {
    const std::size_t k = partition_.size();
    if (k > max_parts) {
        throw CapacityError("3-hypergraphon with " + std::to_string(k) + " parts exceeds the cap of " +
                            std::to_string(max_parts));
    }
    if (values_.size() != checked_power(k, 6)) {
        throw InputError("3-hypergraphon must have k^6 values");
    }
    std::array<std::size_t, 6> index{};
    do {
        const double v = at(index);
        if (!std::isfinite(v)) {
            throw InputError("3-hypergraphon values must be finite");
        }
        for (const auto& sigma : kPermutations3) {
            if (at(act(sigma, index)) != v) {
                throw InputError("3-hypergraphon violates the S3 symmetry");
            }
        }
    } while (next_index(index, k));
}

bool StepHypergraphon3::graphon_valued() const noexcept {
    return std::all_of(values_.begin(), values_.end(), in_unit_interval);
}

std::size_t StepHypergraphon3::flat_index(const Index& i) const {
    std::size_t flat = 0;
    for (std::size_t x : i) {
        flat = flat * partition_.size() + x;
    }
    return flat;
}

StepHypergraphon3::Index StepHypergraphon3::act(const std::array<std::size_t, 3>& sigma, const Index& i) {
    return {i[sigma[0]],
            i[sigma[1]],
            i[sigma[2]],
            i[pair_slot(sigma[0], sigma[1])],
            i[pair_slot(sigma[0], sigma[2])],
            i[pair_slot(sigma[1], sigma[2])]};
}

// ---------------------------------------------------------------- constructions

StepKernel from_graph(const WeightedGraph& g) {
    return StepKernel(Partition::equal(g.num_vertices()), g.weights());
}

StepTensor from_hypergraph(const UniformHypergraph& h) {
    const std::size_t n = h.num_vertices();
    const std::size_t r = h.uniformity();
    std::vector<double> values(checked_power(n, r), 0.0);
    std::vector<std::size_t> perm(r);
    for (const auto& e : h.edges()) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
            std::size_t flat = 0;
            for (std::size_t p : perm) {
                flat = flat * n + e[p];
            }
            values[flat] = 1.0;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return StepTensor(Partition::equal(n), r, std::move(values));
}

StepTensor to_tensor(const StepKernel& w) {
    if (!w.symmetric()) {
        throw InputError("only symmetric kernels convert to step tensors");
    }
    const std::size_t k = w.parts();
    std::vector<double> values(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            values[i * k + j] = w.values()(i, j);
        }
    }
    return StepTensor(w.partition(), 2, std::move(values));
}

StepKernel to_kernel(const StepTensor& w) {
    if (w.order() != 2) {
        throw InputError("only order-2 tensors convert to kernels");
    }
    const std::size_t k = w.parts();
    Eigen::MatrixXd values(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            values(i, j) = w.values()[i * k + j];
        }
    }
    return StepKernel(w.partition(), std::move(values));
}

// ---------------------------------------------------------------- degree and random walks

PartProfile degree_profile(const StepKernel& w) {
    const std::size_t k = w.parts();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(k);
    for (std::size_t i = 0; i < k; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            sum += w.values()(i, j) * w.partition()[j];
        }
        d(i) = sum;
    }
    return {w.partition(), std::move(d)};
}

PartProfile degree_profile(const StepTensor& w) {
    const std::size_t k = w.parts();
    const std::size_t block = w.values().size() / k;
    Eigen::VectorXd d = Eigen::VectorXd::Zero(k);
    std::vector<std::size_t> rest(w.order() - 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
        double sum = 0.0;
        std::fill(rest.begin(), rest.end(), 0);
        std::size_t flat = i * block;
        do {
            const double v = w.values()[flat++];
            if (v != 0.0) {
                double measure = 1.0;
                for (std::size_t j : rest) {
                    measure *= w.partition()[j];
                }
                sum += v * measure;
            }
        } while (next_index(rest, k));
        d(i) = sum;
    }
    return {w.partition(), std::move(d)};
}

RandomWalkKernel random_walk_kernel(const StepKernel& w, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw InputError("epsilon must be positive");
    }
    if (!w.symmetric() || !w.graphon_valued()) {
        throw InputError("random walk kernel requires a symmetric [0,1]-valued graphon");
    }
    auto degree = degree_profile(w);
    const auto k = static_cast<Eigen::Index>(w.parts());
    Eigen::MatrixXd kv = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (degree.values(i) > 0.0) {
            kv.row(i) = w.values().row(i) / degree.values(i);
        }
    }
    const bool holds = degree.values.minCoeff() >= epsilon;
    return {StepKernel(w.partition(), std::move(kv)), std::move(degree), holds};
}

Eigen::MatrixXd RandomWalkLaplacian::operating_matrix() const {
    const auto k = static_cast<Eigen::Index>(walk.kernel.parts());
    return Eigen::MatrixXd::Identity(k, k) - walk.kernel.operating_matrix();
}

Eigen::VectorXd RandomWalkLaplacian::apply(const Eigen::VectorXd& f) const {
    return f - walk.kernel.operating_matrix() * f;
}

RandomWalkLaplacian rw_laplacian(const StepKernel& w, double epsilon) {
    return {random_walk_kernel(w, epsilon)};
}

// ---------------------------------------------------------------- contractions

StepKernel codegree_section_step(const StepTensor& w) {
    const std::size_t k = w.parts();
    const std::size_t r = w.order();
    const auto& part = w.partition();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k, k);
    std::vector<std::size_t> index(r, 0);
    std::size_t flat = 0;
    do {
        const double v = w.values()[flat++];
        if (v != 0.0) {
            double measure = 1.0;
            for (std::size_t m = 1; m + 1 < r; ++m) {
                measure *= part[index[m]];
            }
            g(index.front(), index.back()) += v * measure;
        }
    } while (next_index(index, k));
    g /= factorial(r - 2);
    // Accumulation order differs between (i, j) and (j, i); mirror to keep
    // the result exactly symmetric.
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            g(j, i) = g(i, j);
        }
    }
    return StepKernel(part, std::move(g));
}

StepKernel intersection_graphon(const StepTensor& w) {
    if (w.order() != 3) {
        throw InputError("vertex-vertex intersection graphon requires an order-3 tensor");
    }
    const std::size_t k = w.parts();
    const std::size_t block = k * k;
    const auto& part = w.partition();
    const auto& v = w.values();
    // B(a, b) = 1/2 sum_{m,l} W(a,m,l) W(m,l,b) w_m w_l and W(m,l,b) = W(b,m,l).
    std::vector<double> pair_weight(block);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t l = 0; l < k; ++l) {
            pair_weight[m * k + l] = part[m] * part[l];
        }
    }
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
    std::vector<double> weighted_row(block);
    for (std::size_t a = 0; a < k; ++a) {
        const double* row_a = v.data() + a * block;
        for (std::size_t ml = 0; ml < block; ++ml) {
            weighted_row[ml] = row_a[ml] * pair_weight[ml];
        }
        for (std::size_t c = a; c < k; ++c) {
            const double* row_c = v.data() + c * block;
            double sum = 0.0;
            for (std::size_t ml = 0; ml < block; ++ml) {
                sum += weighted_row[ml] * row_c[ml];
            }
            b(a, c) = 0.5 * sum;
            b(c, a) = b(a, c);
        }
    }
    return StepKernel(part, std::move(b));
}

StepKernel intersection_graphon(const StepHypergraphon3& w) {
    const std::size_t k = w.parts();
    const auto& part = w.partition();
    // Constant in the pair coordinates: the pair integrals are exactly 1, so
    // take the 3-graphon path and skip their rounding.
    {
        const std::size_t k3 = k * k * k;
        const auto& v = w.values();
        bool pair_constant = true;
        for (std::size_t vertex = 0; vertex < k3 && pair_constant; ++vertex) {
            const double* block = v.data() + vertex * k3;
            pair_constant = std::all_of(block, block + k3, [&](double x) { return x == block[0]; });
        }
        if (pair_constant) {
            std::vector<double> vertex_values(k3);
            for (std::size_t vertex = 0; vertex < k3; ++vertex) {
                vertex_values[vertex] = v[vertex * k3];
            }
            return intersection_graphon(StepTensor(part, 3, std::move(vertex_values)));
        }
    }
    // P(a, x2, x3, x23) = int W(a, x2, x3, x12, x13, x23) dx12 dx13
    // Q(x2, x3, b, x23) = int W(x2, x3, b, x23, x24, x34) dx24 dx34
    const std::size_t k3 = k * k * k;
    std::vector<double> p(k * k3, 0.0);
    std::vector<double> q(k * k3, 0.0);
    auto slot = [k](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return ((a * k + b) * k + c) * k + d;
    };
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t x2 = 0; x2 < k; ++x2) {
            for (std::size_t x3 = 0; x3 < k; ++x3) {
                for (std::size_t x23 = 0; x23 < k; ++x23) {
                    double sp = 0.0;
                    double sq = 0.0;
                    for (std::size_t s = 0; s < k; ++s) {
                        for (std::size_t t = 0; t < k; ++t) {
                            const double measure = part[s] * part[t];
                            sp += w.at({a, x2, x3, s, t, x23}) * measure;
                            sq += w.at({x2, x3, a, x23, s, t}) * measure;
                        }
                    }
                    p[slot(a, x2, x3, x23)] = sp;
                    q[slot(x2, x3, a, x23)] = sq;
                }
            }
        }
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            double sum = 0.0;
            for (std::size_t x2 = 0; x2 < k; ++x2) {
                for (std::size_t x3 = 0; x3 < k; ++x3) {
                    for (std::size_t x23 = 0; x23 < k; ++x23) {
                        sum += p[slot(a, x2, x3, x23)] * q[slot(x2, x3, b, x23)] * part[x2] * part[x3] * part[x23];
                    }
                }
            }
            out(a, b) = 0.5 * sum;
            out(b, a) = out(a, b);
        }
    }
    return StepKernel(part, std::move(out));
}

StepHypergraphon3 lift_to_hypergraphon(const StepTensor& w) {
    if (w.order() != 3) {
        throw InputError("only order-3 tensors lift to 3-hypergraphons");
    }
    const std::size_t k = w.parts();
    const std::size_t k3 = k * k * k;
    std::vector<double> values(k3 * k3);
    for (std::size_t vertex = 0; vertex < k3; ++vertex) {
        std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(vertex * k3), k3, w.values()[vertex]);
    }
    return StepHypergraphon3(w.partition(), std::move(values), std::max(k, StepHypergraphon3::default_max_parts));
}

RandomWalkKernel limit_rw_kernel(const StepTensor& w) {
    const std::size_t r = w.order();
    auto degree = degree_profile(w);
    const auto g = codegree_section_step(w);
    const auto k = static_cast<Eigen::Index>(w.parts());
    // S = G / ((R-1) * d / (R-1)!) = (R-2)! G / d
    const double scale = factorial(r - 2);
    Eigen::MatrixXd s(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(degree.values(i) > 0.0)) {
            throw DegeneracyError(static_cast<std::size_t>(i),
                                  "part " + std::to_string(i) + " has zero degree; limit walk undefined");
        }
        s.row(i) = scale * g.values().row(i) / degree.values(i);
    }
    return {StepKernel(w.partition(), std::move(s)), std::move(degree), true};
}

// ---------------------------------------------------------------- file format

namespace {

class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::string next(const char* what) {
        while (true) {
            if (pos_ < line_.size()) {
                const auto start = line_.find_first_not_of(" \t\r", pos_);
                if (start != std::string::npos) {
                    const auto stop = line_.find_first_of(" \t\r", start);
                    pos_ = stop == std::string::npos ? line_.size() : stop;
                    return line_.substr(start, pos_ - start);
                }
            }
            if (!std::getline(in_, line_)) {
                throw ParseError(lineno_ == 0 ? 1 : lineno_, std::string("unexpected end of input, expected ") + what);
            }
            ++lineno_;
            pos_ = 0;
        }
    }

    double next_double(const char* what) {
        const auto token = next(what);
        std::istringstream ss(token);
        ss.imbue(std::locale::classic());
        double v = 0.0;
        ss >> v;
        if (!ss || !ss.eof()) {
            throw ParseError(lineno_, std::string("malformed number for ") + what + ": " + token);
        }
        return v;
    }

    std::size_t next_count(const char* what) {
        const auto token = next(what);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw ParseError(lineno_, std::string("malformed integer for ") + what + ": " + token);
        }
        return value;
    }

    bool exhausted() {
        try {
            next("end of input");
            return false;
        } catch (const ParseError&) {
            return true;
        }
    }

    std::size_t line() const { return lineno_; }

private:
    std::istream& in_;
    std::string line_;
    std::size_t pos_ = 0;
    std::size_t lineno_ = 0;
};

template <class Values>
void write_values(std::ostream& out, const Partition& part, std::size_t order, const Values& values) {
    out << "STEP " << order << ' ' << part.size() << '\n';
    for (std::size_t i = 0; i < part.size(); ++i) {
        out << (i ? " " : "") << format17(part[i]);
    }
    out << '\n';
    const std::size_t row = part.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << format17(values[i]) << ((i + 1) % row == 0 ? '\n' : ' ');
    }
}

}  // namespace

StepObject read_step(std::istream& in) {
    TokenReader reader(in);
    if (reader.next("header") != "STEP") {
        throw ParseError(reader.line(), "expected header `STEP <order> <k>`");
    }
    const std::size_t order = reader.next_count("order");
    const std::size_t k = reader.next_count("part count");
    if (order < 2 || k == 0) {
        throw ParseError(reader.line(), "order must be >= 2 and part count >= 1");
    }
    std::vector<double> weights(k);
    for (auto& w : weights) {
        w = reader.next_double("part weight");
    }
    std::vector<double> values(checked_power(k, order));
    for (auto& v : values) {
        v = reader.next_double("value");
    }
    const std::size_t last = reader.line();
    if (!reader.exhausted()) {
        throw ParseError(reader.line(), "trailing data after step values");
    }
    try {
        Partition part(std::move(weights));
        if (order == 2) {
            Eigen::MatrixXd m(k, k);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    m(i, j) = values[i * k + j];
                }
            }
            return StepKernel(std::move(part), std::move(m));
        }
        return StepTensor(std::move(part), order, std::move(values));
    } catch (const InputError& e) {
        throw ParseError(last, e.what());
    }
}

StepObject read_step(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return read_step(in);
}

void write_step(std::ostream& out, const StepKernel& w) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(w.values().size()));
    for (Eigen::Index i = 0; i < w.values().rows(); ++i) {
        for (Eigen::Index j = 0; j < w.values().cols(); ++j) {
            flat.push_back(w.values()(i, j));
        }
    }
    write_values(out, w.partition(), 2, flat);
}

void write_step(std::ostream& out, const StepTensor& w) {
    write_values(out, w.partition(), w.order(), w.values());
}

}  // namespace hyperlim
