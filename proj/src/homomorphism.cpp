#include "hyperlim/homomorphism.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "hyperlim/contractions.hpp"
#include "hyperlim/errors.hpp"

namespace hyperlim {

namespace {

void check_pairs(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs, const char* what) {
    for (const auto& [u, v] : pairs) {
        if (u >= n || v >= n) {
            throw InputError(std::string(what) + " endpoint out of range");
        }
        if (u == v) {
            throw InputError(std::string(what) + " is a loop");
        }
    }
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
        throw InputError(std::string("duplicate ") + what);
    }
}

}  // namespace

SimpleGraph::SimpleGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(n), edges_(std::move(edges)) {
    for (auto& [u, v] : edges_) {
        if (u > v) {
            std::swap(u, v);
        }
    }
    std::sort(edges_.begin(), edges_.end());
    check_pairs(n_, edges_, "edge");
}

DirectedGraph::DirectedGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> arcs)
    : n_(n), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end());
    check_pairs(n_, arcs_, "arc");
}

SimpleGraph complete_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph cycle_graph(std::size_t k) {
    if (k < 3) {
        throw InputError("cycle needs at least 3 vertices");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < k; ++i) {
        edges.emplace_back(i, static_cast<Vertex>((i + 1) % k));
    }
    return SimpleGraph(k, std::move(edges));
}

SimpleGraph path_graph(std::size_t vertices) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i + 1 < vertices; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return SimpleGraph(vertices, std::move(edges));
}

DirectedGraph directed_cycle(std::size_t k) {
    if (k < 2) {
        throw InputError("directed cycle needs at least 2 vertices");
    }
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex i = 0; i < k; ++i) {
        arcs.emplace_back(i, static_cast<Vertex>((i + 1) % k));
    }
    return DirectedGraph(k, std::move(arcs));
}

DirectedGraph directed_path(std::size_t vertices) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex i = 0; i + 1 < vertices; ++i) {
        arcs.emplace_back(i, i + 1);
    }
    return DirectedGraph(vertices, std::move(arcs));
}

// ---------------------------------------------------------------- enumeration

namespace {

// For vertex v, the earlier vertices u joined to it; `forward` means the
// factor is M(phi(u), phi(v)), otherwise M(phi(v), phi(u)).
struct BackArc {
    std::size_t u;
    bool forward;
};

using BackLists = std::vector<std::vector<BackArc>>;

BackLists back_lists(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    BackLists back(n);
    for (const auto& [a, b] : pairs) {
        if (a < b) {
            back[b].push_back({a, true});
        } else {
            back[a].push_back({b, false});
        }
    }
    return back;
}

// Sum over phi: [n] -> [targets] of prod vertex_weight(phi(v)) * prod arc
// factors. Depth-first in lexicographic order of phi, subtrees with a zero
// partial product skipped.
template <class T, class Mat>
T enumerate_maps(const BackLists& back, const Mat& m, const std::vector<T>& vertex_weight) {
    const std::size_t n = back.size();
    const std::size_t targets = vertex_weight.size();
    if (n == 0) {
        return T(1);
    }
    if (targets == 0) {
        return T(0);
    }
    std::vector<std::size_t> phi(n, 0);
    std::vector<T> prefix(n + 1);
    prefix[0] = T(1);
    T total(0);
    std::size_t v = 0;
    phi[0] = 0;
    while (true) {
        if (phi[v] == targets) {
            if (v == 0) {
                break;
            }
            phi[v] = 0;
            --v;
            ++phi[v];
            continue;
        }
        T factor = prefix[v] * vertex_weight[phi[v]];
        for (const auto& arc : back[v]) {
            if (factor == T(0)) {
                break;
            }
            const std::size_t a = phi[arc.u];
            const std::size_t b = phi[v];
            factor *= arc.forward ? m(a, b) : m(b, a);
        }
        if (factor == T(0)) {
            ++phi[v];
            continue;
        }
        if (v + 1 == n) {
            total += factor;
            ++phi[v];
            continue;
        }
        prefix[v + 1] = factor;
        ++v;
        phi[v] = 0;
    }
    return total;
}

}  // namespace

double hom_weighted(const SimpleGraph& f, const WeightedGraph& g) {
    const std::vector<double> ones(g.num_vertices(), 1.0);
    return enumerate_maps(back_lists(f.num_vertices(), f.edges()), g.weights(), ones);
}

Rational hom_weighted(const SimpleGraph& f, const RationalMatrix& g) {
    if (g.rows() != g.cols()) {
        throw InputError("weight matrix must be square");
    }
    const std::vector<Rational> ones(static_cast<std::size_t>(g.rows()), Rational(1));
    return enumerate_maps(back_lists(f.num_vertices(), f.edges()), g, ones);
}

double t_density(const SimpleGraph& f, const WeightedGraph& g) {
    const double n = static_cast<double>(g.num_vertices());
    return hom_weighted(f, g) / std::pow(n, static_cast<double>(f.num_vertices()));
}

double t_density(const SimpleGraph& f, const StepKernel& w) {
    if (!w.symmetric()) {
        throw InputError("undirected densities need a symmetric kernel; use a directed pattern");
    }
    return enumerate_maps(back_lists(f.num_vertices(), f.edges()), w.values(), w.partition().weights());
}

double t_density(const DirectedGraph& f, const StepKernel& w) {
    return enumerate_maps(back_lists(f.num_vertices(), f.arcs()), w.values(), w.partition().weights());
}

double t_density(const UniformHypergraph& f, const StepTensor& w) {
    if (f.uniformity() != w.order()) {
        throw InputError("pattern uniformity " + std::to_string(f.uniformity()) + " does not match tensor order " +
                         std::to_string(w.order()));
    }
    const std::size_t n = f.num_vertices();
    const std::size_t k = w.parts();
    // Each edge is evaluated once its largest vertex is assigned.
    std::vector<std::vector<const Edge*>> closing(n);
    for (const auto& e : f.edges()) {
        closing[e.back()].push_back(&e);
    }
    if (n == 0) {
        return 1.0;
    }
    const auto& part = w.partition().weights();
    std::vector<std::size_t> phi(n, 0);
    std::vector<double> prefix(n + 1, 1.0);
    std::vector<std::size_t> image(w.order());
    double total = 0.0;
    std::size_t v = 0;
    while (true) {
        if (phi[v] == k) {
            if (v == 0) {
                break;
            }
            phi[v] = 0;
            --v;
            ++phi[v];
            continue;
        }
        double factor = prefix[v] * part[phi[v]];
        for (const Edge* e : closing[v]) {
            for (std::size_t i = 0; i < e->size(); ++i) {
                image[i] = phi[(*e)[i]];
            }
            factor *= w.at(image);
            if (factor == 0.0) {
                break;
            }
        }
        if (factor == 0.0) {
            ++phi[v];
            continue;
        }
        if (v + 1 == n) {
            total += factor;
            ++phi[v];
            continue;
        }
        prefix[v + 1] = factor;
        ++v;
        phi[v] = 0;
    }
    return total;
}

double directed_cycle_density(const StepKernel& w, std::size_t k) {
    if (k == 0) {
        throw InputError("cycle length must be positive");
    }
    const Eigen::MatrixXd op = w.operating_matrix();
    Eigen::MatrixXd power = op;
    for (std::size_t i = 1; i < k; ++i) {
        power = power * op;
    }
    return power.trace();
}

MomentCheck spectral_moment_check(const WeightedGraph& g, std::size_t k) {
    if (k < 3) {
        throw InputError("cycle length must be at least 3");
    }
    MomentCheck out{};
    out.hom = hom_weighted(cycle_graph(k), g);
    const Eigen::MatrixXd& a = g.weights();
    Eigen::MatrixXd power = a;
    for (std::size_t i = 1; i < k; ++i) {
        power = power * a;
    }
    out.trace = power.trace();
    double sum = 0.0;
    if (a.rows() > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            sum += std::pow(solver.eigenvalues()(i), static_cast<double>(k));
        }
    }
    out.eigen_sum = sum;
    return out;
}

// ---------------------------------------------------------------- hypergraph homs

std::uint64_t hom_hypergraph(const UniformHypergraph& f, const UniformHypergraph& h) {
    if (f.uniformity() != h.uniformity()) {
        throw InputError("pattern and target uniformities differ (" + std::to_string(f.uniformity()) + " vs " +
                         std::to_string(h.uniformity()) + ")");
    }
    const std::size_t n = f.num_vertices();
    const std::size_t big_n = h.num_vertices();
    const std::size_t r = f.uniformity();

    // Visit vertices edge by edge so that edges close early and prune.
    std::vector<std::size_t> order;
    std::vector<std::size_t> position(n, n);
    for (const auto& e : f.edges()) {
        for (Vertex x : e) {
            if (position[x] == n) {
                position[x] = order.size();
                order.push_back(x);
            }
        }
    }
    const std::size_t active = order.size();
    const std::size_t isolated = n - active;

    std::uint64_t isolated_factor = 1;
    for (std::size_t i = 0; i < isolated; ++i) {
        if (big_n != 0 && isolated_factor > std::numeric_limits<std::uint64_t>::max() / big_n) {
            throw CapacityError("homomorphism count overflows 64 bits");
        }
        isolated_factor *= big_n;
    }
    if (active == 0) {
        return isolated_factor;
    }
    if (big_n == 0) {
        return 0;
    }
    if (static_cast<double>(active) * std::log2(static_cast<double>(big_n)) > 62.0) {
        throw CapacityError("homomorphism enumeration too large");
    }

    // closing[i]: edges whose last vertex in visit order is order[i], as
    // lists of visit positions.
    std::vector<std::vector<std::vector<std::size_t>>> closing(active);
    for (const auto& e : f.edges()) {
        std::vector<std::size_t> pos;
        for (Vertex x : e) {
            pos.push_back(position[x]);
        }
        const std::size_t last = *std::max_element(pos.begin(), pos.end());
        closing[last].push_back(std::move(pos));
    }

    const bool use_masks = big_n <= 64;
    std::vector<std::uint64_t> masks;
    if (use_masks) {
        for (const auto& e : h.edges()) {
            std::uint64_t m = 0;
            for (Vertex x : e) {
                m |= std::uint64_t{1} << x;
            }
            masks.push_back(m);
        }
        std::sort(masks.begin(), masks.end());
    }
    auto edge_present = [&](const std::vector<std::size_t>& pos, const std::vector<std::size_t>& phi) {
        if (use_masks) {
            std::uint64_t m = 0;
            for (std::size_t p : pos) {
                m |= std::uint64_t{1} << phi[p];
            }
            return static_cast<std::size_t>(std::popcount(m)) == r && std::binary_search(masks.begin(), masks.end(), m);
        }
        Edge image;
        for (std::size_t p : pos) {
            image.push_back(static_cast<Vertex>(phi[p]));
        }
        std::sort(image.begin(), image.end());
        return std::adjacent_find(image.begin(), image.end()) == image.end() && h.base().contains_edge(image);
    };

    std::vector<std::size_t> phi(active, 0);
    std::uint64_t count = 0;
    std::size_t v = 0;
    while (true) {
        if (phi[v] == big_n) {
            if (v == 0) {
                break;
            }
            phi[v] = 0;
            --v;
            ++phi[v];
            continue;
        }
        bool ok = true;
        for (const auto& pos : closing[v]) {
            if (!edge_present(pos, phi)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++phi[v];
            continue;
        }
        if (v + 1 == active) {
            ++count;
            ++phi[v];
            continue;
        }
        ++v;
        phi[v] = 0;
    }
    if (count != 0 && isolated_factor > std::numeric_limits<std::uint64_t>::max() / count) {
        throw CapacityError("homomorphism count overflows 64 bits");
    }
    return count * isolated_factor;
}

UniformHypergraph subdivide(const SimpleGraph& f, std::size_t r) {
    if (r < 1) {
        throw InputError("subdivision parameter must be at least 1");
    }
    const std::size_t n = f.num_vertices();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < f.num_edges(); ++i) {
        const auto [u, v] = f.edges()[i];
        Edge e{u, v};
        for (std::size_t j = 0; j < r; ++j) {
            e.push_back(static_cast<Vertex>(n + i * r + j));
        }
        edges.push_back(std::move(e));
    }
    return UniformHypergraph(n + r * f.num_edges(), r + 2, std::move(edges));
}

UniformHypergraph intersection_pattern(const SimpleGraph& f, std::size_t r) {
    if (r < 1) {
        throw InputError("intersection pattern parameter must be at least 1");
    }
    const std::size_t n = f.num_vertices();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < f.num_edges(); ++i) {
        const auto [u, v] = f.edges()[i];
        for (Vertex end : {u, v}) {
            Edge e{end};
            for (std::size_t j = 0; j < r; ++j) {
                e.push_back(static_cast<Vertex>(n + i * r + j));
            }
            edges.push_back(std::move(e));
        }
    }
    return UniformHypergraph(n + r * f.num_edges(), r + 1, std::move(edges));
}

// ---------------------------------------------------------------- identities

namespace {

bool relative_equal(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-9 * scale;
}

Rational rational_power(const Rational& base, std::size_t e) {
    Rational out(1);
    for (std::size_t i = 0; i < e; ++i) {
        out *= base;
    }
    return out;
}

std::uint64_t factorial_u64(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

RationalMatrix to_rational(const CountMatrix& c, const Rational& scale) {
    RationalMatrix out(c.rows(), c.cols());
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            out(i, j) = Rational(c(i, j)) / scale;
        }
    }
    return out;
}

IdentityCheck finish(const Rational& lhs, const Rational& rhs) {
    return {lhs.convert_to<double>(), rhs.convert_to<double>(), lhs == rhs};
}

}  // namespace

IdentityCheck verify_subdivision_identity(const SimpleGraph& f, const UniformHypergraph& h, std::size_t r,
                                          Arithmetic mode) {
    if (h.uniformity() != r + 2) {
        throw InputError("subdivision identity needs a " + std::to_string(r + 2) + "-uniform target");
    }
    const std::uint64_t lhs = hom_hypergraph(subdivide(f, r), h);
    const std::size_t edges = f.num_edges();
    const std::size_t big_n = h.num_vertices();
    if (mode == Arithmetic::exact) {
        const Rational n_pow_r = rational_power(Rational(big_n), r);
        const Rational hom = hom_weighted(f, to_rational(codegree_counts(h), n_pow_r));
        const Rational rhs = rational_power(Rational(factorial_u64(r)) * n_pow_r, edges) * hom;
        return finish(Rational(lhs), rhs);
    }
    const double base = static_cast<double>(factorial_u64(r)) * std::pow(static_cast<double>(big_n), static_cast<double>(r));
    const double rhs = std::pow(base, static_cast<double>(edges)) * hom_weighted(f, codegree_section(h));
    const double l = static_cast<double>(lhs);
    return {l, rhs, relative_equal(l, rhs)};
}

IdentityCheck verify_intersection_identity(const SimpleGraph& f, const UniformHypergraph& h, std::size_t r,
                                           Arithmetic mode) {
    if (h.uniformity() != r + 1) {
        throw InputError("intersection identity needs a " + std::to_string(r + 1) + "-uniform target");
    }
    const std::uint64_t lhs = hom_hypergraph(intersection_pattern(f, r), h);
    const std::size_t edges = f.num_edges();
    if (mode == Arithmetic::exact) {
        const Rational hom = hom_weighted(f, to_rational(intersection_counts(h), Rational(1)));
        const Rational rhs = rational_power(Rational(factorial_u64(r)), edges) * hom;
        return finish(Rational(lhs), rhs);
    }
    const double rhs = std::pow(static_cast<double>(factorial_u64(r)), static_cast<double>(edges)) *
                       hom_weighted(f, intersection_matrix(h).raw);
    const double l = static_cast<double>(lhs);
    return {l, rhs, relative_equal(l, rhs)};
}

// ---------------------------------------------------------------- text format

namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t lineno) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (true) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
            ++pos;
        }
        if (pos == line.size()) {
            return out;
        }
        std::uint64_t value = 0;
        const char* begin = line.data() + pos;
        const char* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
            throw ParseError(lineno, "expected a nonnegative integer");
        }
        out.push_back(value);
        pos = static_cast<std::size_t>(ptr - line.data());
    }
}

}  // namespace

SimpleGraph read_simple_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n;
    std::vector<std::pair<Vertex, Vertex>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        const auto first = view.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || view[first] == '#') {
            continue;
        }
        view.remove_prefix(first);
        if (!n) {
            if (view.size() < 2 || view[0] != 'N' || (view[1] != ' ' && view[1] != '\t')) {
                throw ParseError(lineno, "expected header `N <vertex count>`");
            }
            const auto nums = parse_numbers(view.substr(2), lineno);
            if (nums.size() != 1) {
                throw ParseError(lineno, "expected a vertex count");
            }
            n = static_cast<std::size_t>(nums[0]);
            continue;
        }
        const auto nums = parse_numbers(view, lineno);
        if (nums.size() != 2) {
            throw ParseError(lineno, "expected an edge `u v`");
        }
        if (nums[0] >= *n || nums[1] >= *n) {
            throw ParseError(lineno, "vertex id out of range");
        }
        edges.emplace_back(static_cast<Vertex>(nums[0]), static_cast<Vertex>(nums[1]));
    }
    if (!n) {
        throw ParseError(lineno == 0 ? 1 : lineno, "missing header `N <vertex count>`");
    }
    try {
        return SimpleGraph(*n, std::move(edges));
    } catch (const InputError& e) {
        throw ParseError(lineno, e.what());
    }
}

SimpleGraph read_simple_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return read_simple_graph(in);
}

void write_simple_graph(std::ostream& out, const SimpleGraph& g) {
    out << "N " << g.num_vertices() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

}  // namespace hyperlim
