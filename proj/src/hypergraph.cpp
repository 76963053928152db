#include "hyperlim/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "hyperlim/errors.hpp"

namespace hyperlim {

Hypergraph::Hypergraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.empty()) {
            throw InputError("hypergraph edge must contain at least one vertex");
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw InputError("hypergraph edge contains a repeated vertex");
        }
        if (e.back() >= n_) {
            throw InputError("vertex id " + std::to_string(e.back()) + " out of range for n = " +
                             std::to_string(n_));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw InputError("hypergraph contains a duplicate edge");
    }
}

bool Hypergraph::contains_edge(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::size_t Hypergraph::max_edge_size() const noexcept {
    std::size_t best = 0;
    for (const auto& e : edges_) {
        best = std::max(best, e.size());
    }
    return best;
}

UniformHypergraph::UniformHypergraph(Hypergraph base, std::size_t r) : base_(std::move(base)), r_(r) {
    if (r_ < 2) {
        throw InputError("uniformity must be at least 2");
    }
    for (const auto& e : base_.edges()) {
        if (e.size() != r_) {
            throw InputError("edge of size " + std::to_string(e.size()) + " in a " + std::to_string(r_) +
                             "-uniform hypergraph");
        }
    }
}

std::optional<std::size_t> uniformity(const Hypergraph& h) {
    if (h.num_edges() == 0) {
        return std::nullopt;
    }
    const std::size_t r = h.edges().front().size();
    if (r < 2) {
        return std::nullopt;
    }
    for (const auto& e : h.edges()) {
        if (e.size() != r) {
            return std::nullopt;
        }
    }
    return r;
}

WeightedGraph::WeightedGraph(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
    if (weights_.rows() != weights_.cols()) {
        throw InputError("weight matrix must be square");
    }
    const auto n = weights_.rows();
    for (Eigen::Index u = 0; u < n; ++u) {
        for (Eigen::Index v = 0; v < n; ++v) {
            if (weights_(u, v) != weights_(v, u)) {
                throw InputError("weight matrix is not symmetric");
            }
            if (!(weights_(u, v) >= 0.0)) {
                throw InputError("weight matrix has a negative or NaN entry");
            }
        }
    }
}

WeightedGraph adjacency_matrix(const UniformHypergraph& g) {
    if (g.uniformity() != 2) {
        throw InputError("adjacency matrix requires a 2-uniform hypergraph");
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
    for (const auto& e : g.edges()) {
        a(e[0], e[1]) = 1.0;
        a(e[1], e[0]) = 1.0;
    }
    return WeightedGraph(std::move(a));
}

namespace {

void check_vertex(const UniformHypergraph& h, Vertex v) {
    if (v >= h.num_vertices()) {
        throw InputError("vertex id " + std::to_string(v) + " out of range for n = " +
                         std::to_string(h.num_vertices()));
    }
}

}  // namespace

std::size_t degree(const UniformHypergraph& h, Vertex v) {
    check_vertex(h, v);
    return static_cast<std::size_t>(std::count_if(h.edges().begin(), h.edges().end(), [v](const Edge& e) {
        return std::binary_search(e.begin(), e.end(), v);
    }));
}

std::size_t codegree(const UniformHypergraph& h, Vertex u, Vertex v) {
    check_vertex(h, u);
    check_vertex(h, v);
    return static_cast<std::size_t>(std::count_if(h.edges().begin(), h.edges().end(), [u, v](const Edge& e) {
        return std::binary_search(e.begin(), e.end(), u) && std::binary_search(e.begin(), e.end(), v);
    }));
}

RankDecomposition decompose(const Hypergraph& h) {
    std::map<std::size_t, std::vector<Edge>> by_size;
    RankDecomposition out;
    for (const auto& e : h.edges()) {
        if (e.size() < 2) {
            ++out.ignored_singletons;
            continue;
        }
        by_size[e.size()].push_back(e);
    }
    if (by_size.empty()) {
        throw InputError("hypergraph has no edge of size >= 2");
    }
    out.rank = by_size.rbegin()->first;
    for (auto& [r, edges] : by_size) {
        out.levels.emplace(r, UniformHypergraph(h.num_vertices(), r, std::move(edges)));
    }
    return out;
}

bool is_linear(const UniformHypergraph& h) {
    // Linear iff no vertex pair lies in two edges.
    std::vector<std::uint64_t> pairs;
    pairs.reserve(h.num_edges() * h.uniformity() * (h.uniformity() - 1) / 2);
    for (const auto& e : h.edges()) {
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (std::size_t b = a + 1; b < e.size(); ++b) {
                pairs.push_back((static_cast<std::uint64_t>(e[a]) << 32) | e[b]);
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::uint64_t> parse_ids(std::string_view line, std::size_t lineno) {
    std::vector<std::uint64_t> ids;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        if (pos == line.size()) {
            break;
        }
        std::uint64_t value = 0;
        const auto* begin = line.data() + pos;
        const auto* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t')) {
            throw ParseError(lineno, "expected a nonnegative integer vertex id");
        }
        ids.push_back(value);
        pos = static_cast<std::size_t>(ptr - line.data());
    }
    return ids;
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (!text.empty() && text.back() != '\n') {
        std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
        throw ParseError(lines, "missing final newline");
    }

    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto stop = text.find('\n', start);
        std::string_view line = trim(std::string_view(text).substr(start, stop - start));
        start = stop + 1;
        ++lineno;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!n) {
            if (line.size() < 2 || line[0] != 'N' || (line[1] != ' ' && line[1] != '\t')) {
                throw ParseError(lineno, "expected header `N <vertex count>`");
            }
            const auto ids = parse_ids(line.substr(2), lineno);
            if (ids.size() != 1 || ids[0] == 0) {
                throw ParseError(lineno, "expected a positive vertex count");
            }
            n = static_cast<std::size_t>(ids[0]);
            continue;
        }
        const auto ids = parse_ids(line, lineno);
        Edge e;
        e.reserve(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] >= *n) {
                throw ParseError(lineno, "vertex id " + std::to_string(ids[i]) + " out of range");
            }
            if (i > 0 && ids[i] <= ids[i - 1]) {
                throw ParseError(lineno, "edge vertex ids must be strictly ascending");
            }
            e.push_back(static_cast<Vertex>(ids[i]));
        }
        edges.push_back(std::move(e));
    }
    if (!n) {
        throw ParseError(lineno == 0 ? 1 : lineno, "missing header `N <vertex count>`");
    }
    try {
        return Hypergraph(*n, std::move(edges));
    } catch (const InputError& e) {
        throw ParseError(lineno, e.what());
    }
}

Hypergraph read_hypergraph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return read_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << "N " << h.num_vertices() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << e[i];
        }
        out << '\n';
    }
}

void write_hypergraph(const std::filesystem::path& path, const Hypergraph& h) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    write_hypergraph(out, h);
}

}  // namespace hyperlim
