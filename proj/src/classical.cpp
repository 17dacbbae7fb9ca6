#include "commcent/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "commcent/error.hpp"
#include "commcent/parallel.hpp"

namespace commcent {

std::string_view measure_id(Measure m) {
    switch (m) {
    case Measure::Degree:
        return "d";
    case Measure::Betweenness:
        return "b";
    case Measure::Closeness:
        return "c";
    case Measure::Katz:
        return "k";
    case Measure::PageRank:
        return "p";
    case Measure::Subgraph:
        return "s";
    case Measure::Mnc:
        return "m";
    case Measure::Leverage:
        return "lev";
    case Measure::Diffusion:
        return "dif";
    case Measure::Laplacian:
        return "lap";
    }
    return "?";
}

std::optional<Measure> parse_measure(std::string_view id) {
    for (Measure m : kClassicalMeasures)
        if (measure_id(m) == id)
            return m;
    return std::nullopt;
}

void CentralityParams::validate() const {
    if (!(katz_fraction > 0.0 && katz_fraction < 1.0))
        throw InvalidArgument("katz_fraction must lie in (0, 1)");
    if (!(pagerank_damping > 0.0 && pagerank_damping < 1.0))
        throw InvalidArgument("pagerank_damping must lie in (0, 1)");
    if (!(diffusion_lambda > 0.0))
        throw InvalidArgument("diffusion_lambda must be positive");
    if (!(convergence_tol > 0.0))
        throw InvalidArgument("convergence_tol must be positive");
    if (max_iters < 1)
        throw InvalidArgument("max_iters must be at least 1");
}

namespace {

CentralityVector named(Measure m, std::vector<double> scores) {
    return {std::string(measure_id(m)), std::move(scores), {}};
}

// Sources are split into a fixed number of chunks, independent of the worker
// count, and chunk sums are added in order so results are bit-stable.
constexpr std::size_t kSourceChunks = 64;

} // namespace

CentralityVector degree(const Graph& g) {
    std::vector<double> s(g.node_count());
    for (NodeId v = 0; v < s.size(); ++v)
        s[v] = static_cast<double>(g.degree(v));
    return named(Measure::Degree, std::move(s));
}

CentralityVector betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    const std::size_t chunks = std::min(kSourceChunks, std::max<std::size_t>(n, 1));
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));

    parallel_for(chunks, [&](std::size_t chunk) {
        std::vector<double> sigma(n), delta(n);
        std::vector<std::int64_t> dist(n);
        std::vector<NodeId> order;
        order.reserve(n);
        auto& acc = partial[chunk];
        for (std::size_t s = chunk; s < n; s += chunks) {
            std::fill(sigma.begin(), sigma.end(), 0.0);
            std::fill(delta.begin(), delta.end(), 0.0);
            std::fill(dist.begin(), dist.end(), -1);
            order.clear();
            sigma[s] = 1.0;
            dist[s] = 0;
            order.push_back(static_cast<NodeId>(s));
            for (std::size_t head = 0; head < order.size(); ++head) {
                NodeId u = order[head];
                for (NodeId w : g.neighbors(u)) {
                    if (dist[w] < 0) {
                        dist[w] = dist[u] + 1;
                        order.push_back(w);
                    }
                    if (dist[w] == dist[u] + 1)
                        sigma[w] += sigma[u];
                }
            }
            for (std::size_t i = order.size(); i-- > 1;) {
                NodeId w = order[i];
                for (NodeId u : g.neighbors(w))
                    if (dist[u] == dist[w] - 1)
                        delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
                acc[w] += delta[w];
            }
        }
    });

    std::vector<double> s(n, 0.0);
    for (const auto& part : partial)
        for (std::size_t v = 0; v < n; ++v)
            s[v] += part[v];
    for (auto& x : s)
        x *= 0.5;
    return named(Measure::Betweenness, std::move(s));
}

CentralityVector closeness(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> s(n, 0.0);
    if (n < 2)
        return named(Measure::Closeness, std::move(s));
    parallel_for(n, [&](std::size_t v) {
        thread_local std::vector<std::uint32_t> dist;
        thread_local std::vector<NodeId> queue;
        detail::bfs_raw(g, static_cast<NodeId>(v), dist, queue);
        double total = 0.0;
        for (NodeId u : queue)
            total += dist[u];
        const double reach = static_cast<double>(queue.size() - 1);
        if (total > 0.0)
            s[v] = (reach / static_cast<double>(n - 1)) * (reach / total);
    });
    return named(Measure::Closeness, std::move(s));
}

namespace {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
    const auto size = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(size, size);
    for (auto [u, v] : g.edges()) {
        adj(u, v) = 1.0;
        adj(v, u) = 1.0;
    }
    return adj;
}

/// Largest eigenvalue over the components, from dense decompositions.
double dense_spectral_radius(const Graph& g) {
    double rho = 0.0;
    for (const auto& members : connected_components(g)) {
        if (members.size() < 2)
            continue;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(induced_subgraph(g, members).graph),
                                                               Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw ConvergenceError("eigendecomposition failed for the spectral radius");
        rho = std::max(rho, solver.eigenvalues().maxCoeff());
    }
    return rho;
}

} // namespace

double spectral_radius(const Graph& g, double tol, int max_iters) {
    const std::size_t n = g.node_count();
    if (g.edge_count() == 0)
        return 0.0;
    // Power iteration on A + I: its dominant eigenvalue is lambda_max + 1 even
    // for bipartite graphs, where A alone has a -lambda_max partner.
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
    double rho = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        for (NodeId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (NodeId u : g.neighbors(v))
                acc += x[u];
            y[v] = acc;
        }
        double rayleigh = 0.0, norm = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            rayleigh += x[v] * y[v];
            y[v] += x[v];
            norm += y[v] * y[v];
        }
        norm = std::sqrt(norm);
        for (std::size_t v = 0; v < n; ++v)
            x[v] = y[v] / norm;
        if (it > 0 && std::abs(rayleigh - rho) < tol * std::max(1.0, rayleigh))
            return rayleigh;
        rho = rayleigh;
    }
    // A small spectral gap (long chains, near-twin components) stalls the
    // iteration.
    return dense_spectral_radius(g);
}

CentralityVector katz_with_attenuation(const Graph& g, double attenuation, const CentralityParams& params) {
    const std::size_t n = g.node_count();
    std::vector<double> x(n, 1.0), next(n);
    for (int it = 0; it < params.max_iters; ++it) {
        double change = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (NodeId u : g.neighbors(v))
                acc += x[u];
            next[v] = attenuation * acc + 1.0;
            change = std::max(change, std::abs(next[v] - x[v]));
        }
        x.swap(next);
        if (change < params.convergence_tol) {
            CentralityVector out = named(Measure::Katz, std::move(x));
            out.params["attenuation"] = attenuation;
            return out;
        }
    }
    throw ConvergenceError("katz iteration did not converge");
}

CentralityVector katz(const Graph& g, const CentralityParams& params) {
    params.validate();
    if (g.edge_count() == 0) {
        // x = 1 is the fixed point for every attenuation.
        CentralityVector out = named(Measure::Katz, std::vector<double>(g.node_count(), 1.0));
        out.params["katz_fraction"] = params.katz_fraction;
        return out;
    }
    const double lambda = spectral_radius(g, params.convergence_tol, std::max(params.max_iters, 10000));
    CentralityVector out = katz_with_attenuation(g, params.katz_fraction / lambda, params);
    out.params["katz_fraction"] = params.katz_fraction;
    out.params["lambda_max"] = lambda;
    return out;
}

CentralityVector pagerank(const Graph& g, const CentralityParams& params) {
    params.validate();
    const std::size_t n = g.node_count();
    if (n == 0)
        return named(Measure::PageRank, {});
    const double d = params.pagerank_damping;
    const double base = (1.0 - d) / static_cast<double>(n);
    std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
    for (int it = 0; it < params.max_iters; ++it) {
        double dangling = 0.0;
        for (NodeId v = 0; v < n; ++v)
            if (g.degree(v) == 0)
                dangling += x[v];
        const double teleport = base + d * dangling / static_cast<double>(n);
        double change = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (NodeId u : g.neighbors(v))
                acc += x[u] / static_cast<double>(g.degree(u));
            next[v] = teleport + d * acc;
            change += std::abs(next[v] - x[v]);
        }
        x.swap(next);
        if (change < params.convergence_tol) {
            const double total = std::accumulate(x.begin(), x.end(), 0.0);
            for (auto& v : x)
                v /= total;
            CentralityVector out = named(Measure::PageRank, std::move(x));
            out.params["damping"] = d;
            return out;
        }
    }
    throw ConvergenceError("pagerank iteration did not converge");
}

CentralityVector subgraph_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> s(n, 1.0);
    auto comps = connected_components(g);
    std::vector<std::size_t> multi;
    for (std::size_t c = 0; c < comps.size(); ++c)
        if (comps[c].size() > 1)
            multi.push_back(c);

    parallel_for(multi.size(), [&](std::size_t idx) {
        const auto& members = comps[multi[idx]];
        const auto sub = induced_subgraph(g, members);
        const auto size = static_cast<Eigen::Index>(members.size());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(sub.graph));
        if (solver.info() != Eigen::Success)
            throw Error("eigendecomposition failed for subgraph centrality");
        const Eigen::VectorXd weights = solver.eigenvalues().array().exp();
        const Eigen::VectorXd diag = solver.eigenvectors().array().square().matrix() * weights;
        for (Eigen::Index i = 0; i < size; ++i)
            s[sub.to_parent[static_cast<std::size_t>(i)]] = diag(i);
    });
    return named(Measure::Subgraph, std::move(s));
}

CentralityVector mnc(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> s(n, 0.0);
    parallel_for(n, [&](std::size_t v) {
        auto nb = g.neighbors(static_cast<NodeId>(v));
        if (nb.empty())
            return;
        // Union-find over positions in the sorted neighbor list.
        std::vector<std::uint32_t> parent(nb.size());
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&parent](std::uint32_t a) {
            while (parent[a] != a)
                a = parent[a] = parent[parent[a]];
            return a;
        };
        for (std::uint32_t i = 0; i < nb.size(); ++i) {
            for (NodeId w : g.neighbors(nb[i])) {
                if (w <= nb[i])
                    continue;
                auto it = std::lower_bound(nb.begin(), nb.end(), w);
                if (it != nb.end() && *it == w) {
                    auto a = find(i), b = find(static_cast<std::uint32_t>(it - nb.begin()));
                    if (a != b)
                        parent[a] = b;
                }
            }
        }
        std::vector<std::uint32_t> count(nb.size(), 0);
        std::uint32_t best = 0;
        for (std::uint32_t i = 0; i < nb.size(); ++i)
            best = std::max(best, ++count[find(i)]);
        s[v] = best;
    });
    return named(Measure::Mnc, std::move(s));
}

CentralityVector leverage(const Graph& g) {
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < s.size(); ++v) {
        const double kv = static_cast<double>(g.degree(v));
        if (kv == 0.0)
            continue;
        double acc = 0.0;
        for (NodeId u : g.neighbors(v)) {
            const double ku = static_cast<double>(g.degree(u));
            acc += (kv - ku) / (kv + ku);
        }
        s[v] = acc / kv;
    }
    return named(Measure::Leverage, std::move(s));
}

CentralityVector diffusion_degree(const Graph& g, const CentralityParams& params) {
    params.validate();
    const double lambda = params.diffusion_lambda;
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < s.size(); ++v) {
        double acc = static_cast<double>(g.degree(v));
        for (NodeId u : g.neighbors(v))
            acc += static_cast<double>(g.degree(u));
        s[v] = lambda * acc;
    }
    CentralityVector out = named(Measure::Diffusion, std::move(s));
    out.params["lambda"] = lambda;
    return out;
}

CentralityVector laplacian_centrality(const Graph& g) {
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < s.size(); ++v) {
        const double kv = static_cast<double>(g.degree(v));
        double neighbor_sum = 0.0;
        for (NodeId u : g.neighbors(v))
            neighbor_sum += static_cast<double>(g.degree(u));
        s[v] = kv * kv + kv + 2.0 * neighbor_sum;
    }
    return named(Measure::Laplacian, std::move(s));
}

CentralityVector compute(Measure m, const Graph& g, const CentralityParams& params) {
    switch (m) {
    case Measure::Degree:
        return degree(g);
    case Measure::Betweenness:
        return betweenness(g);
    case Measure::Closeness:
        return closeness(g);
    case Measure::Katz:
        return katz(g, params);
    case Measure::PageRank:
        return pagerank(g, params);
    case Measure::Subgraph:
        return subgraph_centrality(g);
    case Measure::Mnc:
        return mnc(g);
    case Measure::Leverage:
        return leverage(g);
    case Measure::Diffusion:
        return diffusion_degree(g, params);
    case Measure::Laplacian:
        return laplacian_centrality(g);
    }
    throw InvalidArgument("unknown measure");
}

} // namespace commcent
