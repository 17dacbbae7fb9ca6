#pragma once

// Shared fixtures and independent reference implementations for the tests.
// The oracles here deliberately use different algorithms from the library
// (dense matrices, enumeration, peeling) so agreement means something.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "commcent/graph.hpp"
#include "commcent/partition.hpp"
#include "commcent/random.hpp"

namespace fixtures {

using commcent::Edge;
using commcent::Graph;
using commcent::NodeId;
using commcent::Partition;

inline Graph make(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

/// Two triangles a-b-c and d-e-f joined by c-d; a..f are 0..5.
inline Graph tt() { return make(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}}); }
inline Partition p2() {
    std::vector<std::uint64_t> raw{0, 0, 0, 1, 1, 1};
    return Partition::from_assignment(raw);
}
constexpr NodeId a = 0, b = 1, c = 2, d = 3, e = 4, f = 5;

inline Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i)
        edges.emplace_back(i, i + 1);
    return make(n, edges);
}

inline Graph cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        edges.emplace_back(i, static_cast<NodeId>((i + 1) % n));
    return make(n, edges);
}

inline Graph complete(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return make(n, edges);
}

/// Star with center 0 and n-1 leaves.
inline Graph star(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 1; i < n; ++i)
        edges.emplace_back(0, i);
    return make(n, edges);
}

/// G(n, p); with `no_isolated` every degree-0 node is joined to a random node.
inline Graph random_graph(std::size_t n, double p, commcent::Rng& rng, bool no_isolated = true) {
    std::vector<Edge> edges;
    std::vector<int> deg(n, 0);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.uniform() < p) {
                edges.emplace_back(i, j);
                ++deg[i];
                ++deg[j];
            }
    if (no_isolated && n > 1)
        for (NodeId i = 0; i < n; ++i)
            if (deg[i] == 0) {
                NodeId j = static_cast<NodeId>(rng.below(n - 1));
                if (j >= i)
                    ++j;
                edges.emplace_back(i, j);
                ++deg[i];
                ++deg[j];
            }
    return make(n, edges);
}

inline Partition random_partition(std::size_t n, std::size_t k, commcent::Rng& rng) {
    std::vector<std::uint64_t> raw(n);
    for (auto& r : raw)
        r = rng.below(k);
    return Partition::from_assignment(raw);
}

/// Relabels node v as perm[v].
inline Graph permute(const Graph& g, const std::vector<NodeId>& perm) {
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        edges.emplace_back(perm[u], perm[v]);
    return make(g.node_count(), edges);
}

} // namespace fixtures

namespace oracle {

using commcent::Graph;
using commcent::NodeId;
using commcent::Partition;

constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (NodeId i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (NodeId j : g.neighbors(i))
            d[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// Betweenness by listing every shortest path of every unordered pair.
inline std::vector<double> betweenness_by_paths(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto d = floyd_warshall(g);
    std::vector<double> score(n, 0.0);
    for (NodeId s = 0; s < n; ++s)
        for (NodeId t = s + 1; t < n; ++t) {
            if (d[s][t] >= kInf)
                continue;
            std::vector<std::vector<NodeId>> paths;
            std::vector<NodeId> current{s};
            std::function<void(NodeId)> walk = [&](NodeId u) {
                if (u == t) {
                    paths.push_back(current);
                    return;
                }
                for (NodeId w : g.neighbors(u))
                    if (d[s][w] == d[s][u] + 1 && d[w][t] == d[u][t] - 1) {
                        current.push_back(w);
                        walk(w);
                        current.pop_back();
                    }
            };
            walk(s);
            std::vector<int> through(n, 0);
            for (const auto& p : paths)
                for (std::size_t i = 1; i + 1 < p.size(); ++i)
                    ++through[p[i]];
            for (NodeId v = 0; v < n; ++v)
                if (through[v])
                    score[v] += static_cast<double>(through[v]) / static_cast<double>(paths.size());
        }
    return score;
}

inline Eigen::MatrixXd adjacency(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges()) {
        A(u, v) = 1.0;
        A(v, u) = 1.0;
    }
    return A;
}

/// Diagonal of sum_{k<terms} A^k / k!.
inline std::vector<double> subgraph_by_series(const Graph& g, int terms = 20) {
    const Eigen::MatrixXd A = adjacency(g);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(A.rows(), A.cols());
    Eigen::MatrixXd sum = term;
    for (int k = 1; k < terms; ++k) {
        term = term * A / static_cast<double>(k);
        sum += term;
    }
    std::vector<double> out(g.node_count());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = sum(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    return out;
}

/// Solves (I - aA) x = 1 directly.
inline std::vector<double> katz_by_solve(const Graph& g, double attenuation) {
    const Eigen::MatrixXd A = adjacency(g);
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(A.rows(), A.cols()) - attenuation * A;
    const Eigen::VectorXd x = M.partialPivLu().solve(Eigen::VectorXd::Ones(A.rows()));
    return {x.data(), x.data() + x.size()};
}

/// Stationary vector of the damped random walk by a dense linear solve;
/// dangling nodes jump uniformly.
inline std::vector<double> pagerank_by_solve(const Graph& g, double damping) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n); // column-stochastic
    for (NodeId j = 0; j < g.node_count(); ++j) {
        if (g.degree(j) == 0) {
            P.col(j).setConstant(1.0 / static_cast<double>(n));
            continue;
        }
        for (NodeId i : g.neighbors(j))
            P(i, j) = 1.0 / static_cast<double>(g.degree(j));
    }
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) - damping * P;
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, (1.0 - damping) / static_cast<double>(n));
    const Eigen::VectorXd x = M.partialPivLu().solve(rhs);
    return {x.data(), x.data() + x.size()};
}

inline std::vector<double> closeness_by_distances(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto d = floyd_warshall(g);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double reach = 0.0, sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && d[i][j] < kInf) {
                reach += 1.0;
                sum += d[i][j];
            }
        if (sum > 0.0)
            out[i] = (reach / static_cast<double>(n - 1)) * (reach / sum);
    }
    return out;
}

/// Laplacian energy sum(k^2) + 2m, i.e. the sum of squared Laplacian eigenvalues.
inline std::int64_t laplacian_energy(const Graph& g) {
    std::int64_t e = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        e += static_cast<std::int64_t>(g.degree(v) * g.degree(v));
    return e + 2 * static_cast<std::int64_t>(g.edge_count());
}

/// Energy drop when node i loses all its edges (equivalent to removal).
inline std::vector<std::int64_t> laplacian_by_energy_drop(const Graph& g) {
    const std::int64_t base = laplacian_energy(g);
    std::vector<std::int64_t> out(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) {
        std::vector<commcent::Edge> kept;
        for (auto [u, v] : g.edges())
            if (u != i && v != i)
                kept.emplace_back(u, v);
        out[i] = base - laplacian_energy(Graph::from_edges(g.node_count(), kept));
    }
    return out;
}

/// Largest component among N(i), found with a dense adjacency flood fill.
inline std::vector<double> mnc_by_flood(const Graph& g) {
    std::vector<double> out(g.node_count(), 0.0);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        std::vector<NodeId> nb(g.neighbors(i).begin(), g.neighbors(i).end());
        std::vector<bool> seen(nb.size(), false);
        std::size_t best = 0;
        for (std::size_t s = 0; s < nb.size(); ++s) {
            if (seen[s])
                continue;
            std::vector<std::size_t> stack{s};
            seen[s] = true;
            std::size_t size = 0;
            while (!stack.empty()) {
                const std::size_t x = stack.back();
                stack.pop_back();
                ++size;
                for (std::size_t y = 0; y < nb.size(); ++y)
                    if (!seen[y] && g.has_edge(nb[x], nb[y])) {
                        seen[y] = true;
                        stack.push_back(y);
                    }
            }
            best = std::max(best, size);
        }
        out[i] = static_cast<double>(best);
    }
    return out;
}

/// Core numbers by repeated minimum-degree peeling.
inline std::vector<std::uint32_t> cores_by_peeling(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> core(n, 0);
    std::vector<bool> removed(n, false);
    std::vector<std::size_t> deg(n);
    for (NodeId v = 0; v < n; ++v)
        deg[v] = g.degree(v);
    std::size_t left = n;
    std::uint32_t k = 0;
    while (left > 0) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId v = 0; v < n; ++v)
                if (!removed[v] && deg[v] <= k) {
                    removed[v] = true;
                    core[v] = k;
                    --left;
                    changed = true;
                    for (NodeId u : g.neighbors(v))
                        if (!removed[u])
                            --deg[u];
                }
        }
        ++k;
    }
    return core;
}

struct TauCounts {
    std::int64_t n0 = 0, n1 = 0, n2 = 0, concordant = 0, discordant = 0;
};

/// All-pairs tau-b counting.
inline TauCounts tau_pairs(const std::vector<double>& x, const std::vector<double>& y) {
    TauCounts c;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++c.n0;
            const bool tx = x[i] == x[j];
            const bool ty = y[i] == y[j];
            if (tx)
                ++c.n1;
            if (ty)
                ++c.n2;
            if (tx || ty)
                continue;
            if ((x[i] < x[j]) == (y[i] < y[j]))
                ++c.concordant;
            else
                ++c.discordant;
        }
    return c;
}

inline std::optional<double> tau_b_pairs(const std::vector<double>& x, const std::vector<double>& y) {
    const auto c = tau_pairs(x, y);
    const std::int64_t dx = c.n0 - c.n1, dy = c.n0 - c.n2;
    if (dx <= 0 || dy <= 0)
        return std::nullopt;
    return static_cast<double>(c.concordant - c.discordant) /
           std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
}

/// Modularity straight from the double sum over node pairs.
inline double modularity_by_pairs(const Graph& g, const std::vector<std::uint32_t>& label) {
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    double q = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (NodeId j = 0; j < g.node_count(); ++j)
            if (label[i] == label[j])
                q += (g.has_edge(i, j) ? 1.0 : 0.0) -
                     static_cast<double>(g.degree(i) * g.degree(j)) / two_m;
    return q / two_m;
}

struct BestPartition {
    double modularity = -2.0;
    std::vector<std::uint32_t> labels;
    std::size_t ties = 0; ///< partitions within 1e-12 of the best
};

/// Exhaustive search over all set partitions (restricted growth strings).
inline BestPartition max_modularity(const Graph& g) {
    const std::size_t n = g.node_count();
    BestPartition best;
    std::vector<std::uint32_t> rgs(n, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t max_label) {
        if (i == n) {
            const double q = modularity_by_pairs(g, rgs);
            if (q > best.modularity + 1e-12) {
                best.modularity = q;
                best.labels = rgs;
                best.ties = 1;
            } else if (std::abs(q - best.modularity) <= 1e-12) {
                ++best.ties;
            }
            return;
        }
        for (std::uint32_t l = 0; l <= max_label + 1; ++l) {
            rgs[i] = l;
            rec(i + 1, std::max(max_label, l));
        }
    };
    if (n == 0)
        return best;
    rgs[0] = 0;
    rec(1, 0);
    return best;
}

} // namespace oracle
