#include "commcent/community.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "commcent/error.hpp"
#include "commcent/parallel.hpp"

namespace commcent {

namespace {

void require_cover(const Graph& g, const Partition& p) {
    if (p.node_count() != g.node_count())
        throw InvalidArgument("partition does not cover the graph");
}

CentralityVector named(std::string id, std::vector<double> scores) { return {std::move(id), std::move(scores), {}}; }

} // namespace

ModularSplit modular_split(const Graph& g, const Partition& p) {
    require_cover(g, p);
    std::vector<Edge> intra, inter;
    std::vector<NodeId> bridge_nodes;
    for (auto [u, v] : g.edges()) {
        if (p.community_of(u) == p.community_of(v)) {
            intra.emplace_back(u, v);
        } else {
            inter.emplace_back(u, v);
            bridge_nodes.push_back(u);
            bridge_nodes.push_back(v);
        }
    }
    ModularSplit split;
    split.local = Graph::from_edges(g.node_count(), intra);

    std::sort(bridge_nodes.begin(), bridge_nodes.end());
    bridge_nodes.erase(std::unique(bridge_nodes.begin(), bridge_nodes.end()), bridge_nodes.end());
    std::vector<NodeId> to_local(g.node_count(), 0);
    for (NodeId i = 0; i < bridge_nodes.size(); ++i)
        to_local[bridge_nodes[i]] = i;
    for (auto& [u, v] : inter) {
        u = to_local[u];
        v = to_local[v];
    }
    split.global.graph = Graph::from_edges(bridge_nodes.size(), inter);
    split.global.to_parent = std::move(bridge_nodes);
    return split;
}

NodeCommunityProfile community_profile(const Graph& g, const Partition& p, NodeId v) {
    NodeCommunityProfile prof;
    const CommunityId own = p.community_of(v);
    std::vector<CommunityId> seen;
    for (NodeId u : g.neighbors(v)) {
        seen.push_back(p.community_of(u));
        if (p.community_of(u) == own)
            ++prof.k_in;
        else
            ++prof.k_out;
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size();) {
        std::size_t j = i;
        while (j < seen.size() && seen[j] == seen[i])
            ++j;
        prof.k_by_community.emplace_back(seen[i], j - i);
        i = j;
    }
    return prof;
}

void MixedParams::validate() const {
    if (!(kshell_alpha >= 0.0 && kshell_alpha <= 1.0))
        throw InvalidArgument("kshell_alpha must lie in [0, 1]");
    if (!(comm_r > 0.0))
        throw InvalidArgument("comm_r must be positive");
}

CentralityVector modular_component(const ModularSplit& split, std::size_t node_count, Measure m, Side side,
                                   const CentralityParams& params) {
    const std::string suffix = side == Side::Local ? "_L" : "_G";
    if (side == Side::Local) {
        CentralityVector out = compute(m, split.local, params);
        out.measure += suffix;
        return out;
    }
    std::vector<double> scores(node_count, 0.0);
    std::map<std::string, double> used;
    if (split.global.graph.node_count() > 0) {
        CentralityVector inner = compute(m, split.global.graph, params);
        for (std::size_t i = 0; i < inner.scores.size(); ++i)
            scores[split.global.to_parent[i]] = inner.scores[i];
        used = std::move(inner.params);
    }
    CentralityVector out = named(std::string(measure_id(m)) + suffix, std::move(scores));
    out.params = std::move(used);
    return out;
}

CentralityVector modular_component(const Graph& g, const Partition& p, Measure m, Side side,
                                   const CentralityParams& params) {
    return modular_component(modular_split(g, p), g.node_count(), m, side, params);
}

CentralityVector nnc(const Graph& g, const Partition& p) {
    require_cover(g, p);
    std::vector<double> s(g.node_count(), 0.0);
    std::vector<CommunityId> seen;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        seen.clear();
        for (NodeId u : g.neighbors(v))
            if (p.community_of(u) != p.community_of(v))
                seen.push_back(p.community_of(u));
        std::sort(seen.begin(), seen.end());
        s[v] = static_cast<double>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }
    return named("nnc", std::move(s));
}

CentralityVector bridging(const Graph& g, const CentralityVector& betweenness_scores) {
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) == 0)
            continue;
        double inverse_sum = 0.0;
        for (NodeId u : g.neighbors(v))
            inverse_sum += 1.0 / static_cast<double>(g.degree(u));
        const double coefficient = (1.0 / static_cast<double>(g.degree(v))) / inverse_sum;
        s[v] = betweenness_scores.scores[v] * coefficient;
    }
    return named("bridging", std::move(s));
}

CentralityVector bridging(const Graph& g) { return bridging(g, betweenness(g)); }

CentralityVector comm_centrality(const Graph& g, const Partition& p, const MixedParams& params) {
    require_cover(g, p);
    params.validate();
    const std::size_t n = g.node_count();
    const std::size_t ncomm = p.community_count();
    std::vector<std::size_t> k_in(n, 0), k_out(n, 0);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId u : g.neighbors(v))
            ++(p.community_of(u) == p.community_of(v) ? k_in[v] : k_out[v]);

    std::vector<std::size_t> max_in(ncomm, 0), max_out(ncomm, 0), intra_edges(ncomm, 0), inter_edges(ncomm, 0);
    for (NodeId v = 0; v < n; ++v) {
        const CommunityId c = p.community_of(v);
        max_in[c] = std::max(max_in[c], k_in[v]);
        max_out[c] = std::max(max_out[c], k_out[v]);
        inter_edges[c] += k_out[v];
        intra_edges[c] += k_in[v];
    }

    std::vector<double> s(n, 0.0);
    const double r = params.comm_r;
    for (NodeId v = 0; v < n; ++v) {
        const CommunityId c = p.community_of(v);
        // intra_edges counts each internal edge from both endpoints.
        const double incident = static_cast<double>(intra_edges[c]) / 2.0 + static_cast<double>(inter_edges[c]);
        const double mu_c = incident > 0.0 ? static_cast<double>(inter_edges[c]) / incident : 0.0;
        const double hub = max_in[c] > 0 ? static_cast<double>(k_in[v]) / static_cast<double>(max_in[c]) * r : 0.0;
        const double bridge =
            max_out[c] > 0 ? static_cast<double>(k_out[v]) / static_cast<double>(max_out[c]) * r : 0.0;
        s[v] = (1.0 + mu_c) * hub + (1.0 - mu_c) * bridge * bridge;
    }
    CentralityVector out = named("comm", std::move(s));
    out.params["comm_r"] = r;
    return out;
}

CentralityVector community_hub_bridge(const Graph& g, const Partition& p) {
    require_cover(g, p);
    const auto neighbor_communities = nnc(g, p);
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::size_t k_in = 0, k_out = 0;
        for (NodeId u : g.neighbors(v))
            ++(p.community_of(u) == p.community_of(v) ? k_in : k_out);
        s[v] = static_cast<double>(p.size(p.community_of(v))) * static_cast<double>(k_in) +
               neighbor_communities.scores[v] * static_cast<double>(k_out);
    }
    return named("chb", std::move(s));
}

CentralityVector community_based_centrality(const Graph& g, const Partition& p) {
    require_cover(g, p);
    const double n = static_cast<double>(g.node_count());
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (auto [c, links] : community_profile(g, p, v).k_by_community)
            s[v] += static_cast<double>(links) * (static_cast<double>(p.size(c)) / n);
    }
    return named("cbc", std::move(s));
}

CentralityVector participation_coefficient(const Graph& g, const Partition& p) {
    require_cover(g, p);
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double k = static_cast<double>(g.degree(v));
        if (k == 0.0)
            continue;
        double concentration = 0.0;
        for (auto [c, links] : community_profile(g, p, v).k_by_community) {
            const double share = static_cast<double>(links) / k;
            concentration += share * share;
        }
        s[v] = 1.0 - concentration;
    }
    return named("pc", std::move(s));
}

std::vector<std::uint32_t> core_numbers(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> deg(n);
    std::uint32_t max_deg = 0;
    for (NodeId v = 0; v < n; ++v) {
        deg[v] = static_cast<std::uint32_t>(g.degree(v));
        max_deg = std::max(max_deg, deg[v]);
    }
    // Bucket sort by degree; pos/vert give O(1) bucket moves.
    std::vector<std::size_t> bin(max_deg + 2, 0);
    for (auto d : deg)
        ++bin[d];
    std::size_t start = 0;
    for (auto& b : bin) {
        const std::size_t count = b;
        b = start;
        start += count;
    }
    std::vector<NodeId> vert(n);
    std::vector<std::size_t> pos(n);
    for (NodeId v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (std::size_t d = bin.size() - 1; d > 0; --d)
        bin[d] = bin[d - 1];
    bin[0] = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const NodeId v = vert[i];
        for (NodeId u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                const std::uint32_t du = deg[u];
                const std::size_t pu = pos[u];
                const std::size_t pw = bin[du];
                const NodeId w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg;
}

CentralityVector kshell_with_community(const Graph& g, const Partition& p, const MixedParams& params) {
    params.validate();
    const auto split = modular_split(g, p);
    const auto local_core = core_numbers(split.local);
    const auto global_core = core_numbers(split.global.graph);
    std::vector<double> global_scattered(g.node_count(), 0.0);
    for (std::size_t i = 0; i < global_core.size(); ++i)
        global_scattered[split.global.to_parent[i]] = global_core[i];

    const double alpha = params.kshell_alpha;
    std::vector<double> s(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        s[v] = alpha * local_core[v] + (1.0 - alpha) * global_scattered[v];
    CentralityVector out = named("ksc", std::move(s));
    out.params["kshell_alpha"] = alpha;
    return out;
}

CentralityVector community_based_mediator(const Graph& g, const Partition& p) {
    require_cover(g, p);
    const double total_degree = 2.0 * static_cast<double>(g.edge_count());
    std::vector<double> s(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double k = static_cast<double>(g.degree(v));
        if (k == 0.0)
            continue;
        std::size_t k_in = 0;
        for (NodeId u : g.neighbors(v))
            if (p.community_of(u) == p.community_of(v))
                ++k_in;
        double entropy = 0.0;
        for (double rho : {static_cast<double>(k_in) / k, static_cast<double>(g.degree(v) - k_in) / k})
            if (rho > 0.0)
                entropy -= rho * std::log(rho);
        s[v] = entropy * (k / total_degree);
    }
    return named("cbm", std::move(s));
}

std::string_view to_string(Block b) {
    switch (b) {
    case Block::Local:
        return "local";
    case Block::Global:
        return "global";
    case Block::Mixed:
        return "mixed";
    }
    return "?";
}

const std::array<std::string, 28>& community_aware_ids() {
    static const std::array<std::string, 28> ids = [] {
        std::array<std::string, 28> out;
        std::size_t i = 0;
        for (Measure m : kClassicalMeasures)
            out[i++] = std::string(measure_id(m)) + "_L";
        for (Measure m : kClassicalMeasures)
            out[i++] = std::string(measure_id(m)) + "_G";
        for (const char* id : {"nnc", "bridging", "comm", "chb", "cbc", "pc", "ksc", "cbm"})
            out[i++] = id;
        return out;
    }();
    return ids;
}

Block block_of_column(std::size_t column) {
    if (column < 10)
        return Block::Local;
    if (column < 22)
        return Block::Global;
    return Block::Mixed;
}

std::vector<CentralityVector> all_community_aware(const Graph& g, const Partition& p,
                                                  const CentralityParams& params, const MixedParams& mixed) {
    require_cover(g, p);
    params.validate();
    mixed.validate();
    const auto split = modular_split(g, p);
    std::vector<CentralityVector> out(28);
    parallel_for(out.size(), [&](std::size_t i) {
        if (i < 10)
            out[i] = modular_component(split, g.node_count(), kClassicalMeasures[i], Side::Local, params);
        else if (i < 20)
            out[i] = modular_component(split, g.node_count(), kClassicalMeasures[i - 10], Side::Global, params);
        else
            switch (i) {
            case 20:
                out[i] = nnc(g, p);
                break;
            case 21:
                out[i] = bridging(g);
                break;
            case 22:
                out[i] = comm_centrality(g, p, mixed);
                break;
            case 23:
                out[i] = community_hub_bridge(g, p);
                break;
            case 24:
                out[i] = community_based_centrality(g, p);
                break;
            case 25:
                out[i] = participation_coefficient(g, p);
                break;
            case 26:
                out[i] = kshell_with_community(g, p, mixed);
                break;
            default:
                out[i] = community_based_mediator(g, p);
                break;
            }
    });
    return out;
}

} // namespace commcent
