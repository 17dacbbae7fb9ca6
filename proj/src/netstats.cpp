#include "commcent/netstats.hpp"

#include <algorithm>
#include <cmath>

#include "commcent/error.hpp"
#include "commcent/parallel.hpp"

namespace commcent {

std::optional<std::size_t> feature_index(std::string_view name) {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
        if (kFeatureNames[i] == name)
            return i;
    return std::nullopt;
}

std::optional<double>& TopoFeatures::operator[](std::string_view name) {
    auto i = feature_index(name);
    if (!i)
        throw InvalidArgument("unknown feature " + std::string(name));
    return values[*i];
}

const std::optional<double>& TopoFeatures::operator[](std::string_view name) const {
    auto i = feature_index(name);
    if (!i)
        throw InvalidArgument("unknown feature " + std::string(name));
    return values[*i];
}

namespace {

std::size_t common_neighbors(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

struct PathStats {
    double efficiency_sum = 0.0;
    std::uint64_t giant_distance_sum = 0;
    std::uint64_t giant_pairs = 0;
    std::uint32_t giant_diameter = 0;
};

PathStats all_pairs(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto labels = component_labels(g);
    std::vector<std::size_t> comp_size;
    for (auto l : labels) {
        if (l >= comp_size.size())
            comp_size.resize(l + 1, 0);
        ++comp_size[l];
    }
    const auto giant = static_cast<std::uint32_t>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());

    // Fixed chunking keeps the floating-point reduction order independent of
    // the worker count.
    const std::size_t chunks = std::min<std::size_t>(64, n);
    std::vector<PathStats> partial(chunks);
    parallel_for(chunks, [&](std::size_t chunk) {
        std::vector<std::uint32_t> dist;
        std::vector<NodeId> queue;
        auto& acc = partial[chunk];
        for (std::size_t s = chunk; s < n; s += chunks) {
            detail::bfs_raw(g, static_cast<NodeId>(s), dist, queue);
            for (std::size_t i = 1; i < queue.size(); ++i) {
                const std::uint32_t d = dist[queue[i]];
                acc.efficiency_sum += 1.0 / d;
                if (labels[s] == giant) {
                    acc.giant_distance_sum += d;
                    ++acc.giant_pairs;
                    acc.giant_diameter = std::max(acc.giant_diameter, d);
                }
            }
        }
    });
    PathStats total;
    for (const auto& p : partial) {
        total.efficiency_sum += p.efficiency_sum;
        total.giant_distance_sum += p.giant_distance_sum;
        total.giant_pairs += p.giant_pairs;
        total.giant_diameter = std::max(total.giant_diameter, p.giant_diameter);
    }
    return total;
}

} // namespace

TopoFeatures macro_features(const Graph& g, const MacroOptions& options) {
    const std::size_t n = g.node_count();
    if (n < 2)
        throw InvalidArgument("macro features need at least two nodes");
    TopoFeatures f;
    const double nd = static_cast<double>(n);
    const double m = static_cast<double>(g.edge_count());
    f["density"] = 2.0 * m / (nd * (nd - 1.0));

    double closed = 0.0, triples = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const double k = static_cast<double>(g.degree(v));
        triples += k * (k - 1.0) / 2.0;
        for (NodeId u : g.neighbors(v))
            if (u > v)
                closed += static_cast<double>(common_neighbors(g.neighbors(v), g.neighbors(u)));
    }
    // `closed` counts each triangle once per edge, i.e. three times.
    if (triples > 0.0)
        f["transitivity"] = closed / triples;

    if (m > 0.0) {
        double product = 0.0, sum = 0.0, squares = 0.0;
        for (auto [u, v] : g.edges()) {
            const double ku = static_cast<double>(g.degree(u));
            const double kv = static_cast<double>(g.degree(v));
            product += ku * kv;
            sum += ku + kv;
            squares += ku * ku + kv * kv;
        }
        const double mean = sum / (2.0 * m);
        const double variance = squares / (2.0 * m) - mean * mean;
        if (variance > 1e-12)
            f["assortativity"] = std::clamp((product / m - mean * mean) / variance, -1.0, 1.0);
    }

    const auto paths = all_pairs(g);
    f["efficiency"] = paths.efficiency_sum / (nd * (nd - 1.0));
    if (paths.giant_pairs > 0) {
        f["avg_distance"] = static_cast<double>(paths.giant_distance_sum) / static_cast<double>(paths.giant_pairs);
        f["diameter"] = static_cast<double>(paths.giant_diameter);
    }

    if (options.fit_degree_exponent) {
        std::vector<std::size_t> degrees;
        for (NodeId v = 0; v < n; ++v)
            if (g.degree(v) > 0)
                degrees.push_back(g.degree(v));
        try {
            const auto fit = fit_powerlaw(degrees, options.powerlaw);
            f["gamma_pred"] = fit.alpha;
            f.ks_pass = fit.ks_pass;
        } catch (const InvalidArgument&) {
            f.ks_pass = false;
        }
    }
    return f;
}

void meso_features(const Graph& g, const Partition& p, TopoFeatures& into) {
    if (p.node_count() != g.node_count())
        throw InvalidArgument("partition does not cover the graph");
    if (g.edge_count() > 0) {
        into["mixing_parameter"] = mixing_parameter(g, p);
        into["modularity"] = modularity(g, p);
    }

    const std::size_t ncomm = p.community_count();
    std::vector<double> density(ncomm, 0.0), distance(ncomm, 0.0), max_odf(ncomm, 0.0), avg_odf(ncomm, 0.0),
        flake(ncomm, 0.0), hub(ncomm, 0.0);

    std::vector<std::size_t> k_in(g.node_count(), 0);
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId u : g.neighbors(v))
            if (p.community_of(u) == p.community_of(v))
                ++k_in[v];

    parallel_for(ncomm, [&](std::size_t c) {
        const auto members = p.members(static_cast<CommunityId>(c));
        const double size = static_cast<double>(members.size());
        std::size_t intra_stubs = 0, max_in = 0, with_links = 0, flaky = 0;
        double odf_sum = 0.0, odf_max = 0.0;
        for (NodeId v : members) {
            const std::size_t k = g.degree(v);
            intra_stubs += k_in[v];
            max_in = std::max(max_in, k_in[v]);
            if (k == 0)
                continue;
            const double odf = static_cast<double>(k - k_in[v]) / static_cast<double>(k);
            odf_sum += odf;
            odf_max = std::max(odf_max, odf);
            ++with_links;
            if (2 * k_in[v] < k)
                ++flaky;
        }
        if (members.size() > 1) {
            density[c] = static_cast<double>(intra_stubs) / (size * (size - 1.0));
            hub[c] = static_cast<double>(max_in) / (size - 1.0);
        }
        max_odf[c] = odf_max;
        avg_odf[c] = with_links ? odf_sum / static_cast<double>(with_links) : 0.0;
        flake[c] = static_cast<double>(flaky) / size;

        const auto sub = induced_subgraph(g, members);
        std::uint64_t total = 0, pairs = 0;
        std::vector<std::uint32_t> dist;
        std::vector<NodeId> queue;
        for (NodeId s = 0; s < sub.graph.node_count(); ++s) {
            detail::bfs_raw(sub.graph, s, dist, queue);
            for (std::size_t i = 1; i < queue.size(); ++i)
                total += dist[queue[i]];
            pairs += queue.size() - 1;
        }
        distance[c] = pairs ? static_cast<double>(total) / static_cast<double>(pairs) : 0.0;
    });

    auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs)
            s += x;
        return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
    };
    into["internal_density"] = mean(density);
    into["internal_distance"] = mean(distance);
    into["max_odf"] = mean(max_odf);
    into["avg_odf"] = mean(avg_odf);
    into["flake_odf"] = mean(flake);
    into["hub_dominance"] = mean(hub);

    double embedded = 0.0;
    std::size_t counted = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) == 0)
            continue;
        embedded += static_cast<double>(k_in[v]) / static_cast<double>(g.degree(v));
        ++counted;
    }
    if (counted)
        into["embeddedness"] = embedded / static_cast<double>(counted);
}

TopoFeatures topo_features(const Graph& g, const Partition& p, const MacroOptions& options) {
    TopoFeatures f = macro_features(g, options);
    meso_features(g, p, f);
    return f;
}

} // namespace commcent
