#include "commcent/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "commcent/error.hpp"
#include "commcent/louvain_trace.hpp"
#include "commcent/random.hpp"

namespace commcent {

Partition Partition::from_assignment(std::span<const std::uint64_t> raw) {
    Partition p;
    p.community_of_.resize(raw.size());
    std::unordered_map<std::uint64_t, CommunityId> renumber;
    for (std::size_t v = 0; v < raw.size(); ++v) {
        auto [it, inserted] = renumber.try_emplace(raw[v], static_cast<CommunityId>(p.members_.size()));
        if (inserted)
            p.members_.emplace_back();
        p.community_of_[v] = it->second;
        p.members_[it->second].push_back(static_cast<NodeId>(v));
    }
    return p;
}

Partition Partition::single_community(std::size_t n) {
    std::vector<std::uint64_t> raw(n, 0);
    return from_assignment(raw);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::uint64_t> raw(n);
    for (std::size_t i = 0; i < n; ++i)
        raw[i] = i;
    return from_assignment(raw);
}

namespace {

void require_cover(const Graph& g, const Partition& p) {
    if (p.node_count() != g.node_count())
        throw InvalidArgument("partition covers " + std::to_string(p.node_count()) + " nodes, graph has " +
                              std::to_string(g.node_count()));
}

} // namespace

double mixing_parameter(const Graph& g, const Partition& p) {
    require_cover(g, p);
    if (g.edge_count() == 0)
        throw InvalidArgument("mixing parameter undefined on a graph without edges");
    std::size_t inter = 0;
    for (auto [u, v] : g.edges())
        if (p.community_of(u) != p.community_of(v))
            ++inter;
    return static_cast<double>(inter) / static_cast<double>(g.edge_count());
}

double modularity(const Graph& g, const Partition& p) {
    require_cover(g, p);
    if (g.edge_count() == 0)
        throw InvalidArgument("modularity undefined on a graph without edges");
    const double m = static_cast<double>(g.edge_count());
    std::vector<double> intra(p.community_count(), 0.0);
    std::vector<double> degree_sum(p.community_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v)
        degree_sum[p.community_of(v)] += static_cast<double>(g.degree(v));
    for (auto [u, v] : g.edges())
        if (p.community_of(u) == p.community_of(v))
            intra[p.community_of(u)] += 1.0;
    double q = 0.0;
    for (std::size_t c = 0; c < p.community_count(); ++c) {
        const double share = degree_sum[c] / (2.0 * m);
        q += intra[c] / m - share * share;
    }
    return q;
}

// ---------------------------------------------------------------------------
// Louvain

namespace {

struct WeightedGraph {
    std::vector<std::vector<std::pair<NodeId, double>>> adj; // no self entries
    std::vector<double> self_weight;                          // loop weight per node
    std::vector<double> strength;                             // sum of incident weights, loops counted twice
    double total = 0.0;                                       // 2m

    std::size_t size() const { return adj.size(); }
};

WeightedGraph lift(const Graph& g) {
    WeightedGraph w;
    const std::size_t n = g.node_count();
    w.adj.resize(n);
    w.self_weight.assign(n, 0.0);
    w.strength.assign(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : g.neighbors(v))
            w.adj[v].emplace_back(u, 1.0);
        w.strength[v] = static_cast<double>(g.degree(v));
        w.total += w.strength[v];
    }
    return w;
}

double level_modularity(const WeightedGraph& w, std::span<const NodeId> comm, std::size_t ncomm) {
    std::vector<double> inside(ncomm, 0.0), tot(ncomm, 0.0);
    for (NodeId v = 0; v < w.size(); ++v) {
        tot[comm[v]] += w.strength[v];
        inside[comm[v]] += 2.0 * w.self_weight[v];
        for (auto [u, wt] : w.adj[v])
            if (comm[u] == comm[v])
                inside[comm[v]] += wt;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < ncomm; ++c)
        q += inside[c] / w.total - (tot[c] / w.total) * (tot[c] / w.total);
    return q;
}

/// Local-moving phase. Returns the community per level node (ids are node
/// ids of the seed community, not compacted).
std::vector<NodeId> local_moves(const WeightedGraph& w, Rng& rng, double min_gain) {
    const std::size_t n = w.size();
    std::vector<NodeId> comm(n);
    std::vector<double> tot(w.strength);
    for (NodeId v = 0; v < n; ++v)
        comm[v] = v;

    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v)
        order[v] = v;
    std::vector<double> link(n, 0.0);
    std::vector<NodeId> touched;

    constexpr double tie_eps = 1e-12;
    constexpr int max_sweeps = 1000;
    double q = level_modularity(w, comm, n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        rng.shuffle(std::span<NodeId>(order));
        bool moved = false;
        for (NodeId v : order) {
            const NodeId old = comm[v];
            const double kv = w.strength[v];
            touched.clear();
            for (auto [u, wt] : w.adj[v]) {
                if (link[comm[u]] == 0.0)
                    touched.push_back(comm[u]);
                link[comm[u]] += wt;
            }
            tot[old] -= kv;
            NodeId best = old;
            double best_gain = link[old] - tot[old] * kv / w.total;
            for (NodeId c : touched) {
                const double gain = link[c] - tot[c] * kv / w.total;
                if (gain > best_gain + tie_eps || (gain >= best_gain - tie_eps && c < best)) {
                    best = c;
                    best_gain = gain;
                }
            }
            tot[best] += kv;
            if (best != old) {
                comm[v] = best;
                moved = true;
            }
            for (NodeId c : touched)
                link[c] = 0.0;
        }
        if (!moved)
            break;
        const double next_q = level_modularity(w, comm, n);
        const double gained = next_q - q;
        q = next_q;
        if (gained <= min_gain)
            break;
    }
    return comm;
}

WeightedGraph aggregate(const WeightedGraph& w, std::span<const NodeId> comm, std::size_t ncomm) {
    WeightedGraph out;
    out.adj.resize(ncomm);
    out.self_weight.assign(ncomm, 0.0);
    out.strength.assign(ncomm, 0.0);
    out.total = w.total;

    struct Link {
        NodeId a, b;
        double weight;
    };
    std::vector<Link> links;
    for (NodeId v = 0; v < w.size(); ++v) {
        out.self_weight[comm[v]] += w.self_weight[v];
        out.strength[comm[v]] += w.strength[v];
        for (auto [u, wt] : w.adj[v]) {
            if (v >= u)
                continue;
            if (comm[u] == comm[v])
                out.self_weight[comm[v]] += wt;
            else
                links.push_back({std::min(comm[u], comm[v]), std::max(comm[u], comm[v]), wt});
        }
    }
    std::sort(links.begin(), links.end(),
              [](const Link& x, const Link& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (std::size_t i = 0; i < links.size();) {
        Link acc = links[i++];
        while (i < links.size() && links[i].a == acc.a && links[i].b == acc.b)
            acc.weight += links[i++].weight;
        out.adj[acc.a].emplace_back(acc.b, acc.weight);
        out.adj[acc.b].emplace_back(acc.a, acc.weight);
    }
    for (auto& row : out.adj)
        std::sort(row.begin(), row.end());
    return out;
}

/// Renumbers level communities to 0..C-1 by first appearance.
std::size_t compact(std::vector<NodeId>& comm) {
    std::vector<NodeId> remap(comm.size(), static_cast<NodeId>(-1));
    NodeId next = 0;
    for (auto& c : comm) {
        if (remap[c] == static_cast<NodeId>(-1))
            remap[c] = next++;
        c = remap[c];
    }
    return next;
}

} // namespace

LouvainTrace louvain_traced(const Graph& g, std::uint64_t seed, const LouvainOptions& options) {
    if (g.edge_count() == 0)
        throw InvalidArgument("louvain requires at least one edge");
    Rng rng(seed);
    WeightedGraph level = lift(g);
    std::vector<NodeId> top(g.node_count());
    for (NodeId v = 0; v < top.size(); ++v)
        top[v] = v;

    LouvainTrace trace;
    double q = level_modularity(level, top, top.size());
    trace.modularity_per_pass.push_back(q);
    for (int pass = 0; pass < options.max_passes; ++pass) {
        auto comm = local_moves(level, rng, options.min_gain);
        const std::size_t ncomm = compact(comm);
        const double next_q = level_modularity(level, comm, ncomm);
        if (next_q - q <= options.min_gain)
            break;
        for (auto& c : top)
            c = comm[c];
        q = next_q;
        trace.modularity_per_pass.push_back(q);
        if (ncomm == level.size())
            break;
        level = aggregate(level, comm, ncomm);
    }
    std::vector<std::uint64_t> raw(top.begin(), top.end());
    trace.partition = Partition::from_assignment(raw);
    return trace;
}

Partition louvain(const Graph& g, std::uint64_t seed, const LouvainOptions& options) {
    return louvain_traced(g, seed, options).partition;
}

// ---------------------------------------------------------------------------
// Partition files

Partition load_partition(std::istream& in, const LabeledGraph& g) {
    const std::size_t n = g.graph.node_count();
    constexpr auto unset = static_cast<std::uint64_t>(-1);
    std::vector<std::uint64_t> raw(n, unset);
    std::unordered_map<std::string, std::uint64_t> community_ids;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#' || line[pos] == '%')
            continue;
        std::istringstream fields(line);
        std::string label, community, extra;
        if (!(fields >> label >> community) || (fields >> extra))
            throw ParseError("expected 'label community'", lineno);
        auto v = g.find(label);
        if (!v)
            throw ParseError("unknown node " + label, lineno);
        if (raw[*v] != unset)
            throw ParseError("duplicate assignment " + label, lineno);
        auto [it, inserted] = community_ids.try_emplace(community, community_ids.size());
        raw[*v] = it->second;
    }
    for (NodeId v = 0; v < n; ++v)
        if (raw[v] == unset)
            throw ParseError("unassigned node " + g.labels[v], 0);
    return Partition::from_assignment(raw);
}

Partition load_partition_file(const std::string& path, const LabeledGraph& g) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    return load_partition(in, g);
}

void write_partition(std::ostream& out, const Partition& p, std::span<const std::string> labels) {
    for (NodeId v = 0; v < p.node_count(); ++v)
        out << labels[v] << ' ' << p.community_of(v) << '\n';
}

StrengthClass classify_strength(double mu) {
    if (!(mu >= 0.0 && mu <= 1.0))
        throw InvalidArgument("mixing parameter must lie in [0, 1]");
    if (mu < 0.20)
        return {Strength::Strong, mu};
    if (mu <= 0.30)
        return {Strength::Medium, mu};
    return {Strength::Weak, mu};
}

std::string_view to_string(Strength s) {
    switch (s) {
    case Strength::Strong:
        return "strong";
    case Strength::Medium:
        return "medium";
    case Strength::Weak:
        return "weak";
    }
    return "unknown";
}

} // namespace commcent
