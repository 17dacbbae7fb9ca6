#include "commcent/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "commcent/error.hpp"

namespace commcent {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, BuildStats* stats) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    std::size_t loops = 0;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw InvalidArgument("edge endpoint out of range");
        if (u == v) {
            ++loops;
            continue;
        }
        canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    auto last = std::unique(canon.begin(), canon.end());
    const std::size_t dups = static_cast<std::size_t>(canon.end() - last);
    canon.erase(last, canon.end());
    if (stats) {
        stats->duplicates_dropped += dups;
        stats->self_loops_dropped += loops;
    }

    Graph g(n);
    for (auto [u, v] : canon) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.resize(2 * canon.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : canon) {
        g.adjacency_[cursor[u]++] = v;
        g.adjacency_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v)
        std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    return g;
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> k(node_count());
    for (NodeId v = 0; v < k.size(); ++v)
        k[v] = degree(v);
    return k;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
    if (degree(u) > degree(v))
        std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

std::optional<NodeId> LabeledGraph::find(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

LabeledGraph with_index_labels(Graph g) {
    LabeledGraph out;
    out.labels.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out.labels.push_back(std::to_string(v));
        out.index.emplace(out.labels.back(), v);
    }
    out.graph = std::move(g);
    return out;
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#' || line[pos] == '%';
}

} // namespace

LabeledGraph load_edge_list(std::istream& in) {
    LabeledGraph out;
    std::vector<Edge> raw;
    auto intern = [&out](const std::string& label) {
        auto [it, inserted] = out.index.try_emplace(label, static_cast<NodeId>(out.labels.size()));
        if (inserted)
            out.labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line))
            continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra))
            throw ParseError("expected two node labels", lineno);
        NodeId u = intern(a);
        NodeId v = intern(b);
        raw.emplace_back(u, v);
    }
    if (raw.empty())
        throw ParseError("edge list is empty", 0);
    out.graph = Graph::from_edges(out.labels.size(), raw, &out.stats);
    return out;
}

LabeledGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    try {
        return load_edge_list(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> labels) {
    for (auto [u, v] : g.edges())
        out << labels[u] << ' ' << labels[v] << '\n';
}

void write_label_map(std::ostream& out, std::span<const std::string> labels) {
    out << "label,index\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << labels[i] << ',' << i << '\n';
}

namespace detail {

void bfs_raw(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist, std::vector<NodeId>& queue) {
    dist.assign(g.node_count(), kNoHop);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] == kNoHop) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

} // namespace detail

Distances bfs_distances(const Graph& g, NodeId source) {
    if (source >= g.node_count())
        throw InvalidArgument("bfs source " + std::to_string(source) + " out of range");
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> queue;
    detail::bfs_raw(g, source, dist, queue);
    Distances out{source, {}};
    out.hops.resize(dist.size());
    for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] != detail::kNoHop)
            out.hops[v] = dist[v];
    return out;
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> label(n, unset);
    std::vector<NodeId> stack;
    std::uint32_t next = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (label[s] != unset)
            continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(u))
                if (label[w] == unset) {
                    label[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return label;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    auto label = component_labels(g);
    std::uint32_t count = 0;
    for (auto l : label)
        count = std::max(count, l + 1);
    std::vector<std::vector<NodeId>> comps(count);
    for (NodeId v = 0; v < label.size(); ++v)
        comps[label[v]].push_back(v);
    return comps;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    Subgraph out;
    out.to_parent.assign(nodes.begin(), nodes.end());
    std::sort(out.to_parent.begin(), out.to_parent.end());
    out.to_parent.erase(std::unique(out.to_parent.begin(), out.to_parent.end()), out.to_parent.end());
    for (NodeId v : out.to_parent)
        if (v >= g.node_count())
            throw InvalidArgument("induced_subgraph: node out of range");

    std::unordered_map<NodeId, NodeId> local;
    local.reserve(out.to_parent.size());
    for (NodeId i = 0; i < out.to_parent.size(); ++i)
        local.emplace(out.to_parent[i], i);

    std::vector<Edge> edges;
    for (NodeId i = 0; i < out.to_parent.size(); ++i) {
        for (NodeId w : g.neighbors(out.to_parent[i])) {
            auto it = local.find(w);
            if (it != local.end() && i < it->second)
                edges.emplace_back(i, it->second);
        }
    }
    out.graph = Graph::from_edges(out.to_parent.size(), edges);
    return out;
}

Subgraph giant_component(const Graph& g) {
    auto comps = connected_components(g);
    if (comps.empty())
        return {};
    auto best = std::max_element(comps.begin(), comps.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return induced_subgraph(g, *best);
}

} // namespace commcent
