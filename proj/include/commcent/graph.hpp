#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commcent {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Counts of input edges discarded while building a simple graph.
struct BuildStats {
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
};

/**
 * Immutable simple undirected graph in compressed sparse row form.
 *
 * Nodes are 0..N-1. Every neighbor list is sorted ascending, so edge lookup
 * is a binary search and iteration order is deterministic.
 */
class Graph {
public:
    Graph() = default;

    /// Edgeless graph on `n` nodes.
    explicit Graph(std::size_t n);

    /// Builds from an arbitrary edge list; self-loops and repeated edges are
    /// dropped and tallied in `stats` when given. Endpoints must be < n.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges, BuildStats* stats = nullptr);

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    std::vector<std::size_t> degrees() const;

    bool has_edge(NodeId u, NodeId v) const noexcept;

    /// Each edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
};

/// Graph together with the original node labels it was read from.
struct LabeledGraph {
    Graph graph;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> index;
    BuildStats stats;

    std::optional<NodeId> find(const std::string& label) const;
};

/// Labels "0".."N-1" for graphs that were generated rather than read.
LabeledGraph with_index_labels(Graph g);

/**
 * Reads a whitespace-separated edge list. Lines beginning with '#' or '%'
 * and blank lines are skipped. Labels are numbered in order of first
 * appearance. Throws ParseError on a line without exactly two tokens or on
 * input that holds no edges at all.
 */
LabeledGraph load_edge_list(std::istream& in);
LabeledGraph load_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> labels);
/// CSV "label,index" sidecar.
void write_label_map(std::ostream& out, std::span<const std::string> labels);

/// Hop counts from one source; std::nullopt marks unreachable nodes.
struct Distances {
    NodeId source = 0;
    std::vector<std::optional<std::uint32_t>> hops;

    bool reachable(NodeId v) const { return hops[v].has_value(); }
};

Distances bfs_distances(const Graph& g, NodeId source);

/// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

/// Per-node component index matching connected_components() ordering.
std::vector<std::uint32_t> component_labels(const Graph& g);

/// A graph carved out of a parent, with the map back to parent indices.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> to_parent;
};

/// Edges of `g` with both endpoints in `nodes`. Local index i corresponds to
/// the i-th entry of `nodes` after sorting and deduplication.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Induced subgraph on the largest connected component (ties: lowest member).
Subgraph giant_component(const Graph& g);

namespace detail {

inline constexpr std::uint32_t kNoHop = static_cast<std::uint32_t>(-1);

/// Raw BFS used on hot paths; unreachable nodes hold kNoHop. `dist` and
/// `queue` are scratch buffers resized as needed.
void bfs_raw(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist, std::vector<NodeId>& queue);

} // namespace detail

} // namespace commcent
