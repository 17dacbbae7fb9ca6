#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "commcent/error.hpp"
#include "commcent/graph.hpp"
#include "support.hpp"

using namespace commcent;

namespace {

LabeledGraph parse(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

std::size_t degree_sum(const Graph& g) {
    std::size_t s = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        s += g.degree(v);
    return s;
}

} // namespace

TEST(LoadEdgeList, PathFromLabels) {
    const auto lg = parse("a b\nb c\n");
    EXPECT_EQ(lg.graph.node_count(), 3u);
    EXPECT_EQ(lg.graph.edge_count(), 2u);
    EXPECT_EQ(lg.labels, (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(lg.graph, fixtures::path(3));
}

TEST(LoadEdgeList, DropsDuplicatesAndSelfLoops) {
    const auto lg = parse("a b\nb a\na a\n");
    EXPECT_EQ(lg.graph.edge_count(), 1u);
    EXPECT_EQ(lg.stats.duplicates_dropped, 1u);
    EXPECT_EQ(lg.stats.self_loops_dropped, 1u);
}

TEST(LoadEdgeList, TwoTrianglesFixture) {
    const auto lg = parse("# two triangles\na b\na c\nb c\nd e\nd f\ne f\n% bridge\nc d\n");
    EXPECT_EQ(lg.graph.node_count(), 6u);
    EXPECT_EQ(lg.graph.edge_count(), 7u);
    EXPECT_EQ(lg.graph, fixtures::tt());
    EXPECT_EQ(lg.find("f"), NodeId{5});
    EXPECT_FALSE(lg.find("zz").has_value());
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
    try {
        parse("a b\nb c d\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse("a\n"), ParseError);
}

TEST(LoadEdgeList, EmptyInputIsAnError) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("# only a comment\n\n"), ParseError);
}

TEST(LoadEdgeList, RoundTripPreservesEdgeSet) {
    const auto lg = parse("x y\ny z\nz x\nz w\n10 x\n");
    std::ostringstream out;
    write_edge_list(out, lg.graph, lg.labels);
    const auto back = parse(out.str());
    auto named = [](const LabeledGraph& g) {
        std::set<std::pair<std::string, std::string>> s;
        for (auto [u, v] : g.graph.edges())
            s.emplace(std::min(g.labels[u], g.labels[v]), std::max(g.labels[u], g.labels[v]));
        return s;
    };
    EXPECT_EQ(named(lg), named(back));
}

TEST(LoadEdgeList, LabelMapSidecar) {
    const auto lg = parse("p q\n");
    std::ostringstream out;
    write_label_map(out, lg.labels);
    EXPECT_EQ(out.str(), "label,index\np,0\nq,1\n");
}

TEST(Graph, HandshakeOnRandomGraphs) {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const auto g = fixtures::random_graph(5 + rng.below(40), 0.2, rng, false);
        EXPECT_EQ(degree_sum(g), 2 * g.edge_count());
    }
}

TEST(Graph, NeighborListsSortedAndSymmetric) {
    const auto g = fixtures::tt();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto nb = g.neighbors(v);
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
        for (NodeId u : nb)
            EXPECT_TRUE(g.has_edge(u, v));
    }
    EXPECT_FALSE(g.has_edge(0, 5));
}

TEST(Graph, FromEdgesRejectsOutOfRange) {
    std::vector<Edge> edges{{0, 3}};
    EXPECT_THROW(Graph::from_edges(3, edges), InvalidArgument);
}

TEST(Bfs, Examples) {
    auto p3 = bfs_distances(fixtures::path(3), 0);
    EXPECT_EQ(p3.hops[0], 0u);
    EXPECT_EQ(p3.hops[1], 1u);
    EXPECT_EQ(p3.hops[2], 2u);
    auto k3 = bfs_distances(fixtures::complete(3), 2);
    EXPECT_EQ(k3.hops[0], 1u);
    EXPECT_EQ(k3.hops[1], 1u);
    EXPECT_EQ(k3.hops[2], 0u);
    EXPECT_EQ(bfs_distances(fixtures::tt(), fixtures::a).hops[fixtures::f], 3u);
}

TEST(Bfs, UnreachableIsExplicit) {
    std::vector<Edge> edges{{0, 1}};
    const auto g = Graph::from_edges(3, edges);
    const auto d = bfs_distances(g, 0);
    EXPECT_TRUE(d.reachable(1));
    EXPECT_FALSE(d.reachable(2));
}

TEST(Bfs, SourceOutOfRange) { EXPECT_THROW(bfs_distances(fixtures::path(3), 3), InvalidArgument); }

TEST(Bfs, MatchesFloydWarshall) {
    Rng rng(11);
    for (int t = 0; t < 25; ++t) {
        const auto g = fixtures::random_graph(2 + rng.below(49), 0.08, rng, false);
        const auto fw = oracle::floyd_warshall(g);
        for (NodeId s = 0; s < g.node_count(); ++s) {
            const auto d = bfs_distances(g, s);
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (fw[s][v] >= oracle::kInf)
                    EXPECT_FALSE(d.reachable(v));
                else
                    EXPECT_EQ(d.hops[v], static_cast<std::uint32_t>(fw[s][v]));
            }
        }
    }
}

TEST(Components, Examples) {
    EXPECT_EQ(connected_components(fixtures::complete(3)).size(), 1u);
    std::vector<Edge> two{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
    const auto comps = connected_components(Graph::from_edges(6, two));
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0], (std::vector<NodeId>{0, 1, 2}));
    EXPECT_EQ(comps[1], (std::vector<NodeId>{3, 4, 5}));
    EXPECT_EQ(component_labels(Graph::from_edges(6, two)), (std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}));
}

TEST(Components, CoverAndMaximality) {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const auto g = fixtures::random_graph(30, 0.05, rng, false);
        const auto comps = connected_components(g);
        std::vector<int> seen(g.node_count(), 0);
        for (const auto& c : comps)
            for (NodeId v : c)
                ++seen[v];
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
        const auto label = component_labels(g);
        for (auto [u, v] : g.edges())
            EXPECT_EQ(label[u], label[v]);
    }
}

TEST(InducedSubgraph, Examples) {
    std::vector<NodeId> abc{0, 1, 2};
    const auto sub = induced_subgraph(fixtures::tt(), abc);
    EXPECT_EQ(sub.graph, fixtures::complete(3));
    EXPECT_EQ(sub.to_parent, abc);

    const auto empty = induced_subgraph(fixtures::tt(), std::span<const NodeId>{});
    EXPECT_EQ(empty.graph.node_count(), 0u);

    std::vector<NodeId> leaves{4, 3, 2, 1};
    const auto s = induced_subgraph(fixtures::star(5), leaves);
    EXPECT_EQ(s.graph.node_count(), 4u);
    EXPECT_EQ(s.graph.edge_count(), 0u);
    EXPECT_EQ(s.to_parent, (std::vector<NodeId>{1, 2, 3, 4}));
}

TEST(InducedSubgraph, AllNodesIsIdentity) {
    Rng rng(3);
    const auto g = fixtures::random_graph(25, 0.15, rng, false);
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(induced_subgraph(g, all).graph, g);
}

TEST(GiantComponent, PicksLargest) {
    std::vector<Edge> edges{{0, 1}, {2, 3}, {3, 4}, {4, 2}};
    const auto gc = giant_component(Graph::from_edges(6, edges));
    EXPECT_EQ(gc.to_parent, (std::vector<NodeId>{2, 3, 4}));
    EXPECT_EQ(gc.graph.edge_count(), 3u);
}
