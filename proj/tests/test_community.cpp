#include <cmath>

#include <gtest/gtest.h>

#include "commcent/analysis.hpp"
#include "commcent/community.hpp"
#include "commcent/error.hpp"
#include "support.hpp"

using namespace commcent;
namespace fx = fixtures;

namespace {

const Graph kTT = fx::tt();
const Partition kP2 = fx::p2();

Partition equal_blocks(std::size_t n, std::size_t size) {
    std::vector<std::uint64_t> raw(n);
    for (std::size_t i = 0; i < n; ++i)
        raw[i] = i / size;
    return Partition::from_assignment(raw);
}

bool all_zero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0)
            return false;
    return true;
}

} // namespace

TEST(ModularSplit, TwoTriangles) {
    const auto s = modular_split(kTT, kP2);
    std::vector<Edge> triangles{{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
    EXPECT_EQ(s.local, Graph::from_edges(6, triangles));
    EXPECT_EQ(s.global.to_parent, (std::vector<NodeId>{fx::c, fx::d}));
    EXPECT_EQ(s.global.graph.edges(), (std::vector<Edge>{{0, 1}}));
}

TEST(ModularSplit, DegeneratePartitions) {
    auto whole = modular_split(kTT, Partition::single_community(6));
    EXPECT_EQ(whole.local, kTT);
    EXPECT_EQ(whole.global.graph.node_count(), 0u);
    auto single = modular_split(kTT, Partition::singletons(6));
    EXPECT_EQ(single.local.edge_count(), 0u);
    EXPECT_EQ(single.global.graph, kTT);
}

TEST(ModularSplit, EdgesPartitionTheParent) {
    Rng rng(30);
    for (int t = 0; t < 20; ++t) {
        const auto g = fx::random_graph(25, 0.15, rng);
        const auto p = fx::random_partition(25, 4, rng);
        const auto s = modular_split(g, p);
        EXPECT_EQ(s.local.edge_count() + s.global.graph.edge_count(), g.edge_count());
        for (auto [u, v] : s.local.edges())
            EXPECT_EQ(p.community_of(u), p.community_of(v));
        for (auto [u, v] : s.global.graph.edges()) {
            const NodeId pu = s.global.to_parent[u], pv = s.global.to_parent[v];
            EXPECT_TRUE(g.has_edge(pu, pv));
            EXPECT_NE(p.community_of(pu), p.community_of(pv));
        }
        for (NodeId i = 0; i < s.global.graph.node_count(); ++i)
            EXPECT_GT(s.global.graph.degree(i), 0u);
    }
}

TEST(Profile, Invariants) {
    Rng rng(31);
    const auto g = fx::random_graph(30, 0.2, rng);
    const auto p = fx::random_partition(30, 5, rng);
    for (NodeId v = 0; v < 30; ++v) {
        const auto pr = community_profile(g, p, v);
        EXPECT_EQ(pr.k_in + pr.k_out, g.degree(v));
        std::size_t sum = 0, own = 0;
        for (auto [c, k] : pr.k_by_community) {
            sum += k;
            if (c == p.community_of(v))
                own = k;
        }
        EXPECT_EQ(sum, g.degree(v));
        EXPECT_EQ(own, pr.k_in);
    }
}

TEST(ModularComponent, TwoTriangles) {
    const auto dl = modular_component(kTT, kP2, Measure::Degree, Side::Local);
    const auto dg = modular_component(kTT, kP2, Measure::Degree, Side::Global);
    EXPECT_EQ(dl.measure, "d_L");
    EXPECT_EQ(dg.measure, "d_G");
    EXPECT_EQ(dl.scores[fx::c], 2.0);
    EXPECT_EQ(dg.scores[fx::c], 1.0);
    EXPECT_EQ(dg.scores[fx::a], 0.0);
    EXPECT_TRUE(all_zero(modular_component(kTT, kP2, Measure::Betweenness, Side::Local).scores));
}

TEST(ModularComponent, DegreeIdentity) {
    Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        const auto g = fx::random_graph(20 + rng.below(20), 0.15, rng, false);
        const auto p = fx::random_partition(g.node_count(), 1 + rng.below(6), rng);
        const auto l = modular_component(g, p, Measure::Degree, Side::Local).scores;
        const auto gl = modular_component(g, p, Measure::Degree, Side::Global).scores;
        const auto d = degree(g).scores;
        for (std::size_t i = 0; i < d.size(); ++i)
            EXPECT_EQ(l[i] + gl[i], d[i]);
    }
}

TEST(ModularComponent, SingleCommunityAndSingletons) {
    Rng rng(33);
    const auto g = fx::random_graph(30, 0.15, rng);
    const auto whole = Partition::single_community(30);
    const auto alone = Partition::singletons(30);
    for (Measure m : kClassicalMeasures) {
        const auto classical = compute(m, g).scores;
        EXPECT_EQ(modular_component(g, whole, m, Side::Local).scores, classical) << measure_id(m);
        EXPECT_TRUE(all_zero(modular_component(g, whole, m, Side::Global).scores)) << measure_id(m);
        EXPECT_EQ(modular_component(g, alone, m, Side::Global).scores, classical) << measure_id(m);
    }
}

TEST(Nnc, Examples) {
    const auto s = nnc(kTT, kP2).scores;
    EXPECT_EQ(s[fx::c], 1.0);
    EXPECT_EQ(s[fx::a], 0.0);
    EXPECT_TRUE(all_zero(nnc(kTT, Partition::single_community(6)).scores));
    EXPECT_EQ(nnc(fx::star(5), Partition::singletons(5)).scores[0], 4.0);
}

TEST(Bridging, Examples) {
    EXPECT_TRUE(all_zero(bridging(fx::complete(3)).scores));
    EXPECT_NEAR(bridging(fx::path(3)).scores[1], 0.25, 1e-15);
    EXPECT_NEAR(bridging(kTT).scores[fx::c], 1.5, 1e-12);
    EXPECT_EQ(bridging(Graph(2)).scores[0], 0.0);
}

TEST(Comm, TwoTriangles) {
    const auto s = comm_centrality(kTT, kP2).scores;
    EXPECT_NEAR(s[fx::c], 7625.0, 1e-9);
    EXPECT_NEAR(s[fx::a], 125.0, 1e-9);
}

TEST(Comm, IsolatedCommunityReducesToRelativeDegree) {
    std::vector<Edge> e{{0, 1}, {1, 2}, {3, 4}};
    const auto g = Graph::from_edges(5, e);
    std::vector<std::uint64_t> raw{0, 0, 0, 1, 1};
    const auto s = comm_centrality(g, Partition::from_assignment(raw)).scores;
    EXPECT_NEAR(s[0], 50.0, 1e-12);
    EXPECT_NEAR(s[1], 100.0, 1e-12);
}

TEST(Comm, SaturatedNode) {
    // Community {0,1,2,3} with one external edge from node 0 only.
    std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {0, 4}};
    const auto g = Graph::from_edges(5, e);
    std::vector<std::uint64_t> raw{0, 0, 0, 0, 1};
    MixedParams mp;
    mp.comm_r = 10.0;
    const auto s = comm_centrality(g, Partition::from_assignment(raw), mp).scores;
    const double mu = 1.0 / 5.0;
    EXPECT_NEAR(s[0], (1 + mu) * 10 + (1 - mu) * 100, 1e-12);
}

TEST(Chb, Examples) {
    const auto s = community_hub_bridge(kTT, kP2).scores;
    EXPECT_EQ(s[fx::c], 7.0);
    EXPECT_EQ(s[fx::a], 6.0);
    const auto whole = community_hub_bridge(kTT, Partition::single_community(6)).scores;
    for (NodeId v = 0; v < 6; ++v)
        EXPECT_EQ(whole[v], 6.0 * static_cast<double>(kTT.degree(v)));
}

TEST(Cbc, Examples) {
    const auto s = community_based_centrality(kTT, kP2).scores;
    EXPECT_NEAR(s[fx::c], 1.5, 1e-15);
    EXPECT_NEAR(s[fx::a], 1.0, 1e-15);
    EXPECT_EQ(community_based_centrality(kTT, Partition::single_community(6)).scores, degree(kTT).scores);
}

TEST(Pc, Examples) {
    EXPECT_NEAR(participation_coefficient(kTT, kP2).scores[fx::c], 4.0 / 9.0, 1e-15);
    EXPECT_EQ(participation_coefficient(kTT, kP2).scores[fx::a], 0.0);
    std::vector<std::uint64_t> raw{0, 1, 2};
    EXPECT_NEAR(participation_coefficient(fx::path(3), Partition::from_assignment(raw)).scores[1], 0.5, 1e-15);
}

TEST(Ksc, Examples) {
    const auto s = kshell_with_community(kTT, kP2).scores;
    EXPECT_NEAR(s[fx::c], 1.5, 1e-15);
    EXPECT_NEAR(s[fx::a], 1.0, 1e-15);
    EXPECT_TRUE(all_zero(kshell_with_community(Graph(4), Partition::singletons(4)).scores));
}

TEST(Ksc, AlphaOneRanksLikeLocalCores) {
    Rng rng(34);
    const auto g = fx::random_graph(40, 0.15, rng);
    const auto p = fx::random_partition(40, 3, rng);
    MixedParams mp;
    mp.kshell_alpha = 1.0;
    const auto s = kshell_with_community(g, p, mp).scores;
    const auto cores = core_numbers(modular_split(g, p).local);
    for (NodeId v = 0; v < 40; ++v)
        EXPECT_EQ(s[v], static_cast<double>(cores[v]));
}

TEST(Ksc, MatchesPeelingOracle) {
    Rng rng(35);
    for (int t = 0; t < 20; ++t) {
        const auto g = fx::random_graph(10 + rng.below(41), 0.15, rng, false);
        const auto p = fx::random_partition(g.node_count(), 1 + rng.below(5), rng);
        const auto split = modular_split(g, p);
        const auto local = oracle::cores_by_peeling(split.local);
        const auto global = oracle::cores_by_peeling(split.global.graph);
        std::vector<double> want(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v)
            want[v] = 0.5 * local[v];
        for (NodeId i = 0; i < split.global.graph.node_count(); ++i)
            want[split.global.to_parent[i]] += 0.5 * global[i];
        const auto got = kshell_with_community(g, p).scores;
        for (NodeId v = 0; v < g.node_count(); ++v)
            EXPECT_EQ(got[v], want[v]);
        EXPECT_EQ(core_numbers(g), oracle::cores_by_peeling(g));
    }
}

TEST(Cbm, Examples) {
    const double h = -(2.0 / 3.0) * std::log(2.0 / 3.0) - (1.0 / 3.0) * std::log(1.0 / 3.0);
    const auto s = community_based_mediator(kTT, kP2).scores;
    EXPECT_NEAR(s[fx::c], h * 3.0 / 14.0, 1e-12);
    EXPECT_NEAR(s[fx::c], 0.1364, 1e-4);
    EXPECT_EQ(s[fx::a], 0.0);
}

TEST(Cbm, HalfSplitRanksLikeDegree) {
    std::vector<Edge> e{{0, 1}, {0, 2}, {3, 4}, {3, 5}, {0, 3}, {0, 4}, {1, 3}, {2, 5}};
    const auto g = Graph::from_edges(6, e);
    const auto p = fx::p2();
    for (NodeId v = 0; v < 6; ++v) {
        const auto pr = community_profile(g, p, v);
        ASSERT_EQ(pr.k_in, pr.k_out) << v;
    }
    const auto s = community_based_mediator(g, p).scores;
    EXPECT_NEAR(*kendall_tau_b(s, degree(g).scores), 1.0, 1e-15);
    EXPECT_NEAR(s[0], std::log(2.0) * 4.0 / 16.0, 1e-15);
}

TEST(Invariants, RangesOnRandomInputs) {
    Rng rng(36);
    for (int t = 0; t < 20; ++t) {
        const auto g = fx::random_graph(30, 0.12, rng);
        const std::size_t k = 1 + rng.below(6);
        const auto p = fx::random_partition(30, k, rng);
        const auto pc = participation_coefficient(g, p).scores;
        const auto cbm = community_based_mediator(g, p).scores;
        const auto cbc = community_based_centrality(g, p).scores;
        const double bound = 1.0 - 1.0 / static_cast<double>(p.community_count());
        for (NodeId v = 0; v < 30; ++v) {
            EXPECT_GE(pc[v], 0.0);
            EXPECT_LE(pc[v], bound + 1e-15);
            EXPECT_GE(cbm[v], 0.0);
            EXPECT_LE(cbc[v], static_cast<double>(g.degree(v)) + 1e-12);
        }
    }
}

TEST(Invariants, SingleCommunityZeros) {
    Rng rng(37);
    const auto g = fx::random_graph(25, 0.2, rng);
    const auto whole = Partition::single_community(25);
    EXPECT_TRUE(all_zero(participation_coefficient(g, whole).scores));
    EXPECT_TRUE(all_zero(nnc(g, whole).scores));
    EXPECT_TRUE(all_zero(community_based_mediator(g, whole).scores));
}

TEST(Invariants, EqualSizeRankIdentities) {
    Rng rng(38);
    const auto g = fx::random_graph(40, 0.15, rng);
    const auto p = equal_blocks(40, 8);
    const auto d = degree(g).scores;
    // Compared at file precision: sums of k * n_c / N differ in the last bits.
    auto cbc = community_based_centrality(g, p).scores;
    for (auto& v : cbc)
        v = round_significant(v);
    EXPECT_NEAR(*kendall_tau_b(cbc, d), 1.0, 1e-15);

    // CHB is rank-identical to degree when every node also touches n_c foreign
    // communities; with one community of size one per node that holds.
    const auto alone = Partition::singletons(5);
    const auto star = fx::star(5);
    EXPECT_NEAR(*kendall_tau_b(community_hub_bridge(star, alone).scores, degree(star).scores), 1.0, 1e-15);
}

TEST(AllCommunityAware, OrderAndBlocks) {
    const auto& ids = community_aware_ids();
    EXPECT_EQ(ids[0], "d_L");
    EXPECT_EQ(ids[10], "d_G");
    EXPECT_EQ(ids[20], "nnc");
    EXPECT_EQ(ids[21], "bridging");
    EXPECT_EQ(ids[27], "cbm");
    EXPECT_EQ(block_of_column(9), Block::Local);
    EXPECT_EQ(block_of_column(21), Block::Global);
    EXPECT_EQ(block_of_column(22), Block::Mixed);
    const auto all = all_community_aware(kTT, kP2);
    ASSERT_EQ(all.size(), 28u);
    for (std::size_t i = 0; i < 28; ++i) {
        EXPECT_EQ(all[i].measure, ids[i]);
        EXPECT_EQ(all[i].scores.size(), 6u);
    }
    EXPECT_EQ(all[23].scores, community_hub_bridge(kTT, kP2).scores);
}

TEST(MixedParams, Validation) {
    MixedParams mp;
    mp.kshell_alpha = 1.5;
    EXPECT_THROW(mp.validate(), InvalidArgument);
    mp = {};
    mp.comm_r = 0.0;
    EXPECT_THROW(mp.validate(), InvalidArgument);
}
