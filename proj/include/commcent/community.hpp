#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commcent/classical.hpp"
#include "commcent/partition.hpp"

namespace commcent {

/**
 * Local/global decomposition of a modular network.
 *
 * `local` keeps every node and only intra-community edges. `global` holds the
 * inter-community edges and the nodes incident to at least one of them, with
 * `global.to_parent` mapping back into the original graph.
 */
struct ModularSplit {
    Graph local;
    Subgraph global;
};

ModularSplit modular_split(const Graph& g, const Partition& p);

/// Per-node link counts split by community.
struct NodeCommunityProfile {
    std::size_t k_in = 0;
    std::size_t k_out = 0;
    /// (community, links into it), sorted by community id.
    std::vector<std::pair<CommunityId, std::size_t>> k_by_community;
};

NodeCommunityProfile community_profile(const Graph& g, const Partition& p, NodeId v);

struct MixedParams {
    double kshell_alpha = 0.5; ///< weight of the local core number
    double comm_r = 100.0;     ///< Comm centrality scale

    void validate() const;
};

enum class Side { Local, Global };

/// Classical measure evaluated on one side of the split; nodes absent from
/// the global graph score 0. Ids are "<measure>_L" / "<measure>_G".
CentralityVector modular_component(const ModularSplit& split, std::size_t node_count, Measure m, Side side,
                                   const CentralityParams& params = {});
CentralityVector modular_component(const Graph& g, const Partition& p, Measure m, Side side,
                                   const CentralityParams& params = {});

/// Number of distinct foreign communities among the neighbors.
CentralityVector nnc(const Graph& g, const Partition& p);

/// Betweenness times (1/k_i) / sum over neighbors of 1/k_j.
CentralityVector bridging(const Graph& g);

/// Same as bridging() but reuses an already computed betweenness vector.
CentralityVector bridging(const Graph& g, const CentralityVector& betweenness_scores);

/**
 * Comm centrality: (1+mu_c)*chi + (1-mu_c)*chi'^2 where chi and chi' are the
 * node's intra and inter degree relative to its community's maxima, scaled
 * by R, and mu_c is the community's share of inter-community links among
 * the links incident to it.
 */
CentralityVector comm_centrality(const Graph& g, const Partition& p, const MixedParams& params = {});

/// n_c * k_in + nnc * k_out.
CentralityVector community_hub_bridge(const Graph& g, const Partition& p);

/// sum over communities c of k_{i,c} * n_c / N.
CentralityVector community_based_centrality(const Graph& g, const Partition& p);

/// 1 - sum over c of (k_{i,c}/k_i)^2.
CentralityVector participation_coefficient(const Graph& g, const Partition& p);

/// alpha * core(local) + (1 - alpha) * core(global).
CentralityVector kshell_with_community(const Graph& g, const Partition& p, const MixedParams& params = {});

/// Entropy of the intra/inter link split weighted by k_i / sum of degrees.
CentralityVector community_based_mediator(const Graph& g, const Partition& p);

/// Core number of every node (Batagelj-Zaversnik bucket peeling).
std::vector<std::uint32_t> core_numbers(const Graph& g);

enum class Block { Local, Global, Mixed };
std::string_view to_string(Block b);

/// The 28 community-aware ids in heatmap column order: ten local components,
/// ten global components, nnc, bridging, then the six mixed measures.
const std::array<std::string, 28>& community_aware_ids();
Block block_of_column(std::size_t column);

/// Every community-aware vector in community_aware_ids() order.
std::vector<CentralityVector> all_community_aware(const Graph& g, const Partition& p,
                                                  const CentralityParams& params = {},
                                                  const MixedParams& mixed = {});

} // namespace commcent
