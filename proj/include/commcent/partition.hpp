#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commcent/graph.hpp"

namespace commcent {

using CommunityId = std::uint32_t;

/**
 * Hard assignment of every node to exactly one community.
 *
 * Community ids are normalized to 0..C-1 in order of first appearance over
 * node index, so two partitions that group nodes identically compare equal.
 */
class Partition {
public:
    Partition() = default;

    /// Normalizes arbitrary ids; the i-th entry is node i's community.
    static Partition from_assignment(std::span<const std::uint64_t> raw);
    static Partition single_community(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t node_count() const noexcept { return community_of_.size(); }
    std::size_t community_count() const noexcept { return members_.size(); }

    CommunityId community_of(NodeId v) const { return community_of_[v]; }
    std::span<const CommunityId> assignment() const noexcept { return community_of_; }
    std::span<const NodeId> members(CommunityId c) const { return members_[c]; }
    std::size_t size(CommunityId c) const { return members_[c].size(); }

    friend bool operator==(const Partition& a, const Partition& b) { return a.community_of_ == b.community_of_; }

private:
    std::vector<CommunityId> community_of_;
    std::vector<std::vector<NodeId>> members_;
};

/// Fraction of edges whose endpoints sit in different communities.
double mixing_parameter(const Graph& g, const Partition& p);

/// Newman modularity at resolution 1.
double modularity(const Graph& g, const Partition& p);

struct LouvainOptions {
    double min_gain = 1e-7;
    int max_passes = 100;
};

/**
 * Two-phase Louvain modularity optimization. Node visit order in every
 * local-move sweep is shuffled by a generator seeded with `seed`; equal
 * gains resolve to the lowest community id. Throws InvalidArgument on a
 * graph without edges.
 */
Partition louvain(const Graph& g, std::uint64_t seed, const LouvainOptions& options = {});

/// Reads "label community" lines; every node of `g` must appear once.
Partition load_partition(std::istream& in, const LabeledGraph& g);
Partition load_partition_file(const std::string& path, const LabeledGraph& g);
void write_partition(std::ostream& out, const Partition& p, std::span<const std::string> labels);

enum class Strength { Strong, Medium, Weak };

struct StrengthClass {
    Strength strength;
    double mu;
};

/// Strong up to 0.19, medium on [0.20, 0.30], weak above 0.30.
StrengthClass classify_strength(double mu);
std::string_view to_string(Strength s);

} // namespace commcent
