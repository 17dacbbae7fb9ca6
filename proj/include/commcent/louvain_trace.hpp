#pragma once

#include <vector>

#include "commcent/partition.hpp"

namespace commcent {

/// Louvain result plus the modularity reached after each aggregation pass
/// (entry 0 is the all-singletons start).
struct LouvainTrace {
    Partition partition;
    std::vector<double> modularity_per_pass;
};

LouvainTrace louvain_traced(const Graph& g, std::uint64_t seed, const LouvainOptions& options = {});

} // namespace commcent
