#pragma once

#include <cstdint>
#include <vector>

#include "commcent/graph.hpp"
#include "commcent/partition.hpp"
#include "commcent/random.hpp"

namespace commcent {

/// Parameters of an LFR benchmark graph. Defaults reproduce the reference
/// configuration: 2500 nodes, mean degree 8, max degree 27, exponents 2.7,
/// community sizes in [4, 250].
struct LfrParams {
    std::size_t n = 2500;
    double avg_degree = 8.0;
    std::size_t max_degree = 27;
    double gamma = 2.7; ///< degree exponent
    double theta = 2.7; ///< community-size exponent
    double mu = 0.05;   ///< target mixing parameter
    std::size_t min_community = 4;
    std::size_t max_community = 250;
    std::uint64_t seed = 1;

    void validate() const;
};

/**
 * Discrete power law on integers with a real-valued lower cutoff.
 *
 * P(k) is proportional to k^-exponent on [floor(lower), upper], with the
 * weight of floor(lower) scaled by 1 - frac(lower), so the mean varies
 * continuously with `lower`.
 */
class DiscretePowerLaw {
public:
    DiscretePowerLaw(double exponent, double lower, std::size_t upper);

    double mean() const;
    std::size_t sample(Rng& rng) const;
    std::size_t min_value() const { return first_; }

private:
    std::size_t first_;
    std::vector<double> cumulative_;
};

/// Lower cutoff whose power-law mean equals `avg` (bisection to 0.01).
double solve_min_degree(double gamma, double avg, std::size_t max_degree);

/// n degrees; the total is made even by decrementing one entry.
std::vector<std::size_t> sample_powerlaw_degrees(const LfrParams& params, Rng& rng);

/// Community sizes in [min_community, max_community] summing to exactly n.
std::vector<std::size_t> sample_community_sizes(const LfrParams& params, Rng& rng);

struct LfrDiagnostics {
    double realized_mu = 0.0;
    double mean_degree = 0.0;
    std::size_t community_count = 0;
    std::size_t capped_nodes = 0; ///< nodes whose internal degree hit their community size
    std::size_t dropped_stubs = 0;
    std::size_t rewire_swaps = 0;
};

struct LfrResult {
    Graph graph;
    Partition partition;
    std::vector<std::size_t> target_degrees;
    LfrDiagnostics diagnostics;
};

/**
 * Builds an LFR graph with its planted partition. Deterministic in
 * `params.seed`. Nodes that find no community larger than their internal
 * degree get that degree capped (counted in `capped_nodes`); the final
 * degree-preserving rewiring pulls the mixing parameter back to target.
 */
LfrResult generate_lfr(const LfrParams& params);

} // namespace commcent
