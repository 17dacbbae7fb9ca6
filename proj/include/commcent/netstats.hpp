#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "commcent/graph.hpp"
#include "commcent/partition.hpp"
#include "commcent/random.hpp"

namespace commcent {

/// Hurwitz zeta sum_{k>=0} (q+k)^-s for s > 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

/// Closed-form continuous power-law exponent 1 + n / sum ln(x / x_min).
double continuous_powerlaw_mle(std::span<const double> values, double x_min);

struct PowerLawOptions {
    std::size_t min_tail = 50;
    std::size_t bootstrap_replicates = 100;
    double pass_threshold = 0.1;
    std::uint64_t seed = 1;
    /// Known upper cutoff of the support; fits a truncated law when set.
    std::optional<std::size_t> x_max;
};

struct PowerLawFit {
    double alpha = 0.0;
    std::size_t x_min = 0;
    std::size_t n_tail = 0;
    double ks_statistic = 0.0;
    double p_value = 0.0; ///< bootstrap goodness-of-fit p; NaN when not run
    bool ks_pass = false;
};

/// Discrete power-law MLE with x_min fixed; no bootstrap.
PowerLawFit fit_powerlaw_at(std::span<const std::size_t> values, std::size_t x_min,
                            const PowerLawOptions& options = {});

/**
 * Discrete power-law fit: x_min minimizes the KS distance between the fitted
 * and empirical tail over observed values with at least `min_tail` points at
 * or above them; the exponent maximizes the discrete likelihood. The p-value
 * comes from a semi-parametric bootstrap that refits every replicate.
 * Throws InvalidArgument if no candidate x_min has enough tail points.
 */
PowerLawFit fit_powerlaw(std::span<const std::size_t> values, const PowerLawOptions& options = {});

/// Draws from a discrete power law on [x_min, x_max] (x_max optional).
class PowerLawSampler {
public:
    PowerLawSampler(double alpha, std::size_t x_min, std::optional<std::size_t> x_max = std::nullopt);
    std::size_t operator()(Rng& rng) const;

private:
    double alpha_;
    std::size_t x_min_;
    std::optional<std::size_t> x_max_;
    std::vector<double> cumulative_;
};

inline constexpr std::array<std::string_view, 16> kFeatureNames = {
    "density",          "transitivity", "assortativity",     "avg_distance", "diameter", "efficiency",
    "gamma_pred",       "mixing_parameter", "modularity",    "internal_distance", "internal_density",
    "max_odf",          "avg_odf",      "flake_odf",         "embeddedness", "hub_dominance"};

/// Seven macroscopic and nine mesoscopic features; std::nullopt = UNDEFINED.
struct TopoFeatures {
    std::array<std::optional<double>, 16> values{};
    bool ks_pass = false;

    std::optional<double>& operator[](std::string_view name);
    const std::optional<double>& operator[](std::string_view name) const;
};

std::optional<std::size_t> feature_index(std::string_view name);

struct MacroOptions {
    bool fit_degree_exponent = true;
    PowerLawOptions powerlaw;
};

/// Density, transitivity, assortativity, giant-component average distance
/// and diameter, all-pairs efficiency, and the fitted degree exponent.
/// Requires at least two nodes.
TopoFeatures macro_features(const Graph& g, const MacroOptions& options = {});

/// Fills the nine mesoscopic entries of `into`.
void meso_features(const Graph& g, const Partition& p, TopoFeatures& into);

TopoFeatures topo_features(const Graph& g, const Partition& p, const MacroOptions& options = {});

} // namespace commcent
