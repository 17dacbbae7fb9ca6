#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "commcent/classical.hpp"
#include "commcent/community.hpp"
#include "commcent/netstats.hpp"

namespace commcent {

// ---------------------------------------------------------------------------
// Rank correlation

/// Pair counts behind tau-b; n1 and n2 are tied pairs in x and y.
struct KendallCounts {
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    std::int64_t concordant_minus_discordant = 0;
};

/// O(n log n) counting (sort plus merge-sort swap count).
KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y);

/// (C - D) / sqrt((n0 - n1)(n0 - n2)); std::nullopt if either side is all tied.
std::optional<double> tau_from_counts(const KendallCounts& counts);

/// Kendall tau-b. Throws InvalidArgument on unequal lengths or fewer than two
/// observations; returns std::nullopt (UNDEFINED) for a constant input.
std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Heatmaps

/// Kendall tau-b of each classical measure (rows) against each of the 28
/// community-aware measures (columns, local/global/mixed blocks).
struct CorrelationMatrix {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::vector<std::optional<double>> values; ///< row-major

    std::optional<double>& at(std::size_t r, std::size_t c) { return values[r * cols.size() + c]; }
    const std::optional<double>& at(std::size_t r, std::size_t c) const { return values[r * cols.size() + c]; }

    /// Empty 10 x 28 matrix with the standard ids.
    static CorrelationMatrix standard();
};

struct HeatmapOptions {
    CentralityParams centrality;
    MixedParams mixed;
};

/// All 38 measures on (g, p) and their 280 pairwise tau-b values. Scores are
/// compared at 12 significant digits, the precision of centrality files.
CorrelationMatrix heatmap(const Graph& g, const Partition& p, const HeatmapOptions& options = {});

/// Builds the matrix from already computed vectors (10 classical, 28 aware).
CorrelationMatrix heatmap_from_vectors(std::span<const CentralityVector> classical,
                                       std::span<const CentralityVector> community_aware);

/// Rounds to 12 significant digits.
double round_significant(double v);

struct BlockMeans {
    std::optional<double> local;
    std::optional<double> global;
    std::optional<double> mixed;
};

/// Mean of defined entries per block (signed unless `absolute`); empty when a
/// block has no defined entry.
BlockMeans block_means(const CorrelationMatrix& m, bool absolute = false);

/// Defined values of one block, row-major.
std::vector<double> block_values(const CorrelationMatrix& m, Block block);

/// Elementwise mean of several matrices over their defined entries.
CorrelationMatrix mean_matrix(std::span<const CorrelationMatrix> matrices);

struct HistogramResult {
    double width = 0.0;
    std::int64_t first_bin = 0; ///< bin k covers [k*width, (k+1)*width)
    std::vector<std::size_t> counts;
    std::size_t modal = 0; ///< index into counts; ties go to the lower bin

    double lower(std::size_t i) const { return static_cast<double>(first_bin + static_cast<std::int64_t>(i)) * width; }
    double upper(std::size_t i) const { return lower(i) + width; }
};

/// Half-open bins of width `bin_width` covering [-1, 1].
HistogramResult histogram(std::span<const double> values, double bin_width = 0.05);

/// Pearson correlation of two heatmaps over the block's entries defined in
/// both. Throws Error with fewer than three shared entries.
double compare_heatmaps(const CorrelationMatrix& a, const CorrelationMatrix& b, Block block);

struct CorrelationEdge {
    std::string classical;
    std::string community_aware;
    Block block;
    double tau;
};

/// Edges with tau strictly above the threshold.
std::vector<CorrelationEdge> threshold_network(const CorrelationMatrix& m, double threshold = 0.70);

// ---------------------------------------------------------------------------
// Regression

enum class Estimator { Ols, Wls };

struct RegressionResult {
    std::string feature;
    Block block = Block::Local;
    Estimator estimator = Estimator::Ols;
    double slope = 0.0;
    double intercept = 0.0;
    double p_value = 1.0;
    double r_squared = 0.0;
    double std_error = 0.0;
    std::pair<double, double> ci95{0.0, 0.0};
    std::size_t n = 0;
    bool skipped = false;
    std::string significance; ///< "", "*" (p <= 0.05) or "**" (p <= 0.01)
};

/// Simple linear regression by the normal equations with a two-sided t test
/// on the slope. Throws InvalidArgument for n < 3 or constant x.
RegressionResult ols(std::span<const double> x, std::span<const double> y);

/// Feasible GLS: weights 1/h where ln h is the OLS fit of ln(residual^2 + 1e-12)
/// on x. Requires n >= 5.
RegressionResult wls_wooldridge(std::span<const double> x, std::span<const double> y);

/// One network of a regression corpus.
struct CorpusRow {
    std::string name;
    TopoFeatures features;
    std::optional<double> mean_local;
    std::optional<double> mean_global;
};

/// 16 features x {local, global} x {OLS, WLS}. Networks with an undefined
/// feature or block mean (or a failed KS gate for gamma_pred) are left out
/// of that fit; fits with too few points are flagged skipped.
std::vector<RegressionResult> regression_suite(std::span<const CorpusRow> corpus);

std::string_view to_string(Estimator e);

} // namespace commcent
