#include "commcent/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "commcent/error.hpp"
#include "commcent/parallel.hpp"

namespace commcent {

namespace {

std::int64_t tied_pairs(std::int64_t run) { return run * (run - 1) / 2; }

/// Sorts `y` ascending, returning the number of swaps an insertion sort
/// would make (i.e. inversions).
std::int64_t merge_count(std::vector<double>& y, std::vector<double>& buffer, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t swaps = merge_count(y, buffer, lo, mid) + merge_count(y, buffer, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (y[j] < y[i]) {
            swaps += static_cast<std::int64_t>(mid - i);
            buffer[k++] = y[j++];
        } else {
            buffer[k++] = y[i++];
        }
    }
    while (i < mid)
        buffer[k++] = y[i++];
    while (j < hi)
        buffer[k++] = y[j++];
    std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
              y.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

} // namespace

KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InvalidArgument("kendall_tau_b: vectors differ in length");
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        if (std::isnan(x[i]) || std::isnan(y[i]))
            throw InvalidArgument("kendall_tau_b: NaN input");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });

    KendallCounts c;
    const auto nn = static_cast<std::int64_t>(n);
    c.n0 = nn * (nn - 1) / 2;
    std::int64_t joint = 0;
    std::int64_t run_x = 1, run_xy = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        const bool same_x = i < n && x[order[i]] == x[order[i - 1]];
        const bool same_xy = same_x && y[order[i]] == y[order[i - 1]];
        if (same_x) {
            ++run_x;
        } else {
            c.n1 += tied_pairs(run_x);
            run_x = 1;
        }
        if (same_xy) {
            ++run_xy;
        } else {
            joint += tied_pairs(run_xy);
            run_xy = 1;
        }
    }

    std::vector<double> ys(n), buffer(n);
    for (std::size_t i = 0; i < n; ++i)
        ys[i] = y[order[i]];
    const std::int64_t swaps = n ? merge_count(ys, buffer, 0, n) : 0;

    std::int64_t run_y = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && ys[i] == ys[i - 1]) {
            ++run_y;
        } else {
            c.n2 += tied_pairs(run_y);
            run_y = 1;
        }
    }
    c.concordant_minus_discordant = c.n0 - c.n1 - c.n2 + joint - 2 * swaps;
    return c;
}

std::optional<double> tau_from_counts(const KendallCounts& c) {
    const std::int64_t dx = c.n0 - c.n1;
    const std::int64_t dy = c.n0 - c.n2;
    if (dx <= 0 || dy <= 0)
        return std::nullopt;
    return static_cast<double>(c.concordant_minus_discordant) /
           std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
}

std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InvalidArgument("kendall_tau_b: vectors differ in length");
    if (x.size() < 2)
        throw InvalidArgument("kendall_tau_b needs at least two observations");
    return tau_from_counts(kendall_counts(x, y));
}

// ---------------------------------------------------------------------------

CorrelationMatrix CorrelationMatrix::standard() {
    CorrelationMatrix m;
    for (Measure measure : kClassicalMeasures)
        m.rows.emplace_back(measure_id(measure));
    const auto& ids = community_aware_ids();
    m.cols.assign(ids.begin(), ids.end());
    m.values.assign(m.rows.size() * m.cols.size(), std::nullopt);
    return m;
}

double round_significant(double v) {
    if (v == 0.0 || !std::isfinite(v))
        return v;
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
    const double scale = std::pow(10.0, 11 - exponent);
    const double r = std::round(v * scale) / scale;
    return std::isfinite(r) ? r : v;
}

CorrelationMatrix heatmap_from_vectors(std::span<const CentralityVector> classical,
                                       std::span<const CentralityVector> community_aware) {
    CorrelationMatrix m = CorrelationMatrix::standard();
    if (classical.size() != m.rows.size() || community_aware.size() != m.cols.size())
        throw InvalidArgument("heatmap needs 10 classical and 28 community-aware vectors");

    auto rounded = [](const CentralityVector& v) {
        std::vector<double> out(v.scores.size());
        std::transform(v.scores.begin(), v.scores.end(), out.begin(), round_significant);
        return out;
    };
    std::vector<std::vector<double>> rows, cols;
    for (const auto& v : classical)
        rows.push_back(rounded(v));
    for (const auto& v : community_aware)
        cols.push_back(rounded(v));

    parallel_for(m.values.size(), [&](std::size_t idx) {
        const std::size_t r = idx / m.cols.size();
        const std::size_t c = idx % m.cols.size();
        m.values[idx] = kendall_tau_b(rows[r], cols[c]);
    });
    return m;
}

CorrelationMatrix heatmap(const Graph& g, const Partition& p, const HeatmapOptions& options) {
    if (g.node_count() < 2)
        throw InvalidArgument("heatmap needs at least two nodes");
    options.centrality.validate();
    options.mixed.validate();
    std::vector<CentralityVector> classical(kClassicalMeasures.size());
    parallel_for(classical.size(),
                 [&](std::size_t i) { classical[i] = compute(kClassicalMeasures[i], g, options.centrality); });
    const auto aware = all_community_aware(g, p, options.centrality, options.mixed);
    return heatmap_from_vectors(classical, aware);
}

std::vector<double> block_values(const CorrelationMatrix& m, Block block) {
    std::vector<double> out;
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (std::size_t c = 0; c < m.cols.size(); ++c)
            if (block_of_column(c) == block && m.at(r, c))
                out.push_back(*m.at(r, c));
    return out;
}

BlockMeans block_means(const CorrelationMatrix& m, bool absolute) {
    auto mean = [&](Block b) -> std::optional<double> {
        const auto values = block_values(m, b);
        if (values.empty())
            return std::nullopt;
        double s = 0.0;
        for (double v : values)
            s += absolute ? std::abs(v) : v;
        return s / static_cast<double>(values.size());
    };
    return {mean(Block::Local), mean(Block::Global), mean(Block::Mixed)};
}

CorrelationMatrix mean_matrix(std::span<const CorrelationMatrix> matrices) {
    if (matrices.empty())
        throw InvalidArgument("mean_matrix needs at least one matrix");
    CorrelationMatrix out = matrices.front();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        double s = 0.0;
        std::size_t k = 0;
        for (const auto& m : matrices) {
            if (m.values.size() != out.values.size())
                throw InvalidArgument("mean_matrix: shape mismatch");
            if (m.values[i]) {
                s += *m.values[i];
                ++k;
            }
        }
        out.values[i] = k ? std::optional<double>(s / static_cast<double>(k)) : std::nullopt;
    }
    return out;
}

HistogramResult histogram(std::span<const double> values, double bin_width) {
    if (!(bin_width > 0.0) || bin_width > 2.0)
        throw InvalidArgument("histogram bin width must be in (0, 2]");
    if (values.empty())
        throw InvalidArgument("histogram of an empty list");
    auto bin_of = [&](double v) { return static_cast<std::int64_t>(std::floor(v / bin_width + 1e-9)); };
    HistogramResult h;
    h.width = bin_width;
    h.first_bin = bin_of(-1.0);
    const std::int64_t last = bin_of(1.0);
    h.counts.assign(static_cast<std::size_t>(last - h.first_bin + 1), 0);
    for (double v : values) {
        if (!(v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12))
            throw InvalidArgument("histogram values must lie in [-1, 1]");
        const std::int64_t k = std::clamp(bin_of(v), h.first_bin, last);
        ++h.counts[static_cast<std::size_t>(k - h.first_bin)];
    }
    h.modal = static_cast<std::size_t>(std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
    return h;
}

double compare_heatmaps(const CorrelationMatrix& a, const CorrelationMatrix& b, Block block) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw InvalidArgument("heatmaps have different shapes");
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < a.rows.size(); ++r)
        for (std::size_t c = 0; c < a.cols.size(); ++c)
            if (block_of_column(c) == block && a.at(r, c) && b.at(r, c)) {
                xs.push_back(*a.at(r, c));
                ys.push_back(*b.at(r, c));
            }
    if (xs.size() < 3)
        throw Error("fewer than three shared defined entries in block " + std::string(to_string(block)));
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw Error("heatmap block is constant; Pearson correlation undefined");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<CorrelationEdge> threshold_network(const CorrelationMatrix& m, double threshold) {
    if (!(threshold > -1.0 && threshold < 1.0))
        throw InvalidArgument("threshold must lie in (-1, 1)");
    std::vector<CorrelationEdge> edges;
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (std::size_t c = 0; c < m.cols.size(); ++c)
            if (m.at(r, c) && *m.at(r, c) > threshold)
                edges.push_back({m.rows[r], m.cols[c], block_of_column(c), *m.at(r, c)});
    return edges;
}

// ---------------------------------------------------------------------------

namespace {

std::string stars(double p) {
    if (p <= 0.01)
        return "**";
    if (p <= 0.05)
        return "*";
    return "";
}

/// Weighted simple regression with inference; unit weights give OLS.
RegressionResult fit_weighted(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
    const std::size_t n = x.size();
    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    const double mx = swx / sw;
    const double my = swy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
        syy += w[i] * (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw InvalidArgument("regression needs a non-constant predictor");

    RegressionResult r;
    r.n = n;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - r.intercept - r.slope * x[i];
        ssr += w[i] * e * e;
    }
    const double df = static_cast<double>(n) - 2.0;
    r.std_error = std::sqrt(ssr / df / sxx);
    r.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 0.0;

    const boost::math::students_t dist(df);
    const double t_crit = boost::math::quantile(boost::math::complement(dist, 0.025));
    if (r.std_error > 0.0) {
        const double t = r.slope / r.std_error;
        r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
    } else {
        r.p_value = r.slope == 0.0 ? 1.0 : 0.0;
    }
    r.ci95 = {r.slope - t_crit * r.std_error, r.slope + t_crit * r.std_error};
    r.significance = stars(r.p_value);
    return r;
}

void check_regression_input(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
    if (x.size() != y.size())
        throw InvalidArgument("regression: x and y differ in length");
    if (x.size() < min_n)
        throw InvalidArgument("regression needs at least " + std::to_string(min_n) + " points");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw InvalidArgument("regression: non-finite input");
}

} // namespace

RegressionResult ols(std::span<const double> x, std::span<const double> y) {
    check_regression_input(x, y, 3);
    const std::vector<double> w(x.size(), 1.0);
    auto r = fit_weighted(x, y, w);
    r.estimator = Estimator::Ols;
    return r;
}

RegressionResult wls_wooldridge(std::span<const double> x, std::span<const double> y) {
    check_regression_input(x, y, 5);
    const auto first = ols(x, y);
    std::vector<double> log_sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - first.intercept - first.slope * x[i];
        log_sq[i] = std::log(e * e + 1e-12);
    }
    const auto aux = ols(x, log_sq);
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        w[i] = 1.0 / std::exp(aux.intercept + aux.slope * x[i]);
    auto r = fit_weighted(x, y, w);
    r.estimator = Estimator::Wls;
    return r;
}

std::vector<RegressionResult> regression_suite(std::span<const CorpusRow> corpus) {
    if (corpus.size() < 10)
        throw InvalidArgument("regression corpus needs at least 10 networks");
    std::vector<RegressionResult> out;
    for (std::size_t f = 0; f < kFeatureNames.size(); ++f) {
        const bool gated = kFeatureNames[f] == "gamma_pred";
        for (Block block : {Block::Local, Block::Global}) {
            std::vector<double> xs, ys;
            for (const auto& row : corpus) {
                const auto& v = row.features.values[f];
                const auto& y = block == Block::Local ? row.mean_local : row.mean_global;
                if (!v || !y || (gated && !row.features.ks_pass))
                    continue;
                xs.push_back(*v);
                ys.push_back(*y);
            }
            for (Estimator est : {Estimator::Ols, Estimator::Wls}) {
                RegressionResult r;
                try {
                    r = est == Estimator::Ols ? ols(xs, ys) : wls_wooldridge(xs, ys);
                } catch (const InvalidArgument&) {
                    r = {};
                    r.skipped = true;
                    r.n = xs.size();
                }
                r.feature = std::string(kFeatureNames[f]);
                r.block = block;
                r.estimator = est;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

std::string_view to_string(Estimator e) { return e == Estimator::Ols ? "ols" : "wls"; }

} // namespace commcent
