#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/tools/minima.hpp>

#include "commcent/error.hpp"
#include "commcent/netstats.hpp"

namespace commcent {

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0))
        throw InvalidArgument("hurwitz_zeta requires s > 1 and q > 0");
    // B_{2j} / (2j)! for j = 1..6.
    static constexpr double kBernoulli[] = {1.0 / 12.0,        -1.0 / 720.0,        1.0 / 30240.0,
                                            -1.0 / 1209600.0,  1.0 / 47900160.0,    -691.0 / 1307674368000.0};
    constexpr int kDirect = 16;
    double sum = 0.0;
    for (int k = 0; k < kDirect; ++k)
        sum += std::pow(q + k, -s);
    const double a = q + kDirect;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    double factor = s * std::pow(a, -s - 1.0);
    for (int j = 1; j <= 6; ++j) {
        sum += kBernoulli[j - 1] * factor;
        factor *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) / (a * a);
    }
    return sum;
}

double continuous_powerlaw_mle(std::span<const double> values, double x_min) {
    double log_sum = 0.0;
    std::size_t n = 0;
    for (double x : values) {
        if (x < x_min)
            continue;
        log_sum += std::log(x / x_min);
        ++n;
    }
    if (n == 0 || log_sum <= 0.0)
        throw InvalidArgument("continuous power-law MLE needs values above x_min");
    return 1.0 + static_cast<double>(n) / log_sum;
}

namespace {

constexpr std::size_t kDirectSumLimit = 100000;

/// Unnormalized mass sum_{k=x}^{x_max} k^-alpha of a (possibly truncated) law.
double tail_mass(double alpha, std::size_t x, std::optional<std::size_t> x_max) {
    if (x_max) {
        if (x > *x_max)
            return 0.0;
        if (*x_max - x <= kDirectSumLimit) {
            double sum = 0.0;
            for (std::size_t k = *x_max + 1; k-- > x;)
                sum += std::pow(static_cast<double>(k), -alpha);
            return sum;
        }
        return hurwitz_zeta(alpha, static_cast<double>(x)) - hurwitz_zeta(alpha, static_cast<double>(*x_max) + 1.0);
    }
    return hurwitz_zeta(alpha, static_cast<double>(x));
}

/// Distinct observed values with counts, ascending.
struct Histogram {
    std::vector<std::size_t> value;
    std::vector<std::size_t> count;
    std::vector<std::size_t> tail_count; ///< observations >= value[i]
    std::vector<double> tail_log_sum;    ///< sum of ln x over observations >= value[i]

    explicit Histogram(std::span<const std::size_t> values) {
        std::map<std::size_t, std::size_t> counts;
        for (auto v : values)
            ++counts[v];
        for (auto [v, c] : counts) {
            value.push_back(v);
            count.push_back(c);
        }
        const std::size_t d = value.size();
        tail_count.assign(d + 1, 0);
        tail_log_sum.assign(d + 1, 0.0);
        for (std::size_t i = d; i-- > 0;) {
            tail_count[i] = tail_count[i + 1] + count[i];
            tail_log_sum[i] = tail_log_sum[i + 1] + static_cast<double>(count[i]) * std::log(static_cast<double>(value[i]));
        }
    }
};

struct TailFit {
    double alpha;
    double ks;
};

TailFit fit_tail(const Histogram& h, std::size_t first, const PowerLawOptions& options) {
    const std::size_t x_min = h.value[first];
    const double n = static_cast<double>(h.tail_count[first]);
    const double log_sum = h.tail_log_sum[first];
    auto negative_log_likelihood = [&](double alpha) {
        return n * std::log(tail_mass(alpha, x_min, options.x_max)) + alpha * log_sum;
    };
    const bool direct = options.x_max && *options.x_max - x_min <= kDirectSumLimit;
    const double lo = direct ? 0.0 : 1.0 + 1e-6;
    const double hi = 50.0;
    const auto [alpha, nll] = boost::math::tools::brent_find_minima(negative_log_likelihood, lo, hi, 40);
    (void)nll;

    // Empirical CDF is flat between observed values while the fitted CDF
    // rises, so the supremum sits at an observed value or just before the
    // next one.
    const double norm = tail_mass(alpha, x_min, options.x_max);
    auto fitted_cdf = [&](std::size_t x) { return 1.0 - tail_mass(alpha, x + 1, options.x_max) / norm; };
    double ks = 0.0;
    std::size_t seen = 0;
    for (std::size_t i = first; i < h.value.size(); ++i) {
        seen += h.count[i];
        const double empirical = static_cast<double>(seen) / n;
        ks = std::max(ks, std::abs(empirical - fitted_cdf(h.value[i])));
        if (i + 1 < h.value.size() && h.value[i + 1] - 1 > h.value[i])
            ks = std::max(ks, std::abs(empirical - fitted_cdf(h.value[i + 1] - 1)));
    }
    return {alpha, ks};
}

PowerLawFit scan_xmin(const Histogram& h, const PowerLawOptions& options) {
    PowerLawFit best;
    bool found = false;
    for (std::size_t i = 0; i < h.value.size(); ++i) {
        if (h.tail_count[i] < options.min_tail)
            break;
        const auto fit = fit_tail(h, i, options);
        if (!found || fit.ks < best.ks_statistic) {
            best.alpha = fit.alpha;
            best.ks_statistic = fit.ks;
            best.x_min = h.value[i];
            best.n_tail = h.tail_count[i];
            found = true;
        }
    }
    if (!found)
        throw InvalidArgument("power-law fit needs at least " + std::to_string(options.min_tail) +
                              " observations in the tail");
    return best;
}

void check_values(std::span<const std::size_t> values) {
    for (auto v : values)
        if (v < 1)
            throw InvalidArgument("power-law fit requires values >= 1");
}

} // namespace

PowerLawFit fit_powerlaw_at(std::span<const std::size_t> values, std::size_t x_min, const PowerLawOptions& options) {
    check_values(values);
    const Histogram h(values);
    auto it = std::lower_bound(h.value.begin(), h.value.end(), x_min);
    if (it == h.value.end() || h.tail_count[static_cast<std::size_t>(it - h.value.begin())] == 0)
        throw InvalidArgument("no observations at or above x_min");
    const auto first = static_cast<std::size_t>(it - h.value.begin());
    const auto fit = fit_tail(h, first, options);
    PowerLawFit out;
    out.alpha = fit.alpha;
    out.ks_statistic = fit.ks;
    out.x_min = h.value[first];
    out.n_tail = h.tail_count[first];
    out.p_value = std::numeric_limits<double>::quiet_NaN();
    return out;
}

PowerLawFit fit_powerlaw(std::span<const std::size_t> values, const PowerLawOptions& options) {
    check_values(values);
    const Histogram h(values);
    PowerLawFit best = scan_xmin(h, options);
    if (options.bootstrap_replicates == 0) {
        best.p_value = std::numeric_limits<double>::quiet_NaN();
        best.ks_pass = true;
        return best;
    }

    std::vector<std::size_t> below;
    for (auto v : values)
        if (v < best.x_min)
            below.push_back(v);
    const double tail_share = static_cast<double>(best.n_tail) / static_cast<double>(values.size());
    const PowerLawSampler sampler(best.alpha, best.x_min, options.x_max);
    Rng rng(options.seed);

    PowerLawOptions inner = options;
    inner.bootstrap_replicates = 0;
    std::size_t valid = 0, at_least = 0;
    std::vector<std::size_t> synthetic(values.size());
    for (std::size_t r = 0; r < options.bootstrap_replicates; ++r) {
        for (auto& x : synthetic)
            x = (below.empty() || rng.uniform() < tail_share) ? sampler(rng) : below[rng.below(below.size())];
        try {
            const auto fit = scan_xmin(Histogram(synthetic), inner);
            ++valid;
            if (fit.ks_statistic >= best.ks_statistic)
                ++at_least;
        } catch (const InvalidArgument&) {
            // Replicate with too short a tail: not comparable, skipped.
        }
    }
    best.p_value = valid ? static_cast<double>(at_least) / static_cast<double>(valid) : 0.0;
    best.ks_pass = best.p_value >= options.pass_threshold;
    return best;
}

PowerLawSampler::PowerLawSampler(double alpha, std::size_t x_min, std::optional<std::size_t> x_max)
    : alpha_(alpha), x_min_(x_min), x_max_(x_max) {
    constexpr std::size_t kTableLimit = 1000000;
    const double norm = tail_mass(alpha, x_min, x_max);
    double acc = 0.0;
    for (std::size_t x = x_min; cumulative_.size() < kTableLimit; ++x) {
        if (x_max && x > *x_max)
            break;
        acc += std::pow(static_cast<double>(x), -alpha) / norm;
        cumulative_.push_back(acc);
        if (1.0 - acc < 1e-12)
            break;
    }
    if (x_max && x_min + cumulative_.size() > *x_max)
        cumulative_.back() = 1.0;
}

std::size_t PowerLawSampler::operator()(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it != cumulative_.end())
        return x_min_ + static_cast<std::size_t>(it - cumulative_.begin());
    // Beyond the table: continuous approximation of the far tail.
    const double x = std::floor((static_cast<double>(x_min_) - 0.5) * std::pow(1.0 - u, -1.0 / (alpha_ - 1.0)) + 0.5);
    const std::size_t past_table = x_min_ + cumulative_.size();
    if (!std::isfinite(x) || x > 1e15)
        return past_table;
    return std::max(past_table, static_cast<std::size_t>(x));
}

} // namespace commcent
