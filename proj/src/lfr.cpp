#include "commcent/lfr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "commcent/error.hpp"

namespace commcent {

void LfrParams::validate() const {
    auto fail = [](const std::string& what) { throw InvalidArgument("lfr: " + what); };
    if (n < 2)
        fail("n must be at least 2");
    if (!(gamma > 1.0) || !std::isfinite(gamma))
        fail("gamma must be greater than 1");
    if (!(theta > 1.0) || !std::isfinite(theta))
        fail("theta must be greater than 1");
    if (!(mu >= 0.0 && mu <= 1.0))
        fail("mu must lie in [0, 1]");
    if (min_community < 1 || min_community > max_community)
        fail("min_community must be in [1, max_community]");
    if (max_community > n)
        fail("max_community must not exceed n");
    if (max_degree < 1 || max_degree >= n)
        fail("max_degree must be in [1, n)");
    if (!(avg_degree >= 1.0 && avg_degree <= static_cast<double>(max_degree)))
        fail("avg_degree must be in [1, max_degree]");
}

DiscretePowerLaw::DiscretePowerLaw(double exponent, double lower, std::size_t upper) {
    if (!(lower >= 1.0) || lower > static_cast<double>(upper))
        throw InvalidArgument("power law support is empty");
    first_ = static_cast<std::size_t>(std::floor(lower));
    const double partial = 1.0 - (lower - static_cast<double>(first_));
    double acc = 0.0;
    for (std::size_t k = first_; k <= upper; ++k) {
        double w = std::pow(static_cast<double>(k), -exponent);
        if (k == first_)
            w *= partial;
        acc += w;
        cumulative_.push_back(acc);
    }
    for (auto& c : cumulative_)
        c /= acc;
    cumulative_.back() = 1.0;
}

double DiscretePowerLaw::mean() const {
    double m = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < cumulative_.size(); ++i) {
        m += static_cast<double>(first_ + i) * (cumulative_[i] - prev);
        prev = cumulative_[i];
    }
    return m;
}

std::size_t DiscretePowerLaw::sample(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end())
        --it;
    return first_ + static_cast<std::size_t>(it - cumulative_.begin());
}

double solve_min_degree(double gamma, double avg, std::size_t max_degree) {
    auto mean_at = [&](double lower) { return DiscretePowerLaw(gamma, lower, max_degree).mean(); };
    double lo = 1.0, hi = static_cast<double>(max_degree);
    if (mean_at(lo) > avg + 0.01 || mean_at(hi) < avg - 0.01)
        throw InvalidArgument("lfr: no minimum degree in [1, max_degree] reaches the requested mean");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double m = mean_at(mid);
        if (std::abs(m - avg) <= 0.01 && hi - lo < 1e-6)
            return mid;
        (m < avg ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<std::size_t> sample_powerlaw_degrees(const LfrParams& params, Rng& rng) {
    params.validate();
    const DiscretePowerLaw law(params.gamma, solve_min_degree(params.gamma, params.avg_degree, params.max_degree),
                               params.max_degree);
    std::vector<std::size_t> degrees(params.n);
    std::size_t total = 0;
    for (auto& k : degrees) {
        k = law.sample(rng);
        total += k;
    }
    if (total % 2 == 1) {
        // Decrement a random entry that stays positive.
        for (;;) {
            auto& k = degrees[rng.below(degrees.size())];
            if (k > 1) {
                --k;
                break;
            }
        }
    }
    return degrees;
}

std::vector<std::size_t> sample_community_sizes(const LfrParams& params, Rng& rng) {
    params.validate();
    if (params.min_community > params.n)
        throw InvalidArgument("lfr: min_community exceeds n");
    const DiscretePowerLaw law(params.theta, static_cast<double>(params.min_community), params.max_community);
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    while (total < params.n) {
        std::size_t s = law.sample(rng);
        if (total + s > params.n) {
            const std::size_t rest = params.n - total;
            if (rest >= params.min_community) {
                s = rest;
            } else {
                // The trimmed remainder would fall below the minimum: give
                // back the previous draw and keep sampling.
                if (sizes.empty())
                    continue;
                total -= sizes.back();
                sizes.pop_back();
                continue;
            }
        }
        sizes.push_back(s);
        total += s;
    }
    return sizes;
}

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v)
        std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

/// Mutable simple graph with separate intra and inter edge pools.
class Builder {
public:
    Builder(std::span<const CommunityId> community) : community_(community) {}

    bool has(NodeId u, NodeId v) const { return keys_.contains(edge_key(u, v)); }
    bool same(NodeId u, NodeId v) const { return community_[u] == community_[v]; }

    void add(NodeId u, NodeId v) {
        keys_.insert(edge_key(u, v));
        (same(u, v) ? intra_ : inter_).emplace_back(u, v);
    }

    /// Removes the edge at `index` of the given pool (swap-and-pop).
    void remove(bool intra, std::size_t index) {
        auto& pool = intra ? intra_ : inter_;
        keys_.erase(edge_key(pool[index].first, pool[index].second));
        pool[index] = pool.back();
        pool.pop_back();
    }

    std::vector<Edge>& pool(bool intra) { return intra ? intra_ : inter_; }
    std::size_t edge_count() const { return intra_.size() + inter_.size(); }
    std::size_t inter_count() const { return inter_.size(); }

    std::vector<Edge> all_edges() const {
        std::vector<Edge> out(intra_);
        out.insert(out.end(), inter_.begin(), inter_.end());
        return out;
    }

private:
    std::span<const CommunityId> community_;
    std::unordered_set<std::uint64_t> keys_;
    std::vector<Edge> intra_, inter_;
};

/**
 * Configuration-model matching of `stubs` into edges of one pool. Invalid
 * pairs are reshuffled a few rounds; leftovers are then placed by swapping
 * with an existing edge (x, y) of the same pool into (u, x), (v, y). Returns
 * the number of stubs that could not be placed.
 */
std::size_t match_stubs(Builder& b, std::vector<NodeId> stubs, bool intra, Rng& rng) {
    auto valid = [&](NodeId u, NodeId v) { return u != v && b.same(u, v) == intra && !b.has(u, v); };

    for (int round = 0; round < 10 && stubs.size() >= 2; ++round) {
        rng.shuffle(std::span<NodeId>(stubs));
        std::vector<NodeId> left;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            if (valid(stubs[i], stubs[i + 1])) {
                b.add(stubs[i], stubs[i + 1]);
            } else {
                left.push_back(stubs[i]);
                left.push_back(stubs[i + 1]);
            }
        }
        if (stubs.size() % 2 == 1)
            left.push_back(stubs.back());
        stubs.swap(left);
    }

    std::size_t dropped = 0;
    while (stubs.size() >= 2) {
        const NodeId u = stubs.back();
        stubs.pop_back();
        const NodeId v = stubs.back();
        stubs.pop_back();
        if (valid(u, v)) {
            b.add(u, v);
            continue;
        }
        bool placed = false;
        auto& pool = b.pool(intra);
        for (int attempt = 0; attempt < 200 && !pool.empty(); ++attempt) {
            const std::size_t idx = rng.below(pool.size());
            auto [x, y] = pool[idx];
            if (rng.below(2) == 1)
                std::swap(x, y);
            if (x == u || x == v || y == u || y == v)
                continue;
            if (!valid(u, x) || !valid(v, y))
                continue;
            b.remove(intra, idx);
            b.add(u, x);
            b.add(v, y);
            placed = true;
            break;
        }
        if (!placed)
            dropped += 2;
    }
    return dropped + stubs.size();
}

/// Degree-preserving swaps that move the realized mixing parameter towards
/// `target`. Returns the number of accepted swaps.
std::size_t rewire_towards(Builder& b, double target, double tolerance, Rng& rng) {
    const std::size_t m = b.edge_count();
    if (m == 0)
        return 0;
    auto realized = [&] { return static_cast<double>(b.inter_count()) / static_cast<double>(m); };
    std::size_t accepted = 0;
    const std::size_t budget = 50 * m;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        const double current = realized();
        if (std::abs(current - target) <= tolerance)
            break;
        const bool raise = current < target;
        // Raising takes two intra edges, lowering takes two inter edges.
        auto& pool = b.pool(raise);
        if (pool.size() < 2)
            break;
        std::size_t i = rng.below(pool.size());
        std::size_t j = rng.below(pool.size());
        if (i == j)
            continue;
        auto [a, x] = pool[i];
        auto [c, y] = pool[j];
        if (rng.below(2) == 1)
            std::swap(c, y);
        // Candidate replacement: (a, c), (x, y).
        if (a == c || x == y || a == y || x == c)
            continue;
        if (b.has(a, c) || b.has(x, y))
            continue;
        const int inter_before = raise ? 0 : 2;
        const int inter_after = (b.same(a, c) ? 0 : 1) + (b.same(x, y) ? 0 : 1);
        if (raise ? inter_after <= inter_before : inter_after >= inter_before)
            continue;
        if (i < j)
            std::swap(i, j);
        b.remove(raise, i);
        b.remove(raise, j);
        b.add(a, c);
        b.add(x, y);
        ++accepted;
    }
    return accepted;
}

} // namespace

LfrResult generate_lfr(const LfrParams& params) {
    params.validate();
    Rng rng(params.seed);
    const std::size_t n = params.n;
    const auto degrees = sample_powerlaw_degrees(params, rng);

    std::vector<std::size_t> internal(n), external(n);
    for (std::size_t v = 0; v < n; ++v) {
        // Round half up: ties go to the internal side.
        internal[v] = static_cast<std::size_t>(std::floor((1.0 - params.mu) * static_cast<double>(degrees[v]) + 0.5));
        internal[v] = std::min(internal[v], degrees[v]);
        external[v] = degrees[v] - internal[v];
    }
    std::vector<NodeId> by_internal(n);
    std::iota(by_internal.begin(), by_internal.end(), 0u);
    std::stable_sort(by_internal.begin(), by_internal.end(),
                     [&](NodeId a, NodeId b) { return internal[a] > internal[b]; });

    LfrDiagnostics diag;
    const auto sizes = sample_community_sizes(params, rng);
    std::vector<std::size_t> free(sizes);
    std::vector<CommunityId> community(n);

    // Largest internal degree first; each node takes a random free slot among
    // communities that can host its internal degree. When none is left the
    // node takes any free slot and its internal degree is capped at the
    // community size minus one, the excess becoming external stubs.
    for (std::size_t placed = 0; placed < n; ++placed) {
        const NodeId v = by_internal[placed];
        auto hosts = [&](std::size_t c) { return sizes[c] > internal[v]; };
        std::size_t slots = 0;
        for (std::size_t c = 0; c < sizes.size(); ++c)
            if (hosts(c))
                slots += free[c];
        const bool capped = slots == 0;
        if (capped) {
            slots = n - placed;
            ++diag.capped_nodes;
        }
        std::size_t pick = rng.below(slots);
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            if (!capped && !hosts(c))
                continue;
            if (pick < free[c]) {
                community[v] = static_cast<CommunityId>(c);
                --free[c];
                break;
            }
            pick -= free[c];
        }
        if (capped) {
            const std::size_t cap = sizes[community[v]] - 1;
            external[v] += internal[v] - cap;
            internal[v] = cap;
        }
    }

    std::vector<std::size_t> k_in(internal), k_out(external);
    std::vector<std::vector<NodeId>> members(sizes.size());
    for (NodeId v = 0; v < n; ++v)
        members[community[v]].push_back(v);

    Builder builder(community);
    std::size_t dropped = 0;
    for (auto& group : members) {
        std::size_t stub_total = 0;
        for (NodeId v : group)
            stub_total += k_in[v];
        if (stub_total % 2 == 1) {
            // Move one stub of the member with the most internal stubs outside.
            NodeId pick = group.front();
            for (NodeId v : group)
                if (k_in[v] > k_in[pick])
                    pick = v;
            --k_in[pick];
            ++k_out[pick];
        }
        std::vector<NodeId> stubs;
        for (NodeId v : group)
            stubs.insert(stubs.end(), k_in[v], v);
        dropped += match_stubs(builder, std::move(stubs), true, rng);
    }
    std::vector<NodeId> outer;
    for (NodeId v = 0; v < n; ++v)
        outer.insert(outer.end(), k_out[v], v);
    dropped += match_stubs(builder, std::move(outer), false, rng);

    diag.dropped_stubs = dropped;
    diag.rewire_swaps = rewire_towards(builder, params.mu, 0.005, rng);

    LfrResult out;
    auto edges = builder.all_edges();
    out.graph = Graph::from_edges(n, edges);
    std::vector<std::uint64_t> raw(community.begin(), community.end());
    out.partition = Partition::from_assignment(raw);
    out.target_degrees = degrees;
    diag.realized_mu = out.graph.edge_count() ? mixing_parameter(out.graph, out.partition) : 0.0;
    diag.mean_degree = 2.0 * static_cast<double>(out.graph.edge_count()) / static_cast<double>(n);
    diag.community_count = out.partition.community_count();
    out.diagnostics = diag;
    return out;
}

} // namespace commcent
