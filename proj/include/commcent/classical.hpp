#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commcent/graph.hpp"

namespace commcent {

/// The ten community-agnostic measures.
enum class Measure { Degree, Betweenness, Closeness, Katz, PageRank, Subgraph, Mnc, Leverage, Diffusion, Laplacian };

inline constexpr std::array<Measure, 10> kClassicalMeasures = {
    Measure::Degree,   Measure::Betweenness, Measure::Closeness, Measure::Katz,      Measure::PageRank,
    Measure::Subgraph, Measure::Mnc,         Measure::Leverage,  Measure::Diffusion, Measure::Laplacian};

/// Short id used in files: d, b, c, k, p, s, m, lev, dif, lap.
std::string_view measure_id(Measure m);
std::optional<Measure> parse_measure(std::string_view id);

struct CentralityParams {
    double katz_fraction = 0.85; ///< Katz attenuation as a fraction of 1/lambda_max
    double pagerank_damping = 0.85;
    double diffusion_lambda = 1.0;
    double convergence_tol = 1e-9;
    int max_iters = 1000;

    /// Throws InvalidArgument when a value is outside its admissible range.
    void validate() const;
};

/// One score per node for a named measure, with the parameters used.
struct CentralityVector {
    std::string measure;
    std::vector<double> scores;
    std::map<std::string, double> params;
};

CentralityVector degree(const Graph& g);

/// Brandes accumulation, unnormalized, each unordered pair counted once.
CentralityVector betweenness(const Graph& g);

/// Wasserman-Faust closeness: ((n_i-1)/(N-1)) * ((n_i-1)/sum of distances in
/// the component of i). Isolated nodes score 0.
CentralityVector closeness(const Graph& g);

/// Fixed point of x = a*A*x + 1 with a = katz_fraction / lambda_max. An
/// edgeless graph yields all ones.
CentralityVector katz(const Graph& g, const CentralityParams& params = {});

/// Katz with an explicit attenuation factor `a` (must be < 1/lambda_max).
CentralityVector katz_with_attenuation(const Graph& g, double attenuation, const CentralityParams& params = {});

CentralityVector pagerank(const Graph& g, const CentralityParams& params = {});

/// Diagonal of exp(A) by eigendecomposition of each connected component.
CentralityVector subgraph_centrality(const Graph& g);

/// Size of the largest component of the subgraph induced by N(i).
CentralityVector mnc(const Graph& g);

CentralityVector leverage(const Graph& g);
CentralityVector diffusion_degree(const Graph& g, const CentralityParams& params = {});

/// Drop in Laplacian energy on removing the node: k^2 + k + 2*sum of neighbor degrees.
CentralityVector laplacian_centrality(const Graph& g);

CentralityVector compute(Measure m, const Graph& g, const CentralityParams& params = {});

/// Largest adjacency eigenvalue by power iteration on A + I, with a dense
/// per-component solve when the iteration stalls.
double spectral_radius(const Graph& g, double tol = 1e-9, int max_iters = 1000);

} // namespace commcent
