#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "commcent/analysis.hpp"
#include "commcent/lfr.hpp"

namespace commcent::cli {

/// Raised for bad flag combinations that CLI11 cannot see; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every option of the invoked subcommand with its effective value.
using Echo = nlohmann::ordered_json;

struct GenerateArgs {
    LfrParams lfr;
    std::string out;
};

struct CommunitiesArgs {
    std::string graph;
    std::string partition;
    std::string out;
    std::uint64_t seed = 1;
};

struct CentralityArgs {
    std::string graph;
    std::string partition;
    std::string out;
    std::vector<std::string> measures;
    CentralityParams centrality;
    MixedParams mixed;
};

struct HeatmapArgs {
    std::string graph;
    std::string partition;
    std::string out;
    CentralityParams centrality;
    MixedParams mixed;
    bool abs_means = false;
};

struct HistogramArgs {
    std::vector<std::string> heatmaps;
    std::string block = "local";
    double bin_width = 0.05;
    std::string out;
};

struct CorrnetArgs {
    std::string heatmap;
    double threshold = 0.70;
    std::string out;
};

struct FeaturesArgs {
    std::string graph;
    std::string partition;
    std::string out;
    std::size_t bootstrap = 100;
    std::size_t min_tail = 50;
    std::uint64_t seed = 1;
};

struct CorpusArgs {
    std::vector<std::string> networks; ///< name=graph[:partition]
    std::string out;
    std::uint64_t seed = 1;
    std::size_t bootstrap = 100;
    bool abs_means = false;
    CentralityParams centrality;
    MixedParams mixed;
};

struct RegressArgs {
    std::string corpus;
    std::string estimator = "both";
    std::string out;
};

struct PipelineArgs {
    std::string out_dir;
    std::size_t n = 1000;
    double avg_degree = 8.0;
    std::size_t max_degree = 27;
    std::size_t min_community = 4;
    std::size_t max_community = 250;
    std::vector<double> gammas{2.7};
    std::vector<double> thetas{2.7};
    std::vector<double> mus{0.05, 0.25, 0.70};
    std::size_t seeds = 10;
    std::uint64_t first_seed = 1;
    double bin_width = 0.05;
    bool abs_means = false;
    bool keep_networks = false;
};

void run_generate(const GenerateArgs& a, const Echo& echo);
void run_communities(const CommunitiesArgs& a, const Echo& echo);
void run_centrality(const CentralityArgs& a, const Echo& echo);
void run_heatmap(const HeatmapArgs& a, const Echo& echo);
void run_histogram(const HistogramArgs& a, const Echo& echo);
void run_corrnet(const CorrnetArgs& a, const Echo& echo);
void run_features(const FeaturesArgs& a, const Echo& echo);
void run_corpus(const CorpusArgs& a, const Echo& echo);
void run_regress(const RegressArgs& a, const Echo& echo);
void run_pipeline(const PipelineArgs& a, const Echo& echo);

} // namespace commcent::cli
