// commcent: command-line front end for generation, community detection,
// centrality measurement and correlation analysis.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "commcent/error.hpp"
#include "commcent/io.hpp"
#include "commcent/parallel.hpp"

using namespace commcent;
using nlohmann::ordered_json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Turns a flat JSON object into flags. Keys may use '_' or '-'.
std::vector<std::string> config_to_args(const std::string& path, const std::set<std::string>& given) {
    std::ifstream in(path);
    if (!in)
        throw cli::UsageError("cannot open config " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw cli::UsageError("config " + path + ": " + e.what());
    }
    if (!doc.is_object())
        throw cli::UsageError("config " + path + " must hold a JSON object");

    auto scalar = [&](const std::string& key, const ordered_json& v) -> std::string {
        if (v.is_string())
            return v.get<std::string>();
        if (v.is_number_integer() || v.is_number_unsigned())
            return v.dump();
        if (v.is_number_float())
            return format_number(v.get<double>());
        throw cli::UsageError("config key '" + key + "' has an unsupported value");
    };

    std::vector<std::string> args;
    for (const auto& [raw_key, value] : doc.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        if (given.contains(flag))
            continue; // the command line wins
        if (value.is_boolean()) {
            if (value.get<bool>())
                args.push_back(flag);
        } else if (value.is_array()) {
            args.push_back(flag);
            for (const auto& item : value)
                args.push_back(scalar(raw_key, item));
        } else {
            args.push_back(flag);
            args.push_back(scalar(raw_key, value));
        }
    }
    return args;
}

/// Expands `--config FILE` (anywhere after the subcommand) in place.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end())
        return args;
    if (it + 1 == args.end())
        throw cli::UsageError("--config needs a file");
    const std::string path = *(it + 1);
    it = args.erase(it, it + 2);
    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0)
            given.insert(a.substr(0, a.find('=')));
    auto extra = config_to_args(path, given);
    // Config flags go right after the subcommand name so positional order is kept.
    auto sub = std::find_if(args.begin() + 1, args.end(), [](const std::string& a) { return a.rfind('-', 0) != 0; });
    if (sub == args.end())
        throw cli::UsageError("--config must follow a subcommand");
    args.insert(sub + 1, extra.begin(), extra.end());
    return args;
}

ordered_json echo_options(const CLI::App& sub) {
    ordered_json params = ordered_json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help")
            continue;
        if (opt->get_type_size() == 0) {
            params[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            const auto& r = opt->results();
            params[name] = opt->get_expected_max() > 1 ? ordered_json(r) : ordered_json(r.back());
        } else {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

void add_centrality_flags(CLI::App* app, CentralityParams& c, MixedParams& m) {
    app->add_option("--katz-fraction", c.katz_fraction, "Katz attenuation as a fraction of 1/lambda_max")
        ->capture_default_str();
    app->add_option("--damping", c.pagerank_damping, "PageRank damping factor")->capture_default_str();
    app->add_option("--diffusion-lambda", c.diffusion_lambda, "Diffusion degree propagation probability")
        ->capture_default_str();
    app->add_option("--tol", c.convergence_tol, "Convergence tolerance of iterative solvers")->capture_default_str();
    app->add_option("--max-iters", c.max_iters, "Iteration cap of iterative solvers")->capture_default_str();
    app->add_option("--kshell-alpha", m.kshell_alpha, "Weight of the local core number in ksc")->capture_default_str();
    app->add_option("--comm-r", m.comm_r, "Scale R of Comm centrality")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical vs community-aware centrality toolkit", "commcent"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --threads follow the subcommand name
    app.set_version_flag("--version", COMMCENT_VERSION);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it")
        ->capture_default_str();

    cli::GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate an LFR benchmark graph with its planted partition");
    g->add_option("-o,--out", gen.out, "Output prefix (.edges, .cmty, .json)")->required();
    g->add_option("--n", gen.lfr.n, "Number of nodes")->capture_default_str();
    g->add_option("--avg-degree", gen.lfr.avg_degree, "Mean degree")->capture_default_str();
    g->add_option("--max-degree", gen.lfr.max_degree, "Maximum degree")->capture_default_str();
    g->add_option("--gamma", gen.lfr.gamma, "Degree exponent")->capture_default_str();
    g->add_option("--theta", gen.lfr.theta, "Community size exponent")->capture_default_str();
    g->add_option("--mu", gen.lfr.mu, "Mixing parameter")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    g->add_option("--min-community", gen.lfr.min_community, "Smallest community")->capture_default_str();
    g->add_option("--max-community", gen.lfr.max_community, "Largest community")->capture_default_str();
    g->add_option("--seed", gen.lfr.seed, "Random seed")->capture_default_str();

    cli::CommunitiesArgs com;
    auto* c = app.add_subcommand("communities", "Detect communities with Louvain (or ingest a partition)");
    c->add_option("-g,--graph", com.graph, "Edge list")->required()->check(CLI::ExistingFile);
    c->add_option("--partition", com.partition, "Use this partition file instead of Louvain")
        ->check(CLI::ExistingFile);
    c->add_option("-o,--out", com.out, "Partition file to write")->required();
    c->add_option("--seed", com.seed, "Louvain seed")->capture_default_str();

    cli::CentralityArgs cen;
    auto* ce = app.add_subcommand("centrality", "Compute centrality vectors");
    ce->add_option("-g,--graph", cen.graph, "Edge list")->required()->check(CLI::ExistingFile);
    ce->add_option("-p,--partition", cen.partition, "Partition file (community-aware measures)")
        ->check(CLI::ExistingFile);
    ce->add_option("-o,--out", cen.out, "Centrality CSV")->required();
    ce->add_option("-m,--measures", cen.measures, "Measure ids, 'classical' (default) or 'all'");
    add_centrality_flags(ce, cen.centrality, cen.mixed);

    cli::HeatmapArgs hm;
    auto* h = app.add_subcommand("heatmap", "Kendall tau-b heatmap of classical vs community-aware measures");
    h->add_option("-g,--graph", hm.graph, "Edge list")->required()->check(CLI::ExistingFile);
    h->add_option("-p,--partition", hm.partition, "Partition file")->required()->check(CLI::ExistingFile);
    h->add_option("-o,--out", hm.out, "Heatmap CSV")->required();
    h->add_flag("--abs-means", hm.abs_means, "Report block means of absolute values");
    add_centrality_flags(h, hm.centrality, hm.mixed);

    cli::HistogramArgs hi;
    auto* hs = app.add_subcommand("histogram", "Histogram of one heatmap block (pooled over files)");
    hs->add_option("--heatmap", hi.heatmaps, "Heatmap CSV file(s)")->required()->check(CLI::ExistingFile);
    hs->add_option("--block", hi.block, "local, global or mixed")->capture_default_str();
    hs->add_option("--bin-width", hi.bin_width, "Bin width")->capture_default_str();
    hs->add_option("-o,--out", hi.out, "Histogram CSV")->required();

    cli::CorrnetArgs cn;
    auto* n = app.add_subcommand("corrnet", "Bipartite network of correlations above a threshold");
    n->add_option("--heatmap", cn.heatmap, "Heatmap CSV")->required()->check(CLI::ExistingFile);
    n->add_option("--threshold", cn.threshold, "Keep tau strictly above this")->capture_default_str();
    n->add_option("-o,--out", cn.out, "Edge CSV")->required();

    cli::FeaturesArgs fe;
    auto* f = app.add_subcommand("features", "Sixteen topological features of a partitioned network");
    f->add_option("-g,--graph", fe.graph, "Edge list")->required()->check(CLI::ExistingFile);
    f->add_option("-p,--partition", fe.partition, "Partition file")->required()->check(CLI::ExistingFile);
    f->add_option("-o,--out", fe.out, "Features CSV")->required();
    f->add_option("--bootstrap", fe.bootstrap, "KS bootstrap replicates")->capture_default_str();
    f->add_option("--min-tail", fe.min_tail, "Minimum power-law tail size")->capture_default_str();
    f->add_option("--seed", fe.seed, "Bootstrap seed")->capture_default_str();

    cli::CorpusArgs co;
    auto* cp = app.add_subcommand("corpus", "Features and block means of several networks (regression input)");
    cp->add_option("--network", co.networks, "name=graph[:partition]; Louvain when no partition is given")
        ->required();
    cp->add_option("-o,--out", co.out, "Corpus CSV")->required();
    cp->add_option("--seed", co.seed, "Louvain and bootstrap seed")->capture_default_str();
    cp->add_option("--bootstrap", co.bootstrap, "KS bootstrap replicates")->capture_default_str();
    cp->add_flag("--abs-means", co.abs_means, "Use block means of absolute values");
    add_centrality_flags(cp, co.centrality, co.mixed);

    cli::RegressArgs re;
    auto* r = app.add_subcommand("regress", "Regress block mean correlations on each feature");
    r->add_option("--corpus", re.corpus, "Corpus CSV")->required()->check(CLI::ExistingFile);
    r->add_option("--estimator", re.estimator, "ols, wls or both")->capture_default_str();
    r->add_option("-o,--out", re.out, "Regression CSV")->required();

    cli::PipelineArgs pi;
    auto* p = app.add_subcommand("pipeline", "LFR grid -> heatmaps -> histograms -> block means");
    p->add_option("--out-dir", pi.out_dir, "Output directory")->required();
    p->add_option("--n", pi.n, "Nodes per network")->capture_default_str();
    p->add_option("--avg-degree", pi.avg_degree, "Mean degree")->capture_default_str();
    p->add_option("--max-degree", pi.max_degree, "Maximum degree")->capture_default_str();
    p->add_option("--min-community", pi.min_community, "Smallest community")->capture_default_str();
    p->add_option("--max-community", pi.max_community, "Largest community")->capture_default_str();
    p->add_option("--gamma", pi.gammas, "Degree exponents")->capture_default_str();
    p->add_option("--theta", pi.thetas, "Community size exponents")->capture_default_str();
    p->add_option("--mu", pi.mus, "Mixing parameters")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    p->add_option("--seeds", pi.seeds, "Seeds per configuration")->capture_default_str()->check(CLI::PositiveNumber);
    p->add_option("--first-seed", pi.first_seed, "First seed")->capture_default_str();
    p->add_option("--bin-width", pi.bin_width, "Histogram bin width")->capture_default_str();
    p->add_flag("--abs-means", pi.abs_means, "Block means of absolute values");
    p->add_flag("--keep-networks", pi.keep_networks, "Also write every generated network");

    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(std::move(args));
    } catch (const cli::UsageError& e) {
        std::cerr << "commcent: " << e.what() << '\n';
        return kExitUsage;
    }
    std::reverse(args.begin() + 1, args.end()); // CLI11 consumes a reversed vector
    args.erase(args.begin());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    set_thread_count(threads);
    const CLI::App* sub = app.get_subcommands().front();
    cli::Echo echo;
    echo["command"] = sub->get_name();
    echo["parameters"] = echo_options(*sub);

    try {
        if (sub == g)
            cli::run_generate(gen, echo);
        else if (sub == c)
            cli::run_communities(com, echo);
        else if (sub == ce)
            cli::run_centrality(cen, echo);
        else if (sub == h)
            cli::run_heatmap(hm, echo);
        else if (sub == hs)
            cli::run_histogram(hi, echo);
        else if (sub == n)
            cli::run_corrnet(cn, echo);
        else if (sub == f)
            cli::run_features(fe, echo);
        else if (sub == cp)
            cli::run_corpus(co, echo);
        else if (sub == r)
            cli::run_regress(re, echo);
        else if (sub == p)
            cli::run_pipeline(pi, echo);
    } catch (const cli::UsageError& e) {
        std::cerr << "commcent " << sub->get_name() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "commcent " << sub->get_name() << ": invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "commcent " << sub->get_name() << ": " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
