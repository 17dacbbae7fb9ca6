#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "commcent/error.hpp"
#include "commcent/io.hpp"
#include "commcent/netstats.hpp"

namespace commcent::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::ofstream create(const std::string& path) {
    const fs::path p(path);
    if (p.has_parent_path())
        fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    return out;
}

void write_provenance(const std::string& path, const Echo& echo, const ordered_json& results) {
    ordered_json doc;
    doc["tool"] = "commcent";
    doc["version"] = COMMCENT_VERSION;
    doc["command"] = echo.at("command");
    doc["parameters"] = echo.at("parameters");
    doc["results"] = results;
    auto out = create(path);
    out << doc.dump(2) << '\n';
}

ordered_json number_or_null(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

struct Loaded {
    LabeledGraph graph;
    Partition partition;
};

Loaded load(const std::string& graph_path, const std::string& partition_path) {
    Loaded l{load_edge_list_file(graph_path), {}};
    if (!partition_path.empty())
        l.partition = load_partition_file(partition_path, l.graph);
    return l;
}

ordered_json graph_summary(const LabeledGraph& g) {
    return {{"nodes", g.graph.node_count()},
            {"edges", g.graph.edge_count()},
            {"duplicates_dropped", g.stats.duplicates_dropped},
            {"self_loops_dropped", g.stats.self_loops_dropped}};
}

ordered_json means_json(const BlockMeans& m) {
    return {{"local", number_or_null(m.local)}, {"global", number_or_null(m.global)}, {"mixed", number_or_null(m.mixed)}};
}

std::string optional_cell(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

Block parse_block(const std::string& s) {
    if (s == "local")
        return Block::Local;
    if (s == "global")
        return Block::Global;
    if (s == "mixed")
        return Block::Mixed;
    throw UsageError("unknown block '" + s + "' (expected local, global or mixed)");
}

std::string tag(double gamma, double theta, double mu) {
    return "g" + format_number(gamma) + "_t" + format_number(theta) + "_mu" + format_number(mu);
}

} // namespace

void run_generate(const GenerateArgs& a, const Echo& echo) {
    const auto result = generate_lfr(a.lfr);
    const auto labeled = with_index_labels(result.graph);

    std::size_t isolated = 0;
    {
        auto out = create(a.out + ".edges");
        write_edge_list(out, result.graph, labeled.labels);
    }
    {
        // Isolated nodes cannot appear in an edge list, so they are left out
        // of the partition file as well.
        auto out = create(a.out + ".cmty");
        for (NodeId v = 0; v < result.graph.node_count(); ++v) {
            if (result.graph.degree(v) == 0) {
                ++isolated;
                continue;
            }
            out << labeled.labels[v] << ' ' << result.partition.community_of(v) << '\n';
        }
    }
    const auto& d = result.diagnostics;
    write_provenance(a.out + ".json", echo,
                     {{"realized_mu", d.realized_mu},
                      {"mean_degree", d.mean_degree},
                      {"community_count", d.community_count},
                      {"edges", result.graph.edge_count()},
                      {"isolated_nodes", isolated},
                      {"capped_nodes", d.capped_nodes},
                      {"dropped_stubs", d.dropped_stubs},
                      {"rewire_swaps", d.rewire_swaps},
                      {"outputs", {a.out + ".edges", a.out + ".cmty"}}});
}

void run_communities(const CommunitiesArgs& a, const Echo& echo) {
    auto l = load(a.graph, a.partition);
    const bool detected = a.partition.empty();
    if (detected)
        l.partition = louvain(l.graph.graph, a.seed);
    {
        auto out = create(a.out);
        write_partition(out, l.partition, l.graph.labels);
    }
    const double mu = mixing_parameter(l.graph.graph, l.partition);
    write_provenance(a.out + ".json", echo,
                     {{"graph", graph_summary(l.graph)},
                      {"method", detected ? "louvain" : "external"},
                      {"mixing_parameter", mu},
                      {"modularity", modularity(l.graph.graph, l.partition)},
                      {"community_count", l.partition.community_count()},
                      {"strength", to_string(classify_strength(mu).strength)}});
}

void run_centrality(const CentralityArgs& a, const Echo& echo) {
    a.centrality.validate();
    a.mixed.validate();
    auto l = load(a.graph, a.partition);
    const auto& g = l.graph.graph;
    const auto& aware_ids = community_aware_ids();

    std::vector<std::string> ids = a.measures;
    if (ids.empty() || (ids.size() == 1 && ids[0] == "classical")) {
        ids.clear();
        for (Measure m : kClassicalMeasures)
            ids.emplace_back(measure_id(m));
    } else if (ids.size() == 1 && ids[0] == "all") {
        ids.clear();
        for (Measure m : kClassicalMeasures)
            ids.emplace_back(measure_id(m));
        ids.insert(ids.end(), aware_ids.begin(), aware_ids.end());
    }

    std::vector<CentralityVector> aware;
    std::vector<CentralityVector> vectors;
    for (const auto& id : ids) {
        if (auto m = parse_measure(id)) {
            vectors.push_back(compute(*m, g, a.centrality));
            continue;
        }
        const auto it = std::find(aware_ids.begin(), aware_ids.end(), id);
        if (it == aware_ids.end())
            throw UsageError("unknown measure id '" + id + "'");
        if (a.partition.empty())
            throw UsageError("measure '" + id + "' needs a partition (-p)");
        if (aware.empty())
            aware = all_community_aware(g, l.partition, a.centrality, a.mixed);
        vectors.push_back(aware[static_cast<std::size_t>(it - aware_ids.begin())]);
    }
    {
        auto out = create(a.out);
        write_centrality_csv(out, l.graph.labels, vectors);
    }
    ordered_json params = ordered_json::object();
    for (const auto& v : vectors)
        params[v.measure] = v.params;
    write_provenance(a.out + ".json", echo, {{"graph", graph_summary(l.graph)}, {"measure_params", params}});
}

void run_heatmap(const HeatmapArgs& a, const Echo& echo) {
    auto l = load(a.graph, a.partition);
    const auto m = heatmap(l.graph.graph, l.partition, {a.centrality, a.mixed});
    {
        auto out = create(a.out);
        write_heatmap_csv(out, m);
    }
    std::size_t undefined = 0;
    for (const auto& v : m.values)
        undefined += v ? 0 : 1;
    ordered_json results = {{"graph", graph_summary(l.graph)},
                            {"mixing_parameter", mixing_parameter(l.graph.graph, l.partition)},
                            {"undefined_entries", undefined}};
    results["block_means"] = means_json(block_means(m, a.abs_means));
    results["abs_means"] = a.abs_means;
    write_provenance(a.out + ".json", echo, results);
}

void run_histogram(const HistogramArgs& a, const Echo& echo) {
    const Block block = parse_block(a.block);
    std::vector<double> values;
    for (const auto& path : a.heatmaps) {
        const auto v = block_values(read_heatmap_csv_file(path), block);
        values.insert(values.end(), v.begin(), v.end());
    }
    const auto h = histogram(values, a.bin_width);
    {
        auto out = create(a.out);
        write_histogram_csv(out, h);
    }
    write_provenance(a.out + ".json", echo,
                     {{"values", values.size()},
                      {"modal_class", {h.lower(h.modal), h.upper(h.modal)}},
                      {"modal_count", h.counts[h.modal]}});
}

void run_corrnet(const CorrnetArgs& a, const Echo& echo) {
    const auto m = read_heatmap_csv_file(a.heatmap);
    const auto edges = threshold_network(m, a.threshold);
    {
        auto out = create(a.out);
        write_threshold_csv(out, edges);
    }
    std::map<std::string, std::size_t> per_block;
    for (const auto& e : edges)
        ++per_block[std::string(to_string(e.block))];
    write_provenance(a.out + ".json", echo, {{"edges", edges.size()}, {"edges_per_block", per_block}});
}

void run_features(const FeaturesArgs& a, const Echo& echo) {
    auto l = load(a.graph, a.partition);
    MacroOptions options;
    options.powerlaw.bootstrap_replicates = a.bootstrap;
    options.powerlaw.min_tail = a.min_tail;
    options.powerlaw.seed = a.seed;
    const auto f = topo_features(l.graph.graph, l.partition, options);
    {
        auto out = create(a.out);
        write_features_csv(out, std::span<const TopoFeatures>(&f, 1));
    }
    ordered_json values = ordered_json::object();
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
        values[std::string(kFeatureNames[i])] = number_or_null(f.values[i]);
    write_provenance(a.out + ".json", echo,
                     {{"graph", graph_summary(l.graph)}, {"features", values}, {"ks_pass", f.ks_pass}});
}

void run_corpus(const CorpusArgs& a, const Echo& echo) {
    if (a.networks.empty())
        throw UsageError("corpus needs at least one --network name=graph[:partition]");
    std::vector<CorpusRow> rows;
    ordered_json per_network = ordered_json::array();
    for (const auto& spec : a.networks) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--network expects name=graph[:partition], got '" + spec + "'");
        const std::string name = spec.substr(0, eq);
        std::string graph = spec.substr(eq + 1);
        std::string partition;
        if (const auto colon = graph.find(':'); colon != std::string::npos) {
            partition = graph.substr(colon + 1);
            graph = graph.substr(0, colon);
        }
        auto l = load(graph, partition);
        if (partition.empty())
            l.partition = louvain(l.graph.graph, a.seed);
        MacroOptions options;
        options.powerlaw.bootstrap_replicates = a.bootstrap;
        options.powerlaw.seed = a.seed;
        CorpusRow row;
        row.name = name;
        row.features = topo_features(l.graph.graph, l.partition, options);
        const auto means = block_means(heatmap(l.graph.graph, l.partition, {a.centrality, a.mixed}), a.abs_means);
        row.mean_local = means.local;
        row.mean_global = means.global;
        per_network.push_back({{"name", name},
                               {"graph", graph},
                               {"partition", partition.empty() ? "louvain" : partition},
                               {"block_means", means_json(means)}});
        rows.push_back(std::move(row));
    }
    {
        auto out = create(a.out);
        write_corpus_csv(out, rows);
    }
    write_provenance(a.out + ".json", echo, {{"networks", per_network}});
}

void run_regress(const RegressArgs& a, const Echo& echo) {
    if (a.estimator != "ols" && a.estimator != "wls" && a.estimator != "both")
        throw UsageError("--estimator must be ols, wls or both");
    const auto corpus = read_corpus_csv_file(a.corpus);
    auto results = regression_suite(corpus);
    if (a.estimator != "both") {
        const Estimator keep = a.estimator == "ols" ? Estimator::Ols : Estimator::Wls;
        std::erase_if(results, [&](const RegressionResult& r) { return r.estimator != keep; });
    }
    {
        auto out = create(a.out);
        write_regression_csv(out, results);
    }
    std::size_t skipped = 0, significant = 0;
    for (const auto& r : results) {
        skipped += r.skipped ? 1 : 0;
        significant += !r.skipped && !r.significance.empty() ? 1 : 0;
    }
    write_provenance(a.out + ".json", echo,
                     {{"networks", corpus.size()}, {"rows", results.size()}, {"skipped", skipped},
                      {"significant", significant}});
}

void run_pipeline(const PipelineArgs& a, const Echo& echo) {
    const fs::path root(a.out_dir);
    ordered_json configs = ordered_json::array();
    auto summary = create((root / "block_means.csv").string());
    summary << "gamma,theta,mu,seed,realized_mu,local,global,mixed\n";

    for (double gamma : a.gammas)
        for (double theta : a.thetas)
            for (double mu : a.mus) {
                const std::string name = tag(gamma, theta, mu);
                std::vector<CorrelationMatrix> maps;
                double realized = 0.0;
                for (std::size_t s = 0; s < a.seeds; ++s) {
                    LfrParams p;
                    p.n = a.n;
                    p.avg_degree = a.avg_degree;
                    p.max_degree = a.max_degree;
                    p.min_community = a.min_community;
                    p.max_community = a.max_community;
                    p.gamma = gamma;
                    p.theta = theta;
                    p.mu = mu;
                    p.seed = a.first_seed + s;
                    const auto net = generate_lfr(p);
                    const std::string stem = name + "_s" + std::to_string(p.seed);
                    if (a.keep_networks) {
                        const auto labeled = with_index_labels(net.graph);
                        auto edges = create((root / "networks" / (stem + ".edges")).string());
                        write_edge_list(edges, net.graph, labeled.labels);
                        auto cmty = create((root / "networks" / (stem + ".cmty")).string());
                        write_partition(cmty, net.partition, labeled.labels);
                    }
                    maps.push_back(heatmap(net.graph, net.partition));
                    auto out = create((root / "heatmaps" / (stem + ".csv")).string());
                    write_heatmap_csv(out, maps.back());
                    const auto m = block_means(maps.back(), a.abs_means);
                    summary << format_number(gamma) << ',' << format_number(theta) << ',' << format_number(mu) << ','
                            << p.seed << ',' << format_number(net.diagnostics.realized_mu) << ','
                            << optional_cell(m.local) << ',' << optional_cell(m.global) << ','
                            << optional_cell(m.mixed) << '\n';
                    realized += net.diagnostics.realized_mu;
                }
                const auto mean = mean_matrix(maps);
                {
                    auto out = create((root / "heatmaps" / (name + "_mean.csv")).string());
                    write_heatmap_csv(out, mean);
                }
                ordered_json modal = ordered_json::object();
                for (Block b : {Block::Local, Block::Global, Block::Mixed}) {
                    std::vector<double> pooled;
                    for (const auto& m : maps) {
                        const auto v = block_values(m, b);
                        pooled.insert(pooled.end(), v.begin(), v.end());
                    }
                    const auto h = histogram(pooled, a.bin_width);
                    auto out = create((root / "histograms" / (name + "_" + std::string(to_string(b)) + ".csv")).string());
                    write_histogram_csv(out, h);
                    modal[std::string(to_string(b))] = {h.lower(h.modal), h.upper(h.modal)};
                }
                const auto means = block_means(mean, a.abs_means);
                summary << format_number(gamma) << ',' << format_number(theta) << ',' << format_number(mu)
                        << ",mean," << format_number(realized / static_cast<double>(a.seeds)) << ','
                        << optional_cell(means.local) << ',' << optional_cell(means.global) << ','
                        << optional_cell(means.mixed) << '\n';
                configs.push_back({{"config", name},
                                   {"gamma", gamma},
                                   {"theta", theta},
                                   {"mu", mu},
                                   {"mean_realized_mu", realized / static_cast<double>(a.seeds)},
                                   {"block_means_of_mean_heatmap", means_json(means)},
                                   {"modal_class", modal}});
                std::cerr << "pipeline: " << name << " done\n";
            }
    summary.close();
    write_provenance((root / "provenance.json").string(), echo, {{"configs", configs}});
}

} // namespace commcent::cli
