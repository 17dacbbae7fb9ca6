#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commcent/analysis.hpp"
#include "commcent/error.hpp"
#include "commcent/lfr.hpp"
#include "commcent/parallel.hpp"

namespace py = pybind11;
using namespace commcent;

namespace {

void check_node(const Graph& g, NodeId v) {
    if (v >= g.node_count())
        throw InvalidArgument("node " + std::to_string(v) + " out of range");
}

Measure measure_or_throw(const std::string& id) {
    const auto m = parse_measure(id);
    if (!m)
        throw InvalidArgument("unknown classical measure '" + id + "'");
    return *m;
}

CentralityParams centrality_params(double katz_fraction, double damping) {
    CentralityParams p;
    p.katz_fraction = katz_fraction;
    p.pagerank_damping = damping;
    p.validate();
    return p;
}

py::dict features_dict(const TopoFeatures& f) {
    py::dict out;
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
        out[py::str(std::string(kFeatureNames[i]))] = f.values[i] ? py::cast(*f.values[i]) : py::none();
    out["ks_pass"] = f.ks_pass;
    return out;
}

py::dict regression_dict(const RegressionResult& r) {
    py::dict out;
    out["slope"] = r.slope;
    out["intercept"] = r.intercept;
    out["std_error"] = r.std_error;
    out["p_value"] = r.p_value;
    out["r_squared"] = r.r_squared;
    out["ci95"] = r.ci95;
    out["n"] = r.n;
    out["significance"] = r.significance;
    return out;
}

} // namespace

PYBIND11_MODULE(_commcent, m) {
    m.doc() = "Classical and community-aware centrality on modular networks";

    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n") = 0)
        .def_static(
            "from_edges",
            [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
                std::vector<Edge> edges(pairs.begin(), pairs.end());
                return Graph::from_edges(n, edges);
            },
            py::arg("n"), py::arg("edges"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("degree",
             [](const Graph& g, NodeId v) {
                 check_node(g, v);
                 return g.degree(v);
             })
        .def("neighbors", [](const Graph& g, NodeId v) {
            check_node(g, v);
            auto nb = g.neighbors(v);
            return std::vector<NodeId>(nb.begin(), nb.end());
        })
        .def("has_edge",
             [](const Graph& g, NodeId u, NodeId v) {
                 check_node(g, u);
                 check_node(g, v);
                 return g.has_edge(u, v);
             })
        .def("edges", [](const Graph& g) {
            std::vector<std::pair<NodeId, NodeId>> out;
            for (auto [u, v] : g.edges())
                out.emplace_back(u, v);
            return out;
        })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<Partition>(m, "Partition")
        .def_static(
            "from_assignment",
            [](const std::vector<std::uint64_t>& raw) { return Partition::from_assignment(raw); },
            py::arg("assignment"))
        .def_static("single_community", &Partition::single_community)
        .def_static("singletons", &Partition::singletons)
        .def_property_readonly("node_count", &Partition::node_count)
        .def_property_readonly("community_count", &Partition::community_count)
        .def_property_readonly("assignment",
                               [](const Partition& p) {
                                   auto a = p.assignment();
                                   return std::vector<CommunityId>(a.begin(), a.end());
                               })
        .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });

    m.def(
        "load_edge_list",
        [](const std::string& path) {
            auto lg = load_edge_list_file(path);
            return py::make_tuple(std::move(lg.graph), std::move(lg.labels));
        },
        py::arg("path"), "Reads an edge list; returns (graph, labels).");

    m.def("mixing_parameter", &mixing_parameter);
    m.def("modularity", &modularity);
    m.def(
        "louvain", [](const Graph& g, std::uint64_t seed) { return louvain(g, seed); }, py::arg("graph"),
        py::arg("seed") = 1);

    m.def("classical_ids", [] {
        std::vector<std::string> ids;
        for (Measure c : kClassicalMeasures)
            ids.emplace_back(measure_id(c));
        return ids;
    });
    m.def("community_aware_ids", [] {
        const auto& ids = community_aware_ids();
        return std::vector<std::string>(ids.begin(), ids.end());
    });
    m.def(
        "centrality",
        [](const std::string& id, const Graph& g, double katz_fraction, double damping) {
            return compute(measure_or_throw(id), g, centrality_params(katz_fraction, damping)).scores;
        },
        py::arg("measure"), py::arg("graph"), py::arg("katz_fraction") = 0.85, py::arg("damping") = 0.85);
    m.def(
        "community_aware",
        [](const Graph& g, const Partition& p) {
            py::dict out;
            for (auto& v : all_community_aware(g, p))
                out[py::str(v.measure)] = std::move(v.scores);
            return out;
        },
        py::arg("graph"), py::arg("partition"), "All 28 community-aware vectors keyed by id.");

    m.def(
        "generate_lfr",
        [](std::size_t n, double avg_degree, std::size_t max_degree, double gamma, double theta, double mu,
           std::size_t min_community, std::size_t max_community, std::uint64_t seed) {
            LfrParams p{n, avg_degree, max_degree, gamma, theta, mu, min_community, max_community, seed};
            auto r = generate_lfr(p);
            py::dict diag;
            diag["realized_mu"] = r.diagnostics.realized_mu;
            diag["mean_degree"] = r.diagnostics.mean_degree;
            diag["community_count"] = r.diagnostics.community_count;
            diag["capped_nodes"] = r.diagnostics.capped_nodes;
            diag["dropped_stubs"] = r.diagnostics.dropped_stubs;
            diag["rewire_swaps"] = r.diagnostics.rewire_swaps;
            return py::make_tuple(std::move(r.graph), std::move(r.partition), diag);
        },
        py::arg("n") = 2500, py::arg("avg_degree") = 8.0, py::arg("max_degree") = 27, py::arg("gamma") = 2.7,
        py::arg("theta") = 2.7, py::arg("mu") = 0.05, py::arg("min_community") = 4, py::arg("max_community") = 250,
        py::arg("seed") = 1, "LFR benchmark; returns (graph, planted partition, diagnostics).");

    m.def(
        "kendall_tau_b",
        [](const std::vector<double>& x, const std::vector<double>& y) { return kendall_tau_b(x, y); },
        py::arg("x"), py::arg("y"), "Tau-b, or None when either vector is constant.");
    m.def(
        "heatmap",
        [](const Graph& g, const Partition& p) {
            const auto hm = heatmap(g, p);
            std::vector<std::vector<std::optional<double>>> rows;
            for (std::size_t r = 0; r < hm.rows.size(); ++r) {
                rows.emplace_back();
                for (std::size_t c = 0; c < hm.cols.size(); ++c)
                    rows.back().push_back(hm.at(r, c));
            }
            const auto means = block_means(hm);
            py::dict out;
            out["rows"] = hm.rows;
            out["cols"] = hm.cols;
            out["values"] = rows;
            out["block_means"] = py::dict(py::arg("local") = means.local, py::arg("global") = means.global,
                                          py::arg("mixed") = means.mixed);
            return out;
        },
        py::arg("graph"), py::arg("partition"), "Tau-b heatmap (10 x 28) with block means.");

    m.def(
        "fit_powerlaw",
        [](const std::vector<std::size_t>& values, std::size_t bootstrap, std::uint64_t seed,
           std::optional<std::size_t> x_max) {
            PowerLawOptions o;
            o.bootstrap_replicates = bootstrap;
            o.seed = seed;
            o.x_max = x_max;
            const auto f = fit_powerlaw(values, o);
            py::dict out;
            out["alpha"] = f.alpha;
            out["x_min"] = f.x_min;
            out["n_tail"] = f.n_tail;
            out["ks_statistic"] = f.ks_statistic;
            out["p_value"] = f.p_value;
            out["ks_pass"] = f.ks_pass;
            return out;
        },
        py::arg("values"), py::arg("bootstrap") = 100, py::arg("seed") = 1, py::arg("x_max") = py::none());
    m.def(
        "topo_features",
        [](const Graph& g, const Partition& p, std::size_t bootstrap) {
            MacroOptions o;
            o.powerlaw.bootstrap_replicates = bootstrap;
            return features_dict(topo_features(g, p, o));
        },
        py::arg("graph"), py::arg("partition"), py::arg("bootstrap") = 100);

    m.def(
        "ols", [](const std::vector<double>& x, const std::vector<double>& y) { return regression_dict(ols(x, y)); },
        py::arg("x"), py::arg("y"));
    m.def(
        "wls", [](const std::vector<double>& x, const std::vector<double>& y) {
            return regression_dict(wls_wooldridge(x, y));
        },
        py::arg("x"), py::arg("y"));

    m.def("set_thread_count", &set_thread_count, py::arg("threads"), "0 uses every hardware thread.");
}
