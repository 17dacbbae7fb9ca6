#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "commcent/analysis.hpp"

namespace commcent {

/// Shortest round-trippable form at 12 significant digits ("%.12g").
std::string format_number(double v);

/// "node,<id>,<id>,..." with one row per node in index order.
void write_centrality_csv(std::ostream& out, std::span<const std::string> labels,
                          std::span<const CentralityVector> vectors);

/// "classical,<28 ids>" then one row per classical measure; UNDEFINED is an
/// empty cell.
void write_heatmap_csv(std::ostream& out, const CorrelationMatrix& m);
CorrelationMatrix read_heatmap_csv(std::istream& in);
CorrelationMatrix read_heatmap_csv_file(const std::string& path);

/// "bin_lower,bin_upper,count,modal".
void write_histogram_csv(std::ostream& out, const HistogramResult& h);

/// "classical_id,ca_id,tau".
void write_threshold_csv(std::ostream& out, std::span<const CorrelationEdge> edges);

/// "<16 features>,ks_pass", one row per network; UNDEFINED is an empty cell.
void write_features_csv(std::ostream& out, std::span<const TopoFeatures> rows);

/// "network,<16 features>,ks_pass,mean_local,mean_global".
void write_corpus_csv(std::ostream& out, std::span<const CorpusRow> rows);
std::vector<CorpusRow> read_corpus_csv(std::istream& in);
std::vector<CorpusRow> read_corpus_csv_file(const std::string& path);

void write_regression_csv(std::ostream& out, std::span<const RegressionResult> results);

/// Quotes a field containing a comma, quote or line break (RFC 4180).
std::string csv_field(const std::string& s);

/// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace commcent
