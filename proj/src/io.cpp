#include "commcent/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "commcent/error.hpp"

namespace commcent {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    if (s == "-0")
        s = "0";
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell.push_back('"');
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (ch != '\r') {
            cell.push_back(ch);
        }
    }
    out.push_back(std::move(cell));
    return out;
}

namespace {

std::optional<double> parse_cell(const std::string& cell, std::size_t line) {
    if (cell.empty())
        return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError("not a number: '" + cell + "'", line);
    return v;
}

bool parse_bool(const std::string& cell, std::size_t line) {
    if (cell == "1" || cell == "true")
        return true;
    if (cell == "0" || cell == "false")
        return false;
    throw ParseError("expected true/false, got '" + cell + "'", line);
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    return in;
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
    if (v)
        out << format_number(*v);
}

} // namespace

void write_centrality_csv(std::ostream& out, std::span<const std::string> labels,
                          std::span<const CentralityVector> vectors) {
    out << "node";
    for (const auto& v : vectors) {
        if (v.scores.size() != labels.size())
            throw InvalidArgument("centrality vector length does not match the node count");
        out << ',' << v.measure;
    }
    out << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << csv_field(labels[i]);
        for (const auto& v : vectors)
            out << ',' << format_number(v.scores[i]);
        out << '\n';
    }
}

void write_heatmap_csv(std::ostream& out, const CorrelationMatrix& m) {
    out << "classical";
    for (const auto& c : m.cols)
        out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        out << m.rows[r];
        for (std::size_t c = 0; c < m.cols.size(); ++c) {
            out << ',';
            write_optional(out, m.at(r, c));
        }
        out << '\n';
    }
}

CorrelationMatrix read_heatmap_csv(std::istream& in) {
    CorrelationMatrix m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        auto cells = split_csv_line(line);
        if (m.cols.empty()) {
            if (cells.size() < 2 || cells[0] != "classical")
                throw ParseError("heatmap header must start with 'classical'", lineno);
            m.cols.assign(cells.begin() + 1, cells.end());
            continue;
        }
        if (cells.size() != m.cols.size() + 1)
            throw ParseError("expected " + std::to_string(m.cols.size() + 1) + " cells", lineno);
        m.rows.push_back(cells[0]);
        for (std::size_t c = 1; c < cells.size(); ++c)
            m.values.push_back(parse_cell(cells[c], lineno));
    }
    if (m.cols.empty() || m.rows.empty())
        throw ParseError("heatmap file is empty", lineno);
    return m;
}

CorrelationMatrix read_heatmap_csv_file(const std::string& path) {
    auto in = open(path);
    return read_heatmap_csv(in);
}

void write_histogram_csv(std::ostream& out, const HistogramResult& h) {
    out << "bin_lower,bin_upper,count,modal\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        out << format_number(h.lower(i)) << ',' << format_number(h.upper(i)) << ',' << h.counts[i] << ','
            << (i == h.modal ? 1 : 0) << '\n';
}

void write_threshold_csv(std::ostream& out, std::span<const CorrelationEdge> edges) {
    out << "classical_id,ca_id,tau\n";
    for (const auto& e : edges)
        out << e.classical << ',' << e.community_aware << ',' << format_number(e.tau) << '\n';
}

void write_features_csv(std::ostream& out, std::span<const TopoFeatures> rows) {
    for (auto name : kFeatureNames)
        out << name << ',';
    out << "ks_pass\n";
    for (const auto& row : rows) {
        for (const auto& v : row.values) {
            write_optional(out, v);
            out << ',';
        }
        out << (row.ks_pass ? "true" : "false") << '\n';
    }
}

void write_corpus_csv(std::ostream& out, std::span<const CorpusRow> rows) {
    out << "network";
    for (auto name : kFeatureNames)
        out << ',' << name;
    out << ",ks_pass,mean_local,mean_global\n";
    for (const auto& row : rows) {
        out << csv_field(row.name);
        for (const auto& v : row.features.values) {
            out << ',';
            write_optional(out, v);
        }
        out << ',' << (row.features.ks_pass ? "true" : "false") << ',';
        write_optional(out, row.mean_local);
        out << ',';
        write_optional(out, row.mean_global);
        out << '\n';
    }
}

std::vector<CorpusRow> read_corpus_csv(std::istream& in) {
    std::vector<CorpusRow> rows;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        auto cells = split_csv_line(line);
        if (header.empty()) {
            header = cells;
            std::vector<std::string> expected{"network"};
            for (auto name : kFeatureNames)
                expected.emplace_back(name);
            expected.insert(expected.end(), {"ks_pass", "mean_local", "mean_global"});
            if (header != expected)
                throw ParseError("corpus header must be network,<16 features>,ks_pass,mean_local,mean_global",
                                 lineno);
            continue;
        }
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " cells", lineno);
        CorpusRow row;
        row.name = cells[0];
        for (std::size_t f = 0; f < kFeatureNames.size(); ++f)
            row.features.values[f] = parse_cell(cells[f + 1], lineno);
        row.features.ks_pass = parse_bool(cells[17], lineno);
        row.mean_local = parse_cell(cells[18], lineno);
        row.mean_global = parse_cell(cells[19], lineno);
        rows.push_back(std::move(row));
    }
    if (header.empty())
        throw ParseError("corpus file is empty", lineno);
    return rows;
}

std::vector<CorpusRow> read_corpus_csv_file(const std::string& path) {
    auto in = open(path);
    return read_corpus_csv(in);
}

void write_regression_csv(std::ostream& out, std::span<const RegressionResult> results) {
    out << "feature,block,estimator,n,slope,intercept,std_error,p_value,r_squared,ci95_low,ci95_high,significance,"
           "status\n";
    for (const auto& r : results) {
        out << r.feature << ',' << to_string(r.block) << ',' << to_string(r.estimator) << ',' << r.n << ',';
        if (r.skipped) {
            out << ",,,,,,,,SKIPPED\n";
            continue;
        }
        out << format_number(r.slope) << ',' << format_number(r.intercept) << ',' << format_number(r.std_error) << ','
            << format_number(r.p_value) << ',' << format_number(r.r_squared) << ',' << format_number(r.ci95.first)
            << ',' << format_number(r.ci95.second) << ',' << r.significance << ",OK\n";
    }
}

} // namespace commcent
