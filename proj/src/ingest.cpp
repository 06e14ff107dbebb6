#include "ubnet/ingest.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "ubnet/error.hpp"

namespace ubnet {

namespace {

std::vector<std::string_view> split_fields(std::string_view line,
                                           char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_weight(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                     value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line_no,
                         "bad weight value '" + std::string(field) + "'");
    }
    if (!std::isfinite(value) || value < 0.0) {
        throw ParseError(line_no, "weight must be finite and >= 0");
    }
    return value;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

// Shared row scanner for both bipartite and one-mode lists. Calls sink
// with (left key, right key, weight) for every accepted record.
template <typename Sink>
void scan_rows(std::istream& in, const IngestOptions& options,
               std::size_t first_line, LoadSummary* summary, Sink&& sink) {
    std::string raw;
    std::size_t line_no = first_line - 1;
    bool header_pending = options.has_header;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = strip_cr(raw);
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        auto fields = split_fields(line, options.delimiter);
        if (fields.size() < 2) {
            throw ParseError(line_no, "expected at least 2 columns");
        }
        std::string_view left = fields[0];
        std::string_view right = fields[1];
        if (left.empty() || right.empty()) {
            throw ParseError(line_no, "empty key column");
        }
        double weight = 1.0;
        if (options.weight_column) {
            if (*options.weight_column >= fields.size()) {
                throw ParseError(line_no, "weight column out of range");
            }
            weight = parse_weight(fields[*options.weight_column], line_no);
        } else if (fields.size() >= 3) {
            weight = parse_weight(fields[2], line_no);
        }
        if (summary) ++summary->rows_read;
        if (options.min_rating && weight < *options.min_rating) {
            if (summary) ++summary->rows_dropped_rating;
            continue;
        }
        if (weight == 0.0) {
            if (summary) ++summary->rows_dropped_zero_weight;
            continue;
        }
        sink(left, right, weight);
    }
}

}  // namespace

BipartiteGraph load_edge_list(std::istream& in, const IngestOptions& options,
                              LoadSummary* summary, std::size_t first_line) {
    BipartiteGraph::Builder builder;
    scan_rows(in, options, first_line, summary,
              [&](std::string_view u, std::string_view o, double w) {
                  builder.add(u, o, w);
              });
    if (summary) summary->duplicates_merged = builder.duplicates_merged();
    BipartiteGraph g = std::move(builder).build();
    if (g.edge_count() == 0) {
        throw EmptyGraphError("no edges after parsing and filtering");
    }
    if (summary) {
        summary->users = g.user_count();
        summary->objects = g.object_count();
        summary->edges = g.edge_count();
    }
    return g;
}

BipartiteGraph load_edge_list(const std::string& path,
                              const IngestOptions& options,
                              LoadSummary* summary) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    return load_edge_list(in, options, summary);
}

ProjectedGraph load_one_mode_edge_list(std::istream& in,
                                       const IngestOptions& options,
                                       std::size_t first_line) {
    std::vector<std::string> keys;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<ProjectedEdge> edges;
    auto intern = [&](std::string_view key) {
        auto it = ids.find(std::string(key));
        if (it != ids.end()) return it->second;
        auto id = static_cast<std::uint32_t>(keys.size());
        keys.emplace_back(key);
        ids.emplace(keys.back(), id);
        return id;
    };
    scan_rows(in, options, first_line, nullptr,
              [&](std::string_view a, std::string_view b, double w) {
                  edges.push_back(ProjectedEdge{intern(a), intern(b), w});
              });
    if (edges.empty()) {
        throw EmptyGraphError("no edges after parsing");
    }
    return ProjectedGraph(std::move(keys), std::move(edges));
}

ProjectedGraph load_one_mode_edge_list(const std::string& path,
                                       const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    return load_one_mode_edge_list(in, options);
}

}  // namespace ubnet
