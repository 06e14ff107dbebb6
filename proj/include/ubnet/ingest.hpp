#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "ubnet/bipartite_graph.hpp"
#include "ubnet/projected_graph.hpp"

namespace ubnet {

// One raw input row before merging. Absent weight column means 1.0.
struct EdgeRecord {
    std::string user;
    std::string object;
    double weight = 1.0;
};

struct IngestOptions {
    char delimiter = '\t';
    bool has_header = false;
    // Keep only records with raw weight >= min_rating, applied before
    // duplicate merging (ratings are filtered individually).
    std::optional<double> min_rating;
    // Column holding the weight (0-based). Default: column 2 when the row
    // has one; rows with exactly two columns get weight 1.0.
    std::optional<std::size_t> weight_column;
};

struct LoadSummary {
    std::size_t rows_read = 0;         // non-blank data rows
    std::size_t rows_dropped_rating = 0;
    std::size_t rows_dropped_zero_weight = 0;
    std::size_t duplicates_merged = 0;
    std::size_t users = 0;
    std::size_t objects = 0;
    std::size_t edges = 0;
};

// Parses UTF-8 delimited text: <user><delim><object>[<delim><weight>].
// Malformed rows raise ParseError with the 1-based line number; an empty
// result raises EmptyGraphError.
BipartiteGraph load_edge_list(const std::string& path,
                              const IngestOptions& options = {},
                              LoadSummary* summary = nullptr);

// Stream variant used by the CLI and tests.
BipartiteGraph load_edge_list(std::istream& in, const IngestOptions& options,
                              LoadSummary* summary, std::size_t first_line = 1);

// One-mode edge list <node><delim><node>[<delim><weight>]; consumed by the
// communities stage. Node keys interned in first-appearance order.
ProjectedGraph load_one_mode_edge_list(const std::string& path,
                                       const IngestOptions& options = {});
ProjectedGraph load_one_mode_edge_list(std::istream& in,
                                       const IngestOptions& options,
                                       std::size_t first_line = 1);

// Davis (1941) Southern Women participation network: 18 women, 14 events,
// 89 unit-weight edges. Women keyed "1".."18", events "19".."32".
BipartiteGraph southern_women();

}  // namespace ubnet
