#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "r1lra/core.hpp"
#include "r1lra/graph.hpp"

namespace r1lra {

/// Text-format error carrying the 1-based input line it was detected on.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Shortest decimal rendering that round-trips the double exactly.
std::string format_number(double x);

// Matrix format: header "rows cols", then one line of entries per row.
// Lines may carry '#' comments; comment-only and blank lines are skipped everywhere.
Matrix parse_matrix(std::string_view text);
std::string serialize_matrix(const Matrix& m);

// Graph format: header "nv ne", then ne lines "i j" with 1-based vertex labels.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// Bipartite format: header "m n e", then e lines "i j" (1-based left/right labels).
BipartiteGraph parse_bipartite(std::string_view text);
std::string serialize_bipartite(const BipartiteGraph& g);

// Factor-pair format: header "m n", a line of m entries (u), a line of n entries (v).
RankOneFactors parse_factors(std::string_view text);
std::string serialize_factors(const RankOneFactors& f);

std::string load_text(const std::string& path);
void save_text(const std::string& path, std::string_view text);
Matrix load_matrix(const std::string& path);

}  // namespace r1lra
