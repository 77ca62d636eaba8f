#include "r1lra/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace r1lra {

namespace {

struct ContentLine {
  int number = 0;  // 1-based line in the original text
  std::vector<std::string_view> tokens;
};

// Splits into lines, strips '#' comments, tokenizes on whitespace, drops empties.
std::vector<ContentLine> content_lines(std::string_view text, int* last_line) {
  std::vector<ContentLine> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (pos == text.size() && line.empty()) break;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    ContentLine cl{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace((unsigned char)line[j])) ++j;
      if (j > i) cl.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!cl.tokens.empty()) out.push_back(std::move(cl));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  if (last_line) *last_line = line_no;
  return out;
}

double parse_double_token(std::string_view tok, int line) {
  std::string_view t = tok;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double value = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw ParseError(line, "non-numeric token '" + std::string(tok) + "'");
  if (!std::isfinite(value))
    throw ParseError(line, "non-finite entry '" + std::string(tok) + "'");
  return value;
}

long parse_int_token(std::string_view tok, int line, const char* what) {
  std::string_view t = tok;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  long value = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw ParseError(line, std::string(what) + ": expected an integer, got '" + std::string(tok) +
                               "'");
  return value;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

Matrix parse_matrix(std::string_view text) {
  int last_line = 0;
  const auto lines = content_lines(text, &last_line);
  if (lines.empty()) throw ParseError(last_line ? last_line : 1, "malformed header: empty input");
  const auto& head = lines[0];
  if (head.tokens.size() != 2)
    throw ParseError(head.number, "malformed header: expected 'rows cols'");
  const long rows = parse_int_token(head.tokens[0], head.number, "header");
  const long cols = parse_int_token(head.tokens[1], head.number, "header");
  if (rows < 1 || cols < 1)
    throw ParseError(head.number, "malformed header: dimensions must be positive");
  Matrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    if ((std::size_t)(r + 1) >= lines.size())
      throw ParseError(last_line, "expected " + std::to_string(rows) + " rows, found " +
                                      std::to_string(r));
    const auto& ln = lines[r + 1];
    if ((long)ln.tokens.size() != cols)
      throw ParseError(ln.number, "row " + std::to_string(r + 1) + " has " +
                                      std::to_string(ln.tokens.size()) + " of " +
                                      std::to_string(cols) + " expected entries");
    for (long c = 0; c < cols; ++c) m(r, c) = parse_double_token(ln.tokens[c], ln.number);
  }
  if (lines.size() > (std::size_t)(rows + 1))
    throw ParseError(lines[rows + 1].number, "unexpected trailing content");
  return m;
}

std::string serialize_matrix(const Matrix& m) {
  require_finite(m, "serialize_matrix");
  std::string out;
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  int last_line = 0;
  const auto lines = content_lines(text, &last_line);
  if (lines.empty()) throw ParseError(last_line ? last_line : 1, "malformed header: empty input");
  const auto& head = lines[0];
  if (head.tokens.size() != 2)
    throw ParseError(head.number, "malformed header: expected 'num_vertices num_edges'");
  const long nv = parse_int_token(head.tokens[0], head.number, "header");
  const long ne = parse_int_token(head.tokens[1], head.number, "header");
  if (nv < 1 || ne < 0) throw ParseError(head.number, "malformed header: bad sizes");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(ne);
  for (long e = 0; e < ne; ++e) {
    if ((std::size_t)(e + 1) >= lines.size())
      throw ParseError(last_line, "expected " + std::to_string(ne) + " edges, found " +
                                      std::to_string(e));
    const auto& ln = lines[e + 1];
    if (ln.tokens.size() != 2)
      throw ParseError(ln.number, "edge " + std::to_string(e + 1) + " has " +
                                      std::to_string(ln.tokens.size()) +
                                      " of 2 expected entries");
    const long a = parse_int_token(ln.tokens[0], ln.number, "edge");
    const long b = parse_int_token(ln.tokens[1], ln.number, "edge");
    if (a < 1 || b < 1 || a > nv || b > nv)
      throw ParseError(ln.number, "edge endpoint out of range 1.." + std::to_string(nv));
    edges.emplace_back((int)(a - 1), (int)(b - 1));
  }
  if (lines.size() > (std::size_t)(ne + 1))
    throw ParseError(lines[ne + 1].number, "unexpected trailing content");
  try {
    return make_graph((int)nv, std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(head.number, ex.what());
  }
}

std::string serialize_graph(const Graph& g) {
  std::string out = std::to_string(g.num_vertices) + " " + std::to_string(g.edges.size()) + "\n";
  for (const auto& [a, b] : g.edges)
    out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
  return out;
}

BipartiteGraph parse_bipartite(std::string_view text) {
  int last_line = 0;
  const auto lines = content_lines(text, &last_line);
  if (lines.empty()) throw ParseError(last_line ? last_line : 1, "malformed header: empty input");
  const auto& head = lines[0];
  if (head.tokens.size() != 3)
    throw ParseError(head.number, "malformed header: expected 'left right num_edges'");
  const long m = parse_int_token(head.tokens[0], head.number, "header");
  const long n = parse_int_token(head.tokens[1], head.number, "header");
  const long ne = parse_int_token(head.tokens[2], head.number, "header");
  if (m < 1 || n < 1 || ne < 0) throw ParseError(head.number, "malformed header: bad sizes");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(ne);
  for (long e = 0; e < ne; ++e) {
    if ((std::size_t)(e + 1) >= lines.size())
      throw ParseError(last_line, "expected " + std::to_string(ne) + " edges, found " +
                                      std::to_string(e));
    const auto& ln = lines[e + 1];
    if (ln.tokens.size() != 2)
      throw ParseError(ln.number, "edge " + std::to_string(e + 1) + " has " +
                                      std::to_string(ln.tokens.size()) +
                                      " of 2 expected entries");
    const long s = parse_int_token(ln.tokens[0], ln.number, "edge");
    const long t = parse_int_token(ln.tokens[1], ln.number, "edge");
    if (s < 1 || t < 1 || s > m || t > n)
      throw ParseError(ln.number, "edge endpoint out of range");
    edges.emplace_back((int)(s - 1), (int)(t - 1));
  }
  if (lines.size() > (std::size_t)(ne + 1))
    throw ParseError(lines[ne + 1].number, "unexpected trailing content");
  try {
    return make_bipartite((int)m, (int)n, std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(head.number, ex.what());
  }
}

std::string serialize_bipartite(const BipartiteGraph& g) {
  std::string out = std::to_string(g.left_size) + " " + std::to_string(g.right_size) + " " +
                    std::to_string(g.edges.size()) + "\n";
  for (const auto& [s, t] : g.edges)
    out += std::to_string(s + 1) + " " + std::to_string(t + 1) + "\n";
  return out;
}

RankOneFactors parse_factors(std::string_view text) {
  int last_line = 0;
  const auto lines = content_lines(text, &last_line);
  if (lines.empty()) throw ParseError(last_line ? last_line : 1, "malformed header: empty input");
  const auto& head = lines[0];
  if (head.tokens.size() != 2)
    throw ParseError(head.number, "malformed header: expected 'm n'");
  const long m = parse_int_token(head.tokens[0], head.number, "header");
  const long n = parse_int_token(head.tokens[1], head.number, "header");
  if (m < 1 || n < 1) throw ParseError(head.number, "malformed header: dimensions must be positive");
  if (lines.size() < 3) throw ParseError(last_line, "expected a u line and a v line");
  const auto& ul = lines[1];
  const auto& vl = lines[2];
  if ((long)ul.tokens.size() != m)
    throw ParseError(ul.number, "factor u has " + std::to_string(ul.tokens.size()) + " of " +
                                    std::to_string(m) + " expected entries");
  if ((long)vl.tokens.size() != n)
    throw ParseError(vl.number, "factor v has " + std::to_string(vl.tokens.size()) + " of " +
                                    std::to_string(n) + " expected entries");
  if (lines.size() > 3) throw ParseError(lines[3].number, "unexpected trailing content");
  RankOneFactors f{Vector(m), Vector(n)};
  for (long i = 0; i < m; ++i) f.u(i) = parse_double_token(ul.tokens[i], ul.number);
  for (long j = 0; j < n; ++j) f.v(j) = parse_double_token(vl.tokens[j], vl.number);
  return f;
}

std::string serialize_factors(const RankOneFactors& f) {
  std::string out = std::to_string(f.u.size()) + " " + std::to_string(f.v.size()) + "\n";
  for (Index i = 0; i < f.u.size(); ++i) {
    if (i) out += ' ';
    out += format_number(f.u(i));
  }
  out += '\n';
  for (Index j = 0; j < f.v.size(); ++j) {
    if (j) out += ' ';
    out += format_number(f.v(j));
  }
  out += '\n';
  return out;
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(text.data(), (std::streamsize)text.size());
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Matrix load_matrix(const std::string& path) { return parse_matrix(load_text(path)); }

}  // namespace r1lra
