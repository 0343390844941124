#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dim/graph.hpp"

namespace dim {

/// Malformed edge-list input; `line` and `column` are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(format(line, column, what)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& what) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << what;
    return os.str();
  }

  std::size_t line_;
  std::size_t column_;
};

namespace detail {

// Parses "a b" (two non-negative integers, one space) at `line`.
inline std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& text, std::size_t line) {
  std::uint64_t vals[2] = {0, 0};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 2; ++i) {
    if (i == 1) {
      if (p == end) throw ParseError(line, text.size() + 1, "expected a second integer");
      if (*p != ' ') throw ParseError(line, static_cast<std::size_t>(p - text.data()) + 1, "expected a single space");
      ++p;
    }
    auto [next, ec] = std::from_chars(p, end, vals[i]);
    if (ec != std::errc() || next == p)
      throw ParseError(line, static_cast<std::size_t>(p - text.data()) + 1, "expected a non-negative integer");
    p = next;
  }
  if (p != end) throw ParseError(line, static_cast<std::size_t>(p - text.data()) + 1, "unexpected trailing characters");
  return {vals[0], vals[1]};
}

}  // namespace detail

/// Reads one or more graphs in edge-list format: a header line `n m`, then m
/// lines `u v` with 0-based ids separated by one space. Lines starting with
/// `#` and blank lines are ignored anywhere; another header may follow the
/// last edge of a graph.
inline std::vector<Graph> parse_graphs(std::istream& in) {
  std::vector<Graph> graphs;
  std::string text;
  std::size_t line = 0;
  bool in_graph = false;
  std::uint64_t n = 0, m = 0;
  std::size_t header_line = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::size_t> edge_lines;

  auto close = [&]() {
    try {
      graphs.push_back(Graph::build(n, edges));
    } catch (const GraphInputError& e) {
      // Locate the offending edge for the diagnostic.
      std::string msg = e.what();
      auto hash = msg.find('#');
      std::size_t at = header_line;
      if (hash != std::string::npos) {
        std::size_t idx = std::stoul(msg.substr(hash + 1));
        if (idx < edge_lines.size()) at = edge_lines[idx];
      } else {
        std::map<EdgeRef, std::size_t> seen;
        for (std::size_t i = 0; i < edges.size(); ++i)
          if (!seen.emplace(EdgeRef(edges[i].first, edges[i].second), i).second) {
            at = edge_lines[i];
            break;
          }
      }
      throw ParseError(at, 1, msg);
    }
    edges.clear();
    edge_lines.clear();
    in_graph = false;
  };

  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty() || text[0] == '#') continue;
    auto [a, b] = detail::parse_pair(text, line);
    if (!in_graph) {
      if (a > 0xFFFFFFF0ULL) throw ParseError(line, 1, "vertex count too large");
      n = a;
      m = b;
      header_line = line;
      in_graph = true;
      edges.reserve(m);
      if (m == 0) close();
      continue;
    }
    edges.emplace_back(static_cast<Vertex>(std::min<std::uint64_t>(a, 0xFFFFFFFFULL)),
                       static_cast<Vertex>(std::min<std::uint64_t>(b, 0xFFFFFFFFULL)));
    edge_lines.push_back(line);
    if (edges.size() == m) close();
  }
  if (in_graph) {
    std::ostringstream msg;
    msg << "expected " << m << " edges after the header on line " << header_line << ", found " << edges.size();
    throw ParseError(line + 1, 1, msg.str());
  }
  if (graphs.empty()) throw ParseError(line + 1, 1, "no graph in input");
  return graphs;
}

inline Graph parse_graph(std::istream& in) {
  auto gs = parse_graphs(in);
  if (gs.size() != 1) throw ParseError(1, 1, "expected exactly one graph");
  return std::move(gs.front());
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

/// Writes `g` in edge-list format with edges in sorted order.
inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

}  // namespace dim
