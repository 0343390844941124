#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dim/graph.hpp"
#include "dim/io.hpp"
#include "dim/oracle.hpp"
#include "dim/patterns.hpp"
#include "dim/solver.hpp"

namespace dim::cli {

enum class Mode { Solve, Oracle, Compare, CheckS115, Generate };
enum class Format { Text, Json };

/// Exit codes shared by every mode; a run over several graphs returns the largest.
enum ExitCode : int { kOk = 0, kNone = 1, kInputError = 2, kViolation = 3 };

struct RunConfig {
  Mode mode = Mode::Solve;
  /// Input file; "-" or empty reads the input stream. Ignored when `inline_graph` is set.
  std::string input_path;
  /// Graph text given on the command line; ';' may stand for a newline.
  std::optional<std::string> inline_graph;
  bool strict = false;
  bool fallback = false;
  Format format = Format::Text;
  std::optional<std::pair<Vertex, Vertex>> xy;
  unsigned jobs = 1;
  std::optional<std::uint64_t> budget;
  // generate
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
  std::size_t count = 1;
};

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "solve") return Mode::Solve;
  if (s == "oracle") return Mode::Oracle;
  if (s == "compare") return Mode::Compare;
  if (s == "check-s115") return Mode::CheckS115;
  if (s == "generate") return Mode::Generate;
  return std::nullopt;
}

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Solve: return "solve";
    case Mode::Oracle: return "oracle";
    case Mode::Compare: return "compare";
    case Mode::CheckS115: return "check-s115";
    case Mode::Generate: return "generate";
  }
  return "?";
}

namespace detail {

using nlohmann::json;

inline json edges_json(const std::optional<DimCertificate>& c) {
  json arr = json::array();
  if (c)
    for (const auto& e : c->edges()) arr.push_back({e.u, e.v});
  return arr;
}

inline json stats_json(const SolveStats& s) {
  json branches = json::array();
  for (const auto& b : s.branches)
    branches.push_back({{"kind", b.kind}, {"bound", b.bound}, {"explored", b.explored}, {"blocks", b.blocks}});
  return {{"components", s.components},
          {"single_edge_hits", s.single_edge_hits},
          {"xy_tried", s.xy_tried},
          {"n4_empty_cases", s.n4_empty_cases},
          {"n2_small_cases", s.n2_small_cases},
          {"n2_large_cases", s.n2_large_cases},
          {"fallbacks", s.fallbacks},
          {"dp_runs", s.dp_runs},
          {"subsolver_nodes", s.subsolver_nodes},
          {"branches", std::move(branches)}};
}

inline std::string witness_text(const PatternWitness& w) {
  std::ostringstream os;
  os << w.kind.name();
  for (Vertex v : w.vertices) os << ' ' << v;
  return os.str();
}

inline void print_dim(std::ostream& out, const DimCertificate& c) {
  out << "DIM " << c.size() << '\n';
  for (const auto& e : c.edges()) out << e.u << ' ' << e.v << '\n';
}

// Result of one graph in one mode, rendered as text or JSON.
struct Report {
  int code = kOk;
  std::string result;
  std::optional<DimCertificate> edges;
  std::optional<std::string> reason;
  std::optional<PatternWitness> witness;
  std::optional<SolveStats> stats;
  nlohmann::json extra = nlohmann::json::object();
  std::string text;
};

inline SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions o;
  o.strict = cfg.strict;
  o.jobs = std::max(1U, cfg.jobs);
  return o;
}

inline SolveOutcome run_solver(const RunConfig& cfg, const Graph& g) {
  SolveOptions o = solve_options(cfg);
  if (cfg.xy) return solve_with_xy(g, EdgeRef(cfg.xy->first, cfg.xy->second), o);
  return solve(g, o);
}

inline std::uint64_t budget_of(const RunConfig& cfg) { return cfg.budget ? *cfg.budget : default_oracle_budget(); }

// Oracle restricted to d.i.m.s containing `xy` when one is requested.
inline OracleReport run_oracle(const RunConfig& cfg, const Graph& g) {
  if (!cfg.xy) return brute_force_dim(g, false, budget_of(cfg));
  OracleReport r;
  EdgeRef xy(cfg.xy->first, cfg.xy->second);
  try {
    for (auto& c : enumerate_dims(g, budget_of(cfg)))
      if (c.contains(xy)) {
        r.exists = true;
        r.witness = std::move(c);
        break;
      }
  } catch (const std::runtime_error&) {
    r.budget_exceeded = true;
  }
  return r;
}

inline Report solve_report(const RunConfig& cfg, const Graph& g) {
  Report r;
  SolveOutcome o = run_solver(cfg, g);
  r.stats = o.stats;
  std::ostringstream text;
  if (o.found()) {
    r.result = "found";
    r.edges = o.certificate;
    print_dim(text, *o.certificate);
  } else if (o.kind == SolveOutcome::Kind::HypothesisViolated) {
    r.code = kViolation;
    r.result = "unknown";
    r.reason = o.reason;
    r.witness = o.witness;
    text << "UNKNOWN (hypothesis violated)\n";
    if (!o.reason.empty()) text << "reason: " << o.reason << '\n';
    if (o.witness) text << "witness: " << witness_text(*o.witness) << '\n';
  } else {
    auto w = find_induced(g, PatternKind::s115());
    if (!w) {
      r.code = kNone;
      r.result = "none";
      r.reason = o.reason;
      text << "NONE\n";
      if (!o.reason.empty()) text << "reason: " << o.reason << '\n';
    } else if (cfg.strict) {
      r.code = kViolation;
      r.result = "unknown";
      r.reason = o.reason;
      r.witness = w;
      text << "UNKNOWN (hypothesis violated)\n";
      text << "witness: " << witness_text(*w) << '\n';
    } else if (cfg.fallback) {
      OracleReport orc = run_oracle(cfg, g);
      r.witness = w;
      r.extra["fallback"] = "oracle";
      if (orc.budget_exceeded) {
        r.code = kViolation;
        r.result = "unknown";
        r.reason = "oracle budget exceeded";
        text << "UNKNOWN (oracle budget exceeded)\n";
      } else if (orc.exists) {
        r.result = "found";
        r.edges = orc.witness;
        print_dim(text, *orc.witness);
      } else {
        r.code = kNone;
        r.result = "none";
        r.reason = "oracle";
        text << "NONE\nreason: oracle\n";
      }
    } else {
      r.code = kNone;
      r.result = "unknown";
      r.reason = o.reason;
      r.witness = w;
      text << "UNKNOWN (hypothesis violated)\n";
      text << "witness: " << witness_text(*w) << '\n';
    }
  }
  r.text = text.str();
  return r;
}

inline Report oracle_report(const RunConfig& cfg, const Graph& g) {
  Report r;
  std::ostringstream text;
  OracleReport o = cfg.xy ? run_oracle(cfg, g) : brute_force_dim(g, true, budget_of(cfg));
  r.extra["nodes"] = o.nodes;
  if (o.count) r.extra["count"] = *o.count;
  if (o.budget_exceeded && !o.exists) {
    r.code = kViolation;
    r.result = "unknown";
    r.reason = "oracle budget exceeded";
    text << "UNKNOWN (oracle budget exceeded)\n";
  } else if (o.exists) {
    r.result = "found";
    r.edges = o.witness;
    print_dim(text, *o.witness);
    if (o.count) text << "count: " << *o.count << '\n';
  } else {
    r.code = kNone;
    r.result = "none";
    text << "NONE\n";
  }
  r.text = text.str();
  return r;
}

inline Report compare_report(const RunConfig& cfg, const Graph& g) {
  Report r;
  std::ostringstream text;
  SolveOutcome s = run_solver(cfg, g);
  OracleReport o = run_oracle(cfg, g);
  r.stats = s.stats;
  r.edges = s.certificate;
  r.extra["solver"] = to_string(s.kind);
  r.extra["oracle"] = o.budget_exceeded ? "unknown" : (o.exists ? "found" : "none");
  r.extra["oracle_edges"] = edges_json(o.witness);
  if (o.budget_exceeded) {
    r.code = kViolation;
    r.result = "inconclusive";
    r.reason = "oracle budget exceeded";
    text << "INCONCLUSIVE (oracle budget exceeded)\n";
  } else if (s.kind == SolveOutcome::Kind::HypothesisViolated) {
    r.code = kViolation;
    r.result = "disagree";
    r.reason = s.reason;
    r.witness = s.witness;
    text << "DISAGREE solver=" << to_string(s.kind) << " oracle=" << (o.exists ? "found" : "none") << '\n';
  } else if (s.found() == o.exists) {
    r.result = "agree";
    text << "AGREE " << (o.exists ? "found" : "none") << '\n';
  } else {
    r.code = kViolation;
    r.result = "disagree";
    text << "DISAGREE solver=" << to_string(s.kind) << " oracle=" << (o.exists ? "found" : "none") << '\n';
  }
  if (s.certificate) {
    text << "solver:";
    for (const auto& e : s.certificate->edges()) text << ' ' << e.u << '-' << e.v;
    text << '\n';
  }
  if (o.witness) {
    text << "oracle:";
    for (const auto& e : o.witness->edges()) text << ' ' << e.u << '-' << e.v;
    text << '\n';
  }
  r.text = text.str();
  return r;
}

inline Report s115_report(const Graph& g) {
  Report r;
  auto w = find_induced(g, PatternKind::s115());
  if (w) {
    r.code = kViolation;
    r.result = "witness";
    r.witness = w;
    r.text = witness_text(*w) + '\n';
  } else {
    r.result = "s115_free";
    r.text = "S115-FREE\n";
  }
  return r;
}

inline void emit(const RunConfig& cfg, const Graph& g, const Report& r, std::ostream& out) {
  if (cfg.format == Format::Text) {
    out << r.text;
    return;
  }
  json j = {{"mode", to_string(cfg.mode)}, {"n", g.n()}, {"m", g.m()}, {"result", r.result},
            {"edges", edges_json(r.edges)}};
  j["stats"] = r.stats ? stats_json(*r.stats) : json::object();
  if (r.reason && !r.reason->empty()) j["reason"] = *r.reason;
  if (r.witness) {
    j["witness"] = {{"pattern", r.witness->kind.name()}, {"vertices", r.witness->vertices}};
  }
  for (auto& [k, v] : r.extra.items()) j[k] = v;
  out << j.dump() << '\n';
}

inline int generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.n || !cfg.p || !cfg.seed) {
    err << "error: generate requires --n, --p and --seed\n";
    return kInputError;
  }
  if (*cfg.p < 0 || *cfg.p > 1) {
    err << "error: --p must lie in [0, 1]\n";
    return kInputError;
  }
  for (std::size_t i = 0; i < cfg.count; ++i) write_graph(out, random_s115_free(*cfg.n, *cfg.p, *cfg.seed + i));
  return kOk;
}

inline std::string normalize_inline(std::string s) {
  std::replace(s.begin(), s.end(), ';', '\n');
  return s;
}

}  // namespace detail

/// Executes one CLI invocation. `in` is read when no path or inline graph is
/// given. Text output follows the line formats of each mode; JSON output is one
/// object per input graph with fields mode, n, m, result, edges and stats.
inline int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  if (cfg.mode == Mode::Generate) return detail::generate(cfg, out, err);

  std::vector<Graph> graphs;
  try {
    if (cfg.inline_graph) {
      std::istringstream s(detail::normalize_inline(*cfg.inline_graph));
      graphs = parse_graphs(s);
    } else if (cfg.input_path.empty() || cfg.input_path == "-") {
      graphs = parse_graphs(in);
    } else {
      std::ifstream f(cfg.input_path);
      if (!f) {
        err << "error: cannot open " << cfg.input_path << '\n';
        return kInputError;
      }
      graphs = parse_graphs(f);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  int code = kOk;
  for (const Graph& g : graphs) {
    if (cfg.xy) {
      auto [a, b] = *cfg.xy;
      if (a >= g.n() || b >= g.n() || !g.has_edge(a, b)) {
        err << "error: --xy " << a << ' ' << b << " is not an edge of the input graph\n";
        code = std::max<int>(code, kInputError);
        continue;
      }
    }
    detail::Report r;
    switch (cfg.mode) {
      case Mode::Solve: r = detail::solve_report(cfg, g); break;
      case Mode::Oracle: r = detail::oracle_report(cfg, g); break;
      case Mode::Compare: r = detail::compare_report(cfg, g); break;
      case Mode::CheckS115: r = detail::s115_report(g); break;
      case Mode::Generate: break;
    }
    detail::emit(cfg, g, r, out);
    code = std::max(code, r.code);
  }
  return code;
}

}  // namespace dim::cli
