#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dim/graph.hpp"

namespace dim {

/// Node budget used when none is given: $DIM_ORACLE_BUDGET, else 10^8.
inline std::uint64_t default_oracle_budget() {
  if (const char* env = std::getenv("DIM_ORACLE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 100'000'000ULL;
}

struct OracleReport {
  bool exists = false;
  std::optional<DimCertificate> witness;
  std::optional<std::uint64_t> count;  // set when every d.i.m. was enumerated
  bool budget_exceeded = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Branches on the first edge with no covered endpoint: exactly one edge
// incident to it belongs to the matching, so each choice is a disjoint case.
class OracleSearch {
 public:
  OracleSearch(const Graph& g, std::uint64_t budget, bool collect_all)
      : g_(g), budget_(budget), all_(collect_all), covered_(g.n(), 0) {}

  void run() { recurse(0); }

  bool exceeded() const { return exceeded_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t found() const { return found_; }
  const std::vector<DimCertificate>& solutions() const { return solutions_; }
  bool keep_solutions = true;

 private:
  bool free_vertex(Vertex v) const {
    if (covered_[v]) return false;
    for (Vertex w : g_.neighbors(v))
      if (covered_[w]) return false;
    return true;
  }

  bool recurse(EdgeId from) {
    if (++nodes_ > budget_) {
      exceeded_ = true;
      return true;
    }
    EdgeId e = from;
    while (e < g_.m() && (covered_[g_.edge(e).u] || covered_[g_.edge(e).v])) ++e;
    if (e == g_.m()) {
      ++found_;
      if (keep_solutions) solutions_.emplace_back(chosen_);
      return !all_;
    }
    const EdgeRef target = g_.edge(e);
    std::vector<EdgeId> options;
    for (Vertex end : {target.u, target.v})
      for (EdgeId f : g_.incident_edges(end)) options.push_back(f);
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    for (EdgeId f : options) {
      const EdgeRef pick = g_.edge(f);
      if (!free_vertex(pick.u) || !free_vertex(pick.v)) continue;
      covered_[pick.u] = covered_[pick.v] = 1;
      chosen_.push_back(pick);
      bool stop = recurse(e + 1);
      chosen_.pop_back();
      covered_[pick.u] = covered_[pick.v] = 0;
      if (stop) return true;
    }
    return false;
  }

  const Graph& g_;
  std::uint64_t budget_;
  bool all_;
  std::vector<char> covered_;
  std::vector<EdgeRef> chosen_;
  std::vector<DimCertificate> solutions_;
  std::uint64_t nodes_ = 0;
  std::uint64_t found_ = 0;
  bool exceeded_ = false;
};

}  // namespace detail

/// Exhaustive d.i.m. search. With `count_all` every d.i.m. is counted;
/// otherwise the search stops at the first one.
inline OracleReport brute_force_dim(const Graph& g, bool count_all = false,
                                    std::uint64_t budget = default_oracle_budget()) {
  detail::OracleSearch first(g, budget, false);
  first.run();
  OracleReport r;
  r.nodes = first.nodes();
  if (first.exceeded()) {
    r.budget_exceeded = true;
    return r;
  }
  r.exists = first.found() > 0;
  if (r.exists) r.witness = first.solutions().front();
  if (count_all) {
    detail::OracleSearch s(g, budget, true);
    s.keep_solutions = false;
    s.run();
    r.nodes += s.nodes();
    if (s.exceeded()) r.budget_exceeded = true;
    else r.count = s.found();
  }
  return r;
}

/// All d.i.m.s of `g`, each sorted, in lexicographic order. Throws
/// std::runtime_error when the budget runs out.
inline std::vector<DimCertificate> enumerate_dims(const Graph& g, std::uint64_t budget = default_oracle_budget()) {
  detail::OracleSearch s(g, budget, true);
  s.run();
  if (s.exceeded()) throw std::runtime_error("enumerate_dims: node budget exceeded");
  auto out = s.solutions();
  std::sort(out.begin(), out.end());
  return out;
}

/// Reference enumeration: tests every subset of the edge set against the
/// definition. Only for graphs with at most 22 edges.
inline std::vector<DimCertificate> subset_filter_dims(const Graph& g) {
  if (g.m() > 22) throw std::invalid_argument("subset_filter_dims: too many edges");
  std::vector<DimCertificate> out;
  const auto& edges = g.edges();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.m()); ++mask) {
    std::vector<EdgeRef> pick;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1) pick.push_back(edges[i]);
    DimCertificate c(std::move(pick));
    if (verify_dim(g, c)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dim
