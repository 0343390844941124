#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "dim/coloring.hpp"
#include "dim/graph.hpp"
#include "dim/levels.hpp"
#include "dim/patterns.hpp"
#include "dim/subsolver.hpp"
#include "dim/treewidth_dp.hpp"

namespace dim {

struct SolveOptions {
  /// Report HypothesisViolated (with an S_{1,1,5} witness) when a structural
  /// property of S_{1,1,5}-free graphs fails, instead of falling back to the
  /// exact subsolver.
  bool strict = false;
  /// Exclude edges on induced C4s during preprocessing.
  bool c4_exclusions = false;
  bool drop_surplus_in_vertices = true;
  /// Candidate edges evaluated concurrently.
  unsigned jobs = 1;
};

/// One bounded branching step of a case solver.
struct BranchRecord {
  std::string kind;  // n2_small_tuples, n4_empty_trivial, n4_empty_p3, n4_empty_cycle, n2_large_triangle
  std::uint64_t bound = 0;
  std::uint64_t explored = 0;
  std::size_t blocks = 0;  // number of T_i factors in the bound
};

struct SolveStats {
  std::uint64_t components = 0;
  std::uint64_t single_edge_hits = 0;
  std::uint64_t xy_tried = 0;
  std::uint64_t n4_empty_cases = 0;
  std::uint64_t n2_small_cases = 0;
  std::uint64_t n2_large_cases = 0;
  std::uint64_t fallbacks = 0;
  std::uint64_t dp_runs = 0;
  std::uint64_t subsolver_nodes = 0;
  double n4_empty_seconds = 0;
  double n2_small_seconds = 0;
  double n2_large_seconds = 0;
  std::vector<BranchRecord> branches;

  void merge(const SolveStats& o) {
    components += o.components;
    single_edge_hits += o.single_edge_hits;
    xy_tried += o.xy_tried;
    n4_empty_cases += o.n4_empty_cases;
    n2_small_cases += o.n2_small_cases;
    n2_large_cases += o.n2_large_cases;
    fallbacks += o.fallbacks;
    dp_runs += o.dp_runs;
    subsolver_nodes += o.subsolver_nodes;
    n4_empty_seconds += o.n4_empty_seconds;
    n2_small_seconds += o.n2_small_seconds;
    n2_large_seconds += o.n2_large_seconds;
    branches.insert(branches.end(), o.branches.begin(), o.branches.end());
  }
};

struct SolveOutcome {
  enum class Kind { Found, None, HypothesisViolated };

  Kind kind = Kind::None;
  std::optional<DimCertificate> certificate;
  std::optional<PatternWitness> witness;
  std::string reason;
  SolveStats stats;

  bool found() const { return kind == Kind::Found; }
};

inline std::string_view to_string(SolveOutcome::Kind k) {
  switch (k) {
    case SolveOutcome::Kind::Found: return "found";
    case SolveOutcome::Kind::None: return "none";
    case SolveOutcome::Kind::HypothesisViolated: return "hypothesis_violated";
  }
  return "?";
}

enum class Verdict { Found, None, Violated };

/// Shared context for solving one connected graph.
struct SolveContext {
  const Graph& g;
  const SolveOptions& opts;
  SolveStats stats;
  std::vector<Vertex> scope;  // vertices of the residual component being solved
  std::string reason;
  std::optional<PatternWitness> witness;
  std::optional<std::optional<PatternWitness>> s115_cache;

  SolveContext(const Graph& graph, const SolveOptions& o) : g(graph), opts(o) {}

  const std::optional<PatternWitness>& s115() {
    if (!s115_cache) s115_cache = find_induced(g, PatternKind::s115());
    return *s115_cache;
  }

  bool finish(ColoringState& st) {
    bool ok = constrained_subsolver(st, scope, &stats.subsolver_nodes);
    if (!ok && reason.empty()) reason = "no completion";
    return ok;
  }

  /// A property that holds on S_{1,1,5}-free graphs failed. In strict mode
  /// with a witness at hand this is reported; otherwise the exact subsolver
  /// takes over.
  Verdict violated(ColoringState& st, std::string what) {
    if (opts.strict && s115()) {
      reason = std::move(what);
      witness = *s115();
      return Verdict::Violated;
    }
    ++stats.fallbacks;
    return finish(st) ? Verdict::Found : Verdict::None;
  }
};

namespace detail {

inline bool active_at_least(const ColoringState& st, const LevelDecomposition& d, int lvl) {
  for (std::size_t i = lvl; i < d.levels.size(); ++i)
    for (Vertex v : d.levels[i])
      if (!st.removed(v)) return true;
  return false;
}

inline Verdict try_branches(SolveContext& ctx, ColoringState& st, BranchRecord rec,
                            const std::vector<std::vector<std::pair<Vertex, Color>>>& alternatives,
                            std::span<const Vertex> scope) {
  Verdict out = Verdict::None;
  for (const auto& alt : alternatives) {
    ++rec.explored;
    ColoringState next = st;
    bool ok = true;
    for (auto [v, c] : alt) ok = ok && next.assign(v, c);
    if (ok && next.propagate() && constrained_subsolver(next, scope, &ctx.stats.subsolver_nodes)) {
      st = std::move(next);
      out = Verdict::Found;
      break;
    }
  }
  ctx.stats.branches.push_back(std::move(rec));
  return out;
}

}  // namespace detail

/// Case N4 = ∅: colours every component of G[S2 ∪ N3] on its own. A single
/// block tries each of its vertices as the mate of u_i; an induced P3 across
/// three blocks fixes the black vertex of those blocks; a cycle through
/// blocks branches on its first vertex; anything else is chordal with
/// cliques of size at most 3 and goes to the tree-decomposition DP.
inline Verdict solve_n4_empty(SolveContext& ctx, ColoringState& st, const LevelDecomposition& d) {
  const Graph& g = ctx.g;
  for (const auto& comp : unsettled_components(st, ctx.scope)) {
    if (unsettled(st, comp.front()) == false) continue;
    std::vector<int> blocks;
    bool unblocked = false;
    for (Vertex v : comp) {
      if (d.block_of[v] < 0) unblocked = true;
      else blocks.push_back(d.block_of[v]);
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    if (unblocked || blocks.empty()) {
      if (!constrained_subsolver(st, comp, &ctx.stats.subsolver_nodes)) return Verdict::None;
      continue;
    }
    auto in_comp_n3 = [&](Vertex v) {
      return d.level_of[v] == 3 && !st.removed(v) && std::binary_search(comp.begin(), comp.end(), v);
    };
    if (blocks.size() == 1) {
      const auto& ti = d.t[blocks[0]];
      std::vector<Vertex> cands = ti;
      for (Vertex a : ti)
        for (Vertex b : g.neighbors(a))
          if (a < b && in_comp_n3(b) && d.block_of[b] == blocks[0]) cands = {a, b};
      std::vector<std::vector<std::pair<Vertex, Color>>> alts;
      for (Vertex c : cands) alts.push_back({{c, Color::Black}});
      BranchRecord rec{"n4_empty_trivial", ti.size(), 0, 1};
      if (detail::try_branches(ctx, st, rec, alts, comp) != Verdict::Found) return Verdict::None;
      continue;
    }
    std::optional<std::array<Vertex, 3>> p3;
    for (Vertex b : comp) {
      if (!in_comp_n3(b) || p3) continue;
      auto nb = g.neighbors(b);
      for (std::size_t i = 0; i < nb.size() && !p3; ++i)
        for (std::size_t j = i + 1; j < nb.size() && !p3; ++j) {
          Vertex a = nb[i], c = nb[j];
          if (!in_comp_n3(a) || !in_comp_n3(c) || g.has_edge(a, c)) continue;
          int ba = d.block_of[a], bb = d.block_of[b], bc = d.block_of[c];
          if (ba != bb && bb != bc && ba != bc) p3 = std::array<Vertex, 3>{a, b, c};
        }
    }
    if (p3) {
      std::array<int, 3> pb{d.block_of[(*p3)[0]], d.block_of[(*p3)[1]], d.block_of[(*p3)[2]]};
      std::vector<std::vector<std::pair<Vertex, Color>>> alts;
      for (Vertex a : d.t[pb[0]])
        for (Vertex b : d.t[pb[1]])
          for (Vertex c : d.t[pb[2]]) alts.push_back({{a, Color::Black}, {b, Color::Black}, {c, Color::Black}});
      BranchRecord rec{"n4_empty_p3", alts.size(), 0, 3};
      if (detail::try_branches(ctx, st, rec, alts, comp) != Verdict::Found) return Verdict::None;
      continue;
    }
    // A cycle in the multigraph whose nodes are blocks and whose edges are
    // N3 edges between different blocks.
    std::vector<int> uf(d.s2.size());
    for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
    auto root = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::optional<Vertex> entry;
    for (Vertex a : comp) {
      if (!in_comp_n3(a) || entry) continue;
      for (Vertex b : g.neighbors(a)) {
        if (b < a || !in_comp_n3(b) || d.block_of[a] == d.block_of[b]) continue;
        int ra = root(d.block_of[a]), rb = root(d.block_of[b]);
        if (ra == rb) {
          entry = a;
          break;
        }
        uf[ra] = rb;
      }
    }
    if (entry) {
      std::vector<std::vector<std::pair<Vertex, Color>>> alts{{{*entry, Color::Black}}, {{*entry, Color::White}}};
      BranchRecord rec{"n4_empty_cycle", 2, 0, 0};
      if (detail::try_branches(ctx, st, rec, alts, comp) != Verdict::Found) return Verdict::None;
      continue;
    }
    ++ctx.stats.dp_runs;
    ColoringState next = st;
    bool solved = false;
    try {
      solved = treewidth2_complete(next, comp);
    } catch (const std::invalid_argument&) {
      ++ctx.stats.fallbacks;
      next = st;
      solved = constrained_subsolver(next, comp, &ctx.stats.subsolver_nodes);
    }
    if (!solved) return Verdict::None;
    st = std::move(next);
  }
  return ctx.finish(st) ? Verdict::Found : Verdict::None;
}

/// Case |N2| <= 4: one branch per choice of the black vertex in every block,
/// each completed by propagation into the far levels and the subsolver.
inline Verdict solve_n2_small(SolveContext& ctx, ColoringState& st, const LevelDecomposition& d) {
  const std::size_t k = d.s2.size();
  if (k == 0) return ctx.finish(st) ? Verdict::Found : Verdict::None;
  std::uint64_t bound = 1;
  for (const auto& ti : d.t) bound *= ti.size();
  BranchRecord rec{"n2_small_tuples", bound, 0, k};
  std::vector<std::size_t> idx(k, 0);
  Verdict out = Verdict::None;
  while (true) {
    ++rec.explored;
    ColoringState next = st;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = next.assign(d.t[i][idx[i]], Color::Black);
    if (ok && next.propagate() && constrained_subsolver(next, ctx.scope, &ctx.stats.subsolver_nodes)) {
      st = std::move(next);
      out = Verdict::Found;
      break;
    }
    std::size_t i = 0;
    while (i < k && ++idx[i] == d.t[i].size()) idx[i++] = 0;
    if (i == k) break;
  }
  ctx.stats.branches.push_back(rec);
  return out;
}

namespace detail {

// Induced path (u_i, t_i, z1, z2, z3) with t_i in T_i, z1 in N4, z2 in N4 ∪ N5
// and z3 in N4 ∪ N5 ∪ N6, over active vertices.
inline bool has_far_p5(const ColoringState& st, const LevelDecomposition& d) {
  const Graph& g = st.graph();
  auto lvl = [&](Vertex v) { return st.removed(v) ? -1 : d.level_of[v]; };
  const std::array<std::pair<int, int>, 5> range{{{2, 2}, {3, 3}, {4, 4}, {4, 5}, {4, 6}}};
  std::vector<Vertex> path;
  std::function<bool()> extend = [&]() {
    if (path.size() == 5) return true;
    auto [lo, hi] = range[path.size()];
    for (Vertex w : g.neighbors(path.back())) {
      int l = lvl(w);
      if (l < lo || l > hi) continue;
      if (std::find(path.begin(), path.end(), w) != path.end()) continue;
      bool induced = true;
      for (std::size_t i = 0; i + 1 < path.size() && induced; ++i)
        if (g.has_edge(path[i], w)) induced = false;
      if (!induced) continue;
      if (path.size() == 1 && d.block_of[w] != d.block_of[path[0]]) continue;
      path.push_back(w);
      if (extend()) return true;
      path.pop_back();
    }
    return false;
  };
  for (Vertex u : d.s2) {
    path.assign(1, u);
    if (extend()) return true;
  }
  return false;
}

inline Verdict triangle_branch(SolveContext& ctx, ColoringState& st, const std::vector<std::array<Vertex, 3>>& tris,
                               std::size_t next) {
  while (next < tris.size()) {
    const auto& t = tris[next];
    bool settled = false;
    for (int a = 0; a < 3; ++a)
      if (st.mate(t[a]) != kNoVertex) settled = true;
    if (!settled) break;
    ++next;
  }
  if (next == tris.size()) return ctx.finish(st) ? Verdict::Found : Verdict::None;
  const auto& t = tris[next];
  BranchRecord rec{"n2_large_triangle", 3, 0, 0};
  std::size_t rec_at = ctx.stats.branches.size();
  ctx.stats.branches.push_back(rec);
  for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    ++ctx.stats.branches[rec_at].explored;
    ColoringState trial = st;
    if (!trial.assign(t[a], Color::Black) || !trial.assign(t[b], Color::Black) || !trial.propagate()) continue;
    Verdict v = triangle_branch(ctx, trial, tris, next + 1);
    if (v == Verdict::None) continue;
    if (v == Verdict::Found) st = std::move(trial);
    return v;
  }
  return Verdict::None;
}

}  // namespace detail

/// Case |N2| >= 5: N6 must be empty and no induced P5 may leave a block
/// towards N4. Isolated N4 vertices are white, isolated N4 edges are
/// matched, N5 vertices isolated in N5 with two nonadjacent N4 neighbours
/// are white. What remains of N4 ∪ N5 splits into edges and triangles; every
/// triangle inside N4 is branched on its matching edge, then the rest is
/// completed.
inline Verdict solve_n2_large(SolveContext& ctx, ColoringState& st, LevelDecomposition& d, ReductionLog& log) {
  const Graph& g = ctx.g;
  if (detail::active_at_least(st, d, 6)) return ctx.violated(st, "N6 is not empty");
  if (detail::has_far_p5(st, d)) return ctx.violated(st, "induced P5 from N2 into N4 and beyond");

  auto lvl = [&](Vertex v) { return st.removed(v) ? -1 : d.level_of[v]; };
  auto far = [&](Vertex v) { int l = lvl(v); return l == 4 || l == 5; };
  while (true) {
    if (!st.propagate()) return Verdict::None;
    sweep(st, log);
    refresh(st, d);
    bool changed = false;
    for (Vertex v : d.level_set(4)) {
      if (lvl(v) != 4) continue;
      std::vector<Vertex> nb;
      for (Vertex w : g.neighbors(v))
        if (far(w)) nb.push_back(w);
      if (nb.empty()) {
        if (!vertex_reduction(st, log, v, Rule::IsolatedN4)) return Verdict::None;
        changed = true;
        break;
      }
      if (nb.size() == 1 && lvl(nb[0]) == 4) {
        Vertex w = nb[0];
        std::size_t wdeg = 0;
        for (Vertex x : g.neighbors(w))
          if (far(x)) ++wdeg;
        if (wdeg == 1) {
          if (!edge_reduction(st, log, EdgeRef(v, w), Rule::IsolatedN4Edge)) return Verdict::None;
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;
    for (Vertex z : d.level_set(5)) {
      if (lvl(z) != 5) continue;
      std::vector<Vertex> n4;
      bool isolated = true;
      for (Vertex w : g.neighbors(z)) {
        if (lvl(w) == 5) isolated = false;
        if (lvl(w) == 4) n4.push_back(w);
      }
      if (!isolated) continue;
      bool spread = false;
      for (std::size_t i = 0; i < n4.size() && !spread; ++i)
        for (std::size_t j = i + 1; j < n4.size() && !spread; ++j)
          if (!g.has_edge(n4[i], n4[j])) spread = true;
      if (spread) {
        if (!vertex_reduction(st, log, z, Rule::IsolatedN5)) return Verdict::None;
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }

  // Components of G[N4 ∪ N5] over active vertices.
  std::vector<std::array<Vertex, 3>> triangles;
  std::vector<char> seen(g.n(), 0);
  for (int l : {4, 5}) {
    for (Vertex s : d.level_set(l)) {
      if (lvl(s) != l || seen[s]) continue;
      std::vector<Vertex> comp{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (Vertex w : g.neighbors(comp[i]))
          if (far(w) && !seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
      std::sort(comp.begin(), comp.end());
      std::size_t n5 = 0, edges = 0;
      for (Vertex v : comp) {
        if (lvl(v) == 5) ++n5;
        for (Vertex w : g.neighbors(v))
          if (v < w && far(w)) ++edges;
      }
      bool edge = comp.size() == 2;
      bool triangle = comp.size() == 3 && edges == 3;
      if (comp.size() == 1) continue;
      if (!(edge || triangle))
        return ctx.violated(st, "component of G[N4 ∪ N5] is neither an edge nor a triangle");
      if (triangle && n5 == 0) triangles.push_back({comp[0], comp[1], comp[2]});
    }
  }
  return detail::triangle_branch(ctx, st, triangles, 0);
}

namespace detail {

inline Verdict solve_xy_in_state(SolveContext& ctx, ColoringState& st, EdgeRef xy) {
  ReductionLog log;
  LevelDecomposition d = decompose(st, xy);
  if (!st.ok()) return Verdict::None;
  NormalizeOptions nopts;
  nopts.drop_surplus_in_vertices = ctx.opts.drop_surplus_in_vertices;
  if (!normalize(st, d, log, nopts)) return Verdict::None;
  if (ctx.opts.strict) {
    if (auto bad = n3_structure_violation(st, d)) return ctx.violated(st, *bad);
  }
  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
  Verdict v;
  if (!active_at_least(st, d, 4)) {
    ++ctx.stats.n4_empty_cases;
    v = solve_n4_empty(ctx, st, d);
    ctx.stats.n4_empty_seconds += seconds();
  } else if (d.n2_size <= 4) {
    ++ctx.stats.n2_small_cases;
    v = solve_n2_small(ctx, st, d);
    ctx.stats.n2_small_seconds += seconds();
  } else {
    ++ctx.stats.n2_large_cases;
    v = solve_n2_large(ctx, st, d, log);
    ctx.stats.n2_large_seconds += seconds();
  }
  return v;
}

struct XyAttempt {
  Verdict verdict = Verdict::None;
  ColoringState state;
  SolveStats stats;
  std::string reason;
  std::optional<PatternWitness> witness;
};

inline XyAttempt attempt_xy(const Graph& g, const SolveOptions& opts, const ColoringState& base,
                            const std::vector<Vertex>& scope, EdgeRef xy,
                            const std::optional<std::optional<PatternWitness>>& s115) {
  SolveContext ctx(g, opts);
  ctx.scope = scope;
  ctx.s115_cache = s115;
  XyAttempt out;
  out.state = base;
  out.verdict = solve_xy_in_state(ctx, out.state, xy);
  out.stats = std::move(ctx.stats);
  out.reason = std::move(ctx.reason);
  out.witness = std::move(ctx.witness);
  return out;
}

// Edges that can be the matching edge nearest to a minimum-degree vertex v0
// of the residual: every d.i.m. covers v0 or one of its neighbours.
inline std::vector<EdgeRef> xy_candidates(const ColoringState& st, std::span<const Vertex> comp) {
  const Graph& g = st.graph();
  auto in_comp = [&](Vertex v) { return std::binary_search(comp.begin(), comp.end(), v); };
  auto rdeg = [&](Vertex v) {
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) d += in_comp(w);
    return d;
  };
  Vertex v0 = comp.front();
  for (Vertex v : comp)
    if (rdeg(v) < rdeg(v0)) v0 = v;
  std::vector<EdgeRef> out;
  std::vector<Vertex> closed{v0};
  for (Vertex w : g.neighbors(v0))
    if (in_comp(w)) closed.push_back(w);
  for (Vertex a : closed)
    for (Vertex b : g.neighbors(a))
      if (in_comp(b)) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Solves one residual component of a propagated state. With `fixed_xy` only
// that edge is tried as the matching edge.
inline Verdict solve_residual(SolveContext& ctx, ColoringState& st, std::vector<Vertex> comp,
                              std::optional<EdgeRef> fixed_xy) {
  const Graph& g = ctx.g;
  ctx.scope = comp;
  auto in_comp = [&](Vertex v) { return std::binary_search(comp.begin(), comp.end(), v); };

  if (!fixed_xy) {
    std::size_t m_comp = 0;
    for (Vertex v : comp)
      for (Vertex w : g.neighbors(v))
        if (v < w && in_comp(w)) ++m_comp;
    auto rdeg = [&](Vertex v) {
      std::size_t d = 0;
      for (Vertex w : g.neighbors(v)) d += in_comp(w);
      return d;
    };
    for (Vertex u : comp)
      for (Vertex v : g.neighbors(u)) {
        if (v < u || !in_comp(v) || rdeg(u) + rdeg(v) - 1 != m_comp) continue;
        ColoringState next = st;
        if (!next.assign(u, Color::Black) || !next.assign(v, Color::Black) || !next.propagate()) continue;
        bool done = true;
        for (Vertex w : comp) done = done && !unsettled(next, w);
        if (done) {
          ++ctx.stats.single_edge_hits;
          st = std::move(next);
          return Verdict::Found;
        }
      }
  }

  std::vector<EdgeRef> cands = fixed_xy ? std::vector<EdgeRef>{*fixed_xy} : xy_candidates(st, comp);
  if (ctx.opts.strict && !ctx.s115_cache) ctx.s115();
  const unsigned jobs = std::max(1U, ctx.opts.jobs);
  for (std::size_t base = 0; base < cands.size(); base += jobs) {
    std::size_t end = std::min(cands.size(), base + jobs);
    std::vector<XyAttempt> results;
    if (jobs == 1) {
      results.push_back(attempt_xy(g, ctx.opts, st, comp, cands[base], ctx.s115_cache));
    } else {
      std::vector<std::future<XyAttempt>> fut;
      for (std::size_t i = base; i < end; ++i)
        fut.push_back(std::async(std::launch::async, attempt_xy, std::cref(g), std::cref(ctx.opts), std::cref(st),
                                 std::cref(comp), cands[i], std::cref(ctx.s115_cache)));
      for (auto& f : fut) results.push_back(f.get());
    }
    for (auto& r : results) {
      ++ctx.stats.xy_tried;
      ctx.stats.merge(r.stats);
      if (r.verdict == Verdict::None) continue;
      if (r.verdict == Verdict::Violated) {
        ctx.reason = r.reason;
        ctx.witness = r.witness;
        return Verdict::Violated;
      }
      st = std::move(r.state);
      return Verdict::Found;
    }
  }
  ctx.reason = fixed_xy ? "no d.i.m. contains the given edge" : "no candidate edge extends to a d.i.m.";
  return Verdict::None;
}

// Solves a connected graph; `fixed_xy` restricts the search to d.i.m.s
// containing that edge.
inline SolveOutcome solve_connected(const Graph& g, const SolveOptions& opts, std::optional<EdgeRef> fixed_xy) {
  SolveOutcome out;
  SolveContext ctx(g, opts);
  ++ctx.stats.components;
  PreprocessOptions popts;
  popts.exclude_c4_edges = opts.c4_exclusions;
  auto pre = preprocess(g, popts);
  auto finish = [&](SolveOutcome::Kind k) {
    out.kind = k;
    out.stats = std::move(ctx.stats);
    return out;
  };
  if (!pre.feasible) {
    out.reason = pre.reason;
    return finish(SolveOutcome::Kind::None);
  }
  ColoringState& st = pre.state;
  if (fixed_xy) {
    Vertex x = fixed_xy->u, y = fixed_xy->v;
    if (st.removed(x) || st.removed(y)) {
      if (st.mate(x) != y) {
        out.reason = "the given edge is excluded by preprocessing";
        return finish(SolveOutcome::Kind::None);
      }
      fixed_xy.reset();
    }
  }
  for (auto& comp : unsettled_components(st)) {
    std::optional<EdgeRef> here;
    if (fixed_xy && std::binary_search(comp.begin(), comp.end(), fixed_xy->u)) here = fixed_xy;
    Verdict v = solve_residual(ctx, st, std::move(comp), here);
    if (v == Verdict::None) {
      out.reason = ctx.reason;
      return finish(SolveOutcome::Kind::None);
    }
    if (v == Verdict::Violated) {
      out.reason = ctx.reason;
      out.witness = ctx.witness;
      return finish(SolveOutcome::Kind::HypothesisViolated);
    }
  }
  if (!st.complete()) throw std::logic_error("solver left vertices uncoloured");
  out.certificate = st.matching();
  return finish(SolveOutcome::Kind::Found);
}

inline SolveOutcome solve_impl(const Graph& g, const SolveOptions& opts, std::optional<EdgeRef> xy) {
  if (xy && !g.has_edge(xy->u, xy->v)) throw std::invalid_argument("solve_with_xy: not an edge");
  SolveOutcome total;
  total.kind = SolveOutcome::Kind::Found;
  std::vector<EdgeRef> edges;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() < 2) continue;
    Graph h = induced_subgraph(g, comp);
    std::optional<EdgeRef> local;
    if (xy) {
      auto a = std::lower_bound(comp.begin(), comp.end(), xy->u);
      if (a != comp.end() && *a == xy->u) {
        auto b = std::lower_bound(comp.begin(), comp.end(), xy->v);
        local = EdgeRef(static_cast<Vertex>(a - comp.begin()), static_cast<Vertex>(b - comp.begin()));
      }
    }
    SolveOutcome part = solve_connected(h, opts, local);
    total.stats.merge(part.stats);
    if (!part.found()) {
      total.kind = part.kind;
      total.reason = part.reason;
      if (part.witness) {
        PatternWitness w = *part.witness;
        for (Vertex& v : w.vertices) v = comp[v];
        total.witness = std::move(w);
      }
      return total;
    }
    for (const auto& e : part.certificate->edges()) edges.emplace_back(comp[e.u], comp[e.v]);
  }
  DimCertificate cert(std::move(edges));
  auto check = verify_dim(g, cert);
  if (!check) throw std::logic_error("solver produced an invalid certificate: " + check.diagnostic);
  if (xy && !cert.contains(*xy)) throw std::logic_error("solver certificate misses the required edge");
  total.certificate = std::move(cert);
  return total;
}

}  // namespace detail

/// Decides whether `g` has a dominating induced matching and returns one if
/// so. Every returned certificate has been verified against `g`.
inline SolveOutcome solve(const Graph& g, const SolveOptions& opts = {}) {
  return detail::solve_impl(g, opts, std::nullopt);
}

/// Decides whether `g` has a dominating induced matching containing `xy`.
inline SolveOutcome solve_with_xy(const Graph& g, EdgeRef xy, const SolveOptions& opts = {}) {
  return detail::solve_impl(g, opts, xy);
}

}  // namespace dim
