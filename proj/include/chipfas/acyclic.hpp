#pragma once

// Acyclic arc sets of Eulerian digraphs: cut-stretch, rooting, sinkability,
// maximal/maximum sets and the feedback-arc-set solvers built on them.
//
// Naming: the vertex of in-degree 0 in G[A] is called the *root* of A (it is
// the vertex that plays the role of the chip-firing sink later on).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "chipfas/digraph.hpp"
#include "chipfas/error.hpp"

namespace chipfas {

/// Acyclic arc set whose only in-degree-0 vertex is `root`; equivalently every
/// vertex is reachable from `root` in G[arcs].
struct RootedAcyclicSet {
  ArcSet arcs;
  Vertex root = 0;

  friend bool operator==(const RootedAcyclicSet&, const RootedAcyclicSet&) = default;
};

inline bool is_rooted_at(const Digraph& g, const ArcSet& a, Vertex root) {
  g.check_vertex(root);
  if (!is_acyclic_set(g, a)) return false;
  for (const Arc& e : a)
    if (e.head == root) return false;
  return reach(g, a, root).is_full();
}

inline RootedAcyclicSet make_rooted(const Digraph& g, ArcSet a, Vertex root) {
  if (!is_rooted_at(g, a, root))
    throw PreconditionError("arc set is not acyclic with unique root " + std::to_string(root));
  return {std::move(a), root};
}

namespace detail {

inline void require_eulerian(const Digraph& g) {
  if (!is_eulerian(g)) throw PreconditionError("graph is not Eulerian");
}

inline void require_acyclic(const Digraph& g, const ArcSet& a) {
  if (!is_acyclic_set(g, a)) throw PreconditionError("arc set is not acyclic");
}

inline std::vector<std::uint64_t> in_masks(const Digraph& g) {
  std::vector<std::uint64_t> m(g.vertex_count(), 0);
  for (const Arc& e : g.arcs()) m[e.head] |= std::uint64_t{1} << e.tail;
  return m;
}

/// Arcs of g that point forward in `order`.
inline ArcSet forward_arcs(const Digraph& g, const std::vector<Vertex>& order) {
  std::vector<std::size_t> pos(g.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<Arc> out;
  for (const Arc& e : g.arcs())
    if (pos[e.tail] < pos[e.head]) out.push_back(e);
  return ArcSet(std::move(out));
}

}  // namespace detail

/// CS(A, s): with R the vertices A-reachable from s, drop the A-arcs entering R
/// and add every arc of G leaving R.
inline ArcSet cut_stretch(const Digraph& g, const ArcSet& a, Vertex s) {
  detail::require_eulerian(g);
  detail::require_acyclic(g, a);
  VertexSet r = reach(g, a, s);
  Cuts c = cuts(g, r);
  return a.minus(c.in_cut).united(c.out_cut);
}

/// Iterates cut-stretch at `s` until every vertex is reachable from `s`. The
/// reach set grows strictly at each step, so at most n-1 stretches happen.
inline RootedAcyclicSet rootify(const Digraph& g, ArcSet a, Vertex s, std::size_t* stretches = nullptr) {
  detail::require_eulerian(g);
  if (!is_strongly_connected(g)) throw PreconditionError("graph is not strongly connected");
  detail::require_acyclic(g, a);
  g.check_vertex(s);
  std::size_t steps = 0;
  VertexSet r = reach(g, a, s);
  while (!r.is_full()) {
    a = cut_stretch(g, a, s);
    VertexSet next = reach(g, a, s);
    if (next.size() <= r.size()) throw InternalError("cut-stretch did not grow the reach set");
    r = std::move(next);
    ++steps;
  }
  if (stretches) *stretches = steps;
  return make_rooted(g, std::move(a), s);
}

/// `t` is sinkable in R when some arc of G enters R.root from a vertex that
/// t reaches in G[R].
inline bool is_sinkable(const Digraph& g, const RootedAcyclicSet& r, Vertex t) {
  g.check_vertex(t);
  if (t == r.root) throw PreconditionError("sinkability is defined for vertices other than the root");
  if (!is_rooted_at(g, r.arcs, r.root))
    throw PreconditionError("arc set does not have a unique root");
  VertexSet from_t = reach(g, r.arcs, t);
  for (Vertex x : g.in_neighbors(r.root))
    if (from_t.contains(x)) return true;
  return false;
}

/// Greedy completion: scan arcs of G in ascending (tail, head) order and keep
/// each one that does not close a cycle.
inline ArcSet maximal_extend(const Digraph& g, ArcSet a) {
  detail::require_acyclic(g, a);
  for (const Arc& e : g.arcs()) {
    if (a.contains(e)) continue;
    if (!reach(g, a, e.head).contains(e.tail)) a.insert(e);
  }
  return a;
}

/// True when `a` is acyclic and no arc of G can be added without a cycle.
inline bool is_maximal_acyclic(const Digraph& g, const ArcSet& a) {
  if (!is_acyclic_set(g, a)) return false;
  for (const Arc& e : g.arcs())
    if (!a.contains(e) && !reach(g, a, e.head).contains(e.tail)) return false;
  return true;
}

struct ExactLimits {
  std::size_t max_n = 22;
  std::size_t max_bytes = std::size_t{1} << 30;
};

/// Bytes used by the subset DP on n vertices.
inline std::size_t exact_memory_estimate(std::size_t n) {
  return n >= 63 ? SIZE_MAX : (std::size_t{1} << n) * (sizeof(std::uint16_t) + sizeof(std::uint8_t));
}

namespace detail {

struct OrderingDp {
  std::vector<std::uint16_t> best;  // best[S]: most forward arcs inside S over orders of S
  std::vector<std::uint8_t> last;   // vertex placed last in an optimal order of S
};

inline void check_exact_limits(std::size_t n, const ExactLimits& lim) {
  constexpr std::size_t kHardCap = 30;
  if (n > lim.max_n || n > kHardCap)
    throw CapExceeded("exact solver is limited to n <= " + std::to_string(std::min(lim.max_n, kHardCap)) +
                      " (graph has " + std::to_string(n) + " vertices)");
  if (exact_memory_estimate(n) > lim.max_bytes)
    throw CapExceeded("exact solver would need " + std::to_string(exact_memory_estimate(n)) +
                      " bytes, limit is " + std::to_string(lim.max_bytes));
}

inline OrderingDp ordering_dp(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  const auto in = in_masks(g);
  const std::size_t full = std::size_t{1} << n;
  OrderingDp dp{std::vector<std::uint16_t>(full, 0), std::vector<std::uint8_t>(full, 0)};
  for (std::size_t s = 1; s < full; ++s) {
    int best = -1;
    std::uint8_t arg = 0;
    for (std::size_t rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<unsigned>(std::countr_zero(rest));
      const std::size_t prev = s & ~(std::size_t{1} << v);
      const int val = dp.best[prev] + std::popcount(in[v] & prev);
      if (val > best) {
        best = val;
        arg = static_cast<std::uint8_t>(v);
      }
    }
    dp.best[s] = static_cast<std::uint16_t>(best);
    dp.last[s] = arg;
  }
  return dp;
}

/// Depth-first walk over vertex orders starting with `first` in which every
/// later vertex has an in-arc from an earlier one (the forward-arc set then
/// has `first` as unique root). `visit` gets each complete order. When
/// `target` is set, branches that cannot reach that many forward arcs are cut
/// using the DP table.
inline void for_each_rooted_order(const Digraph& g, Vertex first, const std::vector<std::uint16_t>* dp_best,
                                  std::size_t target,
                                  const std::function<void(const std::vector<Vertex>&, std::size_t)>& visit) {
  const std::size_t n = g.vertex_count();
  const auto in = in_masks(g);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<Vertex> order{first};
  order.reserve(n);

  std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t placed, std::size_t value) {
    if (placed == all) {
      visit(order, value);
      return;
    }
    const std::uint64_t rest = all & ~placed;
    if (dp_best) {
      std::size_t cross = 0;
      for (std::uint64_t r = rest; r; r &= r - 1) cross += std::popcount(in[std::countr_zero(r)] & placed);
      if (value + cross + (*dp_best)[rest] < target) return;
    }
    for (std::uint64_t r = rest; r; r &= r - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(r));
      const auto gained = static_cast<std::size_t>(std::popcount(in[v] & placed));
      if (gained == 0) continue;
      order.push_back(v);
      rec(placed | (std::uint64_t{1} << v), value + gained);
      order.pop_back();
    }
  };
  rec(std::uint64_t{1} << first, 0);
}

}  // namespace detail

struct AcyclicSolution {
  std::size_t size = 0;
  ArcSet witness;
};

/// Maximum acyclic arc set by subset DP over vertex orderings,
/// O(2^n n) time and O(2^n) memory.
inline AcyclicSolution max_acyclic_exact(const Digraph& g, const ExactLimits& lim = {}) {
  const std::size_t n = g.vertex_count();
  detail::check_exact_limits(n, lim);
  if (n == 0) return {};
  auto dp = detail::ordering_dp(g);
  std::vector<Vertex> order;
  for (std::size_t s = (std::size_t{1} << n) - 1; s; s &= ~(std::size_t{1} << dp.last[s]))
    order.push_back(dp.last[s]);
  std::reverse(order.begin(), order.end());
  ArcSet w = detail::forward_arcs(g, order);
  if (w.size() != dp.best.back()) throw InternalError("ordering DP witness size mismatch");
  return {w.size(), std::move(w)};
}

struct FasSolution {
  std::size_t size = 0;
  ArcSet witness;
};

inline FasSolution min_fas_exact(const Digraph& g, const ExactLimits& lim = {}) {
  auto best = max_acyclic_exact(g, lim);
  return {g.arc_count() - best.size, complement(g, best.witness)};
}

struct HeuristicFas {
  std::size_t upper_bound = 0;
  ArcSet witness;       // feedback arc set
  ArcSet acyclic;       // its complement
  Vertex best_root = 0;
};

/// For every root s: greedy maximal set, cut-stretched until rooted at s, then
/// greedily completed again. Keeps the largest acyclic set found.
inline HeuristicFas min_fas_heuristic(const Digraph& g) {
  detail::require_eulerian(g);
  if (!is_strongly_connected(g)) throw PreconditionError("graph is not strongly connected");
  const ArcSet seed = maximal_extend(g, {});
  HeuristicFas out;
  bool have = false;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    ArcSet a = maximal_extend(g, rootify(g, seed, s).arcs);
    if (!have || a.size() > out.acyclic.size()) {
      out.acyclic = std::move(a);
      out.best_root = s;
      have = true;
    }
  }
  out.upper_bound = g.arc_count() - out.acyclic.size();
  out.witness = complement(g, out.acyclic);
  return out;
}

/// All maximum acyclic arc sets with unique root `s`, ascending.
inline std::vector<ArcSet> maximum_rooted_sets(const Digraph& g, Vertex s, std::size_t max_n = 8) {
  g.check_vertex(s);
  if (g.vertex_count() > max_n)
    throw CapExceeded("enumeration is limited to n <= " + std::to_string(max_n));
  if (g.vertex_count() == 1) return {ArcSet{}};
  auto dp = detail::ordering_dp(g);
  const std::size_t target = dp.best.back();
  std::set<ArcSet> found;
  detail::for_each_rooted_order(g, s, &dp.best, target, [&](const std::vector<Vertex>& order, std::size_t value) {
    if (value == target) found.insert(detail::forward_arcs(g, order));
  });
  return {found.begin(), found.end()};
}

/// Number of maximum acyclic arc sets whose unique root is `s`.
inline std::size_t count_chi(const Digraph& g, Vertex s, std::size_t max_n = 8) {
  detail::require_eulerian(g);
  if (!is_strongly_connected(g)) throw PreconditionError("graph is not strongly connected");
  return maximum_rooted_sets(g, s, max_n).size();
}

/// All maximal acyclic arc sets with unique root `s`, ascending. Each is the
/// forward-arc set of one of its topological orders, so orders starting at
/// `s` are enumerated and kept when no backward arc can be added.
inline std::vector<ArcSet> enumerate_rooted_maximal(const Digraph& g, Vertex s, std::size_t max_n = 10) {
  g.check_vertex(s);
  const std::size_t n = g.vertex_count();
  if (n > max_n) throw CapExceeded("enumeration is limited to n <= " + std::to_string(max_n));
  if (n == 1) return {ArcSet{}};
  std::set<ArcSet> found;
  std::vector<std::size_t> pos(n);
  std::vector<std::uint64_t> down(n);
  detail::for_each_rooted_order(g, s, nullptr, 0, [&](const std::vector<Vertex>& order, std::size_t) {
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (std::size_t i = n; i-- > 0;) {
      const Vertex u = order[i];
      std::uint64_t m = std::uint64_t{1} << u;
      for (Vertex w : g.out_neighbors(u))
        if (pos[w] > i) m |= down[w];
      down[u] = m;
    }
    for (const Arc& e : g.arcs())
      if (pos[e.tail] > pos[e.head] && !(down[e.head] >> e.tail & 1)) return;  // e could be added
    found.insert(detail::forward_arcs(g, order));
  });
  return {found.begin(), found.end()};
}

}  // namespace chipfas
