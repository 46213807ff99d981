#pragma once

// Recurrent configurations of chip-firing with a sink: the reduced Laplacian
// and group order, the epsilon and beta recurrence tests, burning, firing
// graphs, the minimal-recurrent / maximal-rooted-acyclic-set correspondence,
// minimum recurrent configurations and the sandpile group operation.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chipfas/acyclic.hpp"
#include "chipfas/chipfire.hpp"
#include "chipfas/digraph.hpp"
#include "chipfas/error.hpp"

namespace chipfas {

using BigInt = boost::multiprecision::cpp_int;

/// Laplacian with the sink row and column removed, rows/columns in ascending
/// vertex order. Off-diagonal (i,j) counts arcs v_i -> v_j, diagonal is
/// -outdeg(v_i).
struct ReducedLaplacian {
  std::vector<Vertex> order;
  std::vector<std::int64_t> entries;  // row-major, order.size()^2

  [[nodiscard]] std::size_t dim() const noexcept { return order.size(); }
  [[nodiscard]] std::int64_t at(std::size_t i, std::size_t j) const { return entries.at(i * dim() + j); }
};

inline ReducedLaplacian reduced_laplacian(const Digraph& g, Vertex s) {
  g.check_vertex(s);
  ReducedLaplacian lap;
  std::vector<std::size_t> row(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v == s) continue;
    row[v] = lap.order.size();
    lap.order.push_back(v);
  }
  const std::size_t k = lap.order.size();
  lap.entries.assign(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex v = lap.order[i];
    lap.entries[i * k + i] = -static_cast<std::int64_t>(g.outdegree(v));
    for (Vertex w : g.out_neighbors(v))
      if (w != s) lap.entries[i * k + row[w]] += 1;
  }
  return lap;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const ReducedLaplacian& lap) {
  const std::size_t k = lap.dim();
  std::vector<BigInt> m(lap.entries.begin(), lap.entries.end());
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * k + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p < k; ++p) {
    if (at(p, p) == 0) {
      std::size_t r = p + 1;
      while (r < k && at(r, p) == 0) ++r;
      if (r == k) return 0;
      for (std::size_t j = 0; j < k; ++j) std::swap(at(p, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) at(i, j) = (at(i, j) * at(p, p) - at(i, p) * at(p, j)) / prev;
      at(i, p) = 0;
    }
    prev = at(p, p);
  }
  return k == 0 ? BigInt(1) : sign * at(k - 1, k - 1);
}

/// Number of recurrent configurations: |det| of the reduced Laplacian.
inline BigInt group_order(const Digraph& g, Vertex s) {
  BigInt det = abs(determinant(reduced_laplacian(g, s)));
  if (det == 0)
    throw PreconditionError("reduced Laplacian is singular: vertex " + std::to_string(s) + " is not a global sink");
  return det;
}

/// One chip on each out-neighbour of the sink.
inline Configuration beta(const Digraph& g, Vertex s) {
  g.check_vertex(s);
  if (!is_eulerian(g)) throw PreconditionError("beta requires an Eulerian graph");
  Configuration c(g.vertex_count(), s);
  for (Vertex w : g.out_neighbors(s)) c.set(w, 1);
  return c;
}

enum class DeltaChoice { TwiceOutdegree, Outdegree };

/// epsilon = delta - stabilize(delta), with delta = 2 outdeg (or outdeg).
inline Configuration epsilon(const Digraph& g, Vertex s, DeltaChoice choice = DeltaChoice::TwiceOutdegree) {
  Configuration delta = scaled_outdegree(g, s, choice == DeltaChoice::TwiceOutdegree ? 2 : 1);
  Configuration settled = stabilize(g, delta).stable;
  Configuration eps(g.vertex_count(), s);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != s) eps.set(v, delta[v] - settled[v]);
  return eps;
}

enum class RecurrenceTest { Auto, Beta, Epsilon, EpsilonOutdegree };

/// The configuration added by the chosen test. Auto picks beta on Eulerian
/// graphs and epsilon otherwise.
inline Configuration recurrence_probe(const Digraph& g, Vertex s, RecurrenceTest test = RecurrenceTest::Auto) {
  switch (test) {
    case RecurrenceTest::Beta: return beta(g, s);
    case RecurrenceTest::Epsilon: return epsilon(g, s);
    case RecurrenceTest::EpsilonOutdegree: return epsilon(g, s, DeltaChoice::Outdegree);
    case RecurrenceTest::Auto: break;
  }
  return is_eulerian(g) ? beta(g, s) : epsilon(g, s);
}

namespace detail {

inline void require_stable(const Digraph& g, const Configuration& c) {
  if (auto v = first_active(g, c)) throw UnstableConfiguration(*v);
}

inline bool recurrent_with_probe(const Digraph& g, const Configuration& c, const Configuration& probe) {
  return stabilize_unchecked(g, add(c, probe), {}).stable == c;
}

}  // namespace detail

/// c is recurrent iff c = (c + probe)°.
inline bool is_recurrent(const Digraph& g, const Configuration& c, RecurrenceTest test = RecurrenceTest::Auto) {
  detail::require_same_shape(g, c);
  detail::require_global_sink(g, c.sink());
  detail::require_stable(g, c);
  return detail::recurrent_with_probe(g, c, recurrence_probe(g, c.sink(), test));
}

struct BurnResult {
  bool recurrent = false;
  std::vector<Vertex> order;    // firings of c + beta, smallest active id first
  std::vector<Vertex> unburnt;  // vertices that never fired
};

/// Dhar's burning pass on an Eulerian graph: stabilize c + beta.
inline BurnResult burn(const Digraph& g, const Configuration& c) {
  detail::require_same_shape(g, c);
  detail::require_global_sink(g, c.sink());
  detail::require_stable(g, c);
  StabilizeOptions opt;
  opt.record_order = true;
  auto st = detail::stabilize_unchecked(g, add(c, beta(g, c.sink())), opt);
  BurnResult out;
  out.recurrent = st.stable == c;
  out.order = std::move(st.order);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != c.sink() && st.odometer.fires[v] == 0) out.unburnt.push_back(v);
  return out;
}

/// Legal firing order taking c + beta back to c; every non-sink vertex fires
/// exactly once. Throws NotRecurrent with the unburnt vertices otherwise.
inline std::vector<Vertex> burning_sequence(const Digraph& g, const Configuration& c) {
  BurnResult r = burn(g, c);
  if (!r.recurrent) throw NotRecurrent(std::move(r.unburnt));
  if (r.order.size() + 1 != g.vertex_count())
    throw InternalError("burning pass of a recurrent configuration did not fire every vertex once");
  return std::move(r.order);
}

struct FiringGraph {
  Vertex sink = 0;
  std::vector<Vertex> order;
  ArcSet arcs;  // (s, w_i) in E, and (w_i, w_j) in E with i < j
};

inline FiringGraph firing_graph(const Digraph& g, const Configuration& c, const std::vector<Vertex>& seq) {
  detail::require_same_shape(g, c);
  const Vertex s = c.sink();
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  Configuration cur = add(c, beta(g, s));
  for (Vertex w : seq) {
    g.check_vertex(w);
    if (w == s || seen[w]) throw PreconditionError("firing sequence repeats a vertex or contains the sink");
    seen[w] = 1;
    if (!is_active(g, cur, w))
      throw PreconditionError("firing sequence is not legal: vertex " + std::to_string(w) + " is not active");
    cur = fire(g, std::move(cur), w);
  }
  if (seq.size() + 1 != n || cur != c)
    throw PreconditionError("firing sequence does not take c + beta back to c");

  std::vector<std::size_t> pos(n, 0);  // sink at position 0
  for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = i + 1;
  std::vector<Arc> arcs;
  for (const Arc& e : g.arcs())
    if (e.head != s && pos[e.tail] < pos[e.head]) arcs.push_back(e);
  return {s, seq, ArcSet(std::move(arcs))};
}

/// c(v) = outdeg_G(v) - indeg_R(v), recurrent for the sink R.root.
inline Configuration config_from_arcset(const Digraph& g, const RootedAcyclicSet& r) {
  if (!is_rooted_at(g, r.arcs, r.root))
    throw PreconditionError("arc set is not acyclic with every vertex reachable from " + std::to_string(r.root));
  std::vector<Chips> in(g.vertex_count(), 0);
  for (const Arc& e : r.arcs) ++in[e.head];
  Configuration c(g.vertex_count(), r.root);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != r.root) c.set(v, static_cast<Chips>(g.outdegree(v)) - in[v]);
  return c;
}

inline Configuration config_from_arcset(const Digraph& g, const ArcSet& a, Vertex s) {
  return config_from_arcset(g, RootedAcyclicSet{a, s});
}

/// Minimal recurrent: recurrent with no smaller recurrent configuration below
/// it. On Eulerian graphs this holds iff the firing graph F of the burning
/// pass is a maximal acyclic set and c = outdeg - indeg_F. On other graphs it
/// is decided by removing single chips, since recurrence is closed upwards.
inline bool is_minimal_recurrent(const Digraph& g, const Configuration& c) {
  detail::require_same_shape(g, c);
  detail::require_global_sink(g, c.sink());
  detail::require_stable(g, c);
  const Vertex s = c.sink();
  if (is_eulerian(g)) {
    BurnResult r = burn(g, c);
    if (!r.recurrent) return false;
    FiringGraph f = firing_graph(g, c, r.order);
    if (config_from_arcset(g, f.arcs, s) != c) return false;
    return is_maximal_acyclic(g, f.arcs);
  }
  const Configuration probe = epsilon(g, s);
  if (!detail::recurrent_with_probe(g, c, probe)) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v == s || c[v] == 0) continue;
    Configuration lower = c;
    lower.set(v, c[v] - 1);
    if (detail::recurrent_with_probe(g, lower, probe)) return false;
  }
  return true;
}

inline constexpr std::uint64_t kStableEnumerationCap = 1'000'000;

/// Number of stable configurations, prod (outdeg(v)) over non-sink v.
inline std::uint64_t stable_configuration_count(const Digraph& g, Vertex s, std::uint64_t cap = UINT64_MAX) {
  std::uint64_t total = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v == s) continue;
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(g.outdegree(v)), &total) || total > cap)
      return UINT64_MAX;
  }
  return total;
}

/// Every recurrent configuration, found by testing all stable ones. Ascending.
inline std::vector<Configuration> enumerate_recurrent(const Digraph& g, Vertex s,
                                                      std::uint64_t cap = kStableEnumerationCap) {
  g.check_vertex(s);
  detail::require_global_sink(g, s);
  if (stable_configuration_count(g, s, cap) > cap)
    throw CapExceeded("more than " + std::to_string(cap) + " stable configurations to enumerate");
  const Configuration probe = recurrence_probe(g, s);
  std::vector<Vertex> slots;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != s) slots.push_back(v);

  std::vector<Configuration> out;
  Configuration c(g.vertex_count(), s);
  while (true) {
    if (detail::recurrent_with_probe(g, c, probe)) out.push_back(c);
    // odometer-style increment, last slot fastest
    std::size_t i = slots.size();
    while (i > 0) {
      const Vertex v = slots[i - 1];
      if (c[v] + 1 < static_cast<Chips>(g.outdegree(v))) {
        c.set(v, c[v] + 1);
        break;
      }
      c.set(v, 0);
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

/// Minimal recurrent configurations obtained from the maximal acyclic arc sets
/// rooted at s.
inline std::vector<Configuration> minimal_recurrent_from_arcsets(const Digraph& g, Vertex s, std::size_t max_n = 10) {
  if (!is_eulerian(g)) throw PreconditionError("graph is not Eulerian");
  detail::require_global_sink(g, s);
  std::vector<Configuration> out;
  for (const ArcSet& a : enumerate_rooted_maximal(g, s, max_n)) out.push_back(config_from_arcset(g, a, s));
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimal elements of the recurrent set: c is kept when no c - e_v is
/// recurrent (enough because recurrence is closed upwards among stable
/// configurations).
inline std::vector<Configuration> minimal_recurrent_by_filter(const Digraph& g, Vertex s,
                                                              std::uint64_t cap = kStableEnumerationCap) {
  auto all = enumerate_recurrent(g, s, cap);
  std::set<Configuration> rec(all.begin(), all.end());
  std::vector<Configuration> out;
  for (const Configuration& c : all) {
    bool minimal = true;
    for (Vertex v = 0; v < g.vertex_count() && minimal; ++v) {
      if (v == s || c[v] == 0) continue;
      Configuration lower = c;
      lower.set(v, c[v] - 1);
      minimal = !rec.contains(lower);
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

/// Both constructions, required to agree.
inline std::vector<Configuration> enumerate_minimal_recurrent(const Digraph& g, Vertex s) {
  auto via_arcs = minimal_recurrent_from_arcsets(g, s);
  auto via_filter = minimal_recurrent_by_filter(g, s);
  if (via_arcs != via_filter)
    throw InternalError("minimal recurrent configurations from arc sets (" + std::to_string(via_arcs.size()) +
                        ") and from filtering (" + std::to_string(via_filter.size()) + ") disagree");
  return via_arcs;
}

struct MinRec {
  Chips chips = 0;
  Configuration witness;
  std::size_t max_acyclic = 0;  // only set by minrec_exact
};

/// Minimum chips of a recurrent configuration on an Eulerian graph:
/// sum_{v != s} outdeg(v) minus the maximum acyclic arc set size.
inline MinRec minrec_exact(const Digraph& g, Vertex s, const ExactLimits& lim = {}) {
  g.check_vertex(s);
  if (!is_eulerian(g)) throw PreconditionError("graph is not Eulerian");
  if (!is_strongly_connected(g)) throw PreconditionError("graph is not strongly connected");
  auto best = max_acyclic_exact(g, lim);
  const RootedAcyclicSet rooted = rootify(g, best.witness, s);
  MinRec out;
  out.witness = config_from_arcset(g, rooted);
  out.max_acyclic = best.size;
  const auto out_sum = static_cast<Chips>(g.arc_count() - g.outdegree(s));
  out.chips = out_sum - static_cast<Chips>(best.size);
  if (out.witness.total() != out.chips) throw InternalError("minimum recurrent witness has the wrong chip count");
  return out;
}

/// Minimum over the full recurrent set; any graph where s is a global sink.
inline MinRec minrec_brute(const Digraph& g, Vertex s, std::uint64_t cap = kStableEnumerationCap) {
  auto all = enumerate_recurrent(g, s, cap);
  if (all.empty()) throw InternalError("no recurrent configuration found");
  auto it = std::min_element(all.begin(), all.end(),
                             [](const Configuration& a, const Configuration& b) { return a.total() < b.total(); });
  return {it->total(), *it, 0};
}

/// The recurrent configuration equivalent to c: repeatedly c <- (c + probe)°.
inline Configuration canonical_recurrent(const Digraph& g, const Configuration& c) {
  detail::require_same_shape(g, c);
  const Vertex s = c.sink();
  detail::require_global_sink(g, s);
  const Configuration probe = recurrence_probe(g, s);
  std::size_t max_out = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) max_out = std::max(max_out, g.outdegree(v));
  const std::size_t n = g.vertex_count();
  const std::size_t bound = n * max_out * n + 1;
  Configuration cur = detail::stabilize_unchecked(g, c, {}).stable;
  for (std::size_t i = 0; i <= bound; ++i) {
    Configuration next = detail::stabilize_unchecked(g, add(cur, probe), {}).stable;
    if (next == cur) return cur;
    cur = std::move(next);
  }
  throw InternalError("canonical recurrent iteration did not settle");
}

inline bool equivalent(const Digraph& g, const Configuration& a, const Configuration& b) {
  return canonical_recurrent(g, a) == canonical_recurrent(g, b);
}

/// Sandpile group operation (a + b)°.
inline Configuration group_add(const Digraph& g, const Configuration& a, const Configuration& b) {
  if (!is_recurrent(g, a) || !is_recurrent(g, b)) throw PreconditionError("group_add needs recurrent operands");
  return stabilize(g, add(a, b)).stable;
}

}  // namespace chipfas
