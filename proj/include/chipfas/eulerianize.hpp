#pragma once

// Degree-balancing lift of an arbitrary digraph G to an Eulerian digraph G'.
// A fresh hub vertex h is added; every vertex v with out-degree surplus p gets
// p midpoints w with arcs h->w->v, every vertex with in-degree surplus q gets q
// midpoints w with arcs v->w->h. With d the total out-degree surplus, the
// maximum acyclic arc set of G' has exactly 3d more arcs than that of G.

#include <cstddef>
#include <optional>
#include <vector>

#include "chipfas/acyclic.hpp"
#include "chipfas/digraph.hpp"

namespace chipfas {

struct EulerianizedInstance {
  Digraph original;
  Digraph lifted;
  std::optional<Vertex> hub;        // absent when the original is already Eulerian
  std::size_t surplus = 0;          // d
  std::vector<Vertex> vertex_map;   // original id -> lifted id

  [[nodiscard]] bool is_added_arc(const Arc& a) const {
    return a.tail >= original.vertex_count() || a.head >= original.vertex_count();
  }
};

/// Midpoints are numbered hub+1 upward in ascending (vertex, copy) order.
inline EulerianizedInstance eulerianize(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  EulerianizedInstance inst;
  inst.original = g;
  inst.vertex_map.resize(n);
  for (Vertex v = 0; v < n; ++v) inst.vertex_map[v] = v;
  if (is_eulerian(g)) {
    inst.lifted = g;
    return inst;
  }

  const auto hub = static_cast<Vertex>(n);
  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  Vertex next = hub + 1;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t in = g.indegree(v), out = g.outdegree(v);
    if (in < out) {
      for (std::size_t j = 0; j < out - in; ++j, ++next) {
        arcs.push_back({hub, next});
        arcs.push_back({next, v});
      }
      inst.surplus += out - in;
    } else if (out < in) {
      for (std::size_t j = 0; j < in - out; ++j, ++next) {
        arcs.push_back({v, next});
        arcs.push_back({next, hub});
      }
    }
  }
  inst.hub = hub;
  inst.lifted = Digraph(next, std::move(arcs));
  return inst;
}

/// Minimum FAS size of the original from the minimum FAS size `b` of the lift:
/// b + 3d + |E| - |E'|.
inline std::size_t recover_minfas(const EulerianizedInstance& inst, std::size_t b) {
  const std::size_t e = inst.original.arc_count(), e_lift = inst.lifted.arc_count();
  const std::size_t plus = b + 3 * inst.surplus + e;
  if (plus < e_lift) throw PreconditionError("value is below the lifted graph's lower bound");
  return plus - e_lift;
}

/// Restricts an arc set of the lift to the original arcs. A feedback arc set
/// of G' maps to a feedback arc set of G.
inline ArcSet project_to_original(const EulerianizedInstance& inst, const ArcSet& lifted_arcs) {
  std::vector<Arc> out;
  for (const Arc& a : lifted_arcs)
    if (!inst.is_added_arc(a)) out.push_back(a);
  return ArcSet(std::move(out));
}

/// Maps a maximum acyclic arc set of the lift to a maximum acyclic arc set of
/// the original: it is first re-rooted at the hub (so it contains every added
/// arc except the ones entering the hub), then restricted.
inline ArcSet project_maximum_acyclic(const EulerianizedInstance& inst, const ArcSet& lifted_acyclic) {
  if (!inst.hub) return lifted_acyclic;
  return project_to_original(inst, rootify(inst.lifted, lifted_acyclic, *inst.hub).arcs);
}

}  // namespace chipfas
