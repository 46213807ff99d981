#pragma once

// Reference implementations used to check the library. They work on plain
// arc lists and share no code with the algorithms under test.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "chipfas/chipfas.hpp"

namespace oracle {

using Edge = std::pair<int, int>;
using Edges = std::vector<Edge>;
using Chipvec = std::vector<long long>;

inline Edges edges_of(const chipfas::Digraph& g) {
  Edges e;
  for (const auto& a : g.arcs()) e.emplace_back(static_cast<int>(a.tail), static_cast<int>(a.head));
  return e;
}

inline Edges edges_of(const chipfas::ArcSet& a) {
  Edges e;
  for (const auto& x : a) e.emplace_back(static_cast<int>(x.tail), static_cast<int>(x.head));
  return e;
}

inline Edges subset(const Edges& all, std::uint64_t mask) {
  Edges out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (mask >> i & 1) out.push_back(all[i]);
  return out;
}

/// Three-colour DFS cycle detection.
inline bool acyclic(int n, const Edges& e) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : e) adj[u].push_back(v);
  std::vector<int> colour(n, 0);
  auto dfs = [&](auto&& self, int u) -> bool {
    colour[u] = 1;
    for (int v : adj[u]) {
      if (colour[v] == 1) return false;
      if (colour[v] == 0 && !self(self, v)) return false;
    }
    colour[u] = 2;
    return true;
  };
  for (int u = 0; u < n; ++u)
    if (colour[u] == 0 && !dfs(dfs, u)) return false;
  return true;
}

/// Largest acyclic subset over all 2^|E| subsets.
inline std::size_t max_acyclic(int n, const Edges& all) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k > best && acyclic(n, subset(all, mask))) best = k;
  }
  return best;
}

inline std::size_t min_fas(int n, const Edges& all) { return all.size() - max_acyclic(n, all); }

/// Unique vertex of in-degree 0, or -1.
inline int unique_source(int n, const Edges& e) {
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : e) ++indeg[v];
  int src = -1;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] != 0) continue;
    if (src != -1) return -1;
    src = v;
  }
  return src;
}

struct RootedCensus {
  std::vector<std::set<Edges>> maximal;  // per root: maximal acyclic sets rooted there
  std::vector<std::size_t> maximum;      // per root: rooted sets of globally maximum size
  std::size_t max_size = 0;
};

/// One pass over all arc subsets. A finite acyclic set with a single in-degree-0
/// vertex reaches every vertex from it, so the source identifies the root.
inline RootedCensus rooted_census(int n, const Edges& all) {
  RootedCensus out;
  out.maximal.resize(n);
  out.maximum.assign(n, 0);
  const std::uint64_t full = std::uint64_t{1} << all.size();
  std::vector<char> is_acyclic(full);
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    is_acyclic[mask] = acyclic(n, subset(all, mask));
    if (is_acyclic[mask]) out.max_size = std::max<std::size_t>(out.max_size, std::popcount(mask));
  }
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    if (!is_acyclic[mask]) continue;
    const Edges e = subset(all, mask);
    const int root = n == 1 ? 0 : unique_source(n, e);
    if (root < 0) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < all.size() && maximal; ++i)
      if (!(mask >> i & 1) && is_acyclic[mask | std::uint64_t{1} << i]) maximal = false;
    if (maximal) out.maximal[root].insert(e);
    if (static_cast<std::size_t>(std::popcount(mask)) == out.max_size) ++out.maximum[root];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chip-firing with the sink's out-arcs ignored.

struct Game {
  int n = 0;
  int sink = 0;
  std::vector<std::vector<int>> out;

  Game(const chipfas::Digraph& g, int s) : n(static_cast<int>(g.vertex_count())), sink(s), out(n) {
    for (auto [u, v] : edges_of(g))
      if (u != s) out[u].push_back(v);
  }

  [[nodiscard]] bool active(const Chipvec& c, int v) const {
    return v != sink && !out[v].empty() && c[v] >= static_cast<long long>(out[v].size());
  }

  /// Fires the first active vertex found until none is left.
  Chipvec stabilize(Chipvec c, std::vector<long long>* odometer = nullptr) const {
    if (odometer) odometer->assign(n, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!active(c, v)) continue;
        c[v] -= static_cast<long long>(out[v].size());
        for (int w : out[v]) c[w] += 1;
        c[sink] = 0;
        if (odometer) ++(*odometer)[v];
        changed = true;
      }
    }
    return c;
  }

  [[nodiscard]] bool stable(const Chipvec& c) const {
    for (int v = 0; v < n; ++v)
      if (active(c, v)) return false;
    return true;
  }

  [[nodiscard]] std::vector<Chipvec> all_stable() const {
    std::vector<Chipvec> out_list;
    Chipvec c(n, 0);
    auto rec = [&](auto&& self, int v) -> void {
      if (v == n) {
        out_list.push_back(c);
        return;
      }
      if (v == sink) return self(self, v + 1);
      for (long long k = 0; k < static_cast<long long>(out[v].size()); ++k) {
        c[v] = k;
        self(self, v + 1);
      }
      c[v] = 0;
    };
    rec(rec, 0);
    return out_list;
  }

  /// Stable configurations reachable from (2 outdeg)° by adding single chips
  /// and stabilizing: these are the recurrent ones.
  [[nodiscard]] std::set<Chipvec> recurrent() const {
    Chipvec start(n, 0);
    for (int v = 0; v < n; ++v)
      if (v != sink) start[v] = 2 * static_cast<long long>(out[v].size());
    std::set<Chipvec> seen{stabilize(start)};
    std::deque<Chipvec> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
      Chipvec c = todo.front();
      todo.pop_front();
      for (int v = 0; v < n; ++v) {
        if (v == sink) continue;
        Chipvec d = c;
        ++d[v];
        d = stabilize(d);
        if (seen.insert(d).second) todo.push_back(d);
      }
    }
    return seen;
  }
};

/// Recurrent configurations with no other recurrent configuration below them.
inline std::set<Chipvec> minimal_elements(const std::set<Chipvec>& rec) {
  std::set<Chipvec> out;
  for (const auto& c : rec) {
    bool minimal = true;
    for (const auto& d : rec) {
      if (d == c) continue;
      bool below = true;
      for (std::size_t i = 0; i < c.size(); ++i) below = below && d[i] <= c[i];
      if (below) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(c);
  }
  return out;
}

inline Chipvec to_vec(const chipfas::Configuration& c) {
  return Chipvec(c.values().begin(), c.values().end());
}

// ---------------------------------------------------------------------------

/// Determinant by the Leibniz formula (small matrices only).
inline long long leibniz_det(const std::vector<std::vector<long long>>& m) {
  const std::size_t k = m.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  long long det = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    long long term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < k; ++i) term *= m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Reduced Laplacian: -outdeg on the diagonal, +1 per arc between non-sinks.
inline std::vector<std::vector<long long>> laplacian(const chipfas::Digraph& g, int s) {
  const int n = static_cast<int>(g.vertex_count());
  std::vector<int> idx(n, -1);
  int k = 0;
  for (int v = 0; v < n; ++v)
    if (v != s) idx[v] = k++;
  std::vector<std::vector<long long>> m(k, std::vector<long long>(k, 0));
  for (auto [u, v] : edges_of(g)) {
    if (u == s) continue;
    m[idx[u]][idx[u]] -= 1;
    if (v != s) m[idx[u]][idx[v]] += 1;
  }
  return m;
}

// ---------------------------------------------------------------------------

/// Random digraph in which every vertex can reach `sink`.
inline chipfas::Digraph random_global_sink_digraph(std::mt19937_64& rng, int n, int sink) {
  for (;;) {
    Edges e;
    std::bernoulli_distribution coin(0.2 + 0.6 * std::uniform_real_distribution<>(0, 1)(rng));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && coin(rng)) e.emplace_back(u, v);
    std::vector<std::vector<int>> rev(n);
    for (auto [u, v] : e) rev[v].push_back(u);
    std::vector<char> seen(n, 0);
    std::vector<int> stack{sink};
    seen[sink] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : rev[v])
        if (!seen[u]) seen[u] = 1, stack.push_back(u);
    }
    if (std::count(seen.begin(), seen.end(), 1) != n) continue;
    std::vector<chipfas::Arc> arcs;
    for (auto [u, v] : e) arcs.push_back({static_cast<chipfas::Vertex>(u), static_cast<chipfas::Vertex>(v)});
    return chipfas::Digraph(static_cast<std::size_t>(n), std::move(arcs));
  }
}

}  // namespace oracle
