#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "chipfas/chipfas.hpp"

namespace fixtures {

using chipfas::Arc;
using chipfas::Digraph;

// Sink is 0 where one is needed. K3: u=1, v=2. C3: a=1, b=2.
inline Digraph d2() { return Digraph(2, {{0, 1}, {1, 0}}); }
inline Digraph c3() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline Digraph k3() { return Digraph(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}); }
inline Digraph p1() { return Digraph(2, {{0, 1}}); }
inline Digraph star() { return Digraph(3, {{0, 1}, {0, 2}}); }

/// Arc count near `want` for which a strongly connected Eulerian digraph exists.
inline std::size_t eulerian_arcs(std::size_t n, std::size_t want) {
  const std::size_t full = n * (n - 1);
  std::size_t m = std::clamp(want, n, full);
  if (m + 1 == full) --m;
  return m;
}

struct Named {
  std::string name;
  Digraph g;
};

/// Distinct strongly connected Eulerian digraphs with n in [3, max_n] and at
/// most max_m arcs, after the D2, C3 and K3 fixtures.
inline std::vector<Named> eulerian_suite(std::size_t count, std::size_t max_n, std::size_t max_m,
                                         std::uint64_t seed0 = 1) {
  std::vector<Named> out{{"D2", d2()}, {"C3", c3()}, {"K3", k3()}};
  std::set<std::string> seen;
  for (const auto& x : out) seen.insert(chipfas::to_edge_list(x.g));
  std::uint64_t seed = seed0;
  while (out.size() < count + 3) {
    ++seed;
    const std::size_t n = 3 + seed % (max_n - 2);
    const std::size_t cap = std::min(n * (n - 1), max_m);
    const std::size_t m = eulerian_arcs(n, n + (seed / 7) % (cap - n + 1));
    try {
      auto g = chipfas::random_eulerian_digraph(n, m, seed);
      if (!seen.insert(chipfas::to_edge_list(g)).second) continue;
      out.push_back({"eul-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" + std::to_string(seed),
                     std::move(g)});
    } catch (const chipfas::InvalidInput&) {
    }
  }
  return out;
}

/// Every labelled strongly connected Eulerian digraph on n vertices.
inline std::vector<Digraph> all_eulerian(std::size_t n) {
  std::vector<Arc> all;
  for (chipfas::Vertex u = 0; u < n; ++u)
    for (chipfas::Vertex v = 0; v < n; ++v)
      if (u != v) all.push_back({u, v});
  std::vector<Digraph> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << all.size()); ++mask) {
    std::vector<int> balance(n, 0);
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      ++balance[all[i].tail];
      --balance[all[i].head];
      arcs.push_back(all[i]);
    }
    if (std::any_of(balance.begin(), balance.end(), [](int b) { return b != 0; })) continue;
    Digraph g(n, std::move(arcs));
    if (chipfas::is_strongly_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace fixtures
