#pragma once

// Seeded random instance generators. Output depends only on the arguments.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chipfas/digraph.hpp"
#include "chipfas/error.hpp"

namespace chipfas {

namespace detail {

/// Uniform integer in [0, bound) by rejection; portable across standard
/// libraries, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace detail

/// m distinct arcs chosen uniformly among the n(n-1) possible ones.
inline Digraph random_digraph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n > 1 && m > n * (n - 1)) throw InvalidInput("a simple digraph on " + std::to_string(n) +
                                                   " vertices has at most " + std::to_string(n * (n - 1)) + " arcs");
  if (n <= 1 && m > 0) throw InvalidInput("no arcs fit on fewer than two vertices");
  std::mt19937_64 rng(seed);
  std::vector<Arc> all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) all.push_back({u, v});
  // partial Fisher-Yates
  for (std::size_t i = 0; i < m; ++i) std::swap(all[i], all[i + detail::uniform_below(rng, all.size() - i)]);
  all.resize(m);
  return Digraph(n, std::move(all));
}

/// Strongly connected Eulerian digraph with exactly m arcs, built by laying
/// random simple directed cycles over arcs that are still unused. Throws
/// InvalidInput when the parameters are infeasible or no instance was found.
inline Digraph random_eulerian_digraph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n <= 1) {
    if (m != 0) throw InvalidInput("no arcs fit on fewer than two vertices");
    return Digraph(n, std::vector<Arc>{});
  }
  if (m > n * (n - 1))
    throw InvalidInput("a simple digraph on " + std::to_string(n) + " vertices has at most " +
                       std::to_string(n * (n - 1)) + " arcs");
  if (m < n) throw InvalidInput("a strongly connected digraph on " + std::to_string(n) + " vertices needs at least " +
                                std::to_string(n) + " arcs");

  if (m + 1 == n * (n - 1))
    throw InvalidInput("removing a single arc from the complete digraph leaves it unbalanced");

  std::mt19937_64 rng(seed);
  constexpr int kRestarts = 400;
  constexpr int kAttempts = 400;
  std::vector<Vertex> verts(n);
  for (Vertex v = 0; v < n; ++v) verts[v] = v;

  for (int restart = 0; restart < kRestarts; ++restart) {
    std::set<Arc> used;
    int attempts = 0;
    while (used.size() < m && attempts < kAttempts) {
      ++attempts;
      const std::size_t left = m - used.size();
      const std::size_t max_len = std::min(n, left);
      if (max_len < 2) break;
      const std::size_t len = 2 + detail::uniform_below(rng, max_len - 1);
      if (left - len == 1) continue;
      detail::shuffle(verts, rng);
      std::vector<Arc> cycle;
      for (std::size_t i = 0; i < len; ++i) cycle.push_back({verts[i], verts[(i + 1) % len]});
      if (std::any_of(cycle.begin(), cycle.end(), [&](const Arc& a) { return used.contains(a); })) continue;
      used.insert(cycle.begin(), cycle.end());
    }
    if (used.size() != m) continue;
    Digraph g(n, std::vector<Arc>(used.begin(), used.end()));
    if (is_eulerian(g) && is_strongly_connected(g)) return g;
  }
  throw InvalidInput("could not build a strongly connected Eulerian digraph with n=" + std::to_string(n) +
                     " and " + std::to_string(m) + " arcs");
}

}  // namespace chipfas
