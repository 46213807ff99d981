#pragma once

// Simple directed graphs on vertices 0..n-1, arc subsets, vertex subsets and
// the structural predicates used by the chip-firing and feedback-arc-set code.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chipfas/error.hpp"

namespace chipfas {

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Arc& a) {
  return os << a.tail << "->" << a.head;
}

/// A set of arcs kept sorted in ascending (tail, head) order.
class ArcSet {
 public:
  ArcSet() = default;
  ArcSet(std::initializer_list<Arc> arcs) : arcs_(arcs) { normalize(); }
  explicit ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) { normalize(); }

  [[nodiscard]] bool contains(Arc a) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), a);
  }
  bool insert(Arc a) {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (it != arcs_.end() && *it == a) return false;
    arcs_.insert(it, a);
    return true;
  }
  bool erase(Arc a) {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (it == arcs_.end() || *it != a) return false;
    arcs_.erase(it);
    return true;
  }

  [[nodiscard]] std::size_t size() const noexcept { return arcs_.size(); }
  [[nodiscard]] bool empty() const noexcept { return arcs_.empty(); }
  [[nodiscard]] auto begin() const noexcept { return arcs_.begin(); }
  [[nodiscard]] auto end() const noexcept { return arcs_.end(); }
  [[nodiscard]] std::span<const Arc> arcs() const noexcept { return arcs_; }

  [[nodiscard]] bool is_subset_of(const ArcSet& other) const {
    return std::includes(other.arcs_.begin(), other.arcs_.end(), arcs_.begin(), arcs_.end());
  }
  [[nodiscard]] ArcSet united(const ArcSet& other) const {
    std::vector<Arc> out;
    std::set_union(arcs_.begin(), arcs_.end(), other.arcs_.begin(), other.arcs_.end(),
                   std::back_inserter(out));
    return from_sorted(std::move(out));
  }
  [[nodiscard]] ArcSet minus(const ArcSet& other) const {
    std::vector<Arc> out;
    std::set_difference(arcs_.begin(), arcs_.end(), other.arcs_.begin(), other.arcs_.end(),
                        std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  friend auto operator<=>(const ArcSet&, const ArcSet&) = default;

 private:
  static ArcSet from_sorted(std::vector<Arc> sorted) {
    ArcSet s;
    s.arcs_ = std::move(sorted);
    return s;
  }
  void normalize() {
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  }

  std::vector<Arc> arcs_;
};

/// Subset of 0..n-1 stored as a membership vector.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : in_(n, 0) {}
  VertexSet(std::size_t n, std::initializer_list<Vertex> members) : in_(n, 0) {
    for (Vertex v : members) insert(v);
  }

  [[nodiscard]] std::size_t universe() const noexcept { return in_.size(); }
  [[nodiscard]] bool contains(Vertex v) const { return v < in_.size() && in_[v] != 0; }
  bool insert(Vertex v) {
    if (v >= in_.size()) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    if (in_[v]) return false;
    in_[v] = 1;
    ++count_;
    return true;
  }
  [[nodiscard]] std::size_t size() const noexcept { return count_; }
  [[nodiscard]] bool is_full() const noexcept { return count_ == in_.size(); }
  [[nodiscard]] std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (std::size_t v = 0; v < in_.size(); ++v)
      if (in_[v]) out.push_back(static_cast<Vertex>(v));
    return out;
  }
  [[nodiscard]] bool is_subset_of(const VertexSet& other) const {
    for (std::size_t v = 0; v < in_.size(); ++v)
      if (in_[v] && !other.contains(static_cast<Vertex>(v))) return false;
    return true;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.in_ == b.in_; }

 private:
  std::vector<char> in_;
  std::size_t count_ = 0;
};

/// Simple digraph: no self-loops, no parallel arcs. Immutable once built.
class Digraph {
 public:
  Digraph() = default;

  Digraph(std::size_t n, std::vector<Arc> arcs, std::vector<std::string> names = {})
      : n_(n), arcs_(std::move(arcs)), names_(std::move(names)) {
    if (!names_.empty() && names_.size() != n_)
      throw InvalidInput("expected " + std::to_string(n_) + " vertex names, got " +
                         std::to_string(names_.size()));
    for (const Arc& a : arcs_) {
      if (a.tail >= n_ || a.head >= n_)
        throw InvalidInput("arc " + describe(a) + " has an endpoint >= n=" + std::to_string(n_));
      if (a.tail == a.head) throw InvalidInput("self-loop at vertex " + std::to_string(a.tail));
    }
    std::sort(arcs_.begin(), arcs_.end());
    for (std::size_t i = 1; i < arcs_.size(); ++i)
      if (arcs_[i] == arcs_[i - 1]) throw InvalidInput("duplicate arc " + describe(arcs_[i]));

    index_.reserve(arcs_.size());
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      const Arc& a = arcs_[i];
      index_.emplace(key(a), i);
      out_[a.tail].push_back(a.head);
      in_[a.head].push_back(a.tail);
    }
    for (auto& l : in_) std::sort(l.begin(), l.end());
  }

  Digraph(std::size_t n, std::initializer_list<Arc> arcs) : Digraph(n, std::vector<Arc>(arcs)) {}

  [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
  [[nodiscard]] std::size_t arc_count() const noexcept { return arcs_.size(); }
  /// All arcs, ascending (tail, head).
  [[nodiscard]] std::span<const Arc> arcs() const noexcept { return arcs_; }
  [[nodiscard]] ArcSet arc_set() const { return ArcSet(arcs_); }

  [[nodiscard]] std::span<const Vertex> out_neighbors(Vertex v) const { return out_.at(v); }
  [[nodiscard]] std::span<const Vertex> in_neighbors(Vertex v) const { return in_.at(v); }
  [[nodiscard]] std::size_t outdegree(Vertex v) const { return out_.at(v).size(); }
  [[nodiscard]] std::size_t indegree(Vertex v) const { return in_.at(v).size(); }

  [[nodiscard]] bool has_arc(Vertex tail, Vertex head) const {
    return index_.contains(key({tail, head}));
  }
  [[nodiscard]] bool has_arc(Arc a) const { return has_arc(a.tail, a.head); }
  /// Position of `a` in `arcs()`.
  [[nodiscard]] std::optional<std::size_t> arc_index(Arc a) const {
    auto it = index_.find(key(a));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

  void check_vertex(Vertex v) const {
    if (v >= n_)
      throw InvalidInput("vertex " + std::to_string(v) + " out of range (n=" +
                         std::to_string(n_) + ")");
  }
  /// Throws unless every member of `a` is an arc of this graph.
  void check_arcs(const ArcSet& a) const {
    for (const Arc& e : a)
      if (!has_arc(e)) throw InvalidInput("arc " + describe(e) + " is not in the graph");
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  static std::uint64_t key(Arc a) {
    return (static_cast<std::uint64_t>(a.tail) << 32) | a.head;
  }
  static std::string describe(Arc a) {
    return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
  }

  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::string> names_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

struct Degrees {
  std::size_t in = 0;
  std::size_t out = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

inline Degrees degrees(const Digraph& g, Vertex v) {
  g.check_vertex(v);
  return {g.indegree(v), g.outdegree(v)};
}

inline bool is_eulerian(const Digraph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.indegree(v) != g.outdegree(v)) return false;
  return true;
}

namespace detail {

inline std::vector<char> bfs(const Digraph& g, Vertex start, bool reverse) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : reverse ? g.in_neighbors(v) : g.out_neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace detail

inline bool is_strongly_connected(const Digraph& g) {
  if (g.vertex_count() <= 1) return true;
  auto all = [](const std::vector<char>& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c != 0; });
  };
  return all(detail::bfs(g, 0, false)) && all(detail::bfs(g, 0, true));
}

/// True when every vertex has a path to `s`. Arcs leaving `s` are irrelevant,
/// so this is the condition for `s` to be a global sink once they are cut.
inline bool reaches_all_to(const Digraph& g, Vertex s) {
  g.check_vertex(s);
  auto seen = detail::bfs(g, s, true);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

/// The vertex with out-degree 0 that every vertex can reach, if there is one.
inline std::optional<Vertex> global_sink(const Digraph& g) {
  std::optional<Vertex> candidate;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.outdegree(v) == 0) {
      if (candidate) return std::nullopt;
      candidate = v;
    }
  }
  if (candidate && reaches_all_to(g, *candidate)) return candidate;
  return std::nullopt;
}

/// Vertices reachable from `s` using only arcs of `a`.
inline VertexSet reach(const Digraph& g, const ArcSet& a, Vertex s) {
  g.check_vertex(s);
  std::vector<std::vector<Vertex>> adj(g.vertex_count());
  for (const Arc& e : a) adj.at(e.tail).push_back(e.head);
  VertexSet out(g.vertex_count());
  out.insert(s);
  std::vector<Vertex> stack{s};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v])
      if (out.insert(w)) stack.push_back(w);
  }
  return out;
}

/// Kahn elimination on G[a]. Returns a vertex order in which every arc of `a`
/// points forward, or nothing when G[a] has a directed cycle. Ties go to the
/// smallest id.
inline std::optional<std::vector<Vertex>> topological_order(std::size_t n, const ArcSet& a) {
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const Arc& e : a) {
    adj.at(e.tail).push_back(e.head);
    ++indeg.at(e.head);
  }
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    Vertex v = *it;
    ready.erase(it);
    order.push_back(v);
    for (Vertex w : adj[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

inline std::optional<std::vector<Vertex>> is_acyclic_set(const Digraph& g, const ArcSet& a) {
  g.check_arcs(a);
  return topological_order(g.vertex_count(), a);
}

struct Cuts {
  ArcSet out_cut;  // S -> V\S
  ArcSet in_cut;   // V\S -> S
};

inline Cuts cuts(const Digraph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count()) throw InvalidInput("vertex set universe mismatch");
  std::vector<Arc> out, in;
  for (const Arc& e : g.arcs()) {
    bool t = s.contains(e.tail), h = s.contains(e.head);
    if (t && !h) out.push_back(e);
    if (!t && h) in.push_back(e);
  }
  return {ArcSet(std::move(out)), ArcSet(std::move(in))};
}

/// Arcs of `g` not in `a`.
inline ArcSet complement(const Digraph& g, const ArcSet& a) { return g.arc_set().minus(a); }

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   # comment lines and blank lines are ignored
//   n m
//   @names l0 l1 ... l(n-1)      (optional, directly after the header)
//   u v                          (m lines; ids, or labels when @names is given)

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline bool is_skippable(const std::vector<std::string_view>& toks) {
  return toks.empty() || toks.front().front() == '#';
}

}  // namespace detail

inline Digraph parse_digraph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<std::string> names;
  std::unordered_map<std::string, Vertex> by_name;
  std::vector<Arc> arcs;
  std::unordered_map<std::uint64_t, std::size_t> seen;  // arc key -> line
  bool names_allowed = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (detail::is_skippable(toks)) continue;

    if (!header) {
      if (toks.size() != 2) throw ParseError(lineno, "expected header \"n m\"");
      auto n = detail::parse_uint(toks[0]);
      auto m = detail::parse_uint(toks[1]);
      if (!n || !m) throw ParseError(lineno, "header counts must be non-negative integers");
      if (*n > (1u << 30)) throw ParseError(lineno, "vertex count too large");
      header = {*n, *m};
      names_allowed = true;
      continue;
    }
    const auto [n, m] = *header;

    if (toks.front() == "@names") {
      if (!names_allowed) throw ParseError(lineno, "@names must directly follow the header");
      if (toks.size() - 1 != n)
        throw ParseError(lineno, "@names lists " + std::to_string(toks.size() - 1) +
                                     " labels for " + std::to_string(n) + " vertices");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        std::string label(toks[i]);
        if (!by_name.emplace(label, static_cast<Vertex>(i - 1)).second)
          throw ParseError(lineno, "duplicate vertex label '" + label + "'");
        names.push_back(std::move(label));
      }
      names_allowed = false;
      continue;
    }
    names_allowed = false;

    if (toks.size() != 2) throw ParseError(lineno, "expected arc line \"u v\"");
    if (arcs.size() == m) throw ParseError(lineno, "more arc lines than the declared " +
                                                       std::to_string(m));
    Vertex ends[2];
    for (int k = 0; k < 2; ++k) {
      if (auto it = by_name.find(std::string(toks[k])); it != by_name.end()) {
        ends[k] = it->second;
        continue;
      }
      auto id = detail::parse_uint(toks[k]);
      if (!id) throw ParseError(lineno, "bad vertex '" + std::string(toks[k]) + "'");
      if (*id >= n)
        throw ParseError(lineno, "vertex id " + std::to_string(*id) + " >= n=" + std::to_string(n));
      ends[k] = static_cast<Vertex>(*id);
    }
    if (ends[0] == ends[1]) throw ParseError(lineno, "self-loop at vertex " + std::to_string(ends[0]));
    std::uint64_t key = (static_cast<std::uint64_t>(ends[0]) << 32) | ends[1];
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
      throw ParseError(lineno, "duplicate arc (first seen on line " + std::to_string(it->second) + ")");
    arcs.push_back({ends[0], ends[1]});
  }
  if (!header) throw ParseError(lineno + 1, "missing header \"n m\"");
  if (arcs.size() != header->second)
    throw ParseError(lineno + 1, "expected " + std::to_string(header->second) + " arcs, found " +
                                     std::to_string(arcs.size()));
  return Digraph(header->first, std::move(arcs), std::move(names));
}

inline Digraph parse_digraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_digraph(in);
}

/// Writes `n |a|` and the arcs of `a` in ascending order.
inline void write_edge_list(std::ostream& os, std::size_t n, const ArcSet& a) {
  os << n << ' ' << a.size() << '\n';
  for (const Arc& e : a) os << e.tail << ' ' << e.head << '\n';
}

inline void write_edge_list(std::ostream& os, const Digraph& g) {
  os << g.vertex_count() << ' ' << g.arc_count() << '\n';
  if (!g.names().empty()) {
    os << "@names";
    for (const auto& s : g.names()) os << ' ' << s;
    os << '\n';
  }
  for (const Arc& e : g.arcs()) os << e.tail << ' ' << e.head << '\n';
}

inline std::string to_edge_list(const Digraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace chipfas
