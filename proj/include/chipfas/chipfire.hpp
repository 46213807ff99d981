#pragma once

// Chip-firing on a digraph G with a designated sink s. The game is played on
// G with the out-arcs of s removed: a vertex v != s is active when it holds at
// least outdeg(v) >= 1 chips, and firing it sends one chip along every
// out-arc. Chips that reach s vanish.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chipfas/digraph.hpp"
#include "chipfas/error.hpp"

namespace chipfas {

using Chips = std::int64_t;

/// Chip counts on the non-sink vertices of an n-vertex graph. The sink slot
/// is kept at zero.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::size_t n, Vertex sink) : sink_(sink), chips_(n, 0) {
    if (sink >= n) throw InvalidInput("sink " + std::to_string(sink) + " out of range");
  }

  /// Values for the non-sink vertices in ascending id order.
  static Configuration from_nonsink(std::size_t n, Vertex sink, std::span<const Chips> values) {
    Configuration c(n, sink);
    if (values.size() + 1 != n)
      throw InvalidInput("expected " + std::to_string(n - 1) + " values, got " + std::to_string(values.size()));
    auto it = values.begin();
    for (Vertex v = 0; v < n; ++v)
      if (v != sink) c.set(v, *it++);
    return c;
  }
  static Configuration from_nonsink(std::size_t n, Vertex sink, std::initializer_list<Chips> values) {
    return from_nonsink(n, sink, std::span<const Chips>(values.begin(), values.size()));
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return chips_.size(); }
  [[nodiscard]] Vertex sink() const noexcept { return sink_; }

  [[nodiscard]] Chips operator[](Vertex v) const { return chips_.at(v); }
  void set(Vertex v, Chips value) {
    if (v >= chips_.size()) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    if (v == sink_) throw InvalidInput("the sink does not hold chips");
    if (value < 0) throw InvalidInput("chip counts must be non-negative");
    chips_[v] = value;
  }

  [[nodiscard]] Chips total() const {
    Chips t = 0;
    for (Chips c : chips_)
      if (__builtin_add_overflow(t, c, &t)) throw ChipOverflow();
    return t;
  }
  [[nodiscard]] std::vector<Chips> nonsink_values() const {
    std::vector<Chips> out;
    for (Vertex v = 0; v < chips_.size(); ++v)
      if (v != sink_) out.push_back(chips_[v]);
    return out;
  }
  /// Raw storage indexed by vertex id (sink entry is zero).
  [[nodiscard]] std::span<const Chips> values() const noexcept { return chips_; }

  /// Component-wise c <= other.
  [[nodiscard]] bool dominated_by(const Configuration& other) const {
    return chips_.size() == other.chips_.size() &&
           std::equal(chips_.begin(), chips_.end(), other.chips_.begin(), std::less_equal<>{});
  }

  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  friend struct ConfigurationAccess;
  Vertex sink_ = 0;
  std::vector<Chips> chips_;
};

struct ConfigurationAccess {
  static std::vector<Chips>& raw(Configuration& c) { return c.chips_; }
};

inline std::ostream& operator<<(std::ostream& os, const Configuration& c) {
  os << '(';
  bool first = true;
  for (Vertex v = 0; v < c.vertex_count(); ++v) {
    if (v == c.sink()) continue;
    os << (first ? "" : ",") << v << ':' << c[v];
    first = false;
  }
  return os << ')';
}

/// Firings per vertex during one stabilization.
struct Odometer {
  std::vector<std::uint64_t> fires;

  [[nodiscard]] std::uint64_t total() const {
    return std::accumulate(fires.begin(), fires.end(), std::uint64_t{0});
  }
  friend bool operator==(const Odometer&, const Odometer&) = default;
};

enum class FiringPolicy { Ascending, Descending, Fifo, Lifo, Random };

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000;

struct StabilizeOptions {
  FiringPolicy policy = FiringPolicy::Ascending;
  std::uint64_t seed = 0;  // Random policy only
  std::uint64_t step_budget = kDefaultStepBudget;
  bool record_order = false;
};

struct Stabilization {
  Configuration stable;
  Odometer odometer;
  std::vector<Vertex> order;  // filled when record_order is set
};

namespace detail {

inline void require_same_shape(const Digraph& g, const Configuration& c) {
  if (c.vertex_count() != g.vertex_count())
    throw InvalidInput("configuration has " + std::to_string(c.vertex_count()) + " vertices, graph has " +
                       std::to_string(g.vertex_count()));
}

inline Chips checked_add(Chips a, Chips b) {
  Chips r;
  if (__builtin_add_overflow(a, b, &r)) throw ChipOverflow();
  return r;
}

inline bool active(const Digraph& g, const std::vector<Chips>& chips, Vertex sink, Vertex v) {
  const auto d = static_cast<Chips>(g.outdegree(v));
  return v != sink && d >= 1 && chips[v] >= d;
}

inline void fire_raw(const Digraph& g, std::vector<Chips>& chips, Vertex sink, Vertex v) {
  chips[v] -= static_cast<Chips>(g.outdegree(v));
  for (Vertex w : g.out_neighbors(v))
    if (w != sink) chips[w] = checked_add(chips[w], 1);
}

/// Holds the currently active vertices and hands them out per policy.
class ActiveQueue {
 public:
  ActiveQueue(std::size_t n, FiringPolicy p, std::uint64_t seed) : policy_(p), queued_(n, 0), rng_(seed) {}

  void push(Vertex v) {
    if (queued_[v]) return;
    queued_[v] = 1;
    switch (policy_) {
      case FiringPolicy::Ascending:
      case FiringPolicy::Descending: ordered_.insert(v); break;
      case FiringPolicy::Fifo: fifo_.push_back(v); break;
      case FiringPolicy::Lifo:
      case FiringPolicy::Random: stack_.push_back(v); break;
    }
  }
  [[nodiscard]] bool empty() const { return ordered_.empty() && fifo_.empty() && stack_.empty(); }
  Vertex pop() {
    Vertex v = 0;
    switch (policy_) {
      case FiringPolicy::Ascending: v = *ordered_.begin(); ordered_.erase(ordered_.begin()); break;
      case FiringPolicy::Descending: v = *ordered_.rbegin(); ordered_.erase(std::prev(ordered_.end())); break;
      case FiringPolicy::Fifo: v = fifo_.front(); fifo_.pop_front(); break;
      case FiringPolicy::Lifo: v = stack_.back(); stack_.pop_back(); break;
      case FiringPolicy::Random: {
        std::uniform_int_distribution<std::size_t> pick(0, stack_.size() - 1);
        std::swap(stack_[pick(rng_)], stack_.back());
        v = stack_.back();
        stack_.pop_back();
        break;
      }
    }
    queued_[v] = 0;
    return v;
  }

 private:
  FiringPolicy policy_;
  std::vector<char> queued_;
  std::set<Vertex> ordered_;
  std::deque<Vertex> fifo_;
  std::vector<Vertex> stack_;
  std::mt19937_64 rng_;
};

/// Stabilizes assuming the sink has already been validated.
inline Stabilization stabilize_unchecked(const Digraph& g, Configuration c, const StabilizeOptions& opt) {
  const std::size_t n = g.vertex_count();
  const Vertex sink = c.sink();
  auto& chips = ConfigurationAccess::raw(c);
  Stabilization out{Configuration{}, Odometer{std::vector<std::uint64_t>(n, 0)}, {}};
  ActiveQueue queue(n, opt.policy, opt.seed);
  for (Vertex v = 0; v < n; ++v)
    if (active(g, chips, sink, v)) queue.push(v);
  std::uint64_t steps = 0;
  while (!queue.empty()) {
    const Vertex v = queue.pop();
    if (++steps > opt.step_budget)
      throw StepBudgetExceeded("stabilization exceeded " + std::to_string(opt.step_budget) + " firings");
    fire_raw(g, chips, sink, v);
    ++out.odometer.fires[v];
    if (opt.record_order) out.order.push_back(v);
    if (active(g, chips, sink, v)) queue.push(v);
    for (Vertex w : g.out_neighbors(v))
      if (active(g, chips, sink, w)) queue.push(w);
  }
  out.stable = std::move(c);
  return out;
}

inline void require_global_sink(const Digraph& g, Vertex sink) {
  if (!reaches_all_to(g, sink))
    throw PreconditionError("vertex " + std::to_string(sink) +
                            " is not a global sink once its out-arcs are removed: some vertex cannot reach it");
}

}  // namespace detail

inline bool is_active(const Digraph& g, const Configuration& c, Vertex v) {
  detail::require_same_shape(g, c);
  g.check_vertex(v);
  if (v == c.sink()) throw PreconditionError("the sink never fires");
  const auto d = static_cast<Chips>(g.outdegree(v));
  return d >= 1 && c[v] >= d;
}

/// First active vertex in ascending order, if any.
inline std::optional<Vertex> first_active(const Digraph& g, const Configuration& c) {
  detail::require_same_shape(g, c);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != c.sink() && is_active(g, c, v)) return v;
  return std::nullopt;
}

inline bool is_stable(const Digraph& g, const Configuration& c) { return !first_active(g, c); }

inline Configuration fire(const Digraph& g, Configuration c, Vertex v) {
  if (v == c.sink() || !is_active(g, c, v)) throw IllegalFiring(v);
  detail::fire_raw(g, ConfigurationAccess::raw(c), c.sink(), v);
  return c;
}

/// Fires active vertices until none is left. The result and the odometer do
/// not depend on the policy.
inline Stabilization stabilize(const Digraph& g, const Configuration& c, const StabilizeOptions& opt = {}) {
  detail::require_same_shape(g, c);
  detail::require_global_sink(g, c.sink());
  return detail::stabilize_unchecked(g, c, opt);
}

inline Configuration add(const Configuration& a, const Configuration& b) {
  if (a.vertex_count() != b.vertex_count() || a.sink() != b.sink())
    throw PreconditionError("configurations live on different graphs or sinks");
  Configuration out(a.vertex_count(), a.sink());
  auto& raw = ConfigurationAccess::raw(out);
  for (Vertex v = 0; v < a.vertex_count(); ++v) raw[v] = detail::checked_add(a[v], b[v]);
  return out;
}

/// Configuration with outdeg(v) * factor chips on every non-sink vertex.
inline Configuration scaled_outdegree(const Digraph& g, Vertex sink, Chips factor) {
  Configuration c(g.vertex_count(), sink);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != sink) c.set(v, static_cast<Chips>(g.outdegree(v)) * factor);
  return c;
}

}  // namespace chipfas
