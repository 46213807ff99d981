#include <catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace chipfas;
using fixtures::c3;
using fixtures::d2;
using fixtures::k3;

namespace {

Configuration cfg(const Digraph& g, std::initializer_list<Chips> v) {
  return Configuration::from_nonsink(g.vertex_count(), 0, v);
}

std::vector<std::int64_t> matrix(const ReducedLaplacian& l) { return l.entries; }

}  // namespace

TEST_CASE("reduced laplacian") {
  CHECK(matrix(reduced_laplacian(k3(), 0)) == std::vector<std::int64_t>{-2, 1, 1, -2});
  CHECK(matrix(reduced_laplacian(c3(), 0)) == std::vector<std::int64_t>{-1, 1, 0, -1});
  CHECK(matrix(reduced_laplacian(d2(), 0)) == std::vector<std::int64_t>{-1});
  CHECK(reduced_laplacian(k3(), 1).order == std::vector<Vertex>{0, 2});
}

TEST_CASE("group order") {
  CHECK(group_order(k3(), 0) == 3);
  CHECK(group_order(c3(), 0) == 1);
  CHECK(group_order(d2(), 0) == 1);
  // 1 and 2 cannot reach 0
  CHECK_THROWS_AS(group_order(Digraph(3, {{0, 1}, {1, 2}, {2, 1}}), 0), PreconditionError);
}

TEST_CASE("determinant matches the Leibniz formula") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 7;
    auto g = oracle::random_global_sink_digraph(rng, n, 0);
    CHECK(determinant(reduced_laplacian(g, 0)) == oracle::leibniz_det(oracle::laplacian(g, 0)));
  }
}

TEST_CASE("probes") {
  CHECK(beta(k3(), 0) == cfg(k3(), {1, 1}));
  CHECK(beta(c3(), 0) == cfg(c3(), {1, 0}));
  CHECK(beta(d2(), 0) == cfg(d2(), {1}));
  CHECK(epsilon(k3(), 0) == cfg(k3(), {3, 3}));
  CHECK(epsilon(c3(), 0) == cfg(c3(), {2, 2}));
  CHECK(epsilon(d2(), 0) == cfg(d2(), {2}));
  CHECK_THROWS_AS(beta(fixtures::p1(), 1), PreconditionError);
}

TEST_CASE("recurrence examples") {
  CHECK(is_recurrent(k3(), cfg(k3(), {1, 1})));
  CHECK_FALSE(is_recurrent(k3(), cfg(k3(), {0, 0})));
  CHECK(is_recurrent(c3(), cfg(c3(), {0, 0})));
  CHECK_THROWS_AS(is_recurrent(k3(), cfg(k3(), {2, 0})), UnstableConfiguration);
  try {
    is_recurrent(k3(), cfg(k3(), {0, 2}));
  } catch (const UnstableConfiguration& e) {
    CHECK(e.active_vertex() == 2);
  }
}

TEST_CASE("burning sequences") {
  CHECK(burning_sequence(k3(), cfg(k3(), {1, 1})) == std::vector<Vertex>{1, 2});
  CHECK(burning_sequence(c3(), cfg(c3(), {0, 0})) == std::vector<Vertex>{1, 2});
  CHECK(burning_sequence(k3(), cfg(k3(), {1, 0})) == std::vector<Vertex>{1, 2});
  try {
    burning_sequence(k3(), cfg(k3(), {0, 0}));
    FAIL("expected NotRecurrent");
  } catch (const NotRecurrent& e) {
    CHECK(e.unburnt() == std::vector<Vertex>{1, 2});
  }
}

TEST_CASE("firing graphs") {
  const ArcSet expected{{0, 1}, {0, 2}, {1, 2}};
  CHECK(firing_graph(k3(), cfg(k3(), {1, 0}), {1, 2}).arcs == expected);
  CHECK(firing_graph(c3(), cfg(c3(), {0, 0}), {1, 2}).arcs == ArcSet{{0, 1}, {1, 2}});
  CHECK(firing_graph(k3(), cfg(k3(), {1, 1}), {1, 2}).arcs == expected);
  CHECK_THROWS_AS(firing_graph(k3(), cfg(k3(), {1, 0}), {2, 1}), PreconditionError);
}

TEST_CASE("configurations from rooted arc sets") {
  CHECK(config_from_arcset(k3(), {{0, 1}, {0, 2}, {1, 2}}, 0) == cfg(k3(), {1, 0}));
  CHECK(config_from_arcset(k3(), {{0, 1}, {0, 2}, {2, 1}}, 0) == cfg(k3(), {0, 1}));
  CHECK(config_from_arcset(c3(), {{0, 1}, {1, 2}}, 0) == cfg(c3(), {0, 0}));
  CHECK_THROWS_AS(config_from_arcset(k3(), {{1, 2}}, 0), PreconditionError);
}

TEST_CASE("minimality examples") {
  CHECK(is_minimal_recurrent(k3(), cfg(k3(), {1, 0})));
  CHECK_FALSE(is_minimal_recurrent(k3(), cfg(k3(), {1, 1})));
  CHECK(is_minimal_recurrent(c3(), cfg(c3(), {0, 0})));
  CHECK_FALSE(is_minimal_recurrent(k3(), cfg(k3(), {0, 0})));
}

TEST_CASE("enumeration examples") {
  auto rec = enumerate_recurrent(k3(), 0);
  CHECK(rec == std::vector<Configuration>{cfg(k3(), {0, 1}), cfg(k3(), {1, 0}), cfg(k3(), {1, 1})});
  CHECK(enumerate_recurrent(c3(), 0) == std::vector<Configuration>{cfg(c3(), {0, 0})});
  CHECK(enumerate_recurrent(d2(), 0) == std::vector<Configuration>{cfg(d2(), {0})});
  CHECK(enumerate_minimal_recurrent(k3(), 0) == std::vector<Configuration>{cfg(k3(), {0, 1}), cfg(k3(), {1, 0})});
  CHECK(enumerate_minimal_recurrent(c3(), 0) == std::vector<Configuration>{cfg(c3(), {0, 0})});
  CHECK(enumerate_minimal_recurrent(d2(), 0) == std::vector<Configuration>{cfg(d2(), {0})});
  CHECK_THROWS_AS(enumerate_recurrent(random_eulerian_digraph(8, 40, 1), 0, 100), CapExceeded);
}

TEST_CASE("minimum recurrent examples") {
  auto k = minrec_exact(k3(), 0);
  CHECK(k.chips == 1);
  CHECK(k.max_acyclic == 3);
  CHECK(is_minimal_recurrent(k3(), k.witness));
  CHECK(k.witness.total() == 1);
  CHECK(minrec_exact(c3(), 0).chips == 0);
  CHECK(minrec_exact(d2(), 0).chips == 0);
  CHECK(minrec_brute(k3(), 0).chips == 1);
}

TEST_CASE("group operation on K3") {
  CHECK(canonical_recurrent(k3(), cfg(k3(), {0, 0})) == cfg(k3(), {1, 1}));
  CHECK(canonical_recurrent(k3(), cfg(k3(), {1, 0})) == cfg(k3(), {1, 0}));
  CHECK(canonical_recurrent(c3(), cfg(c3(), {0, 0})) == cfg(c3(), {0, 0}));
  CHECK(group_add(k3(), cfg(k3(), {1, 1}), cfg(k3(), {1, 1})) == cfg(k3(), {1, 1}));
  CHECK(group_add(k3(), cfg(k3(), {1, 1}), cfg(k3(), {1, 0})) == cfg(k3(), {1, 0}));
  CHECK(group_add(k3(), cfg(k3(), {1, 0}), cfg(k3(), {0, 1})) == cfg(k3(), {1, 1}));
  CHECK(group_add(k3(), cfg(k3(), {1, 0}), cfg(k3(), {1, 0})) == cfg(k3(), {0, 1}));
}

TEST_CASE("group laws on random eulerian digraphs") {
  auto suite = fixtures::eulerian_suite(15, 5, 10, 300);
  for (const auto& [name, g] : suite) {
    INFO(name);
    const Vertex s = 0;
    auto rec = enumerate_recurrent(g, s);
    // identity: the unique recurrent e with e + e ~ e
    std::vector<Configuration> identities;
    for (const auto& e : rec)
      if (group_add(g, e, e) == e) identities.push_back(e);
    REQUIRE(identities.size() == 1);
    const auto& e = identities.front();
    for (const auto& a : rec) {
      CHECK(group_add(g, a, e) == a);
      std::size_t inverses = 0;
      for (const auto& b : rec) {
        CHECK(group_add(g, a, b) == group_add(g, b, a));
        inverses += group_add(g, a, b) == e;
      }
      CHECK(inverses == 1);
    }
    // every stable configuration is equivalent to exactly one recurrent one
    oracle::Game game(g, s);
    for (const auto& v : game.all_stable()) {
      Configuration c(g.vertex_count(), s);
      for (Vertex x = 0; x < g.vertex_count(); ++x)
        if (x != s) c.set(x, v[x]);
      auto canon = canonical_recurrent(g, c);
      CHECK(std::count(rec.begin(), rec.end(), canon) == 1);
      CHECK(equivalent(g, c, canon));
    }
  }
}

TEST_CASE("recurrence tests agree with the accessibility oracle") {
  auto suite = fixtures::eulerian_suite(25, 5, 12, 500);
  for (const auto& [name, g] : suite) {
    INFO(name);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      oracle::Game game(g, static_cast<int>(s));
      const auto truth = game.recurrent();
      const auto minimal = oracle::minimal_elements(truth);
      for (const auto& v : game.all_stable()) {
        Configuration c(g.vertex_count(), s);
        for (Vertex x = 0; x < g.vertex_count(); ++x)
          if (x != s) c.set(x, v[x]);
        const bool r = truth.contains(v);
        CHECK(is_recurrent(g, c, RecurrenceTest::Beta) == r);
        CHECK(is_recurrent(g, c, RecurrenceTest::Epsilon) == r);
        CHECK(is_recurrent(g, c, RecurrenceTest::EpsilonOutdegree) == r);
        CHECK(burn(g, c).recurrent == r);
        CHECK(is_minimal_recurrent(g, c) == minimal.contains(v));
      }
    }
  }
}

TEST_CASE("epsilon test on digraphs that are not eulerian") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    auto g = oracle::random_global_sink_digraph(rng, n, 0);
    oracle::Game game(g, 0);
    const auto truth = game.recurrent();
    const auto minimal = oracle::minimal_elements(truth);
    std::size_t count = 0;
    for (const auto& v : game.all_stable()) {
      Configuration c(g.vertex_count(), 0);
      for (Vertex x = 1; x < g.vertex_count(); ++x) c.set(x, v[x]);
      CHECK(is_recurrent(g, c) == truth.contains(v));
      CHECK(is_minimal_recurrent(g, c) == minimal.contains(v));
      count += truth.contains(v);
    }
    CHECK(enumerate_recurrent(g, 0).size() == count);
    CHECK(group_order(g, 0) == count);
    CHECK(minimal_recurrent_by_filter(g, 0).size() == minimal.size());
  }
}

TEST_CASE("minimal recurrent configurations and maximal rooted sets") {
  auto suite = fixtures::eulerian_suite(20, 5, 12, 700);
  for (const auto& [name, g] : suite) {
    INFO(name);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      auto mins = enumerate_minimal_recurrent(g, s);
      CHECK(mins.size() == enumerate_rooted_maximal(g, s).size());
      for (const auto& c : mins) {
        auto f = firing_graph(g, c, burning_sequence(g, c));
        CHECK(config_from_arcset(g, f.arcs, s) == c);
        CHECK(c.total() == static_cast<Chips>(g.arc_count() - g.outdegree(s) - f.arcs.size()));
      }
      auto m = minrec_exact(g, s);
      CHECK(m.chips == minrec_brute(g, s).chips);
      CHECK(is_minimal_recurrent(g, m.witness));
      std::size_t sum = 0;
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (v != s) sum += g.outdegree(v);
      CHECK(static_cast<std::size_t>(m.chips) + m.max_acyclic == sum);
    }
  }
}

TEST_CASE("minrec preconditions") {
  CHECK_THROWS_AS(minrec_exact(fixtures::p1(), 1), PreconditionError);
  CHECK(minrec_brute(fixtures::p1(), 1).chips == 0);
}
