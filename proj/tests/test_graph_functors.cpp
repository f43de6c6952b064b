#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwprod/graph_functors.hpp"
#include "gwprod/random_graphs.hpp"
#include "oracles.hpp"

using namespace gwprod;

namespace {

const DegreeMonoid kQuadric = DegreeMonoid::p1xp1();

MonoidMap first() { return MonoidMap::projection(kQuadric, DegreeMonoid::p1(), 0); }
MonoidMap second() { return MonoidMap::projection(kQuadric, DegreeMonoid::p1(), 1); }

struct Chain {
  MarkedGraph g;
  int v1, v2, v3;
  int a, b;  // edge flags, a on v1, b on v2
};

// v1 -a- v2 -b- v3 with tails 1,2 on v1 and 3,4 on v3
Chain chain(CurveClass m1, CurveClass m2, CurveClass m3) {
  Chain c;
  c.g.monoid = kQuadric;
  c.v1 = c.g.graph.add_vertex(0);
  c.v2 = c.g.graph.add_vertex(0);
  c.v3 = c.g.graph.add_vertex(0);
  c.a = c.g.graph.add_edge(c.v1, c.v2, "a").first;
  c.b = c.g.graph.add_edge(c.v2, c.v3, "b").first;
  c.g.graph.add_tail(c.v1, "1");
  c.g.graph.add_tail(c.v1, "2");
  c.g.graph.add_tail(c.v3, "3");
  c.g.graph.add_tail(c.v3, "4");
  c.g.marking = {{c.v1, m1}, {c.v2, m2}, {c.v3, m3}};
  return c;
}

}  // namespace

TEST_CASE("destabilized end vertex slides its tail") {
  MarkedGraph g;
  g.monoid = kQuadric;
  const int v1 = g.graph.add_vertex(0);
  const int v2 = g.graph.add_vertex(0);
  const int e = g.graph.add_edge(v1, v2, "e").first;
  g.graph.add_tail(v1, "1");
  g.graph.add_tail(v1, "2");
  const int t3 = g.graph.add_tail(v2, "3");
  g.marking = {{v1, CurveClass({1, 0})}, {v2, CurveClass({0, 1})}};

  const auto st = pushforward_stabilize(g, first());
  REQUIRE(st.graph.graph.num_vertices() == 1);
  CHECK(st.graph.graph.has_vertex(v1));
  CHECK(st.graph.at(v1) == CurveClass({1}));
  CHECK(st.graph.graph.valence(v1) == 3);
  const auto tail3 = st.graph.graph.tail_with_label("3");
  REQUIRE(tail3);
  const auto& chain = st.morphism.long_cells.at(Cell::tail(*tail3));
  CHECK(chain == std::vector<Cell>{Cell::edge(e), Cell::tail(t3)});
  CHECK(st.morphism.orbit.at(Cell::tail(*tail3)) == Cell::tail(t3));
  st.morphism.check_invariants();

  SUBCASE("the zero map gives the same contraction") {
    const auto abs = absolute_stabilization(g);
    CHECK(abs.graph.num_vertices() == 1);
    CHECK(abs.graph.tails().size() == 3);
    CHECK(abs.graph == st.graph.graph);
  }
}

TEST_CASE("identity map fixes a stable graph") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_stable_graph(rng, kQuadric);
    const auto st = pushforward_stabilize(g, MonoidMap::identity(kQuadric));
    CHECK(st.graph == g);
    CHECK(st.morphism.long_cells.size() == cells(g.graph).size());
    for (const auto& [c, ch] : st.morphism.long_cells) {
      CHECK(ch == std::vector<Cell>{c});
      CHECK(st.morphism.orbit.at(c) == c);
    }
  }
}

TEST_CASE("middle vertex of a chain becomes a long edge") {
  auto c = chain(CurveClass({1, 0}), CurveClass({0, 1}), CurveClass({1, 0}));
  const auto st = pushforward_stabilize(c.g, first());
  REQUIRE(st.graph.graph.num_vertices() == 2);
  REQUIRE(st.graph.graph.num_edges() == 1);
  const int e = st.graph.graph.edges().front().first;
  CHECK(st.morphism.long_cells.at(Cell::edge(e)) == std::vector<Cell>{Cell::edge(c.a), Cell::edge(c.b)});
  CHECK(st.morphism.orbit.at(Cell::edge(e)) == Cell::edge(c.a));
  CHECK(st.morphism.image_of(Cell::edge(c.b)) == Cell::edge(e));
}

TEST_CASE("absolute stabilization") {
  MarkedGraph g;
  g.monoid = DegreeMonoid::p1();
  const int v = g.graph.add_vertex(0);
  g.graph.add_tail(v, "1");
  g.graph.add_tail(v, "2");
  g.marking[v] = CurveClass({1});
  CHECK_THROWS_AS(absolute_stabilization(g), NoStableModelError);
  g.graph.add_tail(v, "3");
  const auto st = absolute_stabilization(g);
  CHECK(st.graph == g.graph);
}

TEST_CASE("no stable model for lone genus or lone tails") {
  MarkedGraph g;
  g.monoid = DegreeMonoid::p1();
  const int v = g.graph.add_vertex(0);
  const int w = g.graph.add_vertex(0);
  g.graph.add_edge(v, w);
  g.graph.add_tail(w, "1");
  g.marking = {{v, CurveClass({1})}, {w, CurveClass({1})}};
  // forgetting the class leaves a chain with a single tail
  CHECK_THROWS_AS(pushforward_stabilize(g, MonoidMap::to_point(g.monoid)), NoStableModelError);
}

TEST_CASE("stabilization drops components that carry nothing") {
  MarkedGraph g;
  g.monoid = DegreeMonoid::p1();
  const int v = g.graph.add_vertex(0);
  const int w = g.graph.add_vertex(0);
  const int e = g.graph.add_edge(v, w).first;
  for (int i = 1; i <= 3; ++i) g.graph.add_tail(v, std::to_string(i));
  g.marking = {{v, CurveClass({0})}, {w, CurveClass({1})}};
  const auto st = absolute_stabilization(g);
  CHECK(st.graph.num_vertices() == 1);
  CHECK(st.morphism.dropped == std::vector<Cell>{Cell::edge(e)});
  st.morphism.check_invariants();
}

TEST_CASE("psi of the identity object") {
  auto c = chain(CurveClass({1, 1}), CurveClass({1, 1}), CurveClass({1, 1}));
  const auto [l, r] = psi_image(c.g.graph, {MarkedOver{c.g, identity_morphism(c.g)}}, {first(), second()});
  REQUIRE(l.size() == 1);
  REQUIRE(r.size() == 1);
  CHECK(l.front().graph == pushforward_stabilize(c.g, first()).graph);
  CHECK(r.front().graph.at(c.v2) == CurveClass({1}));
  for (const auto& [cell, ch] : l.front().morphism.long_cells) CHECK(ch == std::vector<Cell>{cell});
}

TEST_CASE("psi composes orbit maps through a collapsed vertex") {
  // v2 is unstable without its class, so tau is the two-vertex graph with
  // long edge (a, b); p_V also collapses v2, p_W keeps it.
  auto c = chain(CurveClass({1, 1}), CurveClass({0, 1}), CurveClass({1, 0}));
  const auto base = absolute_stabilization(c.g);
  REQUIRE(base.graph.num_vertices() == 2);
  const int e = base.graph.edges().front().first;
  CHECK(base.morphism.orbit.at(Cell::edge(e)) == Cell::edge(c.a));

  const auto [l, r] = psi_image(base.graph, {MarkedOver{c.g, base.morphism}}, {first(), second()});
  const auto& v = l.front();
  CHECK(v.graph.graph.num_vertices() == 2);
  CHECK(v.morphism.long_cells.at(Cell::edge(e)) == std::vector<Cell>{Cell::edge(e)});
  CHECK(v.morphism.orbit.at(Cell::edge(e)) == Cell::edge(e));

  const auto& w = r.front();
  CHECK(w.graph.graph.num_vertices() == 3);
  CHECK(w.morphism.long_cells.at(Cell::edge(e)) == std::vector<Cell>{Cell::edge(c.a), Cell::edge(c.b)});
  CHECK(w.morphism.orbit.at(Cell::edge(e)) == Cell::edge(c.a));
}

TEST_CASE("psi of an empty list") {
  auto c = chain(CurveClass({1, 1}), CurveClass({1, 1}), CurveClass({1, 1}));
  const auto [l, r] = psi_image(c.g.graph, {}, {first(), second()});
  CHECK(l.empty());
  CHECK(r.empty());
}

TEST_CASE("psi rejects a morphism onto another graph") {
  auto c = chain(CurveClass({1, 1}), CurveClass({1, 1}), CurveClass({1, 1}));
  auto other = c.g.graph;
  other.add_tail(other.vertex_ids().front(), "extra");
  CHECK_THROWS_AS(psi_image(other, {MarkedOver{c.g, identity_morphism(c.g)}}, {first(), second()}),
                  PreconditionError);
}

namespace {

struct Split {
  ModularGraph sigma;
  int flag;
  int v1, v2;
};

Split two_by_two(int tails_on_v2 = 2) {
  Split s;
  s.v1 = s.sigma.add_vertex(0);
  s.v2 = s.sigma.add_vertex(0);
  s.flag = s.sigma.add_edge(s.v1, s.v2).first;
  s.sigma.add_tail(s.v1, "1");
  s.sigma.add_tail(s.v1, "2");
  for (int i = 0; i < tails_on_v2; ++i) s.sigma.add_tail(s.v2, std::to_string(3 + i));
  return s;
}

}  // namespace

TEST_CASE("splitting a degree-two vertex") {
  auto s = two_by_two();
  const MarkedGraph tau{contract_edge(s.sigma, s.flag), DegreeMonoid::p1(), {{s.v1, CurveClass({2})}}};
  const auto lifts = splitting_pullback({s.sigma, s.flag}, tau);
  REQUIRE(lifts.size() == 3);
  CHECK(lifts[0].at(s.v1) == CurveClass({0}));
  CHECK(lifts[0].at(s.v2) == CurveClass({2}));
  CHECK(lifts[1].at(s.v1) == CurveClass({1}));
  CHECK(lifts[2].at(s.v1) == CurveClass({2}));
  CHECK(lifts[2].at(s.v2) == CurveClass({0}));
  for (const auto& x : lifts) CHECK(contract_edge(x, s.flag) == tau);
}

TEST_CASE("splitting a (1,1) vertex") {
  auto s = two_by_two();
  const MarkedGraph tau{contract_edge(s.sigma, s.flag), kQuadric, {{s.v1, CurveClass({1, 1})}}};
  CHECK(splitting_pullback({s.sigma, s.flag}, tau).size() == 4);
}

TEST_CASE("splitting filters unstable assignments") {
  auto s = two_by_two(1);
  const MarkedGraph tau{contract_edge(s.sigma, s.flag), DegreeMonoid::p1(), {{s.v1, CurveClass({2})}}};
  const auto lifts = splitting_pullback({s.sigma, s.flag}, tau);
  CHECK(lifts.size() == 2);
  for (const auto& x : lifts) CHECK_FALSE(x.at(s.v2).is_zero());
}

TEST_CASE("splitting preconditions") {
  auto s = two_by_two();
  const MarkedGraph tau{contract_edge(s.sigma, s.flag), DegreeMonoid::p1(), {{s.v1, CurveClass({1})}}};
  const int tail = s.sigma.tails().front();
  CHECK_THROWS_AS(splitting_pullback({s.sigma, tail}, tau), PreconditionError);
  const MarkedGraph wrong = MarkedGraph::unmarked(s.sigma, DegreeMonoid::p1());
  CHECK_THROWS_AS(splitting_pullback({s.sigma, s.flag}, wrong), PreconditionError);
  ModularGraph loop;
  const int v = loop.add_vertex(0);
  const int lf = loop.add_edge(v, v).first;
  loop.add_tail(v, "1");
  CHECK_THROWS_AS(splitting_pullback({loop, lf}, MarkedGraph::unmarked(contract_edge(loop, lf), DegreeMonoid::p1())),
                  PreconditionError);
}

TEST_CASE("splitting counts against exhaustive enumeration") {
  for (int tu = 0; tu <= 2; ++tu)
    for (int tv = 0; tv <= 2; ++tv)
      for (int gu = 0; gu <= 1; ++gu) {
        ModularGraph sigma;
        const int u = sigma.add_vertex(gu);
        const int v = sigma.add_vertex(0);
        const int f = sigma.add_edge(u, v).first;
        for (int i = 0; i < tu; ++i) sigma.add_tail(u, "u" + std::to_string(i));
        for (int i = 0; i < tv; ++i) sigma.add_tail(v, "v" + std::to_string(i));
        const auto target = contract_edge(sigma, f);
        for (const auto& beta : classes_below(CurveClass({3, 3}))) {
          const MarkedGraph tau{target, kQuadric, {{u, beta}}};
          const bool u_needs = 2 * gu - 2 + tu + 1 <= 0;
          const bool v_needs = tv + 1 - 2 <= 0;
          CHECK(splitting_pullback({sigma, f}, tau).size() == oracle::brute_force_lifts(beta.coords(), u_needs, v_needs));
        }
      }
}

TEST_CASE("adding tails") {
  MarkedGraph g;
  g.monoid = DegreeMonoid::p1();
  const int v = g.graph.add_vertex(0);
  g.graph.add_tail(v, "1");
  g.graph.add_tail(v, "2");
  g.marking[v] = CurveClass({0});
  CHECK_FALSE(validate(g).stable());
  const auto h = add_tails(g, {{"3", v}});
  CHECK(validate(h).stable());
  CHECK(h.graph.tails().size() == 3);
  CHECK(add_tails(h, {{"4", v}}).graph.tails().size() == 4);
  CHECK(add_tails(g, {}) == g);
  CHECK_THROWS_AS(add_tails(g, {{"1", v}}), PreconditionError);
}

TEST_CASE("functoriality and confluence on random graphs") {
  std::mt19937_64 rng(99);
  const auto a = DegreeMonoid::free(3);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const auto g = random_stable_graph(rng, a);
    const MonoidMap f(a, kQuadric, {{1, 0, 0}, {0, 1, 1}});
    try {
      const auto direct = pushforward_stabilize(g, compose(first(), f));
      const auto two = pushforward_stabilize(pushforward_stabilize(g, f).graph, first());
      CHECK(canonicalize(direct.graph).form == canonicalize(two.graph).form);
      const auto shuffled = pushforward_stabilize(g, compose(first(), f), &rng);
      CHECK(canonicalize(direct.graph).form == canonicalize(shuffled.graph).form);
      ++compared;
    } catch (const NoStableModelError&) {
      CHECK_THROWS_AS(pushforward_stabilize(pushforward_stabilize(g, f).graph, first()), NoStableModelError);
    }
  }
  CHECK(compared > 200);
}

TEST_CASE("morphism json names cells") {
  auto c = chain(CurveClass({1, 0}), CurveClass({0, 1}), CurveClass({1, 0}));
  const auto j = morphism_to_json(pushforward_stabilize(c.g, first()).morphism);
  CHECK(j.contains("long_cells"));
  CHECK(j.dump().find("\"a\"") != std::string::npos);
}
