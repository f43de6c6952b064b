#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwprod/modular_graph.hpp"
#include "gwprod/random_graphs.hpp"
#include "oracles.hpp"

using namespace gwprod;

namespace {

MarkedGraph single_vertex(int genus, int tails, std::int64_t beta) {
  MarkedGraph g;
  g.monoid = DegreeMonoid::free(1);
  const int v = g.graph.add_vertex(genus);
  for (int i = 1; i <= tails; ++i) g.graph.add_tail(v, std::to_string(i));
  g.marking[v] = CurveClass({beta});
  return g;
}

}  // namespace

TEST_CASE("stability of single vertices") {
  CHECK(validate(single_vertex(0, 3, 0)).stable());
  const auto r = validate(single_vertex(0, 2, 0));
  REQUIRE(r.unstable_vertices.size() == 1);
  CHECK(validate(single_vertex(1, 1, 0)).stable());
  CHECK(validate(single_vertex(0, 2, 1)).stable());
  CHECK(validate(single_vertex(0, 0, 1)).stable());
  CHECK_FALSE(validate_modular(single_vertex(0, 2, 1).graph).stable());
}

TEST_CASE("malformed graphs") {
  ModularGraph g;
  const int v = g.add_vertex(0);
  g.add_tail(v, "x");
  g.add_tail(v, "x");
  CHECK_THROWS_AS(g.check_well_formed(), MalformedGraphError);
  CHECK_THROWS_AS(g.add_vertex(-1), PreconditionError);
  CHECK_THROWS_AS(g.add_edge(v, 17), MalformedGraphError);

  const nlohmann::json dangling = {{"vertices", {{{"id", "v1"}}}}, {"edges", {{"v1", "v9"}}}};
  CHECK_THROWS_AS(marked_graph_from_json(dangling, DegreeMonoid::free(1)), MalformedGraphError);
  const nlohmann::json dup = {{"vertices", {{{"id", "v1"}}, {{"id", "v1"}}}}};
  CHECK_THROWS_AS(marked_graph_from_json(dup, DegreeMonoid::free(1)), MalformedGraphError);
}

TEST_CASE("contracting an edge adds genus and marking") {
  MarkedGraph g;
  g.monoid = DegreeMonoid::free(1);
  const int a = g.graph.add_vertex(0);
  const int b = g.graph.add_vertex(1);
  const auto [f, h] = g.graph.add_edge(a, b);
  g.graph.add_tail(a, "1");
  g.graph.add_tail(b, "2");
  g.marking = {{a, CurveClass({1})}, {b, CurveClass({0})}};
  const auto c = contract_edge(g, f);
  REQUIRE(c.graph.num_vertices() == 1);
  CHECK(c.graph.genus(a) == 1);
  CHECK(c.at(a) == CurveClass({1}));
  CHECK(c.graph.valence(a) == 2);
  const auto d = contract_edge(g, h);
  CHECK(d.graph.has_vertex(b));
  CHECK_FALSE(d.graph.has_vertex(a));
}

TEST_CASE("contracting a loop raises genus") {
  MarkedGraph g = single_vertex(0, 1, 0);
  const int v = g.graph.vertex_ids().front();
  const auto [f, h] = g.graph.add_edge(v, v);
  const auto c = contract_edge(g, h);
  CHECK(c.graph.genus(v) == 1);
  CHECK(c.graph.num_edges() == 0);
  CHECK(c.graph.total_genus() == g.graph.total_genus());
  CHECK_THROWS(contract_edge(g, c.graph.tails().front() + 100));
  (void)f;
}

TEST_CASE("moduli dimension") {
  CHECK(moduli_dimension(single_vertex(0, 5, 0).graph) == 2);
  CHECK(moduli_dimension(single_vertex(1, 1, 0).graph) == 1);
  ModularGraph g;
  const int a = g.add_vertex(0);
  const int b = g.add_vertex(0);
  g.add_edge(a, b);
  g.add_tail(a, "1");
  g.add_tail(a, "2");
  g.add_tail(b, "3");
  g.add_tail(b, "4");
  CHECK(moduli_dimension(g) == 0);
}

TEST_CASE("canonical form ignores internal ids") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_stable_graph(rng, DegreeMonoid::free(2));
    const auto h = relabel_ids(g, rng);
    CHECK(canonicalize(g).form == canonicalize(h).form);
  }
}

TEST_CASE("canonical form separates genus labels") {
  auto a = single_vertex(0, 3, 0);
  auto b = single_vertex(1, 3, 0);
  CHECK_FALSE(canonicalize(a).form == canonicalize(b).form);
}

TEST_CASE("parallel edges with distinct tails have two automorphisms") {
  MarkedGraph g;
  g.monoid = DegreeMonoid::free(1);
  const int a = g.graph.add_vertex(0);
  const int b = g.graph.add_vertex(0);
  g.graph.add_edge(a, b);
  g.graph.add_edge(a, b);
  g.graph.add_tail(a, "1");
  g.graph.add_tail(b, "2");
  g.marking = {{a, CurveClass({0})}, {b, CurveClass({0})}};
  CHECK(canonicalize(g).automorphisms == 2);
  CHECK(oracle::count_automorphisms(g) == 2);
}

TEST_CASE("automorphism counts agree with exhaustive search") {
  std::mt19937_64 rng(11);
  RandomGraphOptions o;
  o.max_extra_tails = 1;
  o.max_extra_edges = 3;
  o.zero_marking = 0.8;
  o.max_degree = 1;
  for (int i = 0; i < 300; ++i) {
    const auto g = random_stable_graph(rng, DegreeMonoid::free(1), o);
    INFO(marked_graph_to_json(g).dump());
    CHECK(canonicalize(g).automorphisms == oracle::count_automorphisms(g));
  }
}

TEST_CASE("loops contribute reflections") {
  MarkedGraph g = single_vertex(0, 1, 0);
  const int v = g.graph.vertex_ids().front();
  g.graph.add_edge(v, v);
  g.graph.add_edge(v, v);
  // 2! * 2^2
  CHECK(canonicalize(g).automorphisms == 8);
  CHECK(oracle::count_automorphisms(g) == 8);
}

TEST_CASE("from_canonical round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_stable_graph(rng, DegreeMonoid::free(2));
    const auto c = canonicalize(g);
    const auto back = from_canonical(c.form, g.monoid);
    CHECK(canonicalize(back).form == c.form);
    CHECK(canonicalize(back).automorphisms == c.automorphisms);
  }
}

TEST_CASE("graph json round trip") {
  const nlohmann::json j = {
      {"vertices", {{{"id", "v1"}, {"genus", 0}, {"marking", {2, 1}}}, {{"id", "v2"}, {"genus", 1}}}},
      {"edges", nlohmann::json::array({nlohmann::json::array({"v1", "v2"})})},
      {"tails", {{{"label", "x3"}, {"vertex", "v1"}}}}};
  const auto g = marked_graph_from_json(j, DegreeMonoid::free(2));
  CHECK(g.graph.num_vertices() == 2);
  CHECK(g.graph.num_edges() == 1);
  CHECK(g.at(*g.graph.vertex_with_name("v2")).is_zero());
  const auto back = marked_graph_from_json(marked_graph_to_json(g), DegreeMonoid::free(2));
  CHECK(back == g);
}
