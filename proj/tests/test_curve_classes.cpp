#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gwprod/curve_classes.hpp"

using namespace gwprod;

namespace {

CurveClass cc(std::vector<std::int64_t> c) { return CurveClass(std::move(c)); }

}  // namespace

TEST_CASE("curve classes reject negative coordinates") {
  CHECK_THROWS_AS(cc({1, -1}), PreconditionError);
  CHECK(cc({0, 0}).is_zero());
  CHECK(cc({2, 3}).total() == 5);
  CHECK(cc({1, 2}) + cc({3, 0}) == cc({4, 2}));
  CHECK(cc({2, 1}).to_string() == "(2,1)");
}

TEST_CASE("adding classes of different rank fails") {
  auto a = cc({1});
  CHECK_THROWS_AS(a += cc({1, 1}), PreconditionError);
}

TEST_CASE("coordinate projections") {
  const auto m = DegreeMonoid::free(2);
  const auto line = DegreeMonoid::free(1);
  const auto p = MonoidMap::projection(m, line, 0);
  const auto q = MonoidMap::projection(m, line, 1);
  CHECK(pushforward(p, cc({2, 1})) == cc({2}));
  CHECK(pushforward(q, cc({2, 1})) == cc({1}));
  CHECK(pushforward(p, cc({0, 0})).is_zero());
  CHECK_THROWS_AS(MonoidMap::projection(m, line, 2), PreconditionError);
}

TEST_CASE("pushforward checks the source rank") {
  const auto p = MonoidMap::projection(DegreeMonoid::free(2), DegreeMonoid::free(1), 0);
  CHECK_THROWS_AS(pushforward(p, cc({1})), PreconditionError);
}

TEST_CASE("maps need a nonnegative matrix of the right shape") {
  const auto a = DegreeMonoid::free(2);
  const auto b = DegreeMonoid::free(1);
  CHECK_THROWS_AS(MonoidMap(a, b, {{1, -1}}), PreconditionError);
  CHECK_THROWS_AS(MonoidMap(a, b, {{1}}), PreconditionError);
  CHECK_THROWS_AS(MonoidMap(a, b, {{1, 0}, {0, 1}}), PreconditionError);
}

TEST_CASE("composition") {
  const auto a = DegreeMonoid::free(3);
  const auto b = DegreeMonoid::free(2);
  const auto c = DegreeMonoid::free(1);
  const MonoidMap f(a, b, {{1, 0, 2}, {0, 1, 1}});
  const MonoidMap g(b, c, {{3, 1}});
  const auto h = compose(g, f);
  CHECK(h.matrix() == std::vector<std::vector<std::int64_t>>{{3, 1, 7}});
  CHECK(pushforward(h, cc({1, 1, 1})) == pushforward(g, pushforward(f, cc({1, 1, 1}))));
  CHECK_THROWS_AS(compose(f, g), PreconditionError);
}

TEST_CASE("decompositions") {
  SUBCASE("rank 1") {
    const auto d = decompositions(cc({2}));
    REQUIRE(d.size() == 3);
    CHECK(d[0] == std::make_pair(cc({0}), cc({2})));
    CHECK(d[1] == std::make_pair(cc({1}), cc({1})));
    CHECK(d[2] == std::make_pair(cc({2}), cc({0})));
  }
  SUBCASE("rank 2") { CHECK(decompositions(cc({1, 1})).size() == 4); }
  SUBCASE("zero") {
    const auto d = decompositions(cc({0, 0}));
    REQUIRE(d.size() == 1);
    CHECK(d[0].first.is_zero());
    CHECK(d[0].second.is_zero());
  }
  SUBCASE("counts are products") {
    for (const auto& b : classes_below(cc({3, 2, 1}))) {
      std::size_t expected = 1;
      for (auto x : b.coords()) expected *= static_cast<std::size_t>(x + 1);
      CHECK(decompositions(b).size() == expected);
    }
  }
}

TEST_CASE("classes below a bound") {
  const auto all = classes_below(cc({1, 2}));
  CHECK(all.size() == 6);
  CHECK(std::set<CurveClass>(all.begin(), all.end()).size() == 6);
}

TEST_CASE("first Chern class pairing") {
  CHECK(c1_pairing(DegreeMonoid::p1(), cc({2})) == 4);
  CHECK(c1_pairing(DegreeMonoid::p1xp1(), cc({1, 1})) == 4);
  CHECK(c1_pairing(DegreeMonoid::p2(), cc({0})) == 0);
  CHECK(c1_pairing(DegreeMonoid::p2(), cc({3})) == 9);
}

TEST_CASE("product monoid") {
  const auto m = product_monoid(DegreeMonoid::p1(), DegreeMonoid::p1());
  CHECK(m.rank() == 2);
  CHECK(m.c1_pairings() == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("json round trips") {
  const auto m = DegreeMonoid::p1xp1();
  CHECK(monoid_from_json(monoid_to_json(m)) == m);
  const auto j = nlohmann::json(cc({2, 1}));
  CHECK(j == nlohmann::json::array({2, 1}));
  CHECK(j.get<CurveClass>() == cc({2, 1}));
  const MonoidMap f(m, DegreeMonoid::free(1), {{1, 2}});
  const auto back = map_from_json(map_to_json(f));
  CHECK(back.matrix() == f.matrix());
  CHECK(back.source() == m);
  nlohmann::json bad = {{"rank", 3}, {"generators", {"a"}}, {"c1", {1}}};
  CHECK_THROWS_AS(monoid_from_json(bad), PreconditionError);
}
