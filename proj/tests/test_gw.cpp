#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwprod/gw.hpp"
#include "oracles.hpp"

using namespace gwprod;
using namespace gwprod::gw;

TEST_CASE("targets are consistent") {
  for (const auto& name : {"p1", "p2", "p1xp1"}) CHECK_NOTHROW(TargetSpace::by_name(name).validate());
  CHECK_THROWS_AS(TargetSpace::by_name("p3"), PreconditionError);
  auto t = TargetSpace::p1();
  t.diagonal.pop_back();
  CHECK_THROWS_AS(t.validate(), PreconditionError);
  const auto q = TargetSpace::p1xp1();
  CHECK(q.pairing(1, 2) == 1);
  CHECK(q.pairing(1, 1) == 0);
  CHECK(q.pairing(0, q.point_index()) == 1);
  CHECK(q.divisor_degree(0, CurveClass({2, 3})) == 2);
  CHECK(q.divisor_degree(1, CurveClass({2, 3})) == 3);
}

TEST_CASE("P1 vertex invariants") {
  CHECK(vertex_invariant_p1(0, 1, 2) == 1);
  CHECK(vertex_invariant_p1(1, 3, 0) == 1);
  CHECK(vertex_invariant_p1(2, 4, 0) == 0);
  CHECK(vertex_invariant_p1(0, 2, 2) == 0);
  CHECK(vertex_invariant_p1(1, 5, 0) == 1);
  CHECK(vertex_invariant_p1(0, 3, 0) == 0);
  CHECK_THROWS_AS(vertex_invariant_p1(1, 1, 1), PreconditionError);
  CHECK_THROWS_AS(vertex_invariant_p1(-1, 3, 0), PreconditionError);
}

TEST_CASE("class dimension") {
  const auto p1 = TargetSpace::p1();
  CHECK(class_dimension(p1, CurveClass({1}), 3) == 0);
  CHECK(class_dimension(p1, CurveClass({2}), 5) == 2);
  CHECK(class_dimension(p1, CurveClass({2}), 7) == 2);
  CHECK(class_dimension(p1, CurveClass({3}), 7) == 4);
}

TEST_CASE("edgeless pairings in degree one") {
  const auto p1 = TargetSpace::p1();
  CHECK(stratum_pairing(p1, CurveClass({1}), 3, mbar::StratumTree(3, {})).value == 1);
  for (int n = 3; n <= 8; ++n) CHECK(stratum_pairing(p1, CurveClass({1}), n, mbar::StratumTree(n, {})).value == 1);
}

TEST_CASE("dimension gate") {
  const auto p1 = TargetSpace::p1();
  const auto v = stratum_pairing(p1, CurveClass({2}), 5, mbar::StratumTree(5, {}));
  CHECK(v.dimension_mismatch);
  CHECK(v.value == 0);
  CHECK_THROWS_AS(stratum_pairing(p1, CurveClass({1}), 4, mbar::StratumTree(5, {})), PreconditionError);
  CHECK_THROWS_AS(stratum_pairing(TargetSpace::p2(), CurveClass({1}), 3, mbar::StratumTree(3, {})), PreconditionError);
}

TEST_CASE("caterpillar pairing by direct enumeration") {
  // {1,2} - 3 - {4,5}: vertices A, B, C; each edge carries pt on one side and 1 on the other
  const auto p1 = TargetSpace::p1();
  const mbar::StratumTree s(5, {mbar::point_set({1, 2}), mbar::point_set({4, 5})});
  Rational expected = 0;
  for (int da = 0; da <= 2; ++da)
    for (int db = 0; da + db <= 2; ++db) {
      const int dc = 2 - da - db;
      for (int e1 = 0; e1 < 2; ++e1)
        for (int e2 = 0; e2 < 2; ++e2) {
          // e = 0: pt on the side nearer leaf 1
          const Rational a = vertex_invariant_p1(da, 2 + (e1 == 0), e1 == 1);
          const Rational b = vertex_invariant_p1(db, 1 + (e1 == 1) + (e2 == 0), (e1 == 0) + (e2 == 1));
          const Rational c = vertex_invariant_p1(dc, 2 + (e2 == 1), e2 == 0);
          expected += a * b * c;
        }
    }
  CHECK(stratum_pairing(p1, CurveClass({2}), 5, s).value == expected);
  CHECK(expected == 1);
}

TEST_CASE("pairing vectors") {
  const auto p1 = TargetSpace::p1();
  const auto v = gw_pairings(p1, CurveClass({2}), 5);
  CHECK(v.class_dim == 2);
  CHECK(v.strata.size() == 15);
  for (const auto& x : v.values) CHECK(x == 1);
  CHECK_THROWS_AS(gw_pairings(p1, CurveClass({3}), 5), PreconditionError);
  CHECK_THROWS_AS(gw_pairings(p1, CurveClass({1}), 2), PreconditionError);
  const auto back = pairing_vector_from_json(pairing_vector_to_json(v));
  CHECK(back.strata == v.strata);
  CHECK(back.values == v.values);
  CHECK(back.degree == v.degree);
}

TEST_CASE("reconstruction on a point") {
  const auto p1 = TargetSpace::p1();
  const auto v1 = gw_pairings(p1, CurveClass({1}), 3);
  const auto m = mbar::pairing_matrix(3, 0);
  CHECK(reconstruct_and_cup(v1, v1, m) == 1);
  auto scaled = v1;
  scaled.values[0] = 3;
  auto other = v1;
  other.values[0] = Rational(2, 5);
  CHECK(reconstruct_and_cup(scaled, other, m) == Rational(6, 5));
  auto zero = v1;
  zero.values[0] = 0;
  CHECK(reconstruct_and_cup(zero, other, m) == 0);
}

TEST_CASE("reconstruction (2,1)") {
  const auto p1 = TargetSpace::p1();
  const auto v1 = gw_pairings(p1, CurveClass({2}), 5);
  const auto v2 = gw_pairings(p1, CurveClass({1}), 5);
  const auto m = mbar::pairing_matrix(5, 2);
  const auto x = reconstruct_class(v1, m);
  REQUIRE(x.size() == 1);
  CHECK(x[0] == 1);
  CHECK(reconstruct_and_cup(v1, v2, m) == wdvv_number(TargetSpace::p1xp1(), CurveClass({2, 1})));
  CHECK_THROWS_AS(reconstruct_and_cup(v1, v1, m), PreconditionError);
  CHECK_THROWS_AS(reconstruct_class(v1, mbar::pairing_matrix(5, 0)), PreconditionError);
}

TEST_CASE("inconsistent pairing data is reported") {
  const auto p1 = TargetSpace::p1();
  auto v = gw_pairings(p1, CurveClass({2}), 5);
  v.values[3] = 7;
  CHECK_THROWS_AS(reconstruct_class(v, mbar::pairing_matrix(5, 2)), linalg::InconsistentSystemError);
}

TEST_CASE("plane curve counts") {
  const auto p2 = TargetSpace::p2();
  CHECK(wdvv_number(p2, CurveClass({1})) == 1);
  CHECK(wdvv_number(p2, CurveClass({2})) == 1);
  CHECK(wdvv_number(p2, CurveClass({3})) == 12);
  const auto kontsevich = oracle::kontsevich_p2(7);
  const auto table = wdvv_table(p2, CurveClass({7}), true);
  CHECK(table.consistent);
  for (int d = 1; d <= 7; ++d) CHECK(table.counts.at(CurveClass({d})) == Rational(kontsevich[static_cast<std::size_t>(d)]));
}

TEST_CASE("quadric curve counts") {
  const auto q = TargetSpace::p1xp1();
  CHECK(wdvv_number(q, CurveClass({1, 1})) == 1);
  CHECK(wdvv_number(q, CurveClass({2, 1})) == 1);
  CHECK(wdvv_number(q, CurveClass({2, 2})) == 12);
  CHECK(wdvv_number(q, CurveClass({3, 2})) == 96);
  CHECK(wdvv_number(q, CurveClass({3, 3})) == 3510);
  CHECK(wdvv_number(q, CurveClass({1, 0})) == 1);
  CHECK(wdvv_number(q, CurveClass({2, 0})) == 0);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) CHECK(wdvv_number(q, CurveClass({a, b})) == wdvv_number(q, CurveClass({b, a})));
  CHECK(wdvv_table(q, CurveClass({4, 4}), true).consistent);
}

TEST_CASE("WDVV preconditions") {
  CHECK_THROWS_AS(wdvv_number(TargetSpace::p1(), CurveClass({1})), PreconditionError);
  CHECK_THROWS_AS(wdvv_number(TargetSpace::p2(), CurveClass({0})), PreconditionError);
  CHECK_THROWS_AS(wdvv_number(TargetSpace::p2(), CurveClass({1, 1})), PreconditionError);
}

TEST_CASE("Kunneth sign") {
  CHECK(kunneth_sign({2, 2, 2}, {2, 2, 2}) == 1);
  CHECK(kunneth_sign({1}, {1}) == 1);
  CHECK(kunneth_sign({1, 1}, {1, 1}) == -1);
  CHECK(kunneth_sign({0, 3, 1}, {1, 1, 2}) == oracle::sign_by_sum({0, 3, 1}, {1, 1, 2}));
  CHECK_THROWS_AS(kunneth_sign({1}, {1, 2}), PreconditionError);
}
