#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwprod/verifier.hpp"

using namespace gwprod;
using namespace gwprod::verify;

TEST_CASE("(1,1)") {
  const auto r = verify_product(1, 1);
  CHECK(r.n == 3);
  CHECK(r.lhs == 1);
  CHECK(r.rhs == 1);
  CHECK(r.equal);
  CHECK(r.sign == 1);
}

TEST_CASE("(2,1) and (1,2) agree") {
  VerifyOptions o;
  o.extra_orders = 3;
  const auto a = verify_product(2, 1, o);
  const auto b = verify_product(1, 2, o);
  CHECK(a.n == 5);
  CHECK(a.equal);
  CHECK(b.equal);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.solution_independent);
  CHECK(a.class_dim_1 + a.class_dim_2 == a.n - 3);
}

TEST_CASE("(2,2)") {
  const auto r = verify_product(2, 2);
  CHECK(r.n == 7);
  CHECK(r.equal);
  CHECK(r.lhs == 12);
  CHECK(r.strata_counts.at("class_1") == 490);
}

TEST_CASE("(3,1) with a fundamental-class factor") {
  const auto r = verify_product(3, 1);
  CHECK(r.equal);
  CHECK(r.class_dim_2 == 0);
}

TEST_CASE("rejected bidegrees") {
  CHECK_THROWS_AS(verify_product(0, 2), PreconditionError);
  CHECK_THROWS_AS(verify_product(1, 0), PreconditionError);
  VerifyOptions o;
  o.max_points = 5;
  CHECK_THROWS_AS(verify_product(2, 2, o), PreconditionError);
}

TEST_CASE("reports are reproducible") {
  VerifyOptions o;
  o.extra_orders = 2;
  const auto a = report_to_json(verify_product(2, 1, o)).dump();
  const auto b = report_to_json(verify_product(2, 1, o)).dump();
  CHECK(a == b);
  CHECK(a.find("timings") == std::string::npos);
  CHECK(report_to_json(verify_product(1, 1), true).contains("timings_ms"));
}

TEST_CASE("suite with a small cap skips (2,2)") {
  SuiteConfig c;
  c.max_points = 5;
  c.random_graphs = 100;
  const auto s = run_suite(c);
  CHECK(s.all_passed());
  bool skipped = false;
  for (const auto& r : s.results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.ok());
    if (r.name == "product formula (2,2)") skipped = r.status == PropertyResult::Status::Skipped;
  }
  CHECK(skipped);
}

TEST_CASE("seed changes inputs, not outcomes") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SuiteConfig c;
    c.seed = seed;
    c.max_points = 5;
    c.random_graphs = 60;
    const auto s = run_suite(c);
    CHECK(s.all_passed());
  }
}

TEST_CASE("summary json") {
  SuiteConfig c;
  c.max_points = 4;
  c.random_graphs = 20;
  const auto j = summary_to_json(run_suite(c));
  CHECK(j.at("passed") == true);
  CHECK(j.at("results").size() > 10);
}

TEST_CASE("individual properties") {
  std::mt19937_64 rng(8);
  namespace p = properties;
  CHECK(p::splitting_counts(3).ok());
  CHECK(p::psi_cartesian(rng, 50).ok());
  CHECK(p::psi_over_absolute(rng, 200).ok());
  CHECK(p::wdvv_anchors().ok());
  CHECK(p::strata_census().ok());
  CHECK(p::kunneth_sign_table(rng, 20).ok());
  CHECK(status_string(PropertyResult::Status::Skipped) == "skipped");
}
