#include "common.hpp"

#include "gwprod/mbar.hpp"

using namespace gwprod;

int main(int argc, char** argv) {
  CLI::App app{"Boundary strata and intersection numbers on M_{0,n}"};
  app.require_subcommand(1);
  int n = 0, dim = 0, k = 0, cap = mbar::kDefaultMaxPoints;
  std::string monomial, out;

  auto* strata = app.add_subcommand("strata", "Enumerate boundary strata of a given dimension");
  strata->add_option("-n", n, "number of marked points")->required();
  strata->add_option("--dim", dim, "stratum dimension")->required();
  strata->add_option("--cap-n", cap, "largest n accepted");
  strata->add_option("--out", out, "write JSON here instead of stdout");

  auto* eval = app.add_subcommand("eval", "Top intersection number of a monomial");
  eval->add_option("-n", n, "number of marked points")->required();
  eval->add_option("--monomial", monomial, "JSON list of factors, e.g. '[[\"1,2\"],[\"1,2\"]]' or '[\"psi1\"]'")->required();

  auto* pairing = app.add_subcommand("pairing", "Intersection matrix of strata of complementary dimension");
  pairing->add_option("-n", n, "number of marked points")->required();
  pairing->add_option("-k", k, "dimension of the row strata")->required();
  pairing->add_option("--cap-n", cap, "largest n accepted");
  pairing->add_option("--out", out, "write JSON here instead of stdout");

  return tools::run(app, argc, argv, [&]() -> int {
    if (strata->parsed()) {
      const auto s = mbar::enumerate_strata(n, dim, cap);
      tools::emit({{"n", n}, {"dim", dim}, {"count", s.size()}, {"strata", mbar::strata_to_json(s)}}, out);
      return tools::kPass;
    }
    if (eval->parsed()) {
      const auto m = mbar::monomial_from_json(n, nlohmann::json::parse(monomial));
      const auto v = mbar::evaluate_monomial(m);
      nlohmann::json j{{"n", n}, {"monomial", mbar::monomial_to_json(m)}, {"degree", m.degree()},
                       {"value", to_fraction_string(v.value)}};
      if (v.degree_mismatch) j["note"] = "degree differs from n - 3";
      tools::emit(j, "");
      return tools::kPass;
    }
    tools::emit(mbar::pairing_matrix_to_json(mbar::pairing_matrix(n, k, cap)), out);
    return tools::kPass;
  });
}
