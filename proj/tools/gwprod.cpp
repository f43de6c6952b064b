#include "common.hpp"

#include "gwprod/verifier.hpp"

using namespace gwprod;

int main(int argc, char** argv) {
  CLI::App app{"Product formula check for P1 x P1 and the property suites"};
  app.require_subcommand(1);
  std::string bidegree, json_out;
  int cap = mbar::kDefaultMaxPoints, orders = 5, graphs = 1000;
  std::uint64_t seed = 20261019;
  bool timings = false, extended = false;

  auto* verify = app.add_subcommand("verify", "Compare the WDVV count with the strata-basis cup product");
  verify->add_option("--bidegree", bidegree, "d1,d2")->required();
  verify->add_option("--cap-n", cap, "largest n accepted");
  verify->add_option("--orders", orders, "extra shuffled elimination orders");
  verify->add_option("--seed", seed, "seed for the shuffled orders");
  verify->add_option("--json", json_out, "write the report here");
  verify->add_flag("--timings", timings, "include stage timings in the JSON report");

  auto* suite = app.add_subcommand("suite", "Run every property suite and the default bidegrees");
  suite->add_option("--seed", seed, "random seed");
  suite->add_option("--cap-n", cap, "largest n accepted");
  suite->add_option("--graphs", graphs, "random graphs per graph property");
  suite->add_flag("--extended", extended, "add the (3,1) and (1,3) bidegrees");
  suite->add_option("--json", json_out, "write the summary here");

  return tools::run(app, argc, argv, [&]() -> int {
    if (verify->parsed()) {
      const auto d = tools::parse_class(bidegree);
      if (d.rank() != 2) throw PreconditionError("--bidegree takes two numbers, e.g. 2,2");
      verify::VerifyOptions o;
      o.max_points = cap;
      o.extra_orders = orders;
      o.seed = seed;
      const auto r = verify::verify_product(static_cast<int>(d[0]), static_cast<int>(d[1]), o);
      std::cout << "(" << r.d1 << "," << r.d2 << ") n=" << r.n << "  wdvv " << to_fraction_string(r.lhs)
                << "  strata " << to_fraction_string(r.rhs) << "  " << (r.equal ? "equal" : "MISMATCH");
      if (!r.solution_independent) std::cout << "  (depends on elimination order)";
      std::cout << "\n";
      if (!json_out.empty()) tools::emit(verify::report_to_json(r, timings), json_out);
      return r.equal && r.solution_independent ? tools::kPass : tools::kMismatch;
    }
    verify::SuiteConfig c;
    c.seed = seed;
    c.max_points = cap;
    c.random_graphs = graphs;
    c.elimination_orders = orders;
    c.extended = extended;
    const auto s = verify::run_suite(c);
    for (const auto& r : s.results) {
      std::cout << (r.status == verify::PropertyResult::Status::Pass   ? "PASS "
                    : r.status == verify::PropertyResult::Status::Fail ? "FAIL "
                                                                       : "SKIP ")
                << r.name << " [" << r.checked << "]";
      if (!r.detail.empty()) std::cout << "  " << r.detail;
      std::cout << "\n";
    }
    if (!json_out.empty()) tools::emit(verify::summary_to_json(s), json_out);
    return s.all_passed() ? tools::kPass : tools::kMismatch;
  });
}
