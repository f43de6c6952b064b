#include "common.hpp"

#include "gwprod/gw.hpp"

using namespace gwprod;

int main(int argc, char** argv) {
  CLI::App app{"Genus-0 Gromov-Witten data: WDVV counts, stratum pairings, reconstructed classes"};
  app.require_subcommand(1);
  std::string target = "p2", degree, out;
  int n = 0, cap = mbar::kDefaultMaxPoints;
  bool check_all = false;

  auto* number = app.add_subcommand("number", "Count of rational curves through c1 - 1 points (WDVV)");
  number->add_option("--target", target, "p2 or p1xp1")->required();
  number->add_option("--degree", degree, "class, e.g. 3 or 2,2")->required();
  number->add_flag("--check-all", check_all, "also verify every WDVV equation up to this class");

  auto* pairings = app.add_subcommand("pairings", "Pairings of the point class with boundary strata");
  pairings->add_option("--target", target, "p1")->required();
  pairings->add_option("--degree", degree, "degree")->required();
  pairings->add_option("-n", n, "number of point insertions")->required();
  pairings->add_option("--cap-n", cap, "largest n accepted");
  pairings->add_option("--out", out, "write JSON here instead of stdout");

  auto* cls = app.add_subcommand("class", "Class in the strata basis reconstructed from its pairings");
  cls->add_option("--target", target, "p1")->required();
  cls->add_option("--degree", degree, "degree")->required();
  cls->add_option("-n", n, "number of point insertions")->required();
  cls->add_option("--cap-n", cap, "largest n accepted");
  cls->add_option("--out", out, "write JSON here instead of stdout");

  return tools::run(app, argc, argv, [&]() -> int {
    const auto t = gw::TargetSpace::by_name(target);
    const auto beta = tools::parse_class(degree);
    if (number->parsed()) {
      nlohmann::json j{{"target", t.name}, {"degree", beta}};
      if (check_all) {
        const auto table = gw::wdvv_table(t, beta, true);
        j["value"] = to_fraction_string(table.counts.at(beta));
        j["consistent"] = table.consistent;
        std::cout << j.dump(2) << "\n";
        return table.consistent ? tools::kPass : tools::kMismatch;
      }
      j["value"] = to_fraction_string(gw::wdvv_number(t, beta));
      std::cout << j.dump(2) << "\n";
      return tools::kPass;
    }
    const auto v = gw::gw_pairings(t, beta, n, cap);
    if (pairings->parsed()) {
      tools::emit(gw::pairing_vector_to_json(v), out);
      return tools::kPass;
    }
    const auto m = mbar::pairing_matrix(n, v.class_dim, cap);
    const auto x = gw::reconstruct_class(v, m);
    auto coeffs = nlohmann::json::object();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) coeffs[m.rows[i].key()] = to_fraction_string(x[i]);
    tools::emit({{"target", t.name},
                 {"degree", beta},
                 {"n", n},
                 {"class_dim", v.class_dim},
                 {"basis_size", m.rows.size()},
                 {"coefficients", coeffs},
                 {"pairings", gw::pairing_vector_to_json(v)}},
                out);
    return tools::kPass;
  });
}
