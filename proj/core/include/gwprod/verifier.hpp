#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwprod/mbar.hpp"
#include "gwprod/rational.hpp"

namespace gwprod::verify {

struct VerifyOptions {
  int max_points = mbar::kDefaultMaxPoints;
  /// Additional solves of the reconstruction system under shuffled
  /// elimination orders.
  int extra_orders = 0;
  std::uint64_t seed = 20261019;
};

/// Product formula check for P1 x P1 at bidegree (d1, d2), genus 0, with
/// n = 2(d1 + d2) - 1 point insertions.
struct VerificationReport {
  int d1 = 0;
  int d2 = 0;
  int n = 0;
  Rational lhs;  // WDVV count on P1 x P1
  Rational rhs;  // sign * Gamma_1 . Gamma_2 on M_{0,n}
  int sign = 1;
  bool equal = false;
  std::vector<Rational> alternative_rhs;  // one per extra elimination order
  bool solution_independent = true;
  int class_dim_1 = 0;
  int class_dim_2 = 0;
  std::map<std::string, std::size_t> strata_counts;
  std::map<std::string, double> timings_ms;
};

VerificationReport verify_product(int d1, int d2, const VerifyOptions& options = {});

/// Timings are omitted unless requested so reports are reproducible byte for byte.
nlohmann::json report_to_json(const VerificationReport& r, bool include_timings = false);

struct PropertyResult {
  std::string name;
  enum class Status { Pass, Fail, Skipped } status = Status::Pass;
  std::size_t checked = 0;
  std::string detail;
  bool ok() const { return status != Status::Fail; }
};

std::string status_string(PropertyResult::Status s);

namespace properties {

PropertyResult pushforward_additivity(std::mt19937_64& rng, int trials);
PropertyResult decomposition_counts(int max_coord);
PropertyResult contraction_bookkeeping(std::mt19937_64& rng, int trials);
PropertyResult canonical_relabeling(std::mt19937_64& rng, int trials);
PropertyResult stabilization_functoriality(std::mt19937_64& rng, int trials);
PropertyResult stabilization_confluence(std::mt19937_64& rng, int trials);
PropertyResult splitting_adjointness(std::mt19937_64& rng, int trials);
/// Exhaustive over two-vertex graphs and classes with coordinates <= max_coord.
PropertyResult splitting_counts(int max_coord);
PropertyResult psi_cartesian(std::mt19937_64& rng, int trials);
/// Psi of (tau^s, tau_i) agrees with stabilizing p_*(tau_i) directly.
PropertyResult psi_over_absolute(std::mt19937_64& rng, int trials);
PropertyResult monomial_pivot_independence(std::mt19937_64& rng, int trials);
PropertyResult monomial_relabeling(std::mt19937_64& rng, int trials);
PropertyResult monomial_degree_gate(std::mt19937_64& rng, int trials);
PropertyResult pairing_symmetry(int max_points);
PropertyResult strata_census();
PropertyResult wdvv_anchors();
PropertyResult wdvv_factor_symmetry(int max_total);
PropertyResult divisor_axiom(int max_points);
PropertyResult kunneth_sign_table(std::mt19937_64& rng, int rows);

}  // namespace properties

struct SuiteConfig {
  std::uint64_t seed = 20261019;
  int max_points = mbar::kDefaultMaxPoints;
  int random_graphs = 1000;
  int elimination_orders = 5;
  /// Adds the (3,1) and (1,3) bidegrees.
  bool extended = false;
};

struct SuiteSummary {
  std::vector<PropertyResult> results;
  bool all_passed() const;
};

std::vector<std::pair<int, int>> default_bidegrees(bool extended);

SuiteSummary run_suite(const SuiteConfig& config);
nlohmann::json summary_to_json(const SuiteSummary& s);

}  // namespace gwprod::verify
