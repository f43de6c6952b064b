#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwprod/curve_classes.hpp"
#include "gwprod/linalg.hpp"
#include "gwprod/mbar.hpp"
#include "gwprod/rational.hpp"

namespace gwprod::gw {

struct BasisClass {
  std::string label;
  int codim = 0;
};

/// One term coeff * T_left (x) T_right of the class of the diagonal.
struct DiagonalTerm {
  int left = 0;
  int right = 0;
  Rational coeff = 1;
};

/// Cohomology and curve-class data of a target variety. Basis element 0 is
/// the identity class.
struct TargetSpace {
  std::string name;
  int dim = 1;
  std::vector<BasisClass> basis;
  /// Dense basis^3 table of classical triple intersections.
  std::vector<Rational> triple_products;
  std::vector<int> divisor_indices;
  DegreeMonoid monoid = DegreeMonoid::free(1);
  /// divisor_degrees[i][j]: degree of divisor divisor_indices[i] on generator j.
  std::vector<std::vector<std::int64_t>> divisor_degrees;
  std::vector<DiagonalTerm> diagonal;
  /// Curve counts supplied as initial data for the WDVV recursion (line classes).
  std::map<CurveClass, Rational> base_invariants;

  static TargetSpace p1();
  static TargetSpace p2();
  static TargetSpace p1xp1();
  static TargetSpace by_name(const std::string& name);

  int size() const { return static_cast<int>(basis.size()); }
  const Rational& triple(int a, int b, int c) const;
  Rational pairing(int a, int b) const { return triple(0, a, b); }
  /// Index of the unique basis class of codimension dim.
  int point_index() const;
  /// Degree of divisor divisor_indices[i] on beta.
  std::int64_t divisor_degree(std::size_t i, const CurveClass& beta) const;
  /// Throws PreconditionError unless the pairing is nondegenerate and the
  /// diagonal satisfies the Kunneth identity.
  void validate() const;
};

/// <pt^points, 1^identities>_{0, d} on P^1.
Rational vertex_invariant_p1(int d, int points, int identities);

/// Dimension of the cycle I_{0,n}(beta)(pt^n) in M_{0,n}.
int class_dimension(const TargetSpace& target, const CurveClass& beta, int n);

struct PairingValue {
  Rational value;
  bool dimension_mismatch = false;
};

/// deg([s] . I_{0,n}(d)(pt^n)) on P^1 via the splitting axiom.
PairingValue stratum_pairing(const TargetSpace& target, const CurveClass& d, int n, const mbar::StratumTree& s);

struct GWPairingVector {
  int n = 3;
  std::string target;
  CurveClass degree;
  int class_dim = 0;
  /// Strata of dimension n - 3 - class_dim, canonical order.
  std::vector<mbar::StratumTree> strata;
  std::vector<Rational> values;
};

GWPairingVector gw_pairings(const TargetSpace& target, const CurveClass& d, int n,
                            int max_points = mbar::kDefaultMaxPoints);

/// Coefficients x of the class in the basis of strata of dimension
/// v.class_dim (the rows of m): solves x^T m = v.
std::vector<Rational> reconstruct_class(const GWPairingVector& v, const mbar::PairingMatrix& m,
                                        const linalg::EliminationOrder& order = {});

/// deg(Gamma_1 . Gamma_2) from the pairing data of both classes.
Rational reconstruct_and_cup(const GWPairingVector& v1, const GWPairingVector& v2, const mbar::PairingMatrix& m,
                             const linalg::EliminationOrder& order = {});

/// Number of rational curves of class beta through c1(beta) - 1 general
/// points of a surface, from the WDVV equations.
Rational wdvv_number(const TargetSpace& target, const CurveClass& beta);

/// Every count for classes <= beta, plus whether each WDVV equation at each
/// order up to beta holds for them.
struct WdvvTable {
  std::map<CurveClass, Rational> counts;
  bool consistent = true;
};
WdvvTable wdvv_table(const TargetSpace& target, const CurveClass& beta, bool check_all_equations = false);

/// (-1)^s with s = sum_{i > j} gamma_degs[i] * eps_degs[j].
int kunneth_sign(const std::vector<int>& gamma_degs, const std::vector<int>& eps_degs);

nlohmann::json pairing_vector_to_json(const GWPairingVector& v);
GWPairingVector pairing_vector_from_json(const nlohmann::json& j);

}  // namespace gwprod::gw
