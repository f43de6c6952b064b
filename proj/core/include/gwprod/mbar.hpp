#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwprod/modular_graph.hpp"
#include "gwprod/rational.hpp"

namespace gwprod::mbar {

/// Default upper bound on n for enumeration and pairing matrices.
inline constexpr int kDefaultMaxPoints = 9;

/// Subset of {1..n} as a bitmask, bit i for marked point i (bit 0 unused).
using PointSet = std::uint64_t;

PointSet point_set(const std::vector<int>& points);
std::vector<int> points_of(PointSet s);
/// All of {1..n}.
PointSet full_set(int n);
/// The side of the partition S | S^c that does not contain point 1.
PointSet normalize_divisor(PointSet s, int n);
/// Both sides have at least two points.
bool is_divisor(PointSet s, int n);
/// D_S and D_T meet (their partitions nest).
bool compatible(PointSet s, PointSet t, int n);

/// A boundary stratum of M_{0,n}: a stable tree with leaves 1..n, encoded by
/// the normalized splits of its edges.
class StratumTree {
 public:
  StratumTree(int n, std::vector<PointSet> splits);

  int n() const { return n_; }
  /// Sorted normalized edge splits.
  const std::vector<PointSet>& splits() const { return splits_; }
  int num_edges() const { return static_cast<int>(splits_.size()); }
  int dimension() const { return n_ - 3 - num_edges(); }

  struct Node {
    std::vector<int> leaves;      // marked points at this vertex
    std::vector<int> edges;       // indices into splits()
  };
  /// One node per vertex of the tree; node 0 carries leaf 1.
  std::vector<Node> nodes() const;
  ModularGraph graph() const;
  /// Stable textual key, e.g. "{12|345}{45|123}" style "12,45".
  std::string key() const;

  friend auto operator<=>(const StratumTree&, const StratumTree&) = default;
  friend bool operator==(const StratumTree&, const StratumTree&) = default;

 private:
  int n_;
  std::vector<PointSet> splits_;
};

/// The stratum tree of a genus-0 graph with tails labelled "1".."n".
StratumTree stratum_from_graph(const ModularGraph& g);

/// All strata of the given dimension in canonical order.
std::vector<StratumTree> enumerate_strata(int n, int dim, int max_points = kDefaultMaxPoints);

/// Formal product of boundary divisors and psi classes on M_{0,n}.
struct CycleMonomial {
  int n = 3;
  std::vector<PointSet> divisor_factors;  // normalized
  std::map<int, int> psi_exponents;       // point -> exponent (zero entries omitted)

  int degree() const;
  /// Normalizes and validates every factor; throws PreconditionError on a bad subset.
  void normalize();
  friend bool operator==(const CycleMonomial&, const CycleMonomial&) = default;
};

CycleMonomial stratum_to_monomial(const StratumTree& s);
/// Product of two monomials on the same M_{0,n}.
CycleMonomial multiply(const CycleMonomial& a, const CycleMonomial& b);

struct MonomialValue {
  Rational value;
  bool degree_mismatch = false;
};

/// Top intersection number of the monomial. With rng set, divisor pivots are
/// chosen at random (the result does not depend on the choice).
MonomialValue evaluate_monomial(const CycleMonomial& m, std::mt19937_64* rng = nullptr);

struct PairingMatrix {
  int n = 3;
  int k = 0;
  std::vector<StratumTree> rows;  // dimension k
  std::vector<StratumTree> cols;  // dimension n - 3 - k
  std::vector<std::vector<Rational>> entries;
};

PairingMatrix pairing_matrix(int n, int k, int max_points = kDefaultMaxPoints);

// Monomial JSON: [["1,2"],["1,2"]] style lists of divisor factors, each a
// comma-separated subset, plus optional psi factors written "psi1", "psi2^2".
CycleMonomial monomial_from_json(int n, const nlohmann::json& j);
nlohmann::json monomial_to_json(const CycleMonomial& m);
std::string subset_string(PointSet s);
nlohmann::json strata_to_json(const std::vector<StratumTree>& strata);
nlohmann::json pairing_matrix_to_json(const PairingMatrix& m);

}  // namespace gwprod::mbar
