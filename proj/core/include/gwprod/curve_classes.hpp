#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace gwprod {

/// Raised when an argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Free commutative monoid N^r of effective curve classes.
class DegreeMonoid {
 public:
  DegreeMonoid(std::vector<std::string> generator_names,
               std::vector<std::int64_t> c1_pairings);

  /// N^rank with generators named e1..er and zero c1 values.
  static DegreeMonoid free(int rank);
  /// H_2(P^1)^+ with the line class, c1 = 2.
  static DegreeMonoid p1();
  /// H_2(P^2)^+ with the line class, c1 = 3.
  static DegreeMonoid p2();
  /// H_2(P^1 x P^1)^+ with fibre classes (1,0), (0,1), c1 = 2 on each.
  static DegreeMonoid p1xp1();

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<std::int64_t>& c1_pairings() const { return c1_; }

  friend bool operator==(const DegreeMonoid&, const DegreeMonoid&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::int64_t> c1_;
};

class CurveClass {
 public:
  CurveClass() = default;
  explicit CurveClass(std::vector<std::int64_t> coords);

  static CurveClass zero(int rank) {
    return CurveClass(std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0));
  }

  int rank() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;
  std::int64_t total() const;

  CurveClass& operator+=(const CurveClass& other);
  friend CurveClass operator+(CurveClass a, const CurveClass& b) { return a += b; }

  friend auto operator<=>(const CurveClass&, const CurveClass&) = default;
  friend bool operator==(const CurveClass&, const CurveClass&) = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> coords_;
};

/// Additive map between free monoids given by a nonnegative integer matrix.
class MonoidMap {
 public:
  /// matrix is target.rank() rows by source.rank() columns.
  MonoidMap(DegreeMonoid source, DegreeMonoid target,
            std::vector<std::vector<std::int64_t>> matrix);

  static MonoidMap identity(const DegreeMonoid& m);
  /// Projection of a product monoid onto the block [offset, offset + target.rank()).
  static MonoidMap projection(const DegreeMonoid& source, const DegreeMonoid& target,
                              int offset);
  /// Sends everything to the zero class of a rank-1 monoid.
  static MonoidMap to_point(const DegreeMonoid& source);

  const DegreeMonoid& source() const { return source_; }
  const DegreeMonoid& target() const { return target_; }
  const std::vector<std::vector<std::int64_t>>& matrix() const { return matrix_; }

 private:
  DegreeMonoid source_;
  DegreeMonoid target_;
  std::vector<std::vector<std::int64_t>> matrix_;
};

/// Product monoid with the generators of a followed by those of b.
DegreeMonoid product_monoid(const DegreeMonoid& a, const DegreeMonoid& b);

CurveClass pushforward(const MonoidMap& map, const CurveClass& beta);

/// outer after inner.
MonoidMap compose(const MonoidMap& outer, const MonoidMap& inner);

/// All ordered (beta1, beta2) with beta1 + beta2 = beta, beta1 ascending
/// lexicographically.
std::vector<std::pair<CurveClass, CurveClass>> decompositions(const CurveClass& beta);

/// Every effective class of the given rank with each coordinate <= bound[i].
std::vector<CurveClass> classes_below(const CurveClass& bound);

std::int64_t c1_pairing(const DegreeMonoid& monoid, const CurveClass& beta);

void to_json(nlohmann::json& j, const CurveClass& c);
void from_json(const nlohmann::json& j, CurveClass& c);
nlohmann::json monoid_to_json(const DegreeMonoid& m);
DegreeMonoid monoid_from_json(const nlohmann::json& j);
nlohmann::json map_to_json(const MonoidMap& m);
MonoidMap map_from_json(const nlohmann::json& j);

}  // namespace gwprod
