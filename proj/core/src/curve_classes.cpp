#include "gwprod/curve_classes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gwprod {

DegreeMonoid::DegreeMonoid(std::vector<std::string> generator_names,
                           std::vector<std::int64_t> c1_pairings)
    : names_(std::move(generator_names)), c1_(std::move(c1_pairings)) {
  if (names_.empty()) throw PreconditionError("DegreeMonoid: rank must be at least 1");
  if (names_.size() != c1_.size())
    throw PreconditionError("DegreeMonoid: generator and c1 lists differ in length");
  for (auto v : c1_)
    if (v < 0) throw PreconditionError("DegreeMonoid: c1 pairings must be nonnegative");
}

DegreeMonoid DegreeMonoid::free(int rank) {
  if (rank < 1) throw PreconditionError("DegreeMonoid: rank must be at least 1");
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back("e" + std::to_string(i + 1));
  return DegreeMonoid(std::move(names), std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0));
}

DegreeMonoid DegreeMonoid::p1() { return DegreeMonoid({"line"}, {2}); }
DegreeMonoid DegreeMonoid::p2() { return DegreeMonoid({"line"}, {3}); }
DegreeMonoid DegreeMonoid::p1xp1() { return DegreeMonoid({"f1", "f2"}, {2, 2}); }

CurveClass::CurveClass(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  for (auto c : coords_)
    if (c < 0) throw PreconditionError("CurveClass: coordinates must be nonnegative");
}

bool CurveClass::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
}

std::int64_t CurveClass::total() const {
  return std::accumulate(coords_.begin(), coords_.end(), std::int64_t{0});
}

CurveClass& CurveClass::operator+=(const CurveClass& other) {
  if (other.rank() != rank()) throw PreconditionError("CurveClass: rank mismatch in addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

std::string CurveClass::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) out << (i ? "," : "") << coords_[i];
  out << ')';
  return out.str();
}

MonoidMap::MonoidMap(DegreeMonoid source, DegreeMonoid target,
                     std::vector<std::vector<std::int64_t>> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (static_cast<int>(matrix_.size()) != target_.rank())
    throw PreconditionError("MonoidMap: matrix must have target.rank rows");
  for (const auto& row : matrix_) {
    if (static_cast<int>(row.size()) != source_.rank())
      throw PreconditionError("MonoidMap: matrix must have source.rank columns");
    for (auto v : row)
      if (v < 0) throw PreconditionError("MonoidMap: entries must be nonnegative");
  }
}

MonoidMap MonoidMap::identity(const DegreeMonoid& m) {
  std::vector<std::vector<std::int64_t>> mat(static_cast<std::size_t>(m.rank()),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(m.rank()), 0));
  for (int i = 0; i < m.rank(); ++i) mat[i][i] = 1;
  return MonoidMap(m, m, std::move(mat));
}

MonoidMap MonoidMap::projection(const DegreeMonoid& source, const DegreeMonoid& target,
                                int offset) {
  if (offset < 0 || offset + target.rank() > source.rank())
    throw PreconditionError("MonoidMap::projection: block out of range");
  std::vector<std::vector<std::int64_t>> mat(static_cast<std::size_t>(target.rank()),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(source.rank()), 0));
  for (int i = 0; i < target.rank(); ++i) mat[i][offset + i] = 1;
  return MonoidMap(source, target, std::move(mat));
}

MonoidMap MonoidMap::to_point(const DegreeMonoid& source) {
  return MonoidMap(source, DegreeMonoid({"pt"}, {0}),
                   {std::vector<std::int64_t>(static_cast<std::size_t>(source.rank()), 0)});
}

DegreeMonoid product_monoid(const DegreeMonoid& a, const DegreeMonoid& b) {
  auto names = a.generator_names();
  auto c1 = a.c1_pairings();
  names.insert(names.end(), b.generator_names().begin(), b.generator_names().end());
  c1.insert(c1.end(), b.c1_pairings().begin(), b.c1_pairings().end());
  return DegreeMonoid(std::move(names), std::move(c1));
}

CurveClass pushforward(const MonoidMap& map, const CurveClass& beta) {
  if (beta.rank() != map.source().rank())
    throw PreconditionError("pushforward: class rank " + std::to_string(beta.rank()) +
                            " does not match source rank " + std::to_string(map.source().rank()));
  std::vector<std::int64_t> out(static_cast<std::size_t>(map.target().rank()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < beta.coords().size(); ++j) out[i] += map.matrix()[i][j] * beta[j];
  return CurveClass(std::move(out));
}

MonoidMap compose(const MonoidMap& outer, const MonoidMap& inner) {
  if (!(inner.target() == outer.source()))
    throw PreconditionError("compose: inner target differs from outer source");
  const auto rows = static_cast<std::size_t>(outer.target().rank());
  const auto cols = static_cast<std::size_t>(inner.source().rank());
  const auto mid = static_cast<std::size_t>(inner.target().rank());
  std::vector<std::vector<std::int64_t>> mat(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < mid; ++k)
      for (std::size_t j = 0; j < cols; ++j) mat[i][j] += outer.matrix()[i][k] * inner.matrix()[k][j];
  return MonoidMap(inner.source(), outer.target(), std::move(mat));
}

std::vector<CurveClass> classes_below(const CurveClass& bound) {
  std::vector<CurveClass> out;
  std::vector<std::int64_t> cur(bound.coords().size(), 0);
  while (true) {
    out.emplace_back(cur);
    // odometer, last coordinate fastest so the output is lexicographic
    std::size_t i = cur.size();
    while (i > 0) {
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (cur.empty()) return out;
  }
}

std::vector<std::pair<CurveClass, CurveClass>> decompositions(const CurveClass& beta) {
  std::vector<std::pair<CurveClass, CurveClass>> out;
  for (auto& first : classes_below(beta)) {
    std::vector<std::int64_t> rest(beta.coords());
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= first[i];
    out.emplace_back(std::move(first), CurveClass(std::move(rest)));
  }
  return out;
}

std::int64_t c1_pairing(const DegreeMonoid& monoid, const CurveClass& beta) {
  if (beta.rank() != monoid.rank()) throw PreconditionError("c1_pairing: rank mismatch");
  std::int64_t s = 0;
  for (int i = 0; i < monoid.rank(); ++i) s += monoid.c1_pairings()[i] * beta[i];
  return s;
}

void to_json(nlohmann::json& j, const CurveClass& c) { j = c.coords(); }

void from_json(const nlohmann::json& j, CurveClass& c) {
  if (!j.is_array()) throw PreconditionError("curve class must be a JSON array of integers");
  c = CurveClass(j.get<std::vector<std::int64_t>>());
}

nlohmann::json monoid_to_json(const DegreeMonoid& m) {
  return {{"rank", m.rank()}, {"generators", m.generator_names()}, {"c1", m.c1_pairings()}};
}

DegreeMonoid monoid_from_json(const nlohmann::json& j) {
  DegreeMonoid m(j.at("generators").get<std::vector<std::string>>(),
                 j.at("c1").get<std::vector<std::int64_t>>());
  if (j.contains("rank") && j.at("rank").get<int>() != m.rank())
    throw PreconditionError("monoid JSON: rank disagrees with generator list");
  return m;
}

nlohmann::json map_to_json(const MonoidMap& m) {
  return {{"source", monoid_to_json(m.source())},
          {"target", monoid_to_json(m.target())},
          {"matrix", m.matrix()}};
}

MonoidMap map_from_json(const nlohmann::json& j) {
  return MonoidMap(monoid_from_json(j.at("source")), monoid_from_json(j.at("target")),
                   j.at("matrix").get<std::vector<std::vector<std::int64_t>>>());
}

}  // namespace gwprod
