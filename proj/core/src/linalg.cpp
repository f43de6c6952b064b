#include "gwprod/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "gwprod/curve_classes.hpp"

namespace gwprod::linalg {

namespace {

std::vector<std::size_t> checked_order(const std::vector<std::size_t>& order, std::size_t size, const char* what) {
  if (order.empty()) {
    std::vector<std::size_t> id(size);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != size)
      throw PreconditionError(std::string("solve: ") + what + " order is not a permutation");
  return order;
}

struct Echelon {
  std::vector<std::vector<Integer>> rows;  // last column is the right-hand side
  std::vector<std::size_t> pivot_cols;
};

// Fraction-free row echelon form. Every entry stays an integer minor of the input.
Echelon eliminate(std::vector<std::vector<Integer>> m, std::size_t unknowns) {
  Echelon e;
  Integer prev = 1;
  std::size_t r = 0;
  const std::size_t rows = m.size();
  Integer t;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Integer& pivot = m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      auto& row = m[i];
      const Integer factor = row[c];
      for (std::size_t j = c + 1; j < row.size(); ++j) {
        t = pivot * row[j];
        if (factor != 0) t -= factor * m[r][j];
        mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = pivot;
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rows = std::move(m);
  return e;
}

std::vector<std::vector<Integer>> integer_rows(const Matrix& a, const std::vector<Rational>* b,
                                               const std::vector<std::size_t>& row_order,
                                               const std::vector<std::size_t>& col_order) {
  std::vector<std::vector<Integer>> out;
  out.reserve(row_order.size());
  for (std::size_t ri : row_order) {
    Integer scale = 1;
    for (const auto& q : a[ri]) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    if (b) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), (*b)[ri].get_den_mpz_t());
    std::vector<Integer> row;
    row.reserve(col_order.size() + 1);
    for (std::size_t cj : col_order) {
      const auto& q = a[ri][cj];
      row.emplace_back(q.get_num() * (scale / q.get_den()));
    }
    if (b) row.emplace_back((*b)[ri].get_num() * (scale / (*b)[ri].get_den()));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::vector<Rational> solve(const Matrix& a, const std::vector<Rational>& b, const EliminationOrder& order) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw PreconditionError("solve: right-hand side has the wrong length");
  const std::size_t cols = rows ? a.front().size() : 0;
  for (const auto& row : a)
    if (row.size() != cols) throw PreconditionError("solve: ragged matrix");
  const auto col_order = checked_order(order.unknowns, cols, "unknown");
  const auto row_order = checked_order(order.equations, rows, "equation");

  auto e = eliminate(integer_rows(a, &b, row_order, col_order), cols);
  const std::size_t r = e.pivot_cols.size();
  for (std::size_t i = r; i < rows; ++i)
    if (e.rows[i][cols] != 0) throw InconsistentSystemError("linear system is inconsistent");

  std::vector<Rational> y(cols);  // in permuted unknown order
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = e.pivot_cols[k];
    Rational acc(e.rows[k][cols]);
    for (std::size_t j = c + 1; j < cols; ++j)
      if (e.rows[k][j] != 0 && y[j] != 0) acc -= Rational(e.rows[k][j]) * y[j];
    y[c] = acc / Rational(e.rows[k][c]);
  }
  std::vector<Rational> x(cols);
  for (std::size_t j = 0; j < cols; ++j) x[col_order[j]] = y[j];
  return x;
}

std::size_t rank(const Matrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  auto e = eliminate(integer_rows(a, nullptr, checked_order({}, rows, "equation"), checked_order({}, cols, "unknown")), cols);
  return e.pivot_cols.size();
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a.front().size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace gwprod::linalg
