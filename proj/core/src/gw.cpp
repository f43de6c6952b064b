#include "gwprod/gw.hpp"

#include <algorithm>
#include <functional>

namespace gwprod::gw {

namespace {

void set_symmetric(TargetSpace& t, int a, int b, int c, const Rational& v) {
  const int s = t.size();
  const int idx[3] = {a, b, c};
  int perm[3] = {0, 1, 2};
  do {
    t.triple_products[static_cast<std::size_t>((idx[perm[0]] * s + idx[perm[1]]) * s + idx[perm[2]])] = v;
  } while (std::next_permutation(perm, perm + 3));
}

TargetSpace make(std::string name, int dim, std::vector<BasisClass> basis) {
  TargetSpace t;
  t.name = std::move(name);
  t.dim = dim;
  t.basis = std::move(basis);
  t.triple_products.assign(static_cast<std::size_t>(t.size() * t.size() * t.size()), Rational(0));
  return t;
}

}  // namespace

TargetSpace TargetSpace::p1() {
  auto t = make("P1", 1, {{"1", 0}, {"pt", 1}});
  set_symmetric(t, 0, 0, 1, 1);
  t.divisor_indices = {1};
  t.monoid = DegreeMonoid::p1();
  t.divisor_degrees = {{1}};
  t.diagonal = {{0, 1, 1}, {1, 0, 1}};
  return t;
}

TargetSpace TargetSpace::p2() {
  auto t = make("P2", 2, {{"1", 0}, {"H", 1}, {"pt", 2}});
  set_symmetric(t, 0, 0, 2, 1);
  set_symmetric(t, 0, 1, 1, 1);
  t.divisor_indices = {1};
  t.monoid = DegreeMonoid::p2();
  t.divisor_degrees = {{1}};
  t.diagonal = {{0, 2, 1}, {1, 1, 1}, {2, 0, 1}};
  t.base_invariants[CurveClass({1})] = 1;
  return t;
}

TargetSpace TargetSpace::p1xp1() {
  // H1 = pullback of a point along the first projection, so H1 . (d1, d2) = d1.
  auto t = make("P1xP1", 2, {{"1", 0}, {"H1", 1}, {"H2", 1}, {"pt", 2}});
  set_symmetric(t, 0, 0, 3, 1);
  set_symmetric(t, 0, 1, 2, 1);
  t.divisor_indices = {1, 2};
  t.monoid = DegreeMonoid::p1xp1();
  t.divisor_degrees = {{1, 0}, {0, 1}};
  t.diagonal = {{0, 3, 1}, {1, 2, 1}, {2, 1, 1}, {3, 0, 1}};
  t.base_invariants[CurveClass({1, 0})] = 1;
  t.base_invariants[CurveClass({0, 1})] = 1;
  return t;
}

TargetSpace TargetSpace::by_name(const std::string& name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "p1") return p1();
  if (lower == "p2") return p2();
  if (lower == "p1xp1" || lower == "p1p1" || lower == "p1*p1") return p1xp1();
  throw PreconditionError("unknown target '" + name + "' (expected p1, p2 or p1xp1)");
}

const Rational& TargetSpace::triple(int a, int b, int c) const {
  const int s = size();
  if (a < 0 || b < 0 || c < 0 || a >= s || b >= s || c >= s) throw PreconditionError("triple: basis index out of range");
  return triple_products[static_cast<std::size_t>((a * s + b) * s + c)];
}

int TargetSpace::point_index() const {
  int found = -1;
  for (int i = 0; i < size(); ++i)
    if (basis[i].codim == dim) {
      if (found >= 0) throw PreconditionError("target has more than one point class");
      found = i;
    }
  if (found < 0) throw PreconditionError("target has no point class");
  return found;
}

std::int64_t TargetSpace::divisor_degree(std::size_t i, const CurveClass& beta) const {
  if (beta.rank() != monoid.rank()) throw PreconditionError("divisor_degree: rank mismatch");
  std::int64_t s = 0;
  for (int j = 0; j < monoid.rank(); ++j) s += divisor_degrees.at(i).at(static_cast<std::size_t>(j)) * beta[j];
  return s;
}

void TargetSpace::validate() const {
  if (basis.empty() || basis[0].codim != 0) throw PreconditionError("target: basis must start with the identity");
  linalg::Matrix g(static_cast<std::size_t>(size()), std::vector<Rational>(static_cast<std::size_t>(size())));
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) g[a][b] = pairing(a, b);
  if (linalg::rank(g) != static_cast<std::size_t>(size())) throw PreconditionError("target: Poincare pairing is degenerate");
  for (int e = 0; e < size(); ++e) {
    std::vector<Rational> image(static_cast<std::size_t>(size()));
    for (const auto& term : diagonal) image[term.right] += term.coeff * pairing(e, term.left);
    for (int b = 0; b < size(); ++b)
      if (image[b] != (b == e ? 1 : 0)) throw PreconditionError("target: diagonal fails the Kunneth identity");
  }
}

Rational vertex_invariant_p1(int d, int points, int identities) {
  if (d < 0 || points < 0 || identities < 0) throw PreconditionError("vertex_invariant_p1: negative argument");
  if (points + identities < 3) throw PreconditionError("vertex_invariant_p1: unstable vertex (fewer than 3 insertions)");
  // Dimension: points = 2d + (points + identities) - 2, i.e. identities = 2 - 2d.
  if (d == 0 && points == 1 && identities == 2) return 1;
  if (d == 1 && identities == 0) return 1;
  return 0;
}

int class_dimension(const TargetSpace& target, const CurveClass& beta, int n) {
  return static_cast<int>(c1_pairing(target.monoid, beta)) + target.dim + n - 3 - n * target.dim;
}

PairingValue stratum_pairing(const TargetSpace& target, const CurveClass& d, int n, const mbar::StratumTree& s) {
  if (target.dim != 1 || target.size() != 2) throw PreconditionError("stratum_pairing: only P1 vertex invariants are available");
  if (s.n() != n) throw PreconditionError("stratum_pairing: stratum lives on a different M_{0,n}");
  if (d.rank() != target.monoid.rank()) throw PreconditionError("stratum_pairing: degree rank mismatch");
  if (class_dimension(target, d, n) + s.dimension() != n - 3) return {Rational(0), true};

  const int pt = target.point_index();
  const auto nodes = s.nodes();
  const int edges = s.num_edges();
  const int degree = static_cast<int>(d[0]);
  const std::size_t terms = target.diagonal.size();
  // lower endpoint of edge e is node e + 1
  Rational total = 0;
  std::vector<std::size_t> choice(static_cast<std::size_t>(edges), 0);
  while (true) {
    Rational coeff = 1;
    std::vector<int> points(nodes.size(), 0);
    std::vector<int> identities(nodes.size(), 0);
    for (std::size_t v = 0; v < nodes.size(); ++v) points[v] = static_cast<int>(nodes[v].leaves.size());
    for (int e = 0; e < edges; ++e) {
      const auto& term = target.diagonal[choice[e]];
      coeff *= term.coeff;
      const int lower = e + 1;
      int upper = -1;
      for (std::size_t v = 0; v < nodes.size(); ++v)
        if (static_cast<int>(v) != lower &&
            std::find(nodes[v].edges.begin(), nodes[v].edges.end(), e) != nodes[v].edges.end())
          upper = static_cast<int>(v);
      (term.left == pt ? points : identities)[lower]++;
      (term.right == pt ? points : identities)[upper]++;
    }
    // Sum over degree distributions: coefficient of x^degree in prod_v f_v(x).
    std::vector<Rational> poly(static_cast<std::size_t>(degree + 1), Rational(0));
    poly[0] = coeff;
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      std::vector<Rational> next(poly.size(), Rational(0));
      for (int a = 0; a <= degree; ++a) {
        if (poly[a] == 0) continue;
        for (int b = 0; a + b <= degree; ++b) {
          const Rational f = vertex_invariant_p1(b, points[v], identities[v]);
          if (f != 0) next[a + b] += poly[a] * f;
        }
      }
      poly = std::move(next);
    }
    total += poly[degree];

    int e = 0;
    while (e < edges && ++choice[e] == terms) choice[e++] = 0;
    if (e == edges) break;
  }
  return {total, false};
}

GWPairingVector gw_pairings(const TargetSpace& target, const CurveClass& d, int n, int max_points) {
  const int k = class_dimension(target, d, n);
  if (n < 3) throw PreconditionError("gw_pairings: n must be at least 3");
  if (k < 0 || k > n - 3)
    throw PreconditionError("gw_pairings: class dimension " + std::to_string(k) + " out of range, the class vanishes");
  GWPairingVector v;
  v.n = n;
  v.target = target.name;
  v.degree = d;
  v.class_dim = k;
  v.strata = mbar::enumerate_strata(n, n - 3 - k, max_points);
  v.values.reserve(v.strata.size());
  for (const auto& s : v.strata) v.values.push_back(stratum_pairing(target, d, n, s).value);
  return v;
}

std::vector<Rational> reconstruct_class(const GWPairingVector& v, const mbar::PairingMatrix& m,
                                        const linalg::EliminationOrder& order) {
  if (m.n != v.n || m.k != v.class_dim) throw PreconditionError("reconstruct: pairing matrix does not match the class");
  if (m.cols != v.strata) throw PreconditionError("reconstruct: pairing data not indexed by the matrix columns");
  try {
    return linalg::solve(linalg::transpose(m.entries), v.values, order);
  } catch (const linalg::InconsistentSystemError&) {
    throw linalg::InconsistentSystemError("reconstruct: pairing data is not realized by any combination of strata");
  }
}

Rational reconstruct_and_cup(const GWPairingVector& v1, const GWPairingVector& v2, const mbar::PairingMatrix& m,
                             const linalg::EliminationOrder& order) {
  if (v1.n != v2.n || v1.class_dim + v2.class_dim != v1.n - 3)
    throw PreconditionError("reconstruct_and_cup: classes are not of complementary dimension");
  if (m.rows != v2.strata) throw PreconditionError("reconstruct_and_cup: second class not indexed by the matrix rows");
  const auto x = reconstruct_class(v1, m, order);
  Rational result = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) result += x[i] * v2.values[i];
  return result;
}

namespace {

class WdvvSolver {
 public:
  explicit WdvvSolver(const TargetSpace& t) : t_(t) {
    t_.validate();
    if (t_.dim != 2) throw PreconditionError("wdvv: only surface targets are supported");
    pt_ = t_.point_index();
    for (int i = 1; i < t_.size(); ++i) {
      const bool divisor = std::find(t_.divisor_indices.begin(), t_.divisor_indices.end(), i) != t_.divisor_indices.end();
      if (t_.basis[i].codim == 1 && !divisor)
        throw PreconditionError("wdvv: target cohomology is not generated by divisors");
      if (i != pt_ && t_.basis[i].codim != 1) throw PreconditionError("wdvv: target cohomology is not generated by divisors");
    }
    for (std::size_t i = 0; i < t_.divisor_indices.size(); ++i) divisor_slot_[t_.divisor_indices[i]] = i;
    // inverse Poincare pairing
    const auto s = static_cast<std::size_t>(t_.size());
    ginv_.assign(s, std::vector<Rational>(s));
    linalg::Matrix g(s, std::vector<Rational>(s));
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b) g[a][b] = t_.pairing(static_cast<int>(a), static_cast<int>(b));
    for (std::size_t c = 0; c < s; ++c) {
      std::vector<Rational> unit(s, Rational(0));
      unit[c] = 1;
      auto col = linalg::solve(g, unit);
      for (std::size_t r = 0; r < s; ++r) ginv_[r][c] = col[r];
    }
  }

  int points_needed(const CurveClass& beta) const {
    return static_cast<int>(c1_pairing(t_.monoid, beta)) - 1;
  }

  // Coefficient of q^beta t^m / m! in the third derivative Phi_{abc}.
  Rational phi3(int a, int b, int c, const CurveClass& beta, int m) const {
    if (beta.is_zero()) return m == 0 ? t_.triple(a, b, c) : Rational(0);
    if (a == 0 || b == 0 || c == 0) return 0;
    auto it = counts_.find(beta);
    if (it == counts_.end() || it->second == 0) return 0;
    const int npt = (a == pt_) + (b == pt_) + (c == pt_);
    if (points_needed(beta) - npt != m) return 0;
    Rational v = it->second;
    for (int idx : {a, b, c})
      if (idx != pt_) v *= static_cast<long>(t_.divisor_degree(divisor_slot_.at(idx), beta));
    return v;
  }

  // (Phi_{ab.} g^{..} Phi_{.cd}) - (Phi_{ac.} g^{..} Phi_{.bd}) at q^beta t^m / m!.
  Rational equation(int a, int b, int c, int d, const CurveClass& beta, int m) const {
    Rational total = 0;
    const int s = t_.size();
    for (const auto& part : classes_below(beta)) {
      std::vector<std::int64_t> rest_coords(beta.coords());
      for (std::size_t i = 0; i < rest_coords.size(); ++i) rest_coords[i] -= part[i];
      const CurveClass rest(std::move(rest_coords));
      for (int m1 = 0; m1 <= m; ++m1) {
        Rational inner = 0;
        for (int e = 0; e < s; ++e)
          for (int f = 0; f < s; ++f) {
            if (ginv_[e][f] == 0) continue;
            const Rational lhs = phi3(a, b, e, part, m1) * phi3(f, c, d, rest, m - m1);
            const Rational rhs = phi3(a, c, e, part, m1) * phi3(f, b, d, rest, m - m1);
            if (lhs != rhs) inner += ginv_[e][f] * (lhs - rhs);
          }
        if (inner != 0) total += inner * Rational(binomial(m, m1));
      }
    }
    return total;
  }

  WdvvTable run(const CurveClass& beta, bool check_all) {
    if (beta.rank() != t_.monoid.rank()) throw PreconditionError("wdvv: class rank mismatch");
    auto order = classes_below(beta);
    std::stable_sort(order.begin(), order.end(),
                     [](const CurveClass& x, const CurveClass& y) { return x.total() < y.total(); });
    std::vector<int> active;
    for (int i = 1; i < t_.size(); ++i) active.push_back(i);
    for (const auto& gamma : order) {
      if (gamma.is_zero()) continue;
      if (auto base = t_.base_invariants.find(gamma); base != t_.base_invariants.end()) {
        counts_[gamma] = base->second;
        continue;
      }
      if (points_needed(gamma) < 0) {
        counts_[gamma] = 0;
        continue;
      }
      counts_[gamma] = solve_for(gamma, active);
    }
    WdvvTable table;
    table.counts = counts_;
    if (check_all) {
      std::vector<int> all;
      for (int i = 0; i < t_.size(); ++i) all.push_back(i);
      for (const auto& gamma : order)
        for (int m = 0; m <= std::max(0, points_needed(gamma)); ++m)
          for (int a : all)
            for (int b : all)
              for (int c : all)
                for (int d : all)
                  if (equation(a, b, c, d, gamma, m) != 0) table.consistent = false;
    }
    return table;
  }

 private:
  Rational solve_for(const CurveClass& gamma, const std::vector<int>& idx) {
    for (int m = 0; m <= points_needed(gamma); ++m)
      for (int a : idx)
        for (int b : idx)
          for (int c : idx)
            for (int d : idx) {
              counts_[gamma] = 0;
              const Rational base = equation(a, b, c, d, gamma, m);
              counts_[gamma] = 1;
              const Rational slope = equation(a, b, c, d, gamma, m) - base;
              if (slope != 0) return -base / slope;
            }
    throw PreconditionError("wdvv: the equations do not determine the count for class " + gamma.to_string() +
                            "; supply it as a base invariant");
  }

  const TargetSpace& t_;
  int pt_ = 0;
  std::map<int, std::size_t> divisor_slot_;
  linalg::Matrix ginv_;
  std::map<CurveClass, Rational> counts_;
};

}  // namespace

WdvvTable wdvv_table(const TargetSpace& target, const CurveClass& beta, bool check_all_equations) {
  WdvvSolver solver(target);
  return solver.run(beta, check_all_equations);
}

Rational wdvv_number(const TargetSpace& target, const CurveClass& beta) {
  if (beta.is_zero()) throw PreconditionError("wdvv_number: class must be nonzero");
  return wdvv_table(target, beta).counts.at(beta);
}

int kunneth_sign(const std::vector<int>& gamma_degs, const std::vector<int>& eps_degs) {
  if (gamma_degs.size() != eps_degs.size()) throw PreconditionError("kunneth_sign: degree lists differ in length");
  // s mod 2 = sum_i gamma_i * (eps_0 + ... + eps_{i-1}) mod 2
  long prefix = 0;
  long s = 0;
  for (std::size_t i = 0; i < gamma_degs.size(); ++i) {
    s += static_cast<long>(gamma_degs[i] & 1) * (prefix & 1);
    prefix += eps_degs[i] & 1;
  }
  return s % 2 ? -1 : 1;
}

nlohmann::json pairing_vector_to_json(const GWPairingVector& v) {
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t i = 0; i < v.strata.size(); ++i) values[v.strata[i].key()] = to_fraction_string(v.values[i]);
  return {{"n", v.n}, {"target", v.target}, {"degree", v.degree}, {"class_dim", v.class_dim}, {"values", values}};
}

namespace {

mbar::StratumTree stratum_from_key(int n, const std::string& key) {
  std::vector<mbar::PointSet> splits;
  std::size_t pos = 0;
  while (pos < key.size()) {
    if (key[pos] != '[') throw PreconditionError("bad stratum key '" + key + "'");
    const auto close = key.find(']', pos);
    if (close == std::string::npos) throw PreconditionError("bad stratum key '" + key + "'");
    const auto body = key.substr(pos + 1, close - pos - 1);
    if (!body.empty()) {
      std::vector<int> pts;
      std::size_t start = 0;
      while (start <= body.size()) {
        const auto comma = body.find(',', start);
        pts.push_back(std::stoi(body.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      splits.push_back(mbar::point_set(pts));
    }
    pos = close + 1;
  }
  return mbar::StratumTree(n, std::move(splits));
}

}  // namespace

GWPairingVector pairing_vector_from_json(const nlohmann::json& j) {
  GWPairingVector v;
  v.n = j.at("n").get<int>();
  v.target = j.at("target").get<std::string>();
  v.degree = j.at("degree").get<CurveClass>();
  v.class_dim = j.at("class_dim").get<int>();
  std::vector<std::pair<mbar::StratumTree, Rational>> entries;
  for (const auto& [key, value] : j.at("values").items())
    entries.emplace_back(stratum_from_key(v.n, key), parse_fraction(value.get<std::string>()));
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [s, q] : entries) {
    v.strata.push_back(std::move(s));
    v.values.push_back(std::move(q));
  }
  return v;
}

}  // namespace gwprod::gw
