#include "gwprod/mbar.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace gwprod {

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace gwprod

namespace gwprod::mbar {

namespace {

constexpr int kMaxLabel = 63;

int popcount(PointSet s) { return std::popcount(s); }

PointSet bit(int i) { return PointSet{1} << i; }

}  // namespace

PointSet point_set(const std::vector<int>& points) {
  PointSet s = 0;
  for (int p : points) {
    if (p < 1 || p > kMaxLabel) throw PreconditionError("marked point " + std::to_string(p) + " out of range");
    if (s & bit(p)) throw PreconditionError("marked point " + std::to_string(p) + " repeated in a subset");
    s |= bit(p);
  }
  return s;
}

std::vector<int> points_of(PointSet s) {
  std::vector<int> out;
  for (int i = 0; i <= kMaxLabel; ++i)
    if (s & bit(i)) out.push_back(i);
  return out;
}

PointSet full_set(int n) { return ((PointSet{1} << n) - 1) << 1; }

PointSet normalize_divisor(PointSet s, int n) { return (s & bit(1)) ? full_set(n) & ~s : s; }

bool is_divisor(PointSet s, int n) {
  const PointSet all = full_set(n);
  if ((s & ~all) != 0) return false;
  return popcount(s) >= 2 && popcount(all & ~s) >= 2;
}

bool compatible(PointSet s, PointSet t, int n) {
  s = normalize_divisor(s, n);
  t = normalize_divisor(t, n);
  // Both miss point 1, so the complements always meet.
  return (s & t) == 0 || (s & ~t) == 0 || (t & ~s) == 0;
}

StratumTree::StratumTree(int n, std::vector<PointSet> splits) : n_(n), splits_(std::move(splits)) {
  if (n_ < 3 || n_ > kMaxLabel) throw PreconditionError("stratum: n out of range");
  for (auto& s : splits_) {
    if (!is_divisor(s, n_)) throw PreconditionError("stratum: split " + subset_string(s) + " is not a boundary divisor");
    s = normalize_divisor(s, n_);
  }
  std::sort(splits_.begin(), splits_.end());
  if (std::adjacent_find(splits_.begin(), splits_.end()) != splits_.end())
    throw PreconditionError("stratum: repeated edge split");
  for (std::size_t i = 0; i < splits_.size(); ++i)
    for (std::size_t j = i + 1; j < splits_.size(); ++j)
      if (!compatible(splits_[i], splits_[j], n_)) throw PreconditionError("stratum: crossing edge splits");
  if (num_edges() > n_ - 3) throw PreconditionError("stratum: too many edges");
}

std::vector<StratumTree::Node> StratumTree::nodes() const {
  const int e = num_edges();
  // Node 0 is the vertex carrying leaf 1; node i + 1 sits below the edge with split i.
  std::vector<Node> out(static_cast<std::size_t>(e + 1));
  auto owner = [&](PointSet s, int skip) {
    int best = -1;
    for (int j = 0; j < e; ++j) {
      if (j == skip) continue;
      const PointSet t = splits_[j];
      if ((s & ~t) == 0 && s != t && (best < 0 || popcount(t) < popcount(splits_[best]))) best = j;
    }
    return best + 1;
  };
  for (int i = 0; i < e; ++i) {
    out[i + 1].edges.push_back(i);
    out[owner(splits_[i], i)].edges.push_back(i);
  }
  for (int p = 1; p <= n_; ++p) {
    int best = -1;
    for (int j = 0; j < e; ++j)
      if ((splits_[j] & bit(p)) && (best < 0 || popcount(splits_[j]) < popcount(splits_[best]))) best = j;
    out[best + 1].leaves.push_back(p);
  }
  for (auto& node : out) std::sort(node.edges.begin(), node.edges.end());
  return out;
}

ModularGraph StratumTree::graph() const {
  ModularGraph g;
  const auto ns = nodes();
  std::vector<int> ids;
  for (std::size_t i = 0; i < ns.size(); ++i) ids.push_back(g.add_vertex(0));
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (int p : ns[i].leaves) g.add_tail(ids[i], std::to_string(p));
  for (int edge = 0; edge < num_edges(); ++edge) {
    int lower = edge + 1;
    int upper = -1;
    for (std::size_t i = 0; i < ns.size(); ++i)
      if (static_cast<int>(i) != lower &&
          std::find(ns[i].edges.begin(), ns[i].edges.end(), edge) != ns[i].edges.end())
        upper = static_cast<int>(i);
    g.add_edge(ids[upper], ids[lower], "e" + std::to_string(edge));
  }
  return g;
}

std::string StratumTree::key() const {
  std::string out;
  for (auto s : splits_) out += "[" + subset_string(s) + "]";
  return out.empty() ? "[]" : out;
}

StratumTree stratum_from_graph(const ModularGraph& g) {
  g.check_well_formed();
  int n = 0;
  std::map<int, int> leaf_at;  // tail flag -> point
  for (int t : g.tails()) {
    int p = 0;
    try {
      p = std::stoi(g.flag(t).label);
    } catch (const std::exception&) {
      throw PreconditionError("stratum_from_graph: tail labels must be 1..n");
    }
    leaf_at[t] = p;
    n = std::max(n, p);
  }
  if (static_cast<int>(leaf_at.size()) != n) throw PreconditionError("stratum_from_graph: tail labels must be 1..n");
  for (int v : g.vertex_ids())
    if (g.genus(v) != 0) throw PreconditionError("stratum_from_graph: genus labels must be zero");
  if (g.num_components() != 1 || g.betti_number() != 0) throw PreconditionError("stratum_from_graph: not a tree");
  // Leaves reachable from flag f's far side without crossing back through f.
  std::function<PointSet(int)> side = [&](int f) {
    const int v = g.vertex_of(g.partner(f));
    PointSet s = 0;
    for (int h : g.flags_at(v)) {
      if (h == g.partner(f)) continue;
      s |= g.is_tail(h) ? bit(leaf_at.at(h)) : side(h);
    }
    return s;
  };
  std::vector<PointSet> splits;
  for (const auto& [a, _] : g.edges()) splits.push_back(side(a));
  return StratumTree(n, std::move(splits));
}

std::vector<StratumTree> enumerate_strata(int n, int dim, int max_points) {
  if (n < 3) throw PreconditionError("enumerate_strata: n must be at least 3");
  if (n > max_points) throw PreconditionError("enumerate_strata: n exceeds the cap of " + std::to_string(max_points));
  if (dim < 0 || dim > n - 3) throw PreconditionError("enumerate_strata: dimension out of range");
  const int edges = n - 3 - dim;
  std::vector<PointSet> divisors;
  const PointSet rest = full_set(n) & ~bit(1);
  for (PointSet s = rest;; s = (s - 1) & rest) {
    if (is_divisor(s, n)) divisors.push_back(s);
    if (s == 0) break;
  }
  std::sort(divisors.begin(), divisors.end());

  std::vector<StratumTree> out;
  std::vector<PointSet> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == edges) {
      out.emplace_back(n, chosen);
      return;
    }
    for (std::size_t i = from; i < divisors.size(); ++i) {
      bool ok = true;
      for (auto c : chosen) ok = ok && compatible(c, divisors[i], n);
      if (!ok) continue;
      chosen.push_back(divisors[i]);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  std::sort(out.begin(), out.end());
  return out;
}

int CycleMonomial::degree() const {
  int d = static_cast<int>(divisor_factors.size());
  for (const auto& [_, e] : psi_exponents) d += e;
  return d;
}

void CycleMonomial::normalize() {
  if (n < 3 || n > kMaxLabel / 3) throw PreconditionError("monomial: n out of range");
  for (auto& s : divisor_factors) {
    if (!is_divisor(s, n)) throw PreconditionError("monomial: malformed divisor subset " + subset_string(s));
    s = normalize_divisor(s, n);
  }
  std::sort(divisor_factors.begin(), divisor_factors.end());
  for (auto it = psi_exponents.begin(); it != psi_exponents.end();) {
    if (it->first < 1 || it->first > n) throw PreconditionError("monomial: psi index out of range");
    if (it->second < 0) throw PreconditionError("monomial: negative psi exponent");
    it = it->second == 0 ? psi_exponents.erase(it) : std::next(it);
  }
}

CycleMonomial stratum_to_monomial(const StratumTree& s) {
  return CycleMonomial{s.n(), s.splits(), {}};
}

CycleMonomial multiply(const CycleMonomial& a, const CycleMonomial& b) {
  if (a.n != b.n) throw PreconditionError("multiply: monomials live on different spaces");
  CycleMonomial out = a;
  out.divisor_factors.insert(out.divisor_factors.end(), b.divisor_factors.begin(), b.divisor_factors.end());
  for (const auto& [i, e] : b.psi_exponents) out.psi_exponents[i] += e;
  out.normalize();
  return out;
}

namespace {

// Monomial on M_{0,P} for an arbitrary label set P (node labels included).
struct LocalMonomial {
  PointSet points = 0;
  std::vector<PointSet> divisors;
  std::vector<std::pair<int, int>> psi;
};

Integer evaluate_local(const LocalMonomial& m, int next_label, std::mt19937_64* rng) {
  const int size = popcount(m.points);
  int degree = static_cast<int>(m.divisors.size());
  for (const auto& [_, e] : m.psi) degree += e;
  if (degree != size - 3) return 0;
  if (m.divisors.empty()) {
    Integer denom = 1;
    for (const auto& [_, e] : m.psi) denom *= factorial(e);
    return factorial(size - 3) / denom;
  }
  if (next_label + 1 > kMaxLabel) throw PreconditionError("evaluate_monomial: too many marked points");

  std::size_t pivot = 0;
  if (rng) pivot = std::uniform_int_distribution<std::size_t>(0, m.divisors.size() - 1)(*rng);
  const PointSet s = m.divisors[pivot];
  const PointSet sc = m.points & ~s;
  const int star = next_label;
  const int star_c = next_label + 1;

  LocalMonomial left{s | bit(star), {}, {}};
  LocalMonomial right{sc | bit(star_c), {}, {}};
  int self = 0;
  for (std::size_t i = 0; i < m.divisors.size(); ++i) {
    if (i == pivot) continue;
    const PointSet t = m.divisors[i];
    const PointSet tc = m.points & ~t;
    if (t == s || t == sc) {
      ++self;
    } else if ((t & ~s) == 0) {
      left.divisors.push_back(t);
    } else if ((tc & ~s) == 0) {
      left.divisors.push_back(tc);
    } else if ((t & s) == 0) {
      right.divisors.push_back(t);
    } else if ((tc & s) == 0) {
      right.divisors.push_back(tc);
    } else {
      return 0;
    }
  }
  for (const auto& [i, e] : m.psi) (s & bit(i) ? left : right).psi.emplace_back(i, e);

  // Each further copy of D_S restricts to -(psi_star + psi_star'). Only the
  // power of psi_star that fills the left factor's dimension contributes.
  int left_degree = static_cast<int>(left.divisors.size());
  for (const auto& [_, e] : left.psi) left_degree += e;
  const int j = popcount(left.points) - 3 - left_degree;
  if (j < 0 || j > self) return 0;
  if (j > 0) left.psi.emplace_back(star, j);
  if (self - j > 0) right.psi.emplace_back(star_c, self - j);

  Integer lv = evaluate_local(left, next_label + 2, rng);
  if (lv == 0) return 0;
  Integer value = lv * evaluate_local(right, next_label + 2, rng) * binomial(self, j);
  return self % 2 ? Integer(-value) : value;
}

}  // namespace

MonomialValue evaluate_monomial(const CycleMonomial& input, std::mt19937_64* rng) {
  CycleMonomial m = input;
  m.normalize();
  if (m.degree() != m.n - 3) return {Rational(0), true};
  LocalMonomial local{full_set(m.n), m.divisor_factors, {}};
  for (const auto& [i, e] : m.psi_exponents) local.psi.emplace_back(i, e);
  return {Rational(evaluate_local(local, m.n + 1, rng)), false};
}

PairingMatrix pairing_matrix(int n, int k, int max_points) {
  if (n < 3 || k < 0 || k > n - 3) throw PreconditionError("pairing_matrix: k out of range");
  PairingMatrix out;
  out.n = n;
  out.k = k;
  out.rows = enumerate_strata(n, k, max_points);
  out.cols = enumerate_strata(n, n - 3 - k, max_points);
  const bool square = 2 * k == n - 3;
  out.entries.assign(out.rows.size(), std::vector<Rational>(out.cols.size()));
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const auto ri = stratum_to_monomial(out.rows[i]);
    for (std::size_t j = square ? i : 0; j < out.cols.size(); ++j) {
      out.entries[i][j] = evaluate_monomial(multiply(ri, stratum_to_monomial(out.cols[j]))).value;
      if (square) out.entries[j][i] = out.entries[i][j];
    }
  }
  return out;
}

std::string subset_string(PointSet s) {
  std::string out;
  for (int p : points_of(s)) out += (out.empty() ? "" : ",") + std::to_string(p);
  return out;
}

namespace {

PointSet parse_subset(const std::string& text) {
  std::vector<int> pts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      pts.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError("monomial: cannot parse subset '" + text + "'");
    }
  }
  return point_set(pts);
}

}  // namespace

CycleMonomial monomial_from_json(int n, const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("monomial: expected a JSON array of factors");
  CycleMonomial m;
  m.n = n;
  for (const auto& factor : j) {
    nlohmann::json f = factor;
    if (f.is_array() && f.size() == 1 && f[0].is_string()) f = f[0];
    if (f.is_string()) {
      const auto text = f.get<std::string>();
      if (text.rfind("psi", 0) == 0) {
        const auto caret = text.find('^');
        int point = 0;
        int exponent = 1;
        try {
          point = std::stoi(text.substr(3, caret == std::string::npos ? std::string::npos : caret - 3));
          if (caret != std::string::npos) exponent = std::stoi(text.substr(caret + 1));
        } catch (const std::exception&) {
          throw PreconditionError("monomial: cannot parse psi factor '" + text + "'");
        }
        m.psi_exponents[point] += exponent;
      } else {
        m.divisor_factors.push_back(parse_subset(text));
      }
    } else if (f.is_array()) {
      m.divisor_factors.push_back(point_set(f.get<std::vector<int>>()));
    } else {
      throw PreconditionError("monomial: unrecognized factor " + f.dump());
    }
  }
  m.normalize();
  return m;
}

nlohmann::json monomial_to_json(const CycleMonomial& m) {
  nlohmann::json out = nlohmann::json::array();
  for (auto s : m.divisor_factors) out.push_back(nlohmann::json::array({subset_string(s)}));
  for (const auto& [i, e] : m.psi_exponents)
    out.push_back("psi" + std::to_string(i) + (e > 1 ? "^" + std::to_string(e) : ""));
  return out;
}

nlohmann::json strata_to_json(const std::vector<StratumTree>& strata) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : strata) {
    nlohmann::json splits = nlohmann::json::array();
    for (auto e : s.splits()) splits.push_back(subset_string(e));
    out.push_back({{"key", s.key()}, {"splits", splits}, {"canonical", canonical_to_json(canonicalize(s.graph()).form)}});
  }
  return out;
}

nlohmann::json pairing_matrix_to_json(const PairingMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : m.rows) rows.push_back(s.key());
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& s : m.cols) cols.push_back(s.key());
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& row : m.entries) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& q : row) r.push_back(to_fraction_string(q));
    entries.push_back(r);
  }
  return {{"n", m.n}, {"k", m.k}, {"rows", rows}, {"cols", cols}, {"entries", entries}};
}

}  // namespace gwprod::mbar
