#include "gwprod/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

#include "gwprod/graph_functors.hpp"
#include "gwprod/gw.hpp"
#include "gwprod/linalg.hpp"
#include "gwprod/random_graphs.hpp"

namespace gwprod::verify {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Collects failures; keeps the first few messages.
class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++r_.checked;
    if (ok) return;
    r_.status = PropertyResult::Status::Fail;
    if (++failures_ <= 3) r_.detail += (r_.detail.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) {
    if (r_.status != PropertyResult::Status::Fail) r_.detail = s;
  }
  PropertyResult done() {
    if (failures_ > 3) r_.detail += "; " + std::to_string(failures_ - 3) + " more";
    return r_;
  }

 private:
  PropertyResult r_;
  int failures_ = 0;
};

MonoidMap random_map(std::mt19937_64& rng, const DegreeMonoid& s, const DegreeMonoid& t, int max_entry) {
  std::vector<std::vector<std::int64_t>> m(static_cast<std::size_t>(t.rank()),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(s.rank())));
  for (auto& row : m)
    for (auto& x : row) x = uniform(rng, 0, max_entry);
  return MonoidMap(s, t, std::move(m));
}

CurveClass random_class(std::mt19937_64& rng, int rank, int max_coord) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(rank));
  for (auto& x : c) x = uniform(rng, 0, max_coord);
  return CurveClass(std::move(c));
}

std::vector<int> non_loop_edge_flags(const ModularGraph& g) {
  std::vector<int> out;
  for (const auto& [a, b] : g.edges())
    if (g.vertex_of(a) != g.vertex_of(b)) out.push_back(a);
  return out;
}

struct StabOutcome {
  bool failed = false;
  Stabilization st;
};

StabOutcome try_stabilize(const MarkedGraph& g, const MonoidMap& m, std::mt19937_64* rng = nullptr) {
  try {
    return {false, pushforward_stabilize(g, m, rng)};
  } catch (const NoStableModelError&) {
    return {true, {}};
  }
}

mbar::CycleMonomial random_monomial(std::mt19937_64& rng, int n, int degree) {
  std::vector<mbar::PointSet> divisors;
  for (mbar::PointSet s = 2; s <= mbar::full_set(n); s += 2)
    if (mbar::is_divisor(s, n) && mbar::normalize_divisor(s, n) == s) divisors.push_back(s);
  mbar::CycleMonomial m;
  m.n = n;
  const int k = uniform(rng, 0, degree);
  for (int i = 0; i < k; ++i) m.divisor_factors.push_back(divisors[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(divisors.size()) - 1))]);
  for (int i = k; i < degree; ++i) ++m.psi_exponents[uniform(rng, 1, n)];
  m.normalize();
  return m;
}

std::string fraction(const Rational& q) { return to_fraction_string(q); }

}  // namespace

std::string status_string(PropertyResult::Status s) {
  switch (s) {
    case PropertyResult::Status::Pass: return "pass";
    case PropertyResult::Status::Fail: return "fail";
    case PropertyResult::Status::Skipped: return "skipped";
  }
  return "?";
}

VerificationReport verify_product(int d1, int d2, const VerifyOptions& options) {
  if (d1 < 1 || d2 < 1) throw PreconditionError("verify: both degrees must be positive");
  VerificationReport r;
  r.d1 = d1;
  r.d2 = d2;
  r.n = 2 * (d1 + d2) - 1;
  if (r.n > options.max_points)
    throw PreconditionError("verify: n = " + std::to_string(r.n) + " exceeds the cap " + std::to_string(options.max_points));

  auto t0 = Clock::now();
  r.lhs = gw::wdvv_number(gw::TargetSpace::p1xp1(), CurveClass({d1, d2}));
  r.timings_ms["wdvv"] = ms_since(t0);

  const auto p1 = gw::TargetSpace::p1();
  t0 = Clock::now();
  const auto v1 = gw::gw_pairings(p1, CurveClass({d1}), r.n, options.max_points);
  const auto v2 = gw::gw_pairings(p1, CurveClass({d2}), r.n, options.max_points);
  r.timings_ms["pairings"] = ms_since(t0);
  r.class_dim_1 = v1.class_dim;
  r.class_dim_2 = v2.class_dim;
  r.strata_counts["class_1"] = v1.strata.size();
  r.strata_counts["class_2"] = v2.strata.size();

  t0 = Clock::now();
  const auto m = mbar::pairing_matrix(r.n, v1.class_dim, options.max_points);
  r.timings_ms["pairing_matrix"] = ms_since(t0);

  // point insertions on both factors: every degree is even
  r.sign = gw::kunneth_sign(std::vector<int>(static_cast<std::size_t>(r.n), 2),
                            std::vector<int>(static_cast<std::size_t>(r.n), 2));

  t0 = Clock::now();
  r.rhs = r.sign * gw::reconstruct_and_cup(v1, v2, m);
  r.timings_ms["solve"] = ms_since(t0);

  std::mt19937_64 rng(options.seed);
  t0 = Clock::now();
  for (int i = 0; i < options.extra_orders; ++i) {
    linalg::EliminationOrder order{shuffled(m.rows.size(), rng), shuffled(m.cols.size(), rng)};
    r.alternative_rhs.push_back(r.sign * gw::reconstruct_and_cup(v1, v2, m, order));
    if (r.alternative_rhs.back() != r.rhs) r.solution_independent = false;
  }
  if (options.extra_orders > 0) r.timings_ms["extra_solves"] = ms_since(t0);

  r.equal = r.lhs == r.rhs;
  return r;
}

nlohmann::json report_to_json(const VerificationReport& r, bool include_timings) {
  nlohmann::json j;
  j["bidegree"] = {r.d1, r.d2};
  j["n"] = r.n;
  j["lhs"] = fraction(r.lhs);
  j["rhs"] = fraction(r.rhs);
  j["sign"] = r.sign;
  j["equal"] = r.equal;
  j["class_dims"] = {r.class_dim_1, r.class_dim_2};
  j["strata_counts"] = r.strata_counts;
  auto alts = nlohmann::json::array();
  for (const auto& q : r.alternative_rhs) alts.push_back(fraction(q));
  j["alternative_rhs"] = alts;
  j["solution_independent"] = r.solution_independent;
  if (include_timings) j["timings_ms"] = r.timings_ms;
  return j;
}

namespace properties {

PropertyResult pushforward_additivity(std::mt19937_64& rng, int trials) {
  Tally t("pushforward additivity");
  for (int i = 0; i < trials; ++i) {
    const auto a = DegreeMonoid::free(uniform(rng, 1, 3));
    const auto b = DegreeMonoid::free(uniform(rng, 1, 3));
    const auto c = DegreeMonoid::free(uniform(rng, 1, 3));
    const auto f = random_map(rng, a, b, 3);
    const auto g = random_map(rng, b, c, 3);
    const auto x = random_class(rng, a.rank(), 4);
    const auto y = random_class(rng, a.rank(), 4);
    t.check(pushforward(f, x + y) == pushforward(f, x) + pushforward(f, y), "p(x+y) != p(x)+p(y) at " + x.to_string());
    t.check(pushforward(f, CurveClass::zero(a.rank())).is_zero(), "p(0) != 0");
    t.check(pushforward(compose(g, f), x) == pushforward(g, pushforward(f, x)), "composition mismatch at " + x.to_string());
    t.check(pushforward(MonoidMap::identity(a), x) == x, "identity moves " + x.to_string());
  }
  return t.done();
}

PropertyResult decomposition_counts(int max_coord) {
  Tally t("decomposition counts");
  for (int rank = 1; rank <= 3; ++rank) {
    const int bound = rank == 3 ? std::min(max_coord, 2) : max_coord;
    for (const auto& beta : classes_below(CurveClass(std::vector<std::int64_t>(static_cast<std::size_t>(rank), bound)))) {
      const auto ds = decompositions(beta);
      std::int64_t expected = 1;
      for (auto c : beta.coords()) expected *= c + 1;
      t.check(static_cast<std::int64_t>(ds.size()) == expected, "count at " + beta.to_string());
      std::set<CurveClass> firsts;
      for (const auto& [x, y] : ds) {
        t.check(x + y == beta, "parts do not sum to " + beta.to_string());
        firsts.insert(x);
      }
      t.check(firsts.size() == ds.size(), "repeated decomposition of " + beta.to_string());
      t.check(std::is_sorted(ds.begin(), ds.end()), "decompositions of " + beta.to_string() + " out of order");
    }
  }
  return t.done();
}

PropertyResult contraction_bookkeeping(std::mt19937_64& rng, int trials) {
  Tally t("edge contraction bookkeeping");
  const auto monoid = DegreeMonoid::free(2);
  for (int i = 0; i < trials; ++i) {
    const auto g = random_stable_graph(rng, monoid);
    for (const auto& [f, h] : g.graph.edges()) {
      const auto c = contract_edge(g, uniform(rng, 0, 1) ? f : h);
      const bool loop = g.graph.vertex_of(f) == g.graph.vertex_of(h);
      t.check(c.graph.num_vertices() == g.graph.num_vertices() - (loop ? 0 : 1), "vertex count");
      t.check(c.graph.num_edges() == g.graph.num_edges() - 1, "edge count");
      t.check(c.graph.total_genus() == g.graph.total_genus(), "arithmetic genus changed");
      if (validate_modular(g.graph).stable())
        t.check(moduli_dimension(c.graph) == moduli_dimension(g.graph) + 1, "moduli dimension");
      t.check(c.total_class() == g.total_class(), "total class changed");
      t.check(c.graph.tails() == g.graph.tails(), "tails changed");
      t.check(validate(c).stable(), "contraction of a stable graph is unstable");
    }
  }
  return t.done();
}

PropertyResult canonical_relabeling(std::mt19937_64& rng, int trials) {
  Tally t("canonical form under relabelling");
  const auto monoid = DegreeMonoid::free(2);
  for (int i = 0; i < trials; ++i) {
    const auto g = random_stable_graph(rng, monoid);
    const auto cg = canonicalize(g);
    const auto h = relabel_ids(g, rng);
    const auto ch = canonicalize(h);
    t.check(cg.form == ch.form, "relabelled graph has a different canonical form");
    t.check(cg.automorphisms == ch.automorphisms, "automorphism count changed under relabelling");
    t.check(canonicalize(from_canonical(cg.form, monoid)).form == cg.form, "from_canonical round trip");
  }
  return t.done();
}

PropertyResult stabilization_functoriality(std::mt19937_64& rng, int trials) {
  Tally t("stabilization functoriality");
  const auto a = DegreeMonoid::free(3);
  const auto b = DegreeMonoid::free(2);
  const auto c = DegreeMonoid::free(1);
  int throws = 0;
  for (int i = 0; i < trials; ++i) {
    const auto g = random_stable_graph(rng, a);
    const auto id = pushforward_stabilize(g, MonoidMap::identity(a));
    t.check(id.graph == g && id.morphism.dropped.empty(), "identity stabilization moved a stable graph");

    const auto f1 = random_map(rng, a, b, 1);
    const auto f2 = random_map(rng, b, c, 1);
    const auto direct = try_stabilize(g, compose(f2, f1));
    auto step = try_stabilize(g, f1);
    StabOutcome two = step.failed ? step : try_stabilize(step.st.graph, f2);
    if (direct.failed || two.failed) {
      ++throws;
      t.check(direct.failed == two.failed, "only one route has no stable model");
      continue;
    }
    direct.st.morphism.check_invariants();
    t.check(canonicalize(direct.st.graph).form == canonicalize(two.st.graph).form,
            "(g f)_* differs from g_* f_*");
    t.check(direct.st.graph == two.st.graph, "(g f)_* and g_* f_* keep different ids");
  }
  t.note(std::to_string(throws) + " draws without stable model on both routes");
  return t.done();
}

PropertyResult stabilization_confluence(std::mt19937_64& rng, int trials) {
  Tally t("stabilization confluence");
  const auto a = DegreeMonoid::free(2);
  for (int i = 0; i < trials; ++i) {
    const auto g = random_stable_graph(rng, a);
    const auto map = random_map(rng, a, DegreeMonoid::free(1), 1);
    const auto base = try_stabilize(g, map);
    for (int k = 0; k < 3; ++k) {
      auto other = try_stabilize(g, map, &rng);
      if (base.failed || other.failed) {
        t.check(base.failed == other.failed, "contraction order decides existence of a stable model");
        continue;
      }
      other.st.morphism.check_invariants();
      t.check(canonicalize(base.st.graph).form == canonicalize(other.st.graph).form, "order-dependent result");
      t.check(base.st.morphism.long_cells == other.st.morphism.long_cells, "order-dependent long cells");
    }
  }
  return t.done();
}

PropertyResult splitting_adjointness(std::mt19937_64& rng, int trials) {
  Tally t("splitting / contraction adjointness");
  const auto monoid = DegreeMonoid::free(2);
  int used = 0;
  for (int i = 0; i < trials; ++i) {
    const auto g = random_stable_graph(rng, monoid);
    const auto flags = non_loop_edge_flags(g.graph);
    if (flags.empty()) continue;
    ++used;
    const int f = flags[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(flags.size()) - 1))];
    const auto tau = contract_edge(g, f);
    const auto lifts = splitting_pullback({g.graph, f}, tau);
    const int v1 = g.graph.vertex_of(f);
    const int v2 = g.graph.vertex_of(g.graph.partner(f));
    std::size_t stable = 0;
    for (const auto& [b1, b2] : decompositions(tau.at(v1)))
      stable += vertex_is_stable(g.graph.genus(v1), g.graph.valence(v1), !b1.is_zero()) &&
                vertex_is_stable(g.graph.genus(v2), g.graph.valence(v2), !b2.is_zero());
    t.check(lifts.size() == stable, "lift count differs from the stable decompositions");
    bool found = false;
    for (const auto& x : lifts) {
      t.check(contract_edge(x, f) == tau, "a lift does not contract back");
      found = found || x == g;
    }
    t.check(found, "the graph itself is not among the lifts of its contraction");
  }
  t.note(std::to_string(used) + " graphs with a non-loop edge");
  return t.done();
}

PropertyResult splitting_counts(int max_coord) {
  Tally t("splitting pullback counts (exhaustive)");
  for (int rank = 1; rank <= 2; ++rank)
    for (int gu = 0; gu <= 1; ++gu)
      for (int gv = 0; gv <= 1; ++gv)
        for (int tu = 0; tu <= 2; ++tu)
          for (int tv = 0; tv <= 2; ++tv) {
            ModularGraph sigma;
            const int u = sigma.add_vertex(gu);
            const int v = sigma.add_vertex(gv);
            const int f = sigma.add_edge(u, v).first;
            int label = 1;
            for (int i = 0; i < tu; ++i) sigma.add_tail(u, std::to_string(label++));
            for (int i = 0; i < tv; ++i) sigma.add_tail(v, std::to_string(label++));
            const bool zu = !vertex_is_stable(gu, tu + 1, false);
            const bool zv = !vertex_is_stable(gv, tv + 1, false);
            const auto target = contract_edge(sigma, f);
            const auto bound = CurveClass(std::vector<std::int64_t>(static_cast<std::size_t>(rank), max_coord));
            for (const auto& beta : classes_below(bound)) {
              MarkedGraph tau{target, DegreeMonoid::free(rank), {{u, beta}}};
              std::int64_t all = 1;
              for (auto c : beta.coords()) all *= c + 1;
              const std::int64_t expected = all - zu - zv + (zu && zv && beta.is_zero() ? 1 : 0);
              const auto lifts = splitting_pullback({sigma, f}, tau);
              t.check(static_cast<std::int64_t>(lifts.size()) == expected,
                      "count at beta=" + beta.to_string() + " tails " + std::to_string(tu) + "," + std::to_string(tv));
            }
          }
  return t.done();
}

PropertyResult psi_cartesian(std::mt19937_64& rng, int trials) {
  Tally t("psi cartesian on splittings");
  const auto v = DegreeMonoid::p1();
  const auto w = DegreeMonoid::p1();
  const auto vw = product_monoid(v, w);
  const std::pair<MonoidMap, MonoidMap> maps{MonoidMap::projection(vw, v, 0), MonoidMap::projection(vw, w, v.rank())};
  using Pair = std::pair<std::map<int, CurveClass>, std::map<int, CurveClass>>;
  for (int i = 0; i < trials; ++i) {
    ModularGraph sigma;
    do sigma = random_stable_tree(rng, 4, 2);
    while (sigma.num_edges() == 0);
    const auto flags = non_loop_edge_flags(sigma);
    const int f = flags[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(flags.size()) - 1))];
    MarkedGraph tau = MarkedGraph::unmarked(contract_edge(sigma, f), vw);
    for (auto& [_, beta] : tau.marking) beta = random_class(rng, vw.rank(), 2);

    std::vector<Pair> upstairs;
    for (const auto& x : splitting_pullback({sigma, f}, tau)) {
      const auto [l, r] = psi_image(sigma, {MarkedOver{x, identity_morphism(x)}}, maps);
      upstairs.emplace_back(l.front().graph.marking, r.front().graph.marking);
    }
    const auto [l, r] = psi_image(tau.graph, {MarkedOver{tau, identity_morphism(tau)}}, maps);
    std::vector<Pair> downstairs;
    for (const auto& a : splitting_pullback({sigma, f}, l.front().graph))
      for (const auto& b : splitting_pullback({sigma, f}, r.front().graph)) downstairs.emplace_back(a.marking, b.marking);
    std::sort(upstairs.begin(), upstairs.end());
    std::sort(downstairs.begin(), downstairs.end());
    t.check(upstairs == downstairs, "splitting does not commute with the product projections");
  }
  return t.done();
}

PropertyResult psi_over_absolute(std::mt19937_64& rng, int trials) {
  Tally t("psi lands over the absolute stabilization");
  const auto v = DegreeMonoid::p1();
  const auto vw = product_monoid(v, v);
  const std::pair<MonoidMap, MonoidMap> maps{MonoidMap::projection(vw, v, 0), MonoidMap::projection(vw, v, 1)};
  RandomGraphOptions opts;
  opts.max_degree = 1;
  int used = 0;
  for (int i = 0; i < trials; ++i) {
    const auto g = random_stable_graph(rng, vw, opts);
    AbsoluteStabilization base;
    try {
      base = absolute_stabilization(g);
    } catch (const NoStableModelError&) {
      continue;
    }
    ++used;
    const auto [l, r] = psi_image(base.graph, {MarkedOver{g, base.morphism}}, maps);
    for (const auto* side : {&l.front(), &r.front()}) {
      const auto direct = absolute_stabilization(side->graph);
      t.check(direct.graph == base.graph, "p_* of the graph stabilizes to a different tau");
      bool same = direct.morphism.long_cells.size() == side->morphism.long_cells.size();
      for (const auto& [cell, chain] : side->morphism.long_cells) {
        auto it = direct.morphism.long_cells.find(cell);
        if (it == direct.morphism.long_cells.end()) {
          same = false;
          break;
        }
        same = same && std::set<Cell>(chain.begin(), chain.end()) == std::set<Cell>(it->second.begin(), it->second.end());
      }
      t.check(same, "composed long cells differ from those of the direct stabilization");
    }
  }
  t.note(std::to_string(used) + " graphs with a stable model");
  return t.done();
}

PropertyResult monomial_pivot_independence(std::mt19937_64& rng, int trials) {
  Tally t("intersection numbers independent of pivots");
  for (int i = 0; i < trials; ++i) {
    const int n = uniform(rng, 4, 8);
    const auto m = random_monomial(rng, n, n - 3);
    const auto base = mbar::evaluate_monomial(m).value;
    for (int k = 0; k < 3; ++k)
      t.check(mbar::evaluate_monomial(m, &rng).value == base, "pivot choice changed a value at n=" + std::to_string(n));
  }
  return t.done();
}

PropertyResult monomial_relabeling(std::mt19937_64& rng, int trials) {
  Tally t("intersection numbers under point relabelling");
  for (int i = 0; i < trials; ++i) {
    const int n = uniform(rng, 4, 8);
    const auto m = random_monomial(rng, n, n - 3);
    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    mbar::CycleMonomial p;
    p.n = n;
    for (auto s : m.divisor_factors) {
      std::vector<int> pts;
      for (int x : mbar::points_of(s)) pts.push_back(perm[static_cast<std::size_t>(x)]);
      p.divisor_factors.push_back(mbar::point_set(pts));
    }
    for (const auto& [x, e] : m.psi_exponents) p.psi_exponents[perm[static_cast<std::size_t>(x)]] = e;
    p.normalize();
    t.check(mbar::evaluate_monomial(p).value == mbar::evaluate_monomial(m).value, "relabelling changed a value");
  }
  return t.done();
}

PropertyResult monomial_degree_gate(std::mt19937_64& rng, int trials) {
  Tally t("degree gate");
  for (int i = 0; i < trials; ++i) {
    const int n = uniform(rng, 4, 8);
    int d = uniform(rng, 0, n);
    if (d == n - 3) ++d;
    const auto r = mbar::evaluate_monomial(random_monomial(rng, n, d));
    t.check(r.degree_mismatch && r.value == 0, "wrong-degree monomial evaluated to a nonzero number");
  }
  return t.done();
}

PropertyResult pairing_symmetry(int max_points) {
  Tally t("pairing matrix symmetry");
  for (int n = 4; n <= std::min(max_points, 7); ++n)
    for (int k = 0; 2 * k <= n - 3; ++k) {
      const auto a = mbar::pairing_matrix(n, k, max_points);
      const auto b = mbar::pairing_matrix(n, n - 3 - k, max_points);
      t.check(a.rows == b.cols && a.cols == b.rows, "row/column strata mismatch");
      bool same = true;
      for (std::size_t i = 0; i < a.rows.size() && same; ++i)
        for (std::size_t j = 0; j < a.cols.size() && same; ++j) same = a.entries[i][j] == b.entries[j][i];
      t.check(same, "M(n,k) is not the transpose of M(n,n-3-k) at n=" + std::to_string(n));
    }
  return t.done();
}

PropertyResult strata_census() {
  Tally t("strata census");
  t.check(mbar::enumerate_strata(4, 0).size() == 3, "n=4 dim 0");
  t.check(mbar::enumerate_strata(5, 1).size() == 10, "n=5 dim 1");
  t.check(mbar::enumerate_strata(5, 0).size() == 15, "n=5 dim 0");
  std::size_t trivalent = 1;
  for (int n = 4; n <= 8; ++n) {
    trivalent *= static_cast<std::size_t>(2 * n - 5);
    t.check(mbar::enumerate_strata(n, 0).size() == trivalent, "trivalent trees at n=" + std::to_string(n));
    t.check(mbar::enumerate_strata(n, n - 4).size() == (std::size_t{1} << (n - 1)) - static_cast<std::size_t>(n) - 1,
            "boundary divisors at n=" + std::to_string(n));
  }
  return t.done();
}

PropertyResult wdvv_anchors() {
  Tally t("WDVV anchors");
  const auto p2 = gw::TargetSpace::p2();
  const std::vector<std::pair<int, int>> plane{{1, 1}, {2, 1}, {3, 12}, {4, 620}};
  for (const auto& [d, nd] : plane)
    t.check(gw::wdvv_number(p2, CurveClass({d})) == nd, "P2 degree " + std::to_string(d));
  const auto q = gw::TargetSpace::p1xp1();
  const std::vector<std::tuple<int, int, int>> quadric{{1, 1, 1}, {2, 1, 1}, {2, 2, 12}, {3, 1, 1}, {3, 2, 96}};
  for (const auto& [a, b, nd] : quadric)
    t.check(gw::wdvv_number(q, CurveClass({a, b})) == nd, "P1xP1 (" + std::to_string(a) + "," + std::to_string(b) + ")");
  t.check(gw::wdvv_table(p2, CurveClass({4}), true).consistent, "P2 overdetermined equations disagree");
  t.check(gw::wdvv_table(q, CurveClass({3, 3}), true).consistent, "P1xP1 overdetermined equations disagree");
  return t.done();
}

PropertyResult wdvv_factor_symmetry(int max_total) {
  Tally t("WDVV factor symmetry");
  const auto q = gw::TargetSpace::p1xp1();
  for (int a = 1; a < max_total; ++a)
    for (int b = 1; a + b <= max_total; ++b)
      t.check(gw::wdvv_number(q, CurveClass({a, b})) == gw::wdvv_number(q, CurveClass({b, a})),
              "N(a,b) != N(b,a) at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return t.done();
}

PropertyResult divisor_axiom(int max_points) {
  Tally t("degree-one edgeless pairing");
  const auto p1 = gw::TargetSpace::p1();
  for (int n = 3; n <= std::min(max_points, 8); ++n) {
    const auto v = gw::stratum_pairing(p1, CurveClass({1}), n, mbar::StratumTree(n, {}));
    t.check(!v.dimension_mismatch && v.value == 1, "n=" + std::to_string(n));
  }
  return t.done();
}

PropertyResult kunneth_sign_table(std::mt19937_64& rng, int rows) {
  Tally t("Kunneth sign");
  for (int i = 0; i < rows; ++i) {
    const int n = uniform(rng, 1, 7);
    std::vector<int> g(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
    for (auto& x : g) x = uniform(rng, 0, 4);
    for (auto& x : e) x = uniform(rng, 0, 4);
    long s = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b) s += static_cast<long>(g[static_cast<std::size_t>(a)]) * e[static_cast<std::size_t>(b)];
    t.check(gw::kunneth_sign(g, e) == (s % 2 == 0 ? 1 : -1), "row " + std::to_string(i));
  }
  return t.done();
}

}  // namespace properties

bool SuiteSummary::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.ok(); });
}

std::vector<std::pair<int, int>> default_bidegrees(bool extended) {
  std::vector<std::pair<int, int>> out{{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  if (extended) {
    out.emplace_back(3, 1);
    out.emplace_back(1, 3);
  }
  return out;
}

SuiteSummary run_suite(const SuiteConfig& config) {
  SuiteSummary s;
  std::mt19937_64 rng(config.seed);
  const int graphs = config.random_graphs;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      s.results.push_back(fn());
    } catch (const std::exception& e) {
      s.results.push_back({name, PropertyResult::Status::Fail, 0, std::string("exception: ") + e.what()});
    }
  };
  namespace p = properties;
  guarded("pushforward additivity", [&] { return p::pushforward_additivity(rng, 200); });
  guarded("decomposition counts", [&] { return p::decomposition_counts(3); });
  guarded("edge contraction bookkeeping", [&] { return p::contraction_bookkeeping(rng, graphs); });
  guarded("canonical form under relabelling", [&] { return p::canonical_relabeling(rng, graphs); });
  guarded("stabilization functoriality", [&] { return p::stabilization_functoriality(rng, graphs); });
  guarded("stabilization confluence", [&] { return p::stabilization_confluence(rng, graphs); });
  guarded("splitting / contraction adjointness", [&] { return p::splitting_adjointness(rng, graphs); });
  guarded("splitting pullback counts (exhaustive)", [&] { return p::splitting_counts(3); });
  guarded("psi cartesian on splittings", [&] { return p::psi_cartesian(rng, 200); });
  guarded("psi lands over the absolute stabilization", [&] { return p::psi_over_absolute(rng, graphs); });
  guarded("strata census", [&] { return p::strata_census(); });
  guarded("intersection numbers independent of pivots", [&] { return p::monomial_pivot_independence(rng, 100); });
  guarded("intersection numbers under point relabelling", [&] { return p::monomial_relabeling(rng, 100); });
  guarded("degree gate", [&] { return p::monomial_degree_gate(rng, 50); });
  guarded("pairing matrix symmetry", [&] { return p::pairing_symmetry(config.max_points); });
  guarded("WDVV anchors", [&] { return p::wdvv_anchors(); });
  guarded("WDVV factor symmetry", [&] { return p::wdvv_factor_symmetry(6); });
  guarded("degree-one edgeless pairing", [&] { return p::divisor_axiom(config.max_points); });
  guarded("Kunneth sign", [&] { return p::kunneth_sign_table(rng, 20); });

  std::map<std::pair<int, int>, VerificationReport> reports;
  for (const auto& [d1, d2] : default_bidegrees(config.extended)) {
    const std::string name = "product formula (" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    if (2 * (d1 + d2) - 1 > config.max_points) {
      s.results.push_back({name, PropertyResult::Status::Skipped, 0,
                           "n = " + std::to_string(2 * (d1 + d2) - 1) + " above cap " + std::to_string(config.max_points)});
      continue;
    }
    guarded(name, [&] {
      VerifyOptions o;
      o.max_points = config.max_points;
      o.extra_orders = config.elimination_orders;
      o.seed = config.seed;
      const auto r = verify_product(d1, d2, o);
      reports.emplace(std::make_pair(d1, d2), r);
      PropertyResult res{name, PropertyResult::Status::Pass, 1 + r.alternative_rhs.size(), ""};
      res.detail = "lhs " + fraction(r.lhs) + ", rhs " + fraction(r.rhs);
      if (!r.equal || !r.solution_independent) res.status = PropertyResult::Status::Fail;
      if (!r.solution_independent) res.detail += ", rhs depends on the elimination order";
      return res;
    });
  }
  PropertyResult sym{"product formula factor symmetry", PropertyResult::Status::Pass, 0, ""};
  for (const auto& [key, r] : reports) {
    auto it = reports.find({key.second, key.first});
    if (it == reports.end() || key.first >= key.second) continue;
    ++sym.checked;
    if (r.lhs != it->second.lhs || r.rhs != it->second.rhs) {
      sym.status = PropertyResult::Status::Fail;
      sym.detail = "asymmetric at (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
    }
  }
  if (sym.checked == 0) sym.status = PropertyResult::Status::Skipped;
  s.results.push_back(sym);
  return s;
}

nlohmann::json summary_to_json(const SuiteSummary& s) {
  auto arr = nlohmann::json::array();
  for (const auto& r : s.results)
    arr.push_back({{"name", r.name}, {"status", status_string(r.status)}, {"checked", r.checked}, {"detail", r.detail}});
  return {{"passed", s.all_passed()}, {"results", arr}};
}

}  // namespace gwprod::verify
