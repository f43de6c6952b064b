#include "gwprod/random_graphs.hpp"

#include <algorithm>

namespace gwprod {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

MarkedGraph random_stable_graph(std::mt19937_64& rng, const DegreeMonoid& monoid, const RandomGraphOptions& options) {
  MarkedGraph g;
  g.monoid = monoid;
  const int k = uniform(rng, 1, options.max_vertices);
  std::vector<int> vs;
  std::bernoulli_distribution zero(options.zero_marking);
  std::bernoulli_distribution positive_genus(0.2);
  for (int i = 0; i < k; ++i) {
    const int genus = options.max_genus > 0 && positive_genus(rng) ? uniform(rng, 1, options.max_genus) : 0;
    const int v = g.graph.add_vertex(genus);
    vs.push_back(v);
    std::vector<std::int64_t> coords(static_cast<std::size_t>(monoid.rank()), 0);
    if (!zero(rng))
      for (auto& c : coords) c = uniform(rng, 0, options.max_degree);
    g.marking[v] = CurveClass(std::move(coords));
  }
  for (int i = 1; i < k; ++i) g.graph.add_edge(vs[uniform(rng, 0, i - 1)], vs[i]);
  const int extra = uniform(rng, 0, options.max_extra_edges);
  for (int i = 0; i < extra; ++i) g.graph.add_edge(vs[uniform(rng, 0, k - 1)], vs[uniform(rng, 0, k - 1)]);
  int label = 1;
  const int tails = uniform(rng, 0, options.max_extra_tails);
  for (int i = 0; i < tails; ++i) g.graph.add_tail(vs[uniform(rng, 0, k - 1)], std::to_string(label++));
  for (int v : vs)
    while (!vertex_is_stable(g.graph.genus(v), g.graph.valence(v), !g.at(v).is_zero()))
      g.graph.add_tail(v, std::to_string(label++));
  return g;
}

ModularGraph random_stable_tree(std::mt19937_64& rng, int max_vertices, int max_extra_tails) {
  ModularGraph g;
  const int k = uniform(rng, 1, max_vertices);
  std::vector<int> vs;
  for (int i = 0; i < k; ++i) vs.push_back(g.add_vertex(0));
  for (int i = 1; i < k; ++i) g.add_edge(vs[uniform(rng, 0, i - 1)], vs[i]);
  int label = 1;
  const int tails = uniform(rng, 0, max_extra_tails);
  for (int i = 0; i < tails; ++i) g.add_tail(vs[uniform(rng, 0, k - 1)], std::to_string(label++));
  for (int v : vs)
    while (g.valence(v) < 3) g.add_tail(v, std::to_string(label++));
  return g;
}

MarkedGraph relabel_ids(const MarkedGraph& g, std::mt19937_64& rng) {
  auto vertices = g.graph.vertex_ids();
  std::shuffle(vertices.begin(), vertices.end(), rng);
  MarkedGraph out;
  out.monoid = g.monoid;
  std::map<int, int> vmap;
  for (int v : vertices) {
    vmap[v] = out.graph.add_vertex(g.graph.genus(v));
    out.marking[vmap[v]] = g.at(v);
  }
  std::vector<int> items;
  for (const auto& [a, _] : g.graph.edges()) items.push_back(a);
  for (int t : g.graph.tails()) items.push_back(t);
  std::shuffle(items.begin(), items.end(), rng);
  for (int f : items) {
    if (g.graph.is_tail(f)) {
      out.graph.add_tail(vmap[g.graph.vertex_of(f)], g.graph.flag(f).label);
    } else if (std::bernoulli_distribution(0.5)(rng)) {
      out.graph.add_edge(vmap[g.graph.vertex_of(f)], vmap[g.graph.vertex_of(g.graph.partner(f))]);
    } else {
      out.graph.add_edge(vmap[g.graph.vertex_of(g.graph.partner(f))], vmap[g.graph.vertex_of(f)]);
    }
  }
  return out;
}

}  // namespace gwprod
