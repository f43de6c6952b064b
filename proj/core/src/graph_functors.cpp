#include "gwprod/graph_functors.hpp"

#include <algorithm>
#include <set>

namespace gwprod {

Cell cell_of(const ModularGraph& g, int f) {
  if (g.is_tail(f)) return Cell::tail(f);
  return Cell::edge(std::min(f, g.partner(f)));
}

std::vector<Cell> cells(const ModularGraph& g) {
  std::vector<Cell> out;
  for (const auto& [a, _] : g.edges()) out.push_back(Cell::edge(a));
  for (int t : g.tails()) out.push_back(Cell::tail(t));
  return out;
}

namespace {

std::vector<int> cell_vertices(const ModularGraph& g, const Cell& c) {
  if (c.kind == Cell::Kind::Tail) return {g.vertex_of(c.flag)};
  return {g.vertex_of(c.flag), g.vertex_of(g.partner(c.flag))};
}

bool cell_exists(const ModularGraph& g, const Cell& c) {
  if (!g.has_flag(c.flag)) return false;
  return (c.kind == Cell::Kind::Tail) == g.is_tail(c.flag) &&
         (c.kind == Cell::Kind::Tail || g.partner(c.flag) > c.flag);
}

}  // namespace

std::optional<Cell> StabilizingMorphism::image_of(const Cell& c) const {
  for (const auto& [coarse, chain] : long_cells)
    if (std::find(chain.begin(), chain.end(), c) != chain.end()) return coarse;
  return std::nullopt;
}

void StabilizingMorphism::check_invariants() const {
  const auto& fine = original.graph;
  const auto& coarse = stabilized.graph;
  std::set<Cell> seen;
  for (const auto& [c, chain] : long_cells) {
    if (!cell_exists(coarse, c)) throw MalformedGraphError("long cell keyed by a cell missing from the stabilized graph");
    if (chain.empty()) throw MalformedGraphError("empty long cell");
    if (c.kind == Cell::Kind::Tail &&
        (chain.back().kind != Cell::Kind::Tail || fine.flag(chain.back().flag).label != coarse.flag(c.flag).label))
      throw MalformedGraphError("long tail does not end in the tail with the same label");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (!cell_exists(fine, chain[i])) throw MalformedGraphError("long cell factor missing from the original graph");
      if (!seen.insert(chain[i]).second) throw MalformedGraphError("original cell in two long cells");
      if (i == 0) continue;
      auto prev = cell_vertices(fine, chain[i - 1]);
      auto cur = cell_vertices(fine, chain[i]);
      bool touch = false;
      for (int v : prev) touch = touch || std::find(cur.begin(), cur.end(), v) != cur.end();
      if (!touch) throw MalformedGraphError("long cell is not a connected chain");
    }
    auto o = orbit.find(c);
    if (o == orbit.end() || std::find(chain.begin(), chain.end(), o->second) == chain.end())
      throw MalformedGraphError("orbit map does not pick a factor of the long cell");
  }
  for (const auto& c : dropped)
    if (!seen.insert(c).second) throw MalformedGraphError("dropped cell also appears in a long cell");
  for (const auto& c : cells(fine))
    if (!seen.count(c)) throw MalformedGraphError("original cell neither in a long cell nor dropped");
  for (const auto& c : cells(coarse))
    if (!long_cells.count(c)) throw MalformedGraphError("stabilized cell without a long cell");
  for (const auto& [sv, ov] : vertex_map)
    if (!coarse.has_vertex(sv) || !fine.has_vertex(ov)) throw MalformedGraphError("vertex map out of range");
  for (const auto& [sf, of] : flag_map)
    if (!coarse.has_flag(sf) || !fine.has_flag(of)) throw MalformedGraphError("flag map out of range");
}

StabilizingMorphism identity_morphism(const MarkedGraph& g) {
  StabilizingMorphism m;
  m.stabilized = g;
  m.original = g;
  for (int v : g.graph.vertex_ids()) m.vertex_map[v] = v;
  for (int f : g.graph.flag_ids()) m.flag_map[f] = f;
  for (const auto& c : cells(g.graph)) {
    m.long_cells[c] = {c};
    m.orbit[c] = c;
  }
  return m;
}

Stabilization pushforward_stabilize(const MarkedGraph& g, const MonoidMap& map, std::mt19937_64* rng) {
  if (!(g.monoid == map.source())) throw PreconditionError("pushforward_stabilize: map source differs from the graph's monoid");
  if (!validate(g).stable()) throw PreconditionError("pushforward_stabilize: input graph is not stable");

  MarkedGraph work{g.graph, map.target(), {}};
  for (const auto& [v, c] : g.marking) work.marking[v] = pushforward(map, c);
  auto& graph = work.graph;

  // Edge chains run from the edge's smaller flag to its larger flag.
  std::map<Cell, std::vector<Cell>> chains;
  for (const auto& c : cells(graph)) chains[c] = {c};
  std::vector<Cell> dropped;

  auto take_oriented = [&](int from_flag) {
    const int other = graph.partner(from_flag);
    auto node = chains.extract(Cell::edge(std::min(from_flag, other)));
    auto chain = std::move(node.mapped());
    if (from_flag > other) std::reverse(chain.begin(), chain.end());
    return chain;
  };

  while (true) {
    std::vector<int> unstable;
    for (int v : graph.vertex_ids())
      if (!vertex_is_stable(graph.genus(v), graph.valence(v), !work.at(v).is_zero())) unstable.push_back(v);
    if (unstable.empty()) break;
    int v = unstable.front();
    if (rng) v = unstable[std::uniform_int_distribution<std::size_t>(0, unstable.size() - 1)(*rng)];

    if (graph.genus(v) > 0) throw NoStableModelError("isolated positive-genus vertex has no stable model");
    const auto flags = graph.flags_at(v);
    if (flags.empty()) {
      graph.remove_vertex(v);
      work.marking.erase(v);
      continue;
    }
    if (flags.size() == 1) {
      const int f = flags.front();
      if (graph.is_tail(f)) throw NoStableModelError("tail '" + graph.flag(f).label + "' has no stable model");
      const int a = graph.partner(f);
      auto chain = take_oriented(a);
      dropped.insert(dropped.end(), chain.begin(), chain.end());
      graph.remove_flag(f);
      graph.remove_flag(a);
      graph.remove_vertex(v);
      work.marking.erase(v);
      continue;
    }
    // two flags
    const int f1 = flags[0];
    const int f2 = flags[1];
    if (graph.is_tail(f1) && graph.is_tail(f2))
      throw NoStableModelError("component with two tails and no curve class has no stable model");
    if (graph.partner(f1) == f2) throw NoStableModelError("unmarked genus-one cycle has no stable model");
    if (graph.is_tail(f1) || graph.is_tail(f2)) {
      const int t = graph.is_tail(f1) ? f1 : f2;
      const int f = t == f1 ? f2 : f1;
      const int a = graph.partner(f);
      auto chain = take_oriented(a);
      auto tail_node = chains.extract(Cell::tail(t));
      chain.insert(chain.end(), tail_node.mapped().begin(), tail_node.mapped().end());
      const auto label = graph.flag(t).label;
      graph.remove_flag(t);
      graph.remove_flag(f);
      graph.make_tail(a, label);
      graph.remove_vertex(v);
      work.marking.erase(v);
      chains[Cell::tail(a)] = std::move(chain);
      continue;
    }
    const int a = graph.partner(f1);
    const int d = graph.partner(f2);
    auto chain = take_oriented(a);
    auto rest = take_oriented(f2);
    chain.insert(chain.end(), rest.begin(), rest.end());
    const auto name = graph.flag(f1).label;
    graph.remove_flag(f1);
    graph.remove_flag(f2);
    graph.join(a, d, name);
    graph.remove_vertex(v);
    work.marking.erase(v);
    if (a > d) std::reverse(chain.begin(), chain.end());
    chains[Cell::edge(std::min(a, d))] = std::move(chain);
  }
  if (graph.num_vertices() == 0) throw NoStableModelError("stabilization is empty");

  StabilizingMorphism m;
  m.stabilized = work;
  m.original = g;
  for (int v : graph.vertex_ids()) m.vertex_map[v] = v;
  for (int f : graph.flag_ids()) m.flag_map[f] = f;
  for (auto& [c, chain] : chains) {
    m.orbit[c] = c.kind == Cell::Kind::Tail ? chain.back() : chain.front();
    m.long_cells[c] = std::move(chain);
  }
  std::sort(dropped.begin(), dropped.end());
  m.dropped = std::move(dropped);
  return {std::move(work), std::move(m)};
}

AbsoluteStabilization absolute_stabilization(const MarkedGraph& g, std::mt19937_64* rng) {
  auto st = pushforward_stabilize(g, MonoidMap::to_point(g.monoid), rng);
  return {std::move(st.graph.graph), std::move(st.morphism)};
}

namespace {

MarkedOver psi_component(const ModularGraph& tau, const MarkedOver& entry, const MonoidMap& map) {
  const auto& a = entry.morphism;
  if (!(a.original.graph == entry.graph.graph))
    throw PreconditionError("psi_image: morphism source is not the listed marked graph");
  if (!(a.stabilized.graph == tau)) throw PreconditionError("psi_image: morphism does not land on tau");

  auto st = pushforward_stabilize(entry.graph, map);
  const auto& b = st.morphism;

  StabilizingMorphism out;
  out.stabilized = a.stabilized;
  out.original = st.graph;
  for (const auto& [tv, ov] : a.vertex_map) {
    if (!st.graph.graph.has_vertex(ov)) throw MalformedGraphError("psi_image: a vertex over tau was contracted");
    out.vertex_map[tv] = ov;
  }
  for (const auto& [tf, of] : a.flag_map) {
    if (!st.graph.graph.has_flag(of)) throw MalformedGraphError("psi_image: a flag over tau was contracted");
    out.flag_map[tf] = of;
  }
  for (const auto& [eps, chain] : a.long_cells) {
    std::vector<Cell> image;
    for (const auto& c : chain) {
      auto img = b.image_of(c);
      if (!img) throw MalformedGraphError("psi_image: a factor of a long cell was dropped");
      if (image.empty() || image.back() != *img) image.push_back(*img);
    }
    // The factor of the long cell of p_*(tau_i) whose own long cell in tau_i
    // contains the chosen factor a^m(eps).
    const Cell chosen = a.orbit.at(eps);
    std::vector<Cell> hits;
    for (const auto& f : image) {
      const auto& upstairs = b.long_cells.at(f);
      if (std::find(upstairs.begin(), upstairs.end(), chosen) != upstairs.end()) hits.push_back(f);
    }
    if (hits.size() != 1) throw MalformedGraphError("psi_image: orbit map composition is not unique");
    out.orbit[eps] = hits.front();
    out.long_cells[eps] = std::move(image);
  }
  std::set<Cell> kept;
  for (const auto& [_, chain] : out.long_cells) kept.insert(chain.begin(), chain.end());
  for (const auto& c : cells(st.graph.graph))
    if (!kept.count(c)) out.dropped.push_back(c);
  out.check_invariants();
  return {std::move(st.graph), std::move(out)};
}

}  // namespace

std::pair<std::vector<MarkedOver>, std::vector<MarkedOver>> psi_image(
    const ModularGraph& tau, const std::vector<MarkedOver>& marked_list,
    const std::pair<MonoidMap, MonoidMap>& maps) {
  std::pair<std::vector<MarkedOver>, std::vector<MarkedOver>> out;
  for (const auto& entry : marked_list) {
    out.first.push_back(psi_component(tau, entry, maps.first));
    out.second.push_back(psi_component(tau, entry, maps.second));
  }
  return out;
}

std::vector<MarkedGraph> splitting_pullback(const EdgeContraction& contraction, const MarkedGraph& marked) {
  const auto& sigma = contraction.sigma;
  sigma.check_well_formed();
  if (!sigma.has_flag(contraction.flag) || sigma.is_tail(contraction.flag) || sigma.is_loop_flag(contraction.flag))
    throw PreconditionError("splitting_pullback: contraction is not a single non-looping edge contraction");
  if (!(contraction.target() == marked.graph))
    throw PreconditionError("splitting_pullback: marked graph is not the contraction target");
  const int v1 = sigma.vertex_of(contraction.flag);
  const int v2 = sigma.vertex_of(sigma.partner(contraction.flag));
  std::vector<MarkedGraph> out;
  for (auto& [b1, b2] : decompositions(marked.at(v1))) {
    MarkedGraph lift{sigma, marked.monoid, marked.marking};
    lift.marking[v1] = std::move(b1);
    lift.marking[v2] = std::move(b2);
    if (validate(lift).stable()) out.push_back(std::move(lift));
  }
  return out;
}

MarkedGraph add_tails(const MarkedGraph& g, const std::map<std::string, int>& assignment) {
  MarkedGraph out = g;
  for (const auto& [label, v] : assignment) {
    if (out.graph.tail_with_label(label)) throw PreconditionError("add_tails: label '" + label + "' already in use");
    if (!out.graph.has_vertex(v)) throw PreconditionError("add_tails: unknown vertex for '" + label + "'");
    out.graph.add_tail(v, label);
  }
  return out;
}

namespace {

nlohmann::json describe(const ModularGraph& g, const Cell& c) {
  if (c.kind == Cell::Kind::Tail) return {{"tail", g.flag(c.flag).label}};
  return {{"edge", g.flag(c.flag).label},
          {"ends", {g.vertex(g.vertex_of(c.flag)).name, g.vertex(g.vertex_of(g.partner(c.flag))).name}}};
}

}  // namespace

nlohmann::json morphism_to_json(const StabilizingMorphism& m) {
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& [c, chain] : m.long_cells) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : chain) factors.push_back(describe(m.original.graph, f));
    chains.push_back({{"cell", describe(m.stabilized.graph, c)},
                      {"factors", factors},
                      {"orbit", describe(m.original.graph, m.orbit.at(c))}});
  }
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& c : m.dropped) dropped.push_back(describe(m.original.graph, c));
  return {{"long_cells", chains}, {"dropped", dropped}};
}

}  // namespace gwprod
