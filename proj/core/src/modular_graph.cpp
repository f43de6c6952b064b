#include "gwprod/modular_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace gwprod {

int ModularGraph::add_vertex(int genus, std::string name) {
  if (genus < 0) throw PreconditionError("add_vertex: genus must be nonnegative");
  const int id = next_vertex_++;
  if (name.empty()) name = "v" + std::to_string(id);
  vertices_[id] = Vertex{genus, std::move(name)};
  return id;
}

int ModularGraph::add_tail(int vertex, std::string label) {
  if (!has_vertex(vertex)) throw MalformedGraphError("add_tail: unknown vertex");
  const int id = next_flag_++;
  flags_[id] = Flag{vertex, id, std::move(label)};
  return id;
}

std::pair<int, int> ModularGraph::add_edge(int u, int v, std::string name) {
  if (!has_vertex(u) || !has_vertex(v)) throw MalformedGraphError("add_edge: unknown vertex");
  const int a = next_flag_++;
  const int b = next_flag_++;
  if (name.empty()) name = "e" + std::to_string(a);
  flags_[a] = Flag{u, b, name};
  flags_[b] = Flag{v, a, name};
  return {a, b};
}

const ModularGraph::Vertex& ModularGraph::vertex(int v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw MalformedGraphError("unknown vertex id " + std::to_string(v));
  return it->second;
}

const ModularGraph::Flag& ModularGraph::flag(int f) const {
  auto it = flags_.find(f);
  if (it == flags_.end()) throw MalformedGraphError("unknown flag id " + std::to_string(f));
  return it->second;
}

bool ModularGraph::is_loop_flag(int f) const {
  const auto& fl = flag(f);
  return fl.partner != f && flag(fl.partner).vertex == fl.vertex;
}

std::vector<int> ModularGraph::vertex_ids() const {
  std::vector<int> out;
  for (const auto& [id, _] : vertices_) out.push_back(id);
  return out;
}

std::vector<int> ModularGraph::flag_ids() const {
  std::vector<int> out;
  for (const auto& [id, _] : flags_) out.push_back(id);
  return out;
}

std::vector<int> ModularGraph::flags_at(int v) const {
  std::vector<int> out;
  for (const auto& [id, f] : flags_)
    if (f.vertex == v) out.push_back(id);
  return out;
}

std::vector<std::pair<int, int>> ModularGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [id, f] : flags_)
    if (f.partner > id) out.emplace_back(id, f.partner);
  return out;
}

std::vector<int> ModularGraph::tails() const {
  std::vector<int> out;
  for (const auto& [id, f] : flags_)
    if (f.partner == id) out.push_back(id);
  return out;
}

std::optional<int> ModularGraph::tail_with_label(const std::string& label) const {
  for (const auto& [id, f] : flags_)
    if (f.partner == id && f.label == label) return id;
  return std::nullopt;
}

std::optional<int> ModularGraph::edge_with_name(const std::string& name) const {
  for (const auto& [id, f] : flags_)
    if (f.partner > id && f.label == name) return id;
  return std::nullopt;
}

std::optional<int> ModularGraph::vertex_with_name(const std::string& name) const {
  for (const auto& [id, v] : vertices_)
    if (v.name == name) return id;
  return std::nullopt;
}

int ModularGraph::num_edges() const { return static_cast<int>(edges().size()); }

int ModularGraph::num_components() const {
  std::map<int, int> parent;
  for (const auto& [id, _] : vertices_) parent[id] = id;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [a, b] : edges()) parent[find(vertex_of(a))] = find(vertex_of(b));
  int count = 0;
  for (const auto& [id, _] : vertices_)
    if (find(id) == id) ++count;
  return count;
}

int ModularGraph::betti_number() const { return num_edges() - num_vertices() + num_components(); }

int ModularGraph::total_genus() const {
  int g = betti_number();
  for (const auto& [_, v] : vertices_) g += v.genus;
  return g;
}

void ModularGraph::check_well_formed() const {
  std::set<std::string> labels;
  for (const auto& [id, f] : flags_) {
    if (!has_vertex(f.vertex))
      throw MalformedGraphError("flag " + std::to_string(id) + " references a missing vertex");
    auto p = flags_.find(f.partner);
    if (p == flags_.end())
      throw MalformedGraphError("flag " + std::to_string(id) + " has a dangling partner");
    if (p->second.partner != id)
      throw MalformedGraphError("involution is not of order two at flag " + std::to_string(id));
    if (f.partner == id && !labels.insert(f.label).second)
      throw MalformedGraphError("duplicate tail label '" + f.label + "'");
  }
}

void ModularGraph::remove_flag(int f) {
  if (flags_.erase(f) == 0) throw MalformedGraphError("remove_flag: unknown flag");
}

void ModularGraph::remove_vertex(int v) {
  for (const auto& [id, f] : flags_)
    if (f.vertex == v) throw MalformedGraphError("remove_vertex: vertex still has flags");
  if (vertices_.erase(v) == 0) throw MalformedGraphError("remove_vertex: unknown vertex");
}

void ModularGraph::set_genus(int v, int genus) {
  if (genus < 0) throw PreconditionError("set_genus: genus must be nonnegative");
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw MalformedGraphError("set_genus: unknown vertex");
  it->second.genus = genus;
}

void ModularGraph::move_flag(int f, int v) {
  if (!has_vertex(v)) throw MalformedGraphError("move_flag: unknown vertex");
  auto it = flags_.find(f);
  if (it == flags_.end()) throw MalformedGraphError("move_flag: unknown flag");
  it->second.vertex = v;
}

void ModularGraph::make_tail(int f, std::string label) {
  auto it = flags_.find(f);
  if (it == flags_.end()) throw MalformedGraphError("make_tail: unknown flag");
  it->second.partner = f;
  it->second.label = std::move(label);
}

void ModularGraph::join(int f1, int f2, std::string name) {
  auto a = flags_.find(f1);
  auto b = flags_.find(f2);
  if (a == flags_.end() || b == flags_.end() || f1 == f2)
    throw MalformedGraphError("join: needs two distinct existing flags");
  a->second.partner = f2;
  b->second.partner = f1;
  a->second.label = name;
  b->second.label = std::move(name);
}

bool operator==(const ModularGraph& a, const ModularGraph& b) {
  if (a.vertices_.size() != b.vertices_.size() || a.flags_.size() != b.flags_.size()) return false;
  for (const auto& [id, v] : a.vertices_) {
    auto it = b.vertices_.find(id);
    if (it == b.vertices_.end() || it->second.genus != v.genus) return false;
  }
  for (const auto& [id, f] : a.flags_) {
    auto it = b.flags_.find(id);
    if (it == b.flags_.end() || it->second.vertex != f.vertex || it->second.partner != f.partner)
      return false;
    if (f.partner == id && it->second.label != f.label) return false;
  }
  return true;
}

MarkedGraph MarkedGraph::unmarked(ModularGraph graph, DegreeMonoid monoid) {
  MarkedGraph g{std::move(graph), std::move(monoid), {}};
  for (int v : g.graph.vertex_ids()) g.marking[v] = CurveClass::zero(g.monoid.rank());
  return g;
}

const CurveClass& MarkedGraph::at(int v) const {
  auto it = marking.find(v);
  if (it == marking.end()) throw MalformedGraphError("vertex " + std::to_string(v) + " has no marking");
  return it->second;
}

CurveClass MarkedGraph::total_class() const {
  auto sum = CurveClass::zero(monoid.rank());
  for (const auto& [_, c] : marking) sum += c;
  return sum;
}

bool vertex_is_stable(int genus, int valence, bool marked_nonzero) {
  return marked_nonzero || 2 * genus - 2 + valence > 0;
}

namespace {

void check_marking(const MarkedGraph& g) {
  g.graph.check_well_formed();
  if (g.marking.size() != static_cast<std::size_t>(g.graph.num_vertices()))
    throw MalformedGraphError("marking must assign a class to every vertex");
  for (const auto& [v, c] : g.marking) {
    if (!g.graph.has_vertex(v)) throw MalformedGraphError("marking references a missing vertex");
    if (c.rank() != g.monoid.rank()) throw MalformedGraphError("marking rank differs from monoid rank");
  }
}

}  // namespace

StabilityReport validate(const MarkedGraph& g) {
  check_marking(g);
  StabilityReport report;
  for (int v : g.graph.vertex_ids())
    if (!vertex_is_stable(g.graph.genus(v), g.graph.valence(v), !g.at(v).is_zero()))
      report.unstable_vertices.push_back(v);
  return report;
}

StabilityReport validate_modular(const ModularGraph& g) {
  g.check_well_formed();
  StabilityReport report;
  for (int v : g.vertex_ids())
    if (!vertex_is_stable(g.genus(v), g.valence(v), false)) report.unstable_vertices.push_back(v);
  return report;
}

ModularGraph contract_edge(const ModularGraph& g, int flag) {
  if (!g.has_flag(flag) || g.is_tail(flag))
    throw PreconditionError("contract_edge: flag " + std::to_string(flag) + " is not part of an edge");
  ModularGraph out = g;
  const int other = g.partner(flag);
  const int keep = g.vertex_of(flag);
  const int gone = g.vertex_of(other);
  out.remove_flag(flag);
  out.remove_flag(other);
  if (keep == gone) {
    out.set_genus(keep, g.genus(keep) + 1);
    return out;
  }
  for (int f : g.flags_at(gone))
    if (f != other) out.move_flag(f, keep);
  out.set_genus(keep, g.genus(keep) + g.genus(gone));
  out.remove_vertex(gone);
  return out;
}

MarkedGraph contract_edge(const MarkedGraph& g, int flag) {
  MarkedGraph out{contract_edge(g.graph, flag), g.monoid, g.marking};
  const int keep = g.graph.vertex_of(flag);
  const int gone = g.graph.vertex_of(g.graph.partner(flag));
  if (keep != gone) {
    out.marking[keep] = g.at(keep) + g.at(gone);
    out.marking.erase(gone);
  }
  return out;
}

int moduli_dimension(const ModularGraph& g) {
  auto report = validate_modular(g);
  if (!report.stable())
    throw PreconditionError("moduli_dimension: vertex " + std::to_string(report.unstable_vertices.front()) +
                            " is not modularly stable");
  int dim = 0;
  for (int v : g.vertex_ids()) dim += 3 * g.genus(v) - 3 + g.valence(v);
  return dim;
}

namespace {

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

Canonicalization canonicalize_impl(const ModularGraph& g, const std::map<int, CurveClass>* marking) {
  g.check_well_formed();
  const auto ids = g.vertex_ids();
  const int nv = static_cast<int>(ids.size());
  std::map<int, int> index;
  for (int i = 0; i < nv; ++i) index[ids[i]] = i;

  std::vector<CanonicalForm::VertexKey> keys(nv);
  std::vector<std::vector<int>> adjacency(nv, std::vector<int>(nv, 0));
  for (int i = 0; i < nv; ++i) {
    keys[i].genus = g.genus(ids[i]);
    if (marking) keys[i].marking = marking->at(ids[i]).coords();
  }
  for (int t : g.tails()) keys[index[g.vertex_of(t)]].tail_labels.push_back(g.flag(t).label);
  for (auto& k : keys) std::sort(k.tail_labels.begin(), k.tail_labels.end());
  for (const auto& [a, b] : g.edges()) {
    const int u = index[g.vertex_of(a)];
    const int v = index[g.vertex_of(b)];
    ++adjacency[u][v];
    if (u != v) ++adjacency[v][u];
  }

  // Colour refinement; colours are ranks of isomorphism-invariant signatures.
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  std::vector<int> colour(nv);
  {
    std::vector<std::pair<CanonicalForm::VertexKey, int>> sig(nv);
    for (int i = 0; i < nv; ++i) sig[i] = {keys[i], adjacency[i][i]};
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < nv; ++i)
      colour[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
  }
  for (int round = 0; round < nv; ++round) {
    std::vector<Signature> sig(nv);
    for (int i = 0; i < nv; ++i) {
      sig[i].first = colour[i];
      for (int j = 0; j < nv; ++j)
        if (j != i && adjacency[i][j]) sig[i].second.emplace_back(colour[j], adjacency[i][j]);
      std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(nv);
    for (int i = 0; i < nv; ++i)
      next[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    const bool refined = sorted.size() > static_cast<std::size_t>(*std::max_element(colour.begin(), colour.end()) + 1);
    colour = std::move(next);
    if (!refined) break;
  }

  // Vertices grouped by colour; canonical positions fill classes in colour order.
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < nv; ++i) classes[colour[i]].push_back(i);
  std::vector<std::vector<int>> groups;
  for (auto& [_, members] : classes) groups.push_back(members);

  std::vector<int> order;  // position -> input index
  std::vector<std::pair<int, int>> best;
  bool have_best = false;
  std::uint64_t best_count = 0;
  std::vector<int> best_order;

  auto encode = [&](const std::vector<int>& ord) {
    std::vector<int> pos(nv);
    for (int p = 0; p < nv; ++p) pos[ord[p]] = p;
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges()) {
      int u = pos[index[g.vertex_of(a)]];
      int v = pos[index[g.vertex_of(b)]];
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  };

  std::function<void(std::size_t)> search = [&](std::size_t gi) {
    if (gi == groups.size()) {
      auto enc = encode(order);
      if (!have_best || enc < best) {
        best = std::move(enc);
        best_order = order;
        best_count = 1;
        have_best = true;
      } else if (enc == best) {
        ++best_count;
      }
      return;
    }
    auto perm = groups[gi];
    std::sort(perm.begin(), perm.end());
    do {
      order.insert(order.end(), perm.begin(), perm.end());
      search(gi + 1);
      order.resize(order.size() - perm.size());
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  search(0);

  Canonicalization out;
  out.form.edges = best;
  for (int p = 0; p < nv; ++p) {
    out.form.vertices.push_back(keys[best_order[p]]);
    out.vertex_order.push_back(ids[best_order[p]]);
  }
  std::uint64_t autos = best_count;
  for (int i = 0; i < nv; ++i) {
    autos *= factorial(adjacency[i][i]) << adjacency[i][i];
    for (int j = i + 1; j < nv; ++j) autos *= factorial(adjacency[i][j]);
  }
  out.automorphisms = autos;
  return out;
}

}  // namespace

Canonicalization canonicalize(const MarkedGraph& g) {
  check_marking(g);
  return canonicalize_impl(g.graph, &g.marking);
}

Canonicalization canonicalize(const ModularGraph& g) { return canonicalize_impl(g, nullptr); }

MarkedGraph from_canonical(const CanonicalForm& form, const DegreeMonoid& monoid) {
  MarkedGraph out;
  out.monoid = monoid;
  for (std::size_t i = 0; i < form.vertices.size(); ++i) {
    const auto& key = form.vertices[i];
    const int v = out.graph.add_vertex(key.genus);
    out.marking[v] = key.marking.empty() ? CurveClass::zero(monoid.rank()) : CurveClass(key.marking);
    for (const auto& label : key.tail_labels) out.graph.add_tail(v, label);
  }
  for (const auto& [u, v] : form.edges) out.graph.add_edge(u, v);
  return out;
}

MarkedGraph marked_graph_from_json(const nlohmann::json& j, const DegreeMonoid& monoid) {
  MarkedGraph out;
  out.monoid = monoid;
  std::map<std::string, int> ids;
  for (const auto& vj : j.at("vertices")) {
    const auto name = vj.at("id").get<std::string>();
    if (ids.count(name)) throw MalformedGraphError("duplicate vertex id '" + name + "'");
    const int v = out.graph.add_vertex(vj.value("genus", 0), name);
    ids[name] = v;
    out.marking[v] = vj.contains("marking") ? vj.at("marking").get<CurveClass>() : CurveClass::zero(monoid.rank());
    if (out.marking[v].rank() != monoid.rank())
      throw MalformedGraphError("vertex '" + name + "' marking has the wrong rank");
  }
  auto lookup = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it == ids.end()) throw MalformedGraphError("reference to unknown vertex '" + name + "'");
    return it->second;
  };
  int counter = 0;
  for (const auto& ej : j.value("edges", nlohmann::json::array())) {
    ++counter;
    std::string name = "e" + std::to_string(counter);
    nlohmann::json ends = ej;
    if (ej.is_object()) {
      name = ej.value("id", name);
      ends = ej.at("ends");
    }
    if (!ends.is_array() || ends.size() != 2) throw MalformedGraphError("edge must have exactly two ends");
    out.graph.add_edge(lookup(ends[0].get<std::string>()), lookup(ends[1].get<std::string>()), name);
  }
  for (const auto& tj : j.value("tails", nlohmann::json::array()))
    out.graph.add_tail(lookup(tj.at("vertex").get<std::string>()), tj.at("label").get<std::string>());
  out.graph.check_well_formed();
  return out;
}

nlohmann::json marked_graph_to_json(const MarkedGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (int v : g.graph.vertex_ids())
    vertices.push_back({{"id", g.graph.vertex(v).name}, {"genus", g.graph.genus(v)}, {"marking", g.at(v)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.graph.edges())
    edges.push_back({{"id", g.graph.flag(a).label},
                     {"ends", {g.graph.vertex(g.graph.vertex_of(a)).name, g.graph.vertex(g.graph.vertex_of(b)).name}}});
  nlohmann::json tails = nlohmann::json::array();
  for (int t : g.graph.tails())
    tails.push_back({{"label", g.graph.flag(t).label}, {"vertex", g.graph.vertex(g.graph.vertex_of(t)).name}});
  return {{"monoid", monoid_to_json(g.monoid)}, {"vertices", vertices}, {"edges", edges}, {"tails", tails}};
}

nlohmann::json canonical_to_json(const CanonicalForm& form) {
  nlohmann::json vertices = nlohmann::json::array();
  nlohmann::json tails = nlohmann::json::array();
  for (std::size_t i = 0; i < form.vertices.size(); ++i) {
    const auto& key = form.vertices[i];
    const auto id = "v" + std::to_string(i);
    nlohmann::json vj = {{"id", id}, {"genus", key.genus}};
    if (!key.marking.empty()) vj["marking"] = key.marking;
    vertices.push_back(vj);
    for (const auto& label : key.tail_labels) tails.push_back({{"label", label}, {"vertex", id}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t k = 0; k < form.edges.size(); ++k)
    edges.push_back({{"id", "e" + std::to_string(k)},
                     {"ends", {"v" + std::to_string(form.edges[k].first), "v" + std::to_string(form.edges[k].second)}}});
  return {{"vertices", vertices}, {"edges", edges}, {"tails", tails}};
}

}  // namespace gwprod
