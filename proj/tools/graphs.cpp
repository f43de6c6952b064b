#include "common.hpp"

#include "gwprod/graph_functors.hpp"
#include "gwprod/modular_graph.hpp"

using namespace gwprod;

namespace {

MonoidMap load_map(const std::string& arg) {
  const auto j = tools::load_json(arg);
  if (j.contains("source")) return map_from_json(j);
  // bare {"matrix": ...}: free monoids of matching ranks
  const auto m = j.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
  if (m.empty()) throw PreconditionError("map matrix has no rows");
  return MonoidMap(DegreeMonoid::free(static_cast<int>(m.front().size())), DegreeMonoid::free(static_cast<int>(m.size())), m);
}

MarkedGraph load_graph(const std::string& path, const DegreeMonoid* fallback) {
  const auto j = tools::load_json(path);
  if (j.contains("monoid")) return marked_graph_from_json(j, monoid_from_json(j.at("monoid")));
  if (fallback) return marked_graph_from_json(j, *fallback);
  int rank = 1;
  for (const auto& v : j.at("vertices"))
    if (v.contains("marking")) {
      rank = static_cast<int>(v.at("marking").size());
      break;
    }
  return marked_graph_from_json(j, DegreeMonoid::free(rank));
}

nlohmann::json describe(const MarkedGraph& g) {
  const auto c = canonicalize(g);
  return {{"graph", marked_graph_to_json(g)},
          {"canonical", canonical_to_json(c.form)},
          {"automorphisms", c.automorphisms}};
}

int edge_flag(const ModularGraph& g, const std::string& id) {
  if (auto f = g.edge_with_name(id)) return *f;
  throw PreconditionError("no edge named '" + id + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable marked graphs: stabilization, splitting, product projections"};
  app.require_subcommand(1);
  std::string graph_path, map_arg, edge_id, out, ranks;
  bool random_order = false;
  std::uint64_t seed = 1;

  auto* stab = app.add_subcommand("stabilize", "Push the marking forward and stabilize");
  stab->add_option("graph", graph_path, "graph JSON file")->required();
  stab->add_option("--map", map_arg, "monoid map JSON (file or inline); omitted means absolute stabilization");
  stab->add_flag("--random-order", random_order, "contract unstable vertices in random order");
  stab->add_option("--seed", seed, "seed for --random-order");
  stab->add_option("--out", out, "write JSON here instead of stdout");

  auto* split = app.add_subcommand("split", "Markings of the graph lifting the contraction of one edge");
  split->add_option("graph", graph_path, "graph JSON file")->required();
  split->add_option("--edge", edge_id, "edge id")->required();
  split->add_option("--out", out, "write JSON here instead of stdout");

  auto* psi = app.add_subcommand("psi", "Images of a product-marked graph under both projections");
  psi->add_option("graph", graph_path, "graph JSON file, marked in the product monoid")->required();
  psi->add_option("--ranks", ranks, "ranks of the two factors, e.g. 1,1 (default: split in half)");
  psi->add_option("--out", out, "write JSON here instead of stdout");

  auto* canon = app.add_subcommand("canonical", "Canonical form and automorphism count");
  canon->add_option("graph", graph_path, "graph JSON file")->required();
  canon->add_option("--out", out, "write JSON here instead of stdout");

  return tools::run(app, argc, argv, [&]() -> int {
    if (stab->parsed()) {
      std::mt19937_64 rng(seed);
      if (map_arg.empty()) {
        const auto g = load_graph(graph_path, nullptr);
        auto st = absolute_stabilization(g, random_order ? &rng : nullptr);
        const auto c = canonicalize(st.graph);
        auto gj = marked_graph_to_json(MarkedGraph::unmarked(st.graph, DegreeMonoid::free(1)));
        gj.erase("monoid");
        for (auto& v : gj["vertices"]) v.erase("marking");
        tools::emit({{"graph", gj},
                     {"canonical", canonical_to_json(c.form)},
                     {"automorphisms", c.automorphisms},
                     {"morphism", morphism_to_json(st.morphism)}},
                    out);
        return tools::kPass;
      }
      const auto map = load_map(map_arg);
      const auto g = load_graph(graph_path, &map.source());
      if (!(g.monoid == map.source())) throw PreconditionError("map source does not match the graph's monoid");
      auto st = pushforward_stabilize(g, map, random_order ? &rng : nullptr);
      auto j = describe(st.graph);
      j["morphism"] = morphism_to_json(st.morphism);
      tools::emit(j, out);
      return tools::kPass;
    }
    if (split->parsed()) {
      const auto sigma = load_graph(graph_path, nullptr);
      const int f = edge_flag(sigma.graph, edge_id);
      if (sigma.graph.is_loop_flag(f)) throw PreconditionError("edge '" + edge_id + "' is a loop");
      const auto tau = contract_edge(sigma, f);
      auto lifts = nlohmann::json::array();
      for (const auto& x : splitting_pullback({sigma.graph, f}, tau)) lifts.push_back(describe(x));
      tools::emit({{"contracted", describe(tau)}, {"edge", edge_id}, {"count", lifts.size()}, {"lifts", lifts}}, out);
      return tools::kPass;
    }
    if (psi->parsed()) {
      const auto g = load_graph(graph_path, nullptr);
      const int r = g.monoid.rank();
      int rv = r / 2;
      if (!ranks.empty()) {
        const auto rr = tools::parse_class(ranks);
        if (rr.rank() != 2 || rr[0] + rr[1] != r) throw PreconditionError("--ranks must be two numbers summing to the monoid rank");
        rv = static_cast<int>(rr[0]);
      }
      if (rv < 1 || rv >= r) throw PreconditionError("cannot split a rank-" + std::to_string(r) + " monoid into two factors");
      auto slice = [&](int offset, int len) {
        std::vector<std::string> names(g.monoid.generator_names().begin() + offset,
                                       g.monoid.generator_names().begin() + offset + len);
        std::vector<std::int64_t> c1(g.monoid.c1_pairings().begin() + offset, g.monoid.c1_pairings().begin() + offset + len);
        return DegreeMonoid(names, c1);
      };
      const auto v = slice(0, rv);
      const auto w = slice(rv, r - rv);
      const std::pair<MonoidMap, MonoidMap> maps{MonoidMap::projection(g.monoid, v, 0),
                                                 MonoidMap::projection(g.monoid, w, rv)};
      const auto base = absolute_stabilization(g);
      const auto [left, right] = psi_image(base.graph, {MarkedOver{g, base.morphism}}, maps);
      auto side = [&](const MarkedOver& m) {
        auto j = describe(m.graph);
        j["morphism"] = morphism_to_json(m.morphism);
        return j;
      };
      auto tau = marked_graph_to_json(MarkedGraph::unmarked(base.graph, DegreeMonoid::free(1)));
      tau.erase("monoid");
      for (auto& x : tau["vertices"]) x.erase("marking");
      tools::emit({{"tau", tau}, {"V", side(left.front())}, {"W", side(right.front())}}, out);
      return tools::kPass;
    }
    const auto g = load_graph(graph_path, nullptr);
    tools::emit(describe(g), out);
    return tools::kPass;
  });
}
