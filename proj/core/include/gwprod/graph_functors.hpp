#pragma once

#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "gwprod/curve_classes.hpp"
#include "gwprod/modular_graph.hpp"

namespace gwprod {

/// Raised when stabilization leaves nothing stable (or would drop a tail or genus).
class NoStableModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge or a tail of some graph. Edges are named by their smaller flag id.
struct Cell {
  enum class Kind { Edge, Tail };
  Kind kind = Kind::Edge;
  int flag = -1;

  static Cell edge(int flag) { return {Kind::Edge, flag}; }
  static Cell tail(int flag) { return {Kind::Tail, flag}; }
  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// The cell of g containing flag f.
Cell cell_of(const ModularGraph& g, int f);
std::vector<Cell> cells(const ModularGraph& g);

/// Stabilizing morphism original -> stabilized. Ids are shared: every
/// surviving vertex and flag of the stabilized graph keeps the id it had in
/// the original, so vertex_map and flag_map are recorded explicitly but are
/// inclusions for morphisms built here.
struct StabilizingMorphism {
  MarkedGraph stabilized;
  MarkedGraph original;
  std::map<int, int> vertex_map;  // stabilized vertex -> original vertex
  std::map<int, int> flag_map;    // stabilized flag -> original flag
  /// Long edge / long tail: stabilized cell -> ordered chain of original cells.
  /// A long tail runs from the stabilized tail's vertex outward and ends with
  /// the original tail.
  std::map<Cell, std::vector<Cell>> long_cells;
  /// Orbit map: stabilized cell -> distinguished factor of its long cell.
  std::map<Cell, Cell> orbit;
  /// Original cells removed with components that became unstable.
  std::vector<Cell> dropped;

  /// The stabilized cell whose long cell contains c, if any.
  std::optional<Cell> image_of(const Cell& c) const;

  /// Throws MalformedGraphError if the chains are not connected or do not
  /// partition the surviving original cells.
  void check_invariants() const;
};

/// The identity stabilizing morphism of a stable marked graph.
StabilizingMorphism identity_morphism(const MarkedGraph& g);

struct Stabilization {
  MarkedGraph graph;
  StabilizingMorphism morphism;
};

/// Pushes the marking along map and contracts the vertices that become
/// unstable. When rng is given, unstable vertices are processed in random
/// order instead of id order.
Stabilization pushforward_stabilize(const MarkedGraph& g, const MonoidMap& map,
                                    std::mt19937_64* rng = nullptr);

struct AbsoluteStabilization {
  ModularGraph graph;
  StabilizingMorphism morphism;
};

AbsoluteStabilization absolute_stabilization(const MarkedGraph& g, std::mt19937_64* rng = nullptr);

struct MarkedOver {
  MarkedGraph graph;
  StabilizingMorphism morphism;  // graph -> tau
};

/// Image of (tau, (tau_i, a_i)) under the functors induced by the two
/// projections: each tau_i is replaced by its stabilization p_*(tau_i) and the
/// orbit maps are recomposed onto tau.
std::pair<std::vector<MarkedOver>, std::vector<MarkedOver>> psi_image(
    const ModularGraph& tau, const std::vector<MarkedOver>& marked_list,
    const std::pair<MonoidMap, MonoidMap>& maps);

/// One-edge contraction sigma -> tau, identified by a flag of the edge.
struct EdgeContraction {
  ModularGraph sigma;
  int flag = -1;

  ModularGraph target() const { return contract_edge(sigma, flag); }
};

/// Markings on sigma lifting `marked` (a marking on the contraction target):
/// one per decomposition of the class at the merged vertex, unstable ones
/// filtered out.
std::vector<MarkedGraph> splitting_pullback(const EdgeContraction& contraction, const MarkedGraph& marked);

/// New tails, label -> vertex id.
MarkedGraph add_tails(const MarkedGraph& g, const std::map<std::string, int>& assignment);

nlohmann::json morphism_to_json(const StabilizingMorphism& m);

}  // namespace gwprod
