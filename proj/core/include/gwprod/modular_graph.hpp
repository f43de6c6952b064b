#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwprod/curve_classes.hpp"

namespace gwprod {

/// Raised for structurally broken graphs: bad involution, dangling flags.
class MalformedGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite modular graph: flags attached to genus-labelled vertices, with an
/// involution whose 2-cycles are edges and whose fixed points are tails.
///
/// Vertex and flag identifiers are integers chosen by the graph and are kept
/// stable by every operation in this library (contractions remove ids, they
/// never renumber), so morphisms can be recorded as id maps.
class ModularGraph {
 public:
  struct Vertex {
    int genus = 0;
    std::string name;
  };
  struct Flag {
    int vertex = -1;
    int partner = -1;  // equal to the flag's own id for a tail
    std::string label;  // tail label, or edge name on both flags of an edge
  };

  int add_vertex(int genus, std::string name = {});
  /// Adds a tail at vertex and returns its flag id.
  int add_tail(int vertex, std::string label);
  /// Adds an edge between u and v (u == v is a loop) and returns its two flags.
  std::pair<int, int> add_edge(int u, int v, std::string name = {});

  bool has_vertex(int v) const { return vertices_.count(v) != 0; }
  bool has_flag(int f) const { return flags_.count(f) != 0; }
  const Vertex& vertex(int v) const;
  const Flag& flag(int f) const;
  int genus(int v) const { return vertex(v).genus; }
  int vertex_of(int f) const { return flag(f).vertex; }
  int partner(int f) const { return flag(f).partner; }
  bool is_tail(int f) const { return partner(f) == f; }
  bool is_loop_flag(int f) const;

  std::vector<int> vertex_ids() const;
  std::vector<int> flag_ids() const;
  /// Flags at v in increasing id order.
  std::vector<int> flags_at(int v) const;
  int valence(int v) const { return static_cast<int>(flags_at(v).size()); }
  /// Edges as (smaller flag, larger flag), sorted.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> tails() const;
  std::optional<int> tail_with_label(const std::string& label) const;
  std::optional<int> edge_with_name(const std::string& name) const;
  std::optional<int> vertex_with_name(const std::string& name) const;
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const;

  /// First Betti number summed over components: |E| - |V| + #components.
  int betti_number() const;
  int total_genus() const;
  int num_components() const;

  /// Throws MalformedGraphError if the involution or incidence data is broken.
  void check_well_formed() const;

  // Low-level mutators used by graph operations.
  void remove_flag(int f);
  void remove_vertex(int v);
  void set_genus(int v, int genus);
  void move_flag(int f, int v);
  /// Turns f into a tail with the given label (f's former partner must be gone).
  void make_tail(int f, std::string label);
  /// Pairs two existing flags into an edge.
  void join(int f1, int f2, std::string name);
  int next_vertex_id() const { return next_vertex_; }
  int next_flag_id() const { return next_flag_; }

  friend bool operator==(const ModularGraph&, const ModularGraph&);

 private:
  std::map<int, Vertex> vertices_;
  std::map<int, Flag> flags_;
  int next_vertex_ = 0;
  int next_flag_ = 0;
};

/// A modular graph whose vertices carry effective curve classes.
struct MarkedGraph {
  ModularGraph graph;
  DegreeMonoid monoid = DegreeMonoid::free(1);
  std::map<int, CurveClass> marking;

  /// Every vertex of graph marked with zero.
  static MarkedGraph unmarked(ModularGraph graph, DegreeMonoid monoid);
  const CurveClass& at(int v) const;
  CurveClass total_class() const;

  friend bool operator==(const MarkedGraph&, const MarkedGraph&) = default;
};

/// 2g - 2 + |F(v)| > 0, or a nonzero curve class at v.
bool vertex_is_stable(int genus, int valence, bool marked_nonzero);

struct StabilityReport {
  std::vector<int> unstable_vertices;
  bool stable() const { return unstable_vertices.empty(); }
};

StabilityReport validate(const MarkedGraph& g);
/// Modular stability only (every vertex has 2g - 2 + |F| > 0).
StabilityReport validate_modular(const ModularGraph& g);

/// Contracts the edge containing flag. A non-loop edge merges its endpoints
/// into the vertex of `flag`, summing genus and marking; a loop raises genus.
MarkedGraph contract_edge(const MarkedGraph& g, int flag);
ModularGraph contract_edge(const ModularGraph& g, int flag);

/// sum over v of 3 g(v) - 3 + |F(v)|.
int moduli_dimension(const ModularGraph& g);

/// Isomorphism-invariant encoding of a (marked) graph.
struct CanonicalForm {
  struct VertexKey {
    int genus = 0;
    std::vector<std::int64_t> marking;
    std::vector<std::string> tail_labels;
    friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
  };
  std::vector<VertexKey> vertices;
  /// (i, j) with i <= j, indices into vertices, sorted, with multiplicity.
  std::vector<std::pair<int, int>> edges;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct Canonicalization {
  CanonicalForm form;
  /// canonical position -> vertex id of the input graph
  std::vector<int> vertex_order;
  /// order of the automorphism group acting on flags
  std::uint64_t automorphisms = 1;
};

Canonicalization canonicalize(const MarkedGraph& g);
Canonicalization canonicalize(const ModularGraph& g);

/// Rebuilds a graph from a canonical form (vertex i gets id i).
MarkedGraph from_canonical(const CanonicalForm& form, const DegreeMonoid& monoid);

// JSON: {"vertices":[{"id","genus","marking"}], "edges":[...], "tails":[{"label","vertex"}]}
// An edge is either ["v1","v2"] or {"id":"e1","ends":["v1","v2"]}.
MarkedGraph marked_graph_from_json(const nlohmann::json& j, const DegreeMonoid& monoid);
nlohmann::json marked_graph_to_json(const MarkedGraph& g);
nlohmann::json canonical_to_json(const CanonicalForm& form);

}  // namespace gwprod
