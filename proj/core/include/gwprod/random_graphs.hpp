#pragma once

#include <random>

#include "gwprod/modular_graph.hpp"

namespace gwprod {

struct RandomGraphOptions {
  int max_vertices = 4;
  int max_genus = 1;
  int max_extra_edges = 2;
  int max_extra_tails = 3;
  /// Upper bound for each coordinate of a vertex marking.
  int max_degree = 2;
  /// Probability that a vertex marking is zero.
  double zero_marking = 0.5;
};

/// Connected stable marked graph: random spanning tree plus extra edges and
/// loops, random genera and markings, then tails added until stable.
MarkedGraph random_stable_graph(std::mt19937_64& rng, const DegreeMonoid& monoid,
                                const RandomGraphOptions& options = {});

/// Connected genus-0 tree in which every vertex has at least three flags.
ModularGraph random_stable_tree(std::mt19937_64& rng, int max_vertices = 4, int max_extra_tails = 2);

/// The same graph with vertex and flag ids assigned in a shuffled order.
MarkedGraph relabel_ids(const MarkedGraph& g, std::mt19937_64& rng);

}  // namespace gwprod
