#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttlab/graph.hpp"
#include "ttlab/graph_map.hpp"
#include "ttlab/strata.hpp"

namespace ttlab {

/// f^k_#(seed), remembered together with how it was produced.
struct LeafSegment {
  EdgePath path;
  char seed;
  int iterate;
  std::string map_name;
};

/// Throws NotEGStratum unless `seed` lies in an EG stratum of f.
LeafSegment leaf_segment(const GraphMap& f, char seed, int k);

/// Index of the highest EG stratum, or -1.
int top_eg_stratum(const GraphMap& f, const Filtration& filt);

/// The basis set of paths and circuits containing `beta` as a subpath.
struct AttractingNeighborhood {
  EdgePath beta;
  Orientation mode = Orientation::either;
};

bool neighborhood_contains(const AttractingNeighborhood& n, const EdgePath& p);
/// Circuits are read as periodic words, so occurrences may wrap around any
/// number of times.
bool neighborhood_contains(const AttractingNeighborhood& n, const Circuit& c);

/// `attracted` is the least k <= max_iter with f^k_#(p) in the
/// neighborhood. An empty value only means "not within max_iter".
struct AttractionResult {
  std::optional<int> attracted;
  int iterations = 0;
};

AttractionResult weak_attraction_test(const GraphMap& f, const AttractingNeighborhood& n, const EdgePath& p,
                                      int max_iter);
AttractionResult weak_attraction_test(const GraphMap& f, const AttractingNeighborhood& n, const Circuit& c,
                                      int max_iter);

struct NonAttractingSubgraph {
  GraphPtr graph;
  /// Edge indices from which the EG stratum is unreachable.
  std::vector<int> z_edges;
  /// Closed Nielsen path of the stratum's height; empty when none was found.
  std::string rho;
  int rho_origin = 0;
  /// Edges outside Z and outside the stratum that a bounded attraction
  /// probe could not attract; non-empty means reachability and attraction
  /// disagree within the probe bounds.
  std::vector<int> disagreements;

  bool contains_edge(char letter) const;
};

NonAttractingSubgraph nonattracting_subgraph(const GraphMap& f, int eg_stratum, int rho_bound = 12,
                                             int probe_iter = 12);

/// Whether the word splits into Z-edges and copies of rho or its inverse.
bool carried_by_groupoid(const NonAttractingSubgraph& z, const EdgePath& p);
/// Same test for every rotation of a circuit.
bool carried_by_groupoid(const NonAttractingSubgraph& z, const Circuit& c);

/// The neighborhood N(G, beta) used for attraction probes of an EG stratum:
/// the first iterate of the stratum's first edge with at least `min_len`
/// letters.
AttractingNeighborhood stratum_neighborhood(const GraphMap& f, int eg_stratum, int min_len);

}  // namespace ttlab
