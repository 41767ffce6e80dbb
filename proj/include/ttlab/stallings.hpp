#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ttlab {

/// A directed edge labeled by a generator of F_r (lowercase letter).
struct LabeledEdge {
  int from;
  int to;
  char label;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// A based graph with edges labeled by rose edges.
class SubgroupGraph {
 public:
  SubgroupGraph(int rank, int vertex_count, int base, std::vector<LabeledEdge> edges);

  /// Loops spelling each word, wedged at the base vertex (unfolded).
  static SubgroupGraph wedge(const std::vector<std::string>& words, int rank);

  int rank() const noexcept { return rank_; }
  int vertex_count() const noexcept { return vertex_count_; }
  int base() const noexcept { return base_; }
  const std::vector<LabeledEdge>& edges() const noexcept { return edges_; }
  int valence(int v) const;

  /// No vertex has two outgoing, or two incoming, edges with one label.
  bool is_folded() const;

  /// Endpoint of the unique edge leaving v along an oriented letter.
  /// Requires a folded graph.
  std::optional<int> follow(int v, char letter) const;
  /// Endpoint of the lift of `word` starting at v, if it exists.
  std::optional<int> lift(int v, std::string_view word) const;

 private:
  int rank_;
  int vertex_count_;
  int base_;
  std::vector<LabeledEdge> edges_;
  // out_[v * 2r + slot]: slot 2i is label i forward, 2i+1 backward; -1 if none
  std::vector<int> step_;
  bool folded_ = false;
};

/// Folds until immersed. With a seed the fold order is shuffled.
SubgroupGraph fold(const SubgroupGraph& g, std::optional<unsigned> seed = std::nullopt);

SubgroupGraph from_generators(const std::vector<std::string>& words, int rank);

/// Strips valence-one vertices (and isolated vertices). With keep_base the
/// base vertex is never removed; otherwise a surviving vertex of least
/// index becomes the base.
SubgroupGraph core(const SubgroupGraph& g, bool keep_base);

/// Some vertex has a closed lift of the cyclic word.
bool carries_circuit(const SubgroupGraph& s, std::string_view cyclic_word);
/// Some vertex has a lift of the word.
bool carries_segment(const SubgroupGraph& s, std::string_view word);
/// The reduced word lifts to a loop at the base.
bool contains_element(const SubgroupGraph& s, std::string_view word);

/// Label-preserving isomorphism taking base to base.
bool isomorphic(const SubgroupGraph& a, const SubgroupGraph& b);

struct NaturalEdge {
  int from;
  int to;
  /// Labels read along the chain; uppercase where an edge is crossed backwards.
  std::string word;
};

struct EdgeletDecomposition {
  std::vector<int> natural_vertices;
  std::vector<NaturalEdge> natural_edges;
  int edgelet_count = 0;
};

/// Natural vertices have valence >= 3, plus the base when `base_is_natural`.
/// A cycle with no natural vertex becomes one closed natural edge.
EdgeletDecomposition edgelets(const SubgroupGraph& s, bool base_is_natural = true);

std::string to_dot(const SubgroupGraph& s, const std::string& name = "S");

}  // namespace ttlab
