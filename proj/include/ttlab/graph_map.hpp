#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ttlab/graph.hpp"

namespace ttlab {

namespace detail {
struct MapCache;
}

/// A graph map sending vertices to vertices and edges to tightened edge
/// paths. The image of an inverse edge is the inverse of the image path.
class GraphMap {
 public:
  /// `edge_images[i]` is the image of `domain->edges()[i]` in its positive
  /// orientation. Entries of `vertex_map` equal to -1 (or a short vector)
  /// are inferred from the edge images.
  GraphMap(std::string name, GraphPtr domain, GraphPtr codomain, std::vector<std::string> edge_images,
           std::vector<int> vertex_map = {}, bool allow_collapse = false);

  static GraphMap identity(GraphPtr graph);

  const std::string& name() const noexcept { return name_; }
  const GraphPtr& domain() const noexcept { return domain_; }
  const GraphPtr& codomain() const noexcept { return codomain_; }
  const std::vector<std::string>& edge_images() const noexcept { return images_; }
  const std::vector<int>& vertex_map() const noexcept { return vertex_map_; }

  /// Image word of an oriented edge.
  std::string image(char oriented) const;
  const std::string& positive_image(int edge_index) const { return images_.at(edge_index); }
  int vertex_image(int v) const { return vertex_map_.at(v); }

  bool is_self_map() const { return *domain_ == *codomain_; }
  bool has_collapsed_edge() const;
  /// Longest edge image.
  int lipschitz() const;

  GraphMap renamed(std::string name) const;

  friend bool operator==(const GraphMap& a, const GraphMap& b) {
    return *a.domain_ == *b.domain_ && *a.codomain_ == *b.codomain_ && a.images_ == b.images_ &&
           a.vertex_map_ == b.vertex_map_;
  }

 private:
  friend struct BccAccess;
  std::string name_;
  GraphPtr domain_;
  GraphPtr codomain_;
  std::vector<std::string> images_;
  std::vector<int> vertex_map_;
  std::shared_ptr<detail::MapCache> cache_;
};

/// Parses
///   map <name> on <graph>
///   a -> ab
///   vertex v0 -> v1      (optional)
/// The map is a self-map of `graph`.
GraphMap parse_map(std::string_view text, GraphPtr graph);
/// Writes the map in the format parse_map reads, vertex lines included.
std::string format_map(const GraphMap& f);

/// Tightened image of a word, f_#.
std::string sharp_word(const GraphMap& f, std::string_view word);

EdgePath apply_sharp(const GraphMap& f, const EdgePath& p);

/// f o g (apply g first).
GraphMap compose(const GraphMap& f, const GraphMap& g);

/// f^k for a self-map; f^0 is the identity.
GraphMap power(const GraphMap& f, int k);

struct BccReport {
  int bound = 0;
  /// True when the bound came from the junction automaton; false when the
  /// conservative Lip(f) * |edges| fallback was returned.
  bool exact = true;
};

/// A bounded cancellation constant: for every reduced path g1 g2, the
/// junction cancellation in f_#(g1) f_#(g2) is at most this many letters.
BccReport bcc_report(const GraphMap& f);
int bcc_bound(const GraphMap& f);

/// Symmetric trim of f_#(p) by C letters per side; trivial if |f_#(p)| <= 2C.
EdgePath apply_sharp_sharp(const GraphMap& f, const EdgePath& p, int C);
std::string sharp_sharp_word(const GraphMap& f, std::string_view word, int C);

/// An ordered pair of oriented edges with a common origin.
struct Turn {
  char first;
  char second;
  bool degenerate() const noexcept { return first == second; }
  friend bool operator==(const Turn&, const Turn&) = default;
  friend auto operator<=>(const Turn&, const Turn&) = default;
};

/// First edge of the image of an oriented edge (the map Tf).
char derivative(const GraphMap& f, char oriented);
Turn turn_image(const GraphMap& f, Turn t);

/// Nondegenerate turns (listed with `first` before `second` in direction
/// order) whose Tf-orbit reaches a degenerate turn.
std::vector<Turn> illegal_turns(const GraphMap& f, int max_iter = 1000);

}  // namespace ttlab
