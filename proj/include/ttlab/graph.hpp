#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttlab/word.hpp"

namespace ttlab {

/// An unoriented edge, stored in its positive orientation.
struct Edge {
  char id;  // lowercase letter; the uppercase letter is the inverse
  int init;
  int term;
};

/// A finite connected graph whose edges are named by lowercase letters.
/// Immutable once built.
class MarkedGraph {
 public:
  MarkedGraph(std::string name, std::vector<std::string> vertex_names, std::vector<Edge> edges);

  /// The rose R_r: one vertex `v0` and loops a, b, c, ...
  static MarkedGraph rose(int rank);

  const std::string& name() const noexcept { return name_; }
  int vertex_count() const noexcept { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
  std::optional<int> vertex_index(std::string_view name) const;

  bool has_letter(char oriented) const noexcept;
  /// Position of the unoriented edge in `edges()`.
  int edge_index(char oriented) const;
  char edge_letter(int index) const { return edges_.at(index).id; }
  int origin(char oriented) const;
  int terminus(char oriented) const;

  /// Oriented edges whose origin is `v`, in edge order (positive before inverse).
  std::vector<char> directions_at(int v) const;
  int valence(int v) const;

  /// First Betti number.
  int rank() const noexcept { return edge_count() - vertex_count() + 1; }
  /// No valence-one vertices.
  bool is_core() const;
  bool is_rose() const noexcept { return vertex_count() == 1; }

  /// Checks that consecutive letters of `word` share endpoints, starting at `start`.
  bool is_path(std::string_view word, int start) const;
  bool is_closed_path(std::string_view word) const;

  friend bool operator==(const MarkedGraph& a, const MarkedGraph& b);

 private:
  std::string name_;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::array<int, 26> index_of_{};
};

using GraphPtr = std::shared_ptr<const MarkedGraph>;

/// Parses the text format
///   graph <name>
///   edges: a(v0->v0), b(v0->v1), ...
MarkedGraph parse_graph(std::string_view text);

/// Inverse of parse_graph; isolated vertices go on a `vertices:` line.
std::string format_graph(const MarkedGraph& g);

/// A finite edge path. Trivial paths keep their basepoint.
class EdgePath {
 public:
  EdgePath(GraphPtr graph, std::string word, int origin);
  /// Origin inferred from the first letter; `word` must be non-empty.
  EdgePath(GraphPtr graph, std::string word);
  static EdgePath trivial(GraphPtr graph, int vertex);

  const GraphPtr& graph() const noexcept { return graph_; }
  const std::string& word() const noexcept { return word_; }
  int origin() const noexcept { return origin_; }
  int terminus() const noexcept { return terminus_; }
  std::size_t size() const noexcept { return word_.size(); }
  bool empty() const noexcept { return word_.empty(); }
  bool is_reduced() const { return ttlab::is_reduced(word_); }
  EdgePath reversed() const;
  EdgePath subpath(std::size_t pos, std::size_t len) const;

  friend bool operator==(const EdgePath& a, const EdgePath& b) {
    return a.word_ == b.word_ && a.origin_ == b.origin_;
  }

 private:
  GraphPtr graph_;
  std::string word_;
  int origin_;
  int terminus_;
};

/// Concatenation; the terminus of `a` must equal the origin of `b`.
EdgePath concat(const EdgePath& a, const EdgePath& b);

/// The reduced representative [p] rel endpoints.
EdgePath tighten(const EdgePath& path);

/// A cyclically reduced closed path, considered up to rotation.
class Circuit {
 public:
  Circuit(GraphPtr graph, std::string word);

  const GraphPtr& graph() const noexcept { return graph_; }
  const std::string& word() const noexcept { return word_; }
  std::size_t size() const noexcept { return word_.size(); }

  friend bool operator==(const Circuit& a, const Circuit& b) { return cyclic_equal(a.word_, b.word_); }

 private:
  GraphPtr graph_;
  std::string word_;
};

/// Cyclic reduction of a closed word; nullopt is the trivial circuit.
std::optional<Circuit> cyclically_reduce(GraphPtr graph, std::string_view closed_word);

std::vector<std::size_t> occurrences(const EdgePath& haystack, const EdgePath& needle, OccurrenceMode mode,
                                     Orientation orientation);

}  // namespace ttlab
