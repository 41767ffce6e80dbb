#include "ttlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ttlab/error.hpp"

namespace ttlab {

MarkedGraph::MarkedGraph(std::string name, std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : name_(std::move(name)), vertex_names_(std::move(vertex_names)), edges_(std::move(edges)) {
  index_of_.fill(-1);
  if (vertex_names_.empty()) throw InvalidGraph("graph '" + name_ + "' has no vertices");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!is_positive(e.id)) throw InvalidGraph(std::string("edge id '") + e.id + "' is not a lowercase letter");
    int slot = e.id - 'a';
    if (index_of_[slot] != -1) throw InvalidGraph(std::string("duplicate edge id '") + e.id + "'");
    if (e.init < 0 || e.init >= vertex_count() || e.term < 0 || e.term >= vertex_count()) {
      throw InvalidGraph(std::string("edge '") + e.id + "' references a missing vertex");
    }
    index_of_[slot] = static_cast<int>(i);
  }
  // connectivity
  std::vector<int> parent(vertex_names_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : edges_) parent[find(e.init)] = find(e.term);
  for (int v = 1; v < vertex_count(); ++v) {
    if (find(v) != find(0)) throw InvalidGraph("graph '" + name_ + "' is not connected");
  }
}

MarkedGraph MarkedGraph::rose(int rank) {
  if (rank < 0 || rank > 26) throw InvalidGraph("rose rank must be in [0, 26]");
  std::vector<Edge> edges;
  for (int i = 0; i < rank; ++i) edges.push_back({static_cast<char>('a' + i), 0, 0});
  return MarkedGraph("R" + std::to_string(rank), {"v0"}, std::move(edges));
}

std::optional<int> MarkedGraph::vertex_index(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool MarkedGraph::has_letter(char oriented) const noexcept {
  return is_letter(oriented) && index_of_[base_letter(oriented) - 'a'] != -1;
}

int MarkedGraph::edge_index(char oriented) const {
  if (!has_letter(oriented)) throw InvalidPath(std::string("letter '") + oriented + "' is not an edge of " + name_);
  return index_of_[base_letter(oriented) - 'a'];
}

int MarkedGraph::origin(char oriented) const {
  const Edge& e = edges_[edge_index(oriented)];
  return is_positive(oriented) ? e.init : e.term;
}

int MarkedGraph::terminus(char oriented) const {
  const Edge& e = edges_[edge_index(oriented)];
  return is_positive(oriented) ? e.term : e.init;
}

std::vector<char> MarkedGraph::directions_at(int v) const {
  std::vector<char> out;
  for (const Edge& e : edges_) {
    if (e.init == v) out.push_back(e.id);
    if (e.term == v) out.push_back(inverse_letter(e.id));
  }
  return out;
}

int MarkedGraph::valence(int v) const { return static_cast<int>(directions_at(v).size()); }

bool MarkedGraph::is_core() const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (valence(v) == 1) return false;
  }
  return true;
}

bool MarkedGraph::is_path(std::string_view word, int start) const {
  int at = start;
  for (char c : word) {
    if (!has_letter(c) || origin(c) != at) return false;
    at = terminus(c);
  }
  return true;
}

bool MarkedGraph::is_closed_path(std::string_view word) const {
  if (word.empty()) return true;
  if (!has_letter(word.front())) return false;
  int start = origin(word.front());
  if (!is_path(word, start)) return false;
  return terminus(word.back()) == start;
}

bool operator==(const MarkedGraph& a, const MarkedGraph& b) {
  if (a.vertex_names_ != b.vertex_names_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.id != y.id || x.init != y.init || x.term != y.term) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Cursor {
  std::string_view line;
  int line_no;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_no, static_cast<int>(pos) + 1); }
  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  void expect(std::string_view token) {
    skip_ws();
    if (line.substr(pos, token.size()) != token) fail("expected '" + std::string(token) + "'");
    pos += token.size();
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_' ||
                                 line[pos] == '.' || line[pos] == '-')) {
      if (line[pos] == '-' && pos + 1 < line.size() && line[pos + 1] == '>') break;
      ++pos;
    }
    if (start == pos) fail("expected an identifier");
    return std::string(line.substr(start, pos - start));
  }
};

std::vector<std::pair<int, std::string_view>> significant_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++no;
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') out.emplace_back(no, line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

MarkedGraph parse_graph(std::string_view text) {
  auto lines = significant_lines(text);
  if (lines.empty()) throw ParseError("empty graph file", 1, 1);

  Cursor header{lines[0].second, lines[0].first};
  header.expect("graph");
  std::string name = header.identifier();
  if (!header.at_end()) header.fail("unexpected text after graph name");

  std::vector<std::string> vertices;
  bool declared = false;
  std::vector<std::tuple<char, std::string, std::string, int, int>> raw;  // id, from, to, line, col
  bool saw_edges = false;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    Cursor cur{lines[li].second, lines[li].first};
    cur.skip_ws();
    if (cur.line.substr(cur.pos, 9) == "vertices:") {
      cur.pos += 9;
      declared = true;
      while (!cur.at_end()) {
        vertices.push_back(cur.identifier());
        if (!cur.at_end()) cur.expect(",");
      }
      continue;
    }
    if (cur.line.substr(cur.pos, 6) != "edges:") cur.fail("expected 'edges:' or 'vertices:'");
    if (saw_edges) cur.fail("duplicate 'edges:' line");
    saw_edges = true;
    cur.pos += 6;
    while (!cur.at_end()) {
      cur.skip_ws();
      int col = static_cast<int>(cur.pos) + 1;
      if (!is_letter(cur.line[cur.pos])) cur.fail("expected an edge letter");
      char id = cur.line[cur.pos++];
      if (!is_positive(id)) cur.fail("edge ids must be lowercase letters");
      cur.expect("(");
      std::string from = cur.identifier();
      cur.expect("->");
      std::string to = cur.identifier();
      cur.expect(")");
      raw.emplace_back(id, from, to, cur.line_no, col);
      if (!cur.at_end()) cur.expect(",");
    }
  }
  if (!saw_edges) throw ParseError("missing 'edges:' line", lines.back().first, 1);

  auto index_of = [&](const std::string& v) -> int {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it != vertices.end()) return static_cast<int>(it - vertices.begin());
    if (declared) throw InvalidGraph("edge references undeclared vertex '" + v + "'");
    vertices.push_back(v);
    return static_cast<int>(vertices.size()) - 1;
  };
  std::vector<Edge> edges;
  for (auto& [id, from, to, line, col] : raw) {
    int a = index_of(from);
    int b = index_of(to);
    edges.push_back({id, a, b});
  }
  return MarkedGraph(std::move(name), std::move(vertices), std::move(edges));
}

std::string format_graph(const MarkedGraph& g) {
  std::string out = "graph " + g.name() + "\nvertices: ";
  for (int v = 0; v < g.vertex_count(); ++v) out += (v ? ", " : "") + g.vertex_name(v);
  out += "\nedges: ";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    if (i) out += ", ";
    out += std::string(1, e.id) + "(" + g.vertex_name(e.init) + "->" + g.vertex_name(e.term) + ")";
  }
  return out + "\n";
}

// ---------------------------------------------------------------------------
// paths

EdgePath::EdgePath(GraphPtr graph, std::string word, int origin)
    : graph_(std::move(graph)), word_(std::move(word)), origin_(origin), terminus_(origin) {
  if (!graph_) throw InvalidPath("path without a graph");
  if (origin_ < 0 || origin_ >= graph_->vertex_count()) throw InvalidPath("path origin is not a vertex");
  if (!graph_->is_path(word_, origin_)) throw InvalidPath("'" + word_ + "' is not a path in " + graph_->name());
  if (!word_.empty()) terminus_ = graph_->terminus(word_.back());
}

EdgePath::EdgePath(GraphPtr graph, std::string word)
    : EdgePath(graph, word, (word.empty() || !graph || !graph->has_letter(word.front()))
                                ? -1
                                : graph->origin(word.front())) {}

EdgePath EdgePath::trivial(GraphPtr graph, int vertex) { return EdgePath(std::move(graph), std::string(), vertex); }

EdgePath EdgePath::reversed() const { return EdgePath(graph_, inverse_word(word_), terminus_); }

EdgePath EdgePath::subpath(std::size_t pos, std::size_t len) const {
  if (pos > word_.size()) throw InvalidPath("subpath out of range");
  len = std::min(len, word_.size() - pos);
  int start = pos == 0 ? origin_ : graph_->terminus(word_[pos - 1]);
  return EdgePath(graph_, word_.substr(pos, len), start);
}

EdgePath concat(const EdgePath& a, const EdgePath& b) {
  if (!(*a.graph() == *b.graph())) throw DomainMismatch("concatenating paths in different graphs");
  if (a.terminus() != b.origin()) throw InvalidPath("concatenation endpoints do not match");
  return EdgePath(a.graph(), a.word() + b.word(), a.origin());
}

EdgePath tighten(const EdgePath& path) { return EdgePath(path.graph(), free_reduce(path.word()), path.origin()); }

Circuit::Circuit(GraphPtr graph, std::string word) : graph_(std::move(graph)), word_(std::move(word)) {
  if (word_.empty()) throw InvalidPath("a circuit must be non-empty");
  if (!graph_->is_closed_path(word_)) throw InvalidPath("'" + word_ + "' is not a closed path");
  if (!is_cyclically_reduced(word_)) throw InvalidPath("'" + word_ + "' is not cyclically reduced");
}

std::optional<Circuit> cyclically_reduce(GraphPtr graph, std::string_view closed_word) {
  if (!graph->is_closed_path(closed_word)) throw InvalidPath("'" + std::string(closed_word) + "' is not closed");
  std::string r = cyclic_reduce(closed_word);
  if (r.empty()) return std::nullopt;
  return Circuit(std::move(graph), std::move(r));
}

std::vector<std::size_t> occurrences(const EdgePath& haystack, const EdgePath& needle, OccurrenceMode mode,
                                     Orientation orientation) {
  if (!(*haystack.graph() == *needle.graph())) throw DomainMismatch("occurrences across different graphs");
  if (needle.empty()) throw InvalidPath("needle must be non-trivial");
  return find_occurrences(haystack.word(), needle.word(), mode, orientation);
}

}  // namespace ttlab
