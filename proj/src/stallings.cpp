#include "ttlab/stallings.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ttlab/error.hpp"
#include "ttlab/word.hpp"

namespace ttlab {

SubgroupGraph::SubgroupGraph(int rank, int vertex_count, int base, std::vector<LabeledEdge> edges)
    : rank_(rank), vertex_count_(vertex_count), base_(base), edges_(std::move(edges)) {
  if (rank_ < 0 || rank_ > 26) throw InvalidGraph("rank must be in [0, 26]");
  if (vertex_count_ < 1 || base_ < 0 || base_ >= vertex_count_) throw InvalidGraph("bad base vertex");
  step_.assign(static_cast<std::size_t>(vertex_count_) * 2 * rank_, -1);
  folded_ = true;
  for (const LabeledEdge& e : edges_) {
    if (e.from < 0 || e.from >= vertex_count_ || e.to < 0 || e.to >= vertex_count_) {
      throw InvalidGraph("labeled edge references a missing vertex");
    }
    if (!is_positive(e.label) || e.label - 'a' >= rank_) throw InvalidGraph("edge label outside the rank");
    int i = e.label - 'a';
    int& fwd = step_[static_cast<std::size_t>(e.from) * 2 * rank_ + 2 * i];
    int& bwd = step_[static_cast<std::size_t>(e.to) * 2 * rank_ + 2 * i + 1];
    if (fwd != -1 || bwd != -1) folded_ = false;
    if (fwd == -1) fwd = e.to;
    if (bwd == -1) bwd = e.from;
  }
}

SubgroupGraph SubgroupGraph::wedge(const std::vector<std::string>& words, int rank) {
  int n = 1;
  std::vector<LabeledEdge> edges;
  for (const auto& raw : words) {
    std::string w = free_reduce(raw);
    for (char c : w) {
      if (!is_letter(c) || base_letter(c) - 'a' >= rank) throw InvalidPath("generator '" + raw + "' outside the rank");
    }
    int prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = i + 1 == w.size() ? 0 : n++;
      char c = w[i];
      if (is_positive(c)) {
        edges.push_back({prev, next, c});
      } else {
        edges.push_back({next, prev, base_letter(c)});
      }
      prev = next;
    }
  }
  return SubgroupGraph(rank, n, 0, std::move(edges));
}

int SubgroupGraph::valence(int v) const {
  int n = 0;
  for (const auto& e : edges_) n += (e.from == v) + (e.to == v);
  return n;
}

bool SubgroupGraph::is_folded() const { return folded_; }

std::optional<int> SubgroupGraph::follow(int v, char letter) const {
  if (!folded_) throw InvalidGraph("lifting requires a folded graph");
  int i = base_letter(letter) - 'a';
  if (i < 0 || i >= rank_) return std::nullopt;
  int t = step_[static_cast<std::size_t>(v) * 2 * rank_ + 2 * i + (is_positive(letter) ? 0 : 1)];
  if (t < 0) return std::nullopt;
  return t;
}

std::optional<int> SubgroupGraph::lift(int v, std::string_view word) const {
  for (char c : word) {
    auto n = follow(v, c);
    if (!n) return std::nullopt;
    v = *n;
  }
  return v;
}

namespace {

// Renumbers surviving vertices in increasing order of their old index.
SubgroupGraph compact(int rank, int vertex_count, int base, const std::vector<LabeledEdge>& edges,
                      const std::vector<bool>& keep) {
  std::vector<int> id(vertex_count, -1);
  int n = 0;
  for (int v = 0; v < vertex_count; ++v) {
    if (keep[v]) id[v] = n++;
  }
  std::vector<LabeledEdge> out;
  for (const auto& e : edges) out.push_back({id[e.from], id[e.to], e.label});
  return SubgroupGraph(rank, n, id[base], std::move(out));
}

}  // namespace

SubgroupGraph fold(const SubgroupGraph& g, std::optional<unsigned> seed) {
  int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<LabeledEdge> edges = g.edges();
  std::vector<bool> alive(edges.size(), true);
  std::mt19937 rng(seed.value_or(0));

  for (;;) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (alive[i]) order.push_back(i);
    }
    if (seed) std::shuffle(order.begin(), order.end(), rng);
    std::map<std::pair<int, char>, std::size_t> out;
    std::map<std::pair<int, char>, std::size_t> in;
    bool folded_one = false;
    for (std::size_t i : order) {
      int u = find(edges[i].from);
      int v = find(edges[i].to);
      char x = edges[i].label;
      if (auto it = out.find({u, x}); it != out.end()) {
        int w = find(edges[it->second].to);
        if (w != v) parent[std::max(v, w)] = std::min(v, w);
        alive[i] = false;
        folded_one = true;
        break;
      }
      if (auto it = in.find({v, x}); it != in.end()) {
        int w = find(edges[it->second].from);
        if (w != u) parent[std::max(u, w)] = std::min(u, w);
        alive[i] = false;
        folded_one = true;
        break;
      }
      out[{u, x}] = i;
      in[{v, x}] = i;
    }
    if (!folded_one) break;
  }

  std::vector<bool> keep(n, false);
  std::vector<LabeledEdge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!alive[i]) continue;
    kept.push_back({find(edges[i].from), find(edges[i].to), edges[i].label});
  }
  for (int v = 0; v < n; ++v) keep[find(v)] = true;
  SubgroupGraph out = compact(g.rank(), n, find(g.base()), kept, keep);
  if (!out.is_folded()) throw InvalidGraph("internal error: fold left a non-immersed vertex");
  return out;
}

SubgroupGraph from_generators(const std::vector<std::string>& words, int rank) {
  return fold(SubgroupGraph::wedge(words, rank));
}

SubgroupGraph core(const SubgroupGraph& g, bool keep_base) {
  int n = g.vertex_count();
  std::vector<bool> alive_v(n, true);
  std::vector<bool> alive_e(g.edges().size(), true);
  std::vector<int> val(n, 0);
  for (const auto& e : g.edges()) {
    ++val[e.from];
    ++val[e.to];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive_v[v] || val[v] > 1 || (keep_base && v == g.base())) continue;
      alive_v[v] = false;
      changed = true;
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        if (alive_e[i] && (e.from == v || e.to == v)) {
          alive_e[i] = false;
          --val[e.from];
          --val[e.to];
        }
      }
    }
  }
  int base = g.base();
  if (!alive_v[base]) {
    auto it = std::find(alive_v.begin(), alive_v.end(), true);
    if (it == alive_v.end()) return SubgroupGraph(g.rank(), 1, 0, {});
    base = static_cast<int>(it - alive_v.begin());
  }
  std::vector<LabeledEdge> kept;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (alive_e[i]) kept.push_back(g.edges()[i]);
  }
  return compact(g.rank(), n, base, kept, alive_v);
}

bool carries_circuit(const SubgroupGraph& s, std::string_view cyclic_word) {
  std::string w = cyclic_reduce(cyclic_word);
  if (w.empty()) return true;
  for (int v = 0; v < s.vertex_count(); ++v) {
    auto end = s.lift(v, w);
    if (end && *end == v) return true;
  }
  return false;
}

bool carries_segment(const SubgroupGraph& s, std::string_view word) {
  if (word.empty()) return true;
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (s.lift(v, word)) return true;
  }
  return false;
}

bool contains_element(const SubgroupGraph& s, std::string_view word) {
  auto end = s.lift(s.base(), free_reduce(word));
  return end && *end == s.base();
}

bool isomorphic(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (a.rank() != b.rank() || a.vertex_count() != b.vertex_count() || a.edges().size() != b.edges().size()) {
    return false;
  }
  if (!a.is_folded() || !b.is_folded()) throw InvalidGraph("isomorphism test expects folded graphs");
  std::vector<int> map(a.vertex_count(), -1);
  std::vector<int> inv(b.vertex_count(), -1);
  std::vector<int> todo{a.base()};
  map[a.base()] = b.base();
  inv[b.base()] = a.base();
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int i = 0; i < a.rank(); ++i) {
      for (char c : {static_cast<char>('a' + i), static_cast<char>('A' + i)}) {
        auto x = a.follow(v, c);
        auto y = b.follow(map[v], c);
        if (x.has_value() != y.has_value()) return false;
        if (!x) continue;
        if (map[*x] == -1 && inv[*y] == -1) {
          map[*x] = *y;
          inv[*y] = *x;
          todo.push_back(*x);
        } else if (map[*x] != *y) {
          return false;
        }
      }
    }
  }
  // vertices not reachable from the base (disconnected input) must match too
  for (int v = 0; v < a.vertex_count(); ++v) {
    if (map[v] == -1) return false;
  }
  return true;
}

EdgeletDecomposition edgelets(const SubgroupGraph& s, bool base_is_natural) {
  EdgeletDecomposition out;
  int n = s.vertex_count();
  std::vector<bool> natural(n, false);
  for (int v = 0; v < n; ++v) {
    natural[v] = s.valence(v) >= 3 || (base_is_natural && v == s.base());
    if (natural[v]) out.natural_vertices.push_back(v);
  }
  out.edgelet_count = static_cast<int>(s.edges().size());
  std::vector<bool> used(s.edges().size(), false);

  // incident (edge index, forward?) pairs per vertex, in edge order
  std::vector<std::vector<std::pair<std::size_t, bool>>> inc(n);
  for (std::size_t i = 0; i < s.edges().size(); ++i) {
    inc[s.edges()[i].from].push_back({i, true});
    inc[s.edges()[i].to].push_back({i, false});
  }
  auto walk = [&](int start, std::size_t first, bool fwd) {
    NaturalEdge ne{start, start, ""};
    std::size_t e = first;
    bool dir = fwd;
    int at = start;
    for (;;) {
      used[e] = true;
      const auto& le = s.edges()[e];
      ne.word.push_back(dir ? le.label : inverse_letter(le.label));
      at = dir ? le.to : le.from;
      if (natural[at] || at == start) break;
      // continue through the other incidence of a valence-two vertex
      bool moved = false;
      for (auto [j, f] : inc[at]) {
        if (j == e && f == !dir) continue;  // the incidence we arrived by
        if (used[j]) continue;
        e = j;
        dir = f;
        moved = true;
        break;
      }
      if (!moved) break;
    }
    ne.to = at;
    out.natural_edges.push_back(ne);
  };
  for (int v = 0; v < n; ++v) {
    if (!natural[v]) continue;
    for (auto [i, f] : inc[v]) {
      if (!used[i]) walk(v, i, f);
    }
  }
  // cycles made only of valence-two vertices
  for (std::size_t i = 0; i < s.edges().size(); ++i) {
    if (!used[i]) walk(s.edges()[i].from, i, true);
  }
  return out;
}

std::string to_dot(const SubgroupGraph& s, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v = 0; v < s.vertex_count(); ++v) {
    os << "  v" << v;
    if (v == s.base()) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (const auto& e : s.edges()) os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ttlab
