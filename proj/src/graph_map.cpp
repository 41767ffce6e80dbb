#include "ttlab/graph_map.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_set>

#include "ttlab/error.hpp"

namespace ttlab {

namespace detail {
struct MapCache {
  std::mutex mu;
  std::optional<BccReport> bcc;
};
}  // namespace detail

struct BccAccess {
  static detail::MapCache& cache(const GraphMap& f) { return *f.cache_; }
};

GraphMap::GraphMap(std::string name, GraphPtr domain, GraphPtr codomain, std::vector<std::string> edge_images,
                   std::vector<int> vertex_map, bool allow_collapse)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      images_(std::move(edge_images)),
      vertex_map_(std::move(vertex_map)),
      cache_(std::make_shared<detail::MapCache>()) {
  if (!domain_ || !codomain_) throw InvalidMap("map '" + name_ + "' needs a domain and codomain");
  if (static_cast<int>(images_.size()) != domain_->edge_count()) {
    throw InvalidMap("map '" + name_ + "' must give an image for every edge");
  }
  vertex_map_.resize(domain_->vertex_count(), -1);
  for (int v : vertex_map_) {
    if (v < -1 || v >= codomain_->vertex_count()) throw InvalidMap("vertex image out of range");
  }

  auto pin = [&](int v, int w, char edge) {
    if (vertex_map_[v] == -1) {
      vertex_map_[v] = w;
    } else if (vertex_map_[v] != w) {
      throw InvalidMap(std::string("image of edge '") + edge + "' does not start or end at the image of its endpoint");
    }
  };

  for (int i = 0; i < domain_->edge_count(); ++i) {
    const Edge& e = domain_->edges()[i];
    std::string& img = images_[i];
    if (!is_reduced(img)) img = free_reduce(img);
    for (char c : img) {
      if (!codomain_->has_letter(c)) {
        throw InvalidMap(std::string("image of '") + e.id + "' uses unknown edge '" + c + "'");
      }
    }
    if (img.empty()) {
      if (!allow_collapse) throw CollapsedEdge(std::string("edge '") + e.id + "' maps to a trivial path");
      continue;
    }
    if (!codomain_->is_path(img, codomain_->origin(img.front()))) {
      throw InvalidMap(std::string("image of '") + e.id + "' is not a path");
    }
    pin(e.init, codomain_->origin(img.front()), e.id);
    pin(e.term, codomain_->terminus(img.back()), e.id);
  }
  for (int v = 0; v < domain_->vertex_count(); ++v) {
    if (vertex_map_[v] == -1) {
      if (codomain_->vertex_count() == 1) {
        vertex_map_[v] = 0;
      } else {
        throw InvalidMap("cannot infer the image of vertex " + domain_->vertex_name(v));
      }
    }
  }
  for (int i = 0; i < domain_->edge_count(); ++i) {
    const Edge& e = domain_->edges()[i];
    if (images_[i].empty() && vertex_map_[e.init] != vertex_map_[e.term]) {
      throw InvalidMap(std::string("collapsed edge '") + e.id + "' joins vertices with different images");
    }
  }
}

GraphMap GraphMap::identity(GraphPtr graph) {
  std::vector<std::string> images;
  std::vector<int> vm;
  for (const Edge& e : graph->edges()) images.emplace_back(1, e.id);
  for (int v = 0; v < graph->vertex_count(); ++v) vm.push_back(v);
  return GraphMap("id", graph, graph, std::move(images), std::move(vm));
}

std::string GraphMap::image(char oriented) const {
  const std::string& img = images_.at(domain_->edge_index(oriented));
  return is_positive(oriented) ? img : inverse_word(img);
}

bool GraphMap::has_collapsed_edge() const {
  return std::any_of(images_.begin(), images_.end(), [](const std::string& s) { return s.empty(); });
}

int GraphMap::lipschitz() const {
  std::size_t m = 0;
  for (const auto& s : images_) m = std::max(m, s.size());
  return static_cast<int>(m);
}

GraphMap GraphMap::renamed(std::string name) const {
  GraphMap out = *this;
  out.name_ = std::move(name);
  return out;
}

// ---------------------------------------------------------------------------

GraphMap parse_map(std::string_view text, GraphPtr graph) {
  std::vector<std::optional<std::string>> images(graph->edge_count());
  std::vector<int> vm(graph->vertex_count(), -1);
  std::string name;
  bool header = false;

  int no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++no;
    std::string line(text.substr(start, end - start));
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::string> tok;
    {
      std::size_t p = 0;
      while (p < line.size()) {
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
        std::size_t q = p;
        while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
        if (q > p) tok.push_back(line.substr(p, q - p));
        p = q;
      }
    }
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto col_of = [&](std::size_t i) {
      std::size_t at = 0;
      for (std::size_t k = 0; k <= i; ++k) at = line.find(tok[k], k == 0 ? 0 : at + tok[k - 1].size());
      return static_cast<int>(at) + 1;
    };
    if (!header) {
      if (tok.size() < 2 || tok[0] != "map") throw ParseError("expected 'map <name> on <graph>'", no, 1);
      if (tok.size() >= 4 && tok[2] != "on") throw ParseError("expected 'on'", no, col_of(2));
      name = tok[1];
      if (tok.size() >= 4 && tok[3] != graph->name()) {
        throw DomainMismatch("map '" + name + "' is declared on '" + tok[3] + "' but the graph is '" + graph->name() +
                             "'");
      }
      header = true;
    } else if (tok[0] == "vertex") {
      if (tok.size() != 4 || tok[2] != "->") throw ParseError("expected 'vertex <v> -> <w>'", no, 1);
      auto v = graph->vertex_index(tok[1]);
      auto w = graph->vertex_index(tok[3]);
      if (!v) throw ParseError("unknown vertex '" + tok[1] + "'", no, col_of(1));
      if (!w) throw ParseError("unknown vertex '" + tok[3] + "'", no, col_of(3));
      vm[*v] = *w;
    } else {
      if (tok.size() < 2 || tok.size() > 3 || tok[1] != "->" || tok[0].size() != 1) {
        throw ParseError("expected '<edge> -> <word>'", no, 1);
      }
      char e = tok[0][0];
      if (!is_positive(e) || !graph->has_letter(e)) throw ParseError("unknown edge '" + tok[0] + "'", no, col_of(0));
      std::string img = tok.size() == 3 ? tok[2] : std::string();
      if (img == "1") img.clear();
      for (char c : img) {
        if (!is_letter(c)) throw ParseError("bad letter in image", no, col_of(2));
      }
      auto& slot = images[graph->edge_index(e)];
      if (slot) throw ParseError("edge '" + tok[0] + "' given twice", no, 1);
      slot = img;
    }
    if (end == text.size()) break;
  }
  if (!header) throw ParseError("empty map file", 1, 1);
  std::vector<std::string> out;
  for (int i = 0; i < graph->edge_count(); ++i) {
    if (!images[i]) throw InvalidMap(std::string("no image given for edge '") + graph->edge_letter(i) + "'");
    out.push_back(*images[i]);
  }
  return GraphMap(name, graph, graph, std::move(out), std::move(vm));
}

std::string format_map(const GraphMap& f) {
  const MarkedGraph& g = *f.domain();
  std::string out = "map " + f.name() + " on " + g.name() + "\n";
  for (int i = 0; i < g.edge_count(); ++i) {
    const std::string& img = f.positive_image(i);
    out += std::string(1, g.edge_letter(i)) + " -> " + (img.empty() ? std::string("1") : img) + "\n";
  }
  if (!g.is_rose()) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      out += "vertex " + g.vertex_name(v) + " -> " + f.codomain()->vertex_name(f.vertex_image(v)) + "\n";
    }
  }
  return out;
}

std::string sharp_word(const GraphMap& f, std::string_view word) {
  std::string stack;
  const auto& g = *f.domain();
  for (char c : word) {
    const std::string& img = f.positive_image(g.edge_index(c));
    auto push = [&](char x) {
      if (!stack.empty() && cancels(stack.back(), x)) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    };
    if (is_positive(c)) {
      for (char x : img) push(x);
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) push(inverse_letter(*it));
    }
  }
  return stack;
}

EdgePath apply_sharp(const GraphMap& f, const EdgePath& p) {
  if (!(*p.graph() == *f.domain())) throw DomainMismatch("path is not in the domain of " + f.name());
  return EdgePath(f.codomain(), sharp_word(f, p.word()), f.vertex_image(p.origin()));
}

GraphMap compose(const GraphMap& f, const GraphMap& g) {
  if (!(*g.codomain() == *f.domain())) throw DomainMismatch("cannot compose " + f.name() + " after " + g.name());
  std::vector<std::string> images;
  for (const auto& img : g.edge_images()) images.push_back(sharp_word(f, img));
  std::vector<int> vm;
  for (int v = 0; v < g.domain()->vertex_count(); ++v) vm.push_back(f.vertex_image(g.vertex_image(v)));
  return GraphMap(f.name() + "." + g.name(), g.domain(), f.codomain(), std::move(images), std::move(vm), true);
}

GraphMap power(const GraphMap& f, int k) {
  if (!f.is_self_map()) throw DomainMismatch("power of a map that is not a self-map");
  if (k < 0) throw InvalidMap("negative power");
  const int exponent = k;
  GraphMap acc = GraphMap::identity(f.domain());
  GraphMap base = f;
  while (k > 0) {
    if (k & 1) acc = compose(base, acc);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return acc.renamed(f.name() + "^" + std::to_string(exponent));
}

// ---------------------------------------------------------------------------
// bounded cancellation
//
// The images of all oriented edges are strung into an automaton whose
// states are positions inside images. A reduced path g1 g2 in the domain
// corresponds to a walk through images, and the junction cancellation is
// the length of the longest reduced word w such that the image of g1 ends
// in w and the image of g2 ends in w as well after reversing g1. We compute
// the null-path relation on states (pairs joined by a walk whose label
// reduces to 1) and then search the product of two subset automata.

namespace {

class CancellationAutomaton {
 public:
  explicit CancellationAutomaton(const GraphMap& f) : f_(f), g_(*f.domain()) {
    int E = g_.edge_count();
    for (int od = 0; od < 2 * E; ++od) {
      char d = oriented(od);
      images_.push_back(f_.image(d));
      offset_.push_back(static_cast<int>(total_));
      total_ += images_.back().size() + 1;
    }
    fwd_.assign(total_, {});
    bwd_.assign(total_, {});
    saturate();
  }

  // Longest reduced word read from both closures; -1 signals an unbounded value.
  int pair_cancellation(char d1, char d2) {
    memo_.clear();
    onstack_.clear();
    unbounded_ = false;
    std::vector<int> s1 = closure({start_of(d1)});
    std::vector<int> s2 = closure({start_of(d2)});
    int v = longest(s1, s2, 0);
    return unbounded_ ? -1 : v;
  }

 private:
  char oriented(int od) const {
    char e = g_.edge_letter(od / 2);
    return od % 2 == 0 ? e : inverse_letter(e);
  }
  int od_of(char d) const { return 2 * g_.edge_index(d) + (is_positive(d) ? 0 : 1); }
  int start_of(char d) const { return offset_[od_of(d)]; }
  int state(int od, int i) const { return offset_[od] + i; }

  // Letter on the outgoing edge of a state, or 0 at the end of an image.
  char out_letter(int s, int* next) const {
    int od = od_at(s);
    int i = s - offset_[od];
    if (i >= static_cast<int>(images_[od].size())) return 0;
    *next = s + 1;
    return images_[od][i];
  }
  char in_letter(int s, int* prev) const {
    int od = od_at(s);
    int i = s - offset_[od];
    if (i == 0) return 0;
    *prev = s - 1;
    return images_[od][i - 1];
  }
  int od_at(int s) const {
    auto it = std::upper_bound(offset_.begin(), offset_.end(), s);
    return static_cast<int>(it - offset_.begin()) - 1;
  }

  void add(int p, int q) {
    if (p == q) return;
    if (!fwd_[p].insert(q).second) return;
    bwd_[q].insert(p);
    work_.emplace_back(p, q);
  }

  void saturate() {
    int E = g_.edge_count();
    for (int od = 0; od < 2 * E; ++od) {
      char d = oriented(od);
      int end = state(od, static_cast<int>(images_[od].size()));
      for (int od2 = 0; od2 < 2 * E; ++od2) {
        char d2 = oriented(od2);
        if (g_.origin(d2) == g_.terminus(d) && d2 != inverse_letter(d)) add(end, state(od2, 0));
      }
    }
    // cancellation through the empty null path
    for (int s = 0; s < static_cast<int>(total_); ++s) fire(s, s);
    while (!work_.empty()) {
      auto [p, q] = work_.back();
      work_.pop_back();
      std::vector<int> after(fwd_[q].begin(), fwd_[q].end());
      for (int r : after) add(p, r);
      std::vector<int> before(bwd_[p].begin(), bwd_[p].end());
      for (int o : before) add(o, q);
      fire(p, q);
    }
  }

  void fire(int p, int q) {
    int o = 0;
    int r = 0;
    char a = in_letter(p, &o);
    char b = out_letter(q, &r);
    if (a && b && cancels(a, b)) add(o, r);
  }

  std::vector<int> closure(std::vector<int> s) const {
    std::vector<int> out = s;
    for (int x : s) out.insert(out.end(), fwd_[x].begin(), fwd_[x].end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<int> step(const std::vector<int>& s, char a) const {
    std::vector<int> next;
    for (int x : s) {
      int n = 0;
      if (out_letter(x, &n) == a) next.push_back(n);
    }
    if (next.empty()) return next;
    return closure(std::move(next));
  }

  using Key = std::tuple<std::vector<int>, std::vector<int>, char>;

  int longest(const std::vector<int>& s1, const std::vector<int>& s2, char last) {
    if (unbounded_) return 0;
    Key key{s1, s2, last};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (onstack_.count(key)) {
      unbounded_ = true;
      return 0;
    }
    onstack_.insert(key);
    std::set<char> letters;
    for (int x : s1) {
      int n = 0;
      if (char a = out_letter(x, &n)) letters.insert(a);
    }
    int best = 0;
    for (char a : letters) {
      if (last && cancels(last, a)) continue;
      std::vector<int> n2 = step(s2, a);
      if (n2.empty()) continue;
      std::vector<int> n1 = step(s1, a);
      best = std::max(best, 1 + longest(n1, n2, a));
      if (unbounded_) break;
    }
    onstack_.erase(key);
    memo_[key] = best;
    return best;
  }

  const GraphMap& f_;
  const MarkedGraph& g_;
  std::vector<std::string> images_;
  std::vector<int> offset_;
  std::size_t total_ = 0;
  std::vector<std::unordered_set<int>> fwd_;
  std::vector<std::unordered_set<int>> bwd_;
  std::vector<std::pair<int, int>> work_;
  std::map<Key, int> memo_;
  std::set<Key> onstack_;
  bool unbounded_ = false;
};

constexpr std::size_t kAutomatonBudget = 20000;

BccReport compute_bcc(const GraphMap& f) {
  const MarkedGraph& g = *f.domain();
  BccReport fallback{f.lipschitz() * g.edge_count(), false};
  if (f.has_collapsed_edge()) return fallback;
  std::size_t total = 0;
  for (const auto& s : f.edge_images()) total += 2 * (s.size() + 1);
  if (total > kAutomatonBudget) return fallback;

  CancellationAutomaton aut(f);
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto dirs = g.directions_at(v);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = i + 1; j < dirs.size(); ++j) {
        int c = aut.pair_cancellation(dirs[i], dirs[j]);
        if (c < 0) return fallback;
        best = std::max(best, c);
      }
    }
  }
  return {best, true};
}

}  // namespace

BccReport bcc_report(const GraphMap& f) {
  auto& cache = BccAccess::cache(f);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.bcc) return *cache.bcc;
  }
  BccReport r = compute_bcc(f);
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.bcc = r;
  return r;
}

int bcc_bound(const GraphMap& f) { return bcc_report(f).bound; }

std::string sharp_sharp_word(const GraphMap& f, std::string_view word, int C) {
  std::string img = sharp_word(f, word);
  if (C < 0) C = 0;
  if (img.size() <= 2 * static_cast<std::size_t>(C)) return {};
  return img.substr(C, img.size() - 2 * C);
}

EdgePath apply_sharp_sharp(const GraphMap& f, const EdgePath& p, int C) {
  EdgePath img = apply_sharp(f, p);
  if (C < 0) C = 0;
  std::size_t c = static_cast<std::size_t>(C);
  if (img.size() <= 2 * c) return img.subpath(std::min(c, img.size()), 0);
  return img.subpath(c, img.size() - 2 * c);
}

char derivative(const GraphMap& f, char oriented) {
  std::string img = f.image(oriented);
  if (img.empty()) throw CollapsedEdge(std::string("edge '") + oriented + "' is collapsed");
  return img.front();
}

Turn turn_image(const GraphMap& f, Turn t) { return {derivative(f, t.first), derivative(f, t.second)}; }

std::vector<Turn> illegal_turns(const GraphMap& f, int max_iter) {
  if (!f.is_self_map()) throw DomainMismatch("illegal turns need a self-map");
  const MarkedGraph& g = *f.domain();
  std::vector<Turn> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto dirs = g.directions_at(v);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = i + 1; j < dirs.size(); ++j) {
        Turn t{dirs[i], dirs[j]};
        std::set<Turn> seen;
        for (int it = 0; it < max_iter; ++it) {
          t = turn_image(f, t);
          if (t.degenerate()) {
            out.push_back({dirs[i], dirs[j]});
            break;
          }
          if (!seen.insert(t).second) break;
        }
      }
    }
  }
  return out;
}

}  // namespace ttlab
