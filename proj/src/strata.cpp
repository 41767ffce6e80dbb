#include "ttlab/strata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "ttlab/error.hpp"

namespace ttlab {

int Filtration::height_of(int edge) const {
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const auto& e = strata[i].edges;
    if (std::find(e.begin(), e.end(), edge) != e.end()) return static_cast<int>(i);
  }
  throw InvalidPath("edge not in filtration");
}

std::vector<int> Filtration::level(int i) const {
  std::vector<int> out;
  for (int k = 0; k <= i; ++k) out.insert(out.end(), strata.at(k).edges.begin(), strata.at(k).edges.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<int>> edge_digraph(const GraphMap& f) {
  const MarkedGraph& g = *f.domain();
  std::vector<std::vector<int>> adj(g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) {
    for (char c : f.positive_image(i)) adj[i].push_back(g.edge_index(c));
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
  }
  return adj;
}

// Tarjan's algorithm; returns the component id of each node.
std::vector<int> tarjan(const std::vector<std::vector<int>>& adj, int* count) {
  int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on(n, false);
  std::vector<int> stack;
  int next = 0;
  *count = 0;
  auto strong = [&](auto&& self, int v) -> void {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp[w] = *count;
      } while (w != v);
      ++*count;
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) strong(strong, v);
  }
  return comp;
}

}  // namespace

Filtration compute_filtration(const GraphMap& f) {
  if (!f.is_self_map()) throw DomainMismatch("filtration needs a self-map");
  auto adj = edge_digraph(f);
  int ncomp = 0;
  auto comp = tarjan(adj, &ncomp);

  std::vector<std::vector<int>> members(ncomp);
  for (int e = 0; e < static_cast<int>(adj.size()); ++e) members[comp[e]].push_back(e);
  // A component must come after every component its edges map into.
  std::vector<std::set<int>> needs(ncomp);
  std::vector<std::vector<int>> needed_by(ncomp);
  for (int e = 0; e < static_cast<int>(adj.size()); ++e) {
    for (int t : adj[e]) {
      if (comp[t] != comp[e] && needs[comp[e]].insert(comp[t]).second) needed_by[comp[t]].push_back(comp[e]);
    }
  }
  std::vector<int> pending(ncomp);
  auto key = [&](int c) { return members[c].front(); };
  auto later = [&](int x, int y) { return key(x) > key(y); };
  std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
  for (int c = 0; c < ncomp; ++c) {
    pending[c] = static_cast<int>(needs[c].size());
    if (pending[c] == 0) ready.push(c);
  }
  Filtration out;
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    out.strata.push_back({members[c]});
    for (int d : needed_by[c]) {
      if (--pending[d] == 0) ready.push(d);
    }
  }
  return out;
}

Matrix transition_matrix(const GraphMap& f, const std::vector<int>& edges) {
  const MarkedGraph& g = *f.domain();
  std::vector<int> pos(g.edge_count(), -1);
  for (std::size_t j = 0; j < edges.size(); ++j) pos[edges[j]] = static_cast<int>(j);
  Matrix m(edges.size(), std::vector<long long>(edges.size(), 0));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (char c : f.positive_image(edges[i])) {
      int j = pos[g.edge_index(c)];
      if (j >= 0) ++m[i][j];
    }
  }
  return m;
}

bool is_irreducible(const Matrix& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return false;
  if (n == 1) return m[0][0] > 0;
  auto reach_all = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<int> todo{0};
    seen[0] = true;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int w = 0; w < n; ++w) {
        long long x = transpose ? m[w][v] : m[v][w];
        if (x > 0 && !seen[w]) {
          seen[w] = true;
          todo.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach_all(false) && reach_all(true);
}

bool is_permutation_matrix(const Matrix& m) {
  std::size_t n = m.size();
  if (n == 0) return false;
  std::vector<int> col(n, 0);
  for (const auto& row : m) {
    int ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] == 1) {
        ++ones;
        ++col[j];
      } else if (row[j] != 0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return std::all_of(col.begin(), col.end(), [](int c) { return c == 1; });
}

bool is_zero_matrix(const Matrix& m) {
  for (const auto& row : m) {
    for (long long x : row) {
      if (x != 0) return false;
    }
  }
  return true;
}

std::variant<PerronFrobenius, NotIrreducible> pf_eigenvalue(const Matrix& m) {
  if (!is_irreducible(m)) return NotIrreducible{};
  const std::size_t n = m.size();
  PerronFrobenius out;
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> w(n);
  double mu = 0.0;
  constexpr double tol = 1e-12;
  constexpr int max_iter = 1000000;
  // M + I is primitive whenever M is irreducible, so the iteration converges
  // even for periodic matrices such as permutations.
  for (int it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = v[i];
      for (std::size_t j = 0; j < n; ++j) s += static_cast<double>(m[i][j]) * v[j];
      w[i] = s;
    }
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= total;
      diff += std::abs(w[i] - v[i]);
    }
    double next_mu = total;  // v has unit sum
    bool settled = std::abs(next_mu - mu) <= tol * next_mu && diff <= tol;
    v.swap(w);
    mu = next_mu;
    out.iterations = it;
    if (settled) break;
  }
  // lambda = |Mv|_1 for the unit-sum positive vector v
  double num = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) num += static_cast<double>(m[i][j]) * v[j];
  }
  out.lambda = num;
  out.eigenvector = v;
  return out;
}

const char* to_string(StratumType t) {
  switch (t) {
    case StratumType::eg:
      return "EG";
    case StratumType::neg:
      return "NEG";
    case StratumType::zero:
      return "zero";
  }
  return "?";
}

const char* to_string(NegSubtype t) {
  switch (t) {
    case NegSubtype::fixed:
      return "fixed";
    case NegSubtype::periodic:
      return "periodic";
    case NegSubtype::linear_candidate:
      return "linear-candidate";
    case NegSubtype::polynomial:
      return "polynomial";
  }
  return "?";
}

namespace {

// Subtype of a permutation stratum, read from f^n where n is the order of
// the permutation: f^n(E) = E (fixed or periodic), E u / u E with u a
// closed path fixed by f^n_# (linear-candidate), or anything else.
NegSubtype neg_subtype(const GraphMap& f, const std::vector<int>& edges, const Matrix& m) {
  const MarkedGraph& g = *f.domain();
  std::size_t n = edges.size();
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] == 1) perm[i] = static_cast<int>(j);
    }
  }
  int order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    int len = 1;
    for (int j = perm[i]; j != static_cast<int>(i); j = perm[j]) ++len;
    order = std::lcm(order, len);
  }
  bool single_letters = true;
  for (int e : edges) single_letters &= f.positive_image(e).size() == 1;
  GraphMap fn = power(f, order);
  bool identity = true;
  for (int e : edges) identity &= fn.positive_image(e) == std::string(1, g.edge_letter(e));
  if (identity) return (single_letters && order == 1) ? NegSubtype::fixed : NegSubtype::periodic;

  for (int e : edges) {
    char E = g.edge_letter(e);
    const std::string& img = fn.positive_image(e);
    std::string u;
    if (!img.empty() && img.front() == E) {
      u = img.substr(1);
    } else if (!img.empty() && img.back() == E) {
      u = img.substr(0, img.size() - 1);
    } else {
      return NegSubtype::polynomial;
    }
    if (u.empty()) continue;
    if (!g.is_closed_path(u) || sharp_word(fn, u) != u) return NegSubtype::polynomial;
  }
  return NegSubtype::linear_candidate;
}

}  // namespace

StratumClass classify_stratum(const GraphMap& f, const Filtration& filt, int index) {
  const auto& edges = filt.strata.at(index).edges;
  Matrix m = transition_matrix(f, edges);
  StratumClass out;
  if (is_zero_matrix(m)) {
    out.type = StratumType::zero;
    return out;
  }
  if (is_permutation_matrix(m)) {
    out.type = StratumType::neg;
    out.lambda = 1.0;
    out.eigenvector.assign(edges.size(), 1.0 / static_cast<double>(edges.size()));
    out.subtype = neg_subtype(f, edges, m);
    return out;
  }
  auto pf = pf_eigenvalue(m);
  if (std::holds_alternative<NotIrreducible>(pf)) {
    throw InvalidMap("stratum " + std::to_string(index) + " is neither irreducible nor zero");
  }
  const auto& r = std::get<PerronFrobenius>(pf);
  out.lambda = r.lambda;
  out.eigenvector = r.eigenvector;
  // An irreducible integer matrix that is not a permutation has lambda > 1.
  out.type = r.lambda > 1.0 + 1e-9 ? StratumType::eg : StratumType::neg;
  if (out.type == StratumType::neg) out.subtype = NegSubtype::polynomial;
  return out;
}

std::vector<double> eg_eigenvalues(const GraphMap& f) {
  Filtration filt = compute_filtration(f);
  std::vector<double> out;
  for (int i = 0; i < static_cast<int>(filt.size()); ++i) {
    StratumClass c = classify_stratum(f, filt, i);
    if (c.type == StratumType::eg) out.push_back(c.lambda);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PowerData {
  GraphMap map;
  int bcc;
};

class FixedPathSearch {
 public:
  FixedPathSearch(const GraphMap& f, int L, int P) : g_(*f.domain()), L_(L) {
    for (int k = 1; k <= P; ++k) powers_.push_back({power(f, k), 0});
    for (auto& p : powers_) p.bcc = bcc_bound(p.map);
  }

  std::vector<FixedPath> run() {
    for (int v = 0; v < g_.vertex_count(); ++v) {
      std::vector<int> alive;
      for (int k = 0; k < static_cast<int>(powers_.size()); ++k) {
        if (powers_[k].map.vertex_image(v) == v) alive.push_back(k);
      }
      if (alive.empty()) continue;
      std::string word;
      extend(v, v, word, alive);
    }
    std::sort(out_.begin(), out_.end(), [](const FixedPath& a, const FixedPath& b) {
      if (a.origin != b.origin) return a.origin < b.origin;
      if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
      return a.word < b.word;
    });
    return out_;
  }

 private:
  // Whether some extension of `sigma` of total length <= L could be fixed by
  // powers_[k]: f#(gamma) begins with f#(sigma) minus at most C letters.
  bool viable(const std::string& image, const std::string& sigma, int C) const {
    long long stable = static_cast<long long>(image.size()) - C;
    if (stable > L_) return false;
    std::size_t check = static_cast<std::size_t>(std::max<long long>(0, std::min<long long>(stable, sigma.size())));
    return image.compare(0, check, sigma, 0, check) == 0;
  }

  void extend(int origin, int at, std::string& word, const std::vector<int>& alive) {
    if (static_cast<int>(word.size()) == L_) return;
    for (char d : g_.directions_at(at)) {
      if (!word.empty() && cancels(word.back(), d)) continue;
      word.push_back(d);
      std::vector<int> next;
      int period = 0;
      for (int k : alive) {
        std::string img = sharp_word(powers_[k].map, word);
        if (period == 0 && img == word) period = k + 1;
        if (viable(img, word, powers_[k].bcc)) next.push_back(k);
      }
      if (period) out_.push_back({word, origin, period});
      if (!next.empty()) extend(origin, g_.terminus(d), word, next);
      word.pop_back();
    }
  }

  const MarkedGraph& g_;
  int L_;
  std::vector<PowerData> powers_;
  std::vector<FixedPath> out_;
};

}  // namespace

std::vector<FixedPath> fixed_paths_up_to(const GraphMap& f, int L, int P) {
  if (!f.is_self_map()) throw DomainMismatch("fixed paths need a self-map");
  if (L < 1 || P < 1) throw InvalidPath("fixed path bounds must be positive");
  return FixedPathSearch(f, L, P).run();
}

}  // namespace ttlab
