// Acceptance run: one line per criterion with the measured time against its
// budget. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "support.hpp"
#include "ttlab/lamination.hpp"
#include "ttlab/pingpong.hpp"
#include "ttlab/stallings.hpp"
#include "ttlab/strata.hpp"
#include "ttlab/word.hpp"

using namespace ttlab;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<std::pair<const char*, const char*>> kMaps = {
    {"rose2.tt", "fib.tt"}, {"rose3.tt", "psi.tt"}, {"rose3.tt", "phi.tt"}};

// 1 -------------------------------------------------------------------------

Outcome tightening() {
  std::mt19937 rng(1);
  std::vector<GraphPtr> roses;
  for (int r = 1; r <= 4; ++r) roses.push_back(std::make_shared<const MarkedGraph>(MarkedGraph::rose(r)));
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    int rank = 1 + static_cast<int>(rng() % 4);
    int len = static_cast<int>(rng() % 201);
    std::string w = testing::random_word(rng, rank, len);
    std::string want = testing::naive_reduce(w);
    std::string got = len == 0 ? std::string() : tighten(EdgePath(roses[rank - 1], w)).word();
    if (got != want) ++bad;
  }
  return {bad == 0, fmt("%d of 10000 words differ from the naive oracle", bad)};
}

// 2 -------------------------------------------------------------------------

Outcome bcc_soundness() {
  std::mt19937 rng(2);
  std::string detail;
  bool ok = true;
  for (auto [g, m] : kMaps) {
    GraphMap f = testing::map(g, m);
    int C = bcc_bound(f);
    int worst = 0;
    for (int i = 0; i < 10000; ++i) {
      int len = 2 + static_cast<int>(rng() % 60);
      std::string w = testing::random_reduced_path(rng, *f.domain(), 0, len);
      std::size_t cut = 1 + rng() % (w.size() - 1);
      std::size_t a = sharp_word(f, w.substr(0, cut)).size();
      std::size_t b = sharp_word(f, w.substr(cut)).size();
      std::size_t ab = sharp_word(f, w).size();
      worst = std::max(worst, static_cast<int>(a + b - ab) / 2);
    }
    ok = ok && worst <= C;
    detail += fmt("%s C=%d max seen %d; ", f.name().c_str(), C, worst);
  }
  return {ok, detail};
}

// 3 -------------------------------------------------------------------------

Outcome double_sharp() {
  std::mt19937 rng(3);
  int violations = 0, checks = 0;
  std::string detail;
  for (auto [g, m] : kMaps) {
    GraphMap f = testing::map(g, m);
    std::vector<GraphMap> pw;
    std::vector<int> Ck;
    for (int k = 1; k <= 5; ++k) {
      pw.push_back(power(f, k));
      Ck.push_back(bcc_bound(pw.back()));
    }
    int collar_max = 2 * Ck.back() + 4;
    int need = 2 * collar_max + 24;
    int iter = 1;
    while (static_cast<int>(leaf_segment(f, 'a', iter).path.size()) < need) ++iter;
    std::string leaf = leaf_segment(f, 'a', iter).path.word();
    for (int i = 0; i < 1000; ++i) {
      int k = 1 + static_cast<int>(rng() % 5);
      int C = Ck[k - 1];
      int l1 = 2 * C + static_cast<int>(rng() % 5);
      int l3 = 2 * C + static_cast<int>(rng() % 5);
      int l2 = 1 + static_cast<int>(rng() % 20);
      std::size_t at = rng() % (leaf.size() - (l1 + l2 + l3) + 1);
      std::string alpha = leaf.substr(at, l1 + l2 + l3);
      std::string mid = alpha.substr(l1, l2);
      std::string core = sharp_sharp_word(pw[k - 1], alpha, C);
      ++checks;
      if (core.find(sharp_word(pw[k - 1], mid)) == std::string::npos) ++violations;
    }
    detail += fmt("%s C_1..C_5=%d/%d/%d/%d/%d; ", f.name().c_str(), Ck[0], Ck[1], Ck[2], Ck[3], Ck[4]);
  }
  return {violations == 0, fmt("%d violations in %d checks; ", violations, checks) + detail};
}

// 4 -------------------------------------------------------------------------

double residual(const Matrix& m, const PerronFrobenius& pf) {
  double r = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < m.size(); ++j) s += static_cast<double>(m[i][j]) * pf.eigenvector[j];
    r += std::abs(s - pf.lambda * pf.eigenvector[i]);
  }
  return r;
}

Outcome spectral() {
  auto golden = pf_eigenvalue(Matrix{{1, 1}, {1, 0}});
  double err = std::abs(std::get<PerronFrobenius>(golden).lambda - (1 + std::sqrt(5.0)) / 2);
  double worst = 0;
  int matrices = 0;
  const std::vector<std::pair<const char*, const char*>> fixtures = {
      {"rose2.tt", "fib.tt"},       {"rose2.tt", "fib_inv.tt"},  {"rose2.tt", "neg.tt"},
      {"rose3.tt", "psi.tt"},       {"rose3.tt", "psi_inv.tt"},  {"rose3.tt", "phi.tt"},
      {"rose3.tt", "phi_inv.tt"},   {"rose3.tt", "tower.tt"},    {"rose3.tt", "reducible.tt"},
      {"rose3.tt", "nielsen.tt"}};
  for (auto [g, m] : fixtures) {
    GraphMap f = testing::map(g, m);
    Filtration filt = compute_filtration(f);
    std::vector<std::vector<int>> blocks;
    for (const auto& s : filt.strata) blocks.push_back(s.edges);
    std::vector<int> all;
    for (int e = 0; e < f.domain()->edge_count(); ++e) all.push_back(e);
    blocks.push_back(all);
    for (const auto& b : blocks) {
      Matrix mat = transition_matrix(f, b);
      if (!is_irreducible(mat)) continue;
      auto r = pf_eigenvalue(mat);
      if (!std::holds_alternative<PerronFrobenius>(r)) return {false, "irreducible matrix reported NotIrreducible"};
      worst = std::max(worst, residual(mat, std::get<PerronFrobenius>(r)));
      ++matrices;
    }
  }
  return {err <= 1e-9 && worst <= 1e-9,
          fmt("golden ratio error %.2e; worst residual %.2e over %d irreducible fixture matrices", err, worst,
              matrices)};
}

// 5 -------------------------------------------------------------------------

// Folding written the slow way: find any two edges that share a label and an
// endpoint, glue their other endpoints, drop duplicates, start over.
struct NaiveFold {
  int base = 0;
  std::set<std::tuple<int, char, int>> edges;

  NaiveFold(const std::vector<std::string>& gens) {
    int next = 1;
    for (const auto& raw : gens) {
      std::string g = testing::naive_reduce(raw);
      int at = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        int to = i + 1 == g.size() ? 0 : next++;
        if (is_positive(g[i]))
          edges.insert({at, g[i], to});
        else
          edges.insert({to, base_letter(g[i]), at});
        at = to;
      }
    }
    for (;;) {
      std::optional<std::pair<int, int>> glue;
      for (auto x = edges.begin(); x != edges.end() && !glue; ++x) {
        for (auto y = std::next(x); y != edges.end() && !glue; ++y) {
          auto [xf, xl, xt] = *x;
          auto [yf, yl, yt] = *y;
          if (xl != yl) continue;
          if (xf == yf && xt != yt) glue = {std::min(xt, yt), std::max(xt, yt)};
          if (xt == yt && xf != yf) glue = {std::min(xf, yf), std::max(xf, yf)};
        }
      }
      if (!glue) break;
      auto [keep, gone] = *glue;
      std::set<std::tuple<int, char, int>> moved;
      for (auto [f, l, t] : edges) moved.insert({f == gone ? keep : f, l, t == gone ? keep : t});
      edges.swap(moved);
    }
  }

  bool contains(const std::string& w) const {
    int at = base;
    for (char c : w) {
      bool stepped = false;
      for (auto [f, l, t] : edges) {
        if (is_positive(c) && f == at && l == c) {
          at = t;
          stepped = true;
          break;
        }
        if (!is_positive(c) && t == at && l == base_letter(c)) {
          at = f;
          stepped = true;
          break;
        }
      }
      if (!stepped) return false;
    }
    return at == base;
  }
};

// Subgroup elements reachable through partial products of at most `cap`
// letters, stopping once `budget` elements are known. Everything returned is
// in the subgroup.
std::unordered_set<std::string> products(const std::vector<std::string>& gens, std::size_t cap, std::size_t budget) {
  std::vector<std::string> steps;
  for (const auto& g : gens) {
    std::string r = testing::naive_reduce(g);
    if (r.empty()) continue;
    steps.push_back(r);
    steps.push_back(inverse_word(r));
  }
  std::unordered_set<std::string> seen{""};
  std::vector<std::string> frontier{""};
  while (!frontier.empty() && seen.size() < budget) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      for (const auto& s : steps) {
        std::string p = testing::naive_reduce(w + s);
        if (p.size() <= cap && seen.insert(p).second) next.push_back(p);
      }
      if (seen.size() >= budget) break;
    }
    frontier.swap(next);
  }
  return seen;
}

void reduced_words(int rank, int max_len, const std::function<void(const std::string&)>& fn) {
  std::string w;
  std::function<void()> go = [&] {
    fn(w);
    if (static_cast<int>(w.size()) == max_len) return;
    for (int i = 0; i < 2 * rank; ++i) {
      char c = static_cast<char>('a' + i / 2);
      if (i % 2) c = inverse_letter(c);
      if (!w.empty() && cancels(w.back(), c)) continue;
      w.push_back(c);
      go();
      w.pop_back();
    }
  };
  go();
}

Outcome folding() {
  std::mt19937 rng(5);
  int non_iso = 0, naive_mismatch = 0, missed = 0;
  long words = 0, enumerated = 0;
  for (int t = 0; t < 100; ++t) {
    int rank = 1 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> gens;
    for (int i = 0; i < n; ++i) gens.push_back(testing::random_reduced(rng, rank, 1 + static_cast<int>(rng() % 10)));

    SubgroupGraph w = SubgroupGraph::wedge(gens, rank);
    SubgroupGraph ref = fold(w);
    for (unsigned seed = 1; seed <= 5; ++seed) {
      if (!isomorphic(ref, fold(w, seed * 104729u + t))) ++non_iso;
    }

    NaiveFold naive(gens);
    reduced_words(rank, 8, [&](const std::string& x) {
      ++words;
      if (contains_element(ref, x) != naive.contains(x)) ++naive_mismatch;
    });
    for (const auto& x : products(gens, 12, 200000)) {
      if (x.size() > 8) continue;
      ++enumerated;
      if (!contains_element(ref, x)) ++missed;
    }
  }
  bool ok = non_iso == 0 && naive_mismatch == 0 && missed == 0;
  return {ok, fmt("%d non-isomorphic refolds; %d of %ld words <= 8 disagree with naive folding; %d of %ld "
                  "enumerated products rejected",
                  non_iso, naive_mismatch, words, missed, enumerated)};
}

// 6 -------------------------------------------------------------------------

Outcome growth() {
  GraphMap fib = testing::map("rose2.tt", "fib.tt");
  GrowthSearch s;
  s.max_beta_len = 8;
  s.max_iter = 10;
  auto r = certify_exponential_growth(fib, s);
  if (!std::holds_alternative<EGCertificate>(r)) return {false, "no certificate for Fibonacci"};
  const auto& c = std::get<EGCertificate>(r);
  if (!recheck(fib, c)) return {false, "certificate does not recheck"};

  double worst = 1e9;
  std::string beta = c.beta.word();
  std::size_t prev = beta.size();
  for (int k = 1; k <= c.k; ++k) {
    std::size_t len = sharp_word(power(fib, k), beta).size();
    worst = std::min(worst, static_cast<double>(len) / static_cast<double>(prev));
    prev = len;
  }

  auto r2 = testing::graph("rose2.tt");
  auto r3 = testing::graph("rose3.tt");
  bool id = std::holds_alternative<NotFound>(certify_exponential_growth(GraphMap::identity(r2), s));
  bool neg = std::holds_alternative<NotFound>(certify_exponential_growth(testing::map("rose2.tt", "neg.tt"), s));
  bool tower = std::holds_alternative<NotFound>(certify_exponential_growth(testing::map("rose3.tt", "tower.tt"), s));
  bool ok = c.k <= 10 && beta.size() <= 8 && worst >= 1.5 && id && neg && tower;
  return {ok, fmt("beta=%s k=%d, min growth ratio %.3f over k=1..%d; identity %s, neg %s, tower %s", beta.c_str(), c.k,
                  worst, c.k, id ? "NotFound" : "FOUND", neg ? "NotFound" : "FOUND", tower ? "NotFound" : "FOUND")};
}

// 7 -------------------------------------------------------------------------

Outcome pingpong() {
  PingPongMaps maps{testing::map("rose3.tt", "psi.tt"), testing::map("rose3.tt", "psi_inv.tt"),
                    testing::map("rose3.tt", "phi.tt"), testing::map("rose3.tt", "phi_inv.tt")};
  auto r = build_pingpong(maps, PingPongParams{});
  if (auto* f = std::get_if<FailureTrace>(&r)) return {false, "FailureTrace: " + f->message};
  const auto& c = std::get<PingPongCertificate>(r);
  const int kGoldenM = 16;
  int verified = 0;
  for (SignPattern p : {SignPattern{1, 1}, SignPattern{1, -1}, SignPattern{-1, 1}, SignPattern{-1, -1}}) {
    if (std::holds_alternative<VerifiedInclusions>(verify_pingpong(c, c.M, c.M, p))) ++verified;
  }
  FreenessReport fr = freeness_oracle(testing::aut("psi.aut"), testing::aut("phi.aut"), c.M, c.M, 6);
  auto* none = std::get_if<NoRelationUpTo>(&fr.verdict);
  bool ok = c.M <= 20 && c.M == kGoldenM && verified == 4 && none && none->length == 6;
  return {ok, fmt("M=%d (golden %d), %d/4 sign patterns verified, freeness %s over %ld words", c.M, kGoldenM, verified,
                  none ? "NoRelationUpTo(6)" : "RelationFound", static_cast<long>(fr.words_checked))};
}

// 8 -------------------------------------------------------------------------

Outcome hyperbolicity() {
  PeriodicClassReport fib = hyperbolicity_scan(testing::aut("fib.aut"), 6, 4);
  bool found = false;
  for (const auto& c : fib.found) {
    bool same = cyclic_equal(c.word, "abAB") || cyclic_equal(c.word, inverse_word("abAB"));
    if (same && c.period == 2) found = true;
  }
  PeriodicClassReport psi = hyperbolicity_scan(testing::aut("psi.aut"), 6, 4);
  return {found && psi.found.empty(),
          fmt("fib: [abAB] period 2 %s (%zu classes reported); psi: %zu periodic of %ld scanned",
              found ? "found" : "MISSING", fib.found.size(), psi.found.size(),
              static_cast<long>(psi.classes_scanned))};
}

// 9 -------------------------------------------------------------------------

Outcome nonattraction() {
  const std::vector<std::pair<const char*, const char*>> fixtures = {
      {"rose2.tt", "fib.tt"},     {"rose2.tt", "fib_inv.tt"}, {"rose3.tt", "psi.tt"},    {"rose3.tt", "psi_inv.tt"},
      {"rose3.tt", "phi.tt"},     {"rose3.tt", "phi_inv.tt"}, {"rose3.tt", "nielsen.tt"}, {"rose3.tt", "reducible.tt"}};
  int carried = 0, attracted = 0;
  std::string detail;
  for (auto [g, m] : fixtures) {
    GraphMap f = testing::map(g, m);
    int s = top_eg_stratum(f, compute_filtration(f));
    NonAttractingSubgraph z = nonattracting_subgraph(f, s);
    AttractingNeighborhood n =
        stratum_neighborhood(f, s, std::max<int>(3, 2 * static_cast<int>(z.rho.size()) + 1));
    int here = 0;
    reduced_words(f.domain()->edge_count(), 6, [&](const std::string& w) {
      if (w.empty() || !is_cyclically_reduced(w)) return;
      Circuit c(f.domain(), w);
      if (!carried_by_groupoid(z, c)) return;
      ++here;
      if (weak_attraction_test(f, n, c, 20).attracted) ++attracted;
    });
    carried += here;
    if (here) detail += fmt("%s %d; ", f.name().c_str(), here);
  }
  return {attracted == 0 && carried > 0,
          fmt("%d of %d carried circuits attracted within 20 iterations (carried per map: %s)", attracted, carried,
              detail.empty() ? "none" : detail.c_str())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "tightening vs naive cancellation", 5, tightening},
      {2, "bounded cancellation soundness", 10, bcc_soundness},
      {3, "double-sharp containment on leaf paths", 30, double_sharp},
      {4, "Perron-Frobenius spectral check", 1, spectral},
      {5, "fold confluence and membership", 60, folding},
      {6, "exponential growth certificate", 30, growth},
      {7, "ping-pong end to end", 300, pingpong},
      {8, "hyperbolicity scan", 60, hyperbolicity},
      {9, "nonattraction coherence", 60, nonattraction},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.ok && secs < c.budget;
    if (!pass) ++failed;
    std::printf("criterion %d %s: %s (%.3f s of %.0f s) %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.budget,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
