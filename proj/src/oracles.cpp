#include <array>
#include <cstdint>

#include "parallel.hpp"
#include "ttlab/error.hpp"
#include "ttlab/pingpong.hpp"
#include "ttlab/strata.hpp"

namespace ttlab {

namespace {

constexpr std::array<std::uint64_t, 2> kPrimes = {1'000'000'007ULL, 998'244'353ULL};
// Full compositions beyond this many letters are refused.
constexpr std::size_t kCompositionCap = 4'000'000;

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

ModMatrix reduce_mod(const std::vector<std::vector<long long>>& m, std::uint64_t p) {
  ModMatrix out(m.size(), std::vector<std::uint64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      long long r = m[i][j] % static_cast<long long>(p);
      out[i][j] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
    }
  }
  return out;
}

ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, std::uint64_t p) {
  std::size_t n = a.size();
  ModMatrix c(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
    }
  }
  return c;
}

ModMatrix identity_mod(std::size_t n) {
  ModMatrix m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ModMatrix power_mod(ModMatrix base, int e, std::uint64_t p) {
  ModMatrix out = identity_mod(base.size());
  for (; e > 0; e >>= 1) {
    if (e & 1) out = multiply(out, base, p);
    base = multiply(base, base, p);
  }
  return out;
}

int syllable_index(char c) {
  switch (c) {
    case 'x': return 0;
    case 'X': return 1;
    case 'y': return 2;
    case 'Y': return 3;
  }
  throw InvalidPath(std::string("syllable letters are x, X, y, Y; got '") + c + "'");
}

std::size_t total_length(const Automorphism& a) {
  std::size_t n = 0;
  for (const auto& w : a.images()) n += w.size();
  return n;
}

}  // namespace

std::vector<std::string> syllable_words(int max_len) {
  static const char kLetters[4] = {'x', 'X', 'y', 'Y'};
  std::vector<std::string> out;
  std::vector<std::string> layer{""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : kLetters) {
        if (!w.empty() && cancels(w.back(), c)) continue;
        next.push_back(w + c);
      }
    }
    for (const auto& w : next) {
      if (w.size() < 2 || !cancels(w.front(), w.back())) out.push_back(w);
    }
    layer = std::move(next);
  }
  return out;
}

Automorphism evaluate_syllables(const Automorphism& psi, const Automorphism& phi, int m, int n,
                                const std::string& word) {
  if (psi.rank() != phi.rank()) throw DomainMismatch("automorphisms of different ranks");
  std::array<Automorphism, 4> gens = {power(psi, m), power(psi, -m), power(phi, n), power(phi, -n)};
  Automorphism out = Automorphism::identity(psi.rank());
  for (char c : word) {
    out = compose(out, gens[syllable_index(c)]);
    if (total_length(out) > kCompositionCap) {
      throw Error("composition of '" + word + "' exceeds " + std::to_string(kCompositionCap) + " letters");
    }
  }
  return out;
}

FreenessReport freeness_oracle(const Automorphism& psi, const Automorphism& phi, int m, int n, int max_len,
                               int threads) {
  if (max_len < 1) throw InvalidPath("freeness oracle needs max_len >= 1");
  if (!psi.inverse_images() || !phi.inverse_images()) {
    throw InvalidMap("freeness oracle needs automorphisms with known inverses");
  }
  FreenessReport rep;
  rep.psi_name = psi.name();
  rep.phi_name = phi.name();
  rep.m = m;
  rep.n = n;
  rep.max_len = max_len;

  // Abelianized syllables modulo each prime.
  std::array<std::array<ModMatrix, 4>, 2> gens;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    std::uint64_t p = kPrimes[i];
    ModMatrix a = reduce_mod(abelianization(psi), p);
    ModMatrix ai = reduce_mod(abelianization(psi.inverse()), p);
    ModMatrix b = reduce_mod(abelianization(phi), p);
    ModMatrix bi = reduce_mod(abelianization(phi.inverse()), p);
    gens[i] = {power_mod(a, m, p), power_mod(ai, m, p), power_mod(b, n, p), power_mod(bi, n, p)};
  }

  std::vector<std::string> words = syllable_words(max_len);
  // 0: abelian certificate of non-innerness, 1: composed and not inner,
  // 2: inner (relation)
  std::vector<int> outcome(words.size(), 0);
  std::vector<std::string> conjugators(words.size());
  detail::parallel_for(words.size(), threads, [&](std::size_t w) {
    bool trivial_mod_all = true;
    for (std::size_t i = 0; i < kPrimes.size() && trivial_mod_all; ++i) {
      ModMatrix acc = identity_mod(psi.rank());
      for (char c : words[w]) acc = multiply(acc, gens[i][syllable_index(c)], kPrimes[i]);
      trivial_mod_all = acc == identity_mod(psi.rank());
    }
    if (!trivial_mod_all) return;
    auto c = is_inner(evaluate_syllables(psi, phi, m, n, words[w]));
    outcome[w] = c ? 2 : 1;
    if (c) conjugators[w] = *c;
  });

  rep.verdict = NoRelationUpTo{max_len};
  for (std::size_t w = 0; w < words.size(); ++w) {
    ++rep.words_checked;
    if (outcome[w] == 0) ++rep.abelian_certified;
    if (outcome[w] == 2) {
      rep.verdict = RelationFound{words[w], conjugators[w]};
      break;
    }
  }
  return rep;
}

PeriodicClassReport hyperbolicity_scan(const Automorphism& aut, int max_len, int max_period, int threads,
                                       std::size_t max_report) {
  PeriodicClassReport rep;
  rep.aut_name = aut.name();
  rep.max_len = max_len;
  rep.max_period = max_period;

  std::vector<std::string> classes;
  std::vector<std::string> layer{""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (int i = 0; i < aut.rank(); ++i) {
        for (char c : {static_cast<char>('a' + i), static_cast<char>('A' + i)}) {
          if (!w.empty() && cancels(w.back(), c)) continue;
          next.push_back(w + c);
        }
      }
    }
    for (const auto& w : next) {
      if (is_cyclically_reduced(w) && class_canonical(w) == w) classes.push_back(w);
    }
    layer = std::move(next);
  }
  rep.classes_scanned = classes.size();

  std::vector<int> period(classes.size(), 0);
  detail::parallel_for(classes.size(), threads, [&](std::size_t i) {
    std::string cur = classes[i];
    for (int p = 1; p <= max_period; ++p) {
      cur = cyclic_reduce(aut.apply(cur));
      if (cur.size() > kCompositionCap) return;
      if (cyclic_equal(cur, classes[i])) {
        period[i] = p;
        return;
      }
    }
  });
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!period[i]) continue;
    if (rep.found.size() == max_report) {
      rep.truncated = true;
      break;
    }
    rep.found.push_back({classes[i], period[i]});
  }
  return rep;
}

EvidenceReport irreducibility_evidence(const GraphMap& f, int eg_stratum,
                                       const std::vector<std::pair<std::string, SubgroupGraph>>& probes,
                                       const EvidenceBounds& bounds) {
  EvidenceReport rep;
  rep.map_name = f.name();
  const MarkedGraph& g = *f.domain();
  std::vector<int> all(g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) all[i] = i;
  rep.matrix_irreducible = is_irreducible(transition_matrix(f, all));

  NonAttractingSubgraph z = nonattracting_subgraph(f, eg_stratum);
  rep.z_empty = z.z_edges.empty();

  if (g.is_rose()) {
    Automorphism a(f.name(), g.edge_count(), f.edge_images());
    PeriodicClassReport scan = hyperbolicity_scan(a, bounds.scan_len, bounds.scan_period);
    rep.scan_ran = true;
    rep.periodic_classes = scan.found;
  }

  Filtration filt = compute_filtration(f);
  std::string leaf(1, g.edge_letter(filt.strata.at(eg_stratum).edges.front()));
  for (int i = 0; i < 64 && static_cast<int>(leaf.size()) < bounds.leaf_length; ++i) leaf = sharp_word(f, leaf);
  for (const auto& [name, s] : probes) {
    if (!g.is_rose() || s.rank() != g.edge_count()) {
      throw DomainMismatch("probe '" + name + "' is not a subgroup graph over this rose");
    }
    ProbeResult pr;
    pr.name = name;
    pr.leaf_length = static_cast<int>(leaf.size());
    pr.carries_leaf = carries_segment(s, leaf);
    pr.uninformative = true;
    for (int v = 0; v < s.vertex_count() && pr.uninformative; ++v) {
      for (int i = 0; i < s.rank(); ++i) {
        char x = static_cast<char>('a' + i);
        if (!s.follow(v, x) || !s.follow(v, inverse_letter(x))) pr.uninformative = false;
      }
    }
    rep.probes.push_back(pr);
  }

  if (!rep.matrix_irreducible) {
    rep.summary = "not fully irreducible: the transition matrix is reducible, so a proper invariant subgraph exists";
    return rep;
  }
  std::string s = "evidence only: transition matrix irreducible";
  s += rep.z_empty ? "; Z is empty" : "; Z is nonempty";
  if (rep.scan_ran) {
    s += rep.periodic_classes.empty()
             ? "; no periodic class up to length " + std::to_string(bounds.scan_len)
             : "; " + std::to_string(rep.periodic_classes.size()) + " periodic class(es), first [" +
                   rep.periodic_classes.front().word + "]";
  }
  for (const auto& pr : rep.probes) {
    if (pr.uninformative) {
      s += "; probe " + pr.name + " carries everything (uninformative)";
    } else if (pr.carries_leaf) {
      s += "; probe " + pr.name + " carries a leaf segment of length " + std::to_string(pr.leaf_length);
    }
  }
  rep.summary = s;
  return rep;
}

}  // namespace ttlab
