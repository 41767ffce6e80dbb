#include "ttlab/lamination.hpp"

#include <algorithm>

#include "ttlab/error.hpp"

namespace ttlab {

namespace {

constexpr std::size_t kLengthCap = 4'000'000;

bool in_eg_stratum(const GraphMap& f, int edge) {
  Filtration filt = compute_filtration(f);
  int h = filt.height_of(edge);
  return classify_stratum(f, filt, h).type == StratumType::eg;
}

}  // namespace

LeafSegment leaf_segment(const GraphMap& f, char seed, int k) {
  if (!f.is_self_map()) throw DomainMismatch("leaf segments need a self-map");
  if (k < 0) throw InvalidPath("negative iterate");
  const MarkedGraph& g = *f.domain();
  if (!in_eg_stratum(f, g.edge_index(seed))) {
    throw NotEGStratum(std::string("edge '") + seed + "' is not in an EG stratum of " + f.name());
  }
  std::string w(1, seed);
  for (int i = 0; i < k; ++i) w = sharp_word(f, w);
  int v = g.origin(seed);
  for (int i = 0; i < k; ++i) v = f.vertex_image(v);
  return {EdgePath(f.domain(), w, v), seed, k, f.name()};
}

int top_eg_stratum(const GraphMap& f, const Filtration& filt) {
  for (int i = static_cast<int>(filt.size()) - 1; i >= 0; --i) {
    if (classify_stratum(f, filt, i).type == StratumType::eg) return i;
  }
  return -1;
}

bool neighborhood_contains(const AttractingNeighborhood& n, const EdgePath& p) {
  if (!(*n.beta.graph() == *p.graph())) throw DomainMismatch("neighborhood and path live in different graphs");
  return !find_occurrences(p.word(), n.beta.word(), OccurrenceMode::overlapping, n.mode).empty();
}

bool neighborhood_contains(const AttractingNeighborhood& n, const Circuit& c) {
  if (!(*n.beta.graph() == *c.graph())) throw DomainMismatch("neighborhood and circuit live in different graphs");
  if (cyclic_contains(c.word(), n.beta.word())) return true;
  return n.mode == Orientation::either && cyclic_contains(c.word(), inverse_word(n.beta.word()));
}

AttractionResult weak_attraction_test(const GraphMap& f, const AttractingNeighborhood& n, const EdgePath& p,
                                      int max_iter) {
  AttractionResult r;
  EdgePath cur = p;
  for (int k = 0; k <= max_iter; ++k) {
    r.iterations = k;
    if (neighborhood_contains(n, cur)) {
      r.attracted = k;
      return r;
    }
    if (k == max_iter || cur.size() > kLengthCap) break;
    cur = apply_sharp(f, cur);
  }
  return r;
}

AttractionResult weak_attraction_test(const GraphMap& f, const AttractingNeighborhood& n, const Circuit& c,
                                      int max_iter) {
  AttractionResult r;
  std::string cur = c.word();
  for (int k = 0; k <= max_iter; ++k) {
    r.iterations = k;
    if (cur.empty()) break;
    if (neighborhood_contains(n, Circuit(c.graph(), cur))) {
      r.attracted = k;
      return r;
    }
    if (k == max_iter || cur.size() > kLengthCap) break;
    cur = cyclic_reduce(sharp_word(f, cur));
  }
  return r;
}

bool NonAttractingSubgraph::contains_edge(char letter) const {
  int e = graph->edge_index(letter);
  return std::find(z_edges.begin(), z_edges.end(), e) != z_edges.end();
}

AttractingNeighborhood stratum_neighborhood(const GraphMap& f, int eg_stratum, int min_len) {
  Filtration filt = compute_filtration(f);
  if (classify_stratum(f, filt, eg_stratum).type != StratumType::eg) {
    throw NotEGStratum("stratum " + std::to_string(eg_stratum) + " is not EG");
  }
  char seed = f.domain()->edge_letter(filt.strata[eg_stratum].edges.front());
  std::string w(1, seed);
  for (int i = 0; i < 64 && static_cast<int>(w.size()) < min_len; ++i) w = sharp_word(f, w);
  return {EdgePath(f.domain(), w), Orientation::either};
}

NonAttractingSubgraph nonattracting_subgraph(const GraphMap& f, int eg_stratum, int rho_bound, int probe_iter) {
  Filtration filt = compute_filtration(f);
  if (eg_stratum < 0 || eg_stratum >= static_cast<int>(filt.size()) ||
      classify_stratum(f, filt, eg_stratum).type != StratumType::eg) {
    throw NotEGStratum("stratum " + std::to_string(eg_stratum) + " is not EG");
  }
  const MarkedGraph& g = *f.domain();
  const auto& target = filt.strata[eg_stratum].edges;
  int n = g.edge_count();

  // reaches[e]: some iterate of e crosses the stratum
  std::vector<bool> reaches(n, false);
  for (int e : target) reaches[e] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int e = 0; e < n; ++e) {
      if (reaches[e]) continue;
      for (char c : f.positive_image(e)) {
        if (reaches[g.edge_index(c)]) {
          reaches[e] = true;
          changed = true;
          break;
        }
      }
    }
  }

  NonAttractingSubgraph out;
  out.graph = f.domain();
  for (int e = 0; e < n; ++e) {
    if (!reaches[e]) out.z_edges.push_back(e);
  }

  // rho: shortest closed Nielsen path of height exactly eg_stratum
  std::vector<int> level = filt.level(eg_stratum);
  for (const FixedPath& p : fixed_paths_up_to(f, rho_bound, 1)) {
    if (g.terminus(p.word.back()) != p.origin) continue;
    bool inside = true;
    bool crosses = false;
    for (char c : p.word) {
      int e = g.edge_index(c);
      inside &= std::binary_search(level.begin(), level.end(), e);
      crosses |= std::find(target.begin(), target.end(), e) != target.end();
    }
    if (!inside || !crosses) continue;
    if (out.rho.empty() || p.word.size() < out.rho.size() ||
        (p.word.size() == out.rho.size() && p.word < out.rho)) {
      out.rho = p.word;
      out.rho_origin = p.origin;
    }
  }

  AttractingNeighborhood probe = stratum_neighborhood(f, eg_stratum, 3);
  for (int e = 0; e < n; ++e) {
    if (!reaches[e] || std::find(target.begin(), target.end(), e) != target.end()) continue;
    EdgePath edge(f.domain(), std::string(1, g.edge_letter(e)));
    if (!weak_attraction_test(f, probe, edge, probe_iter).attracted) out.disagreements.push_back(e);
  }
  return out;
}

namespace {

bool parses(const NonAttractingSubgraph& z, std::string_view w) {
  std::string rho = z.rho;
  std::string ohr = inverse_word(rho);
  std::vector<bool> ok(w.size() + 1, false);
  ok[0] = true;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    if (ok[i - 1] && z.contains_edge(w[i - 1])) {
      ok[i] = true;
      continue;
    }
    std::size_t r = rho.size();
    if (r > 0 && i >= r && ok[i - r]) {
      std::string_view piece = w.substr(i - r, r);
      if (piece == rho || piece == ohr) ok[i] = true;
    }
  }
  return ok[w.size()];
}

}  // namespace

bool carried_by_groupoid(const NonAttractingSubgraph& z, const EdgePath& p) {
  if (!(*z.graph == *p.graph())) throw DomainMismatch("groupoid and path live in different graphs");
  return parses(z, p.word());
}

bool carried_by_groupoid(const NonAttractingSubgraph& z, const Circuit& c) {
  if (!(*z.graph == *c.graph())) throw DomainMismatch("groupoid and circuit live in different graphs");
  std::string w = c.word();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (parses(z, w)) return true;
    std::rotate(w.begin(), w.begin() + 1, w.end());
  }
  return false;
}

}  // namespace ttlab
