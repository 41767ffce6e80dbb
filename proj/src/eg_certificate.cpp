#include <set>

#include "parallel.hpp"
#include "ttlab/pingpong.hpp"
#include "ttlab/strata.hpp"
#include "ttlab/error.hpp"

namespace ttlab {

namespace {

// Subwords of length <= max_len of leaf segments grown from every edge of
// every EG stratum, ordered by length and then lexicographically.
std::vector<std::string> leaf_subwords(const GraphMap& f, const Filtration& filt, int max_len) {
  std::set<std::pair<std::size_t, std::string>> out;
  std::size_t want = static_cast<std::size_t>(std::max(64, 8 * max_len));
  for (std::size_t s = 0; s < filt.size(); ++s) {
    if (classify_stratum(f, filt, static_cast<int>(s)).type != StratumType::eg) continue;
    for (int e : filt.strata[s].edges) {
      std::string w(1, f.domain()->edge_letter(e));
      for (int i = 0; i < 64 && w.size() < want; ++i) w = sharp_word(f, w);
      for (std::size_t len = 1; len <= static_cast<std::size_t>(max_len) && len <= w.size(); ++len) {
        for (std::size_t i = 0; i + len <= w.size(); ++i) out.insert({len, w.substr(i, len)});
      }
    }
  }
  std::vector<std::string> words;
  for (auto& [len, w] : out) words.push_back(w);
  return words;
}

}  // namespace

std::variant<EGCertificate, NotFound> certify_exponential_growth(const GraphMap& f, const GrowthSearch& search) {
  if (!f.is_self_map()) throw DomainMismatch("growth certificates need a self-map");
  Filtration filt = compute_filtration(f);
  std::vector<std::string> candidates = leaf_subwords(f, filt, search.max_beta_len);
  if (candidates.empty()) return NotFound{"no EG stratum"};

  std::vector<GraphMap> powers;
  std::vector<int> trims;
  for (int k = 1; k <= search.max_iter; ++k) {
    powers.push_back(k == 1 ? f : compose(f, powers.back()));
    trims.push_back(bcc_bound(powers.back()));
  }
  Orientation orient = search.either_orientation ? Orientation::either : Orientation::forward;

  // best[i] = least k that works for candidate i, or 0
  std::vector<int> best(candidates.size(), 0);
  detail::parallel_for(candidates.size(), search.threads, [&](std::size_t i) {
    const std::string& beta = candidates[i];
    for (int k = 1; k <= search.max_iter; ++k) {
      std::string trimmed = sharp_sharp_word(powers[k - 1], beta, trims[k - 1]);
      if (find_occurrences(trimmed, beta, OccurrenceMode::disjoint, orient).size() >= 3) {
        best[i] = k;
        return;
      }
    }
  });

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!best[i]) continue;
    int k = best[i];
    EdgePath beta(f.domain(), candidates[i]);
    std::string trimmed = sharp_sharp_word(powers[k - 1], candidates[i], trims[k - 1]);
    auto occ = find_occurrences(trimmed, candidates[i], OccurrenceMode::disjoint, orient);
    return EGCertificate{f.name(), beta, trims[k - 1], k, {occ.begin(), occ.begin() + 3},
                         search.either_orientation, {beta, Orientation::either}};
  }
  return NotFound{"no beta of length <= " + std::to_string(search.max_beta_len) + " with k <= " +
                  std::to_string(search.max_iter)};
}

bool recheck(const GraphMap& f, const EGCertificate& cert) {
  if (cert.k < 1 || cert.positions.size() != 3) return false;
  GraphMap fk = power(f, cert.k);
  if (bcc_bound(fk) != cert.C) return false;
  std::string trimmed = sharp_sharp_word(fk, cert.beta.word(), cert.C);
  const std::string& beta = cert.beta.word();
  std::string ateb = inverse_word(beta);
  std::size_t last_end = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t p = cert.positions[i];
    if (i > 0 && p < last_end) return false;
    if (p + beta.size() > trimmed.size()) return false;
    std::string_view piece = std::string_view(trimmed).substr(p, beta.size());
    if (piece != beta && !(cert.either_orientation && piece == ateb)) return false;
    last_end = p + beta.size();
  }
  return true;
}

}  // namespace ttlab
