#include <algorithm>
#include <array>
#include <memory>

#include "parallel.hpp"
#include "ttlab/error.hpp"
#include "ttlab/pingpong.hpp"
#include "ttlab/strata.hpp"

namespace ttlab {

const char* to_string(Role r) {
  switch (r) {
    case Role::psi: return "psi";
    case Role::psi_inv: return "psi_inv";
    case Role::phi: return "phi";
    case Role::phi_inv: return "phi_inv";
  }
  return "?";
}

namespace {

using Maps = std::array<const GraphMap*, 4>;

constexpr int kGrowthSteps = 4;

Maps roles(const PingPongMaps& m) { return {&m.psi, &m.psi_inv, &m.phi, &m.phi_inv}; }

// (h_##)^iters with the trim constant C; stops early once the path is gone.
std::string iterate_trim(const GraphMap& h, int C, std::string w, int iters) {
  for (int i = 0; i < iters && !w.empty(); ++i) w = sharp_sharp_word(h, w, C);
  return w;
}

std::optional<std::size_t> find_either(const std::string& hay, const std::string& needle) {
  auto occ = find_occurrences(hay, needle, OccurrenceMode::overlapping, Orientation::either);
  if (occ.empty()) return std::nullopt;
  return occ.front();
}

std::string sign(int s) { return s > 0 ? "+" : "-"; }

struct Checker {
  Maps maps;
  std::array<int, 4> bcc;

  // Target inside (h_##)^power(source), in either orientation.
  std::optional<Containment> into(const std::string& label, Role r, int power, const std::string& source,
                                  const std::string& target) const {
    int i = static_cast<int>(r);
    std::string img = iterate_trim(*maps[i], bcc[i], source, power);
    auto pos = find_either(img, target);
    if (!pos) return std::nullopt;
    return Containment{label, r, power, source, target, *pos, 1};
  }

  // Three disjoint forward copies of w inside (h_##)^power(w).
  std::optional<Containment> attracting(const std::string& label, Role r, int power, const std::string& w) const {
    int i = static_cast<int>(r);
    std::string img = iterate_trim(*maps[i], bcc[i], w, power);
    auto occ = find_occurrences(img, w, OccurrenceMode::disjoint, Orientation::forward);
    if (occ.size() < 3) return std::nullopt;
    return Containment{label, r, power, w, w, occ.front(), 3};
  }
};

// All six inclusions for one sign pattern at exponents (m, n).
std::variant<std::vector<Containment>, Violation> check_pattern(const Checker& ck, const PingPongCertificate& c,
                                                                int m, int n, SignPattern s) {
  std::vector<Containment> out;
  Role psi = s.psi_sign > 0 ? Role::psi : Role::psi_inv;
  Role phi = s.phi_sign > 0 ? Role::phi : Role::phi_inv;
  const std::string& beta = s.psi_sign > 0 ? c.beta_plus : c.beta_minus;
  const std::string& gamma = s.phi_sign > 0 ? c.gamma_plus : c.gamma_minus;
  std::string psi_tag = "psi^" + sign(s.psi_sign) + std::to_string(m);
  std::string phi_tag = "phi^" + sign(s.phi_sign) + std::to_string(n);
  std::string v_psi = "V" + sign(s.psi_sign) + "_psi";
  std::string v_phi = "V" + sign(s.phi_sign) + "_phi";

  struct Item {
    std::string label;
    Role r;
    int power;
    const std::string* source;
    const std::string* target;
    bool self;
  };
  std::vector<Item> items = {
      {psi_tag + "(V+_phi) in " + v_psi, psi, m, &c.gamma_plus, &beta, false},
      {psi_tag + "(V-_phi) in " + v_psi, psi, m, &c.gamma_minus, &beta, false},
      {psi_tag + "(" + v_psi + ") in " + v_psi, psi, m, &beta, &beta, true},
      {phi_tag + "(V+_psi) in " + v_phi, phi, n, &c.beta_plus, &gamma, false},
      {phi_tag + "(V-_psi) in " + v_phi, phi, n, &c.beta_minus, &gamma, false},
      {phi_tag + "(" + v_phi + ") in " + v_phi, phi, n, &gamma, &gamma, true},
  };
  for (const Item& it : items) {
    auto got = it.self ? ck.attracting(it.label, it.r, it.power, *it.source)
                       : ck.into(it.label, it.r, it.power, *it.source, *it.target);
    if (!got) return Violation{it.label};
    out.push_back(*got);
  }
  return out;
}

constexpr SignPattern kPatterns[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

PingPongMaps certificate_maps(const PingPongCertificate& cert) {
  if (cert.map_texts.size() != 4) throw InvalidMap("certificate must hold four maps");
  auto g = std::make_shared<const MarkedGraph>(parse_graph(cert.graph_text));
  return {parse_map(cert.map_texts[0], g), parse_map(cert.map_texts[1], g), parse_map(cert.map_texts[2], g),
          parse_map(cert.map_texts[3], g)};
}

std::variant<PingPongCertificate, FailureTrace> build_pingpong(const PingPongMaps& input,
                                                              const PingPongParams& params) {
  Maps maps = roles(input);
  const MarkedGraph& g = *input.psi.domain();
  for (const GraphMap* f : maps) {
    if (!f->is_self_map() || !(*f->domain() == g)) {
      throw DomainMismatch("ping-pong maps must be self-maps of one graph");
    }
  }

  // STEP 0: the two families must differ, and every role needs an EG stratum.
  if (input.psi == input.phi || input.psi == input.phi_inv || input.psi_inv == input.phi ||
      input.psi_inv == input.phi_inv) {
    return FailureTrace{0, "psi and phi coincide up to inversion, so their laminations are identical", 0};
  }
  PingPongCertificate cert;
  cert.graph_name = g.name();
  cert.graph_text = format_graph(g);
  Checker ck{maps, {}};
  std::array<std::string, 4> leaf;
  std::size_t leaf_want = static_cast<std::size_t>(4 * std::max(params.max_alpha_len, 8));
  for (int r = 0; r < 4; ++r) {
    const GraphMap& f = *maps[r];
    cert.map_texts.push_back(format_map(f));
    ck.bcc[r] = bcc_bound(f);
    cert.bcc.push_back(ck.bcc[r]);
    Filtration filt = compute_filtration(f);
    int top = top_eg_stratum(f, filt);
    if (top < 0) return FailureTrace{0, std::string(to_string(Role(r))) + " has no EG stratum", 0};
    char seed = params.seeds[r] ? params.seeds[r] : g.edge_letter(filt.strata[top].edges.front());
    std::string w(1, seed);
    for (int i = 0; i < 64 && w.size() < leaf_want; ++i) w = sharp_word(f, w);
    leaf[r] = w;
  }
  cert.C = *std::max_element(ck.bcc.begin(), ck.bcc.end());

  // STEP 1: central leaf subpaths with C-letter collars that outgrow
  // themselves under their own map and under both maps of the other family.
  // Images may dip before they grow, so only the length after a few trimmed
  // steps is compared.
  std::array<std::string, 4> alpha;
  detail::parallel_for(4, params.threads, [&](std::size_t r) {
    int other = r < 2 ? 2 : 0;
    for (int len = 2 * cert.C + 1; len <= params.max_alpha_len; ++len) {
      if (static_cast<std::size_t>(len) > leaf[r].size()) return;
      std::string a = leaf[r].substr((leaf[r].size() - len) / 2, len);
      bool grows = true;
      for (int h : {static_cast<int>(r), other, other + 1}) {
        std::string w = iterate_trim(*maps[h], ck.bcc[h], a, kGrowthSteps);
        grows = grows && w.size() > a.size();
      }
      if (grows) {
        alpha[r] = a;
        return;
      }
    }
  });
  for (int r = 0; r < 4; ++r) {
    if (alpha[r].empty()) {
      return FailureTrace{1, std::string("no growing collared leaf subpath for ") + to_string(Role(r)),
                          params.max_alpha_len};
    }
    cert.alpha.push_back(alpha[r]);
  }

  // STEP 2: p^eps pushes both phi subpaths onto alpha^eps of psi.
  auto least_power = [&](Role r, const std::string& target, const std::string& s1,
                         const std::string& s2) -> int {
    for (int p = 1; p <= params.max_iter; ++p) {
      if (ck.into("", r, p, s1, target) && ck.into("", r, p, s2, target)) return p;
    }
    return 0;
  };
  cert.p_plus = least_power(Role::psi, cert.alpha[0], cert.alpha[2], cert.alpha[3]);
  cert.p_minus = least_power(Role::psi_inv, cert.alpha[1], cert.alpha[2], cert.alpha[3]);
  if (!cert.p_plus || !cert.p_minus) {
    return FailureTrace{2, "no power of psi^{+-1} carries the phi subpaths onto psi's", params.max_iter};
  }

  // STEP 3: the collared alphas of psi, already protected by C letters on
  // each side, define V+_psi and V-_psi.
  cert.beta_plus = cert.alpha[0];
  cert.beta_minus = cert.alpha[1];

  // STEP 4: the same with the roles of psi and phi reversed.
  cert.gamma_plus = cert.alpha[2];
  cert.gamma_minus = cert.alpha[3];
  cert.q_plus = least_power(Role::phi, cert.gamma_plus, cert.beta_plus, cert.beta_minus);
  cert.q_minus = least_power(Role::phi_inv, cert.gamma_minus, cert.beta_plus, cert.beta_minus);
  if (!cert.q_plus || !cert.q_minus) {
    return FailureTrace{4, "no power of phi^{+-1} carries the psi subpaths onto phi's", params.max_iter};
  }

  // STEP 5: three disjoint copies, then the least common threshold M at
  // which every inclusion of every sign pattern holds.
  auto least_attracting = [&](Role r, const std::string& w) {
    for (int k = 1; k <= params.max_iter; ++k) {
      if (ck.attracting("", r, k, w)) return k;
    }
    return 0;
  };
  cert.k_psi_plus = least_attracting(Role::psi, cert.beta_plus);
  cert.k_psi_minus = least_attracting(Role::psi_inv, cert.beta_minus);
  cert.k_phi_plus = least_attracting(Role::phi, cert.gamma_plus);
  cert.k_phi_minus = least_attracting(Role::phi_inv, cert.gamma_minus);
  if (!cert.k_psi_plus || !cert.k_psi_minus || !cert.k_phi_plus || !cert.k_phi_minus) {
    return FailureTrace{5, "a defining path never shows three disjoint copies of itself", params.max_iter};
  }
  cert.p = std::max(cert.p_plus, cert.p_minus);
  cert.q = std::max(cert.q_plus, cert.q_minus);
  int start = std::max({cert.p, cert.q, cert.k_psi_plus, cert.k_psi_minus, cert.k_phi_plus, cert.k_phi_minus});
  for (int M = start; M <= params.max_iter; ++M) {
    std::vector<Containment> all;
    bool ok = true;
    for (SignPattern s : kPatterns) {
      auto r = check_pattern(ck, cert, M, M, s);
      if (std::holds_alternative<Violation>(r)) {
        ok = false;
        break;
      }
      for (auto& c : std::get<std::vector<Containment>>(r)) {
        bool seen = std::any_of(all.begin(), all.end(), [&](const Containment& x) { return x.label == c.label; });
        if (!seen) all.push_back(std::move(c));
      }
    }
    if (ok) {
      cert.M = M;
      cert.transcript = std::move(all);
      return cert;
    }
  }
  return FailureTrace{5, "no common threshold M satisfies all four sign patterns", params.max_iter};
}

std::variant<VerifiedInclusions, Violation> verify_pingpong(const PingPongCertificate& cert, int m, int n,
                                                           SignPattern pattern) {
  if (cert.transcript.empty()) return Violation{"certificate has an empty transcript"};
  if (std::abs(pattern.psi_sign) != 1 || std::abs(pattern.phi_sign) != 1) {
    throw InvalidMap("sign pattern entries must be +1 or -1");
  }
  PingPongMaps maps = certificate_maps(cert);
  Checker ck{roles(maps), {}};
  for (int r = 0; r < 4; ++r) {
    ck.bcc[r] = bcc_bound(*ck.maps[r]);
    if (r < static_cast<int>(cert.bcc.size()) && cert.bcc[r] != ck.bcc[r]) {
      return Violation{std::string("recorded bcc of ") + to_string(Role(r)) + " does not match"};
    }
  }
  auto r = check_pattern(ck, cert, m, n, pattern);
  if (auto* v = std::get_if<Violation>(&r)) return *v;
  return VerifiedInclusions{std::get<std::vector<Containment>>(r)};
}

}  // namespace ttlab
