#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ttlab/automorphism.hpp"
#include "ttlab/graph.hpp"
#include "ttlab/graph_map.hpp"
#include "ttlab/lamination.hpp"
#include "ttlab/stallings.hpp"

namespace ttlab {

// ---------------------------------------------------------------------------
// Exponential growth

/// beta together with an iterate k such that the symmetric trim of
/// f^k_#(beta) by C = bcc(f^k) letters holds three disjoint copies of beta.
struct EGCertificate {
  std::string map_name;
  EdgePath beta;
  int C = 0;
  int k = 0;
  /// Start offsets of the three copies inside the trimmed image.
  std::vector<std::size_t> positions;
  bool either_orientation = false;
  AttractingNeighborhood neighborhood;
};

struct NotFound {
  std::string reason;
};

struct GrowthSearch {
  int max_beta_len = 8;
  int max_iter = 10;
  /// Also count copies of the inverse of beta.
  bool either_orientation = false;
  int threads = 1;
};

/// Candidates are subwords of leaf segments of EG strata, tried by length,
/// then lexicographically, then by k. NotFound is not a disproof.
std::variant<EGCertificate, NotFound> certify_exponential_growth(const GraphMap& f, const GrowthSearch& search = {});

/// Recomputes the trimmed image and checks the recorded occurrences.
bool recheck(const GraphMap& f, const EGCertificate& cert);

// ---------------------------------------------------------------------------
// Ping-pong

/// The four maps, all self-maps of one marked graph (comparison maps are
/// identities). psi_inv and phi_inv represent the inverse outer classes.
struct PingPongMaps {
  GraphMap psi;
  GraphMap psi_inv;
  GraphMap phi;
  GraphMap phi_inv;
};

struct PingPongParams {
  /// Bound on every power search (p, q, the self-attraction k, and M).
  int max_iter = 20;
  /// Longest collared leaf subpath tried when choosing alpha.
  int max_alpha_len = 80;
  /// Optional leaf seeds per role (psi, psi_inv, phi, phi_inv); 0 = first
  /// edge of the top EG stratum.
  char seeds[4] = {0, 0, 0, 0};
  /// Workers for the per-role searches; results do not depend on it.
  int threads = 1;
};

/// Role index: 0 psi, 1 psi^-1, 2 phi, 3 phi^-1.
enum class Role { psi = 0, psi_inv = 1, phi = 2, phi_inv = 3 };
const char* to_string(Role r);

/// One verified inclusion: (h_##)^power(source) contains target, where h is
/// the role's map and the trim constant is that map's bcc.
struct Containment {
  std::string label;
  Role map;
  int power = 0;
  std::string source;
  std::string target;
  std::size_t position = 0;
  /// Copies required (3 for self-attraction, 1 otherwise).
  int copies = 1;
};

struct PingPongCertificate {
  std::string graph_name;
  /// The graph and the four maps in their file formats, by role.
  std::string graph_text;
  std::vector<std::string> map_texts;
  /// bcc of each role map, and C = their maximum.
  std::vector<int> bcc;
  int C = 0;
  /// alpha per role: collared leaf subpaths chosen in STEP 1.
  std::vector<std::string> alpha;
  /// Defining paths of V+_psi, V-_psi (beta) and V+_phi, V-_phi (gamma).
  std::string beta_plus, beta_minus, gamma_plus, gamma_minus;
  int p_plus = 0, p_minus = 0, q_plus = 0, q_minus = 0;
  int k_psi_plus = 0, k_psi_minus = 0, k_phi_plus = 0, k_phi_minus = 0;
  int p = 0, q = 0, M = 0;
  std::vector<Containment> transcript;
};

struct FailureTrace {
  int step = 0;
  std::string message;
  int bound = 0;
};

std::variant<PingPongCertificate, FailureTrace> build_pingpong(const PingPongMaps& maps,
                                                              const PingPongParams& params = {});

/// Sign pattern: psi_sign and phi_sign are each +1 or -1.
struct SignPattern {
  int psi_sign = 1;
  int phi_sign = 1;
};

struct VerifiedInclusions {
  std::vector<Containment> checked;
};

struct Violation {
  std::string inclusion;
};

/// Rebuilds the maps from the certificate alone and re-checks, at exponents
/// (m, n), that psi^{+-m} sends both phi neighborhoods into V^{sign}_psi,
/// phi^{+-n} sends both psi neighborhoods into V^{sign}_phi, and each
/// target neighborhood is attracting (three disjoint copies).
std::variant<VerifiedInclusions, Violation> verify_pingpong(const PingPongCertificate& cert, int m, int n,
                                                           SignPattern pattern);

/// Reconstructs the four maps stored in a certificate.
PingPongMaps certificate_maps(const PingPongCertificate& cert);

// ---------------------------------------------------------------------------
// Freeness

struct NoRelationUpTo {
  int length = 0;
};

struct RelationFound {
  /// Word over x = Psi^m, X, y = Phi^n, Y, applied right to left.
  std::string word;
  /// Conjugating element c with the composition equal to conjugation by c.
  std::string conjugator;
};

struct FreenessReport {
  std::string psi_name;
  std::string phi_name;
  int m = 0;
  int n = 0;
  int max_len = 0;
  std::variant<NoRelationUpTo, RelationFound> verdict;
  std::size_t words_checked = 0;
  /// Words shown non-inner through abelianization mod primes alone.
  std::size_t abelian_certified = 0;
};

/// Reads a syllable word over {x, X, y, Y} as the corresponding
/// automorphism (rightmost letter applied first).
Automorphism evaluate_syllables(const Automorphism& psi, const Automorphism& phi, int m, int n,
                                const std::string& word);

/// Cyclically reduced syllable words of length <= max_len, shortest first,
/// each length in the order x < X < y < Y.
std::vector<std::string> syllable_words(int max_len);

FreenessReport freeness_oracle(const Automorphism& psi, const Automorphism& phi, int m, int n, int max_len,
                               int threads = 1);

// ---------------------------------------------------------------------------
// Periodic conjugacy classes

struct PeriodicClass {
  std::string word;
  int period = 0;
};

struct PeriodicClassReport {
  std::string aut_name;
  int max_len = 0;
  int max_period = 0;
  std::vector<PeriodicClass> found;
  std::size_t classes_scanned = 0;
  /// Set when more than `max_report` classes were periodic.
  bool truncated = false;
};

/// Cyclically reduced words up to rotation and inversion, each iterated up
/// to max_period times. An empty report is evidence, not proof.
PeriodicClassReport hyperbolicity_scan(const Automorphism& aut, int max_len, int max_period, int threads = 1,
                                       std::size_t max_report = 256);

// ---------------------------------------------------------------------------
// Full irreducibility evidence

struct ProbeResult {
  std::string name;
  bool carries_leaf = false;
  /// The probe carries every word, so it tells nothing.
  bool uninformative = false;
  int leaf_length = 0;
};

struct EvidenceReport {
  std::string map_name;
  bool matrix_irreducible = false;
  bool z_empty = false;
  bool scan_ran = false;
  std::vector<PeriodicClass> periodic_classes;
  std::vector<ProbeResult> probes;
  /// "not fully irreducible" when a proper invariant subgraph exists,
  /// otherwise a description of the evidence collected.
  std::string summary;
};

struct EvidenceBounds {
  int scan_len = 6;
  int scan_period = 4;
  int leaf_length = 60;
};

EvidenceReport irreducibility_evidence(const GraphMap& f, int eg_stratum,
                                       const std::vector<std::pair<std::string, SubgroupGraph>>& probes,
                                       const EvidenceBounds& bounds = {});

}  // namespace ttlab
