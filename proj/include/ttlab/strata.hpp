#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ttlab/graph_map.hpp"

namespace ttlab {

using Matrix = std::vector<std::vector<long long>>;

/// A stratum H_i: edge indices of the domain, ascending.
struct Stratum {
  std::vector<int> edges;
};

/// Strata listed bottom to top; G_i is the union of strata 0..i.
struct Filtration {
  std::vector<Stratum> strata;

  std::size_t size() const noexcept { return strata.size(); }
  /// Index of the stratum containing an edge.
  int height_of(int edge) const;
  /// Edges of G_i.
  std::vector<int> level(int i) const;
};

/// Strongly connected components of the edge-transition digraph, lower
/// strata first. Incomparable components are ordered by smallest edge index.
Filtration compute_filtration(const GraphMap& f);

/// Row i counts how often f(E_i) crosses E_j, in either orientation, for
/// E_i, E_j in `edges`.
Matrix transition_matrix(const GraphMap& f, const std::vector<int>& edges);

/// Whether the digraph with an arc i -> j for m[i][j] > 0 is strongly
/// connected. A 1x1 matrix is irreducible when its entry is positive.
bool is_irreducible(const Matrix& m);
bool is_permutation_matrix(const Matrix& m);
bool is_zero_matrix(const Matrix& m);

struct PerronFrobenius {
  double lambda = 0.0;
  /// Positive, normalized to unit sum.
  std::vector<double> eigenvector;
  int iterations = 0;
};

struct NotIrreducible {};

/// Power iteration on M + I from the uniform vector until the eigenvalue
/// estimate and the vector both move by less than 1e-12 (relative).
std::variant<PerronFrobenius, NotIrreducible> pf_eigenvalue(const Matrix& m);

enum class StratumType { eg, neg, zero };
enum class NegSubtype { fixed, periodic, linear_candidate, polynomial };

struct StratumClass {
  StratumType type = StratumType::zero;
  double lambda = 0.0;
  std::vector<double> eigenvector;
  NegSubtype subtype = NegSubtype::fixed;
};

const char* to_string(StratumType t);
const char* to_string(NegSubtype t);

/// Throws InvalidMap when the stratum matrix is neither zero nor irreducible.
StratumClass classify_stratum(const GraphMap& f, const Filtration& filt, int index);

/// Sorted EG eigenvalues of f.
std::vector<double> eg_eigenvalues(const GraphMap& f);

struct FixedPath {
  std::string word;
  int origin = 0;
  int period = 1;
};

/// All reduced non-trivial paths of length <= L with f^k_#(path) = path for
/// some 1 <= k <= P, with the least such k. Ordered by origin, then length,
/// then word.
std::vector<FixedPath> fixed_paths_up_to(const GraphMap& f, int L, int P);

}  // namespace ttlab
