#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttlab/graph_map.hpp"

namespace ttlab {

/// An endomorphism of F_r given by the images of the generators a, b, c, ...
/// An inverse may be attached; it is checked on construction.
class Automorphism {
 public:
  Automorphism(std::string name, int rank, std::vector<std::string> images,
               std::optional<std::vector<std::string>> inverse_images = std::nullopt);

  static Automorphism identity(int rank);

  const std::string& name() const noexcept { return name_; }
  int rank() const noexcept { return rank_; }
  const std::vector<std::string>& images() const noexcept { return images_; }
  const std::optional<std::vector<std::string>>& inverse_images() const noexcept { return inverse_; }

  /// Image of a single letter (uppercase letters are inverted).
  std::string image(char letter) const;
  /// Reduced image of a word.
  std::string apply(std::string_view word) const;

  /// The same automorphism as a self-map of the rose R_r.
  GraphMap as_graph_map() const;

  /// Swaps images and inverse images; requires a known inverse.
  Automorphism inverse() const;
  Automorphism renamed(std::string name) const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.rank_ == b.rank_ && a.images_ == b.images_;
  }

 private:
  std::string name_;
  int rank_;
  std::vector<std::string> images_;
  std::optional<std::vector<std::string>> inverse_;
};

/// Text format:
///   aut <name> rank <r>
///   a -> ab
///   b -> a
///   inverse a -> b        (optional, one line per generator)
Automorphism parse_automorphism(std::string_view text);

/// a o b: apply b first. The inverse is kept when both inverses are known.
Automorphism compose(const Automorphism& a, const Automorphism& b);

/// a^k; negative k uses the inverse.
Automorphism power(const Automorphism& a, int k);

/// Integer matrix of the induced map on Z^r (column j = exponent sums of image j).
std::vector<std::vector<long long>> abelianization(const Automorphism& a);
long long determinant(std::vector<std::vector<long long>> m);

enum class Invertibility { invertible, not_invertible, undecided };

struct InvertibilityReport {
  Invertibility verdict = Invertibility::undecided;
  std::optional<std::vector<std::string>> inverse;
  std::string reason;
};

/// Bounded inverse search by Nielsen length reduction, with the
/// abelianization determinant as a certificate of non-invertibility.
InvertibilityReport check_invertible(const Automorphism& a, int max_steps = 10000);

/// Attaches an inverse found by `check_invertible`; throws InvalidMap when
/// none is found.
Automorphism with_inverse(const Automorphism& a);

/// Conjugator c with a(x) = c x c^-1 for every generator x, or nullopt.
std::optional<std::string> is_inner(const Automorphism& a);

}  // namespace ttlab
