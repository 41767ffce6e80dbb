#pragma once

// Letter-level utilities for words in a free group or edge paths in a graph.
// A lowercase letter is an oriented edge (or generator); the matching
// uppercase letter is its inverse. Words are contiguous strings.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ttlab {

inline bool is_letter(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char inverse_letter(char c) noexcept {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c - 'A' + 'a');
}

/// Lowercase form of a letter, i.e. the unoriented edge it crosses.
inline char base_letter(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline bool is_positive(char c) noexcept { return c >= 'a' && c <= 'z'; }

inline bool cancels(char x, char y) noexcept { return x != y && base_letter(x) == base_letter(y); }

std::string inverse_word(std::string_view w);

/// Free reduction with a single stack pass.
std::string free_reduce(std::string_view w);

bool is_reduced(std::string_view w);

/// Reduces a cyclic word; the empty string means the word is trivial.
std::string cyclic_reduce(std::string_view w);

bool is_cyclically_reduced(std::string_view w);

/// True when `a` and `b` are equal as cyclic words (one is a rotation of the other).
bool cyclic_equal(std::string_view a, std::string_view b);

/// Lexicographically least rotation.
std::string least_rotation(std::string_view w);

/// Canonical representative of a conjugacy class up to rotation and inversion.
std::string class_canonical(std::string_view cyclically_reduced_word);

/// Length of the longest common prefix.
std::size_t common_prefix(std::string_view a, std::string_view b);

enum class OccurrenceMode { overlapping, disjoint };
enum class Orientation { forward, either };

/// Starting positions of `needle` in `haystack`. Disjoint mode is greedy
/// left to right, which is maximum for equal-length intervals. With
/// `either`, occurrences of the inverse of the needle count too.
std::vector<std::size_t> find_occurrences(std::string_view haystack, std::string_view needle,
                                          OccurrenceMode mode, Orientation orientation);

/// Whether `needle` occurs in the bi-infinite periodic word ...www...
bool cyclic_contains(std::string_view circuit, std::string_view needle);

}  // namespace ttlab
