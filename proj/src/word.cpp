#include "ttlab/word.hpp"

#include <algorithm>

namespace ttlab {

std::string inverse_word(std::string_view w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = inverse_letter(c);
  return out;
}

std::string free_reduce(std::string_view w) {
  std::string stack;
  stack.reserve(w.size());
  for (char c : w) {
    if (!stack.empty() && cancels(stack.back(), c)) {
      stack.pop_back();
    } else {
      stack.push_back(c);
    }
  }
  return stack;
}

bool is_reduced(std::string_view w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (cancels(w[i - 1], w[i])) return false;
  }
  return true;
}

std::string cyclic_reduce(std::string_view w) {
  std::string r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && cancels(r[lo], r[hi - 1])) {
    ++lo;
    --hi;
  }
  return r.substr(lo, hi - lo);
}

bool is_cyclically_reduced(std::string_view w) {
  return is_reduced(w) && (w.size() < 2 || !cancels(w.front(), w.back()));
}

bool cyclic_equal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::string doubled;
  doubled.reserve(2 * a.size());
  doubled.append(a);
  doubled.append(a);
  return doubled.find(b) != std::string::npos;
}

std::string least_rotation(std::string_view w) {
  std::string best(w);
  std::string cur(w);
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

std::string class_canonical(std::string_view w) {
  std::string a = least_rotation(w);
  std::string b = least_rotation(inverse_word(w));
  return std::min(a, b);
}

std::size_t common_prefix(std::string_view a, std::string_view b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

namespace {

void collect(std::string_view haystack, std::string_view needle, std::vector<std::size_t>& out) {
  if (needle.empty() || needle.size() > haystack.size()) return;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    out.push_back(pos);
    pos = haystack.find(needle, pos + 1);
  }
}

}  // namespace

std::vector<std::size_t> find_occurrences(std::string_view haystack, std::string_view needle,
                                          OccurrenceMode mode, Orientation orientation) {
  std::vector<std::size_t> all;
  collect(haystack, needle, all);
  if (orientation == Orientation::either) {
    std::string inv = inverse_word(needle);
    collect(haystack, inv, all);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
  }
  if (mode == OccurrenceMode::overlapping) return all;

  std::vector<std::size_t> chosen;
  std::size_t free_from = 0;
  for (std::size_t p : all) {
    if (p >= free_from) {
      chosen.push_back(p);
      free_from = p + needle.size();
    }
  }
  return chosen;
}

bool cyclic_contains(std::string_view circuit, std::string_view needle) {
  if (circuit.empty()) return needle.empty();
  if (needle.empty()) return true;
  std::size_t need = circuit.size() - 1 + needle.size();
  std::string unrolled;
  unrolled.reserve(need + circuit.size());
  while (unrolled.size() < need) unrolled.append(circuit);
  return unrolled.find(needle) != std::string::npos;
}

}  // namespace ttlab
