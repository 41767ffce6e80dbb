#include "ttlab/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ttlab/error.hpp"

namespace ttlab {

namespace {

std::string substitute(const std::vector<std::string>& images, std::string_view word) {
  std::string stack;
  auto push = [&](char x) {
    if (!stack.empty() && cancels(stack.back(), x)) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  };
  for (char c : word) {
    const std::string& img = images[base_letter(c) - 'a'];
    if (is_positive(c)) {
      for (char x : img) push(x);
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) push(inverse_letter(*it));
    }
  }
  return stack;
}

void check_word(const std::string& w, int rank) {
  for (char c : w) {
    if (!is_letter(c) || base_letter(c) - 'a' >= rank) {
      throw InvalidMap("'" + w + "' is not a word in the first " + std::to_string(rank) + " generators");
    }
  }
}

bool fixes_generators(const std::vector<std::string>& images, const std::vector<std::string>& inv) {
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::string x(1, static_cast<char>('a' + i));
    if (substitute(images, inv[i]) != x) return false;
  }
  return true;
}

}  // namespace

Automorphism::Automorphism(std::string name, int rank, std::vector<std::string> images,
                           std::optional<std::vector<std::string>> inverse_images)
    : name_(std::move(name)), rank_(rank), images_(std::move(images)), inverse_(std::move(inverse_images)) {
  if (rank_ < 1 || rank_ > 26) throw InvalidMap("rank must be in [1, 26]");
  if (static_cast<int>(images_.size()) != rank_) throw InvalidMap("automorphism needs one image per generator");
  for (auto& w : images_) {
    check_word(w, rank_);
    w = free_reduce(w);
    if (w.empty()) throw InvalidMap("a generator maps to the identity in '" + name_ + "'");
  }
  if (inverse_) {
    if (static_cast<int>(inverse_->size()) != rank_) throw InvalidMap("inverse needs one image per generator");
    for (auto& w : *inverse_) {
      check_word(w, rank_);
      w = free_reduce(w);
    }
    if (!fixes_generators(images_, *inverse_) || !fixes_generators(*inverse_, images_)) {
      throw InvalidMap("supplied inverse of '" + name_ + "' does not compose to the identity");
    }
  }
}

Automorphism Automorphism::identity(int rank) {
  std::vector<std::string> imgs;
  for (int i = 0; i < rank; ++i) imgs.emplace_back(1, static_cast<char>('a' + i));
  return Automorphism("id", rank, imgs, imgs);
}

std::string Automorphism::image(char letter) const {
  int i = base_letter(letter) - 'a';
  if (!is_letter(letter) || i >= rank_) throw InvalidPath(std::string("letter '") + letter + "' out of range");
  return is_positive(letter) ? images_[i] : inverse_word(images_[i]);
}

std::string Automorphism::apply(std::string_view word) const {
  for (char c : word) {
    if (!is_letter(c) || base_letter(c) - 'a' >= rank_) {
      throw InvalidPath("word '" + std::string(word) + "' uses letters outside the rank");
    }
  }
  return substitute(images_, word);
}

GraphMap Automorphism::as_graph_map() const {
  auto rose = std::make_shared<const MarkedGraph>(MarkedGraph::rose(rank_));
  return GraphMap(name_, rose, rose, images_);
}

Automorphism Automorphism::inverse() const {
  if (!inverse_) throw InvalidMap("no inverse known for '" + name_ + "'");
  return Automorphism(name_ + "^-1", rank_, *inverse_, images_);
}

Automorphism Automorphism::renamed(std::string name) const {
  Automorphism out = *this;
  out.name_ = std::move(name);
  return out;
}

Automorphism parse_automorphism(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  std::string name;
  int rank = -1;
  std::vector<std::optional<std::string>> img;
  std::vector<std::optional<std::string>> inv;
  bool any_inverse = false;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (rank < 0) {
      if (tok.size() != 4 || tok[0] != "aut" || tok[2] != "rank") {
        throw ParseError("expected 'aut <name> rank <r>'", no, 1);
      }
      name = tok[1];
      try {
        rank = std::stoi(tok[3]);
      } catch (const std::exception&) {
        throw ParseError("rank must be an integer", no, static_cast<int>(line.find(tok[3])) + 1);
      }
      if (rank < 1 || rank > 26) throw ParseError("rank must be in [1, 26]", no, 1);
      img.assign(rank, std::nullopt);
      inv.assign(rank, std::nullopt);
      continue;
    }
    bool is_inv = tok[0] == "inverse";
    std::size_t o = is_inv ? 1 : 0;
    if (tok.size() != o + 3 || tok[o + 1] != "->" || tok[o].size() != 1) {
      throw ParseError("expected '<generator> -> <word>'", no, 1);
    }
    char g = tok[o][0];
    if (!is_positive(g) || g - 'a' >= rank) throw ParseError("unknown generator '" + tok[o] + "'", no, 1);
    auto& slot = is_inv ? inv[g - 'a'] : img[g - 'a'];
    if (slot) throw ParseError("generator '" + tok[o] + "' given twice", no, 1);
    slot = tok[o + 2] == "1" ? std::string() : tok[o + 2];
    any_inverse |= is_inv;
  }
  if (rank < 0) throw ParseError("empty automorphism file", 1, 1);
  std::vector<std::string> images;
  std::vector<std::string> inverse;
  for (int i = 0; i < rank; ++i) {
    if (!img[i]) throw InvalidMap(std::string("no image for generator '") + static_cast<char>('a' + i) + "'");
    images.push_back(*img[i]);
    if (any_inverse) {
      if (!inv[i]) throw InvalidMap("inverse lines must cover every generator");
      inverse.push_back(*inv[i]);
    }
  }
  if (any_inverse) return Automorphism(name, rank, images, inverse);
  return Automorphism(name, rank, images);
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  if (a.rank() != b.rank()) throw DomainMismatch("composing automorphisms of different rank");
  std::vector<std::string> imgs;
  for (const auto& w : b.images()) imgs.push_back(a.apply(w));
  std::optional<std::vector<std::string>> inv;
  if (a.inverse_images() && b.inverse_images()) {
    inv.emplace();
    for (const auto& w : *a.inverse_images()) inv->push_back(substitute(*b.inverse_images(), w));
  }
  return Automorphism(a.name() + "." + b.name(), a.rank(), std::move(imgs), std::move(inv));
}

Automorphism power(const Automorphism& a, int k) {
  Automorphism base = k < 0 ? a.inverse() : a;
  int n = k < 0 ? -k : k;
  Automorphism acc = Automorphism::identity(a.rank());
  while (n > 0) {
    if (n & 1) acc = compose(base, acc);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return acc.renamed(a.name() + "^" + std::to_string(k));
}

std::vector<std::vector<long long>> abelianization(const Automorphism& a) {
  int r = a.rank();
  std::vector<std::vector<long long>> m(r, std::vector<long long>(r, 0));
  for (int j = 0; j < r; ++j) {
    for (char c : a.images()[j]) m[base_letter(c) - 'a'][j] += is_positive(c) ? 1 : -1;
  }
  return m;
}

long long determinant(std::vector<std::vector<long long>> m) {
  // Bareiss fraction-free elimination.
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  long long sign = 1;
  long long prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i) {
        if (m[i][k] != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(m[i][j]) * m[k][k] - static_cast<__int128>(m[i][k]) * m[k][j];
        m[i][j] = static_cast<long long>(v / prev);
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

InvertibilityReport check_invertible(const Automorphism& a, int max_steps) {
  InvertibilityReport rep;
  if (a.inverse_images()) {
    rep.verdict = Invertibility::invertible;
    rep.inverse = a.inverse_images();
    rep.reason = "inverse supplied";
    return rep;
  }
  long long det = determinant(abelianization(a));
  if (det != 1 && det != -1) {
    rep.verdict = Invertibility::not_invertible;
    rep.reason = "abelianization determinant is " + std::to_string(det);
    return rep;
  }

  // Nielsen length reduction on the image tuple, tracking for each entry the
  // word e_i with a(e_i) = w_i.
  int r = a.rank();
  std::vector<std::string> w = a.images();
  std::vector<std::string> e;
  for (int i = 0; i < r; ++i) e.emplace_back(1, static_cast<char>('a' + i));
  auto total = [](const std::vector<std::string>& v) {
    std::size_t t = 0;
    for (const auto& s : v) t += s.size();
    return t;
  };

  for (int step = 0; step < max_steps; ++step) {
    bool improved = false;
    std::size_t best = total(w);
    int bi = -1;
    int bj = -1;
    int bmode = 0;
    for (int i = 0; i < r && !improved; ++i) {
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        const std::string inv_j = inverse_word(w[j]);
        const std::string cand[4] = {free_reduce(w[i] + w[j]), free_reduce(w[i] + inv_j), free_reduce(w[j] + w[i]),
                                     free_reduce(inv_j + w[i])};
        for (int m = 0; m < 4; ++m) {
          std::size_t t = total(w) - w[i].size() + cand[m].size();
          if (t < best) {
            best = t;
            bi = i;
            bj = j;
            bmode = m;
          }
        }
      }
    }
    if (bi >= 0) {
      improved = true;
      const std::string ej = bmode == 1 || bmode == 3 ? inverse_word(e[bj]) : e[bj];
      const std::string wj = bmode == 1 || bmode == 3 ? inverse_word(w[bj]) : w[bj];
      if (bmode < 2) {
        w[bi] = free_reduce(w[bi] + wj);
        e[bi] = free_reduce(e[bi] + ej);
      } else {
        w[bi] = free_reduce(wj + w[bi]);
        e[bi] = free_reduce(ej + e[bi]);
      }
    }
    if (!improved) break;
  }

  std::vector<std::string> inv(r);
  std::vector<bool> hit(r, false);
  for (int i = 0; i < r; ++i) {
    if (w[i].size() != 1) {
      rep.reason = "Nielsen reduction stalled at total length " + std::to_string(total(w));
      return rep;
    }
    int g = base_letter(w[i][0]) - 'a';
    if (hit[g]) {
      rep.reason = "Nielsen reduction produced a repeated generator";
      return rep;
    }
    hit[g] = true;
    inv[g] = is_positive(w[i][0]) ? e[i] : inverse_word(e[i]);
  }
  if (!fixes_generators(a.images(), inv) || !fixes_generators(inv, a.images())) {
    rep.reason = "candidate inverse failed verification";
    return rep;
  }
  rep.verdict = Invertibility::invertible;
  rep.inverse = inv;
  rep.reason = "Nielsen reduction";
  return rep;
}

Automorphism with_inverse(const Automorphism& a) {
  if (a.inverse_images()) return a;
  auto rep = check_invertible(a);
  if (!rep.inverse) throw InvalidMap("'" + a.name() + "' has no inverse found: " + rep.reason);
  return Automorphism(a.name(), a.rank(), a.images(), rep.inverse);
}

std::optional<std::string> is_inner(const Automorphism& a) {
  const std::string& w1 = a.images()[0];
  // a(x1) = c x1 c^-1 reduced forces w1 = u x1 u^-1 with u the maximal
  // conjugating prefix; then c = u x1^k for some integer k.
  std::size_t n = w1.size();
  if (n % 2 == 0) return std::nullopt;
  std::size_t h = n / 2;
  if (w1[h] != 'a') return std::nullopt;
  for (std::size_t i = 0; i < h; ++i) {
    if (w1[n - 1 - i] != inverse_letter(w1[i])) return std::nullopt;
  }
  std::string u = w1.substr(0, h);
  auto conj_ok = [&](const std::string& c) {
    for (int i = 0; i < a.rank(); ++i) {
      std::string x(1, static_cast<char>('a' + i));
      if (free_reduce(c + x + inverse_word(c)) != a.images()[i]) return false;
    }
    return true;
  };
  if (a.rank() == 1) return conj_ok(u) ? std::optional<std::string>(u) : std::nullopt;

  std::string z = free_reduce(inverse_word(u) + a.images()[1] + u);
  std::size_t k = 0;
  char lead = z.empty() ? 0 : z[0];
  if (lead != 'a' && lead != 'A') {
    if (conj_ok(u)) return free_reduce(u);
    return std::nullopt;
  }
  while (k < z.size() && z[k] == lead) ++k;
  std::string c = free_reduce(u + std::string(k, lead));
  if (conj_ok(c)) return c;
  return std::nullopt;
}

}  // namespace ttlab
