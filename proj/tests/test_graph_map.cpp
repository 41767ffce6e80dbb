#include <functional>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "ttlab/error.hpp"

using namespace ttlab;

namespace {

// Largest junction cancellation over all reduced g1 g2 with |g1|, |g2| <= len.
int brute_cancellation(const GraphMap& f, int len) {
  const MarkedGraph& g = *f.domain();
  std::vector<std::string> paths;
  std::function<void(std::string, int)> grow = [&](std::string w, int v) {
    if (!w.empty()) paths.push_back(w);
    if (static_cast<int>(w.size()) == len) return;
    for (char d : g.directions_at(v)) {
      if (!w.empty() && cancels(w.back(), d)) continue;
      grow(w + d, g.terminus(d));
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v) grow("", v);
  int best = 0;
  for (const auto& p : paths) {
    for (const auto& q : paths) {
      if (g.terminus(p.back()) != g.origin(q.front()) || cancels(p.back(), q.front())) continue;
      std::string a = sharp_word(f, p);
      std::string b = sharp_word(f, q);
      std::string ab = sharp_word(f, p + q);
      best = std::max(best, static_cast<int>(a.size() + b.size() - ab.size()) / 2);
    }
  }
  return best;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("apply_sharp examples") {
  auto fib = testing::map("rose2.tt", "fib.tt");
  auto g = fib.domain();
  CHECK(apply_sharp(fib, EdgePath(g, "Ab")).word() == "B");
  CHECK(apply_sharp(fib, EdgePath(g, "ab")).word() == "aba");
  auto id = GraphMap::identity(g);
  CHECK(apply_sharp(id, EdgePath(g, "abAB")).word() == "abAB");

  auto r3 = testing::graph("rose3.tt");
  CHECK_THROWS_AS(apply_sharp(fib, EdgePath(r3, "c")), DomainMismatch);
}

TEST_CASE("apply_sharp ignores tightening of its input") {
  auto psi = testing::map("rose3.tt", "psi.tt");
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    std::string w = testing::random_word(rng, 3, 1 + static_cast<int>(rng() % 20));
    CHECK(sharp_word(psi, w) == sharp_word(psi, free_reduce(w)));
  }
}

TEST_CASE("compose examples") {
  auto fib = testing::map("rose2.tt", "fib.tt");
  auto inv = testing::map("rose2.tt", "fib_inv.tt");
  auto id = GraphMap::identity(fib.domain());
  CHECK(compose(id, fib) == fib);
  auto ff = compose(fib, fib);
  CHECK(ff.positive_image(0) == "aba");
  CHECK(ff.positive_image(1) == "ab");
  CHECK(compose(fib, inv) == id);
  CHECK(compose(inv, fib) == id);
  CHECK(power(fib, 0) == id);
  CHECK(power(fib, 3) == compose(fib, ff));
}

TEST_CASE("compose agrees with applying twice") {
  auto psi = testing::map("rose3.tt", "psi.tt");
  auto phi = testing::map("rose3.tt", "phi.tt");
  auto pp = compose(psi, phi);
  std::mt19937 rng(9);
  for (int i = 0; i < 300; ++i) {
    std::string w = testing::random_reduced(rng, 3, 1 + static_cast<int>(rng() % 25));
    CHECK(sharp_word(pp, w) == sharp_word(psi, sharp_word(phi, w)));
  }
}

TEST_CASE("map parsing and validation") {
  auto r2 = testing::graph("rose2.tt");
  CHECK_THROWS_AS(parse_map("map z on R2\na -> 1\nb -> b\n", r2), CollapsedEdge);
  CHECK_THROWS_AS(parse_map("map z on R2\na -> ab\n", r2), InvalidMap);
  CHECK_THROWS_AS(parse_map("map z on R3\na -> a\nb -> b\n", r2), DomainMismatch);
  CHECK_THROWS_AS(parse_map("map z on R2\na -> c\nb -> b\n", r2), InvalidMap);
  CHECK_THROWS_AS(parse_map("map z on R2\na - ab\nb -> b\n", r2), ParseError);

  auto th = testing::graph("theta.tt");
  // swap the two vertices and the edges a and b
  auto swap = parse_map("map s on theta\na -> B\nb -> A\nc -> C\n", th);
  CHECK(swap.vertex_image(0) == 1);
  CHECK(swap.vertex_image(1) == 0);
  CHECK_THROWS_AS(parse_map("map s on theta\na -> aB\nb -> b\nc -> c\n", th), InvalidMap);
  auto explicit_vm = parse_map("map t on theta\nvertex u -> u\nvertex w -> w\na -> a\nb -> b\nc -> c\n", th);
  CHECK(explicit_vm == GraphMap::identity(th));
}

TEST_CASE("bcc examples") {
  auto r2 = testing::graph("rose2.tt");
  CHECK(bcc_bound(GraphMap::identity(r2)) == 0);
  CHECK(bcc_bound(parse_map("map p on R2\na -> b\nb -> a\n", r2)) == 0);
  auto fib = testing::map("rose2.tt", "fib.tt");
  CHECK(bcc_bound(fib) >= 1);
  CHECK(bcc_report(fib).exact);
}

TEST_CASE("bcc is at least the cancellation seen on short paths") {
  for (auto [g, m] : std::vector<std::pair<const char*, const char*>>{
           {"rose2.tt", "fib.tt"}, {"rose3.tt", "psi.tt"}, {"rose3.tt", "phi_inv.tt"}, {"rose3.tt", "tower.tt"}}) {
    auto f = testing::map(g, m);
    CAPTURE(m);
    CHECK(bcc_bound(f) >= brute_cancellation(f, 4));
    auto f2 = power(f, 2);
    CHECK(bcc_bound(f2) >= brute_cancellation(f2, 3));
  }
}

TEST_CASE("bcc soundness on random junctions") {
  std::mt19937 rng(2024);
  for (auto [g, m] : std::vector<std::pair<const char*, const char*>>{
           {"rose2.tt", "fib.tt"}, {"rose3.tt", "psi.tt"}, {"rose3.tt", "phi.tt"}, {"rose3.tt", "reducible.tt"}}) {
    auto f = testing::map(g, m);
    int C = bcc_bound(f);
    CAPTURE(m);
    for (int i = 0; i < 2000; ++i) {
      int len = 2 + static_cast<int>(rng() % 40);
      std::string w = testing::random_reduced_path(rng, *f.domain(), 0, len);
      std::size_t cut = 1 + rng() % (w.size() - 1);
      std::string a = sharp_word(f, w.substr(0, cut));
      std::string b = sharp_word(f, w.substr(cut));
      std::string ab = sharp_word(f, w);
      CHECK(static_cast<int>(a.size() + b.size() - ab.size()) / 2 <= C);
    }
  }
}

TEST_CASE("bcc on a graph with two vertices") {
  auto th = testing::graph("theta.tt");
  auto f = parse_map("map t on theta\na -> aBc\nb -> b\nc -> c\n", th);
  int C = bcc_bound(f);
  CHECK(C >= brute_cancellation(f, 4));
  std::mt19937 rng(1);
  for (int i = 0; i < 500; ++i) {
    std::string w = testing::random_reduced_path(rng, *th, static_cast<int>(rng() % 2), 2 + static_cast<int>(rng() % 30));
    std::size_t cut = 1 + rng() % (w.size() - 1);
    std::string a = sharp_word(f, w.substr(0, cut));
    std::string b = sharp_word(f, w.substr(cut));
    CHECK(static_cast<int>(a.size() + b.size() - sharp_word(f, w).size()) / 2 <= C);
  }
}

TEST_CASE("apply_sharp_sharp") {
  auto fib = testing::map("rose2.tt", "fib.tt");
  auto g = fib.domain();
  CHECK(apply_sharp_sharp(fib, EdgePath(g, "abaab"), 1).word() == "baabab");
  CHECK(apply_sharp_sharp(fib, EdgePath(g, "ab"), 2).empty());
  auto id = GraphMap::identity(g);
  CHECK(apply_sharp_sharp(id, EdgePath(g, "abAB"), 0).word() == "abAB");
}

TEST_CASE("sharp-sharp image survives any reduced extension") {
  std::mt19937 rng(77);
  for (auto [g, m] : std::vector<std::pair<const char*, const char*>>{{"rose2.tt", "fib.tt"}, {"rose3.tt", "psi.tt"}}) {
    auto f = testing::map(g, m);
    int C = bcc_bound(f);
    for (int i = 0; i < 500; ++i) {
      std::string q = testing::random_reduced(rng, f.domain()->edge_count(), 12);
      std::string p = q.substr(4, 4);
      std::string core = sharp_sharp_word(f, p, C);
      CHECK(contains(sharp_word(f, q), core));
    }
  }
}

TEST_CASE("derivative and turns") {
  auto fib = testing::map("rose2.tt", "fib.tt");
  CHECK(derivative(fib, 'a') == 'a');
  CHECK(derivative(fib, 'A') == 'B');
  CHECK(turn_image(fib, {'A', 'b'}) == Turn{'B', 'a'});
  auto id = GraphMap::identity(fib.domain());
  CHECK(derivative(id, 'B') == 'B');
  CHECK(illegal_turns(id).empty());
  // orbits worked by hand: (a,b) -> (a,a); every other turn cycles
  CHECK(illegal_turns(fib) == std::vector<Turn>{{'a', 'b'}});
  auto r2 = fib.domain();
  auto squash = parse_map("map s on R2\na -> ab\nb -> ab\n", r2);
  auto bad = illegal_turns(squash);
  CHECK(std::find(bad.begin(), bad.end(), Turn{'a', 'b'}) != bad.end());
}

// ---------------------------------------------------------------------------

TEST_CASE("automorphism parsing and inverses") {
  auto fib = testing::aut("fib.aut");
  CHECK(fib.rank() == 2);
  CHECK(fib.apply("ab") == "aba");
  CHECK(compose(fib, fib.inverse()) == Automorphism::identity(2));

  Automorphism bare("fib", 2, {"ab", "a"});
  auto rep = check_invertible(bare);
  REQUIRE(rep.verdict == Invertibility::invertible);
  CHECK(*rep.inverse == std::vector<std::string>{"b", "Ba"});

  auto dbl = check_invertible(Automorphism("dbl", 2, {"aa", "b"}));
  CHECK(dbl.verdict == Invertibility::not_invertible);

  CHECK_THROWS_AS(parse_automorphism("aut x rank 2\na -> ab\nb -> a\ninverse a -> a\ninverse b -> b\n"), InvalidMap);
  CHECK_THROWS_AS(parse_automorphism("aut x rank two\n"), ParseError);
}

TEST_CASE("inverse search on random products of elementary automorphisms") {
  std::mt19937 rng(31);
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    Automorphism a = Automorphism::identity(3);
    for (int s = 0; s < 6; ++s) {
      int x = static_cast<int>(rng() % 3);
      int y = (x + 1 + static_cast<int>(rng() % 2)) % 3;
      std::vector<std::string> imgs{"a", "b", "c"};
      std::string gy(1, static_cast<char>('a' + y));
      imgs[x] = std::string(1, static_cast<char>('a' + x)) + (rng() % 2 ? gy : inverse_word(gy));
      a = compose(Automorphism("t", 3, imgs), a);
    }
    Automorphism bare("r", 3, a.images());
    auto rep = check_invertible(bare);
    CHECK(rep.verdict != Invertibility::not_invertible);
    if (rep.inverse) {
      ++found;
      Automorphism both("r", 3, a.images(), rep.inverse);
      CHECK(compose(both, both.inverse()) == Automorphism::identity(3));
    }
  }
  CHECK(found > 40);
}

TEST_CASE("is_inner") {
  Automorphism conj_a("c", 3, {"a", "abA", "acA"});
  CHECK(is_inner(conj_a) == std::optional<std::string>("a"));
  CHECK(is_inner(Automorphism::identity(2)) == std::optional<std::string>(""));
  CHECK(!is_inner(testing::aut("fib.aut")));
  CHECK(!is_inner(testing::aut("psi.aut")));

  std::mt19937 rng(4);
  auto psi = testing::aut("psi.aut");
  for (int i = 0; i < 200; ++i) {
    std::string c = testing::random_reduced(rng, 3, static_cast<int>(rng() % 7));
    std::vector<std::string> imgs;
    for (char x : std::string("abc")) imgs.push_back(free_reduce(c + x + inverse_word(c)));
    Automorphism inner("i", 3, imgs);
    auto got = is_inner(inner);
    REQUIRE(got);
    CHECK(*got == c);
    CHECK(!is_inner(compose(inner, psi)));
    CHECK(!is_inner(compose(psi, inner)));
    auto back = is_inner(compose(inner, compose(psi, psi.inverse())));
    REQUIRE(back);
    CHECK(*back == c);
  }
}
