#pragma once

#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "ttlab/automorphism.hpp"
#include "ttlab/graph.hpp"
#include "ttlab/graph_map.hpp"

namespace testing {

inline std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TTLAB_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ttlab::GraphPtr graph(const std::string& name) {
  return std::make_shared<const ttlab::MarkedGraph>(ttlab::parse_graph(slurp(name)));
}

inline ttlab::GraphMap map(const std::string& graph_file, const std::string& map_file) {
  return ttlab::parse_map(slurp(map_file), graph(graph_file));
}

inline ttlab::Automorphism aut(const std::string& name) { return ttlab::parse_automorphism(slurp(name)); }

// Repeatedly deletes the leftmost cancelling pair until none remains.
inline std::string naive_reduce(std::string w) {
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (ttlab::cancels(w[i], w[i + 1])) {
        w.erase(i, 2);
        changed = true;
        break;
      }
    }
    if (!changed) return w;
  }
}

inline char random_letter(std::mt19937& rng, int rank) {
  std::uniform_int_distribution<int> d(0, 2 * rank - 1);
  int x = d(rng);
  char c = static_cast<char>('a' + x / 2);
  return x % 2 ? ttlab::inverse_letter(c) : c;
}

inline std::string random_word(std::mt19937& rng, int rank, int len) {
  std::string w;
  for (int i = 0; i < len; ++i) w.push_back(random_letter(rng, rank));
  return w;
}

inline std::string random_reduced(std::mt19937& rng, int rank, int len) {
  std::string w;
  while (static_cast<int>(w.size()) < len) {
    char c = random_letter(rng, rank);
    if (!w.empty() && ttlab::cancels(w.back(), c)) continue;
    w.push_back(c);
  }
  return w;
}

// Random reduced edge path in an arbitrary graph starting at vertex v.
inline std::string random_reduced_path(std::mt19937& rng, const ttlab::MarkedGraph& g, int v, int len) {
  std::string w;
  for (int i = 0; i < len; ++i) {
    auto dirs = g.directions_at(v);
    if (!w.empty()) {
      char back = ttlab::inverse_letter(w.back());
      dirs.erase(std::remove(dirs.begin(), dirs.end(), back), dirs.end());
    }
    if (dirs.empty()) break;
    std::uniform_int_distribution<std::size_t> d(0, dirs.size() - 1);
    char c = dirs[d(rng)];
    w.push_back(c);
    v = g.terminus(c);
  }
  return w;
}

}  // namespace testing
