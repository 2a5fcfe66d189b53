#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "blobshift/pattern.hpp"

namespace testing_support {

using blobshift::Alphabet;
using blobshift::Box;
using blobshift::Cell;
using blobshift::Pattern;
using blobshift::Symbol;

inline std::mt19937_64 &rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng()); }

// Full-domain pattern on [x0, x0+w) × [y0, y0+h) with nonzero density p.
inline Pattern random_pattern(int dim, std::int64_t w, std::int64_t h, double p,
                              const Alphabet &a = Alphabet("01"), Cell lo = {}) {
  Box b{lo, w, dim == 1 ? 1 : h};
  Pattern out(dim, a, b);
  for (std::int64_t y = 0; y < b.height; ++y)
    for (std::int64_t x = 0; x < b.width; ++x)
      if (coin(p))
        out.set({lo.x + x, lo.y + y}, static_cast<Symbol>(uniform(1, a.size() - 1)));
  return out;
}

// Pairwise union-find over all cells; quadratic, used only as an oracle.
inline std::vector<std::vector<Cell>> naive_components(std::vector<Cell> cells, std::int64_t r) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (blobshift::l1_distance(cells[i], cells[j]) <= r)
        parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<Cell>> groups;
  for (std::size_t i = 0; i < cells.size(); ++i)
    groups[find(i)].push_back(cells[i]);
  std::vector<std::vector<Cell>> out;
  for (auto &[_, g] : groups)
    out.push_back(g);
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.front() < b.front(); });
  return out;
}

// Trial division.
inline bool naive_prime(std::int64_t n) {
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Heights of a ±1 move string, by direct accumulation.
inline std::vector<std::int64_t> naive_heights(const std::vector<std::int64_t> &moves) {
  std::vector<std::int64_t> h{0};
  for (auto m : moves)
    h.push_back(h.back() + m);
  return h;
}

inline std::vector<std::int64_t> sign_moves(const std::string &word) {
  std::vector<std::int64_t> out;
  for (char c : word)
    out.push_back(c == '+' ? 1 : -1);
  return out;
}

// Direct string rewriting.
inline std::string naive_iterate(const std::map<char, std::string> &rules, std::string w, int n) {
  for (int i = 0; i < n; ++i) {
    std::string next;
    for (char c : w)
      next += rules.at(c);
    w = next;
  }
  return w;
}

} // namespace testing_support
