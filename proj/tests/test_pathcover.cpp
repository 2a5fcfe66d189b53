#include <doctest.h>

#include <cmath>
#include <deque>

#include "blobshift/error.hpp"
#include "blobshift/pathcover.hpp"
#include "blobshift/substitution.hpp"
#include "support.hpp"

using namespace blobshift;
using namespace blobshift::cover;
using namespace testing_support;

namespace {

Pattern from_cells(const std::vector<Cell> &cells, std::int64_t margin = 0) {
  Pattern p(2, Alphabet("01"), bounding_box(cells, 2));
  for (Cell c : cells)
    p.set(c, 1);
  return p.with_margin(margin);
}

// BFS distances over the r-graph of `cells`, quadratic neighbour scan.
std::map<Cell, std::int64_t> naive_bfs(const std::vector<Cell> &cells, Cell source, std::int64_t r) {
  std::map<Cell, std::int64_t> dist{{source, 0}};
  std::deque<Cell> queue{source};
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    for (Cell d : cells)
      if (!dist.count(d) && l1_distance(c, d) <= r) {
        dist[d] = dist[c] + 1;
        queue.push_back(d);
      }
  }
  return dist;
}

void check_path_shape(const Pattern &p, const CellPath &path) {
  std::set<Cell> seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    CHECK(p.at(path.cells[i]).value_or(0) != 0);
    CHECK(seen.insert(path.cells[i]).second);
    if (i > 0)
      CHECK(l1_distance(path.cells[i - 1], path.cells[i]) <= path.r);
  }
}

Pattern plus_level(int n) {
  auto s = subst::plus_substitution();
  Pattern seed(2, s.alphabet(), Box{{0, 0}, 1, 1}, 1);
  return subst::iterate_2d(s, seed, n);
}

Pattern staircase(int k, std::int64_t steps) {
  auto [p, q] = golden_conjugate_convergent(k);
  Cell at{0, 0};
  std::vector<Cell> cells{at};
  for (auto up : mechanical_word(q - p, q, steps)) {
    at = at + (up ? Cell{0, 1} : Cell{1, 0});
    cells.push_back(at);
  }
  return from_cells(cells);
}

} // namespace

TEST_SUITE("support graph") {
  TEST_CASE("edges join cells within r") {
    std::vector<Cell> cells{{0, 0}, {1, 0}, {3, 0}, {3, 2}};
    auto g = support_graph(cells, 2);
    CHECK(g.nodes == cells);
    CHECK(g.adjacency[0] == std::vector<std::uint32_t>{1});
    CHECK(g.adjacency[1] == std::vector<std::uint32_t>{0, 2});
    CHECK(g.adjacency[2] == std::vector<std::uint32_t>{1, 3});
  }

  TEST_CASE("agrees with pairwise distances") {
    for (int trial = 0; trial < 50; ++trial) {
      auto p = random_pattern(2, 12, 12, 0.3);
      auto r = uniform(1, 3);
      auto g = support_graph(p.support(), r);
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          bool edge = i != j && l1_distance(g.nodes[i], g.nodes[j]) <= r;
          bool listed = std::binary_search(g.adjacency[i].begin(), g.adjacency[i].end(),
                                           static_cast<std::uint32_t>(j));
          CHECK(edge == listed);
        }
    }
  }
}

TEST_SUITE("geodesic witness") {
  TEST_CASE("single cell") {
    auto g = geodesic_witness(from_cells({{4, 4}}), 1);
    CHECK(g.path.size() == 1);
    CHECK(g.component_size == 1);
  }

  TEST_CASE("spaced diagonal at radius 2") {
    std::vector<Cell> diag;
    for (std::int64_t i = 0; i < 20; ++i)
      diag.push_back({i, i});
    auto g = geodesic_witness(from_cells(diag), 2);
    CHECK(g.path.size() == 20);
    CHECK(g.path.cells.front() == Cell{0, 0});
    CHECK(g.path.cells.back() == Cell{19, 19});
  }

  TEST_CASE("plus fractal levels grow by a factor of three") {
    std::vector<std::size_t> lengths;
    for (int n = 1; n <= 5; ++n)
      lengths.push_back(geodesic_witness(plus_level(n), 1).path.size());
    CHECK(lengths == std::vector<std::size_t>{3, 9, 27, 81, 243});
  }

  TEST_CASE("endpoints realize the diameter of the largest component") {
    for (int trial = 0; trial < 60; ++trial) {
      auto p = random_pattern(2, 9, 9, 0.45);
      auto r = uniform(1, 2);
      auto g = geodesic_witness(p, r);
      auto support = p.support();
      if (support.empty()) {
        CHECK(g.path.size() == 0);
        continue;
      }
      auto comps = naive_components(support, r);
      std::size_t best = 0;
      for (const auto &c : comps)
        best = std::max(best, c.size());
      CHECK(g.component_size == best);
      CHECK(g.path.size() <= g.component_size);
      check_path_shape(p, g.path);

      const std::vector<Cell> *comp = nullptr;
      for (const auto &c : comps)
        if (std::find(c.begin(), c.end(), g.path.cells.front()) != c.end())
          comp = &c;
      REQUIRE(comp);
      CHECK(comp->size() == best);
      std::int64_t diameter = 0;
      for (Cell s : *comp)
        for (auto [cell, d] : naive_bfs(*comp, s, r))
          diameter = std::max(diameter, d);
      CHECK(static_cast<std::int64_t>(g.path.size()) == diameter + 1);
      CHECK(naive_bfs(*comp, g.path.cells.front(), r)[g.path.cells.back()] == diameter);
    }
  }

  TEST_CASE("parallel and serial witnesses agree") {
    for (int trial = 0; trial < 30; ++trial) {
      auto p = random_pattern(2, 16, 16, 0.5);
      auto a = geodesic_witness(p, 1);
      auto b = serial::geodesic_witness(p, 1);
      CHECK(a.path == b.path);
      CHECK(a.component_size == b.component_size);
    }
  }
}

TEST_SUITE("ascending paths") {
  TEST_CASE("column and row") {
    std::vector<Cell> column, row;
    for (std::int64_t i = 0; i < 12; ++i) {
      column.push_back({0, i});
      row.push_back({i, 0});
    }
    auto up = find_ascending_path(from_cells(column), 1, 1);
    REQUIRE(up.path);
    CHECK(up.path->cells == column);
    CHECK_FALSE(find_ascending_path(from_cells(row), 1, 1).path.has_value());
  }

  TEST_CASE("Sturmian staircase is covered by one path") {
    auto p = staircase(20, 199);
    CHECK(p.support_size() == 200);
    auto result = find_ascending_path(p, 1, 3);
    REQUIRE(result.path);
    CHECK(result.path->size() == 200);
    check_path_shape(p, *result.path);
    auto h = height_path(*result.path);
    for (std::size_t s = 0; s + 3 < h.size(); ++s)
      CHECK(h[s + 3] > h[s]);
  }

  TEST_CASE("every reported path replays") {
    for (int trial = 0; trial < 60; ++trial) {
      auto p = random_pattern(2, 6, 10, 0.5);
      auto m = uniform(1, 3);
      auto result = find_ascending_path(p, 1, m, 20000);
      if (!result.path)
        continue;
      CHECK(static_cast<std::int64_t>(result.path->size()) >= 2 * m);
      check_path_shape(p, *result.path);
      auto h = height_path(*result.path);
      for (std::size_t s = 0; s + static_cast<std::size_t>(m) < h.size(); ++s)
        CHECK(h[s + static_cast<std::size_t>(m)] > h[s]);
    }
  }

  TEST_CASE("budget bounds the search") {
    auto p = random_pattern(2, 12, 12, 0.7);
    auto result = find_ascending_path(p, 1, 2, 50);
    CHECK(result.nodes_visited <= 51);
    CHECK_FALSE(result.exhausted);
  }
}

TEST_SUITE("roads") {
  TEST_CASE("distance bounds") {
    std::vector<Cell> column;
    for (std::int64_t i = 0; i < 10; ++i)
      column.push_back({0, i});
    CellPath path{column, 1, true};
    CHECK(road_check(from_cells(column), path, 0));
    auto outlier = column;
    outlier.push_back({10, 0});
    CHECK_FALSE(road_check(from_cells(outlier), path, 5));
  }

  TEST_CASE("decorated staircase") {
    auto stairs = staircase(12, 60);
    auto result = find_ascending_path(stairs, 1, 3);
    REQUIRE(result.path);
    auto cells = stairs.support();
    std::vector<Cell> decorated = cells;
    for (std::size_t i = 0; i < cells.size(); i += 5)
      decorated.push_back(cells[i] + Cell{uniform(-1, 1), uniform(-1, 1)});
    std::sort(decorated.begin(), decorated.end());
    decorated.erase(std::unique(decorated.begin(), decorated.end()), decorated.end());
    CHECK(road_check(from_cells(decorated), *result.path, 2));
  }
}

TEST_SUITE("guided paths") {
  TEST_CASE("straight column") {
    std::vector<std::int64_t> steps(8, 1), offsets(8, 0);
    auto p = trace_guided_path(steps, offsets, 8);
    std::vector<Cell> column;
    for (std::int64_t i = 0; i <= 8; ++i)
      column.push_back({0, i});
    CHECK(p.support() == column);
  }

  TEST_CASE("Sturmian offsets stay near the line") {
    auto [p, q] = golden_conjugate_convergent(18);
    const std::int64_t n = 500;
    auto offsets = mechanical_word(p, q, n);
    std::vector<std::int64_t> steps(static_cast<std::size_t>(n), 1);
    auto trace = trace_guided_path(steps, offsets, n);
    const double alpha = (std::sqrt(5.0) - 1) / 2;
    for (Cell c : trace.support()) {
      double deviation = std::abs(static_cast<double>(c.x) - alpha * static_cast<double>(c.y));
      CHECK(deviation <= 2.0);
    }
  }

  TEST_CASE("zigzag has width one") {
    std::vector<std::int64_t> steps(40, 1), offsets;
    for (int i = 0; i < 40; ++i)
      offsets.push_back(i % 2 == 0 ? 1 : -1);
    auto trace = trace_guided_path(steps, offsets, 40);
    auto rows = rows_of(trace);
    CHECK(essential_width_lower_bound(rows, 1) == 1);
    CHECK(sparsity(rows) == 1);
  }

  TEST_CASE("row sparsity is at most the step count") {
    for (int trial = 0; trial < 50; ++trial) {
      auto n = uniform(1, 30);
      std::vector<std::int64_t> steps, offsets;
      for (std::int64_t i = 0; i < n; ++i) {
        steps.push_back(uniform(1, 2));
        offsets.push_back(uniform(-2, 2));
      }
      auto trace = trace_guided_path(steps, offsets, n);
      CHECK(sparsity(rows_of(trace)) <= n + 1);
    }
  }

  TEST_CASE("mechanical words match the floor formula") {
    for (int trial = 0; trial < 100; ++trial) {
      auto q = uniform(1, 50);
      auto p = uniform(0, q);
      auto c = uniform(0, q - 1);
      auto w = mechanical_word(p, q, 40, c);
      for (std::int64_t i = 0; i < 40; ++i)
        CHECK(w[static_cast<std::size_t>(i)] == ((i + 1) * p + c) / q - (i * p + c) / q);
    }
  }

  TEST_CASE("golden convergents are consecutive Fibonacci numbers") {
    CHECK(golden_conjugate_convergent(1) == std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(golden_conjugate_convergent(5) == std::pair<std::int64_t, std::int64_t>{5, 8});
    CHECK(golden_conjugate_convergent(20) == std::pair<std::int64_t, std::int64_t>{6765, 10946});
  }
}
