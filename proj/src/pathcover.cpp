#include "blobshift/pathcover.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "blobshift/error.hpp"
#include "blobshift/limits.hpp"

namespace blobshift::cover {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
}

} // namespace

SupportGraph support_graph(std::span<const Cell> cells, std::int64_t r) {
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  SupportGraph g;
  g.r = r;
  g.nodes.assign(cells.begin(), cells.end());
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  g.adjacency.resize(g.nodes.size());

  const std::int64_t side = std::max<std::int64_t>(r, 1);
  auto bucket_of = [&](Cell c) { return Cell{floor_div(c.x, side), floor_div(c.y, side)}; };
  std::unordered_map<Cell, std::vector<std::uint32_t>, CellHash> buckets;
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i)
    buckets[bucket_of(g.nodes[i])].push_back(i);
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
    Cell b = bucket_of(g.nodes[i]);
    auto &adj = g.adjacency[i];
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({b.x + dx, b.y + dy});
        if (it == buckets.end())
          continue;
        for (auto j : it->second)
          if (j != i && l1_distance(g.nodes[i], g.nodes[j]) <= r)
            adj.push_back(j);
      }
    std::sort(adj.begin(), adj.end());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Geodesics

namespace {

struct Eccentricity {
  std::int64_t distance = -1;
  std::uint32_t target = 0;
};

// Farthest node from `source`, least index among ties.
Eccentricity bfs_farthest(const SupportGraph &g, std::uint32_t source,
                          std::vector<std::int64_t> &dist, std::vector<std::uint32_t> &queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  Eccentricity best{0, source};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto u = queue[head];
    if (dist[u] > best.distance || (dist[u] == best.distance && u < best.target))
      best = {dist[u], u};
    for (auto v : g.adjacency[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return best;
}

CellPath shortest_path(const SupportGraph &g, std::uint32_t source, std::uint32_t target) {
  std::vector<std::int64_t> parent(g.nodes.size(), -1);
  std::deque<std::uint32_t> queue{source};
  parent[source] = source;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    if (u == target)
      break;
    for (auto v : g.adjacency[u])
      if (parent[v] < 0) {
        parent[v] = u;
        queue.push_back(v);
      }
  }
  CellPath path;
  path.r = g.r;
  for (auto at = target;; at = static_cast<std::uint32_t>(parent[at])) {
    path.cells.push_back(g.nodes[at]);
    if (at == source)
      break;
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

SupportGraph largest_component_graph(const Pattern &p, std::int64_t r) {
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  auto support = p.support();
  if (support.empty())
    throw Error(Errc::EmptySupport, "pattern has no nonzero cell");
  auto comps = connected_components(support, r, p.dim());
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].size() > comps[best].size())
      best = i;
  return support_graph(comps[best], r);
}

Geodesic finish(const SupportGraph &g, const std::vector<Eccentricity> &ecc) {
  std::uint32_t source = 0;
  for (std::uint32_t i = 1; i < ecc.size(); ++i)
    if (ecc[i].distance > ecc[source].distance)
      source = i;
  Geodesic out;
  out.component_size = g.nodes.size();
  out.path = shortest_path(g, source, ecc[source].target);
  return out;
}

} // namespace

Geodesic geodesic_witness(const Pattern &p, std::int64_t r) {
  auto g = largest_component_graph(p, r);
  const auto n = static_cast<std::int64_t>(g.nodes.size());
  std::vector<Eccentricity> ecc(g.nodes.size());
#pragma omp parallel
  {
    std::vector<std::int64_t> dist(g.nodes.size());
    std::vector<std::uint32_t> queue;
    queue.reserve(g.nodes.size());
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < n; ++s)
      ecc[static_cast<std::size_t>(s)] = bfs_farthest(g, static_cast<std::uint32_t>(s), dist, queue);
  }
  return finish(g, ecc);
}

Geodesic serial::geodesic_witness(const Pattern &p, std::int64_t r) {
  auto g = largest_component_graph(p, r);
  std::vector<Eccentricity> ecc(g.nodes.size());
  std::vector<std::int64_t> dist(g.nodes.size());
  std::vector<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < g.nodes.size(); ++s)
    ecc[s] = bfs_farthest(g, s, dist, queue);
  return finish(g, ecc);
}

// ---------------------------------------------------------------------------
// Ascending paths

namespace {

struct AscendSearch {
  const SupportGraph &g;
  std::int64_t m;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::vector<char> on_path;
  std::vector<std::uint32_t> path;
  std::vector<std::uint32_t> best;

  bool window_ok() const {
    const auto len = static_cast<std::int64_t>(path.size());
    if (len <= m)
      return true;
    return g.nodes[path[static_cast<std::size_t>(len - 1)]].y >
           g.nodes[path[static_cast<std::size_t>(len - 1 - m)]].y;
  }

  // Returns true once a path through every node has been found.
  bool dfs(std::uint32_t u) {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    if (path.size() > best.size())
      best = path;
    if (best.size() == g.nodes.size())
      return true;
    for (auto v : g.adjacency[u]) {
      if (on_path[v])
        continue;
      path.push_back(v);
      on_path[v] = 1;
      bool done = window_ok() && dfs(v);
      on_path[v] = 0;
      path.pop_back();
      if (done || out_of_budget)
        return done;
    }
    return false;
  }
};

} // namespace

AscendResult find_ascending_path(const Pattern &p, std::int64_t r, std::int64_t m,
                                 std::uint64_t budget) {
  if (m < 1)
    throw Error(Errc::InvalidArgument, "window length m must be at least 1");
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  auto g = support_graph(p.support(), r);
  AscendSearch s{g, m, budget, 0, false, std::vector<char>(g.nodes.size(), 0), {}, {}};
  for (std::uint32_t start = 0; start < g.nodes.size(); ++start) {
    s.path = {start};
    s.on_path[start] = 1;
    bool done = s.dfs(start);
    s.on_path[start] = 0;
    if (done || s.out_of_budget)
      break;
  }
  AscendResult out;
  out.nodes_visited = std::min(s.nodes, budget);
  out.exhausted = !s.out_of_budget;
  if (static_cast<std::int64_t>(s.best.size()) >= 2 * m) {
    CellPath path;
    path.r = r;
    for (auto i : s.best)
      path.cells.push_back(g.nodes[i]);
    out.path = std::move(path);
  }
  return out;
}

bool road_check(const Pattern &p, const CellPath &path, std::int64_t bound) {
  if (bound < 0)
    throw Error(Errc::InvalidArgument, "bound must be nonnegative");
  for (Cell c : path.cells)
    if (p.at(c).value_or(kZero) == kZero)
      throw Error(Errc::InvalidArgument, "path leaves the support");
  auto support = p.support();
  if (path.cells.empty())
    return support.empty();

  const std::int64_t side = std::max<std::int64_t>(bound, 1);
  auto bucket_of = [&](Cell c) { return Cell{floor_div(c.x, side), floor_div(c.y, side)}; };
  std::unordered_map<Cell, std::vector<Cell>, CellHash> buckets;
  for (Cell c : path.cells)
    buckets[bucket_of(c)].push_back(c);
  for (Cell c : support) {
    Cell b = bucket_of(c);
    bool near = false;
    for (std::int64_t dx = -1; dx <= 1 && !near; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && !near; ++dy) {
        auto it = buckets.find({b.x + dx, b.y + dy});
        if (it == buckets.end())
          continue;
        for (Cell q : it->second)
          if (l1_distance(c, q) <= bound) {
            near = true;
            break;
          }
      }
    if (!near)
      return false;
  }
  return true;
}

Pattern trace_guided_path(std::span<const std::int64_t> vertical_steps,
                          std::span<const std::int64_t> offsets, std::int64_t length) {
  if (length < 0)
    throw Error(Errc::InvalidArgument, "length must be nonnegative");
  const auto len = static_cast<std::size_t>(length);
  if (vertical_steps.size() < len || offsets.size() < len)
    throw Error(Errc::InvalidArgument, "step and offset sequences are shorter than length");
  check_cells(len + 1, "guided path");
  std::int64_t n = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (vertical_steps[i] < 1)
      throw Error(Errc::InvalidArgument, "vertical steps must be positive");
    n = std::max({n, vertical_steps[i], offsets[i] < 0 ? -offsets[i] : offsets[i]});
  }
  std::vector<Cell> cells{{0, 0}};
  Cell at{0, 0};
  for (std::size_t i = 0; i < len; ++i) {
    at = {checked_add(at.x, offsets[i]), checked_add(at.y, vertical_steps[i])};
    check_coord(at.x, "guided path");
    check_coord(at.y, "guided path");
    cells.push_back(at);
  }
  Pattern out(2, Alphabet("01"), bounding_box(cells, 2));
  for (Cell c : cells)
    out.set(c, 1);
  return out;
}

std::vector<std::int64_t> mechanical_word(std::int64_t p, std::int64_t q, std::int64_t length,
                                          std::int64_t c) {
  if (q <= 0)
    throw Error(Errc::InvalidArgument, "denominator must be positive");
  if (length < 0)
    throw Error(Errc::InvalidArgument, "length must be nonnegative");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(length));
  auto level = [&](std::int64_t i) { return floor_div(checked_add(checked_mul(i, p), c), q); };
  for (std::int64_t i = 0; i < length; ++i)
    out.push_back(level(i + 1) - level(i));
  return out;
}

std::pair<std::int64_t, std::int64_t> golden_conjugate_convergent(int k) {
  if (k < 1 || k > 90)
    throw Error(Errc::InvalidArgument, "convergent index must lie in [1, 90]");
  std::int64_t a = 1, b = 1; // F_1, F_2
  for (int i = 1; i < k; ++i) {
    std::int64_t next = a + b;
    a = b;
    b = next;
  }
  return {a, b};
}

std::vector<std::int64_t> height_path(const CellPath &path) {
  std::vector<std::int64_t> out;
  out.reserve(path.cells.size());
  for (Cell c : path.cells)
    out.push_back(c.y);
  return out;
}

} // namespace blobshift::cover
