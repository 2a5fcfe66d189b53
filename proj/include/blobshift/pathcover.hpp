#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "blobshift/pattern.hpp"

namespace blobshift::cover {

// Support cells joined when their L1 distance is at most r. Nodes are
// sorted; adjacency lists are sorted by node index.
struct SupportGraph {
  std::vector<Cell> nodes;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::int64_t r = 1;
};

SupportGraph support_graph(std::span<const Cell> cells, std::int64_t r);

struct CellPath {
  std::vector<Cell> cells;
  std::int64_t r = 1;
  bool acyclic = true;

  std::size_t size() const { return cells.size(); }
  bool operator==(const CellPath &) const = default;
};

struct Geodesic {
  CellPath path;                  // diameter + 1 cells
  std::size_t component_size = 0; // nodes of the largest r-component
};

// Shortest r-path between a diametral pair of the largest r-component
// (ties: the component with the least cell). The pair is the lexicographically
// first (source, target) realizing the diameter.
Geodesic geodesic_witness(const Pattern &p, std::int64_t r);

namespace serial {
Geodesic geodesic_witness(const Pattern &p, std::int64_t r);
}

struct AscendResult {
  std::optional<CellPath> path;
  std::uint64_t nodes_visited = 0;
  bool exhausted = false; // false when the node budget ran out first
};

// Depth-first search for a longest simple r-path through the support whose
// every window of m moves gains height. Neighbours are tried in cell order,
// starts in cell order; the search stops once a path covers the support.
// Paths with fewer than 2m cells are not reported.
AscendResult find_ascending_path(const Pattern &p, std::int64_t r, std::int64_t m,
                                 std::uint64_t budget = 1'000'000);

// True when every support cell lies within L1 distance `bound` of the path.
bool road_check(const Pattern &p, const CellPath &path, std::int64_t bound);

// Trace of the walk from the origin that at step i moves by
// (offsets[i], vertical_steps[i]); `length` steps, length + 1 cells.
Pattern trace_guided_path(std::span<const std::int64_t> vertical_steps,
                          std::span<const std::int64_t> offsets, std::int64_t length);

// Mechanical word ⌊((i+1)p + c)/q⌋ - ⌊(ip + c)/q⌋ for i = 0..length-1,
// i.e. slope p/q and intercept c/q.
std::vector<std::int64_t> mechanical_word(std::int64_t p, std::int64_t q, std::int64_t length,
                                          std::int64_t c = 0);

// F_k / F_{k+1}, the k-th convergent of the golden-ratio conjugate.
std::pair<std::int64_t, std::int64_t> golden_conjugate_convergent(int k);

// Heights along a path (the y coordinates).
std::vector<std::int64_t> height_path(const CellPath &path);

} // namespace blobshift::cover
