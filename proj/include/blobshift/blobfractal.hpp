#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blobshift/pattern.hpp"

namespace blobshift::fractal {

// One distinct blob of a level and where it occurs in the source.
struct LevelBlob {
  Blob blob;
  std::vector<Cell> anchors; // sorted
  std::size_t count() const { return anchors.size(); }
};

struct HierarchyLevel {
  std::int64_t radius = 0;
  std::vector<LevelBlob> blobs;        // complete blobs, by first anchor
  std::vector<Cell> truncated_anchors; // components whose padding leaves the window
};

struct BlobHierarchy {
  Pattern source;
  std::vector<HierarchyLevel> levels;
};

// Radii must be strictly increasing and nonnegative.
BlobHierarchy build_hierarchy(const Pattern &p, const std::vector<std::int64_t> &radii);

struct AxiomCheck {
  bool passed = true;
  std::optional<Cell> counterexample; // in source coordinates
  std::string detail;
};

// Axioms between level i and level i + 1 (0-based `lower`).
struct LevelReport {
  std::size_t lower = 0;
  AxiomCheck glue;     // (a) zero-gluing of translated level-i blobs
  AxiomCheck contains; // (b) a translate of every level-i blob
  AxiomCheck splits;   // (c) at least two disjoint level-i blobs
  bool passed() const { return glue.passed && contains.passed && splits.passed; }
};

struct AxiomReport {
  std::vector<LevelReport> pairs;
  bool passed() const;
  // 1 + the number of consecutive passing pairs from the bottom.
  std::size_t verified_levels() const;
};

AxiomReport verify_axioms(const BlobHierarchy &h);

namespace serial {
AxiomReport verify_axioms(const BlobHierarchy &h);
}

enum class FractalTag { FinitePointCandidate, UnboundedComponent, BlobFractalCandidate };

std::string_view fractal_tag_name(FractalTag t);

struct FractalVerdict {
  FractalTag tag = FractalTag::BlobFractalCandidate;
  std::int64_t radius = 0;         // UnboundedComponent
  std::int64_t witness_length = 0; // UnboundedComponent: cells on the geodesic
  std::size_t verified_levels = 0; // BlobFractalCandidate
  AxiomReport report;
};

// Checked in this order:
//   UnboundedComponent(r, L)  the first radius whose geodesic witness has
//                             L >= component_threshold cells;
//   FinitePointCandidate      the last two levels are each one complete blob
//                             with the same support;
//   BlobFractalCandidate      otherwise, with the verified level count.
FractalVerdict classify(const Pattern &p, const std::vector<std::int64_t> &radii,
                        std::int64_t component_threshold);

// Radii start, 2·start, 4·start, ... keeping those that change the component
// decomposition, until one component remains or r exceeds the window size.
std::vector<std::int64_t> auto_radii(const Pattern &p, std::int64_t start = 1);

} // namespace blobshift::fractal
