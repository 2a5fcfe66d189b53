#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blobshift/rational.hpp"

namespace blobshift {

// Index into an Alphabet; index 0 is always the zero symbol.
using Symbol = std::uint8_t;
inline constexpr Symbol kZero = 0;

// Pointed alphabet of single-character symbols. The first character is the
// zero symbol. '?' is reserved for "outside the domain" in the text format,
// and '.' is always read as zero.
class Alphabet {
public:
  Alphabet();
  explicit Alphabet(std::string_view chars);

  char zero() const { return chars_.front(); }
  const std::string &chars() const { return chars_; }
  std::size_t size() const { return chars_.size(); }

  std::optional<Symbol> index(char c) const;
  Symbol require(char c) const;
  char symbol(Symbol s) const { return chars_.at(s); }

  bool operator==(const Alphabet &) const = default;

private:
  std::string chars_;
};

struct Cell {
  std::int64_t x = 0;
  std::int64_t y = 0;

  auto operator<=>(const Cell &) const = default;

  Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
};

inline std::int64_t l1_distance(Cell a, Cell b) {
  auto dx = a.x - b.x;
  auto dy = a.y - b.y;
  return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

struct CellHash {
  std::size_t operator()(Cell c) const noexcept {
    auto h = static_cast<std::uint64_t>(c.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(c.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Axis-aligned window. One-dimensional boxes have height 1 and y = 0.
struct Box {
  Cell lo;
  std::int64_t width = 0;
  std::int64_t height = 0;

  bool empty() const { return width <= 0 || height <= 0; }
  std::int64_t area() const { return empty() ? 0 : width * height; }
  bool contains(Cell c) const {
    return c.x >= lo.x && c.x < lo.x + width && c.y >= lo.y && c.y < lo.y + height;
  }
  Cell hi() const { return {lo.x + width - 1, lo.y + height - 1}; }

  bool operator==(const Box &) const = default;
};

Box bounding_box(std::span<const Cell> cells, int dim);

// Finite partial map from cells to symbols. Stored densely over a bounding
// box; cells of the box outside the domain are marked absent.
class Pattern {
public:
  Pattern();
  Pattern(int dim, Alphabet alphabet);
  // Box with every cell in the domain, filled with `fill`.
  Pattern(int dim, Alphabet alphabet, Box box, Symbol fill = kZero);

  // Box reserved for storage with no cell in the domain yet.
  static Pattern blank(int dim, Alphabet alphabet, Box box);

  static Pattern from_word(std::string_view word, const Alphabet &alphabet,
                           std::int64_t offset = 0);

  int dim() const { return dim_; }
  const Alphabet &alphabet() const { return alphabet_; }
  const Box &box() const { return box_; }

  bool in_domain(Cell c) const;
  std::optional<Symbol> at(Cell c) const;
  // Value at a domain cell; throws InvalidArgument outside the domain.
  Symbol value(Cell c) const;

  void set(Cell c, Symbol s);
  void erase(Cell c);

  std::vector<Cell> domain() const;
  std::vector<Cell> support() const;
  std::size_t domain_size() const;
  std::size_t support_size() const;

  Pattern translated(Cell v) const;
  // Same domain and values, box shrunk to the domain's bounding box.
  Pattern trimmed() const;
  // Box grown by `margin` on every side of each used axis; new cells are
  // zero and belong to the domain.
  Pattern with_margin(std::int64_t margin) const;

  // 1D only: the row as a word over the alphabet ('?' outside the domain).
  std::string word() const;

  // Equality of domains and values; the storage box is irrelevant.
  bool operator==(const Pattern &other) const;

private:
  std::size_t offset_of(Cell c) const;
  void grow_to(Box box);

  int dim_ = 1;
  Alphabet alphabet_;
  Box box_;
  std::vector<std::int16_t> codes_; // -1 marks cells outside the domain
};

// Padded r-connected pattern, stored translated so that its least support
// cell sits at the origin. Domain is exactly the r-ball around the support.
struct Blob {
  Pattern pattern;
  std::int64_t radius = 0;

  bool operator==(const Blob &o) const {
    return radius == o.radius && pattern == o.pattern;
  }
};

std::size_t blob_hash(const Blob &b);

struct PlacedBlob {
  Blob blob;
  Cell anchor; // translation taking the canonical blob back into place
};

struct BlobOccurrence {
  Blob blob;
  Cell anchor;
  bool truncated = false; // r-padding leaves the source pattern's domain
};

std::vector<Cell> l1_ball_offsets(std::int64_t r, int dim);

// Cells within L1 distance r of some cell in `cells`, sorted.
std::vector<Cell> padded_cells(std::span<const Cell> cells, std::int64_t r, int dim);

// Maximal r-connected subsets, each sorted, ordered by least member.
std::vector<std::vector<Cell>> connected_components(std::span<const Cell> cells,
                                                    std::int64_t r, int dim = 2);

Blob make_blob(const Pattern &source, std::span<const Cell> component,
               std::int64_t r);

// One blob per r-component of the support. Throws PaddingUnavailable when a
// component's padding exits the domain.
std::vector<PlacedBlob> blobs(const Pattern &p, std::int64_t r);

// Like blobs(), but records components whose padding is unavailable as
// truncated instead of failing.
std::vector<BlobOccurrence> blob_occurrences(const Pattern &p, std::int64_t r);

Pattern zero_glue(const Pattern &p, const Pattern &q);

// Translations v such that q shifted by v agrees with p on q's shifted domain.
std::vector<Cell> occurrences(const Pattern &p, const Pattern &q,
                              std::optional<Box> window = std::nullopt);

// Rows of a 2D pattern as 1D patterns, bottom row first.
std::vector<Pattern> rows_of(const Pattern &p);

std::int64_t interval_cover(std::span<const std::int64_t> sorted_positions,
                            std::int64_t r);
std::int64_t essential_width_lower_bound(std::span<const Pattern> rows, std::int64_t r);
std::int64_t sparsity(std::span<const Pattern> rows);
Rational density_window(const Pattern &p, std::int64_t window);

// Characteristic word of nZ ∩ [0, n²] on the window [-n, n² + n].
Pattern sparse_not_uniform_family(std::int64_t n);

} // namespace blobshift
