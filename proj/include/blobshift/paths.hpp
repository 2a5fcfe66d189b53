#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blobshift/substitution.hpp"

namespace blobshift::paths {

// Finite window of a path given by its moves.
struct MoveWord {
  std::vector<std::int64_t> moves;
  std::int64_t step_bound = 1;

  MoveWord() = default;
  // Step bound defaults to max(1, max |move|); an explicit bound must cover
  // every move.
  explicit MoveWord(std::vector<std::int64_t> moves,
                    std::optional<std::int64_t> bound = std::nullopt);

  std::size_t size() const { return moves.size(); }
  bool empty() const { return moves.empty(); }
  bool operator==(const MoveWord &) const = default;
};

// Finite window of a height path, normalized to start at 0.
struct HeightWord {
  std::vector<std::int64_t> heights{0};
  bool operator==(const HeightWord &) const = default;
};

// Height -> number of visits.
using VisitProfile = std::map<std::int64_t, std::int64_t>;

// Reads a move word: '+'/'-' alone are ±1, a sign followed by digits is one
// move of that size, '0' is a zero move. Whitespace separates tokens.
MoveWord parse_move_word(std::string_view text);
std::string to_string(const MoveWord &w);

// Symbol -> move for substitutions whose letters stand for moves.
using MoveCoding = std::map<char, std::int64_t>;
// '+' -> 1, '-' -> -1, the zero symbol -> 0.
MoveCoding default_coding(const Alphabet &alphabet);
// Coding for subst::thue_morse_difference().
MoveCoding thue_morse_coding();
MoveWord decode(std::string_view symbols, const MoveCoding &coding);

MoveWord derivative(const HeightWord &h);
HeightWord integrate(const MoveWord &w);
VisitProfile visit_profile(const MoveWord &w);
// Visits counted relative to the height at point `center` (0..|w|).
VisitProfile visit_profile_from(const MoveWord &w, std::size_t center);

// Least m such that every length-m window has positive sum.
std::optional<std::int64_t> ascension_constant(const MoveWord &w);

// Distinct factors of length exactly `length` from the given words, sorted.
std::vector<MoveWord> factors(const std::vector<MoveWord> &words, std::size_t length);

// Searches for a cut path among language factors of length 1..horizon/2,
// shortest first then by serialized form. A candidate w is refuted when some
// length-`horizon` factor u contains w at position s and the path of u,
// measured from s, has a point outside [s, s+|w|] at height in [0, r-1].
std::optional<MoveWord> cut_path_search(const std::vector<MoveWord> &language,
                                        std::int64_t r, std::int64_t horizon);

namespace serial {
std::optional<MoveWord> cut_path_search(const std::vector<MoveWord> &language,
                                        std::int64_t r, std::int64_t horizon);
}

enum class PathClass { Ascending, Descending, Bounded, UnboundedRecurrent, Inconclusive };

std::string_view path_class_name(PathClass c);

struct PathClassVerdict {
  PathClass tag = PathClass::Inconclusive;
  std::int64_t constant = 0;       // m for Ascending/Descending, M for Bounded
  std::optional<MoveWord> witness; // UnboundedRecurrent only
  std::int64_t horizon = 0;

  // Certificate.
  int iterations = 0;             // n in s^n(seed)
  std::int64_t word_length = 0;   // |s^n(seed)|
  std::int64_t range_at_horizon = 0;      // M_H
  std::int64_t shorter_window = 0;          // H / λ
  std::int64_t range_at_shorter_window = 0; // M_{H/λ}
  std::int64_t witness_start = 0;         // offset of the witness in s^n(seed)
  std::vector<std::int64_t> returns;      // points of the witness at height in [0, r-1]
};

struct ClassifyOptions {
  std::optional<std::string> seed; // default: first nonzero symbol
  std::optional<MoveCoding> coding; // default: default_coding
  std::int64_t r = 1;
};

// Builds W = s^n(seed) for the least n with |W| >= max(4H, H²) and reads the
// verdict off W's windows:
//   Ascending(m)   least m <= H with every length-m window sum > 0;
//   Descending(m)  same with < 0;
//   Bounded(M)     M_H = M_{H/λ} = M, where M_L is the largest height range
//                  inside a window of L moves and λ the longest image length;
//   UnboundedRecurrent  M_H > M_{H/λ} and some point of W is followed by at
//                  least H points at relative height in [0, r-1];
//   Inconclusive   otherwise.
PathClassVerdict classify_path_space(const subst::Substitution1D &s, std::int64_t horizon,
                                     const ClassifyOptions &options = {});

// M_L over the whole word.
std::int64_t max_window_range(const HeightWord &h, std::size_t moves);

} // namespace blobshift::paths
