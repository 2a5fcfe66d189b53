#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blobshift/pattern.hpp"

namespace blobshift::ca {

using Word = std::vector<Symbol>;

// Words of length `length` over `base` symbols are indexed big-endian, so
// index order is lexicographic order.
std::uint64_t word_index(const Symbol *first, std::size_t length, std::size_t base);
Word word_at(std::uint64_t index, std::size_t length, std::size_t base);
// base^length, or SizeLimit once it exceeds `cap`.
std::uint64_t word_count(std::size_t base, std::size_t length, std::uint64_t cap);

Word encode(std::string_view text, const Alphabet &alphabet);
std::string decode(const Word &w, const Alphabet &alphabet);

// Local rule of radius ρ with a total table over (2ρ+1)-words.
class CARule {
public:
  CARule(Alphabet alphabet, int radius, std::vector<Symbol> table);

  const Alphabet &alphabet() const { return alphabet_; }
  int radius() const { return radius_; }
  const std::vector<Symbol> &table() const { return table_; }
  bool zero_preserving() const { return table_.front() == kZero; }
  Symbol apply(const Symbol *window) const {
    return table_[word_index(window, window_length(), alphabet_.size())];
  }
  std::size_t window_length() const { return static_cast<std::size_t>(2 * radius_ + 1); }

private:
  Alphabet alphabet_;
  int radius_;
  std::vector<Symbol> table_;
};

// "ca <alphabet> radius <ρ>", then "<word> -> <symbol>" lines and an optional
// final "* -> <symbol>" default.
CARule parse_ca_rule(std::string_view text);
std::string to_text(const CARule &rule);

CARule zero_rule(const Alphabet &alphabet = Alphabet("01"));
CARule identity_rule(const Alphabet &alphabet = Alphabet("01"));
CARule shift_rule(); // f(x)_i = x_{i+1}
CARule decrement_rule(); // on {0,1,2}: a -> max(a - 1, 0)
CARule xor_rule(); // f(x)_i = x_i xor x_{i+1}

// Finite-support configuration: `word` placed at `offset`, zeros elsewhere.
// Canonical form has no leading or trailing zero; the zero configuration is
// the empty word at offset 0.
struct FiniteConfig {
  std::int64_t offset = 0;
  Word word;

  static FiniteConfig canonical(std::int64_t offset, Word word);
  bool is_zero() const { return word.empty(); }
  std::int64_t support_size() const;
  bool operator==(const FiniteConfig &) const = default;
};

FiniteConfig step(const CARule &rule, const FiniteConfig &c);
// c, f(c), ..., f^steps(c).
std::vector<FiniteConfig> evolve(const CARule &rule, const FiniteConfig &c, std::int64_t steps);
// Nonzero cell counts along the trajectory, horizon + 1 entries.
std::vector<std::int64_t> asymptotic_profile(const CARule &rule, const FiniteConfig &c,
                                             std::int64_t horizon);

// f^n(x) = σ^m(x) where σ^m(x)_i = x_{i+m}.
struct Glider {
  FiniteConfig config;
  std::int64_t n = 0;
  std::int64_t m = 0;
};

// First canonical seed, by width and then lexicographically, whose
// trajectory returns to a translate of itself within max_time steps.
std::optional<Glider> find_glider(const CARule &rule, int max_width, std::int64_t max_time);

namespace serial {
std::optional<Glider> find_glider(const CARule &rule, int max_width, std::int64_t max_time);
}

// One step of the rule on a cyclic word.
Word cyclic_step(const CARule &rule, const Word &w);

enum class NilpotencyTag { NilpotentOnProbe, NotNilpotent, Inconclusive };
std::string_view nilpotency_name(NilpotencyTag t);

struct NilpotencyVerdict {
  NilpotencyTag tag = NilpotencyTag::Inconclusive;
  std::int64_t steps = 0;        // NilpotentOnProbe: uniform death time
  std::optional<Glider> glider;  // NotNilpotent via a glider
  std::optional<Word> cyclic;    // NotNilpotent via a cyclic word that never dies
};

// Finite seeds and cyclic words of width <= max_width. NotNilpotent when a
// glider exists or a cyclic orbit cycles without reaching zero;
// NilpotentOnProbe(n) when every probe dies within max_time, n the latest
// death; Inconclusive otherwise.
NilpotencyVerdict nilpotency_probe(const CARule &rule, int max_width, std::int64_t max_time);

} // namespace blobshift::ca
