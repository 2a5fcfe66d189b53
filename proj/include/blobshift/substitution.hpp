#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blobshift/pattern.hpp"
#include "blobshift/rational.hpp"

namespace blobshift::subst {

// Symbol -> nonempty word rule over a pointed alphabet.
class Substitution1D {
public:
  Substitution1D(Alphabet alphabet, std::map<char, std::string> rules);

  const Alphabet &alphabet() const { return alphabet_; }
  const std::string &image(char symbol) const;
  const std::map<char, std::string> &rules() const { return rules_; }

  // Length of s^n(seed) without building it.
  BigInt image_length(std::string_view seed, int n) const;

private:
  Alphabet alphabet_;
  std::map<char, std::string> rules_;
};

// Symbol -> s×s block rule. Images are full-domain patterns with their
// bottom-left cell at the origin.
class Substitution2D {
public:
  Substitution2D(Alphabet alphabet, std::int64_t expansion, std::map<char, Pattern> rules);

  const Alphabet &alphabet() const { return alphabet_; }
  std::int64_t expansion() const { return expansion_; }
  const Pattern &image(Symbol s) const { return images_.at(s); }

private:
  Alphabet alphabet_;
  std::int64_t expansion_;
  std::vector<Pattern> images_; // indexed by Symbol
};

std::string iterate_1d(const Substitution1D &s, std::string_view seed, int n);
Pattern iterate_2d(const Substitution2D &s, const Pattern &seed, int n);

using AnySubstitution = std::variant<Substitution1D, Substitution2D>;

// "subst 1d <alphabet>" followed by "a -> word" lines, or
// "subst 2d <s> <alphabet>" followed by "a ->" and s rows per rule.
AnySubstitution parse_substitution(std::string_view text);
std::string to_text(const Substitution1D &s);
std::string to_text(const Substitution2D &s);

// Seeds P_{1,1..k} of common side m₁ for the unbounded-rows construction.
struct BlockHierarchySpec {
  int k = 2;
  std::int64_t seed_side = 3;
  std::vector<Pattern> seeds;

  // P_{1,j} built from single-cell P_{0,j}: a 1 at the corner and k ones on
  // row j, so m₁ = k + 1.
  static BlockHierarchySpec canonical(int k);
  void validate() const;
};

std::int64_t block_side(const BlockHierarchySpec &spec, int i);

// P_{i,j}: P_{i-1,j} in the bottom-left block and the slice
// 0 P_{i-1,1} ... P_{i-1,k} on block-row j.
Pattern build_unbounded_rows(const BlockHierarchySpec &spec, int i, int j);
// All of P_{i,1..k}.
std::vector<Pattern> build_unbounded_level(const BlockHierarchySpec &spec, int i);

// τ_n: 0 -> 0^{2^n}, 1 -> 1^{2^n - 1} 0.
Substitution1D tau_density(int n);

struct DensityWord {
  std::optional<std::string> word; // absent when it exceeds the cell cap
  BigInt length;
  BigInt nonzero;
  Rational density;
};

enum class Materialize { IfFits, Always, Never };

// w_k = τ_2(τ_3(...τ_k(1)...)) with its exact nonzero density, counted
// through the substitutions' symbol incidence.
DensityWord density_word(int k, Materialize materialize = Materialize::IfFits);

// Canned rules used throughout the examples.
Substitution2D plus_substitution();       // 1 -> 3×3 plus, 0 -> 3×3 zeros
Substitution1D cantor_substitution();     // 1 -> 101, 0 -> 000
Substitution1D path_tau1();               // + -> ++--++, - -> --++--
Substitution1D path_tau2();               // + -> ++-++,  - -> --+--
Substitution1D path_tau3();               // + -> ++-,    - -> +--
Substitution1D path_constant_up();        // + -> ++
// Two-block presentation of Thue–Morse whose letters code the differences
// of consecutive Thue–Morse symbols: A = 01 (+1), B = 10 (-1), C = 00, D = 11.
Substitution1D thue_morse_difference();

} // namespace blobshift::subst
