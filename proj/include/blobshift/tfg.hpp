#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blobshift/automata.hpp"

namespace blobshift::tfg {

using ca::Word;

// Element of the topological full group of the full shift: x ↦ σ^{c(x)}(x),
// where the cocycle c reads x_{[-ρ, ρ]} and takes values in [-ρ, ρ].
class Element {
public:
  Element(Alphabet alphabet, int radius, std::vector<std::int64_t> shifts);

  const Alphabet &alphabet() const { return alphabet_; }
  int radius() const { return radius_; }
  const std::vector<std::int64_t> &shifts() const { return shifts_; }
  std::size_t window_length() const { return static_cast<std::size_t>(2 * radius_ + 1); }

  // c(x) for the window x_{[-ρ, ρ]}.
  std::int64_t cocycle(const Symbol *window) const {
    return shifts_[ca::word_index(window, window_length(), alphabet_.size())];
  }
  bool is_identity() const;

private:
  Alphabet alphabet_;
  int radius_;
  std::vector<std::int64_t> shifts_;
};

// "tfg <alphabet> radius <ρ>", then "<word> -> shift <k>" lines and an
// optional final "* -> shift <k>".
Element parse_element(std::string_view text);
std::string to_text(const Element &g);

Element identity(const Alphabet &alphabet = Alphabet("01"));
Element shift(const Alphabet &alphabet = Alphabet("01")); // σ, constant +1
// Swaps the two positions of every 10 block: +1 reading 10 at positions 0,1
// and -1 reading 10 at positions -1,0.
Element block_swap();

// Cocycle of g at position `pos` of a configuration given on a window, or
// on a cyclic word when `cyclic` is set.
std::int64_t cocycle_at(const Element &g, const Word &x, std::int64_t pos, bool cyclic);

struct Collision {
  Word x;            // window containing both points' views
  std::int64_t d = 0; // y = σ^d(x)
};

// Injectivity check: no x and 0 < |d| <= 2ρ with c(σ^d x) + d = c(x).
// Returns the least colliding window, or nothing.
std::optional<Collision> find_collision(const Element &g);
// Throws NotInvertible with the colliding pair.
const Element &validate(const Element &g);

// c(g∘h, x) = c(h, x) + c(g, h(x)), as an element of radius ρ_g + ρ_h.
Element compose(const Element &g, const Element &h);

enum class OrderTag { Torsion, InfiniteOrder, Inconclusive };
std::string_view order_name(OrderTag t);

struct OrderVerdict {
  OrderTag tag = OrderTag::Inconclusive;
  std::int64_t order = 0; // Torsion
  // InfiniteOrder: on the periodic point word^∞, g^k acts as σ^drift.
  std::optional<Word> word;
  std::int64_t k = 0;
  std::int64_t drift = 0;
  int max_checked_power = 0; // largest n whose power table was built
};

// Torsion(n) for the least n <= max_order with g^n the identity table; else
// InfiniteOrder when a periodic point of period <= max_period drifts; else
// Inconclusive. Powers whose table would exceed 2^22 entries are skipped.
OrderVerdict order_search(const Element &g, int max_order, int max_period);

} // namespace blobshift::tfg
