#include <doctest.h>

#include "blobshift/error.hpp"
#include "blobshift/pattern_io.hpp"
#include "blobshift/tfg.hpp"
#include "support.hpp"

using namespace blobshift;
using namespace blobshift::tfg;
using namespace testing_support;

namespace {

Word random_word(std::size_t n) {
  Word w(n);
  for (auto &s : w)
    s = static_cast<Symbol>(uniform(0, 1));
  return w;
}

Element inverse_shift() { return parse_element("tfg 01 radius 1\n* -> shift -1\n"); }

// Position reached from `pos` after applying g `n` times on a cyclic word.
std::int64_t orbit(const Element &g, const Word &x, std::int64_t pos, int n) {
  for (int i = 0; i < n; ++i)
    pos += cocycle_at(g, x, pos, true);
  return pos;
}

} // namespace

TEST_SUITE("elements") {
  TEST_CASE("files round trip and match the data directory") {
    for (const auto &g : {identity(), shift(), block_swap()}) {
      auto back = parse_element(to_text(g));
      CHECK(back.shifts() == g.shifts());
      CHECK(back.radius() == g.radius());
    }
    CHECK(parse_element(read_file("data/swap.tfg")).shifts() == block_swap().shifts());
  }

  TEST_CASE("shifts beyond the radius are refused") {
    CHECK_THROWS_AS(parse_element("tfg 01 radius 0\n* -> shift 1\n"), Error);
  }

  TEST_CASE("block swap reads 10 around the origin") {
    auto g = block_swap();
    CHECK(cocycle_at(g, {0, 1, 0, 0}, 1, false) == 1);
    CHECK(cocycle_at(g, {0, 1, 0, 0}, 2, false) == -1);
    CHECK(cocycle_at(g, {0, 0, 0, 0}, 1, false) == 0);
    CHECK(cocycle_at(g, {1, 1, 1, 1}, 1, false) == 0);
  }
}

TEST_SUITE("invertibility") {
  TEST_CASE("built-in elements are valid") {
    CHECK_FALSE(find_collision(identity()).has_value());
    CHECK_FALSE(find_collision(shift()).has_value());
    CHECK_FALSE(find_collision(block_swap()).has_value());
    CHECK_NOTHROW(validate(inverse_shift()));
  }

  TEST_CASE("one window sent further collides") {
    std::string text = "tfg 01 radius 2\n00000 -> shift 2\n* -> shift 1\n";
    auto g = parse_element(text);
    auto c = find_collision(g);
    REQUIRE(c);
    try {
      validate(g);
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == Errc::NotInvertible);
    }
  }

  TEST_CASE("collisions replay as two points with the same image") {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::int64_t> shifts(8);
      for (auto &s : shifts)
        s = uniform(-1, 1);
      Element g(Alphabet("01"), 1, shifts);
      auto c = find_collision(g);
      if (!c)
        continue;
      // Both points read inside the reported window; place x's origin at radius.
      const std::int64_t x0 = c->d < 0 ? 1 - c->d : 1;
      auto cx = cocycle_at(g, c->x, x0, false);
      auto cy = cocycle_at(g, c->x, x0 + c->d, false);
      CHECK(cy + c->d == cx);
    }
  }
}

TEST_SUITE("composition") {
  TEST_CASE("cocycle law on random cyclic points") {
    std::vector<Element> pool{identity(), shift(), block_swap(), inverse_shift(),
                              compose(block_swap(), shift())};
    for (int trial = 0; trial < 1000; ++trial) {
      const auto &g = pool[static_cast<std::size_t>(uniform(0, pool.size() - 1))];
      const auto &h = pool[static_cast<std::size_t>(uniform(0, pool.size() - 1))];
      auto gh = compose(g, h);
      auto x = random_word(static_cast<std::size_t>(uniform(12, 20)));
      auto pos = uniform(0, static_cast<std::int64_t>(x.size()) - 1);
      auto ch = cocycle_at(h, x, pos, true);
      CHECK(cocycle_at(gh, x, pos, true) == ch + cocycle_at(g, x, pos + ch, true));
    }
  }

  TEST_CASE("the swap squares to the identity") {
    auto g = block_swap();
    auto sq = compose(g, g);
    CHECK(sq.is_identity());
    const std::size_t len = 4 * static_cast<std::size_t>(g.radius()) + 1;
    for (std::uint64_t i = 0; i < (1u << len); ++i) {
      auto w = ca::word_at(i, len, 2);
      CHECK(orbit(g, w, static_cast<std::int64_t>(len / 2), 2) == static_cast<std::int64_t>(len / 2));
    }
  }
}

TEST_SUITE("order search") {
  TEST_CASE("identity has order one") {
    auto v = order_search(identity(), 8, 8);
    CHECK(v.tag == OrderTag::Torsion);
    CHECK(v.order == 1);
  }

  TEST_CASE("the shift has infinite order with a constant cocycle") {
    auto v = order_search(shift(), 8, 8);
    CHECK(v.tag == OrderTag::InfiniteOrder);
    REQUIRE(v.word);
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(v.word->size()); ++p)
      CHECK(cocycle_at(shift(), *v.word, p, true) == 1);
    CHECK(v.drift == v.k);
    CHECK(orbit(shift(), *v.word, 0, static_cast<int>(v.k)) == v.drift);
  }

  TEST_CASE("block swap has order two") {
    auto v = order_search(block_swap(), 8, 8);
    CHECK(v.tag == OrderTag::Torsion);
    CHECK(v.order == 2);
  }

  TEST_CASE("torsion replays on random points") {
    std::vector<Element> pool{identity(), block_swap()};
    for (const auto &g : pool) {
      auto v = order_search(g, 8, 8);
      REQUIRE(v.tag == OrderTag::Torsion);
      for (int trial = 0; trial < 300; ++trial) {
        auto x = random_word(static_cast<std::size_t>(uniform(8, 16)));
        auto pos = uniform(0, static_cast<std::int64_t>(x.size()) - 1);
        CHECK(orbit(g, x, pos, static_cast<int>(v.order)) == pos);
      }
    }
  }

  TEST_CASE("swap composed with the shift drifts") {
    auto v = order_search(compose(block_swap(), shift()), 6, 8);
    CHECK(v.tag != OrderTag::Torsion);
  }

  TEST_CASE("limits must be positive") { CHECK_THROWS_AS(order_search(shift(), 0, 3), Error); }
}
