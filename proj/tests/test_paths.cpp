#include <doctest.h>

#include "blobshift/error.hpp"
#include "blobshift/paths.hpp"
#include "support.hpp"

using namespace blobshift;
using namespace blobshift::paths;
using namespace testing_support;

namespace {

MoveWord moves_of(const std::string &signs) { return MoveWord(sign_moves(signs)); }

std::map<std::int64_t, std::int64_t> naive_profile(const std::vector<std::int64_t> &moves) {
  std::map<std::int64_t, std::int64_t> out;
  for (auto h : naive_heights(moves))
    ++out[h];
  return out;
}

std::int64_t naive_range(const std::vector<std::int64_t> &heights, std::size_t moves) {
  std::int64_t best = 0;
  for (std::size_t s = 0; s + moves < heights.size(); ++s) {
    auto [lo, hi] = std::minmax_element(heights.begin() + static_cast<std::ptrdiff_t>(s),
                                        heights.begin() + static_cast<std::ptrdiff_t>(s + moves + 1));
    best = std::max(best, *hi - *lo);
  }
  return best;
}

MoveWord random_moves(std::size_t n, std::int64_t bound) {
  std::vector<std::int64_t> m(n);
  for (auto &x : m)
    x = uniform(-bound, bound);
  return MoveWord(m, bound);
}

std::vector<MoveWord> all_sign_words(std::size_t n) {
  std::vector<MoveWord> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::vector<std::int64_t> m;
    for (std::size_t i = 0; i < n; ++i)
      m.push_back((bits >> (n - 1 - i)) & 1u ? -1 : 1);
    out.emplace_back(m);
  }
  return out;
}

} // namespace

TEST_SUITE("move words") {
  TEST_CASE("parsing and printing") {
    auto w = parse_move_word("++-+3 -2 0+");
    CHECK(w.moves == std::vector<std::int64_t>{1, 1, -1, 3, -2, 0, 1});
    CHECK(w.step_bound == 3);
    CHECK(parse_move_word(to_string(w)) == w);
    CHECK(to_string(moves_of("++--")) == "++--");
    CHECK_THROWS_AS(parse_move_word("+x"), Error);
    CHECK_THROWS_AS(MoveWord({1, 5}, 2), Error);
  }

  TEST_CASE("printing round trips on random words") {
    for (int trial = 0; trial < 500; ++trial) {
      auto w = random_moves(static_cast<std::size_t>(uniform(0, 20)), uniform(1, 12));
      auto back = parse_move_word(to_string(w));
      CHECK(back.moves == w.moves);
    }
  }

  TEST_CASE("codings") {
    auto tm = thue_morse_coding();
    CHECK(decode("ABCD", tm).moves == std::vector<std::int64_t>{1, -1, 0, 0});
    CHECK(decode("+-0", default_coding(Alphabet("0+-"))).moves == std::vector<std::int64_t>{1, -1, 0});
    CHECK_THROWS_AS(decode("x", tm), Error);
  }
}

TEST_SUITE("conjugacy") {
  TEST_CASE("worked examples") {
    CHECK(derivative(HeightWord{{0, 1, 2, 3}}).moves == std::vector<std::int64_t>{1, 1, 1});
    CHECK(derivative(HeightWord{{0, 1, 2, 1, 0, 1, 2}}) == moves_of("++--++"));
    CHECK(integrate(moves_of("++--++")).heights == std::vector<std::int64_t>{0, 1, 2, 1, 0, 1, 2});
    CHECK(integrate(MoveWord{}).heights == std::vector<std::int64_t>{0});
    CHECK(integrate(moves_of("---")).heights == std::vector<std::int64_t>{0, -1, -2, -3});
  }

  TEST_CASE("round trips and shift equivariance on random windows") {
    for (int trial = 0; trial < 10000; ++trial) {
      auto bound = uniform(1, 4);
      auto w = random_moves(static_cast<std::size_t>(uniform(0, 40)), bound);
      auto h = integrate(w);
      CHECK(h.heights == naive_heights(w.moves));
      CHECK(derivative(h).moves == w.moves);

      HeightWord shifted;
      auto base = uniform(-50, 50);
      shifted.heights.clear();
      for (auto x : h.heights)
        shifted.heights.push_back(x + base);
      CHECK(integrate(derivative(shifted)).heights == h.heights);

      if (w.size() >= 2) {
        auto a = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(w.size()) - 1));
        auto b = static_cast<std::size_t>(uniform(static_cast<std::int64_t>(a), static_cast<std::int64_t>(w.size())));
        HeightWord window;
        window.heights.assign(h.heights.begin() + static_cast<std::ptrdiff_t>(a),
                              h.heights.begin() + static_cast<std::ptrdiff_t>(b + 1));
        std::vector<std::int64_t> slice(w.moves.begin() + static_cast<std::ptrdiff_t>(a),
                                        w.moves.begin() + static_cast<std::ptrdiff_t>(b));
        CHECK(derivative(window).moves == slice);
      }
    }
  }
}

TEST_SUITE("visit profiles") {
  TEST_CASE("worked examples") {
    CHECK(visit_profile(moves_of("++--++")) == VisitProfile{{0, 2}, {1, 3}, {2, 2}});
    CHECK(visit_profile(moves_of("+")) == VisitProfile{{0, 1}, {1, 1}});
    CHECK(visit_profile(moves_of("++-")) == VisitProfile{{0, 1}, {1, 2}, {2, 1}});
  }

  TEST_CASE("agrees with direct counting") {
    for (int trial = 0; trial < 300; ++trial) {
      auto w = random_moves(static_cast<std::size_t>(uniform(0, 60)), 2);
      CHECK(visit_profile(w) == naive_profile(w.moves));
      auto c = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(w.size())));
      auto from = visit_profile_from(w, c);
      auto h = naive_heights(w.moves);
      VisitProfile expect;
      for (auto x : h)
        ++expect[x - h[c]];
      CHECK(from == expect);
    }
  }

  TEST_CASE("first substitution: counts at least 2^n and the support grows") {
    std::size_t last_support = 0;
    std::int64_t expected_support = 2;
    for (int n = 0; n <= 8; ++n) {
      auto w = decode(iterate_1d(subst::path_tau1(), "+", n), default_coding(Alphabet("+-")));
      auto z = visit_profile(w);
      for (auto [height, count] : z)
        CHECK(count >= (std::int64_t{1} << n));
      CHECK(z.size() > last_support);
      CHECK(static_cast<std::int64_t>(z.size()) == expected_support);
      last_support = z.size();
      expected_support = 2 * expected_support - 1;
    }
  }

  TEST_CASE("third substitution: support [0, n+1] with z0 = 1") {
    for (int n = 1; n <= 12; ++n) {
      auto w = decode(iterate_1d(subst::path_tau3(), "+", n), default_coding(Alphabet("+-")));
      auto z = visit_profile(w);
      CHECK(z == naive_profile(w.moves));
      CHECK(z.begin()->first == 0);
      CHECK(z.rbegin()->first == n + 1);
      CHECK(static_cast<int>(z.size()) == n + 2);
      CHECK(z[0] == 1);
      CHECK(z[1] == n + 1);
      CHECK(z[n + 1] == (std::int64_t{1} << (n - 1)));
      if (n >= 2)
        CHECK(z[2] == n * n);
      for (int i = 1; i <= n + 1; ++i)
        CHECK(z[i] >= std::min<std::int64_t>(n + 1, std::int64_t{1} << (n - 1)));
    }
  }

  TEST_CASE("third substitution: height one is visited only n + 1 times") {
    auto w = decode(iterate_1d(subst::path_tau3(), "+", 4), default_coding(Alphabet("+-")));
    CHECK(visit_profile(w) == VisitProfile{{0, 1}, {1, 5}, {2, 16}, {3, 28}, {4, 24}, {5, 8}});
  }

  TEST_CASE("second substitution: central visit counts stabilize") {
    std::vector<VisitProfile> seen;
    for (int m = 1; m <= 8; ++m) {
      auto half = iterate_1d(subst::path_tau2(), "+", m);
      auto w = decode(half + half, default_coding(Alphabet("+-")));
      auto z = visit_profile_from(w, half.size());
      VisitProfile window;
      for (std::int64_t h = -2; h <= 2; ++h)
        window[h] = z.count(h) ? z.at(h) : 0;
      seen.push_back(window);
    }
    CHECK(seen[6] == seen[7]);
    CHECK(seen[5] == seen[7]);
  }
}

TEST_SUITE("ascension") {
  TEST_CASE("worked examples") {
    CHECK(ascension_constant(moves_of("+++++")) == 1);
    CHECK(ascension_constant(moves_of("++--++")) == 5);
    CHECK_FALSE(ascension_constant(moves_of("---")).has_value());
  }

  TEST_CASE("least window length with positive sums") {
    for (int trial = 0; trial < 300; ++trial) {
      auto w = random_moves(static_cast<std::size_t>(uniform(1, 30)), 2);
      auto h = naive_heights(w.moves);
      std::optional<std::int64_t> expect;
      for (std::size_t m = 1; m <= w.size() && !expect; ++m) {
        bool ok = true;
        for (std::size_t s = 0; s + m < h.size(); ++s)
          ok = ok && h[s + m] - h[s] > 0;
        if (ok)
          expect = static_cast<std::int64_t>(m);
      }
      CHECK(ascension_constant(w) == expect);
    }
  }
}

TEST_SUITE("cut paths") {
  TEST_CASE("full shift has no cut path") {
    auto language = all_sign_words(12);
    CHECK_FALSE(cut_path_search(language, 1, 10).has_value());
  }

  TEST_CASE("monotone language cuts immediately") {
    std::vector<MoveWord> language{moves_of(std::string(12, '+'))};
    auto cut = cut_path_search(language, 1, 10);
    REQUIRE(cut);
    CHECK(*cut == moves_of("+"));
  }

  TEST_CASE("third substitution has no cut path") {
    auto w = decode(iterate_1d(subst::path_tau3(), "+", 8), default_coding(Alphabet("+-")));
    auto language = factors({w}, 20);
    for (std::int64_t h : {4, 8, 12, 16, 20})
      CHECK_FALSE(cut_path_search(language, 1, h).has_value());
  }

  TEST_CASE("parallel and serial searches agree") {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<MoveWord> language;
      for (int i = 0; i < 30; ++i) {
        std::vector<std::int64_t> m(12);
        for (auto &x : m)
          x = coin(0.7) ? 1 : -1;
        language.emplace_back(m);
      }
      auto r = uniform(1, 2);
      CHECK(cut_path_search(language, r, 10) == serial::cut_path_search(language, r, 10));
    }
  }

  TEST_CASE("factors are distinct and sorted") {
    auto f = factors({moves_of("++-+"), moves_of("+-+-")}, 2);
    CHECK(f.size() == 3);
    CHECK(std::is_sorted(f.begin(), f.end(), [](const MoveWord &a, const MoveWord &b) {
      return a.moves < b.moves;
    }));
  }
}

TEST_SUITE("path space classification") {
  TEST_CASE("canned substitutions") {
    auto up = classify_path_space(subst::path_constant_up(), 16);
    CHECK(up.tag == PathClass::Ascending);
    CHECK(up.constant == 1);

    ClassifyOptions tm;
    tm.coding = thue_morse_coding();
    auto bounded = classify_path_space(subst::thue_morse_difference(), 32, tm);
    CHECK(bounded.tag == PathClass::Bounded);
    CHECK(bounded.constant == 1);

    auto rec = classify_path_space(subst::path_tau1(), 32);
    CHECK(rec.tag == PathClass::UnboundedRecurrent);
    REQUIRE(rec.witness);
    CHECK(rec.returns.size() >= 32);
  }

  TEST_CASE("recurrent verdict holds across horizons") {
    for (std::int64_t h : {8, 16, 32, 64})
      CHECK(classify_path_space(subst::path_tau1(), h).tag == PathClass::UnboundedRecurrent);
    CHECK(classify_path_space(subst::path_tau2(), 16).tag == PathClass::UnboundedRecurrent);
    CHECK(classify_path_space(subst::path_tau3(), 16).tag == PathClass::UnboundedRecurrent);
  }

  TEST_CASE("downward mirror") {
    subst::Substitution1D down(Alphabet("+-"), {{'+', "++"}, {'-', "--"}});
    ClassifyOptions o;
    o.seed = "-";
    auto v = classify_path_space(down, 16, o);
    CHECK(v.tag == PathClass::Descending);
    CHECK(v.constant == 1);
  }

  TEST_CASE("certificates replay against the generated word") {
    struct Case {
      subst::Substitution1D s;
      ClassifyOptions o;
      std::int64_t h;
    };
    ClassifyOptions tm;
    tm.coding = thue_morse_coding();
    std::vector<Case> cases{{subst::path_constant_up(), {}, 16},
                            {subst::thue_morse_difference(), tm, 32},
                            {subst::path_tau1(), {}, 32},
                            {subst::path_tau3(), {}, 16}};
    for (const auto &c : cases) {
      auto v = classify_path_space(c.s, c.h, c.o);
      std::string seed = c.o.seed ? *c.o.seed : std::string(1, c.s.alphabet().symbol(1));
      auto symbols = iterate_1d(c.s, seed, v.iterations);
      CHECK(static_cast<std::int64_t>(symbols.size()) == v.word_length);
      CHECK(v.word_length >= std::max(4 * c.h, c.h * c.h));
      auto w = decode(symbols, c.o.coding ? *c.o.coding : default_coding(c.s.alphabet()));
      auto heights = naive_heights(w.moves);
      CHECK(naive_range(heights, static_cast<std::size_t>(c.h)) == v.range_at_horizon);
      CHECK(naive_range(heights, static_cast<std::size_t>(v.shorter_window)) == v.range_at_shorter_window);
      switch (v.tag) {
      case PathClass::Ascending:
        for (std::size_t s = 0; s + static_cast<std::size_t>(v.constant) < heights.size(); ++s)
          CHECK(heights[s + static_cast<std::size_t>(v.constant)] > heights[s]);
        break;
      case PathClass::Bounded:
        CHECK(v.range_at_horizon == v.constant);
        CHECK(v.range_at_shorter_window == v.constant);
        break;
      case PathClass::UnboundedRecurrent: {
        CHECK(v.range_at_horizon > v.range_at_shorter_window);
        REQUIRE(v.witness);
        std::vector<std::int64_t> slice(
            w.moves.begin() + v.witness_start,
            w.moves.begin() + v.witness_start + static_cast<std::int64_t>(v.witness->size()));
        CHECK(slice == v.witness->moves);
        auto wh = naive_heights(v.witness->moves);
        CHECK(static_cast<std::int64_t>(v.returns.size()) >= c.h);
        for (auto p : v.returns) {
          CHECK(wh[static_cast<std::size_t>(p)] >= 0);
          CHECK(wh[static_cast<std::size_t>(p)] <= 0);
        }
        break;
      }
      default:
        FAIL("unexpected verdict");
      }
    }
  }

  TEST_CASE("window range agrees with direct scanning") {
    for (int trial = 0; trial < 100; ++trial) {
      auto w = random_moves(static_cast<std::size_t>(uniform(1, 80)), 1);
      auto h = integrate(w);
      auto len = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(w.size())));
      CHECK(max_window_range(h, len) == naive_range(h.heights, len));
    }
  }

  TEST_CASE("horizon must be positive") {
    CHECK_THROWS_AS(classify_path_space(subst::path_tau1(), 0), Error);
  }
}
