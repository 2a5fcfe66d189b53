#include "blobshift/substitution.hpp"

#include <sstream>

#include "blobshift/error.hpp"
#include "blobshift/limits.hpp"
#include "blobshift/pattern_io.hpp"

namespace blobshift::subst {

// ---------------------------------------------------------------------------
// 1D

Substitution1D::Substitution1D(Alphabet alphabet, std::map<char, std::string> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  for (char c : alphabet_.chars()) {
    auto it = rules_.find(c);
    if (it == rules_.end())
      throw Error(Errc::InvalidArgument, std::string("no rule for symbol '") + c + "'");
    if (it->second.empty())
      throw Error(Errc::InvalidArgument, std::string("empty image for symbol '") + c + "'");
    for (char d : it->second)
      if (d == '.' || !alphabet_.index(d))
        throw Error(Errc::InvalidArgument, std::string("image symbol '") + d + "' not in alphabet");
  }
  for (const auto &[c, img] : rules_)
    if (c == '.' || !alphabet_.index(c))
      throw Error(Errc::InvalidArgument, std::string("rule for unknown symbol '") + c + "'");
}

const std::string &Substitution1D::image(char symbol) const {
  auto it = rules_.find(symbol);
  if (it == rules_.end())
    throw Error(Errc::InvalidArgument, std::string("no rule for symbol '") + symbol + "'");
  return it->second;
}

BigInt Substitution1D::image_length(std::string_view seed, int n) const {
  if (n < 0)
    throw Error(Errc::InvalidArgument, "iteration count must be nonnegative");
  const auto &chars = alphabet_.chars();
  std::vector<BigInt> counts(chars.size());
  for (char c : seed)
    counts[alphabet_.require(c)] += 1;
  for (int step = 0; step < n; ++step) {
    std::vector<BigInt> next(chars.size());
    for (std::size_t a = 0; a < chars.size(); ++a) {
      if (counts[a] == 0)
        continue;
      for (char d : image(chars[a]))
        next[alphabet_.require(d)] += counts[a];
    }
    counts = std::move(next);
  }
  BigInt total = 0;
  for (const auto &v : counts)
    total += v;
  return total;
}

std::string iterate_1d(const Substitution1D &s, std::string_view seed, int n) {
  BigInt length = s.image_length(seed, n);
  if (length > BigInt(cell_cap()))
    throw Error(Errc::SizeLimit, "iterate_1d output of length " + length.str() +
                                     " exceeds the cap of " + std::to_string(cell_cap()));
  std::string word(seed);
  for (int step = 0; step < n; ++step) {
    std::string next;
    for (char c : word)
      next += s.image(c);
    word = std::move(next);
  }
  return word;
}

// ---------------------------------------------------------------------------
// 2D

Substitution2D::Substitution2D(Alphabet alphabet, std::int64_t expansion,
                               std::map<char, Pattern> rules)
    : alphabet_(std::move(alphabet)), expansion_(expansion) {
  if (expansion_ < 2)
    throw Error(Errc::InvalidArgument, "expansion must be at least 2");
  for (char c : alphabet_.chars()) {
    auto it = rules.find(c);
    if (it == rules.end())
      throw Error(Errc::InvalidArgument, std::string("no rule for symbol '") + c + "'");
    const Pattern &img = it->second;
    if (img.dim() != 2 || img.alphabet() != alphabet_)
      throw Error(Errc::InvalidArgument, "2D rule images must be 2D over the same alphabet");
    Pattern full(2, alphabet_, Box{{0, 0}, expansion_, expansion_});
    if (img.domain() != full.domain())
      throw Error(Errc::InvalidArgument, std::string("image of '") + c + "' is not a full " +
                                             std::to_string(expansion_) + "x" +
                                             std::to_string(expansion_) + " block");
    images_.push_back(img);
  }
}

Pattern iterate_2d(const Substitution2D &s, const Pattern &seed, int n) {
  if (n < 0)
    throw Error(Errc::InvalidArgument, "iteration count must be nonnegative");
  if (seed.dim() != 2 || seed.alphabet() != s.alphabet())
    throw Error(Errc::InvalidArgument, "seed must be a 2D pattern over the rule alphabet");
  Pattern current = seed.trimmed();
  const std::int64_t e = s.expansion();
  for (int step = 0; step < n; ++step) {
    const Box &b = current.box();
    if (b.empty())
      return current;
    Box next_box{{checked_mul(b.lo.x, e), checked_mul(b.lo.y, e)}, checked_mul(b.width, e),
                 checked_mul(b.height, e)};
    check_cells(static_cast<std::size_t>(checked_mul(next_box.width, next_box.height)),
                "iterate_2d output");
    Pattern next = Pattern::blank(2, s.alphabet(), next_box);
    for (Cell c : current.domain()) {
      const Pattern &img = s.image(current.value(c));
      for (std::int64_t dx = 0; dx < e; ++dx)
        for (std::int64_t dy = 0; dy < e; ++dy)
          next.set({c.x * e + dx, c.y * e + dy}, img.value({dx, dy}));
    }
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

} // namespace

AnySubstitution parse_substitution(std::string_view text) {
  auto lines = lines_of(text);
  std::size_t at = 0;
  auto skip_blank = [&] {
    while (at < lines.size() && tokens(lines[at]).empty())
      ++at;
  };
  skip_blank();
  if (at >= lines.size())
    throw Error(Errc::Parse, "empty substitution file");
  auto header = tokens(lines[at++]);
  if (header.size() < 3 || header[0] != "subst")
    throw Error(Errc::Parse, "expected 'subst 1d <alphabet>' or 'subst 2d <s> <alphabet>'");

  if (header[1] == "1d") {
    if (header.size() != 3)
      throw Error(Errc::Parse, "expected 'subst 1d <alphabet>'");
    Alphabet alphabet(header[2]);
    std::map<char, std::string> rules;
    for (; at < lines.size(); ++at) {
      auto t = tokens(lines[at]);
      if (t.empty())
        continue;
      if (t.size() != 3 || t[0].size() != 1 || t[1] != "->")
        throw Error(Errc::Parse, "expected 'a -> word', got '" + lines[at] + "'");
      if (!rules.emplace(t[0][0], t[2]).second)
        throw Error(Errc::Parse, "duplicate rule for '" + t[0] + "'");
    }
    return Substitution1D(alphabet, std::move(rules));
  }

  if (header[1] == "2d") {
    if (header.size() != 4)
      throw Error(Errc::Parse, "expected 'subst 2d <s> <alphabet>'");
    std::int64_t e = 0;
    try {
      e = std::stoll(header[2]);
    } catch (...) {
      throw Error(Errc::Parse, "bad expansion '" + header[2] + "'");
    }
    if (e < 2 || e > 64)
      throw Error(Errc::Parse, "expansion must lie in [2, 64]");
    Alphabet alphabet(header[3]);
    std::map<char, Pattern> rules;
    while (true) {
      skip_blank();
      if (at >= lines.size())
        break;
      auto t = tokens(lines[at++]);
      if (t.size() != 2 || t[0].size() != 1 || t[1] != "->")
        throw Error(Errc::Parse, "expected 'a ->' before a 2D rule block");
      Pattern img(2, alphabet, Box{{0, 0}, e, e});
      for (std::int64_t row = e - 1; row >= 0; --row) {
        if (at >= lines.size())
          throw Error(Errc::Parse, "2D rule block cut short");
        const std::string &line = lines[at++];
        if (static_cast<std::int64_t>(line.size()) != e)
          throw Error(Errc::Parse, "2D rule row must have " + std::to_string(e) + " symbols");
        for (std::int64_t x = 0; x < e; ++x) {
          auto s = alphabet.index(line[static_cast<std::size_t>(x)]);
          if (!s)
            throw Error(Errc::Parse, "unknown symbol in 2D rule block");
          img.set({x, row}, *s);
        }
      }
      if (!rules.emplace(t[0][0], std::move(img)).second)
        throw Error(Errc::Parse, "duplicate rule for '" + t[0] + "'");
    }
    return Substitution2D(alphabet, e, std::move(rules));
  }
  throw Error(Errc::Parse, "unknown substitution kind '" + header[1] + "'");
}

std::string to_text(const Substitution1D &s) {
  std::string out = "subst 1d " + s.alphabet().chars() + "\n";
  for (char c : s.alphabet().chars())
    out += std::string(1, c) + " -> " + s.image(c) + "\n";
  return out;
}

std::string to_text(const Substitution2D &s) {
  std::string out = "subst 2d " + std::to_string(s.expansion()) + " " + s.alphabet().chars() + "\n";
  const auto e = s.expansion();
  for (std::size_t i = 0; i < s.alphabet().size(); ++i) {
    const Pattern &img = s.image(static_cast<Symbol>(i));
    out += std::string(1, s.alphabet().symbol(static_cast<Symbol>(i))) + " ->\n";
    for (std::int64_t row = e - 1; row >= 0; --row) {
      for (std::int64_t x = 0; x < e; ++x)
        out.push_back(s.alphabet().symbol(img.value({x, row})));
      out.push_back('\n');
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unbounded rows

BlockHierarchySpec BlockHierarchySpec::canonical(int k) {
  if (k < 1)
    throw Error(Errc::InvalidArgument, "k must be at least 1");
  BlockHierarchySpec spec;
  spec.k = k;
  spec.seed_side = k + 1;
  Alphabet bits("01");
  for (int j = 1; j <= k; ++j) {
    Pattern p(2, bits, Box{{0, 0}, k + 1, k + 1});
    p.set({0, 0}, 1);
    for (int x = 1; x <= k; ++x)
      p.set({x, j}, 1);
    spec.seeds.push_back(std::move(p));
  }
  return spec;
}

void BlockHierarchySpec::validate() const {
  if (k < 1)
    throw Error(Errc::InvalidArgument, "k must be at least 1");
  if (seeds.size() != static_cast<std::size_t>(k))
    throw Error(Errc::InvalidArgument, "need exactly k seeds");
  Box want{{0, 0}, seed_side, seed_side};
  for (const auto &s : seeds) {
    if (s.dim() != 2)
      throw Error(Errc::InvalidArgument, "seeds must be 2D");
    Pattern full(2, s.alphabet(), want);
    if (s.domain() != full.domain())
      throw Error(Errc::InvalidArgument, "seed is not a full m1 x m1 block");
    for (std::int64_t y = 0; y < seed_side; ++y) {
      std::int64_t count = 0;
      for (std::int64_t x = 0; x < seed_side; ++x)
        count += s.value({x, y}) != kZero;
      if (count > k)
        throw Error(Errc::InvalidArgument, "seed row with more than k nonzeros");
      if (y == 0 && (count != 1 || s.value({0, 0}) == kZero))
        throw Error(Errc::InvalidArgument, "seed bottom row must hold exactly the corner");
    }
  }
}

std::int64_t block_side(const BlockHierarchySpec &spec, int i) {
  if (i < 1)
    throw Error(Errc::InvalidArgument, "level i must be at least 1");
  std::int64_t side = spec.seed_side;
  for (int level = 1; level < i; ++level)
    side = checked_mul(side, spec.k + 1);
  return side;
}

std::vector<Pattern> build_unbounded_level(const BlockHierarchySpec &spec, int i) {
  spec.validate();
  const std::int64_t side = block_side(spec, i);
  check_cells(static_cast<std::size_t>(checked_mul(side, side)), "unbounded-rows block");
  std::vector<Pattern> level = spec.seeds;
  for (int cur = 1; cur < i; ++cur) {
    const std::int64_t m = block_side(spec, cur);
    const std::int64_t next_side = m * (spec.k + 1);
    std::vector<Pattern> next;
    for (int j = 1; j <= spec.k; ++j) {
      Pattern p(2, level.front().alphabet(), Box{{0, 0}, next_side, next_side});
      auto blit = [&](const Pattern &src, std::int64_t bx, std::int64_t by) {
        for (Cell c : src.support())
          p.set({bx * m + c.x, by * m + c.y}, src.value(c));
      };
      blit(level[static_cast<std::size_t>(j - 1)], 0, 0);
      for (int col = 1; col <= spec.k; ++col)
        blit(level[static_cast<std::size_t>(col - 1)], col, j);
      next.push_back(std::move(p));
    }
    level = std::move(next);
  }
  return level;
}

Pattern build_unbounded_rows(const BlockHierarchySpec &spec, int i, int j) {
  if (j < 1 || j > spec.k)
    throw Error(Errc::InvalidArgument, "j must lie in [1, k]");
  return build_unbounded_level(spec, i)[static_cast<std::size_t>(j - 1)];
}

// ---------------------------------------------------------------------------
// Density words

Substitution1D tau_density(int n) {
  if (n < 1 || n > 24)
    throw Error(Errc::InvalidArgument, "tau_n needs n in [1, 24]");
  const std::size_t len = std::size_t{1} << n;
  return Substitution1D(Alphabet("01"),
                        {{'0', std::string(len, '0')}, {'1', std::string(len - 1, '1') + "0"}});
}

DensityWord density_word(int k, Materialize materialize) {
  if (k < 2)
    throw Error(Errc::InvalidArgument, "density_word needs k >= 2");
  if (k > 62)
    throw Error(Errc::SizeLimit, "density_word supports k <= 62");
  // counts[0] zeros, counts[1] ones; apply τ_k first and τ_2 last.
  BigInt zeros = 0, ones = 1;
  for (int n = k; n >= 2; --n) {
    BigInt len = BigInt(1) << n;
    BigInt next_zeros = zeros * len + ones;
    BigInt next_ones = ones * (len - 1);
    zeros = std::move(next_zeros);
    ones = std::move(next_ones);
  }
  DensityWord out;
  out.length = zeros + ones;
  out.nonzero = ones;
  out.density = Rational(ones, out.length);

  bool fits = out.length <= BigInt(cell_cap());
  if (materialize == Materialize::Always && !fits)
    throw Error(Errc::SizeLimit, "w_" + std::to_string(k) + " has length " + out.length.str());
  if (materialize != Materialize::Never && fits) {
    std::string word = "1";
    for (int n = k; n >= 2; --n)
      word = iterate_1d(tau_density(n), word, 1);
    out.word = std::move(word);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canned rules

Substitution2D plus_substitution() {
  Alphabet bits("01");
  Pattern zero(2, bits, Box{{0, 0}, 3, 3});
  Pattern plus = zero;
  for (Cell c : {Cell{1, 0}, Cell{0, 1}, Cell{1, 1}, Cell{2, 1}, Cell{1, 2}})
    plus.set(c, 1);
  return Substitution2D(bits, 3, {{'0', zero}, {'1', plus}});
}

Substitution1D cantor_substitution() {
  return Substitution1D(Alphabet("01"), {{'0', "000"}, {'1', "101"}});
}

Substitution1D path_tau1() {
  return Substitution1D(Alphabet("0+-"), {{'0', "0"}, {'+', "++--++"}, {'-', "--++--"}});
}

Substitution1D path_tau2() {
  return Substitution1D(Alphabet("0+-"), {{'0', "0"}, {'+', "++-++"}, {'-', "--+--"}});
}

Substitution1D path_tau3() {
  return Substitution1D(Alphabet("0+-"), {{'0', "0"}, {'+', "++-"}, {'-', "+--"}});
}

Substitution1D path_constant_up() {
  return Substitution1D(Alphabet("0+-"), {{'0', "0"}, {'+', "++"}, {'-', "--"}});
}

Substitution1D thue_morse_difference() {
  return Substitution1D(Alphabet("CABD"),
                        {{'A', "AD"}, {'B', "BC"}, {'C', "AB"}, {'D', "BA"}});
}

} // namespace blobshift::subst
