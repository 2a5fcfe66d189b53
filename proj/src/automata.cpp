#include "blobshift/automata.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "blobshift/error.hpp"
#include "blobshift/limits.hpp"

namespace blobshift::ca {

namespace {

constexpr std::uint64_t kTableCap = std::uint64_t{1} << 24;

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

} // namespace

std::uint64_t word_index(const Symbol *first, std::size_t length, std::size_t base) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < length; ++i)
    idx = idx * base + first[i];
  return idx;
}

Word word_at(std::uint64_t index, std::size_t length, std::size_t base) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % base);
    index /= base;
  }
  return w;
}

std::uint64_t word_count(std::size_t base, std::size_t length, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (n > cap / base)
      throw Error(Errc::SizeLimit, std::to_string(base) + "^" + std::to_string(length) +
                                       " words exceed the enumeration cap");
    n *= base;
  }
  return n;
}

Word encode(std::string_view text, const Alphabet &alphabet) {
  Word w;
  w.reserve(text.size());
  for (char c : text)
    w.push_back(alphabet.require(c));
  return w;
}

std::string decode(const Word &w, const Alphabet &alphabet) {
  std::string out;
  out.reserve(w.size());
  for (auto s : w)
    out.push_back(alphabet.symbol(s));
  return out;
}

// ---------------------------------------------------------------------------
// Rules

CARule::CARule(Alphabet alphabet, int radius, std::vector<Symbol> table)
    : alphabet_(std::move(alphabet)), radius_(radius), table_(std::move(table)) {
  if (radius_ < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  auto n = word_count(alphabet_.size(), window_length(), kTableCap);
  if (table_.size() != n)
    throw Error(Errc::InvalidArgument, "rule table must list all " + std::to_string(n) + " windows");
  for (auto s : table_)
    if (s >= alphabet_.size())
      throw Error(Errc::InvalidArgument, "rule output outside the alphabet");
}

CARule parse_ca_rule(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line))
    header = tokens(line);
  if (header.size() != 4 || header[0] != "ca" || header[2] != "radius")
    throw Error(Errc::Parse, "expected 'ca <alphabet> radius <r>'");
  Alphabet alphabet(header[1]);
  int radius = 0;
  try {
    radius = std::stoi(header[3]);
  } catch (...) {
    throw Error(Errc::Parse, "bad radius '" + header[3] + "'");
  }
  if (radius < 0 || radius > 16)
    throw Error(Errc::Parse, "radius must lie in [0, 16]");
  const std::size_t len = static_cast<std::size_t>(2 * radius + 1);
  const auto n = word_count(alphabet.size(), len, kTableCap);
  std::vector<int> table(n, -1);
  bool defaulted = false;
  while (std::getline(in, line)) {
    auto t = tokens(line);
    if (t.empty())
      continue;
    if (defaulted)
      throw Error(Errc::Parse, "the '*' default must be the last rule");
    if (t.size() != 3 || t[1] != "->" || t[2].size() != 1)
      throw Error(Errc::Parse, "expected '<word> -> <symbol>', got '" + line + "'");
    auto out = alphabet.index(t[2][0]);
    if (!out)
      throw Error(Errc::Parse, "unknown output symbol '" + t[2] + "'");
    if (t[0] == "*") {
      for (auto &v : table)
        if (v < 0)
          v = *out;
      defaulted = true;
      continue;
    }
    if (t[0].size() != len)
      throw Error(Errc::Parse, "window '" + t[0] + "' must have length " + std::to_string(len));
    Word w;
    for (char c : t[0]) {
      auto s = alphabet.index(c);
      if (!s)
        throw Error(Errc::Parse, std::string("unknown symbol '") + c + "' in window");
      w.push_back(*s);
    }
    auto idx = word_index(w.data(), len, alphabet.size());
    if (table[idx] >= 0)
      throw Error(Errc::Parse, "duplicate window '" + t[0] + "'");
    table[idx] = *out;
  }
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (table[i] < 0)
      throw Error(Errc::Parse, "no rule for window '" +
                                   decode(word_at(i, len, alphabet.size()), alphabet) + "'");
    out.push_back(static_cast<Symbol>(table[i]));
  }
  return CARule(alphabet, radius, std::move(out));
}

std::string to_text(const CARule &rule) {
  const auto &a = rule.alphabet();
  std::string out = "ca " + a.chars() + " radius " + std::to_string(rule.radius()) + "\n";
  for (std::uint64_t i = 0; i < rule.table().size(); ++i)
    if (rule.table()[i] != kZero)
      out += decode(word_at(i, rule.window_length(), a.size()), a) + " -> " +
             a.symbol(rule.table()[i]) + "\n";
  out += std::string("* -> ") + a.zero() + "\n";
  return out;
}

namespace {

template <class F> CARule tabulate(const Alphabet &a, int radius, F f) {
  const std::size_t len = static_cast<std::size_t>(2 * radius + 1);
  const auto n = word_count(a.size(), len, kTableCap);
  std::vector<Symbol> table(n);
  for (std::uint64_t i = 0; i < n; ++i)
    table[i] = f(word_at(i, len, a.size()));
  return CARule(a, radius, std::move(table));
}

} // namespace

CARule zero_rule(const Alphabet &alphabet) {
  return tabulate(alphabet, 0, [](const Word &) { return kZero; });
}

CARule identity_rule(const Alphabet &alphabet) {
  return tabulate(alphabet, 0, [](const Word &w) { return w[0]; });
}

CARule shift_rule() {
  return tabulate(Alphabet("01"), 1, [](const Word &w) { return w[2]; });
}

CARule decrement_rule() {
  return tabulate(Alphabet("012"), 0,
                  [](const Word &w) { return static_cast<Symbol>(w[0] > 0 ? w[0] - 1 : 0); });
}

CARule xor_rule() {
  return tabulate(Alphabet("01"), 1, [](const Word &w) { return static_cast<Symbol>(w[1] ^ w[2]); });
}

// ---------------------------------------------------------------------------
// Evolution

FiniteConfig FiniteConfig::canonical(std::int64_t offset, Word word) {
  auto first = std::find_if(word.begin(), word.end(), [](Symbol s) { return s != kZero; });
  if (first == word.end())
    return {};
  auto last = std::find_if(word.rbegin(), word.rend(), [](Symbol s) { return s != kZero; }).base();
  FiniteConfig c;
  c.offset = offset + (first - word.begin());
  c.word.assign(first, last);
  return c;
}

std::int64_t FiniteConfig::support_size() const {
  return std::count_if(word.begin(), word.end(), [](Symbol s) { return s != kZero; });
}

FiniteConfig step(const CARule &rule, const FiniteConfig &c) {
  if (!rule.zero_preserving())
    throw Error(Errc::NotZeroPreserving, "rule maps the zero window to a nonzero symbol");
  if (c.is_zero())
    return c;
  const auto rho = static_cast<std::size_t>(rule.radius());
  // Pad by 2ρ so every output cell in [offset - ρ, end + ρ) sees a full window.
  Word padded(c.word.size() + 4 * rho, kZero);
  std::copy(c.word.begin(), c.word.end(), padded.begin() + static_cast<std::ptrdiff_t>(2 * rho));
  Word out(c.word.size() + 2 * rho);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = rule.apply(padded.data() + i);
  return FiniteConfig::canonical(checked_add(c.offset, -static_cast<std::int64_t>(rho)),
                                 std::move(out));
}

std::vector<FiniteConfig> evolve(const CARule &rule, const FiniteConfig &c, std::int64_t steps) {
  if (steps < 0)
    throw Error(Errc::InvalidArgument, "steps must be nonnegative");
  if (!rule.zero_preserving())
    throw Error(Errc::NotZeroPreserving, "rule maps the zero window to a nonzero symbol");
  check_cells(static_cast<std::size_t>(steps) + 1, "trajectory");
  std::vector<FiniteConfig> out{FiniteConfig::canonical(c.offset, c.word)};
  for (std::int64_t t = 0; t < steps; ++t)
    out.push_back(step(rule, out.back()));
  return out;
}

std::vector<std::int64_t> asymptotic_profile(const CARule &rule, const FiniteConfig &c,
                                             std::int64_t horizon) {
  if (horizon < 0)
    throw Error(Errc::InvalidArgument, "horizon must be nonnegative");
  if (!rule.zero_preserving())
    throw Error(Errc::NotZeroPreserving, "rule maps the zero window to a nonzero symbol");
  std::vector<std::int64_t> out;
  FiniteConfig cur = FiniteConfig::canonical(c.offset, c.word);
  out.push_back(cur.support_size());
  for (std::int64_t t = 0; t < horizon; ++t) {
    cur = step(rule, cur);
    out.push_back(cur.support_size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gliders

namespace {

bool canonical_seed(const Word &w) { return !w.empty() && w.front() != kZero && w.back() != kZero; }

std::optional<Glider> try_seed(const CARule &rule, const Word &w, std::int64_t max_time) {
  FiniteConfig seed{0, w};
  FiniteConfig cur = seed;
  for (std::int64_t t = 1; t <= max_time; ++t) {
    cur = step(rule, cur);
    if (cur.is_zero())
      return std::nullopt;
    if (cur.word == seed.word)
      return Glider{seed, t, -cur.offset};
  }
  return std::nullopt;
}

void require_zero_preserving(const CARule &rule) {
  if (!rule.zero_preserving())
    throw Error(Errc::NotZeroPreserving, "rule maps the zero window to a nonzero symbol");
}

} // namespace

std::optional<Glider> find_glider(const CARule &rule, int max_width, std::int64_t max_time) {
  require_zero_preserving(rule);
  const auto base = rule.alphabet().size();
  for (int width = 1; width <= max_width; ++width) {
    const auto len = static_cast<std::size_t>(width);
    const auto n = static_cast<std::int64_t>(word_count(base, len, kTableCap));
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
    for (std::int64_t i = 0; i < n; ++i) {
      if (i > best)
        continue;
      auto w = word_at(static_cast<std::uint64_t>(i), len, base);
      if (canonical_seed(w) && try_seed(rule, w, max_time))
        best = std::min(best, i);
    }
    if (best != std::numeric_limits<std::int64_t>::max())
      return try_seed(rule, word_at(static_cast<std::uint64_t>(best), len, base), max_time);
  }
  return std::nullopt;
}

std::optional<Glider> serial::find_glider(const CARule &rule, int max_width,
                                          std::int64_t max_time) {
  require_zero_preserving(rule);
  const auto base = rule.alphabet().size();
  for (int width = 1; width <= max_width; ++width) {
    const auto len = static_cast<std::size_t>(width);
    const auto n = word_count(base, len, kTableCap);
    for (std::uint64_t i = 0; i < n; ++i) {
      auto w = word_at(i, len, base);
      if (!canonical_seed(w))
        continue;
      if (auto g = try_seed(rule, w, max_time))
        return g;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Nilpotency

Word cyclic_step(const CARule &rule, const Word &w) {
  const auto len = w.size();
  const auto rho = static_cast<std::int64_t>(rule.radius());
  Word window(rule.window_length());
  Word out(len);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::int64_t d = -rho; d <= rho; ++d) {
      auto j = (static_cast<std::int64_t>(i) + d) % static_cast<std::int64_t>(len);
      if (j < 0)
        j += static_cast<std::int64_t>(len);
      window[static_cast<std::size_t>(d + rho)] = w[static_cast<std::size_t>(j)];
    }
    out[i] = rule.apply(window.data());
  }
  return out;
}

std::string_view nilpotency_name(NilpotencyTag t) {
  switch (t) {
  case NilpotencyTag::NilpotentOnProbe:
    return "NilpotentOnProbe";
  case NilpotencyTag::NotNilpotent:
    return "NotNilpotent";
  case NilpotencyTag::Inconclusive:
    return "Inconclusive";
  }
  return "?";
}

NilpotencyVerdict nilpotency_probe(const CARule &rule, int max_width, std::int64_t max_time) {
  require_zero_preserving(rule);
  NilpotencyVerdict v;
  if (auto g = find_glider(rule, max_width, max_time)) {
    v.tag = NilpotencyTag::NotNilpotent;
    v.glider = std::move(g);
    return v;
  }
  const auto base = rule.alphabet().size();
  std::int64_t latest = 0;
  bool undecided = false;

  for (int width = 1; width <= max_width; ++width) {
    const auto len = static_cast<std::size_t>(width);
    const auto n = word_count(base, len, kTableCap);
    for (std::uint64_t i = 1; i < n; ++i) {
      const Word start = word_at(i, len, base);
      std::unordered_set<std::uint64_t> seen{i};
      Word cur = start;
      bool died = false;
      for (std::int64_t t = 1; t <= max_time; ++t) {
        cur = cyclic_step(rule, cur);
        auto idx = word_index(cur.data(), len, base);
        if (idx == 0) {
          latest = std::max(latest, t);
          died = true;
          break;
        }
        if (!seen.insert(idx).second) {
          v.tag = NilpotencyTag::NotNilpotent;
          v.cyclic = start;
          return v;
        }
      }
      undecided = undecided || !died;
    }
  }

  for (int width = 1; width <= max_width; ++width) {
    const auto len = static_cast<std::size_t>(width);
    const auto n = word_count(base, len, kTableCap);
    for (std::uint64_t i = 0; i < n; ++i) {
      auto w = word_at(i, len, base);
      if (!canonical_seed(w))
        continue;
      FiniteConfig cur{0, w};
      bool died = false;
      for (std::int64_t t = 1; t <= max_time; ++t) {
        cur = step(rule, cur);
        if (cur.is_zero()) {
          latest = std::max(latest, t);
          died = true;
          break;
        }
      }
      undecided = undecided || !died;
    }
  }
  if (undecided)
    return v;
  v.tag = NilpotencyTag::NilpotentOnProbe;
  v.steps = latest;
  return v;
}

} // namespace blobshift::ca
