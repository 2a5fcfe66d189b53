#include "blobshift/tfg.hpp"

#include <sstream>
#include <unordered_map>

#include "blobshift/error.hpp"

namespace blobshift::tfg {

namespace {

constexpr std::uint64_t kTableCap = std::uint64_t{1} << 22;

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

} // namespace

Element::Element(Alphabet alphabet, int radius, std::vector<std::int64_t> shifts)
    : alphabet_(std::move(alphabet)), radius_(radius), shifts_(std::move(shifts)) {
  if (radius_ < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  auto n = ca::word_count(alphabet_.size(), window_length(), kTableCap);
  if (shifts_.size() != n)
    throw Error(Errc::InvalidArgument, "cocycle table must list all " + std::to_string(n) + " windows");
  for (auto k : shifts_)
    if (k < -radius_ || k > radius_)
      throw Error(Errc::InvalidArgument, "shift " + std::to_string(k) + " exceeds the radius");
}

bool Element::is_identity() const {
  for (auto k : shifts_)
    if (k != 0)
      return false;
  return true;
}

Element parse_element(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line))
    header = tokens(line);
  if (header.size() != 4 || header[0] != "tfg" || header[2] != "radius")
    throw Error(Errc::Parse, "expected 'tfg <alphabet> radius <r>'");
  Alphabet alphabet(header[1]);
  int radius = 0;
  try {
    radius = std::stoi(header[3]);
  } catch (...) {
    throw Error(Errc::Parse, "bad radius '" + header[3] + "'");
  }
  if (radius < 0 || radius > 8)
    throw Error(Errc::Parse, "radius must lie in [0, 8]");
  const auto len = static_cast<std::size_t>(2 * radius + 1);
  const auto n = ca::word_count(alphabet.size(), len, kTableCap);
  std::vector<std::optional<std::int64_t>> table(n);
  bool defaulted = false;
  while (std::getline(in, line)) {
    auto t = tokens(line);
    if (t.empty())
      continue;
    if (defaulted)
      throw Error(Errc::Parse, "the '*' default must be the last rule");
    if (t.size() != 4 || t[1] != "->" || t[2] != "shift")
      throw Error(Errc::Parse, "expected '<word> -> shift <k>', got '" + line + "'");
    std::int64_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoll(t[3], &used);
      if (used != t[3].size())
        throw std::invalid_argument("trailing");
    } catch (...) {
      throw Error(Errc::Parse, "bad shift '" + t[3] + "'");
    }
    if (k < -radius || k > radius)
      throw Error(Errc::Parse, "shift " + t[3] + " exceeds the radius");
    if (t[0] == "*") {
      for (auto &v : table)
        if (!v)
          v = k;
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
    auto &slot = table[ca::word_index(w.data(), len, alphabet.size())];
    if (slot)
      throw Error(Errc::Parse, "duplicate window '" + t[0] + "'");
    slot = k;
  }
  std::vector<std::int64_t> shifts;
  shifts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!table[i])
      throw Error(Errc::Parse, "no shift for window '" +
                                   ca::decode(ca::word_at(i, len, alphabet.size()), alphabet) + "'");
    shifts.push_back(*table[i]);
  }
  return Element(alphabet, radius, std::move(shifts));
}

std::string to_text(const Element &g) {
  const auto &a = g.alphabet();
  std::string out = "tfg " + a.chars() + " radius " + std::to_string(g.radius()) + "\n";
  for (std::uint64_t i = 0; i < g.shifts().size(); ++i)
    if (g.shifts()[i] != 0)
      out += ca::decode(ca::word_at(i, g.window_length(), a.size()), a) + " -> shift " +
             std::to_string(g.shifts()[i]) + "\n";
  out += "* -> shift 0\n";
  return out;
}

namespace {

template <class F> Element tabulate(const Alphabet &a, int radius, F f) {
  const auto len = static_cast<std::size_t>(2 * radius + 1);
  const auto n = ca::word_count(a.size(), len, kTableCap);
  std::vector<std::int64_t> shifts(n);
  for (std::uint64_t i = 0; i < n; ++i)
    shifts[i] = f(ca::word_at(i, len, a.size()));
  return Element(a, radius, std::move(shifts));
}

} // namespace

Element identity(const Alphabet &alphabet) {
  return tabulate(alphabet, 0, [](const Word &) { return std::int64_t{0}; });
}

Element shift(const Alphabet &alphabet) {
  return tabulate(alphabet, 1, [](const Word &) { return std::int64_t{1}; });
}

Element block_swap() {
  return tabulate(Alphabet("01"), 1, [](const Word &w) -> std::int64_t {
    if (w[1] == 1 && w[2] == 0)
      return 1;
    if (w[0] == 1 && w[1] == 0)
      return -1;
    return 0;
  });
}

std::int64_t cocycle_at(const Element &g, const Word &x, std::int64_t pos, bool cyclic) {
  const auto rho = static_cast<std::int64_t>(g.radius());
  const auto n = static_cast<std::int64_t>(x.size());
  Word window(g.window_length(), kZero);
  for (std::int64_t d = -rho; d <= rho; ++d) {
    std::int64_t j = pos + d;
    if (cyclic) {
      j %= n;
      if (j < 0)
        j += n;
    } else if (j < 0 || j >= n) {
      continue;
    }
    window[static_cast<std::size_t>(d + rho)] = x[static_cast<std::size_t>(j)];
  }
  return g.cocycle(window.data());
}

std::optional<Collision> find_collision(const Element &g) {
  const int rho = g.radius();
  const auto base = g.alphabet().size();
  for (int mag = 1; mag <= 2 * rho; ++mag) {
    for (int sign : {1, -1}) {
      const std::int64_t d = sign * mag;
      const auto len = static_cast<std::size_t>(2 * rho + 1 + mag);
      const auto n = ca::word_count(base, len, kTableCap);
      // Point x is viewed at `cx`, point σ^d x at `cx + d`.
      const std::size_t cx = static_cast<std::size_t>(d > 0 ? rho : rho + mag);
      for (std::uint64_t i = 0; i < n; ++i) {
        auto w = ca::word_at(i, len, base);
        auto cx_shift = g.cocycle(w.data() + cx - static_cast<std::size_t>(rho));
        auto cy_shift = g.cocycle(w.data() + static_cast<std::ptrdiff_t>(cx) + d - rho);
        if (cy_shift + d == cx_shift)
          return Collision{std::move(w), d};
      }
    }
  }
  return std::nullopt;
}

const Element &validate(const Element &g) {
  if (auto c = find_collision(g)) {
    const auto rho = g.radius();
    const auto mag = c->d < 0 ? -c->d : c->d;
    const auto cx = c->d > 0 ? rho : rho + mag;
    throw Error(Errc::NotInvertible,
                "window " + ca::decode(c->x, g.alphabet()) + " viewed at " + std::to_string(cx) +
                    " and at " + std::to_string(cx + c->d) + " map to the same point");
  }
  return g;
}

Element compose(const Element &g, const Element &h) {
  if (g.alphabet() != h.alphabet())
    throw Error(Errc::InvalidArgument, "composing elements over different alphabets");
  const int rho = g.radius() + h.radius();
  const auto len = static_cast<std::size_t>(2 * rho + 1);
  const auto base = g.alphabet().size();
  const auto n = ca::word_count(base, len, kTableCap);
  std::vector<std::int64_t> shifts(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto w = ca::word_at(i, len, base);
    auto ch = h.cocycle(w.data() + (rho - h.radius()));
    auto cg = g.cocycle(w.data() + (rho + ch - g.radius()));
    shifts[i] = ch + cg;
  }
  return Element(g.alphabet(), rho, std::move(shifts));
}

std::string_view order_name(OrderTag t) {
  switch (t) {
  case OrderTag::Torsion:
    return "Torsion";
  case OrderTag::InfiniteOrder:
    return "InfiniteOrder";
  case OrderTag::Inconclusive:
    return "Inconclusive";
  }
  return "?";
}

OrderVerdict order_search(const Element &g, int max_order, int max_period) {
  if (max_order < 1 || max_period < 1)
    throw Error(Errc::InvalidArgument, "max_order and max_period must be positive");
  OrderVerdict v;
  const auto base = g.alphabet().size();
  Element power = g;
  for (int n = 1; n <= max_order; ++n) {
    v.max_checked_power = n;
    if (power.is_identity()) {
      v.tag = OrderTag::Torsion;
      v.order = n;
      return v;
    }
    if (n == max_order)
      break;
    const auto next_len = static_cast<std::size_t>(2 * (power.radius() + g.radius()) + 1);
    try {
      ca::word_count(base, next_len, kTableCap);
    } catch (const Error &) {
      break;
    }
    power = compose(g, power);
  }

  for (int p = 1; p <= max_period; ++p) {
    const auto len = static_cast<std::size_t>(p);
    const auto count = ca::word_count(base, len, kTableCap);
    for (std::uint64_t i = 0; i < count; ++i) {
      auto x = ca::word_at(i, len, base);
      // pos mod p determines the point, so a repeat appears within p + 1 steps.
      std::unordered_map<std::int64_t, std::pair<std::int64_t, std::int64_t>> seen;
      std::int64_t pos = 0;
      for (std::int64_t k = 0; k <= p; ++k) {
        std::int64_t r = ((pos % p) + p) % p;
        auto [it, fresh] = seen.emplace(r, std::make_pair(k, pos));
        if (!fresh) {
          auto drift = pos - it->second.second;
          if (drift != 0) {
            v.tag = OrderTag::InfiniteOrder;
            v.word = x;
            v.k = k - it->second.first;
            v.drift = drift;
            return v;
          }
          break;
        }
        pos += cocycle_at(g, x, pos, true);
      }
    }
  }
  return v;
}

} // namespace blobshift::tfg
