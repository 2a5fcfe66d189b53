#include "blobshift/paths.hpp"

#include <algorithm>
#include <deque>

#include "blobshift/error.hpp"
#include "blobshift/limits.hpp"

namespace blobshift::paths {

MoveWord::MoveWord(std::vector<std::int64_t> m, std::optional<std::int64_t> bound)
    : moves(std::move(m)) {
  std::int64_t widest = 1;
  for (auto v : moves) {
    if (v < -kCoordLimit || v > kCoordLimit)
      throw Error(Errc::Overflow, "move out of range");
    widest = std::max(widest, v < 0 ? -v : v);
  }
  if (bound) {
    if (*bound < widest)
      throw Error(Errc::InvalidArgument, "move exceeds the step bound " + std::to_string(*bound));
    step_bound = *bound;
  } else {
    step_bound = widest;
  }
}

MoveWord parse_move_word(std::string_view text) {
  std::vector<std::int64_t> moves;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == '0') {
      moves.push_back(0);
      ++i;
    } else if (c == '+' || c == '-') {
      std::int64_t sign = c == '+' ? 1 : -1;
      std::size_t j = i + 1;
      std::int64_t mag = 0;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
        mag = checked_add(checked_mul(mag, 10), text[j] - '0');
        ++j;
      }
      if (j == i + 1)
        mag = 1;
      moves.push_back(sign * mag);
      i = j;
    } else {
      throw Error(Errc::Parse, std::string("unexpected character '") + c + "' in move word");
    }
  }
  return MoveWord(std::move(moves));
}

std::string to_string(const MoveWord &w) {
  // A '0' right after a sign or a digit would be read as part of that move.
  std::string out;
  bool after_zero = false;
  for (auto m : w.moves) {
    const bool zero = m == 0;
    if (zero && !out.empty() && !after_zero)
      out.push_back(' ');
    after_zero = zero;
    if (zero) {
      out.push_back('0');
    } else {
      out.push_back(m > 0 ? '+' : '-');
      if (m != 1 && m != -1)
        out += std::to_string(m > 0 ? m : -m);
    }
  }
  return out;
}

MoveCoding default_coding(const Alphabet &alphabet) {
  MoveCoding coding{{alphabet.zero(), 0}};
  for (char c : alphabet.chars()) {
    if (c == '+')
      coding[c] = 1;
    else if (c == '-')
      coding[c] = -1;
    else if (c != alphabet.zero())
      throw Error(Errc::InvalidArgument,
                  std::string("symbol '") + c + "' has no default move; supply a coding");
  }
  return coding;
}

MoveCoding thue_morse_coding() { return {{'A', 1}, {'B', -1}, {'C', 0}, {'D', 0}}; }

MoveWord decode(std::string_view symbols, const MoveCoding &coding) {
  std::vector<std::int64_t> moves;
  moves.reserve(symbols.size());
  for (char c : symbols) {
    auto it = coding.find(c);
    if (it == coding.end())
      throw Error(Errc::InvalidArgument, std::string("symbol '") + c + "' has no move");
    moves.push_back(it->second);
  }
  return MoveWord(std::move(moves));
}

MoveWord derivative(const HeightWord &h) {
  if (h.heights.empty())
    throw Error(Errc::InvalidArgument, "derivative of an empty height word");
  std::vector<std::int64_t> moves(h.heights.size() - 1);
  for (std::size_t i = 0; i + 1 < h.heights.size(); ++i)
    moves[i] = h.heights[i + 1] - h.heights[i];
  return MoveWord(std::move(moves));
}

HeightWord integrate(const MoveWord &w) {
  HeightWord h;
  h.heights.resize(w.size() + 1);
  h.heights[0] = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    h.heights[i + 1] = checked_add(h.heights[i], w.moves[i]);
  return h;
}

VisitProfile visit_profile_from(const MoveWord &w, std::size_t center) {
  if (center > w.size())
    throw Error(Errc::InvalidArgument, "center lies outside the path");
  auto h = integrate(w);
  VisitProfile out;
  const auto base = h.heights[center];
  for (auto v : h.heights)
    ++out[v - base];
  return out;
}

VisitProfile visit_profile(const MoveWord &w) { return visit_profile_from(w, 0); }

std::optional<std::int64_t> ascension_constant(const MoveWord &w) {
  auto h = integrate(w).heights;
  const auto n = static_cast<std::int64_t>(w.size());
  for (std::int64_t m = 1; m <= n; ++m) {
    bool ok = true;
    for (std::int64_t i = 0; i + m <= n && ok; ++i)
      ok = h[static_cast<std::size_t>(i + m)] > h[static_cast<std::size_t>(i)];
    if (ok)
      return m;
  }
  return std::nullopt;
}

std::vector<MoveWord> factors(const std::vector<MoveWord> &words, std::size_t length) {
  std::vector<std::vector<std::int64_t>> found;
  for (const auto &w : words)
    for (std::size_t i = 0; i + length <= w.size(); ++i)
      found.emplace_back(w.moves.begin() + static_cast<std::ptrdiff_t>(i),
                         w.moves.begin() + static_cast<std::ptrdiff_t>(i + length));
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<MoveWord> out;
  out.reserve(found.size());
  for (auto &f : found)
    out.emplace_back(std::move(f));
  return out;
}

// ---------------------------------------------------------------------------
// Cut paths

namespace {

struct CutSearch {
  std::vector<MoveWord> candidates;
  std::vector<std::vector<std::int64_t>> windows; // prefix heights of each length-H factor
  std::vector<std::vector<std::int64_t>> window_moves;
  std::int64_t r;
};

CutSearch prepare_cut_search(const std::vector<MoveWord> &language, std::int64_t r,
                             std::int64_t horizon) {
  if (r < 1)
    throw Error(Errc::InvalidArgument, "r must be at least 1");
  if (horizon < 2)
    throw Error(Errc::InvalidArgument, "horizon must be at least 2");
  for (const auto &w : language)
    if (static_cast<std::int64_t>(w.size()) < horizon)
      throw Error(Errc::InvalidArgument, "horizon exceeds the language word length");
  CutSearch s;
  s.r = r;
  for (std::size_t len = 1; len <= static_cast<std::size_t>(horizon / 2); ++len) {
    auto f = factors(language, len);
    std::sort(f.begin(), f.end(), [](const MoveWord &a, const MoveWord &b) {
      return to_string(a) < to_string(b);
    });
    s.candidates.insert(s.candidates.end(), f.begin(), f.end());
  }
  for (auto &u : factors(language, static_cast<std::size_t>(horizon))) {
    s.windows.push_back(integrate(u).heights);
    s.window_moves.push_back(u.moves);
  }
  return s;
}

bool refuted(const CutSearch &s, const MoveWord &w) {
  const auto n = w.size();
  for (std::size_t k = 0; k < s.windows.size(); ++k) {
    const auto &u = s.window_moves[k];
    const auto &h = s.windows[k];
    for (std::size_t at = 0; at + n <= u.size(); ++at) {
      if (!std::equal(w.moves.begin(), w.moves.end(), u.begin() + static_cast<std::ptrdiff_t>(at)))
        continue;
      for (std::size_t j = 0; j < h.size(); ++j) {
        if (j >= at && j <= at + n)
          continue;
        auto rel = h[j] - h[at];
        if (rel >= 0 && rel <= s.r - 1)
          return true;
      }
    }
  }
  return false;
}

} // namespace

std::optional<MoveWord> cut_path_search(const std::vector<MoveWord> &language, std::int64_t r,
                                        std::int64_t horizon) {
  auto s = prepare_cut_search(language, r, horizon);
  const auto count = static_cast<std::int64_t>(s.candidates.size());
  std::vector<char> bad(s.candidates.size(), 1);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i)
    bad[static_cast<std::size_t>(i)] = refuted(s, s.candidates[static_cast<std::size_t>(i)]);
  for (std::size_t i = 0; i < bad.size(); ++i)
    if (!bad[i])
      return s.candidates[i];
  return std::nullopt;
}

std::optional<MoveWord> serial::cut_path_search(const std::vector<MoveWord> &language,
                                                std::int64_t r, std::int64_t horizon) {
  auto s = prepare_cut_search(language, r, horizon);
  for (const auto &c : s.candidates)
    if (!refuted(s, c))
      return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view path_class_name(PathClass c) {
  switch (c) {
  case PathClass::Ascending:
    return "Ascending";
  case PathClass::Descending:
    return "Descending";
  case PathClass::Bounded:
    return "Bounded";
  case PathClass::UnboundedRecurrent:
    return "UnboundedRecurrent";
  case PathClass::Inconclusive:
    return "Inconclusive";
  }
  return "?";
}

std::int64_t max_window_range(const HeightWord &hw, std::size_t moves) {
  const auto &h = hw.heights;
  const std::size_t span = std::min(moves + 1, h.size());
  std::deque<std::size_t> lo, hi;
  std::int64_t best = 0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    while (!lo.empty() && h[lo.back()] >= h[j])
      lo.pop_back();
    while (!hi.empty() && h[hi.back()] <= h[j])
      hi.pop_back();
    lo.push_back(j);
    hi.push_back(j);
    if (lo.front() + span <= j)
      lo.pop_front();
    if (hi.front() + span <= j)
      hi.pop_front();
    if (j + 1 >= span)
      best = std::max(best, h[hi.front()] - h[lo.front()]);
  }
  return best;
}

namespace {

std::optional<std::int64_t> least_monotone_window(const std::vector<std::int64_t> &h,
                                                  std::int64_t horizon, int sign) {
  const auto n = static_cast<std::int64_t>(h.size()) - 1;
  for (std::int64_t m = 1; m <= std::min(horizon, n); ++m) {
    bool ok = true;
    for (std::int64_t i = 0; i + m <= n && ok; ++i)
      ok = sign * (h[static_cast<std::size_t>(i + m)] - h[static_cast<std::size_t>(i)]) > 0;
    if (ok)
      return m;
  }
  return std::nullopt;
}

} // namespace

PathClassVerdict classify_path_space(const subst::Substitution1D &s, std::int64_t horizon,
                                     const ClassifyOptions &options) {
  if (horizon < 2)
    throw Error(Errc::InvalidArgument, "horizon must be at least 2");
  if (options.r < 1)
    throw Error(Errc::InvalidArgument, "r must be at least 1");
  const auto &alphabet = s.alphabet();
  std::string seed;
  if (options.seed) {
    seed = *options.seed;
  } else {
    if (alphabet.size() < 2)
      throw Error(Errc::InvalidArgument, "alphabet has no nonzero symbol");
    seed = std::string(1, alphabet.symbol(1));
  }
  if (seed.empty())
    throw Error(Errc::InvalidArgument, "seed must be nonempty");
  MoveCoding coding = options.coding ? *options.coding : default_coding(alphabet);

  const BigInt want = std::max(BigInt(4) * horizon, BigInt(horizon) * horizon);
  int n = 0;
  BigInt len = s.image_length(seed, 0);
  while (len < want) {
    BigInt next = s.image_length(seed, n + 1);
    if (next <= len)
      throw Error(Errc::InvalidArgument, "substitution does not grow the seed");
    len = next;
    ++n;
  }
  const MoveWord w = decode(subst::iterate_1d(s, seed, n), coding);
  const auto h = integrate(w).heights;

  PathClassVerdict v;
  v.horizon = horizon;
  v.iterations = n;
  v.word_length = static_cast<std::int64_t>(w.size());
  v.range_at_horizon = max_window_range(HeightWord{h}, static_cast<std::size_t>(horizon));
  std::size_t longest_image = 1;
  for (const auto &[c, img] : s.rules())
    longest_image = std::max(longest_image, img.size());
  v.shorter_window = std::max<std::int64_t>(1, horizon / static_cast<std::int64_t>(longest_image));
  v.range_at_shorter_window =
      max_window_range(HeightWord{h}, static_cast<std::size_t>(v.shorter_window));

  if (auto m = least_monotone_window(h, horizon, +1)) {
    v.tag = PathClass::Ascending;
    v.constant = *m;
    return v;
  }
  if (auto m = least_monotone_window(h, horizon, -1)) {
    v.tag = PathClass::Descending;
    v.constant = *m;
    return v;
  }
  if (v.range_at_horizon == v.range_at_shorter_window) {
    v.tag = PathClass::Bounded;
    v.constant = v.range_at_horizon;
    return v;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::vector<std::int64_t> hits;
    for (std::size_t j = i + 1; j < h.size() && static_cast<std::int64_t>(hits.size()) < horizon; ++j) {
      auto rel = h[j] - h[i];
      if (rel >= 0 && rel <= options.r - 1)
        hits.push_back(static_cast<std::int64_t>(j - i));
    }
    if (static_cast<std::int64_t>(hits.size()) == horizon) {
      v.tag = PathClass::UnboundedRecurrent;
      v.witness_start = static_cast<std::int64_t>(i);
      v.witness = MoveWord(std::vector<std::int64_t>(
          w.moves.begin() + static_cast<std::ptrdiff_t>(i),
          w.moves.begin() + static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(hits.back()))));
      v.returns = std::move(hits);
      return v;
    }
  }
  v.tag = PathClass::Inconclusive;
  return v;
}

} // namespace blobshift::paths
