#include "blobshift/pattern.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "blobshift/error.hpp"
#include "blobshift/limits.hpp"

namespace blobshift {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet() : chars_("01") {}

Alphabet::Alphabet(std::string_view chars) : chars_(chars) {
  if (chars_.empty())
    throw Error(Errc::InvalidArgument, "alphabet needs at least the zero symbol");
  if (chars_.size() > 127)
    throw Error(Errc::InvalidArgument, "alphabet too large");
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    char c = chars_[i];
    if (c == '?' || c <= ' ' || c == 127)
      throw Error(Errc::InvalidArgument, std::string("reserved alphabet character '") + c + "'");
    if (c == '.' && i != 0)
      throw Error(Errc::InvalidArgument, "'.' may only be the zero symbol");
    if (chars_.find(c, i + 1) != std::string::npos)
      throw Error(Errc::InvalidArgument, std::string("duplicate alphabet symbol '") + c + "'");
  }
}

std::optional<Symbol> Alphabet::index(char c) const {
  if (c == '.')
    return kZero;
  auto pos = chars_.find(c);
  if (pos == std::string::npos)
    return std::nullopt;
  return static_cast<Symbol>(pos);
}

Symbol Alphabet::require(char c) const {
  auto s = index(c);
  if (!s)
    throw Error(Errc::InvalidArgument,
                std::string("symbol '") + c + "' not in alphabet \"" + chars_ + "\"");
  return *s;
}

// ---------------------------------------------------------------------------
// Pattern storage

Box bounding_box(std::span<const Cell> cells, int dim) {
  if (cells.empty())
    return {};
  Cell lo = cells.front(), hi = cells.front();
  for (Cell c : cells) {
    lo.x = std::min(lo.x, c.x);
    lo.y = std::min(lo.y, c.y);
    hi.x = std::max(hi.x, c.x);
    hi.y = std::max(hi.y, c.y);
  }
  if (dim == 1)
    return {{lo.x, 0}, hi.x - lo.x + 1, 1};
  return {lo, hi.x - lo.x + 1, hi.y - lo.y + 1};
}

Pattern::Pattern() = default;

Pattern::Pattern(int dim, Alphabet alphabet) : dim_(dim), alphabet_(std::move(alphabet)) {
  if (dim != 1 && dim != 2)
    throw Error(Errc::InvalidArgument, "dimension must be 1 or 2");
}

Pattern::Pattern(int dim, Alphabet alphabet, Box box, Symbol fill)
    : Pattern(dim, std::move(alphabet)) {
  if (box.empty())
    return;
  if (dim == 1 && (box.height != 1 || box.lo.y != 0))
    throw Error(Errc::InvalidArgument, "1D box must have height 1 at y = 0");
  check_coord(box.lo.x, "box");
  check_coord(box.lo.y, "box");
  check_coord(box.lo.x + box.width, "box");
  check_coord(box.lo.y + box.height, "box");
  check_cells(static_cast<std::size_t>(box.area()), "pattern");
  if (fill >= alphabet_.size())
    throw Error(Errc::InvalidArgument, "fill symbol outside alphabet");
  box_ = box;
  codes_.assign(static_cast<std::size_t>(box.area()), static_cast<std::int16_t>(fill));
}

Pattern Pattern::blank(int dim, Alphabet alphabet, Box box) {
  Pattern p(dim, std::move(alphabet), box, kZero);
  std::fill(p.codes_.begin(), p.codes_.end(), std::int16_t{-1});
  return p;
}

Pattern Pattern::from_word(std::string_view word, const Alphabet &alphabet,
                           std::int64_t offset) {
  Pattern p(1, alphabet, Box{{offset, 0}, static_cast<std::int64_t>(word.size()), 1});
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == '?')
      p.codes_[i] = -1;
    else
      p.codes_[i] = alphabet.require(word[i]);
  }
  return p;
}

std::size_t Pattern::offset_of(Cell c) const {
  return static_cast<std::size_t>((c.y - box_.lo.y) * box_.width + (c.x - box_.lo.x));
}

bool Pattern::in_domain(Cell c) const {
  return box_.contains(c) && codes_[offset_of(c)] >= 0;
}

std::optional<Symbol> Pattern::at(Cell c) const {
  if (!box_.contains(c))
    return std::nullopt;
  auto v = codes_[offset_of(c)];
  if (v < 0)
    return std::nullopt;
  return static_cast<Symbol>(v);
}

Symbol Pattern::value(Cell c) const {
  auto v = at(c);
  if (!v)
    throw Error(Errc::InvalidArgument, "cell (" + std::to_string(c.x) + "," +
                                           std::to_string(c.y) + ") outside domain");
  return *v;
}

void Pattern::grow_to(Box box) {
  if (box == box_)
    return;
  check_coord(box.lo.x, "pattern");
  check_coord(box.lo.y, "pattern");
  check_coord(box.lo.x + box.width, "pattern");
  check_coord(box.lo.y + box.height, "pattern");
  check_cells(static_cast<std::size_t>(box.area()), "pattern");
  std::vector<std::int16_t> next(static_cast<std::size_t>(box.area()), -1);
  for (std::int64_t y = 0; y < box_.height; ++y)
    for (std::int64_t x = 0; x < box_.width; ++x) {
      Cell c{box_.lo.x + x, box_.lo.y + y};
      next[static_cast<std::size_t>((c.y - box.lo.y) * box.width + (c.x - box.lo.x))] =
          codes_[static_cast<std::size_t>(y * box_.width + x)];
    }
  box_ = box;
  codes_ = std::move(next);
}

void Pattern::set(Cell c, Symbol s) {
  if (dim_ == 1 && c.y != 0)
    throw Error(Errc::InvalidArgument, "1D pattern cells have y = 0");
  if (s >= alphabet_.size())
    throw Error(Errc::InvalidArgument, "symbol outside alphabet");
  if (!box_.contains(c)) {
    if (box_.empty()) {
      grow_to(Box{c, 1, 1});
    } else {
      Cell lo{std::min(box_.lo.x, c.x), std::min(box_.lo.y, c.y)};
      Cell hi{std::max(box_.hi().x, c.x), std::max(box_.hi().y, c.y)};
      grow_to(Box{lo, hi.x - lo.x + 1, hi.y - lo.y + 1});
    }
  }
  codes_[offset_of(c)] = s;
}

void Pattern::erase(Cell c) {
  if (box_.contains(c))
    codes_[offset_of(c)] = -1;
}

std::vector<Cell> Pattern::domain() const {
  std::vector<Cell> out;
  for (std::int64_t x = 0; x < box_.width; ++x)
    for (std::int64_t y = 0; y < box_.height; ++y)
      if (codes_[static_cast<std::size_t>(y * box_.width + x)] >= 0)
        out.push_back({box_.lo.x + x, box_.lo.y + y});
  return out;
}

std::vector<Cell> Pattern::support() const {
  std::vector<Cell> out;
  for (std::int64_t x = 0; x < box_.width; ++x)
    for (std::int64_t y = 0; y < box_.height; ++y)
      if (codes_[static_cast<std::size_t>(y * box_.width + x)] > 0)
        out.push_back({box_.lo.x + x, box_.lo.y + y});
  return out;
}

std::size_t Pattern::domain_size() const {
  return static_cast<std::size_t>(
      std::count_if(codes_.begin(), codes_.end(), [](auto v) { return v >= 0; }));
}

std::size_t Pattern::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(codes_.begin(), codes_.end(), [](auto v) { return v > 0; }));
}

Pattern Pattern::translated(Cell v) const {
  if (dim_ == 1 && v.y != 0)
    throw Error(Errc::InvalidArgument, "1D translation must have y = 0");
  Pattern out = *this;
  if (box_.empty())
    return out;
  out.box_.lo = box_.lo + v;
  check_coord(out.box_.lo.x, "translation");
  check_coord(out.box_.lo.y, "translation");
  check_coord(out.box_.lo.x + out.box_.width, "translation");
  check_coord(out.box_.lo.y + out.box_.height, "translation");
  return out;
}

Pattern Pattern::trimmed() const {
  auto dom = domain();
  Pattern out(dim_, alphabet_);
  if (dom.empty())
    return out;
  out.grow_to(bounding_box(dom, dim_));
  for (Cell c : dom)
    out.codes_[out.offset_of(c)] = codes_[offset_of(c)];
  return out;
}

Pattern Pattern::with_margin(std::int64_t margin) const {
  if (margin < 0)
    throw Error(Errc::InvalidArgument, "negative margin");
  if (box_.empty())
    return *this;
  Box box = box_;
  box.lo.x -= margin;
  box.width += 2 * margin;
  if (dim_ == 2) {
    box.lo.y -= margin;
    box.height += 2 * margin;
  }
  Pattern out = *this;
  out.grow_to(box);
  for (std::int64_t y = 0; y < box.height; ++y)
    for (std::int64_t x = 0; x < box.width; ++x) {
      Cell c{box.lo.x + x, box.lo.y + y};
      if (!box_.contains(c))
        out.codes_[out.offset_of(c)] = kZero;
    }
  return out;
}

std::string Pattern::word() const {
  if (dim_ != 1)
    throw Error(Errc::InvalidArgument, "word() needs a 1D pattern");
  std::string out;
  out.reserve(codes_.size());
  for (auto v : codes_)
    out.push_back(v < 0 ? '?' : alphabet_.symbol(static_cast<Symbol>(v)));
  return out;
}

bool Pattern::operator==(const Pattern &other) const {
  if (dim_ != other.dim_ || alphabet_ != other.alphabet_)
    return false;
  auto a = domain();
  auto b = other.domain();
  if (a != b)
    return false;
  for (Cell c : a)
    if (*at(c) != *other.at(c))
      return false;
  return true;
}

std::size_t blob_hash(const Blob &b) {
  std::size_t h = std::hash<std::int64_t>{}(b.radius);
  CellHash ch;
  for (Cell c : b.pattern.support())
    h = h * 1000003u ^ (ch(c) + b.pattern.value(c));
  return h;
}

// ---------------------------------------------------------------------------
// Geometry

std::vector<Cell> l1_ball_offsets(std::int64_t r, int dim) {
  std::vector<Cell> out;
  if (dim == 1) {
    for (std::int64_t dx = -r; dx <= r; ++dx)
      out.push_back({dx, 0});
    return out;
  }
  for (std::int64_t dx = -r; dx <= r; ++dx) {
    std::int64_t rest = r - (dx < 0 ? -dx : dx);
    for (std::int64_t dy = -rest; dy <= rest; ++dy)
      out.push_back({dx, dy});
  }
  return out;
}

std::vector<Cell> padded_cells(std::span<const Cell> cells, std::int64_t r, int dim) {
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  std::vector<Cell> out;
  if (cells.empty())
    return out;
  for (Cell c : cells) {
    check_coord(c.x + (c.x < 0 ? -r : r), "padding");
    check_coord(c.y + (c.y < 0 ? -r : r), "padding");
  }
  if (dim == 1) {
    std::vector<std::int64_t> xs;
    xs.reserve(cells.size());
    for (Cell c : cells)
      xs.push_back(c.x);
    std::sort(xs.begin(), xs.end());
    std::int64_t covered = xs.front() - r - 1;
    for (auto x : xs) {
      for (std::int64_t v = std::max(covered + 1, x - r); v <= x + r; ++v)
        out.push_back({v, 0});
      covered = std::max(covered, x + r);
    }
    return out;
  }
  // Multi-source BFS over the 4-neighbour grid realizes L1 distance exactly.
  Box box = bounding_box(cells, 2);
  box.lo.x -= r;
  box.lo.y -= r;
  box.width += 2 * r;
  box.height += 2 * r;
  auto ball = static_cast<std::size_t>(2 * r * r + 2 * r + 1);
  if (static_cast<std::size_t>(box.area()) > cells.size() * ball) {
    std::unordered_set<Cell, CellHash> seen;
    auto offsets = l1_ball_offsets(r, 2);
    for (Cell c : cells)
      for (Cell o : offsets)
        seen.insert(c + o);
    out.assign(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  check_cells(static_cast<std::size_t>(box.area()), "padding window");
  std::vector<std::int64_t> dist(static_cast<std::size_t>(box.area()), -1);
  auto idx = [&](Cell c) {
    return static_cast<std::size_t>((c.y - box.lo.y) * box.width + (c.x - box.lo.x));
  };
  std::deque<Cell> queue;
  for (Cell c : cells)
    if (dist[idx(c)] < 0) {
      dist[idx(c)] = 0;
      queue.push_back(c);
    }
  const Cell steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    auto d = dist[idx(c)];
    if (d == r)
      continue;
    for (Cell s : steps) {
      Cell n = c + s;
      if (!box.contains(n) || dist[idx(n)] >= 0)
        continue;
      dist[idx(n)] = d + 1;
      queue.push_back(n);
    }
  }
  for (std::int64_t x = 0; x < box.width; ++x)
    for (std::int64_t y = 0; y < box.height; ++y)
      if (dist[static_cast<std::size_t>(y * box.width + x)] >= 0)
        out.push_back({box.lo.x + x, box.lo.y + y});
  return out;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a)
      a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  auto q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

} // namespace

std::vector<std::vector<Cell>> connected_components(std::span<const Cell> input,
                                                    std::int64_t r, int dim) {
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  std::vector<Cell> cells(input.begin(), input.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::vector<std::vector<Cell>> out;
  if (cells.empty())
    return out;

  DisjointSets sets(cells.size());
  if (dim == 1) {
    for (std::size_t i = 1; i < cells.size(); ++i)
      if (cells[i].x - cells[i - 1].x <= r)
        sets.unite(i - 1, i);
  } else {
    // Buckets of side max(r, 1): r-neighbours live in adjacent buckets.
    const std::int64_t side = std::max<std::int64_t>(r, 1);
    std::unordered_map<Cell, std::vector<std::size_t>, CellHash> buckets;
    auto bucket_of = [&](Cell c) { return Cell{floor_div(c.x, side), floor_div(c.y, side)}; };
    for (std::size_t i = 0; i < cells.size(); ++i)
      buckets[bucket_of(cells[i])].push_back(i);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      Cell b = bucket_of(cells[i]);
      for (std::int64_t dx = -1; dx <= 1; ++dx)
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          auto it = buckets.find({b.x + dx, b.y + dy});
          if (it == buckets.end())
            continue;
          for (auto j : it->second)
            if (j > i && l1_distance(cells[i], cells[j]) <= r)
              sets.unite(i, j);
        }
    }
  }

  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto root = sets.find(i);
    auto [it, fresh] = slot.try_emplace(root, out.size());
    if (fresh)
      out.emplace_back();
    out[it->second].push_back(cells[i]);
  }
  // Cells were visited in sorted order, so each component is sorted and the
  // components are already ordered by least member.
  return out;
}

// ---------------------------------------------------------------------------
// Blobs

Blob make_blob(const Pattern &source, std::span<const Cell> component, std::int64_t r) {
  if (component.empty())
    throw Error(Errc::InvalidArgument, "blob needs a nonempty support");
  Cell anchor = *std::min_element(component.begin(), component.end());
  auto padded = padded_cells(component, r, source.dim());
  Box box = bounding_box(padded, source.dim());
  box.lo = box.lo - anchor;
  auto p = Pattern::blank(source.dim(), source.alphabet(), box);
  for (Cell c : padded)
    p.set(c - anchor, kZero);
  for (Cell c : component)
    p.set(c - anchor, source.value(c));
  return Blob{std::move(p), r};
}

std::vector<BlobOccurrence> blob_occurrences(const Pattern &p, std::int64_t r) {
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  std::vector<BlobOccurrence> out;
  auto support = p.support();
  for (const auto &comp : connected_components(support, r, p.dim())) {
    bool truncated = false;
    for (Cell c : padded_cells(comp, r, p.dim()))
      if (!p.in_domain(c)) {
        truncated = true;
        break;
      }
    out.push_back({make_blob(p, comp, r), comp.front(), truncated});
  }
  return out;
}

std::vector<PlacedBlob> blobs(const Pattern &p, std::int64_t r) {
  std::vector<PlacedBlob> out;
  for (auto &occ : blob_occurrences(p, r)) {
    if (occ.truncated)
      throw Error(Errc::PaddingUnavailable,
                  "padding of the component at (" + std::to_string(occ.anchor.x) + "," +
                      std::to_string(occ.anchor.y) + ") exits the pattern domain");
    out.push_back({std::move(occ.blob), occ.anchor});
  }
  return out;
}

Pattern zero_glue(const Pattern &p, const Pattern &q) {
  if (p.dim() != q.dim() || p.alphabet() != q.alphabet())
    throw Error(Errc::InvalidArgument, "gluing patterns of different dimension or alphabet");
  auto dp = p.domain();
  auto dq = q.domain();
  std::vector<Cell> all = dp;
  all.insert(all.end(), dq.begin(), dq.end());
  Pattern out(p.dim(), p.alphabet());
  if (all.empty())
    return out;
  Box box = bounding_box(all, p.dim());
  out = Pattern::blank(p.dim(), p.alphabet(), box);
  for (Cell c : dp)
    out.set(c, p.value(c));
  for (Cell c : dq) {
    Symbol s = q.value(c);
    if (auto prev = p.at(c)) {
      if (*prev != kZero || s != kZero)
        throw Error(Errc::GlueConflict, "overlap at (" + std::to_string(c.x) + "," +
                                            std::to_string(c.y) + ") is not all-zero");
      continue;
    }
    out.set(c, s);
  }
  return out;
}

std::vector<Cell> occurrences(const Pattern &p, const Pattern &q, std::optional<Box> window) {
  if (p.dim() != q.dim())
    throw Error(Errc::InvalidArgument, "occurrence search across dimensions");
  std::vector<Cell> out;
  auto qdom = q.domain();
  if (qdom.empty()) {
    Box w = window ? *window : p.box();
    for (std::int64_t x = 0; x < w.width; ++x)
      for (std::int64_t y = 0; y < w.height; ++y)
        out.push_back({w.lo.x + x, w.lo.y + y});
    return out;
  }
  auto pdom = p.domain();
  if (pdom.empty())
    return out;
  Box pb = bounding_box(pdom, p.dim());
  Box qb = bounding_box(qdom, q.dim());
  Cell lo{pb.lo.x - qb.lo.x, pb.lo.y - qb.lo.y};
  Cell hi{pb.hi().x - qb.hi().x, pb.hi().y - qb.hi().y};
  if (window) {
    lo = {std::max(lo.x, window->lo.x), std::max(lo.y, window->lo.y)};
    hi = {std::min(hi.x, window->hi().x), std::min(hi.y, window->hi().y)};
  }
  for (std::int64_t vx = lo.x; vx <= hi.x; ++vx)
    for (std::int64_t vy = lo.y; vy <= hi.y; ++vy) {
      Cell v{vx, vy};
      bool ok = true;
      for (Cell c : qdom) {
        auto pv = p.at(c + v);
        if (!pv || *pv != *q.at(c)) {
          ok = false;
          break;
        }
      }
      if (ok)
        out.push_back(v);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Rows, width, density

std::vector<Pattern> rows_of(const Pattern &p) {
  if (p.dim() == 1)
    return {p};
  std::vector<Pattern> out;
  const Box &b = p.box();
  for (std::int64_t y = b.lo.y; y < b.lo.y + b.height; ++y) {
    Pattern row(1, p.alphabet());
    for (std::int64_t x = b.lo.x; x < b.lo.x + b.width; ++x)
      if (auto v = p.at({x, y}))
        row.set({x, 0}, *v);
    out.push_back(std::move(row));
  }
  return out;
}

std::int64_t interval_cover(std::span<const std::int64_t> xs, std::int64_t r) {
  std::int64_t count = 0;
  std::size_t i = 0;
  while (i < xs.size()) {
    ++count;
    const std::int64_t reach = xs[i] + 2 * r;
    while (i < xs.size() && xs[i] <= reach)
      ++i;
  }
  return count;
}

std::int64_t essential_width_lower_bound(std::span<const Pattern> rows, std::int64_t r) {
  if (r < 0)
    throw Error(Errc::InvalidArgument, "radius must be nonnegative");
  std::int64_t best = 0;
  for (const auto &row : rows) {
    std::vector<std::int64_t> xs;
    for (Cell c : row.support())
      xs.push_back(c.x);
    std::sort(xs.begin(), xs.end());
    best = std::max(best, interval_cover(xs, r));
  }
  return best;
}

std::int64_t sparsity(std::span<const Pattern> rows) {
  std::int64_t best = 0;
  for (const auto &row : rows)
    best = std::max(best, static_cast<std::int64_t>(row.support_size()));
  return best;
}

Rational density_window(const Pattern &p, std::int64_t window) {
  if (p.dim() != 1)
    throw Error(Errc::InvalidArgument, "density_window needs a 1D pattern");
  const Box &b = p.box();
  if (window < 1 || window > b.width)
    throw Error(Errc::InvalidArgument, "window must lie in [1, pattern length]");
  std::int64_t best = -1;
  for (std::int64_t start = b.lo.x; start + window <= b.lo.x + b.width; ++start) {
    std::int64_t count = 0;
    bool complete = true;
    for (std::int64_t x = start; x < start + window; ++x) {
      auto v = p.at({x, 0});
      if (!v) {
        complete = false;
        break;
      }
      count += (*v != kZero);
    }
    if (complete)
      best = std::max(best, count);
  }
  if (best < 0)
    throw Error(Errc::InvalidArgument, "no window lies fully inside the domain");
  return Rational(best, window);
}

Pattern sparse_not_uniform_family(std::int64_t n) {
  if (n < 1)
    throw Error(Errc::InvalidArgument, "n must be at least 1");
  std::int64_t top = checked_add(checked_mul(n, n), n);
  check_coord(top, "family window");
  Pattern p(1, Alphabet("01"), Box{{-n, 0}, top + n + 1, 1}, kZero);
  for (std::int64_t x = 0; x <= n * n; x += n)
    p.set({x, 0}, 1);
  return p;
}

} // namespace blobshift
