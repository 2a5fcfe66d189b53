#include "blobshift/pattern_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "blobshift/error.hpp"

namespace blobshift {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size())
        lines.emplace_back(text.substr(start));
      break;
    }
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> words_of(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

std::int64_t parse_int(const std::string &s, const char *what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(Errc::Parse, std::string("bad ") + what + " '" + s + "'");
  return v;
}

} // namespace

std::string to_text(const Pattern &p, bool dot_zero) {
  Pattern t = p.trimmed();
  const Box &b = t.box();
  std::ostringstream out;
  std::int64_t w = b.empty() ? 0 : b.width;
  std::int64_t h = b.empty() ? 0 : b.height;
  if (p.dim() == 1)
    out << "dims " << w << "\n";
  else
    out << "dims " << w << " " << h << "\n";
  out << "alphabet " << p.alphabet().chars() << "\n";
  if (!b.empty() && (b.lo.x != 0 || b.lo.y != 0)) {
    if (p.dim() == 1)
      out << "origin " << b.lo.x << "\n";
    else
      out << "origin " << b.lo.x << " " << b.lo.y << "\n";
  }
  for (std::int64_t row = h - 1; row >= 0; --row) {
    std::string line;
    line.reserve(static_cast<std::size_t>(w));
    for (std::int64_t x = 0; x < w; ++x) {
      auto v = t.at({b.lo.x + x, b.lo.y + row});
      if (!v)
        line.push_back('?');
      else if (dot_zero && *v == kZero)
        line.push_back('.');
      else
        line.push_back(p.alphabet().symbol(*v));
    }
    out << line << "\n";
  }
  return out.str();
}

Pattern parse_pattern(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t at = 0;
  auto next_header = [&]() -> std::vector<std::string> {
    if (at >= lines.size())
      throw Error(Errc::Parse, "unexpected end of pattern text");
    return words_of(lines[at++]);
  };

  auto dims = next_header();
  if (dims.empty() || dims[0] != "dims" || dims.size() < 2 || dims.size() > 3)
    throw Error(Errc::Parse, "expected 'dims W' or 'dims W H'");
  int dim = dims.size() == 2 ? 1 : 2;
  std::int64_t w = parse_int(dims[1], "width");
  std::int64_t h = dim == 1 ? 1 : parse_int(dims[2], "height");
  if (w < 0 || h < 0)
    throw Error(Errc::Parse, "negative dimensions");
  if (dim == 1 && w == 0)
    h = 0;

  auto alpha = next_header();
  if (alpha.size() != 2 || alpha[0] != "alphabet")
    throw Error(Errc::Parse, "expected 'alphabet <symbols>'");
  Alphabet alphabet(alpha[1]);

  Cell origin{0, 0};
  if (at < lines.size() && lines[at].rfind("origin", 0) == 0) {
    auto o = words_of(lines[at++]);
    if (o.size() != static_cast<std::size_t>(dim) + 1)
      throw Error(Errc::Parse, "origin needs one coordinate per dimension");
    origin.x = parse_int(o[1], "origin");
    if (dim == 2)
      origin.y = parse_int(o[2], "origin");
  }

  Pattern p(dim, alphabet);
  if (w == 0 || h == 0)
    return p;
  p = Pattern::blank(dim, alphabet, Box{origin, w, h});
  for (std::int64_t row = h - 1; row >= 0; --row) {
    if (at >= lines.size())
      throw Error(Errc::Parse, "missing pattern rows");
    const std::string &line = lines[at++];
    if (static_cast<std::int64_t>(line.size()) != w)
      throw Error(Errc::Parse, "row of length " + std::to_string(line.size()) +
                                   ", expected " + std::to_string(w));
    for (std::int64_t x = 0; x < w; ++x) {
      char c = line[static_cast<std::size_t>(x)];
      if (c == '?')
        continue;
      auto s = alphabet.index(c);
      if (!s)
        throw Error(Errc::Parse, std::string("symbol '") + c + "' not in alphabet");
      p.set({origin.x + x, origin.y + row}, *s);
    }
  }
  for (; at < lines.size(); ++at)
    if (!lines[at].empty())
      throw Error(Errc::Parse, "trailing content after pattern rows");
  return p;
}

std::string to_pbm(const Pattern &p) {
  Pattern t = p.trimmed();
  const Box &b = t.box();
  std::int64_t w = b.empty() ? 0 : b.width;
  std::int64_t h = b.empty() ? 0 : b.height;
  std::string out = "P1\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
  for (std::int64_t row = h - 1; row >= 0; --row) {
    for (std::int64_t x = 0; x < w; ++x) {
      auto v = t.at({b.lo.x + x, b.lo.y + row});
      out.push_back(v && *v != kZero ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace blobshift
