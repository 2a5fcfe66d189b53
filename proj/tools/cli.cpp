#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "blobshift/automata.hpp"
#include "blobshift/blobfractal.hpp"
#include "blobshift/error.hpp"
#include "blobshift/pathcover.hpp"
#include "blobshift/paths.hpp"
#include "blobshift/pattern_io.hpp"
#include "blobshift/primes.hpp"
#include "blobshift/render.hpp"
#include "blobshift/substitution.hpp"
#include "blobshift/tfg.hpp"

namespace blobshift::cli {

using Json = nlohmann::ordered_json;

std::string fnv1a_hex(const std::string &data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Flags shared by every leaf command.
struct Common {
  std::string out;
  std::string format = "json";
  std::string seed_file;
  std::uint64_t budget = 1'000'000;
};

// What a command produced: a JSON result, or raw bytes for non-JSON formats.
struct Output {
  Json result;
  std::string raw;
  bool is_raw = false;
};

class Session {
public:
  explicit Session(const std::vector<std::string> &args) {
    for (const auto &a : args) {
      digest_input_ += a;
      digest_input_.push_back('\0');
    }
  }

  std::string read(const std::string &path) {
    auto text = read_file(path);
    digest_input_ += path;
    digest_input_.push_back('\0');
    digest_input_ += text;
    digest_input_.push_back('\0');
    return text;
  }

  Pattern pattern(const std::string &path) { return parse_pattern(read(path)); }

  std::string digest() const { return fnv1a_hex(digest_input_); }

private:
  std::string digest_input_;
};

Json cell_json(Cell c) { return Json::array({c.x, c.y}); }

Json cells_json(const std::vector<Cell> &cells) {
  Json a = Json::array();
  for (Cell c : cells)
    a.push_back(cell_json(c));
  return a;
}

Json pattern_json(const Pattern &p) {
  Pattern t = p.trimmed();
  const Box &b = t.box();
  Json j;
  j["dim"] = p.dim();
  j["origin"] = cell_json(b.empty() ? Cell{} : b.lo);
  j["width"] = b.empty() ? 0 : b.width;
  j["height"] = b.empty() ? 0 : b.height;
  j["support_size"] = p.support_size();
  j["text"] = to_text(p);
  return j;
}

Output pattern_output(const Pattern &p, const Common &c) {
  Format f = parse_format(c.format);
  if (f == Format::Json)
    return {pattern_json(p), "", false};
  return {Json(), render(p, f), true};
}

Output json_only(Json j, const Common &c) {
  Format f = parse_format(c.format);
  if (f != Format::Json)
    throw Error(Errc::UnsupportedFormat,
                "this command reports JSON only, not " + std::string(format_name(f)));
  return {std::move(j), "", false};
}

std::vector<std::int64_t> int_list(const std::string &text, const char *what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw Error(Errc::Parse, std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

paths::MoveCoding coding_from(const std::string &text) {
  paths::MoveCoding coding;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto eq = item.find('=');
    if (eq != 1)
      throw Error(Errc::Parse, "coding entries look like 'A=1', got '" + item + "'");
    try {
      coding[item[0]] = std::stoll(item.substr(2));
    } catch (const std::exception &) {
      throw Error(Errc::Parse, "bad move in coding entry '" + item + "'");
    }
  }
  return coding;
}

subst::AnySubstitution builtin_substitution(const std::string &name) {
  if (name == "plus")
    return subst::plus_substitution();
  if (name == "cantor")
    return subst::cantor_substitution();
  if (name == "tau1")
    return subst::path_tau1();
  if (name == "tau2")
    return subst::path_tau2();
  if (name == "tau3")
    return subst::path_tau3();
  if (name == "up")
    return subst::path_constant_up();
  if (name == "thue-morse")
    return subst::thue_morse_difference();
  throw Error(Errc::InvalidArgument, "unknown builtin substitution '" + name + "'");
}

ca::CARule builtin_rule(const std::string &name) {
  if (name == "zero")
    return ca::zero_rule();
  if (name == "identity")
    return ca::identity_rule();
  if (name == "shift")
    return ca::shift_rule();
  if (name == "decrement")
    return ca::decrement_rule();
  if (name == "xor")
    return ca::xor_rule();
  throw Error(Errc::InvalidArgument, "unknown builtin rule '" + name + "'");
}

tfg::Element builtin_element(const std::string &name) {
  if (name == "identity")
    return tfg::identity();
  if (name == "shift")
    return tfg::shift();
  if (name == "swap")
    return tfg::block_swap();
  throw Error(Errc::InvalidArgument, "unknown builtin element '" + name + "'");
}

Json glider_json(const ca::Glider &g, const Alphabet &a) {
  Json j;
  j["offset"] = g.config.offset;
  j["word"] = ca::decode(g.config.word, a);
  j["n"] = g.n;
  j["m"] = g.m;
  return j;
}

Json path_json(const cover::CellPath &p) {
  Json j;
  j["r"] = p.r;
  j["length"] = p.size();
  j["cells"] = cells_json(p.cells);
  return j;
}

Json axiom_json(const fractal::AxiomCheck &a) {
  Json j;
  j["passed"] = a.passed;
  if (a.counterexample)
    j["counterexample"] = cell_json(*a.counterexample);
  if (!a.detail.empty())
    j["detail"] = a.detail;
  return j;
}

Json hierarchy_json(const fractal::BlobHierarchy &h) {
  Json levels = Json::array();
  for (const auto &l : h.levels) {
    Json lj;
    lj["radius"] = l.radius;
    lj["distinct_blobs"] = l.blobs.size();
    Json counts = Json::array();
    for (const auto &b : l.blobs)
      counts.push_back(b.count());
    lj["occurrences"] = counts;
    lj["truncated"] = l.truncated_anchors.size();
    levels.push_back(lj);
  }
  return levels;
}

Json report_json(const fractal::AxiomReport &r) {
  Json pairs = Json::array();
  for (const auto &p : r.pairs) {
    Json pj;
    pj["lower_level"] = p.lower;
    pj["glue"] = axiom_json(p.glue);
    pj["contains"] = axiom_json(p.contains);
    pj["splits"] = axiom_json(p.splits);
    pj["passed"] = p.passed();
    pairs.push_back(pj);
  }
  return pairs;
}

std::vector<std::int64_t> radii_from(const std::string &text, const Pattern &p) {
  if (text == "auto")
    return fractal::auto_radii(p);
  return int_list(text, "radius");
}

void write_output(const Output &o, const Common &c, const std::string &command,
                  const Session &session, std::ostream &out) {
  std::string bytes;
  if (o.is_raw) {
    bytes = o.raw;
  } else {
    Json report;
    report["schema"] = 1;
    report["tool"] = kToolName;
    report["version"] = kVersion;
    report["command"] = command;
    report["inputs_digest"] = session.digest();
    report["result"] = o.result;
    bytes = report.dump(2) + "\n";
  }
  if (c.out.empty()) {
    out << bytes;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file)
    throw Error(Errc::InvalidArgument, "cannot write '" + c.out + "'");
  file << bytes;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Finite-scale tools for blob fractals, path spaces, cellular automata and the prime subshift",
               kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  Session session(args);
  std::vector<std::pair<CLI::App *, std::function<Output()>>> leaves;
  std::vector<std::pair<CLI::App *, std::string>> names;

  auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &about,
                  const std::string &full_name) {
    auto *sub = parent->add_subcommand(name, about);
    sub->add_option("--out", common.out, "Write the output to this file");
    sub->add_option("--format", common.format, "json, text, pbm or svg-paths");
    sub->add_option("--seed-file", common.seed_file, "Seed pattern or word file");
    sub->add_option("--budget", common.budget, "Search budget (nodes)");
    names.emplace_back(sub, full_name);
    return sub;
  };

  // gen ----------------------------------------------------------------------
  std::string gen_subst, gen_builtin, gen_seed, gen_family;
  int gen_iters = 1, gen_k = 2, gen_level = 1, gen_row = 1;
  std::int64_t gen_n = 3;
  auto *gen = leaf(&app, "gen", "Generate a pattern from a substitution or a family", "gen");
  gen->add_option("--subst", gen_subst, "Substitution file");
  gen->add_option("--builtin", gen_builtin, "plus, cantor, tau1, tau2, tau3, up, thue-morse");
  gen->add_option("--seed", gen_seed, "Seed word (1D) or single symbol (2D)");
  gen->add_option("--iters", gen_iters, "Iterations")->check(CLI::Range(0, 64));
  gen->add_option("--family", gen_family, "unbounded-rows, density or sparse");
  gen->add_option("--k", gen_k, "k for unbounded-rows and density");
  gen->add_option("--level", gen_level, "Level i for unbounded-rows");
  gen->add_option("--row", gen_row, "Index j for unbounded-rows");
  gen->add_option("--n", gen_n, "n for the sparse family");
  leaves.emplace_back(gen, [&]() -> Output {
    if (!gen_family.empty()) {
      if (gen_family == "unbounded-rows") {
        auto spec = subst::BlockHierarchySpec::canonical(gen_k);
        return pattern_output(subst::build_unbounded_rows(spec, gen_level, gen_row), common);
      }
      if (gen_family == "sparse")
        return pattern_output(sparse_not_uniform_family(gen_n), common);
      if (gen_family == "density") {
        auto d = subst::density_word(gen_k);
        Format f = parse_format(common.format);
        if (f != Format::Json) {
          if (!d.word)
            throw Error(Errc::SizeLimit, "w_k is too long to render");
          return pattern_output(Pattern::from_word(*d.word, Alphabet("01")), common);
        }
        Json j;
        j["k"] = gen_k;
        j["length"] = d.length.str();
        j["nonzero"] = d.nonzero.str();
        j["density"] = to_string(d.density);
        if (d.word)
          j["word"] = *d.word;
        return {j, "", false};
      }
      throw Error(Errc::InvalidArgument, "unknown family '" + gen_family + "'");
    }
    if (gen_subst.empty() == gen_builtin.empty())
      throw Error(Errc::InvalidArgument, "give exactly one of --subst and --builtin");
    auto s = gen_subst.empty() ? builtin_substitution(gen_builtin)
                               : subst::parse_substitution(session.read(gen_subst));
    if (auto *s1 = std::get_if<subst::Substitution1D>(&s)) {
      std::string seed = gen_seed;
      if (!common.seed_file.empty()) {
        seed = session.read(common.seed_file);
        seed.erase(std::remove_if(seed.begin(), seed.end(), ::isspace), seed.end());
      }
      if (seed.empty())
        seed = std::string(1, s1->alphabet().symbol(1));
      auto word = subst::iterate_1d(*s1, seed, gen_iters);
      return pattern_output(Pattern::from_word(word, s1->alphabet()), common);
    }
    auto &s2 = std::get<subst::Substitution2D>(s);
    Pattern seed;
    if (!common.seed_file.empty()) {
      seed = session.pattern(common.seed_file);
    } else {
      std::string sym = gen_seed.empty() ? std::string(1, s2.alphabet().symbol(1)) : gen_seed;
      if (sym.size() != 1)
        throw Error(Errc::InvalidArgument, "a 2D seed given inline is a single symbol");
      seed = Pattern(2, s2.alphabet(), Box{{0, 0}, 1, 1}, s2.alphabet().require(sym[0]));
    }
    return pattern_output(subst::iterate_2d(s2, seed, gen_iters), common);
  });

  // blobs --------------------------------------------------------------------
  std::string blobs_pattern;
  std::int64_t blobs_radius = 1;
  auto *blobs_cmd = leaf(&app, "blobs", "Decompose a pattern into r-blobs", "blobs");
  blobs_cmd->add_option("--pattern", blobs_pattern, "Pattern file")->required();
  blobs_cmd->add_option("--radius", blobs_radius, "Radius r");
  leaves.emplace_back(blobs_cmd, [&]() -> Output {
    auto p = session.pattern(blobs_pattern);
    Json list = Json::array();
    for (const auto &occ : blob_occurrences(p, blobs_radius)) {
      Json b;
      b["anchor"] = cell_json(occ.anchor);
      b["truncated"] = occ.truncated;
      b["support_size"] = occ.blob.pattern.support_size();
      b["pattern"] = to_text(occ.blob.pattern);
      list.push_back(b);
    }
    Json j;
    j["radius"] = blobs_radius;
    j["count"] = list.size();
    j["blobs"] = list;
    return json_only(j, common);
  });

  // glue ---------------------------------------------------------------------
  std::string glue_left, glue_right;
  auto *glue = leaf(&app, "glue", "Zero-glue two patterns", "glue");
  glue->add_option("--left", glue_left, "First pattern file")->required();
  glue->add_option("--right", glue_right, "Second pattern file")->required();
  leaves.emplace_back(glue, [&]() -> Output {
    auto a = session.pattern(glue_left);
    auto b = session.pattern(glue_right);
    return pattern_output(zero_glue(a, b), common);
  });

  // width --------------------------------------------------------------------
  std::string width_pattern;
  std::int64_t width_radius = 1;
  auto *width = leaf(&app, "width", "Row sparsity and essential width bound", "width");
  width->add_option("--pattern", width_pattern, "Pattern file")->required();
  width->add_option("--radius", width_radius, "Ball radius");
  leaves.emplace_back(width, [&]() -> Output {
    auto p = session.pattern(width_pattern);
    auto rows = p.dim() == 2 ? rows_of(p) : std::vector<Pattern>{p};
    Json j;
    j["rows"] = rows.size();
    j["radius"] = width_radius;
    j["sparsity"] = sparsity(rows);
    j["essential_width_lower_bound"] = essential_width_lower_bound(rows, width_radius);
    return json_only(j, common);
  });

  // fractal ------------------------------------------------------------------
  auto *fractal_cmd = app.add_subcommand("fractal", "Blob hierarchies");
  fractal_cmd->require_subcommand(1);
  std::string fr_pattern, fr_radii = "auto";
  std::int64_t fr_threshold = 50;
  auto *fr_verify = leaf(fractal_cmd, "verify", "Build a hierarchy and check the axioms", "fractal verify");
  auto *fr_classify = leaf(fractal_cmd, "classify", "Finite / unbounded / blob-fractal verdict",
                           "fractal classify");
  for (auto *sub : {fr_verify, fr_classify}) {
    sub->add_option("--pattern", fr_pattern, "Pattern file")->required();
    sub->add_option("--radii", fr_radii, "Comma-separated radii or 'auto'");
  }
  fr_classify->add_option("--threshold", fr_threshold, "Geodesic length flagging an unbounded component");
  leaves.emplace_back(fr_verify, [&]() -> Output {
    auto p = session.pattern(fr_pattern);
    auto radii = radii_from(fr_radii, p);
    auto h = fractal::build_hierarchy(p, radii);
    Json j;
    j["radii"] = radii;
    j["levels"] = hierarchy_json(h);
    if (h.levels.size() >= 2) {
      auto rep = fractal::verify_axioms(h);
      j["pairs"] = report_json(rep);
      j["passed"] = rep.passed();
      j["verified_levels"] = rep.verified_levels();
    }
    return json_only(j, common);
  });
  leaves.emplace_back(fr_classify, [&]() -> Output {
    auto p = session.pattern(fr_pattern);
    auto radii = radii_from(fr_radii, p);
    auto v = fractal::classify(p, radii, fr_threshold);
    Json j;
    j["tag"] = fractal::fractal_tag_name(v.tag);
    j["radii"] = radii;
    if (v.tag == fractal::FractalTag::UnboundedComponent) {
      j["radius"] = v.radius;
      j["witness_length"] = v.witness_length;
    }
    if (v.tag == fractal::FractalTag::BlobFractalCandidate)
      j["verified_levels"] = v.verified_levels;
    j["pairs"] = report_json(v.report);
    j["note"] = "verdicts describe the examined window only";
    return json_only(j, common);
  });

  // classify-path ------------------------------------------------------------
  std::string cp_subst, cp_builtin, cp_seed, cp_coding;
  std::int64_t cp_horizon = 32, cp_r = 1;
  auto *cp = leaf(&app, "classify-path", "Classify the path space of a move substitution", "classify-path");
  cp->add_option("--subst", cp_subst, "1D substitution file");
  cp->add_option("--builtin", cp_builtin, "tau1, tau2, tau3, up, thue-morse");
  cp->add_option("--horizon", cp_horizon, "Horizon H");
  cp->add_option("--seed", cp_seed, "Seed word");
  cp->add_option("--coding", cp_coding, "Symbol moves, e.g. A=1,B=-1,C=0");
  cp->add_option("--r", cp_r, "Re-entry strip width");
  leaves.emplace_back(cp, [&]() -> Output {
    if (cp_subst.empty() == cp_builtin.empty())
      throw Error(Errc::InvalidArgument, "give exactly one of --subst and --builtin");
    auto any = cp_subst.empty() ? builtin_substitution(cp_builtin)
                                : subst::parse_substitution(session.read(cp_subst));
    auto *s = std::get_if<subst::Substitution1D>(&any);
    if (!s)
      throw Error(Errc::InvalidArgument, "path classification needs a 1D substitution");
    paths::ClassifyOptions opt;
    opt.r = cp_r;
    if (!cp_seed.empty())
      opt.seed = cp_seed;
    if (!cp_coding.empty())
      opt.coding = coding_from(cp_coding);
    else if (cp_builtin == "thue-morse")
      opt.coding = paths::thue_morse_coding();
    auto v = paths::classify_path_space(*s, cp_horizon, opt);
    Json j;
    j["tag"] = paths::path_class_name(v.tag);
    if (v.tag == paths::PathClass::Ascending || v.tag == paths::PathClass::Descending ||
        v.tag == paths::PathClass::Bounded)
      j["constant"] = v.constant;
    else
      j["constant"] = nullptr;
    j["witness"] = v.witness ? Json(paths::to_string(*v.witness)) : Json(nullptr);
    j["horizon"] = v.horizon;
    Json cert;
    cert["iterations"] = v.iterations;
    cert["word_length"] = v.word_length;
    cert["range_at_horizon"] = v.range_at_horizon;
    cert["shorter_window"] = v.shorter_window;
    cert["range_at_shorter_window"] = v.range_at_shorter_window;
    if (v.witness) {
      cert["witness_start"] = v.witness_start;
      cert["returns"] = v.returns.size();
    }
    j["certificate"] = cert;
    return json_only(j, common);
  });

  // pathcover ----------------------------------------------------------------
  auto *pc = app.add_subcommand("pathcover", "Paths on pattern supports");
  pc->require_subcommand(1);
  std::string pc_pattern, pc_steps, pc_offsets;
  std::int64_t pc_radius = 1, pc_m = 1, pc_length = 0;
  int pc_sturmian = 0;
  auto *pc_geo = leaf(pc, "geodesic", "Diameter witness of the largest r-component", "pathcover geodesic");
  auto *pc_asc = leaf(pc, "ascend", "Search for an ascending r-path", "pathcover ascend");
  auto *pc_guided = leaf(pc, "guided", "Trace a guided ascending path", "pathcover guided");
  for (auto *sub : {pc_geo, pc_asc}) {
    sub->add_option("--pattern", pc_pattern, "Pattern file")->required();
    sub->add_option("--radius", pc_radius, "Radius r");
  }
  pc_asc->add_option("--m", pc_m, "Window length m");
  pc_guided->add_option("--length", pc_length, "Number of steps")->required();
  pc_guided->add_option("--steps", pc_steps, "Comma-separated vertical steps (default all 1)");
  pc_guided->add_option("--offsets", pc_offsets, "Comma-separated horizontal offsets");
  pc_guided->add_option("--sturmian", pc_sturmian,
                        "Offsets from the k-th golden-conjugate convergent mechanical word");
  leaves.emplace_back(pc_geo, [&]() -> Output {
    auto g = cover::geodesic_witness(session.pattern(pc_pattern), pc_radius);
    Json j;
    j["component_size"] = g.component_size;
    j["path"] = path_json(g.path);
    return json_only(j, common);
  });
  leaves.emplace_back(pc_asc, [&]() -> Output {
    auto r = cover::find_ascending_path(session.pattern(pc_pattern), pc_radius, pc_m, common.budget);
    Json j;
    j["found"] = r.path.has_value();
    j["exhausted"] = r.exhausted;
    j["nodes_visited"] = r.nodes_visited;
    j["budget"] = common.budget;
    j["path"] = r.path ? path_json(*r.path) : Json(nullptr);
    return json_only(j, common);
  });
  leaves.emplace_back(pc_guided, [&]() -> Output {
    auto len = static_cast<std::size_t>(std::max<std::int64_t>(pc_length, 0));
    std::vector<std::int64_t> steps =
        pc_steps.empty() ? std::vector<std::int64_t>(len, 1) : int_list(pc_steps, "step");
    std::vector<std::int64_t> offsets;
    if (pc_sturmian > 0) {
      auto [p, q] = cover::golden_conjugate_convergent(pc_sturmian);
      offsets = cover::mechanical_word(p, q, pc_length);
    } else if (!pc_offsets.empty()) {
      offsets = int_list(pc_offsets, "offset");
    } else {
      offsets.assign(len, 0);
    }
    return pattern_output(cover::trace_guided_path(steps, offsets, pc_length), common);
  });

  // ca -----------------------------------------------------------------------
  auto *ca_cmd = app.add_subcommand("ca", "Cellular automata on finite configurations");
  ca_cmd->require_subcommand(1);
  std::string ca_rule_file, ca_builtin, ca_config;
  int ca_width = 4;
  std::int64_t ca_time = 16, ca_offset = 0, ca_horizon = 16;
  auto *ca_glider = leaf(ca_cmd, "glider", "Search for a glider", "ca glider");
  auto *ca_nil = leaf(ca_cmd, "nilpotent", "Bounded nilpotency probe", "ca nilpotent");
  auto *ca_prof = leaf(ca_cmd, "profile", "Nonzero counts along a trajectory", "ca profile");
  for (auto *sub : {ca_glider, ca_nil, ca_prof}) {
    sub->add_option("--rule", ca_rule_file, "Rule file");
    sub->add_option("--builtin", ca_builtin, "zero, identity, shift, decrement, xor");
  }
  for (auto *sub : {ca_glider, ca_nil}) {
    sub->add_option("--max-width", ca_width, "Largest seed width")->check(CLI::Range(1, 24));
    sub->add_option("--max-time", ca_time, "Largest time");
  }
  ca_prof->add_option("--config", ca_config, "Initial word")->required();
  ca_prof->add_option("--offset", ca_offset, "Position of the word");
  ca_prof->add_option("--horizon", ca_horizon, "Steps");
  auto load_rule = [&]() {
    if (ca_rule_file.empty() == ca_builtin.empty())
      throw Error(Errc::InvalidArgument, "give exactly one of --rule and --builtin");
    return ca_rule_file.empty() ? builtin_rule(ca_builtin)
                                : ca::parse_ca_rule(session.read(ca_rule_file));
  };
  leaves.emplace_back(ca_glider, [&]() -> Output {
    auto rule = load_rule();
    auto g = ca::find_glider(rule, ca_width, ca_time);
    Json j;
    j["found"] = g.has_value();
    j["glider"] = g ? glider_json(*g, rule.alphabet()) : Json(nullptr);
    j["max_width"] = ca_width;
    j["max_time"] = ca_time;
    return json_only(j, common);
  });
  leaves.emplace_back(ca_nil, [&]() -> Output {
    auto rule = load_rule();
    auto v = ca::nilpotency_probe(rule, ca_width, ca_time);
    Json j;
    j["tag"] = ca::nilpotency_name(v.tag);
    if (v.tag == ca::NilpotencyTag::NilpotentOnProbe)
      j["steps"] = v.steps;
    if (v.glider)
      j["glider"] = glider_json(*v.glider, rule.alphabet());
    if (v.cyclic)
      j["cyclic_word"] = ca::decode(*v.cyclic, rule.alphabet());
    j["max_width"] = ca_width;
    j["max_time"] = ca_time;
    return json_only(j, common);
  });
  leaves.emplace_back(ca_prof, [&]() -> Output {
    auto rule = load_rule();
    ca::FiniteConfig c{ca_offset, ca::encode(ca_config, rule.alphabet())};
    Json j;
    j["counts"] = ca::asymptotic_profile(rule, c, ca_horizon);
    return json_only(j, common);
  });

  // tfg ----------------------------------------------------------------------
  auto *tfg_cmd = app.add_subcommand("tfg", "Topological full group elements");
  tfg_cmd->require_subcommand(1);
  std::string tfg_file, tfg_builtin;
  int tfg_order = 8, tfg_period = 8;
  auto *tfg_ord = leaf(tfg_cmd, "order", "Torsion / infinite-order search", "tfg order");
  auto *tfg_val = leaf(tfg_cmd, "validate", "Invertibility check", "tfg validate");
  for (auto *sub : {tfg_ord, tfg_val}) {
    sub->add_option("--element", tfg_file, "Element file");
    sub->add_option("--builtin", tfg_builtin, "identity, shift, swap");
  }
  tfg_ord->add_option("--max-order", tfg_order, "Largest power tried");
  tfg_ord->add_option("--max-period", tfg_period, "Largest period of test points");
  auto load_element = [&]() {
    if (tfg_file.empty() == tfg_builtin.empty())
      throw Error(Errc::InvalidArgument, "give exactly one of --element and --builtin");
    return tfg_file.empty() ? builtin_element(tfg_builtin) : tfg::parse_element(session.read(tfg_file));
  };
  leaves.emplace_back(tfg_ord, [&]() -> Output {
    auto g = load_element();
    tfg::validate(g);
    auto v = tfg::order_search(g, tfg_order, tfg_period);
    Json j;
    j["tag"] = tfg::order_name(v.tag);
    if (v.tag == tfg::OrderTag::Torsion)
      j["order"] = v.order;
    if (v.tag == tfg::OrderTag::InfiniteOrder) {
      j["word"] = ca::decode(*v.word, g.alphabet());
      j["k"] = v.k;
      j["drift"] = v.drift;
    }
    j["max_checked_power"] = v.max_checked_power;
    return json_only(j, common);
  });
  leaves.emplace_back(tfg_val, [&]() -> Output {
    auto g = load_element();
    tfg::validate(g);
    Json j;
    j["valid"] = true;
    j["radius"] = g.radius();
    return json_only(j, common);
  });

  // primes -------------------------------------------------------------------
  auto *pr = app.add_subcommand("primes", "The prime subshift");
  pr->require_subcommand(1);
  std::int64_t pr_limit = 1'000'000, pr_threshold = 0, pr_scan = 100'000;
  int pr_length = 3, pr_n = 3;
  std::string pr_injection;
  auto *pr_lang = leaf(pr, "lang", "Late language of the characteristic word", "primes lang");
  auto *pr_crt = leaf(pr, "crt", "CRT zero run", "primes crt");
  auto *pr_iso = leaf(pr, "isolated", "Least isolated prime", "primes isolated");
  auto *pr_dir = leaf(pr, "dirichlet", "Isolated prime in an arithmetic progression", "primes dirichlet");
  auto *pr_gaps = leaf(pr, "gaps", "Smallest gap above a threshold", "primes gaps");
  for (auto *sub : {pr_lang, pr_iso, pr_gaps})
    sub->add_option("--limit", pr_limit, "Sieve limit");
  for (auto *sub : {pr_lang, pr_gaps})
    sub->add_option("--threshold", pr_threshold, "Threshold T");
  pr_lang->add_option("--length", pr_length, "Factor length");
  for (auto *sub : {pr_crt, pr_iso, pr_dir})
    sub->add_option("--n", pr_n, "n");
  for (auto *sub : {pr_crt, pr_dir})
    sub->add_option("--injection", pr_injection, "Comma-separated primes");
  pr_dir->add_option("--scan-limit", pr_scan, "Largest l scanned");
  auto injection = [&]() -> std::optional<std::vector<std::int64_t>> {
    if (pr_injection.empty())
      return std::nullopt;
    return int_list(pr_injection, "injection");
  };
  leaves.emplace_back(pr_lang, [&]() -> Output {
    auto w = primes::sieve(pr_limit);
    if (parse_format(common.format) != Format::Json)
      return pattern_output(primes::char_pattern(w, pr_threshold, pr_limit), common);
    Json j;
    j["limit"] = pr_limit;
    j["length"] = pr_length;
    j["threshold"] = pr_threshold;
    j["words"] = primes::late_language(w, pr_length, pr_threshold);
    return {j, "", false};
  });
  leaves.emplace_back(pr_crt, [&]() -> Output {
    auto c = primes::crt_zero_run(pr_n, injection());
    Json j;
    j["n"] = c.n;
    j["injection"] = c.injection;
    j["k"] = c.k;
    j["N"] = c.modulus;
    j["start"] = c.start;
    j["verified"] = c.verified;
    return json_only(j, common);
  });
  leaves.emplace_back(pr_iso, [&]() -> Output {
    auto w = primes::sieve(pr_limit);
    auto p = primes::isolated_prime_search(pr_n, w);
    Json j;
    j["n"] = pr_n;
    j["limit"] = pr_limit;
    j["p"] = p ? Json(*p) : Json(nullptr);
    return json_only(j, common);
  });
  leaves.emplace_back(pr_dir, [&]() -> Output {
    auto d = primes::dirichlet_isolated(pr_n, pr_scan, injection());
    Json j;
    j["n"] = d.n;
    j["offsets"] = d.offsets;
    j["injection"] = d.injection;
    j["k"] = d.k;
    j["N"] = d.modulus;
    j["l"] = d.ell;
    j["p"] = d.p;
    return json_only(j, common);
  });
  leaves.emplace_back(pr_gaps, [&]() -> Output {
    auto w = primes::sieve(pr_limit);
    Json j;
    j["limit"] = pr_limit;
    j["threshold"] = pr_threshold;
    j["gap"] = primes::gap_floor(w, pr_threshold);
    return json_only(j, common);
  });

  // render -------------------------------------------------------------------
  std::string render_pattern;
  std::vector<std::string> render_moves;
  auto *rend = leaf(&app, "render", "Render a pattern or move words", "render");
  rend->add_option("--pattern", render_pattern, "Pattern file");
  rend->add_option("--moves", render_moves, "Move word (repeatable)");
  leaves.emplace_back(rend, [&]() -> Output {
    Format f = parse_format(common.format);
    if (f == Format::SvgPaths) {
      std::vector<paths::MoveWord> words;
      for (const auto &m : render_moves)
        words.push_back(paths::parse_move_word(m));
      if (!common.seed_file.empty())
        words.push_back(paths::parse_move_word(session.read(common.seed_file)));
      if (words.empty())
        throw Error(Errc::InvalidArgument, "svg-paths needs --moves or --seed-file");
      return {Json(), render_svg_paths(words), true};
    }
    if (render_pattern.empty())
      throw Error(Errc::InvalidArgument, "--pattern is required for text and pbm");
    auto p = session.pattern(render_pattern);
    if (f == Format::Json)
      return {pattern_json(p), "", false};
    return {Json(), render(p, f), true};
  });

  // ---------------------------------------------------------------------------
  std::vector<std::string> argv_store{kToolName};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &a : argv_store)
    argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  for (std::size_t i = 0; i < leaves.size(); ++i) {
    auto *sub = leaves[i].first;
    if (!sub->parsed())
      continue;
    std::string command;
    for (const auto &[s, n] : names)
      if (s == sub)
        command = n;
    try {
      auto output = leaves[i].second();
      write_output(output, common, command, session, out);
      return 0;
    } catch (const Error &e) {
      err << kToolName << ": " << e.what() << "\n";
      return 2;
    }
  }
  err << kToolName << ": no command given\n";
  return 1;
}

} // namespace blobshift::cli
