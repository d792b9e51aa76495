// fimtool: command-line front end for the free inverse monoid library.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fim/automata.hpp"
#include "fim/endo.hpp"
#include "fim/errors.hpp"
#include "fim/fgroup.hpp"
#include "fim/grammar.hpp"
#include "fim/langs.hpp"
#include "fim/munn.hpp"
#include "fim/verify.hpp"
#include "fim/words.hpp"
#include "report.hpp"

using namespace fim;
using fimtool::Json;
using fimtool::Report;

namespace {

struct Options {
  bool json = false;
  bool exit_status = false;
  std::uint64_t seed = SuiteOptions{}.seed;
  std::size_t threads = 1;
  std::optional<std::size_t> assume_curl;
  std::string alphabet;
  std::string file;
  std::vector<std::string> gens;
  std::size_t cutoff_steps = OrbitCutoffs{}.max_steps;
  std::size_t cutoff_norm = OrbitCutoffs{}.max_norm;
  std::size_t max_vertices = 4;
  std::size_t n_max = CurlBounds{}.n_max;
  std::size_t len_max = CurlBounds{}.len_max;
  std::size_t max_len = 6;
  std::size_t instances = SuiteOptions{}.instances;
  bool dot = false;
  bool tree_json = false;
  std::string grammar_out;
  std::string nfa_out;
  std::vector<std::string> words;
};

// Set by a leaf command: its report, and the boolean answer if it has one.
struct Outcome {
  std::optional<Report> report;
  std::string raw;  // printed verbatim instead of a report
  std::optional<bool> answer;
  int exit_code = 0;

  Outcome() = default;
  explicit Outcome(Report r) : report(std::move(r)) {}
};

class Tool {
 public:
  Tool(Options& o, std::string command) : o_(o), command_(std::move(command)) {}

  Report report() const { return Report(command_); }

  // "1" denotes the empty word on the command line.
  Word word(const std::string& text, const Alphabet& a) const {
    return parse_word(text == "1" ? std::string_view() : std::string_view(text), a);
  }

  Alphabet kernel_alphabet() const {
    if (!o_.alphabet.empty()) return alphabet_from(o_.alphabet);
    if (!o_.file.empty()) return spec().alphabet;
    std::set<char> names;
    auto collect = [&](const std::string& w) {
      for (char c : w) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          names.insert(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
      }
    };
    for (const auto& w : o_.words) collect(w);
    for (const auto& w : o_.gens) collect(w);
    if (names.empty()) return Alphabet(1);
    return Alphabet(std::vector<char>(names.begin(), names.end()));
  }

  const EndoSpec& spec() const {
    if (!spec_) {
      if (o_.file.empty()) throw PreconditionError("this command needs -f <spec.endo>");
      std::ifstream in(o_.file);
      if (!in) throw PreconditionError("cannot read '" + o_.file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      spec_text_ = buf.str();
      spec_ = parse_endo_spec(spec_text_);
    }
    return *spec_;
  }

  void add_spec_input(Report& r) const {
    spec();
    r.input(o_.file, spec_text_);
  }

  OrbitCutoffs cutoffs() const { return {o_.cutoff_steps, o_.cutoff_norm}; }

  void add_cutoffs(Report& r) const {
    r.bound("cutoff-steps", o_.cutoff_steps);
    r.bound("cutoff-norm", o_.cutoff_norm);
  }

  CurlReport curl(Report& r) const {
    if (o_.assume_curl) {
      r.bound("assume-curl", *o_.assume_curl);
      return assert_curl(*o_.assume_curl, "asserted on the command line");
    }
    r.bound("n-max", o_.n_max);
    r.bound("len-max", o_.len_max);
    return curl_bounded(induced_fg(spec().endo), CurlBounds{o_.n_max, o_.len_max, CurlBounds{}.length_cap});
  }

  static Json curl_json(const CurlReport& c) {
    return Json{{"value", c.value}, {"status", to_string(c.status)}, {"evidence", c.evidence}};
  }

  std::string show(const MunnElement& x, const Alphabet& a) const {
    return display_word(canonical_word(x), a);
  }

  Json elements(std::span<const MunnElement> xs, const Alphabet& a) const {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(show(x, a));
    return out;
  }

  Json tile_list(const std::vector<Tile>& ts, const Alphabet& a) const {
    Json out = Json::array();
    for (const auto& t : ts) {
      out.push_back(Json{{"letter", std::string(1, a.symbol(t.letter))}, {"tile", show(t.element, a)}});
    }
    return out;
  }

  std::vector<ReducedWord> generators(const Alphabet& a) const {
    std::vector<ReducedWord> out;
    if (!o_.gens.empty()) {
      for (const auto& g : o_.gens) out.push_back(reduce(word(g, a)));
    } else {
      for (const auto& img : induced_fg(spec().endo).images()) out.push_back(img);
    }
    return out;
  }

  Alphabet gens_alphabet() const {
    return o_.gens.empty() && !o_.file.empty() ? spec().alphabet : kernel_alphabet();
  }

  static void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write '" + path + "'");
    out << content;
  }

  static Alphabet alphabet_from(const std::string& text) {
    std::vector<char> names;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
      names.push_back(c);
    }
    return Alphabet(names);
  }

  Options& o_;

 private:
  std::string command_;
  mutable std::optional<EndoSpec> spec_;
  mutable std::string spec_text_;
};

std::string arg(const Options& o, std::size_t i, const char* what) {
  if (i >= o.words.size()) throw PreconditionError(std::string("missing argument: ") + what);
  return o.words[i];
}

// ---------------------------------------------------------------------------
// kernel

Outcome cmd_canon(Tool& t) {
  const auto a = t.kernel_alphabet();
  const auto x = from_word(t.word(arg(t.o_, 0, "word"), a));
  Outcome out{t.report()};
  out.report->set("canonical", t.show(x, a));
  out.report->set("munn", Json::parse(to_json(x, a)));
  return out;
}

Outcome cmd_pair(Tool& t, const std::string& op) {
  const auto a = t.kernel_alphabet();
  const auto x = from_word(t.word(arg(t.o_, 0, "first word"), a));
  const auto y = from_word(t.word(arg(t.o_, 1, "second word"), a));
  Outcome out{t.report()};
  if (op == "eq") {
    out.answer = equals(x, y);
    out.report->set("equal", *out.answer);
  } else if (op == "leq") {
    out.answer = leq(x, y);
    out.report->set("leq", *out.answer);
  } else {
    const auto p = x * y;
    out.report->set("product", t.show(p, a));
    out.report->set("munn", Json::parse(to_json(p, a)));
  }
  return out;
}

Outcome cmd_inv(Tool& t) {
  const auto a = t.kernel_alphabet();
  const auto x = inverse(from_word(t.word(arg(t.o_, 0, "word"), a)));
  Outcome out{t.report()};
  out.report->set("inverse", t.show(x, a));
  out.report->set("munn", Json::parse(to_json(x, a)));
  return out;
}

Outcome cmd_norm(Tool& t) {
  const auto a = t.kernel_alphabet();
  const auto x = from_word(t.word(arg(t.o_, 0, "word"), a));
  Outcome out{t.report()};
  out.report->set("norm", x.norm());
  out.report->set("vertices", x.vertex_count());
  out.report->set("idempotent", x.is_idempotent());
  return out;
}

Outcome cmd_tree(Tool& t) {
  const auto a = t.kernel_alphabet();
  const auto x = from_word(t.word(arg(t.o_, 0, "word"), a));
  if (t.o_.dot == t.o_.tree_json) throw PreconditionError("tree needs exactly one of --dot or --json");
  Outcome out;
  out.raw = t.o_.dot ? to_dot(x, a) : to_json(x, a) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// endo

Outcome endo_report(Tool& t) {
  Outcome out{t.report()};
  t.add_spec_input(*out.report);
  return out;
}

Outcome cmd_endo_apply(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  const auto w = t.word(arg(t.o_, 0, "word"), s.alphabet);
  out.report->set("image", display_word(substitute(s.endo, w), s.alphabet));
  out.report->set("element", t.show(apply(s.endo, from_word(w)), s.alphabet));
  return out;
}

Outcome cmd_endo_orbit(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  t.add_cutoffs(*out.report);
  const auto e = from_word(t.word(arg(t.o_, 0, "idempotent word"), s.alphabet));
  const auto orbit = idempotent_orbit(s.endo, e, t.cutoffs());
  if (t.o_.dot) {
    out.report.reset();
    out.raw = orbit_to_dot(orbit, s.alphabet);
    return out;
  }
  out.report->set("status", to_string(orbit.status));
  out.report->set("steps", orbit.steps);
  out.report->set("max-norm", orbit.max_norm);
  if (orbit.stable()) {
    out.report->set("period", orbit.period());
    out.report->set("entry", orbit.entry_index);
    out.report->set("cycle", orbit.cycle_length());
    out.report->set("kappa", t.show(kappa(orbit), s.alphabet));
  }
  out.report->set("elements", t.elements(orbit.elements, s.alphabet));
  out.answer = orbit.stable();
  return out;
}

Outcome cmd_endo_stable(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  t.add_cutoffs(*out.report);
  const auto d = stable_letters(s.endo, t.cutoffs());
  Json letters = Json::array();
  for (Letter l : s.alphabet.letters()) {
    const auto& r = d.of(l);
    Json j{{"letter", std::string(1, s.alphabet.symbol(l))}, {"status", to_string(r.status)}};
    if (r.stable()) {
      j["period"] = r.period();
      j["cycle"] = r.cycle_length();
    }
    letters.push_back(j);
  }
  out.report->set("letters", letters);
  out.report->set("decided", d.decided());
  return out;
}

Outcome cmd_endo_tiles(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  t.add_cutoffs(*out.report);
  const auto c = t.curl(*out.report);
  const auto rep = tiles(s.endo, t.cutoffs());
  const auto gens = fix_generators(s.endo, c, t.cutoffs());
  out.report->set("curl", Tool::curl_json(c));
  out.report->set("decided", rep.decided);
  out.report->set("verified-fixed", t.tile_list(rep.verified_fixed, s.alphabet));
  out.report->set("violations", t.tile_list(rep.violations, s.alphabet));
  out.report->set("certificate", to_string(gens.certificate));
  out.report->set("note", gens.note);
  return out;
}

Outcome cmd_endo_fix_check(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  const auto x = from_word(t.word(arg(t.o_, 0, "word"), s.alphabet));
  out.answer = is_fixed(s.endo, x);
  out.report->set("element", t.show(x, s.alphabet));
  out.report->set("image", t.show(apply(s.endo, x), s.alphabet));
  out.report->set("fixed", *out.answer);
  return out;
}

Outcome cmd_endo_fix_enum(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  out.report->bound("max-vertices", t.o_.max_vertices);
  out.report->bound("threads", t.o_.threads);
  const auto fixed = fix_enumerate(s.endo, s.alphabet, t.o_.max_vertices, t.o_.threads);
  out.report->set("count", fixed.size());
  out.report->set("fixed", t.elements(fixed, s.alphabet));
  return out;
}

Outcome cmd_endo_per_gens(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  t.add_cutoffs(*out.report);
  const auto c = t.curl(*out.report);
  const auto per = per_generators(s.endo, c, t.cutoffs());
  out.report->set("curl", Tool::curl_json(c));
  out.report->set("generators", t.elements(per.generators, s.alphabet));
  out.report->set("m", per.m);
  out.report->set("iterations", per.iterations);
  out.report->set("complete", per.complete);
  out.report->set("note", per.note);
  return out;
}

Outcome cmd_endo_fix_infinite(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  t.add_cutoffs(*out.report);
  const auto c = t.curl(*out.report);
  const auto rep = is_fix_infinite(s.endo, c, t.cutoffs());
  out.report->set("curl", Tool::curl_json(c));
  out.report->set("verdict", to_string(rep.verdict));
  if (rep.witness) out.report->set("witness", t.show(*rep.witness, s.alphabet));
  out.report->set("note", rep.note);
  if (rep.verdict == Verdict::Unknown) {
    out.exit_code = 3;
  } else {
    out.answer = rep.verdict == Verdict::Infinite;
  }
  return out;
}

// ---------------------------------------------------------------------------
// fg

Outcome cmd_fg_reduce(Tool& t) {
  const auto a = t.kernel_alphabet();
  Outcome out{t.report()};
  out.report->set("reduced", display_word(reduce(t.word(arg(t.o_, 0, "word"), a)), a));
  return out;
}

Outcome fg_report(Tool& t) {
  Outcome out{t.report()};
  if (t.o_.gens.empty()) t.add_spec_input(*out.report);
  return out;
}

Outcome cmd_fg_stallings(Tool& t) {
  auto out = fg_report(t);
  const auto a = t.gens_alphabet();
  const auto g = stallings_from_generators(t.generators(a));
  if (t.o_.dot) {
    out.report.reset();
    out.raw = to_dot(g, a);
    return out;
  }
  Json edges = Json::array();
  for (std::size_t p = 0; p < g.vertex_count(); ++p) {
    for (const auto& [l, q] : g.edges(p)) {
      if (l.is_inverse()) continue;
      edges.push_back(std::to_string(p) + " " + std::string(1, a.symbol(l)) + " " + std::to_string(q));
    }
  }
  out.report->set("vertices", g.vertex_count());
  out.report->set("edges", edges);
  out.report->set("rank", rank(g));
  return out;
}

Outcome cmd_fg_member(Tool& t) {
  auto out = fg_report(t);
  const auto a = t.gens_alphabet();
  const auto g = stallings_from_generators(t.generators(a));
  const auto w = reduce(t.word(arg(t.o_, 0, "word"), a));
  out.answer = subgroup_membership(g, w);
  out.report->set("word", display_word(w, a));
  out.report->set("member", *out.answer);
  return out;
}

Outcome cmd_fg_fix_bounded(Tool& t) {
  auto out = fg_report(t);
  const auto& s = t.spec();
  out.report->bound("len-max", t.o_.len_max);
  const auto theta = induced_fg(s.endo);
  const auto h = fix_basis_bounded(theta, t.o_.len_max);
  Json words = Json::array();
  for (const auto& w : fixed_words_bounded(theta, t.o_.len_max)) words.push_back(display_word(w, s.alphabet));
  out.report->set("fixed-words", words);
  out.report->set("subgroup-rank", rank(h.graph));
  out.report->set("subgroup-vertices", h.graph.vertex_count());
  out.report->set("exact", h.exact);
  return out;
}

Outcome cmd_fg_curl(Tool& t) {
  auto out = fg_report(t);
  const auto c = t.curl(*out.report);
  out.report->set("curl", Tool::curl_json(c));
  return out;
}

// ---------------------------------------------------------------------------
// lang

void export_grammar(Tool& t, const Cfg& g, const Alphabet& a, Report& r) {
  if (!t.o_.grammar_out.empty()) {
    Tool::write_file(t.o_.grammar_out, to_text(g, a));
    r.set("grammar-file", t.o_.grammar_out);
  }
}

void grammar_summary(const Cfg& g, Report& r) {
  r.set("nonterminals", g.nonterminal_count());
  r.set("productions", g.productions().size());
}

Outcome grammar_output(Tool& t, const Cfg& g, const Alphabet& a, Outcome out) {
  grammar_summary(g, *out.report);
  export_grammar(t, g, a, *out.report);
  if (t.o_.grammar_out.empty()) {
    std::vector<std::string> lines;
    std::istringstream in(to_text(g, a));
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    out.report->set("grammar", lines);
  }
  return out;
}

Outcome cmd_lang_dyck(Tool& t) {
  const auto a = t.kernel_alphabet();
  return grammar_output(t, dyck_grammar(a), a, Outcome{t.report()});
}

Outcome cmd_lang_preimage(Tool& t) {
  auto out = fg_report(t);
  const auto a = t.gens_alphabet();
  const auto g = stallings_from_generators(t.generators(a));
  return grammar_output(t, subgroup_preimage_grammar(g, a), a, std::move(out));
}

RadOptions rad_options(Tool& t, Report& r) {
  RadOptions opts;
  opts.fix_len_max = t.o_.len_max;
  opts.cutoffs = t.cutoffs();
  t.add_cutoffs(r);
  r.bound("fix-len-max", opts.fix_len_max);
  return opts;
}

Outcome cmd_lang_rad_grammar(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  const auto c = t.curl(*out.report);
  const auto opts = rad_options(t, *out.report);
  const auto rad = rad_grammar(s.endo, c, opts);
  out.report->set("curl", Tool::curl_json(c));
  out.report->set("n", rad.n);
  out.report->set("fixed-subgroup-rank", rank(rad.h.graph));
  out.report->set("fixed-subgroup-exact", rad.h.exact);
  out.report->set("tiles", t.tile_list(rad.tiles.verified_fixed, s.alphabet));
  out.report->set("caveat", rad.caveat);
  if (!t.o_.nfa_out.empty()) {
    Tool::write_file(t.o_.nfa_out, t.o_.dot ? to_dot(rad.language, s.alphabet) : to_table(rad.language, s.alphabet));
    out.report->set("nfa-file", t.o_.nfa_out);
  }
  return grammar_output(t, rad.grammar, s.alphabet, std::move(out));
}

Outcome cmd_lang_member(Tool& t) {
  Outcome out{t.report()};
  if (!t.o_.file.empty()) {
    t.add_spec_input(*out.report);
    const auto& s = t.spec();
    const auto c = t.curl(*out.report);
    const auto rad = rad_grammar(s.endo, c, rad_options(t, *out.report));
    const auto w = t.word(arg(t.o_, 0, "word"), s.alphabet);
    out.answer = cfg_membership(rad.grammar, w);
    out.report->set("grammar", "radical " + std::to_string(rad.n));
    out.report->set("member", *out.answer);
    return out;
  }
  const auto a = t.kernel_alphabet();
  const auto w = t.word(arg(t.o_, 0, "word"), a);
  if (!t.o_.gens.empty()) {
    const auto g = subgroup_preimage_grammar(stallings_from_generators(t.generators(a)), a);
    out.answer = cfg_membership(g, w);
    out.report->set("grammar", "subgroup preimage");
  } else {
    out.answer = cfg_membership(dyck_grammar(a), w);
    out.report->set("grammar", "dyck");
  }
  out.report->set("member", *out.answer);
  return out;
}

Outcome cmd_lang_finite(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  const auto c = t.curl(*out.report);
  const auto opts = rad_options(t, *out.report);
  const auto rad = rad_grammar(s.endo, c, opts);
  out.answer = cfg_is_finite(rad.grammar);
  const auto rat = rad_is_rational(s.endo, c, opts);
  out.report->set("n", rad.n);
  out.report->set("finite", *out.answer);
  out.report->set("rationality", to_string(rat.verdict));
  out.report->set("note", rat.note);
  return out;
}

Outcome cmd_lang_consen_enum(Tool& t) {
  auto out = endo_report(t);
  const auto& s = t.spec();
  const auto c = t.curl(*out.report);
  const auto opts = rad_options(t, *out.report);
  out.report->bound("max-len", t.o_.max_len);
  const auto per = per_generators(s.endo, c, opts.cutoffs);
  const auto rad = rad_grammar(s.endo, c, opts);
  const auto construction = consen_construction(s.endo, per.m);
  const auto en = consen_language(construction, rad.grammar, t.o_.max_len);
  std::set<MunnElement, CanonicalLess> images;
  for (const auto& w : en.images) images.insert(from_word(w));
  out.report->set("m", per.m);
  out.report->set("n", rad.n);
  out.report->set("gamma-epsilon-free", construction.gamma.epsilon_free());
  out.report->set("words-accepted", en.words_accepted);
  out.report->set("images", t.elements(std::vector<MunnElement>(images.begin(), images.end()), s.alphabet));
  return out;
}

// ---------------------------------------------------------------------------

Outcome cmd_verify(Tool& t, const std::string& suite) {
  SuiteOptions opts;
  opts.seed = t.o_.seed;
  opts.threads = t.o_.threads;
  opts.instances = t.o_.instances;
  Outcome out{t.report()};
  if (!t.o_.file.empty()) {
    t.add_spec_input(*out.report);
    opts.spec = t.spec();
    if (t.o_.assume_curl) opts.curl = t.curl(*out.report);
  }
  out.report->bound("seed", opts.seed);
  out.report->bound("instances", opts.instances);
  out.report->bound("threads", opts.threads);
  const auto r = run_suite(suite, opts);
  out.report->set("suite", r.name);
  out.report->set("result", !r.passed ? "fail" : r.skipped ? "skipped" : "pass");
  out.report->set("checks", r.checks);
  out.report->set("counterexamples", r.counterexamples);
  out.report->set("notes", r.notes);
  out.answer = r.passed;
  if (!r.passed) out.exit_code = 1;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free inverse monoids: Munn trees, endomorphism dynamics and languages"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable report");
  app.add_flag("--exit-status", o.exit_status, "Encode boolean answers in the exit code");
  app.add_option("--seed", o.seed, "Seed for randomised suites");
  app.add_option("--threads", o.threads, "Worker threads for enumerations")->check(CLI::PositiveNumber);
  app.add_option("--assume-curl", o.assume_curl, "Take the curl as given instead of estimating it");
  app.add_option("--alphabet", o.alphabet, "Generator names, e.g. \"a b c\"");
  app.add_option("-f,--file", o.file, "Endomorphism spec file");
  app.add_option("--gens", o.gens, "Subgroup generators")->expected(1, -1);
  app.add_option("--cutoff-steps", o.cutoff_steps, "Orbit step cutoff");
  app.add_option("--cutoff-norm", o.cutoff_norm, "Orbit norm cutoff");
  app.add_option("--max-vertices", o.max_vertices, "Vertex bound for enumerations");
  app.add_option("--n-max", o.n_max, "Curl search: largest n with n! examined");
  app.add_option("--len-max", o.len_max, "Word length bound for fixed-word searches");
  app.add_option("--max-len", o.max_len, "Word length bound for language enumeration");
  app.add_option("--instances", o.instances, "Random instances per suite");
  app.add_flag("--dot", o.dot, "DOT output where supported");
  app.add_option("--grammar-out", o.grammar_out, "Write the grammar to this path");
  app.add_option("--nfa-out", o.nfa_out, "Write the automaton to this path");

  using Handler = std::function<Outcome(Tool&)>;
  std::vector<std::pair<CLI::App*, Handler>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h,
                  const char* positional = nullptr) {
    auto* sub = parent->add_subcommand(name, help);
    if (positional) sub->add_option(positional, o.words, "Words");
    leaves.emplace_back(sub, std::move(h));
    return sub;
  };

  leaf(&app, "canon", "Canonical Munn tree and word", cmd_canon, "word");
  leaf(&app, "eq", "Equality in the free inverse monoid", [](Tool& t) { return cmd_pair(t, "eq"); }, "words");
  leaf(&app, "leq", "Natural order: first <= second", [](Tool& t) { return cmd_pair(t, "leq"); }, "words");
  leaf(&app, "mul", "Product", [](Tool& t) { return cmd_pair(t, "mul"); }, "words");
  leaf(&app, "inv", "Inverse", cmd_inv, "word");
  leaf(&app, "norm", "Norm and vertex count", cmd_norm, "word");
  auto* tree = leaf(&app, "tree", "Export a Munn tree", cmd_tree, "word");
  tree->add_flag("--json", o.tree_json, "JSON export");

  auto* endo = app.add_subcommand("endo", "Endomorphism dynamics")->require_subcommand(1);
  leaf(endo, "apply", "Image of a word", cmd_endo_apply, "word");
  leaf(endo, "orbit", "Orbit of an idempotent", cmd_endo_orbit, "word");
  leaf(endo, "stable", "Stability of each letter", cmd_endo_stable);
  leaf(endo, "tiles", "Tiles and their verification", cmd_endo_tiles);
  leaf(endo, "fix-check", "Is the element fixed", cmd_endo_fix_check, "word");
  leaf(endo, "fix-enum", "Fixed points up to a vertex bound", cmd_endo_fix_enum);
  leaf(endo, "per-gens", "Generators of the periodic points", cmd_endo_per_gens);
  leaf(endo, "fix-infinite", "Is the fixed point submonoid infinite", cmd_endo_fix_infinite);

  auto* fg = app.add_subcommand("fg", "Free group endomorphisms and subgroups")->require_subcommand(1);
  leaf(fg, "reduce", "Free reduction", cmd_fg_reduce, "word");
  leaf(fg, "stallings", "Stallings graph of the generators", cmd_fg_stallings);
  leaf(fg, "member", "Subgroup membership", cmd_fg_member, "word");
  leaf(fg, "fix-bounded", "Fixed words of the induced map", cmd_fg_fix_bounded);
  leaf(fg, "curl", "Bounded curl estimate", cmd_fg_curl);

  auto* lang = app.add_subcommand("lang", "Grammars and languages")->require_subcommand(1);
  leaf(lang, "dyck", "Dyck grammar", cmd_lang_dyck);
  leaf(lang, "preimage", "Preimage grammar of a subgroup", cmd_lang_preimage);
  leaf(lang, "rad-grammar", "Grammar for a radical", cmd_lang_rad_grammar);
  leaf(lang, "member", "Grammar membership", cmd_lang_member, "word");
  leaf(lang, "finite", "Finiteness of the radical grammar", cmd_lang_finite);
  leaf(lang, "consen-enum", "Fixed points from the tracked construction", cmd_lang_consen_enum);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  leaves.emplace_back(verify, [&](Tool& t) { return cmd_verify(t, suite); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = "fimtool";
  for (int i = 1; i < argc; ++i) command += std::string(" ") + argv[i];

  try {
    for (auto& [sub, handler] : leaves) {
      if (!sub->parsed()) continue;
      Tool tool(o, command);
      Outcome out = handler(tool);
      if (out.report) {
        std::cout << out.report->render(o.json);
      } else {
        std::cout << out.raw;
      }
      if (out.exit_code) return out.exit_code;
      if (o.exit_status && out.answer) return *out.answer ? 0 : 1;
      return 0;
    }
  } catch (const fim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
