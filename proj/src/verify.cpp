#include "fim/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fim/errors.hpp"
#include "fim/grammar.hpp"
#include "fim/langs.hpp"
#include "fim/munn.hpp"
#include "fim/oracle.hpp"

namespace fim {

namespace {

struct CuratedSource {
  const char* name;
  const char* text;
  const char* asserted_curl;  // reason, when the curl is asserted rather than computed
};

constexpr CuratedSource kCurated[] = {
    {"swap", "alphabet: a b\na -> b\nb -> a\n", nullptr},
    {"double", "alphabet: a\na -> a a\n", nullptr},
    {"aba", "alphabet: a b\na -> a\nb -> a b a\n",
     "b's image grows under every power and only powers of a are periodic"},
    {"identity", "alphabet: a b\na -> a\nb -> b\n", nullptr},
    {"gap", "alphabet: a b\na -> a\nb -> b B\n", nullptr},
    {"cycle3", "alphabet: a b c\na -> b\nb -> c\nc -> a\n", nullptr},
    {"aca3", "alphabet: a b c\na -> a\nb -> b\nc -> a c a\n",
     "c's image grows under every power and only words in a and b are periodic"},
};

}  // namespace

const std::vector<CuratedExample>& curated_examples() {
  static const std::vector<CuratedExample> examples = [] {
    std::vector<CuratedExample> out;
    for (const auto& src : kCurated) {
      auto spec = parse_endo_spec(src.text);
      CurlReport curl = src.asserted_curl ? assert_curl(1, src.asserted_curl)
                                          : curl_bounded(induced_fg(spec.endo));
      out.push_back({src.name, src.text, std::move(spec), std::move(curl)});
    }
    return out;
  }();
  return examples;
}

const CuratedExample& curated(std::string_view name) {
  for (const auto& e : curated_examples()) {
    if (e.name == name) return e;
  }
  throw PreconditionError("no curated example named '" + std::string(name) + "'");
}

void SuiteResult::check(bool ok, const std::function<std::string()>& describe) {
  ++checks;
  if (ok) return;
  passed = false;
  if (counterexamples.size() < 5) counterexamples.push_back(describe());
}

void SuiteResult::skip(std::string reason) {
  skipped = true;
  notes.push_back("skipped: " + std::move(reason));
}

namespace {

using Rng = std::mt19937_64;

struct Subject {
  std::string name;
  EndoSpec spec;
  CurlReport curl;
  bool curated = false;

  const MonoidEndo& phi() const { return spec.endo; }
  const Alphabet& alphabet() const { return spec.alphabet; }
};

Subject subject_from(const CuratedExample& e) { return {e.name, e.spec, e.curl, true}; }

// The -f endomorphism when given, otherwise the named curated examples.
std::vector<Subject> subjects(const SuiteOptions& options, std::initializer_list<const char*> names) {
  if (options.spec) {
    CurlReport curl = options.curl ? *options.curl : curl_bounded(induced_fg(options.spec->endo));
    return {Subject{"input", *options.spec, curl, false}};
  }
  std::vector<Subject> out;
  for (const char* n : names) out.push_back(subject_from(curated(n)));
  return out;
}

// Curated subjects must meet the hypothesis; given ones are skipped otherwise.
bool hypothesis(SuiteResult& r, const Subject& s, bool ok, const std::string& what) {
  if (s.curated) {
    r.check(ok, [&] { return s.name + ": " + what; });
  } else if (!ok) {
    r.skip(what);
  }
  return ok;
}

// rad_grammar, or nullopt after recording why it is unavailable.
std::optional<RadGrammar> radical(SuiteResult& r, const Subject& s) {
  try {
    return rad_grammar(s.phi(), s.curl);
  } catch (const PreconditionError& e) {
    hypothesis(r, s, false, std::string("radical grammar unavailable: ") + e.what());
    return std::nullopt;
  }
}

Word random_word(Rng& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> code(0, static_cast<std::uint32_t>(2 * rank - 1));
  Word w(len(rng));
  for (auto& l : w) l = Letter::from_code(code(rng));
  return w;
}

MonoidEndo random_endo(Rng& rng, std::size_t rank, std::size_t max_len) {
  std::vector<Word> images;
  for (std::size_t g = 0; g < rank; ++g) images.push_back(random_word(rng, rank, max_len));
  return MonoidEndo(std::move(images));
}

std::string text(std::span<const Letter> w, const Alphabet& a) { return format_word(w, a); }

std::string show(const MunnElement& x, const Alphabet& a) {
  return display_word(canonical_word(x), a);
}

std::string show_endo(const MonoidEndo& phi, const Alphabet& a) {
  std::string out;
  for (std::uint32_t g = 0; g < phi.rank(); ++g) {
    if (g) out += ", ";
    out += std::string(1, a.name(g)) + "->" + display_word(phi.image(g), a);
  }
  return out;
}

oracle::Trace trace_of(const MunnElement& x, const Alphabet& a) {
  oracle::Trace t;
  for (const auto& v : x.vertices()) t.vertices.insert(format_word(v, a));
  t.root = format_word(x.root(), a);
  return t;
}

std::map<char, std::string> naive_images(const MonoidEndo& phi, const Alphabet& a) {
  std::map<char, std::string> m;
  for (std::uint32_t g = 0; g < phi.rank(); ++g) m[a.name(g)] = format_word(phi.image(g), a);
  return m;
}

using ElementSet = std::set<MunnElement, CanonicalLess>;

ElementSet as_set(const std::vector<MunnElement>& v) { return {v.begin(), v.end()}; }

std::string describe_difference(const ElementSet& x, const ElementSet& y, const Alphabet& a) {
  std::ostringstream out;
  out << x.size() << " vs " << y.size() << " elements";
  for (const auto& e : x) {
    if (!y.count(e)) {
      out << "; only left: " << show(e, a);
      break;
    }
  }
  for (const auto& e : y) {
    if (!x.count(e)) {
      out << "; only right: " << show(e, a);
      break;
    }
  }
  return out.str();
}

MunnElement fw(std::string_view w, const Alphabet& a) { return from_word(parse_word(w, a)); }

// ---------------------------------------------------------------------------

void suite_axioms(const SuiteOptions& o, SuiteResult& r) {
  Rng rng(o.seed);
  std::uniform_int_distribution<std::size_t> rank_dist(1, 3);
  const MunnElement one;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t rank = rank_dist(rng);
    const Alphabet a(rank);
    const Word u = random_word(rng, rank, 12), v = random_word(rng, rank, 12),
               w = random_word(rng, rank, 12);
    const auto x = from_word(u), y = from_word(v), z = from_word(w);
    auto ctx = [&] { return "u=" + text(u, a) + " v=" + text(v, a) + " w=" + text(w, a); };
    r.check(trace_of(x, a) == oracle::trace(text(u, a)), [&] { return "trace: " + ctx(); });
    r.check(x * inverse(x) * x == x, [&] { return "x x' x = x: " + ctx(); });
    r.check(inverse(x) * x * inverse(x) == inverse(x), [&] { return "x' x x' = x': " + ctx(); });
    const auto e = x * inverse(x), f = y * inverse(y);
    r.check(e * f == f * e, [&] { return "idempotents commute: " + ctx(); });
    r.check((x * y) * z == x * (y * z), [&] { return "associativity: " + ctx(); });
    r.check(from_word(concat(u, v)) == x * y, [&] { return "homomorphism: " + ctx(); });
    r.check(x * one == x && one * x == x, [&] { return "identity: " + ctx(); });
    r.check(inverse(inverse(x)) == x, [&] { return "involution: " + ctx(); });
    r.check(inverse(x) == from_word(invert_word(u)), [&] { return "inverse of word: " + ctx(); });
    r.check(from_word(concat(u, invert_word(u))).vertices() == x.vertices(),
            [&] { return "T(uu') = T(u): " + ctx(); });
    r.check(from_word(canonical_word(x)) == x, [&] { return "canonical word: " + ctx(); });
    r.check(trace_of(x * y, a) == oracle::multiply(oracle::trace(text(u, a)), oracle::trace(text(v, a))),
            [&] { return "product trace: " + ctx(); });
  }
}

void suite_word_problem(const SuiteOptions&, SuiteResult& r) {
  const Alphabet a(2);
  std::vector<Word> words;
  for_each_word(2, 5, [&](const Word& w) { words.push_back(w); });
  std::vector<MunnElement> elements;
  std::vector<oracle::Trace> traces;
  for (const auto& w : words) {
    elements.push_back(from_word(w));
    traces.push_back(oracle::trace(text(w, a)));
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      r.check(equals(elements[i], elements[j]) == (traces[i] == traces[j]),
              [&] { return text(words[i], a) + " vs " + text(words[j], a); });
    }
  }
  r.notes.push_back(std::to_string(words.size()) + " words, all ordered pairs");
}

void suite_order(const SuiteOptions& o, SuiteResult& r) {
  Rng rng(o.seed);
  const Alphabet a(2);
  std::vector<Word> words;
  for_each_word(2, 6, [&](const Word& w) { words.push_back(w); });
  std::vector<oracle::Trace> traces;
  for (const auto& w : words) traces.push_back(oracle::trace(text(w, a)));
  const std::size_t count = std::min<std::size_t>(o.instances, 200);
  for (std::size_t i = 0; i < count; ++i) {
    const Word xw = random_word(rng, 2, 8);
    const auto x = from_word(xw);
    const auto xt = oracle::trace(text(xw, a));
    const auto nfa = to_automaton(x);
    for (std::size_t j = 0; j < words.size(); ++j) {
      const bool expected = oracle::leq(xt, traces[j]);
      r.check(nfa.accepts(words[j]) == expected && leq(x, from_word(words[j])) == expected,
              [&] { return "x=" + text(xw, a) + " w=" + text(words[j], a); });
    }
  }
  r.notes.push_back(std::to_string(count) + " random x against " + std::to_string(words.size()) +
                    " words");
}

MonoidEndo instance_endo(const SuiteOptions& o, Rng& rng) {
  if (o.spec) return o.spec->endo;
  return random_endo(rng, 2, 3);
}

void suite_permv(const SuiteOptions& o, SuiteResult& r) {
  Rng rng(o.seed);
  const Alphabet a = o.spec ? o.spec->alphabet : Alphabet(2);
  const auto ball = enumerate_elements(a, 3);
  for (std::size_t i = 0; i < o.instances; ++i) {
    const auto phi = instance_endo(o, rng);
    const auto theta = induced_fg(phi);
    const auto images = naive_images(phi, a);
    auto xs = ball;
    xs.push_back(from_word(random_word(rng, a.size(), 6)));
    for (const auto& x : xs) {
      const bool fixed = is_fixed(phi, x);
      auto ctx = [&] { return show_endo(phi, a) + " x=" + show(x, a); };
      r.check(fixed == fixed_check_permv(phi, x), [&] { return "fixed vs criterion: " + ctx(); });
      r.check(fixed == oracle::is_fixed(images, text(canonical_word(x), a)),
              [&] { return "fixed vs oracle: " + ctx(); });
      if (!fixed) continue;
      for (const auto& t : x.vertices()) {
        r.check(x.contains_vertex(apply_fg(theta, t)),
                [&] { return "vertex image leaves tree: " + ctx() + " t=" + text(t.letters(), a); });
      }
    }
  }
}

void suite_embed(const SuiteOptions& o, SuiteResult& r) {
  Rng rng(o.seed);
  const Alphabet a = o.spec ? o.spec->alphabet : Alphabet(2);
  for (std::size_t i = 0; i < o.instances; ++i) {
    const auto phi = instance_endo(o, rng);
    const auto theta = induced_fg(phi);
    const Word uw = random_word(rng, a.size(), 6);
    const auto u = from_word(uw);
    const auto u_phi = apply(phi, u);
    auto embeds = [&](const ReducedWord& p, std::span<const Letter> v) {
      const auto v_phi = apply(phi, from_word(v));
      const auto shift = apply_fg(theta, p);
      for (const auto& t : v_phi.vertices()) {
        if (!u_phi.contains_vertex(multiply_reduced(shift, t))) return false;
      }
      return true;
    };
    const auto verts = u.vertices();
    for (const auto& p : verts) {
      for (const auto& q : verts) {
        const auto v = multiply_reduced(invert(p), q);
        r.check(embeds(p, v.letters()), [&] {
          return show_endo(phi, a) + " u=" + text(uw, a) + " p=" + text(p.letters(), a) +
                 " v=" + text(v.letters(), a);
        });
      }
    }
    // A walk with backtracking from a random vertex.
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    std::size_t node = *u.find_vertex(verts[pick(rng)].letters());
    const auto start = u.vertex(node);
    Word walk;
    for (int step = 0; step < 8; ++step) {
      std::vector<std::pair<Letter, std::size_t>> moves;
      for (Letter l : a.letters()) {
        if (auto t = u.step(node, l)) moves.emplace_back(l, *t);
      }
      if (moves.empty()) break;
      std::uniform_int_distribution<std::size_t> m(0, moves.size() - 1);
      auto [l, t] = moves[m(rng)];
      walk.push_back(l);
      node = t;
    }
    r.check(embeds(start, walk), [&] {
      return show_endo(phi, a) + " u=" + text(uw, a) + " walk=" + text(walk, a);
    });
  }
}

void suite_edge_stable(const SuiteOptions& o, SuiteResult& r) {
  Rng rng(o.seed);
  const Alphabet a = o.spec ? o.spec->alphabet : Alphabet(2);
  const OrbitCutoffs cutoffs{256, 256};
  const auto ball = enumerate_elements(a, 4);
  std::size_t fixed_total = 0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const auto phi = instance_endo(o, rng);
    const auto dynamics = stable_letters(phi, cutoffs);
    for (const auto& x : ball) {
      if (!is_fixed(phi, x)) continue;
      ++fixed_total;
      for (Letter l : edge_letters(x)) {
        r.check(dynamics.of(l).stable(), [&] {
          return show_endo(phi, a) + " x=" + show(x, a) + " letter " + std::string(1, a.symbol(l)) +
                 " is " + to_string(dynamics.of(l).status);
        });
      }
    }
  }
  r.notes.push_back(std::to_string(fixed_total) + " fixed elements examined");
}

void suite_tiles(const SuiteOptions& o, SuiteResult& r) {
  constexpr std::size_t kVertices = 5;
  for (const auto& s : subjects(o, {"aba", "identity", "aca3"})) {
    const auto& a = s.alphabet();
    const auto gens = fix_generators(s.phi(), s.curl);
    r.notes.push_back(s.name + ": " + std::to_string(gens.generators.size()) + " generators, " +
                      to_string(gens.certificate) + " (" + gens.note + ")");
    for (const auto& g : gens.generators) {
      r.check(is_fixed(s.phi(), g), [&] { return s.name + ": generator not fixed " + show(g, a); });
    }
    const auto fixed = as_set(fix_enumerate(s.phi(), a, kVertices, o.threads));
    const auto generated = as_set(submonoid_ball(gens.generators, kVertices));
    if (s.curated) {
      r.check(gens.certificate == FixCertificate::Complete,
              [&] { return s.name + ": certificate " + to_string(gens.certificate); });
      r.check(is_injective(induced_fg(s.phi())), [&] { return s.name + ": induced map not injective"; });
    }
    if (gens.certificate == FixCertificate::Complete) {
      r.check(fixed == generated, [&] { return s.name + ": " + describe_difference(fixed, generated, a); });
    } else {
      r.check(std::includes(fixed.begin(), fixed.end(), generated.begin(), generated.end(), CanonicalLess{}),
              [&] { return s.name + ": generated element not fixed"; });
    }
  }
}

// Bounded oracle: x is periodic if it returns within max_steps without any
// iterate growing past max_vertices.
bool periodic_within(const MonoidEndo& phi, const MunnElement& x, std::size_t max_steps,
                     std::size_t max_vertices = 4096) {
  MunnElement y = x;
  for (std::size_t k = 1; k <= max_steps; ++k) {
    y = apply(phi, y);
    if (y == x) return true;
    if (y.vertex_count() > max_vertices) return false;
  }
  return false;
}

void suite_perio(const SuiteOptions& o, SuiteResult& r) {
  constexpr std::size_t kVertices = 4;
  for (const auto& s : subjects(o, {"swap", "double", "cycle3"})) {
    const auto& a = s.alphabet();
    const auto per = per_generators(s.phi(), s.curl);
    std::string listed;
    for (const auto& g : per.generators) listed += " " + show(g, a);
    r.notes.push_back(s.name + ": B = {" + listed + " }, m = " + std::to_string(per.m) +
                      (per.complete ? ", complete" : ", possibly incomplete: " + per.note));
    if (s.name == "swap") {
      ElementSet letters;
      for (Letter l : a.letters()) letters.insert(from_word(Word{l}));
      r.check(as_set(per.generators) == letters, [&] { return "swap: B is not the four letters"; });
    }
    if (s.name == "double") {
      r.check(per.generators.empty() && per.complete, [&] { return "double: B should be empty"; });
    }
    std::vector<MunnElement> periodic;
    for (const auto& x : enumerate_elements(a, kVertices)) {
      if (periodic_within(s.phi(), x, 64)) periodic.push_back(x);
    }
    const auto expected = as_set(periodic);
    const auto generated = as_set(submonoid_ball(per.generators, kVertices));
    if (per.complete) {
      r.check(expected == generated, [&] { return s.name + ": " + describe_difference(expected, generated, a); });
    } else {
      r.check(std::includes(expected.begin(), expected.end(), generated.begin(), generated.end(),
                            CanonicalLess{}),
              [&] { return s.name + ": generated element not periodic"; });
    }
    if (s.name == "swap") {
      r.check(expected.size() == enumerate_elements(a, kVertices).size(),
              [&] { return "swap: periodic points miss part of the ball"; });
    }
    if (s.name == "double") {
      r.check(expected.size() == 1, [&] { return "double: periodic points beyond the identity"; });
    }
  }
}

void suite_ppff(const SuiteOptions& o, SuiteResult& r) {
  const std::map<std::string, Verdict> expected{
      {"swap", Verdict::Infinite}, {"double", Verdict::Finite}, {"identity", Verdict::Infinite}};
  for (const auto& s : subjects(o, {"swap", "double", "identity"})) {
    const auto rep = is_fix_infinite(s.phi(), s.curl);
    std::vector<std::size_t> counts;
    for (std::size_t v = 2; v <= 5; ++v) counts.push_back(fix_enumerate(s.phi(), s.alphabet(), v, o.threads).size());
    std::string shown;
    for (auto c : counts) shown += " " + std::to_string(c);
    r.notes.push_back(s.name + ": " + to_string(rep.verdict) + " (" + rep.note + "); fixed counts" + shown);
    const bool grows = counts.back() > counts.front();
    if (auto it = expected.find(s.name); s.curated && it != expected.end()) {
      r.check(rep.verdict == it->second, [&] { return s.name + ": verdict " + to_string(rep.verdict); });
    }
    if (rep.verdict == Verdict::Infinite) {
      r.check(grows, [&] { return s.name + ": infinite verdict but no growth"; });
      r.check(rep.witness && !rep.witness->is_idempotent() && periodic_within(s.phi(), *rep.witness, 1 << 12),
              [&] { return s.name + ": witness is not a non-idempotent periodic point"; });
    }
    if (rep.verdict == Verdict::Finite) {
      r.check(!grows, [&] { return s.name + ": finite verdict but counts grow"; });
    }
  }
}

void suite_cfrad(const SuiteOptions& o, SuiteResult& r) {
  constexpr std::size_t kMaxLen = 8;
  for (const auto& s : subjects(o, {"swap", "aba"})) {
    const auto& a = s.alphabet();
    const auto maybe = radical(r, s);
    if (!maybe) continue;
    const RadGrammar& rad = *maybe;
    const CfgRecognizer recognizer(rad.grammar);
    std::size_t accepted = 0, words = 0;
    for_each_word(a.size(), kMaxLen, [&](const Word& w) {
      ++words;
      const bool in_grammar = recognizer.accepts(w);
      accepted += in_grammar;
      r.check(in_grammar == rad_membership_direct(s.phi(), rad.n, from_word(w)),
              [&] { return s.name + ": w=" + text(w, a) + " grammar=" + (in_grammar ? "yes" : "no"); });
    });
    std::size_t radical = 0;
    for (const auto& x : enumerate_elements(a, 4)) {
      if (!rad_membership_direct(s.phi(), rad.n, x)) continue;
      ++radical;
      r.check(!cfg_is_empty(intersect_cfg_nfa(rad.grammar, preimage_automaton(x))),
              [&] { return s.name + ": no accepted word represents " + show(x, a); });
    }
    r.notes.push_back(s.name + ": n = " + std::to_string(rad.n) + ", " + std::to_string(accepted) +
                      " of " + std::to_string(words) + " words up to length " +
                      std::to_string(kMaxLen) + " accepted, " + std::to_string(radical) +
                      " radical elements with <= 4 vertices represented" +
                      (rad.caveat.empty() ? "" : "; " + rad.caveat));
  }
}

void suite_exnonrat(const SuiteOptions& o, SuiteResult& r) {
  for (const auto& s : subjects(o, {"swap"})) {
    const auto h = fix_basis_bounded(induced_fg(s.phi()), 8);
    if (!hypothesis(r, s, h.graph.vertex_count() == 1 && h.graph.edge_count() == 0,
                    "the induced map fixes a nontrivial word")) {
      continue;
    }
    const auto maybe = radical(r, s);
    if (!maybe) continue;
    const RadGrammar& rad = *maybe;
    if (!hypothesis(r, s, !cfg_is_finite(rad.grammar), "the radical grammar is finite")) continue;
    const auto rep = rad_is_rational(s.phi(), s.curl);
    r.check(rep.verdict == Rationality::NotRational,
            [&] { return s.name + ": verdict " + to_string(rep.verdict) + " (" + rep.note + ")"; });
    r.notes.push_back(s.name + ": radical grammar infinite, fixed subgroup trivial (" +
                      std::string(h.exact ? "exact" : "up to length 8") + "), radical " +
                      to_string(rep.verdict) + ": " + rep.note);
  }
}

void suite_nonrat(const SuiteOptions& o, SuiteResult& r) {
  const std::map<std::string, Rationality> expected{{"swap", Rationality::NotRational},
                                                    {"double", Rationality::Rational},
                                                    {"identity", Rationality::Unknown}};
  for (const auto& s : subjects(o, {"swap", "double", "identity"})) {
    const auto rep = rad_is_rational(s.phi(), s.curl);
    r.notes.push_back(s.name + ": " + to_string(rep.verdict) + " (" + rep.note + ")");
    if (auto it = expected.find(s.name); s.curated && it != expected.end()) {
      r.check(rep.verdict == it->second, [&] { return s.name + ": verdict " + to_string(rep.verdict); });
    }
    if (rep.verdict == Rationality::NotRational) {
      r.check(!rep.language_finite, [&] { return s.name + ": not rational yet finite grammar"; });
    }
  }
}

void suite_consen(const SuiteOptions& o, SuiteResult& r) {
  constexpr std::size_t kVertices = 4;
  constexpr std::size_t kDepth = 6;
  for (const auto& s : subjects(o, {"swap"})) {
    const auto& a = s.alphabet();
    const auto per = per_generators(s.phi(), s.curl);
    if (!hypothesis(r, s, per.complete, "periodic generators not certified complete: " + per.note)) continue;
    const auto maybe = radical(r, s);
    if (!maybe) continue;
    const RadGrammar& rad = *maybe;
    const auto c = consen_construction(s.phi(), per.m);
    r.check(c.gamma.epsilon_free(), [&] { return s.name + ": gamma erases a letter"; });
    for (std::size_t i = 1; i < per.m; ++i) {
      for (std::uint32_t g = 0; g < a.size(); ++g) {
        const Word gen{Letter(g, false)};
        r.check(from_word(c.psi[i].image(g)) == apply_power(s.phi(), from_word(gen), i),
                [&] { return s.name + ": psi_" + std::to_string(i) + " disagrees on " + a.name(g); });
      }
    }
    if (s.name == "swap") {
      const auto w = c.image(parse_word("aA", a));
      r.check(text(w, a) == "aAaAbBbBaA", [&] { return "swap: image of aA is " + text(w, a); });
    }
    const auto en = consen_language(c, rad.grammar, kDepth);
    ElementSet images;
    for (const auto& w : en.images) {
      const auto x = from_word(w);
      r.check(is_fixed(s.phi(), x), [&] { return s.name + ": image not fixed " + text(w, a); });
      if (x.vertex_count() <= kVertices) images.insert(x);
    }
    const auto fixed = as_set(fix_enumerate(s.phi(), a, kVertices, o.threads));
    r.check(images == fixed, [&] { return s.name + ": " + describe_difference(images, fixed, a); });
    r.notes.push_back(s.name + ": m = " + std::to_string(per.m) + ", n = " + std::to_string(rad.n) +
                      ", " + std::to_string(en.words_accepted) + " words up to length " +
                      std::to_string(kDepth) + ", " + std::to_string(images.size()) +
                      " distinct images with <= " + std::to_string(kVertices) + " vertices");
  }
}

void suite_grper(const SuiteOptions& o, SuiteResult& r) {
  for (const auto& s : subjects(o, {"swap"})) {
    const auto& a = s.alphabet();
    const auto theta = induced_fg(s.phi());
    if (!hypothesis(r, s, is_letter_permutation(theta) && fixed_words_bounded(theta, 6).size() == 1,
                    "needs a letter permutation fixing no nontrivial word")) {
      continue;
    }
    for (const auto& x : fix_enumerate(s.phi(), a, 5, o.threads)) {
      r.check(x.is_idempotent(), [&] { return s.name + ": non-idempotent fixed point " + show(x, a); });
    }
    if (a.size() < 2) continue;
    for (std::size_t m = 1; m <= 5; ++m) {
      // a^m A^m b^m B^m ..., one factor per generator.
      MunnElement e;
      for (std::uint32_t g = 0; g < a.size(); ++g) {
        Word w;
        for (std::size_t i = 0; i < m; ++i) w.push_back(Letter(g, false));
        for (std::size_t i = 0; i < m; ++i) w.push_back(Letter(g, true));
        e = e * from_word(w);
      }
      r.check(e.is_idempotent() && e.norm() == m && is_fixed(s.phi(), e),
              [&] { return s.name + ": witness of norm " + std::to_string(m) + " fails " + show(e, a); });
    }
    r.notes.push_back(s.name + ": fixed idempotents of norm 1..5 exhibited");
  }
}

void suite_gap(const SuiteOptions& o, SuiteResult& r) {
  for (const auto& s : subjects(o, {"gap"})) {
    const auto& a = s.alphabet();
    const auto rep = tiles(s.phi());
    const auto gens = fix_generators(s.phi(), s.curl);
    const auto fixed = as_set(fix_enumerate(s.phi(), a, 4, o.threads));
    if (s.name == "gap") {
      const auto b = fw("b", a);
      bool found = false;
      for (const auto& t : rep.violations) {
        if (t.element == b) found = true;
      }
      r.check(found, [&] { return "gap: tile b is not reported as a violation"; });
      r.check(apply(s.phi(), b) == fw("bB", a), [&] { return "gap: b does not map to bB"; });
      r.check(!fixed.count(b), [&] { return "gap: b is fixed"; });
    }
    if (!rep.violations.empty()) {
      r.check(gens.certificate == FixCertificate::SoundPossiblyIncomplete,
              [&] { return s.name + ": certificate not downgraded"; });
    }
    for (const auto& t : rep.violations) {
      r.check(!is_fixed(s.phi(), t.element), [&] { return s.name + ": violation tile is fixed"; });
      r.notes.push_back(s.name + ": tile " + show(t.element, a) + " maps to " +
                        show(apply(s.phi(), t.element), a));
    }
    r.notes.push_back(s.name + ": certificate " + to_string(gens.certificate) + " (" + gens.note + ")");
  }
}

using SuiteFn = void (*)(const SuiteOptions&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"axioms", suite_axioms},   {"word-problem", suite_word_problem},
      {"order", suite_order},     {"permv", suite_permv},
      {"embed", suite_embed},     {"edge-stable", suite_edge_stable},
      {"tiles", suite_tiles},     {"perio", suite_perio},
      {"ppff", suite_ppff},       {"cfrad", suite_cfrad},
      {"exnonrat", suite_exnonrat}, {"nonrat", suite_nonrat},
      {"consen", suite_consen},   {"grper", suite_grper},
      {"gap", suite_gap},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) {
      SuiteResult r;
      r.name = n;
      fn(options, r);
      return r;
    }
  }
  throw PreconditionError("unknown suite '" + std::string(name) + "'");
}

}  // namespace fim
