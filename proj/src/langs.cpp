#include "fim/langs.hpp"

#include <algorithm>

#include "fim/errors.hpp"

namespace fim {

namespace {

// "D" doubles as the inverse of a generator named d; avoid the clash.
std::string dyck_name(const Alphabet& alphabet) { return alphabet.letter_for('D') ? "D_" : "D"; }

std::uint32_t add_dyck_rules(Cfg& g, const Alphabet& alphabet) {
  const auto d = g.add_nonterminal(dyck_name(alphabet));
  g.add_production(d, {});
  for (Letter x : alphabet.letters()) {
    g.add_production(d, {Symbol::n(d), Symbol::t(x), Symbol::n(d), Symbol::t(x.inverse()),
                         Symbol::n(d)});
  }
  return d;
}

}  // namespace

Cfg dyck_grammar(const Alphabet& alphabet) {
  Cfg g(alphabet.size());
  g.set_start(add_dyck_rules(g, alphabet));
  return g;
}

Cfg subgroup_preimage_grammar(const StallingsGraph& graph, const Alphabet& alphabet) {
  Cfg g(alphabet.size());
  std::vector<std::uint32_t> vertex;
  for (std::size_t p = 0; p < graph.vertex_count(); ++p) {
    vertex.push_back(g.add_nonterminal("N_" + std::to_string(p)));
  }
  const auto d = add_dyck_rules(g, alphabet);
  g.set_start(vertex[graph.base()]);
  g.add_production(vertex[graph.base()], {Symbol::n(d)});
  for (std::size_t p = 0; p < graph.vertex_count(); ++p) {
    for (const auto& [x, q] : graph.edges(p)) {
      if (x.generator() >= alphabet.size()) {
        throw PreconditionError("subgroup graph uses a letter outside the alphabet");
      }
      g.add_production(vertex[p], {Symbol::n(d), Symbol::t(x), Symbol::n(vertex[q])});
    }
  }
  return g;
}

Nfa fix_power_language(const MonoidEndo& phi, std::size_t n, const TileReport& tiles,
                       const CurlReport& curl) {
  if (tiles.power != n) {
    throw PreconditionError("tile report is for power " + std::to_string(tiles.power) +
                            ", not " + std::to_string(n));
  }
  if (!tiles.decided) {
    throw PreconditionError("stability of some letters is undecided, so tiles may be missing");
  }
  if (!tiles.violations.empty()) {
    throw PreconditionError(std::to_string(tiles.violations.size()) +
                            " tile(s) are not fixed; their products would leave the fixed points");
  }
  if (!tiles.verified_fixed.empty()) {
    if (!curl.certified()) {
      throw PreconditionError("curl " + std::to_string(curl.value) +
                              " is only a lower bound; tile products may miss fixed points");
    }
    if (n % curl.value != 0) {
      throw PreconditionError("power " + std::to_string(n) + " is not a multiple of the curl " +
                              std::to_string(curl.value));
    }
  }
  Nfa nfa;
  const auto hub = nfa.add_state(true);
  nfa.set_initial(hub);
  for (const auto& t : tiles.verified_fixed) {
    if (apply_power(phi, t.element, n) != t.element) {
      throw PreconditionError("tile report does not match the endomorphism");
    }
    const Word w = canonical_word(t.element);
    auto from = hub;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto to = (i + 1 == w.size()) ? hub : nfa.add_state(false);
      nfa.add_transition(from, w[i], to);
      from = to;
    }
  }
  return nfa;
}

RadGrammar rad_grammar(const MonoidEndo& phi, const CurlReport& curl, const RadOptions& options) {
  RadGrammar out;
  out.n = options.n ? options.n : curl.value;
  const Alphabet alphabet(phi.rank());
  out.h = fix_basis_bounded(induced_fg(phi), options.fix_len_max);
  out.tiles = tiles_of_power(phi, out.n, stable_letters(phi, options.cutoffs));
  out.language = fix_power_language(phi, out.n, out.tiles, curl);
  out.grammar = intersect_cfg_nfa(subgroup_preimage_grammar(out.h.graph, alphabet), out.language);
  std::vector<std::string> caveats;
  if (!out.h.exact) {
    caveats.push_back("fixed subgroup of the induced map searched up to length " +
                      std::to_string(out.h.max_len));
  }
  if (curl.status == CurlStatus::Asserted && !out.tiles.verified_fixed.empty()) {
    caveats.push_back("curl asserted: " + curl.evidence);
  }
  for (const auto& c : caveats) out.caveat += (out.caveat.empty() ? "" : "; ") + c;
  return out;
}

bool rad_membership_direct(const MonoidEndo& phi, std::size_t n, const MunnElement& x) {
  if (n == 0) throw PreconditionError("radical index must be at least 1");
  const auto root = x.root();
  return apply_power(phi, x, n) == x && apply_fg(induced_fg(phi), root) == root;
}

MunnElement radical_to_fix(const MonoidEndo& phi, std::size_t n, const MunnElement& x,
                           const OrbitCutoffs& cutoffs) {
  if (!rad_membership_direct(phi, n, x)) {
    throw PreconditionError("element is not in radical " + std::to_string(n));
  }
  auto orbit = idempotent_orbit(phi, x * inverse(x), cutoffs);
  auto result = kappa(orbit) * x;
  if (!is_fixed(phi, result)) throw PreconditionError("radical element did not yield a fixed point");
  return result;
}

TrackedAlphabet::TrackedAlphabet(std::size_t base_rank, std::size_t copies)
    : base_rank_(base_rank), copies_(copies) {
  if (base_rank == 0) throw PreconditionError("tracked alphabet needs a nonempty base");
}

Letter TrackedAlphabet::copy(Letter l, std::size_t i) const {
  if (l.generator() >= base_rank_ || i > copies_) throw PreconditionError("no such tracked copy");
  return Letter(static_cast<std::uint32_t>(i * base_rank_ + l.generator()), l.is_inverse());
}

Letter TrackedAlphabet::base(Letter l) const {
  return Letter(static_cast<std::uint32_t>(l.generator() % base_rank_), l.is_inverse());
}

LetterHom::LetterHom(std::size_t source_rank, std::size_t target_rank)
    : images_(source_rank), target_rank_(target_rank) {}

void LetterHom::set(std::uint32_t generator, Word image) {
  for (Letter l : image) {
    if (l.generator() >= target_rank_) throw PreconditionError("image outside the target alphabet");
  }
  images_.at(generator) = std::move(image);
}

const Word& LetterHom::image(std::uint32_t generator) const {
  if (!defined(generator)) throw PreconditionError("homomorphism undefined on this letter");
  return *images_[generator];
}

Word LetterHom::apply(std::span<const Letter> w) const {
  Word out;
  for (Letter l : w) {
    const auto& img = image(l.generator());
    if (l.is_inverse()) {
      auto inv = invert_word(img);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return out;
}

bool LetterHom::epsilon_free() const {
  return std::all_of(images_.begin(), images_.end(),
                     [](const auto& img) { return !img || !img->empty(); });
}

Word ConsenConstruction::tracked_word(std::span<const Letter> u) const {
  const Word u_inv = invert_word(u);
  Word out(u.begin(), u.end());
  out.insert(out.end(), u_inv.begin(), u_inv.end());
  for (std::size_t i = 1; i < m; ++i) {
    auto forward = beta[i].apply(u);
    auto backward = beta[i].apply(u_inv);
    out.insert(out.end(), forward.begin(), forward.end());
    out.insert(out.end(), backward.begin(), backward.end());
  }
  out.insert(out.end(), u.begin(), u.end());
  return out;
}

ConsenConstruction consen_construction(const MonoidEndo& phi, std::size_t m) {
  if (m == 0) throw PreconditionError("m must be at least 1");
  const std::size_t k = phi.rank();
  ConsenConstruction c;
  c.m = m;
  c.tracked = TrackedAlphabet(k, m - 1);
  c.psi.push_back(MonoidEndo::identity(k));
  for (std::size_t i = 1; i < m; ++i) c.psi.push_back(compose(c.psi.back(), phi));
  c.b.assign(m, std::vector<bool>(k, false));
  c.beta.assign(m, LetterHom(k, c.tracked.rank()));
  c.gamma = LetterHom(c.tracked.rank(), k);
  for (std::uint32_t g = 0; g < k; ++g) c.gamma.set(g, {Letter(g, false)});
  for (std::size_t i = 1; i < m; ++i) {
    for (std::uint32_t g = 0; g < k; ++g) {
      c.b[i][g] = !c.psi[i].image(g).empty();
      if (c.b[i][g]) {
        Letter copy = c.tracked.copy(Letter(g, false), i);
        c.beta[i].set(g, {copy});
        c.gamma.set(copy.generator(), c.psi[i].image(g));
      } else {
        c.beta[i].set(g, {});
      }
    }
  }
  if (!c.gamma.epsilon_free()) throw PreconditionError("gamma erases a letter");
  return c;
}

ConsenEnumeration consen_language(const ConsenConstruction& construction, const Cfg& c,
                                  std::size_t max_len) {
  if (c.rank() != construction.tracked.base_rank()) {
    throw PreconditionError("grammar alphabet does not match the endomorphism");
  }
  const CfgRecognizer recognizer(c);
  ConsenEnumeration out;
  out.max_len = max_len;
  for_each_word(c.rank(), max_len, [&](const Word& u) {
    if (!recognizer.accepts(u)) return;
    ++out.words_accepted;
    out.images.push_back(construction.image(u));
  });
  return out;
}

std::string to_string(Rationality r) {
  switch (r) {
    case Rationality::Rational:
      return "rational";
    case Rationality::NotRational:
      return "not rational";
    case Rationality::Unknown:
      return "unknown";
  }
  return "unknown";
}

RationalityReport rad_is_rational(const MonoidEndo& phi, const CurlReport& curl,
                                  const RadOptions& options) {
  RationalityReport out;
  const auto h = fix_basis_bounded(induced_fg(phi), options.fix_len_max);
  if (h.graph.vertex_count() != 1 || h.graph.edge_count() != 0) {
    out.note = "the induced map fixes a nontrivial word, so the criterion does not apply";
    return out;
  }
  out.hypothesis_bounded = !h.exact;
  RadGrammar rad;
  try {
    rad = rad_grammar(phi, curl, options);
  } catch (const PreconditionError& e) {
    out.note = std::string("radical grammar unavailable: ") + e.what();
    return out;
  }
  out.language_finite = cfg_is_finite(rad.grammar);
  if (out.language_finite) {
    out.verdict = Rationality::Rational;
    out.note = "the radical grammar generates a finite language";
  } else if (!rad.tiles.verified_fixed.empty()) {
    // t^k t^-k are pairwise distinct fixed idempotents, so the radical is infinite.
    out.verdict = Rationality::NotRational;
    out.note = "the radical is infinite and the induced map has trivial fixed subgroup";
  } else if (rad.tiles.decided) {
    out.verdict = Rationality::Rational;
    out.note = "no tiles: the radical is trivial";
  } else {
    out.note = "infinite grammar but the radical's size is undecided";
  }
  if (out.hypothesis_bounded) {
    out.note += " (trivial fixed subgroup checked up to length " + std::to_string(h.max_len) + ")";
  }
  return out;
}

}  // namespace fim
