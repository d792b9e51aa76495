#include "fim/endo.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace fim {

MonoidEndo::MonoidEndo(std::vector<Word> images) : images_(std::move(images)) {
  if (images_.empty()) throw PreconditionError("endomorphism needs at least one generator");
  for (const auto& img : images_) {
    for (Letter l : img) {
      if (l.generator() >= images_.size()) {
        throw PreconditionError("image uses a letter outside the alphabet");
      }
    }
    by_code_.push_back(img);
    by_code_.push_back(invert_word(img));
  }
}

MonoidEndo MonoidEndo::identity(std::size_t rank) {
  std::vector<Word> images;
  for (std::uint32_t g = 0; g < rank; ++g) images.push_back({Letter(g, false)});
  return MonoidEndo(std::move(images));
}

Word substitute(const MonoidEndo& phi, std::span<const Letter> w) {
  Word out;
  for (Letter l : w) {
    const auto& img = phi.image(l);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

MunnElement apply(const MonoidEndo& phi, const MunnElement& x) {
  return map_element(x, phi.images_by_code());
}

MunnElement apply_power(const MonoidEndo& phi, const MunnElement& x, std::size_t n) {
  MunnElement current = x;
  for (std::size_t i = 0; i < n; ++i) current = apply(phi, current);
  return current;
}

FreeGroupEndo induced_fg(const MonoidEndo& phi) {
  std::vector<ReducedWord> images;
  for (const auto& img : phi.images()) images.push_back(reduce(img));
  return FreeGroupEndo(std::move(images));
}

MonoidEndo compose(const MonoidEndo& first, const MonoidEndo& second) {
  std::vector<Word> images;
  for (const auto& img : first.images()) images.push_back(substitute(second, img));
  return MonoidEndo(std::move(images));
}

MonoidEndo power(const MonoidEndo& phi, std::size_t n, std::size_t max_total) {
  MonoidEndo result = MonoidEndo::identity(phi.rank());
  for (std::size_t i = 0; i < n; ++i) {
    result = compose(result, phi);
    std::size_t total = 0;
    for (const auto& img : result.images()) total += img.size();
    if (total > max_total) {
      throw ResourceError("images of power " + std::to_string(n) + " exceed " +
                          std::to_string(max_total) + " letters");
    }
  }
  return result;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::UnstableCertified:
      return "unstable";
    case Stability::UnstableWithinBound:
      return "unstable-within-bound";
  }
  return "unknown";
}

std::size_t OrbitRecord::position(std::size_t n) const {
  if (!stable()) throw PreconditionError("orbit is not certified stable");
  if (n < elements.size()) return n;
  return entry_index + (n - entry_index) % cycle_length();
}

namespace {

using boost::multiprecision::cpp_int;
using Vec = std::vector<cpp_int>;
using Mat = std::vector<Vec>;

Mat mat_mul(const Mat& x, const Mat& y) {
  const std::size_t k = x.size();
  Mat out(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (x[i][l] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) out[i][j] += x[i][l] * y[l][j];
    }
  }
  return out;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

Vec abelianize(const ReducedWord& w, std::size_t rank) {
  Vec v(rank, 0);
  for (Letter l : w) v[l.generator()] += l.is_inverse() ? -1 : 1;
  return v;
}

}  // namespace

std::optional<bool> abelian_orbit_infinite(const FreeGroupEndo& theta, const ReducedWord& w) {
  // lcm of the orders of finite-order k x k integer matrices: lcm{m : phi(m) <= k}.
  static constexpr std::size_t kOrderBound[] = {1, 2, 12, 12, 120, 120, 2520};
  const std::size_t k = theta.rank();
  if (k >= std::size(kOrderBound)) return std::nullopt;
  Mat m(k, Vec(k, 0));
  for (std::uint32_t g = 0; g < k; ++g) {
    auto col = abelianize(theta.image(g), k);
    for (std::size_t i = 0; i < k; ++i) m[i][g] = col[i];
  }
  // After k steps the orbit lives where m is invertible, so finiteness is pure
  // periodicity with period dividing the order bound.
  Vec v = abelianize(w, k);
  for (std::size_t i = 0; i < k; ++i) v = mat_vec(m, v);
  Mat p(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) p[i][i] = 1;
  Mat base = m;
  for (std::size_t e = kOrderBound[k]; e > 0; e >>= 1) {
    if (e & 1) p = mat_mul(p, base);
    base = mat_mul(base, base);
  }
  return mat_vec(p, v) != v;
}

OrbitRecord idempotent_orbit(const MonoidEndo& phi, const MunnElement& e,
                             const OrbitCutoffs& cutoffs) {
  if (!e.is_idempotent()) throw PreconditionError("orbit requested for a non-idempotent element");
  OrbitRecord rec;
  std::size_t step_limit = cutoffs.max_steps;
  const auto theta = induced_fg(phi);
  bool certified_infinite = false;
  for (std::size_t v = 1; v < e.vertex_count() && !certified_infinite; ++v) {
    certified_infinite = abelian_orbit_infinite(theta, e.vertex(v)).value_or(false);
  }
  // A proved-infinite orbit is only traced far enough to show its growth.
  if (certified_infinite) step_limit = std::min<std::size_t>(step_limit, 16);

  std::unordered_multimap<std::size_t, std::size_t> seen;  // hash -> index
  MunnElement current = e;
  rec.max_norm = e.norm();
  std::size_t total = 0;
  while (true) {
    total += current.vertex_count();
    seen.emplace(current.hash(), rec.elements.size());
    rec.elements.push_back(current);
    if (rec.steps >= step_limit) break;
    current = apply(phi, current);
    ++rec.steps;
    rec.max_norm = std::max(rec.max_norm, current.norm());
    const auto [lo, hi] = seen.equal_range(current.hash());
    for (auto it = lo; it != hi; ++it) {
      if (rec.elements[it->second] == current) {
        rec.entry_index = it->second;
        rec.status = Stability::Stable;
        return rec;
      }
    }
    if (current.norm() > cutoffs.max_norm || current.vertex_count() > cutoffs.max_vertices ||
        total + current.vertex_count() > cutoffs.max_total_vertices) {
      break;
    }
  }
  rec.status = certified_infinite ? Stability::UnstableCertified : Stability::UnstableWithinBound;
  return rec;
}

MunnElement kappa(const OrbitRecord& orbit) {
  if (!orbit.stable()) {
    throw UnstableOrbitError("kappa needs a certified stable orbit, got " +
                                 to_string(orbit.status) + " after " +
                                 std::to_string(orbit.steps) + " steps",
                             orbit);
  }
  MunnElement product;
  for (const auto& x : orbit.elements) product = product * x;
  return product;
}

MunnElement kappa(const MonoidEndo& phi, const MunnElement& e, const OrbitCutoffs& cutoffs) {
  return kappa(idempotent_orbit(phi, e, cutoffs));
}

bool LetterDynamics::decided() const {
  return std::all_of(orbits.begin(), orbits.end(), [](const auto& o) { return o.decided(); });
}

std::vector<Letter> LetterDynamics::stable() const {
  std::vector<Letter> out;
  for (std::uint32_t c = 0; c < orbits.size(); ++c) {
    if (orbits[c].stable()) out.push_back(Letter::from_code(c));
  }
  return out;
}

std::size_t LetterDynamics::max_tail() const {
  std::size_t t = 0;
  for (const auto& o : orbits) {
    if (o.stable()) t = std::max(t, o.entry_index);
  }
  return t;
}

std::size_t LetterDynamics::cycle_lcm() const {
  std::size_t l = 1;
  for (const auto& o : orbits) {
    if (o.stable()) l = std::lcm(l, o.cycle_length());
  }
  return l;
}

LetterDynamics stable_letters(const MonoidEndo& phi, const OrbitCutoffs& cutoffs) {
  LetterDynamics d;
  for (std::uint32_t c = 0; c < 2 * phi.rank(); ++c) {
    Letter l = Letter::from_code(c);
    Word w{l, l.inverse()};
    d.orbits.push_back(idempotent_orbit(phi, from_word(w), cutoffs));
  }
  return d;
}

std::vector<Tile> TileReport::tiles() const {
  std::vector<Tile> all = verified_fixed;
  all.insert(all.end(), violations.begin(), violations.end());
  std::sort(all.begin(), all.end(), [](const Tile& x, const Tile& y) { return x.letter < y.letter; });
  return all;
}

TileReport tiles_of_power(const MonoidEndo& phi, std::size_t m, const LetterDynamics& dynamics) {
  if (m == 0) throw PreconditionError("tiles need a positive power");
  TileReport rep;
  rep.power = m;
  rep.decided = dynamics.decided();
  for (std::uint32_t c = 0; c < dynamics.orbits.size(); ++c) {
    const auto& orbit = dynamics.orbits[c];
    if (!orbit.stable()) continue;
    // The phi^m-orbit of aa^-1 is the set of positions m*j in the phi-orbit;
    // j up to tail + cycle covers it.
    std::set<std::size_t> positions;
    for (std::size_t j = 0; j <= orbit.elements.size(); ++j) positions.insert(orbit.position(m * j));
    MunnElement k;
    for (auto p : positions) k = k * orbit.elements[p];
    Letter l = Letter::from_code(c);
    Word lw{l};
    Tile t{l, k * from_word(lw)};
    if (apply_power(phi, t.element, m) == t.element) {
      rep.verified_fixed.push_back(std::move(t));
    } else {
      rep.violations.push_back(std::move(t));
    }
  }
  return rep;
}

TileReport tiles(const MonoidEndo& phi, const OrbitCutoffs& cutoffs) {
  return tiles_of_power(phi, 1, stable_letters(phi, cutoffs));
}

bool is_fixed(const MonoidEndo& phi, const MunnElement& x) { return apply(phi, x) == x; }

bool fixed_check_permv(const MonoidEndo& phi, const MunnElement& x) {
  const auto e = x * inverse(x);
  const auto root = x.root();
  return is_fixed(phi, e) && apply_fg(induced_fg(phi), root) == root;
}

std::optional<std::vector<MunnElement>> tile_factorization(const MonoidEndo& phi,
                                                           const MunnElement& x,
                                                           const LetterDynamics& dynamics) {
  (void)phi;
  std::vector<MunnElement> factors;
  MunnElement product;
  for (Letter l : canonical_word(x)) {
    const auto& orbit = dynamics.of(l);
    if (!orbit.stable()) return std::nullopt;
    Word lw{l};
    factors.push_back(kappa(orbit) * from_word(lw));
    product = product * factors.back();
  }
  if (product != x) return std::nullopt;
  return factors;
}

std::string to_string(FixCertificate c) {
  return c == FixCertificate::Complete ? "complete" : "sound-but-possibly-incomplete";
}

FixGenerators fix_generators(const MonoidEndo& phi, const CurlReport& curl,
                             const OrbitCutoffs& cutoffs) {
  const auto dynamics = stable_letters(phi, cutoffs);
  const auto rep = tiles_of_power(phi, 1, dynamics);
  FixGenerators out;
  for (const auto& t : rep.verified_fixed) out.generators.push_back(t.element);
  std::vector<std::string> reasons;
  if (!dynamics.decided()) reasons.push_back("stability of some letters is undecided");
  if (dynamics.decided() && dynamics.stable().empty()) {
    out.certificate = FixCertificate::Complete;
    out.note = "no stable letters, so only the identity is fixed";
    return out;
  }
  if (!rep.violations.empty()) {
    reasons.push_back(std::to_string(rep.violations.size()) + " tile(s) are not fixed");
  }
  if (!curl.certified()) reasons.push_back("curl is only a lower bound");
  if (curl.value != 1) {
    reasons.push_back("curl " + std::to_string(curl.value) +
                      " != 1, so fixed points need not be tile products");
  }
  if (reasons.empty()) {
    out.certificate = FixCertificate::Complete;
    out.note = "curl 1 (" + to_string(curl.status) + ") and every tile is fixed";
  } else {
    out.note = reasons.front();
    for (std::size_t i = 1; i < reasons.size(); ++i) out.note += "; " + reasons[i];
  }
  return out;
}

PerGenerators per_generators(const MonoidEndo& phi, const CurlReport& curl,
                             const OrbitCutoffs& cutoffs) {
  constexpr std::size_t kMaxRounds = 100000;
  const auto dynamics = stable_letters(phi, cutoffs);
  PerGenerators out;
  out.curl = curl.value;
  std::set<MunnElement, CanonicalLess> found;
  bool violations = false;
  if (!dynamics.stable().empty()) {
    const std::size_t tail = dynamics.max_tail();
    const std::size_t cycle = dynamics.cycle_lcm();
    std::size_t unchanged = 0;
    for (std::size_t k = 1;; ++k) {
      if (k > kMaxRounds) throw ResourceError("periodic generator search did not settle");
      const std::size_t power_k = curl.value * k;
      const auto rep = tiles_of_power(phi, power_k, dynamics);
      violations = violations || !rep.violations.empty();
      const std::size_t before = found.size();
      for (const auto& t : rep.verified_fixed) found.insert(t.element);
      out.iterations = k;
      // Past every tail the tile sets repeat with period dividing `cycle`.
      if (power_k >= tail) {
        unchanged = (found.size() == before) ? unchanged + 1 : 0;
        if (unchanged >= cycle) break;
      }
    }
  }
  out.generators.assign(found.begin(), found.end());
  for (const auto& g : out.generators) {
    MunnElement x = apply(phi, g);
    std::size_t p = 1;
    for (; x != g; ++p) {
      if (p > curl.value * out.iterations) throw PreconditionError("generator is not periodic");
      x = apply(phi, x);
    }
    out.m = std::lcm(out.m, p);
  }
  const bool no_stable = dynamics.stable().empty();
  out.complete = dynamics.decided() && !violations && (no_stable || curl.certified());
  if (!dynamics.decided()) {
    out.note = "stability of some letters is undecided";
  } else if (violations) {
    out.note = "some tiles of powers are not fixed";
  } else if (!no_stable && !curl.certified()) {
    out.note = "curl is only a lower bound";
  } else {
    out.note = no_stable ? "no stable letters" : "complete relative to the certified curl";
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite:
      return "finite";
    case Verdict::Infinite:
      return "infinite";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::vector<MunnElement> submonoid_ball(std::span<const MunnElement> generators,
                                        std::size_t max_vertices) {
  std::set<MunnElement, CanonicalLess> seen{MunnElement{}};
  std::vector<MunnElement> frontier{MunnElement{}};
  while (!frontier.empty()) {
    std::vector<MunnElement> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        auto y = x * g;
        if (y.vertex_count() > max_vertices) continue;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

FixInfiniteReport is_fix_infinite(const MonoidEndo& phi, const CurlReport& curl,
                                  const OrbitCutoffs& cutoffs) {
  constexpr std::size_t kClosureLimit = std::size_t{1} << 16;
  FixInfiniteReport out;
  out.per = per_generators(phi, curl, cutoffs);
  for (const auto& g : out.per.generators) {
    if (!g.is_idempotent()) {
      out.witness = g;
      out.verdict = Verdict::Infinite;
      out.note = "a non-idempotent periodic point exists";
      return out;
    }
  }
  if (!out.per.complete) {
    out.note = "periodic generators are possibly incomplete: " + out.per.note;
    return out;
  }
  // Idempotents commute, so the closure is a finite set of products.
  std::set<MunnElement, CanonicalLess> closure{MunnElement{}};
  std::vector<MunnElement> frontier{MunnElement{}};
  while (!frontier.empty()) {
    std::vector<MunnElement> next;
    for (const auto& x : frontier) {
      for (const auto& g : out.per.generators) {
        auto y = x * g;
        if (closure.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (closure.size() > kClosureLimit) {
      out.note = "closure of the idempotent generators exceeds the limit";
      return out;
    }
    frontier = std::move(next);
  }
  out.verdict = Verdict::Finite;
  out.note = "periodic points are " + std::to_string(closure.size()) + " idempotent(s)";
  return out;
}

std::vector<MunnElement> fix_enumerate(const MonoidEndo& phi, const Alphabet& alphabet,
                                       std::size_t max_vertices, std::size_t threads) {
  const auto all = enumerate_elements(alphabet, max_vertices);
  std::vector<char> keep(all.size(), 0);
  threads = std::max<std::size_t>(1, std::min(threads, all.size()));
  auto work = [&](std::size_t t) {
    for (std::size_t i = t; i < all.size(); i += threads) keep[i] = is_fixed(phi, all[i]) ? 1 : 0;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<MunnElement> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) out.push_back(all[i]);
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

EndoSpec parse_endo_spec(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::map<std::uint32_t, Word> images;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (!alphabet) {
      if (line.rfind("alphabet:", 0) != 0) throw fail("expected 'alphabet:' declaration");
      std::istringstream names(line.substr(9));
      std::vector<char> gens;
      std::string name;
      while (names >> name) {
        if (name.size() != 1) throw fail("generator names are single letters: '" + name + "'");
        gens.push_back(name[0]);
      }
      try {
        alphabet.emplace(gens);
      } catch (const PreconditionError& e) {
        throw fail(e.what());
      }
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw fail("expected 'x -> image'");
    std::string lhs = trim(std::string_view(line).substr(0, arrow));
    std::string rhs = trim(std::string_view(line).substr(arrow + 2));
    if (lhs.size() != 1) throw fail("left side must be one generator: '" + lhs + "'");
    auto gen = alphabet->letter_for(lhs[0]);
    if (!gen || gen->is_inverse()) throw fail("unknown generator '" + lhs + "'");
    if (images.count(gen->generator())) throw fail("second image line for '" + lhs + "'");
    Word img;
    if (rhs != "1") {
      try {
        img = parse_word(rhs, *alphabet);
      } catch (const ParseError& e) {
        throw fail(e.what());
      }
    }
    images.emplace(gen->generator(), std::move(img));
  }
  if (!alphabet) throw ParseError("missing 'alphabet:' declaration");
  std::vector<Word> ordered;
  for (std::uint32_t g = 0; g < alphabet->size(); ++g) {
    auto it = images.find(g);
    if (it == images.end()) {
      throw ParseError(std::string("no image line for generator '") + alphabet->name(g) + "'");
    }
    ordered.push_back(it->second);
  }
  return EndoSpec{*alphabet, MonoidEndo(std::move(ordered))};
}

EndoSpec load_endo_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read endomorphism file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_endo_spec(buf.str());
}

std::string format_endo_spec(const EndoSpec& spec) {
  std::ostringstream out;
  out << "alphabet:";
  for (char c : spec.alphabet.names()) out << ' ' << c;
  out << '\n';
  for (std::uint32_t g = 0; g < spec.endo.rank(); ++g) {
    out << spec.alphabet.name(g) << " -> " << display_word(spec.endo.image(g), spec.alphabet)
        << '\n';
  }
  return out.str();
}

std::string orbit_to_json(const OrbitRecord& orbit, const Alphabet& alphabet) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& x : orbit.elements) arr.push_back(nlohmann::ordered_json::parse(to_json(x, alphabet)));
  return arr.dump();
}

std::string orbit_to_dot(const OrbitRecord& orbit, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph orbit {\n";
  for (std::size_t i = 0; i < orbit.elements.size(); ++i) {
    out << "  e" << i << " [label=\"" << display_word(canonical_word(orbit.elements[i]), alphabet)
        << "\"];\n";
  }
  for (std::size_t i = 0; i + 1 < orbit.elements.size(); ++i) {
    out << "  e" << i << " -> e" << i + 1 << ";\n";
  }
  if (orbit.stable()) {
    out << "  e" << orbit.elements.size() - 1 << " -> e" << orbit.entry_index << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace fim
