#include "mennicke/ring.hpp"

#include <algorithm>
#include <cctype>

#include "mennicke/error.hpp"
#include "mennicke/euclid.hpp"

namespace mennicke {

bool operator==(const Element& a, const Element& b) { return a.value == b.value; }
bool operator<(const Element& a, const Element& b) { return a.value < b.value; }

struct Ring::State {
  RingKind kind = RingKind::Integers;
  Integer modulus = 0;
  std::vector<Ring> components;
  std::optional<PolyArith> arith;
  std::string descriptor;
  std::optional<int> sr;
};

namespace {

Integer mod_floor(const Integer& a, const Integer& n) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_prime(const Integer& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Splits "a,b,(c,d)" at top-level commas.
std::vector<std::string> split_top_level(std::string_view s, ErrorCode on_error) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw Error(on_error, "unbalanced parentheses in '" + std::string(s) + "'");
    if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(on_error, "unbalanced parentheses in '" + std::string(s) + "'");
  parts.push_back(trim(s.substr(start)));
  return parts;
}

bool is_decimal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

Integer parse_decimal(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

const Integer& as_int(const Element& e) { return e.integer(); }

std::vector<Integer> ints(std::span<const Element> xs) {
  std::vector<Integer> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.integer());
  return out;
}

std::vector<Poly> polys(std::span<const Element> xs) {
  std::vector<Poly> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.poly());
  return out;
}

std::vector<Element> component(std::span<const Element> xs, std::size_t k) {
  std::vector<Element> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.parts()[k]);
  return out;
}

template <class V>
std::vector<Element> wrap(const std::vector<V>& xs) {
  return std::vector<Element>(xs.begin(), xs.end());
}

std::vector<Element> reduce_all(const std::vector<Integer>& xs, const Integer& n) {
  std::vector<Element> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.emplace_back(mod_floor(x, n));
  return out;
}

/// Zips per-component vectors back into tuples.
std::vector<Element> zip_components(const std::vector<std::vector<Element>>& per_component, std::size_t len) {
  std::vector<Element> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Element> parts;
    parts.reserve(per_component.size());
    for (const auto& comp : per_component) parts.push_back(comp[i]);
    out.emplace_back(std::move(parts));
  }
  return out;
}

[[noreturn]] void precondition(const std::string& what) { throw Error(ErrorCode::PreconditionViolated, what); }

}  // namespace

// ---------------------------------------------------------------------------
// construction

Ring Ring::integers() {
  auto s = std::make_shared<State>();
  s->kind = RingKind::Integers;
  s->descriptor = "Z";
  s->sr = 2;
  return Ring(std::move(s));
}

Ring Ring::residue(const Integer& n) {
  if (n < 2) throw Error(ErrorCode::ModulusTooSmall, "residue modulus must be at least 2, got " + n.get_str());
  auto s = std::make_shared<State>();
  s->kind = RingKind::Residue;
  s->modulus = n;
  s->descriptor = "Z/" + n.get_str();
  s->sr = 1;
  return Ring(std::move(s));
}

Ring Ring::prime_field(const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, p.get_str() + " is not prime");
  auto s = std::make_shared<State>();
  s->kind = RingKind::PrimeField;
  s->modulus = p;
  s->descriptor = "GF(" + p.get_str() + ")";
  s->sr = 1;
  return Ring(std::move(s));
}

Ring Ring::polynomials(const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, p.get_str() + " is not prime");
  auto s = std::make_shared<State>();
  s->kind = RingKind::PolyOverPrimeField;
  s->modulus = p;
  s->arith.emplace(p);
  s->descriptor = "GF(" + p.get_str() + ")[x]";
  s->sr = 2;
  return Ring(std::move(s));
}

Ring Ring::product(std::vector<Ring> components) {
  if (components.empty()) throw Error(ErrorCode::MalformedDescriptor, "product needs at least one component");
  auto s = std::make_shared<State>();
  s->kind = RingKind::Product;
  s->descriptor = "(";
  int sr = 1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s->descriptor += ", ";
    s->descriptor += components[i].descriptor();
    sr = std::max(sr, *components[i].declared_sr());
  }
  s->descriptor += ")";
  s->sr = sr;
  s->components = std::move(components);
  return Ring(std::move(s));
}

Ring Ring::parse(std::string_view descriptor) {
  const std::string d = trim(descriptor);
  auto malformed = [&]() -> Error {
    return Error(ErrorCode::MalformedDescriptor, "cannot parse ring descriptor '" + d + "'");
  };
  if (d == "Z") return integers();
  if (d.size() >= 2 && d.front() == '(' && d.back() == ')') {
    std::vector<Ring> comps;
    for (const auto& part : split_top_level(std::string_view(d).substr(1, d.size() - 2), ErrorCode::MalformedDescriptor)) {
      if (part.empty()) throw malformed();
      comps.push_back(parse(part));
    }
    return product(std::move(comps));
  }
  if (d.rfind("Z/", 0) == 0) {
    const std::string n = trim(std::string_view(d).substr(2));
    if (!is_decimal(n, false)) throw malformed();
    return residue(Integer(n));
  }
  if (d.rfind("GF(", 0) == 0) {
    const std::size_t close = d.find(')');
    if (close == std::string::npos) throw malformed();
    const std::string p = trim(std::string_view(d).substr(3, close - 3));
    const std::string rest = trim(std::string_view(d).substr(close + 1));
    if (!is_decimal(p, false)) throw malformed();
    if (rest.empty()) return prime_field(Integer(p));
    if (rest == "[x]") return polynomials(Integer(p));
    throw malformed();
  }
  throw malformed();
}

RingKind Ring::kind() const { return state_->kind; }
const Integer& Ring::modulus() const { return state_->modulus; }
const std::vector<Ring>& Ring::components() const { return state_->components; }
const PolyArith& Ring::poly_arith() const {
  if (!state_->arith) throw Error(ErrorCode::UnsupportedRing, descriptor() + " is not a polynomial ring");
  return *state_->arith;
}
std::optional<int> Ring::declared_sr() const { return state_->sr; }
std::optional<int> Ring::declared_sdim() const {
  if (!state_->sr) return std::nullopt;
  return *state_->sr - 1;
}
const std::string& Ring::descriptor() const { return state_->descriptor; }

bool Ring::is_finite() const {
  switch (kind()) {
    case RingKind::Residue:
    case RingKind::PrimeField: return true;
    case RingKind::Product:
      return std::all_of(components().begin(), components().end(), [](const Ring& r) { return r.is_finite(); });
    default: return false;
  }
}

Integer Ring::cardinality() const {
  switch (kind()) {
    case RingKind::Residue:
    case RingKind::PrimeField: return modulus();
    case RingKind::Product: {
      Integer c = 1;
      for (const auto& r : components()) c *= r.cardinality();
      return c;
    }
    default: return 0;
  }
}

// ---------------------------------------------------------------------------
// arithmetic

Element Ring::zero() const { return from_integer(0); }
Element Ring::one() const { return from_integer(1); }

Element Ring::from_integer(const Integer& v) const {
  switch (kind()) {
    case RingKind::Integers: return Element(v);
    case RingKind::Residue:
    case RingKind::PrimeField: return Element(mod_floor(v, modulus()));
    case RingKind::PolyOverPrimeField: return Element(poly_arith().constant(v));
    case RingKind::Product: {
      std::vector<Element> parts;
      for (const auto& r : components()) parts.push_back(r.from_integer(v));
      return Element(std::move(parts));
    }
  }
  return {};
}

Element Ring::add(const Element& a, const Element& b) const {
  switch (kind()) {
    case RingKind::Integers: return Element(Integer(as_int(a) + as_int(b)));
    case RingKind::Residue:
    case RingKind::PrimeField: return Element(mod_floor(as_int(a) + as_int(b), modulus()));
    case RingKind::PolyOverPrimeField: return Element(poly_arith().add(a.poly(), b.poly()));
    case RingKind::Product: {
      std::vector<Element> parts;
      for (std::size_t i = 0; i < components().size(); ++i)
        parts.push_back(components()[i].add(a.parts()[i], b.parts()[i]));
      return Element(std::move(parts));
    }
  }
  return {};
}

Element Ring::neg(const Element& a) const {
  switch (kind()) {
    case RingKind::Integers: return Element(Integer(-as_int(a)));
    case RingKind::Residue:
    case RingKind::PrimeField: return Element(mod_floor(-as_int(a), modulus()));
    case RingKind::PolyOverPrimeField: return Element(poly_arith().neg(a.poly()));
    case RingKind::Product: {
      std::vector<Element> parts;
      for (std::size_t i = 0; i < components().size(); ++i) parts.push_back(components()[i].neg(a.parts()[i]));
      return Element(std::move(parts));
    }
  }
  return {};
}

Element Ring::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Ring::mul(const Element& a, const Element& b) const {
  switch (kind()) {
    case RingKind::Integers: return Element(Integer(as_int(a) * as_int(b)));
    case RingKind::Residue:
    case RingKind::PrimeField: return Element(mod_floor(as_int(a) * as_int(b), modulus()));
    case RingKind::PolyOverPrimeField: return Element(poly_arith().mul(a.poly(), b.poly()));
    case RingKind::Product: {
      std::vector<Element> parts;
      for (std::size_t i = 0; i < components().size(); ++i)
        parts.push_back(components()[i].mul(a.parts()[i], b.parts()[i]));
      return Element(std::move(parts));
    }
  }
  return {};
}

Element Ring::pow(const Element& a, unsigned long e) const {
  Element result = one(), base = a;
  while (e) {
    if (e & 1UL) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool Ring::is_unit(const Element& a) const {
  switch (kind()) {
    case RingKind::Integers: return as_int(a) == 1 || as_int(a) == -1;
    case RingKind::Residue: return gcd(IntDomain{}, as_int(a), modulus()) == 1;
    case RingKind::PrimeField: return as_int(a) != 0;
    case RingKind::PolyOverPrimeField: return a.poly().degree() == 0;
    case RingKind::Product:
      for (std::size_t i = 0; i < components().size(); ++i)
        if (!components()[i].is_unit(a.parts()[i])) return false;
      return true;
  }
  return false;
}

bool Ring::owns(const Element& a) const {
  switch (kind()) {
    case RingKind::Integers: return std::holds_alternative<Integer>(a.value);
    case RingKind::Residue:
    case RingKind::PrimeField:
      return std::holds_alternative<Integer>(a.value) && as_int(a) >= 0 && as_int(a) < modulus();
    case RingKind::PolyOverPrimeField: {
      if (!std::holds_alternative<Poly>(a.value)) return false;
      const auto& c = a.poly().coeffs;
      if (!c.empty() && c.back() == 0) return false;
      return std::all_of(c.begin(), c.end(), [&](const Integer& x) { return x >= 0 && x < modulus(); });
    }
    case RingKind::Product: {
      if (!std::holds_alternative<std::vector<Element>>(a.value)) return false;
      if (a.parts().size() != components().size()) return false;
      for (std::size_t i = 0; i < components().size(); ++i)
        if (!components()[i].owns(a.parts()[i])) return false;
      return true;
    }
  }
  return false;
}

Element Ring::parse_element(std::string_view text) const {
  const std::string t = trim(text);
  auto bad = [&]() -> Error {
    return Error(ErrorCode::MalformedElement, "cannot parse '" + t + "' as an element of " + descriptor());
  };
  switch (kind()) {
    case RingKind::Integers:
    case RingKind::Residue:
    case RingKind::PrimeField:
      if (!is_decimal(t, true)) throw bad();
      return from_integer(parse_decimal(t));
    case RingKind::PolyOverPrimeField: return Element(poly_arith().parse(t));
    case RingKind::Product: {
      if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw bad();
      auto parts = split_top_level(std::string_view(t).substr(1, t.size() - 2), ErrorCode::MalformedElement);
      if (parts.size() != components().size()) throw bad();
      std::vector<Element> out;
      for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(components()[i].parse_element(parts[i]));
      return Element(std::move(out));
    }
  }
  throw bad();
}

std::string Ring::format(const Element& a) const {
  switch (kind()) {
    case RingKind::Integers:
    case RingKind::Residue:
    case RingKind::PrimeField: return as_int(a).get_str();
    case RingKind::PolyOverPrimeField: return poly_arith().format(a.poly());
    case RingKind::Product: {
      std::string out = "(";
      for (std::size_t i = 0; i < components().size(); ++i) {
        if (i) out += ",";
        out += components()[i].format(a.parts()[i]);
      }
      return out + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// oracles

std::optional<std::vector<Element>> bezout_witness(const Ring& ring, std::span<const Element> gens) {
  if (gens.empty()) return std::nullopt;
  switch (ring.kind()) {
    case RingKind::Integers: {
      const auto v = ints(gens);
      auto [g, c] = xgcd_all(IntDomain{}, std::span<const Integer>(v));
      if (g != 1) return std::nullopt;
      return wrap(c);
    }
    case RingKind::Residue:
    case RingKind::PrimeField: {
      auto v = ints(gens);
      v.push_back(ring.modulus());
      auto [g, c] = xgcd_all(IntDomain{}, std::span<const Integer>(v));
      if (g != 1) return std::nullopt;
      c.pop_back();
      return reduce_all(c, ring.modulus());
    }
    case RingKind::PolyOverPrimeField: {
      PolyDomain dom{ring.poly_arith()};
      const auto v = polys(gens);
      auto [g, c] = xgcd_all(dom, std::span<const Poly>(v));
      if (g != dom.one()) return std::nullopt;
      return wrap(c);
    }
    case RingKind::Product: {
      std::vector<std::vector<Element>> per;
      for (std::size_t k = 0; k < ring.components().size(); ++k) {
        auto w = bezout_witness(ring.components()[k], component(gens, k));
        if (!w) return std::nullopt;
        per.push_back(std::move(*w));
      }
      return zip_components(per, gens.size());
    }
  }
  return std::nullopt;
}

bool is_unimodular(const Ring& ring, std::span<const Element> entries) {
  return bezout_witness(ring, entries).has_value();
}

PrincipalGenerator principal_generator(const Ring& ring, std::span<const Element> gens) {
  switch (ring.kind()) {
    case RingKind::Integers: {
      const auto v = ints(gens);
      auto [g, c] = xgcd_all(IntDomain{}, std::span<const Integer>(v));
      return {Element(g), wrap(c)};
    }
    case RingKind::Residue:
    case RingKind::PrimeField: {
      auto v = ints(gens);
      v.push_back(ring.modulus());
      auto [g, c] = xgcd_all(IntDomain{}, std::span<const Integer>(v));
      c.pop_back();
      return {Element(mod_floor(g, ring.modulus())), reduce_all(c, ring.modulus())};
    }
    case RingKind::PolyOverPrimeField: {
      const auto v = polys(gens);
      auto [g, c] = xgcd_all(PolyDomain{ring.poly_arith()}, std::span<const Poly>(v));
      return {Element(g), wrap(c)};
    }
    case RingKind::Product: {
      std::vector<Element> gen_parts;
      std::vector<std::vector<Element>> per;
      for (std::size_t k = 0; k < ring.components().size(); ++k) {
        auto pg = principal_generator(ring.components()[k], component(gens, k));
        gen_parts.push_back(std::move(pg.generator));
        per.push_back(std::move(pg.cofactors));
      }
      return {Element(std::move(gen_parts)), zip_components(per, gens.size())};
    }
  }
  return {};
}

namespace {

/// Integer generator of the preimage in Z of the ideal (gens) of Z/n.
Integer residue_ideal_generator(const Ring& ring, std::span<const Element> gens) {
  Integer g = ring.modulus();
  for (const auto& x : gens) g = gcd(IntDomain{}, g, as_int(x));
  return g;
}

}  // namespace

bool ideal_contains(const Ring& ring, std::span<const Element> gens, const Element& x) {
  switch (ring.kind()) {
    case RingKind::Integers: {
      const auto pg = principal_generator(ring, gens);
      return divides(IntDomain{}, as_int(pg.generator), as_int(x));
    }
    case RingKind::Residue:
    case RingKind::PrimeField:
      return divides(IntDomain{}, residue_ideal_generator(ring, gens), as_int(x));
    case RingKind::PolyOverPrimeField: {
      const auto pg = principal_generator(ring, gens);
      return divides(PolyDomain{ring.poly_arith()}, pg.generator.poly(), x.poly());
    }
    case RingKind::Product:
      for (std::size_t k = 0; k < ring.components().size(); ++k)
        if (!ideal_contains(ring.components()[k], component(gens, k), x.parts()[k])) return false;
      return true;
  }
  return false;
}

bool congruent(const Ring& ring, const Element& a, const Element& b, std::span<const Element> gens) {
  return ideal_contains(ring, gens, ring.sub(a, b));
}

Element reduce_modulo_ideal(const Ring& ring, const Element& x, std::span<const Element> gens) {
  switch (ring.kind()) {
    case RingKind::Integers: {
      const Integer g = as_int(principal_generator(ring, gens).generator);
      if (g == 0) return x;
      return Element(IntDomain{}.canonical_rem(as_int(x), g));
    }
    case RingKind::Residue:
    case RingKind::PrimeField:
      return Element(mod_floor(as_int(x), residue_ideal_generator(ring, gens)));
    case RingKind::PolyOverPrimeField: {
      const Poly g = principal_generator(ring, gens).generator.poly();
      if (g.is_zero()) return x;
      return Element(ring.poly_arith().rem(x.poly(), g));
    }
    case RingKind::Product: {
      std::vector<Element> parts;
      for (std::size_t k = 0; k < ring.components().size(); ++k)
        parts.push_back(reduce_modulo_ideal(ring.components()[k], x.parts()[k], component(gens, k)));
      return Element(std::move(parts));
    }
  }
  return x;
}

std::vector<Element> factor_pivot(const Ring& ring, const Element& x) {
  auto trial_division = [](Integer n) {
    std::vector<Element> primes;
    n = abs(n);
    for (Integer d = 2; d * d <= n; ++d) {
      if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
        primes.emplace_back(d);
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
      }
    }
    if (n > 1) primes.emplace_back(n);
    return primes;
  };
  switch (ring.kind()) {
    case RingKind::Integers:
      if (as_int(x) == 0) precondition("factor_pivot of zero");
      return trial_division(as_int(x));
    case RingKind::Residue: return trial_division(ring.modulus());
    case RingKind::PrimeField: return {};
    case RingKind::PolyOverPrimeField: {
      if (x.poly().is_zero()) precondition("factor_pivot of zero");
      return wrap(ring.poly_arith().irreducible_factors(x.poly()));
    }
    case RingKind::Product: break;
  }
  throw Error(ErrorCode::UnsupportedRing, "factor_pivot is componentwise for products");
}

namespace {

/// Stable range over a Euclidean domain of stable rank at most 2: anchor on
/// the last nonzero entry b_j and make the others coprime to it.
template <class D>
std::vector<typename D::value_type> euclid_stable_range(const D& dom, const std::vector<typename D::value_type>& b,
                                                         const typename D::value_type& c) {
  using V = typename D::value_type;
  std::vector<V> t(b.size(), dom.zero());
  if (dom.is_zero(c)) return t;
  std::size_t anchor = b.size();
  for (std::size_t i = b.size(); i-- > 0;) {
    if (!dom.is_zero(b[i])) {
      anchor = i;
      break;
    }
  }
  if (anchor == b.size()) {
    // All of b vanish, so c is a unit.
    t[0] = dom.one();
    return t;
  }
  std::vector<V> others;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (i != anchor) others.push_back(b[i]);
  if (others.empty()) {
    if (dom.is_unit(b[anchor])) return t;
    precondition("a single entry cannot be shortened in a ring of stable rank 2");
  }
  const auto shift = crt_shift(dom, std::span<const V>(others), b[anchor]);
  for (std::size_t i = 0, k = 0; i < b.size(); ++i)
    if (i != anchor) t[i] = shift[k++];
  return t;
}

void require_unimodular(const Ring& ring, std::vector<Element> all, const char* what) {
  if (!is_unimodular(ring, all)) precondition(std::string(what) + ": input is not unimodular");
}

}  // namespace

std::vector<Element> stable_range_reduce(const Ring& ring, std::span<const Element> b, const Element& c) {
  if (b.empty()) precondition("stable_range_reduce needs at least one entry");
  std::vector<Element> all(b.begin(), b.end());
  all.push_back(c);
  require_unimodular(ring, all, "stable_range_reduce");
  if (ring.declared_sr() && static_cast<int>(b.size()) < *ring.declared_sr()) {
    precondition("stable_range_reduce: length " + std::to_string(b.size()) + " is below the stable rank " +
                 std::to_string(*ring.declared_sr()) + " of " + ring.descriptor());
  }
  switch (ring.kind()) {
    case RingKind::Integers: return wrap(euclid_stable_range(IntDomain{}, ints(b), as_int(c)));
    case RingKind::PolyOverPrimeField: {
      PolyDomain dom{ring.poly_arith()};
      return wrap(euclid_stable_range(dom, polys(b), c.poly()));
    }
    case RingKind::Residue:
    case RingKind::PrimeField: {
      const auto v = ints(b);
      return reduce_all(crt_shift(IntDomain{}, std::span<const Integer>(v), ring.modulus()), ring.modulus());
    }
    case RingKind::Product: {
      std::vector<std::vector<Element>> per;
      for (std::size_t k = 0; k < ring.components().size(); ++k)
        per.push_back(stable_range_reduce(ring.components()[k], component(b, k), c.parts()[k]));
      return zip_components(per, b.size());
    }
  }
  return {};
}

std::vector<Element> shorten_modulo(const Ring& ring, std::span<const Element> b, const Element& c, const Element& g) {
  if (b.empty()) precondition("shorten_modulo needs at least one entry");
  std::vector<Element> all(b.begin(), b.end());
  all.push_back(c);
  all.push_back(g);
  require_unimodular(ring, all, "shorten_modulo");
  switch (ring.kind()) {
    case RingKind::Integers: {
      if (as_int(g) == 0) return stable_range_reduce(ring, b, c);
      const auto v = ints(b);
      return wrap(crt_shift(IntDomain{}, std::span<const Integer>(v), as_int(g)));
    }
    case RingKind::PolyOverPrimeField: {
      if (g.poly().is_zero()) return stable_range_reduce(ring, b, c);
      const auto v = polys(b);
      return wrap(crt_shift(PolyDomain{ring.poly_arith()}, std::span<const Poly>(v), g.poly()));
    }
    case RingKind::Residue:
    case RingKind::PrimeField: {
      const auto v = ints(b);
      const Integer m = gcd(IntDomain{}, as_int(g), ring.modulus());
      return reduce_all(crt_shift(IntDomain{}, std::span<const Integer>(v), m), ring.modulus());
    }
    case RingKind::Product: {
      std::vector<std::vector<Element>> per;
      for (std::size_t k = 0; k < ring.components().size(); ++k)
        per.push_back(shorten_modulo(ring.components()[k], component(b, k), c.parts()[k], g.parts()[k]));
      return zip_components(per, b.size());
    }
  }
  return {};
}

std::vector<Element> enumerate_elements(const Ring& ring) {
  if (!ring.is_finite()) throw Error(ErrorCode::NotFinite, ring.descriptor() + " is not finite");
  if (ring.kind() != RingKind::Product) {
    std::vector<Element> out;
    for (Integer v = 0; v < ring.modulus(); ++v) out.emplace_back(v);
    return out;
  }
  std::vector<std::vector<Element>> tuples{{}};
  for (const auto& comp : ring.components()) {
    const auto elems = enumerate_elements(comp);
    std::vector<std::vector<Element>> next;
    next.reserve(tuples.size() * elems.size());
    for (const auto& prefix : tuples) {
      for (const auto& e : elems) {
        auto t = prefix;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    }
    tuples = std::move(next);
  }
  std::vector<Element> out;
  out.reserve(tuples.size());
  for (auto& t : tuples) out.emplace_back(std::move(t));
  return out;
}

}  // namespace mennicke
