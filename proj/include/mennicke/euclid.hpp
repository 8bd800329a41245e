#pragma once

// Euclidean-domain policies shared by the gcd, CRT and Smith-form code.
// A domain supplies value arithmetic, a division with remainder whose
// remainder is strictly smaller under size(), and a unit normalizer.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mennicke/poly.hpp"

namespace mennicke {

struct IntDomain {
  using value_type = Integer;

  Integer zero() const { return 0; }
  Integer one() const { return 1; }
  bool is_zero(const Integer& a) const { return a == 0; }
  bool is_unit(const Integer& a) const { return a == 1 || a == -1; }
  Integer add(const Integer& a, const Integer& b) const { return a + b; }
  Integer sub(const Integer& a, const Integer& b) const { return a - b; }
  Integer mul(const Integer& a, const Integer& b) const { return a * b; }
  Integer neg(const Integer& a) const { return -a; }
  /// Truncating division: |r| < |b|.
  std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) const {
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {q, r};
  }
  Integer size(const Integer& a) const { return abs(a); }
  /// Unit u with u * a in normal form (non-negative).
  Integer unit_normal(const Integer& a) const { return a < 0 ? -1 : 1; }
  /// Canonical remainder of a modulo b != 0, in [0, |b|).
  Integer canonical_rem(const Integer& a, const Integer& b) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), Integer(abs(b)).get_mpz_t());
    return r;
  }
};

struct PolyDomain {
  using value_type = Poly;

  PolyArith arith;

  Poly zero() const { return {}; }
  Poly one() const { return arith.constant(1); }
  bool is_zero(const Poly& a) const { return a.is_zero(); }
  bool is_unit(const Poly& a) const { return a.degree() == 0; }
  Poly add(const Poly& a, const Poly& b) const { return arith.add(a, b); }
  Poly sub(const Poly& a, const Poly& b) const { return arith.sub(a, b); }
  Poly mul(const Poly& a, const Poly& b) const { return arith.mul(a, b); }
  Poly neg(const Poly& a) const { return arith.neg(a); }
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const { return arith.divmod(a, b); }
  long size(const Poly& a) const { return a.degree(); }
  Poly unit_normal(const Poly& a) const {
    return a.is_zero() ? one() : arith.constant(arith.inverse(arith.leading(a)));
  }
  Poly canonical_rem(const Poly& a, const Poly& b) const { return arith.rem(a, b); }
};

template <class D>
struct Xgcd {
  typename D::value_type g, s, t;
};

/// s*a + t*b = g with g normalized.
template <class D>
Xgcd<D> xgcd(const D& dom, const typename D::value_type& a, const typename D::value_type& b) {
  using V = typename D::value_type;
  V old_r = a, r = b;
  V old_s = dom.one(), s = dom.zero();
  V old_t = dom.zero(), t = dom.one();
  while (!dom.is_zero(r)) {
    auto [q, rem] = dom.divmod(old_r, r);
    old_r = std::exchange(r, rem);
    old_s = std::exchange(s, dom.sub(old_s, dom.mul(q, s)));
    old_t = std::exchange(t, dom.sub(old_t, dom.mul(q, t)));
  }
  const V u = dom.unit_normal(old_r);
  return {dom.mul(u, old_r), dom.mul(u, old_s), dom.mul(u, old_t)};
}

template <class D>
typename D::value_type gcd(const D& dom, const typename D::value_type& a, const typename D::value_type& b) {
  return xgcd(dom, a, b).g;
}

/// Folded extended gcd: returns (g, c) with sum c_i * v_i = g, g normalized.
template <class D>
std::pair<typename D::value_type, std::vector<typename D::value_type>> xgcd_all(
    const D& dom, std::span<const typename D::value_type> values) {
  using V = typename D::value_type;
  V g = dom.zero();
  std::vector<V> coeffs;
  coeffs.reserve(values.size());
  for (const V& v : values) {
    auto step = xgcd(dom, g, v);
    for (auto& c : coeffs) c = dom.mul(c, step.s);
    coeffs.push_back(step.t);
    g = step.g;
  }
  return {g, coeffs};
}

template <class D>
bool divides(const D& dom, const typename D::value_type& d, const typename D::value_type& a) {
  if (dom.is_zero(d)) return dom.is_zero(a);
  return dom.is_zero(dom.divmod(a, d).second);
}

/// Given (b_0..b_{k-1}, c, modulus) generating the unit ideal with modulus
/// nonzero and k >= 1, returns t (only t_0 may be nonzero) such that
/// (b_0 + t_0 c, b_1, ..., modulus) generates the unit ideal.
///
/// Per prime divisor P of the modulus the residue of t_0 is the smallest
/// admissible one: 0 when some b_i is nonzero mod P, else 1. The primes are
/// never enumerated; the modulus is split into the part sharing primes with
/// G = gcd(b, modulus) and the part coprime to G, and t_0 = 1 mod G,
/// t_0 = 0 mod the coprime part.
template <class D>
std::vector<typename D::value_type> crt_shift(const D& dom, std::span<const typename D::value_type> b,
                                              const typename D::value_type& modulus) {
  using V = typename D::value_type;
  std::vector<V> t(b.size(), dom.zero());
  const V normalized = dom.mul(dom.unit_normal(modulus), modulus);
  V g = normalized;
  for (const V& v : b) g = gcd(dom, g, v);
  if (dom.is_unit(g)) return t;
  V coprime = normalized;
  for (V h = gcd(dom, coprime, g); !dom.is_unit(h); h = gcd(dom, coprime, g)) {
    coprime = dom.divmod(coprime, h).first;
  }
  // coprime * (coprime^{-1} mod g) is 1 mod g and 0 mod coprime.
  auto inv = xgcd(dom, dom.canonical_rem(coprime, g), g);
  t[0] = dom.mul(coprime, dom.canonical_rem(inv.s, g));
  return t;
}

}  // namespace mennicke
