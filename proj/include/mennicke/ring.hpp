#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mennicke/poly.hpp"

namespace mennicke {

enum class RingKind { Integers, Residue, PrimeField, PolyOverPrimeField, Product };

/// Canonical ring element: an integer (Integers: any value; Residue and
/// PrimeField: least non-negative residue), a polynomial over GF(p), or a
/// tuple for products. Equal elements have identical payloads.
struct Element {
  std::variant<Integer, Poly, std::vector<Element>> value;

  Element() = default;
  Element(Integer v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Element(Poly v) : value(std::move(v)) {}     // NOLINT(google-explicit-constructor)
  explicit Element(std::vector<Element> parts) : value(std::move(parts)) {}

  const Integer& integer() const { return std::get<Integer>(value); }
  const Poly& poly() const { return std::get<Poly>(value); }
  const std::vector<Element>& parts() const { return std::get<std::vector<Element>>(value); }

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  friend bool operator<(const Element& a, const Element& b);
};

/// A concrete commutative ring together with its declared stable range.
/// Cheap to copy; the descriptor state is shared and immutable.
class Ring {
 public:
  static Ring integers();
  static Ring residue(const Integer& n);
  static Ring prime_field(const Integer& p);
  static Ring polynomials(const Integer& p);
  static Ring product(std::vector<Ring> components);

  /// "Z" | "Z/n" | "GF(p)" | "GF(p)[x]" | "(R1, R2, ...)".
  static Ring parse(std::string_view descriptor);

  RingKind kind() const;
  /// n for Residue, p for PrimeField and PolyOverPrimeField, 0 otherwise.
  const Integer& modulus() const;
  const std::vector<Ring>& components() const;
  const PolyArith& poly_arith() const;

  std::optional<int> declared_sr() const;
  std::optional<int> declared_sdim() const;

  const std::string& descriptor() const;
  bool is_finite() const;
  /// Number of elements; only meaningful for finite rings.
  Integer cardinality() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.descriptor() == b.descriptor(); }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

  Element zero() const;
  Element one() const;
  Element from_integer(const Integer& v) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(const Element& a, unsigned long e) const;

  bool is_zero(const Element& a) const { return a == zero(); }
  bool is_unit(const Element& a) const;
  /// True when the payload is a canonical element of this ring.
  bool owns(const Element& a) const;

  Element parse_element(std::string_view text) const;
  std::string format(const Element& a) const;

 private:
  struct State;
  explicit Ring(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

inline Ring parse_ring(std::string_view descriptor) { return Ring::parse(descriptor); }

/// Coefficients w with sum gens_i * w_i = 1, or nothing when the generators
/// do not generate the unit ideal.
std::optional<std::vector<Element>> bezout_witness(const Ring& ring, std::span<const Element> gens);

bool is_unimodular(const Ring& ring, std::span<const Element> entries);

/// Distinct prime (resp. monic irreducible) divisors of x; for residue rings
/// the prime divisors of the modulus. Products are rejected.
std::vector<Element> factor_pivot(const Ring& ring, const Element& x);

/// t with (b_i + t_i c) unimodular, given (b, c) unimodular and
/// |b| >= declared_sr.
std::vector<Element> stable_range_reduce(const Ring& ring, std::span<const Element> b, const Element& c);

/// t with (b_i + t_i c, g) unimodular, given (b, c, g) unimodular: stable
/// range in R/(g). Falls back to stable_range_reduce when g generates (0).
std::vector<Element> shorten_modulo(const Ring& ring, std::span<const Element> b, const Element& c,
                                    const Element& g);

/// All elements of a finite ring in canonical ascending order.
std::vector<Element> enumerate_elements(const Ring& ring);

struct PrincipalGenerator {
  Element generator;
  std::vector<Element> cofactors;  // sum cofactors_i * gens_i = generator
};

/// Every supported ring is a principal ideal ring; returns a generator of
/// (gens) together with cofactors expressing it.
PrincipalGenerator principal_generator(const Ring& ring, std::span<const Element> gens);

bool ideal_contains(const Ring& ring, std::span<const Element> gens, const Element& x);
bool congruent(const Ring& ring, const Element& a, const Element& b, std::span<const Element> gens);
/// Canonical representative of x modulo the ideal (gens).
Element reduce_modulo_ideal(const Ring& ring, const Element& x, std::span<const Element> gens);

}  // namespace mennicke
