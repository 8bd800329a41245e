#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace mennicke {

using Integer = mpz_class;

/// Polynomial over GF(p): ascending coefficients in [0, p), no trailing
/// zeros. The zero polynomial has no coefficients.
struct Poly {
  std::vector<Integer> coeffs;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs == b.coeffs; }
  friend bool operator<(const Poly& a, const Poly& b);
};

/// Arithmetic in GF(p)[x] for a fixed prime p.
class PolyArith {
 public:
  explicit PolyArith(Integer p);

  const Integer& characteristic() const { return p_; }

  Poly make(std::vector<Integer> coeffs) const;
  Poly constant(const Integer& c) const;
  Poly variable() const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const Integer& c) const;

  /// Euclidean division; throws on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  bool divides(const Poly& d, const Poly& a) const;

  Integer inverse(const Integer& c) const;
  const Integer& leading(const Poly& a) const { return a.coeffs.back(); }
  Poly monic(const Poly& a) const;

  /// Distinct monic irreducible factors, by trial division against monic
  /// polynomials of increasing degree.
  std::vector<Poly> irreducible_factors(const Poly& a) const;

  std::string format(const Poly& a) const;
  Poly parse(const std::string& text) const;

 private:
  Integer reduce(const Integer& c) const;

  Integer p_;
};

}  // namespace mennicke
