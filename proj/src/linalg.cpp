#include "mennicke/linalg.hpp"

#include <algorithm>
#include <map>

#include "mennicke/error.hpp"
#include "smith.hpp"

namespace mennicke {

IntMatrix identity_int(std::size_t n) { return detail::identity_over(IntDomain{}, n); }

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols() != B.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product dimensions");
  return detail::multiply_over(IntDomain{}, A, B);
}

Integer determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && M(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      M.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

SnfResult smith_normal_form(const IntMatrix& A) {
  auto sf = detail::smith_form(IntDomain{}, A);
  return {std::move(sf.U), std::move(sf.D_), std::move(sf.V)};
}

HnfResult hermite_normal_form(const IntMatrix& A) {
  const IntDomain dom;
  IntMatrix H = A;
  IntMatrix U = identity_int(A.rows());
  std::size_t p = 0;
  for (std::size_t col = 0; col < H.cols() && p < H.rows(); ++col) {
    for (std::size_t i = p + 1; i < H.rows(); ++i) {
      if (H(i, col) == 0) continue;
      const Integer a = H(p, col), b = H(i, col);
      const auto x = xgcd(dom, a, b);
      const Integer bg = b / x.g, ag = a / x.g;
      for (IntMatrix* M : {&H, &U}) {
        for (std::size_t j = 0; j < M->cols(); ++j) {
          const Integer rp = (*M)(p, j), ri = (*M)(i, j);
          (*M)(p, j) = x.s * rp + x.t * ri;
          (*M)(i, j) = -bg * rp + ag * ri;
        }
      }
    }
    if (H(p, col) == 0) continue;
    if (H(p, col) < 0) {
      for (std::size_t j = 0; j < H.cols(); ++j) H(p, j) = -H(p, j);
      for (std::size_t j = 0; j < U.cols(); ++j) U(p, j) = -U(p, j);
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(p, col).get_mpz_t());
      if (q == 0) continue;
      detail::add_row(dom, H, i, p, Integer(-q));
      detail::add_row(dom, U, i, p, Integer(-q));
    }
    ++p;
  }
  return {std::move(H), std::move(U)};
}

namespace {

std::size_t leading_index(const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

void axpy(IntVector& dst, const Integer& f, const IntVector& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += f * src[i];
}

}  // namespace

std::vector<IntVector> lattice_basis(std::span<const IntVector> vectors, std::size_t dimension) {
  const IntDomain dom;
  // pivot column -> row with that leading column
  std::map<std::size_t, IntVector> rows;
  for (const auto& input : vectors) {
    if (input.size() != dimension) throw Error(ErrorCode::DimensionMismatch, "lattice vector length");
    IntVector v = input;
    for (std::size_t col = leading_index(v); col < dimension; col = leading_index(v)) {
      auto it = rows.find(col);
      if (it == rows.end()) {
        if (v[col] < 0)
          for (auto& x : v) x = -x;
        rows.emplace(col, std::move(v));
        break;
      }
      IntVector& r = it->second;
      if (divides(dom, r[col], v[col])) {
        axpy(v, Integer(-(v[col] / r[col])), r);
        continue;
      }
      const auto x = xgcd(dom, r[col], v[col]);
      const Integer rg = r[col] / x.g, vg = v[col] / x.g;
      IntVector merged(dimension), rest(dimension);
      for (std::size_t j = 0; j < dimension; ++j) {
        merged[j] = x.s * r[j] + x.t * v[j];
        rest[j] = -vg * r[j] + rg * v[j];
      }
      r = std::move(merged);
      v = std::move(rest);
    }
  }
  // Reduce entries above each pivot into [0, pivot), last pivot first.
  std::vector<IntVector> out;
  for (auto& [col, r] : rows) out.push_back(r);
  std::vector<std::size_t> pivots;
  for (const auto& kv : rows) pivots.push_back(kv.first);
  for (std::size_t k = out.size(); k-- > 0;) {
    const std::size_t pc = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), out[i][pc].get_mpz_t(), out[k][pc].get_mpz_t());
      if (q != 0) axpy(out[i], Integer(-q), out[k]);
    }
  }
  return out;
}

bool lattice_contains(std::span<const IntVector> basis, const IntVector& v) {
  for (const auto& b : basis)
    if (b.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "basis and vector lengths differ");
  const auto hnf = lattice_basis(basis, v.size());
  IntVector rest = v;
  for (const auto& row : hnf) {
    const std::size_t pc = leading_index(row);
    if (!mpz_divisible_p(rest[pc].get_mpz_t(), row[pc].get_mpz_t())) return false;
    const Integer q = rest[pc] / row[pc];
    if (q != 0) axpy(rest, Integer(-q), row);
  }
  return std::all_of(rest.begin(), rest.end(), [](const Integer& x) { return x == 0; });
}

ElementMatrix identity(const Ring& ring, std::size_t n) {
  ElementMatrix I(n, n, ring.zero());
  for (std::size_t i = 0; i < n; ++i) I(i, i) = ring.one();
  return I;
}

ElementMatrix multiply(const Ring& ring, const ElementMatrix& A, const ElementMatrix& B) {
  if (A.cols() != B.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product dimensions");
  ElementMatrix C(A.rows(), B.cols(), ring.zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      if (ring.is_zero(A(i, k))) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = ring.add(C(i, j), ring.mul(A(i, k), B(k, j)));
    }
  return C;
}

namespace {

std::optional<IntMatrix> integer_right_inverse(const IntMatrix& A) {
  return detail::right_inverse_over(IntDomain{}, A);
}

}  // namespace

std::optional<ElementMatrix> solve_right_inverse(const Ring& ring, const ElementMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  if (m > n) throw Error(ErrorCode::DimensionMismatch, "a right inverse needs at most as many rows as columns");
  switch (ring.kind()) {
    case RingKind::Integers: {
      IntMatrix Z(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) Z(i, j) = A(i, j).integer();
      auto B = integer_right_inverse(Z);
      if (!B) return std::nullopt;
      ElementMatrix out(n, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = Element((*B)(i, j));
      return out;
    }
    case RingKind::Residue:
    case RingKind::PrimeField: {
      // Solve [A | N I] [B; C] = I over Z and keep B mod N.
      IntMatrix Z(m, n + m, Integer(0));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) Z(i, j) = A(i, j).integer();
        Z(i, n + i) = ring.modulus();
      }
      auto B = integer_right_inverse(Z);
      if (!B) return std::nullopt;
      ElementMatrix out(n, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = ring.from_integer((*B)(i, j));
      return out;
    }
    case RingKind::PolyOverPrimeField: {
      const PolyDomain dom{ring.poly_arith()};
      Matrix<Poly> P(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) P(i, j) = A(i, j).poly();
      auto B = detail::right_inverse_over(dom, P);
      if (!B) return std::nullopt;
      ElementMatrix out(n, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = Element((*B)(i, j));
      return out;
    }
    case RingKind::Product: {
      std::vector<ElementMatrix> parts;
      for (std::size_t k = 0; k < ring.components().size(); ++k) {
        ElementMatrix Ak(m, n);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) Ak(i, j) = A(i, j).parts()[k];
        auto Bk = solve_right_inverse(ring.components()[k], Ak);
        if (!Bk) return std::nullopt;
        parts.push_back(std::move(*Bk));
      }
      ElementMatrix out(n, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          std::vector<Element> tuple;
          for (const auto& Bk : parts) tuple.push_back(Bk(i, j));
          out(i, j) = Element(std::move(tuple));
        }
      return out;
    }
  }
  throw Error(ErrorCode::UnsupportedRing, ring.descriptor());
}

}  // namespace mennicke
