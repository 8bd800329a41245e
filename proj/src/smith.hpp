#pragma once

// Smith diagonalization over a Euclidean domain policy (see euclid.hpp).

#include <optional>

#include "mennicke/euclid.hpp"
#include "mennicke/matrix.hpp"

namespace mennicke::detail {

template <class D>
struct SmithForm {
  Matrix<typename D::value_type> U, D_, V;
};

template <class D>
Matrix<typename D::value_type> identity_over(const D& dom, std::size_t n) {
  Matrix<typename D::value_type> I(n, n, dom.zero());
  for (std::size_t i = 0; i < n; ++i) I(i, i) = dom.one();
  return I;
}

template <class D>
Matrix<typename D::value_type> multiply_over(const D& dom, const Matrix<typename D::value_type>& A,
                                             const Matrix<typename D::value_type>& B) {
  Matrix<typename D::value_type> C(A.rows(), B.cols(), dom.zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      if (dom.is_zero(A(i, k))) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = dom.add(C(i, j), dom.mul(A(i, k), B(k, j)));
    }
  return C;
}

/// row_dst += f * row_src
template <class D>
void add_row(const D& dom, Matrix<typename D::value_type>& M, std::size_t dst, std::size_t src,
             const typename D::value_type& f) {
  for (std::size_t j = 0; j < M.cols(); ++j) M(dst, j) = dom.add(M(dst, j), dom.mul(f, M(src, j)));
}

/// col_dst += f * col_src
template <class D>
void add_col(const D& dom, Matrix<typename D::value_type>& M, std::size_t dst, std::size_t src,
             const typename D::value_type& f) {
  for (std::size_t i = 0; i < M.rows(); ++i) M(i, dst) = dom.add(M(i, dst), dom.mul(f, M(i, src)));
}

template <class D>
SmithForm<D> smith_form(const D& dom, Matrix<typename D::value_type> A) {
  using V = typename D::value_type;
  const std::size_t rows = A.rows(), cols = A.cols();
  auto U = identity_over(dom, rows);
  auto Vm = identity_over(dom, cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (dom.is_zero(A(i, j))) continue;
          if (!pivot || dom.size(A(i, j)) < dom.size(A(pivot->first, pivot->second))) pivot = {i, j};
        }
      if (!pivot) return {U, A, Vm};
      A.swap_rows(t, pivot->first);
      U.swap_rows(t, pivot->first);
      A.swap_cols(t, pivot->second);
      Vm.swap_cols(t, pivot->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (dom.is_zero(A(i, t))) continue;
        const V q = dom.neg(dom.divmod(A(i, t), A(t, t)).first);
        add_row(dom, A, i, t, q);
        add_row(dom, U, i, t, q);
        dirty = dirty || !dom.is_zero(A(i, t));
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (dom.is_zero(A(t, j))) continue;
        const V q = dom.neg(dom.divmod(A(t, j), A(t, t)).first);
        add_col(dom, A, j, t, q);
        add_col(dom, Vm, j, t, q);
        dirty = dirty || !dom.is_zero(A(t, j));
      }
      if (dirty) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j) {
          if (!divides(dom, A(t, t), A(i, j))) {
            add_row(dom, A, t, i, dom.one());
            add_row(dom, U, t, i, dom.one());
            fixed = true;
          }
        }
      if (!fixed) break;
    }
    const V u = dom.unit_normal(A(t, t));
    if (u != dom.one()) {
      for (std::size_t j = 0; j < cols; ++j) A(t, j) = dom.mul(u, A(t, j));
      for (std::size_t j = 0; j < rows; ++j) U(t, j) = dom.mul(u, U(t, j));
    }
  }
  return {U, A, Vm};
}

/// Right inverse from the Smith form: U A V = D gives A (V C) = I iff
/// D C = U, solved row by row.
template <class D>
std::optional<Matrix<typename D::value_type>> right_inverse_over(const D& dom,
                                                                const Matrix<typename D::value_type>& A) {
  using V = typename D::value_type;
  const std::size_t m = A.rows(), n = A.cols();
  auto sf = smith_form(dom, A);
  Matrix<V> C(n, m, dom.zero());
  for (std::size_t i = 0; i < m; ++i) {
    const V& d = sf.D_(i, i);
    if (dom.is_zero(d)) return std::nullopt;
    for (std::size_t j = 0; j < m; ++j) {
      auto [q, r] = dom.divmod(sf.U(i, j), d);
      if (!dom.is_zero(r)) return std::nullopt;
      C(i, j) = q;
    }
  }
  return multiply_over(dom, sf.V, C);
}

}  // namespace mennicke::detail
