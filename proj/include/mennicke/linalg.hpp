#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mennicke/matrix.hpp"
#include "mennicke/ring.hpp"

namespace mennicke {

using IntMatrix = Matrix<Integer>;
using ElementMatrix = Matrix<Element>;
using IntVector = std::vector<Integer>;

/// U * A * V = D, det U and det V are +-1, D diagonal with d1 | d2 | ...
/// and every d_i >= 0.
struct SnfResult {
  IntMatrix U, D, V;
};

/// Pivot choice: smallest nonzero absolute value in the remaining block,
/// ties broken by row-major position.
SnfResult smith_normal_form(const IntMatrix& A);

/// U * A = H, det U = +-1, H in row-style upper echelon form with positive
/// pivots and entries above each pivot reduced into [0, pivot).
struct HnfResult {
  IntMatrix H, U;
};
HnfResult hermite_normal_form(const IntMatrix& A);

/// Nonzero rows of the Hermite form of the lattice spanned by the vectors.
/// Skips the transform, so it stays cheap for tall inputs.
std::vector<IntVector> lattice_basis(std::span<const IntVector> vectors, std::size_t dimension);

/// Whether v is an integer combination of the basis vectors.
bool lattice_contains(std::span<const IntVector> basis, const IntVector& v);

/// B with A * B = I_m exactly, or nothing if A has no right inverse.
std::optional<ElementMatrix> solve_right_inverse(const Ring& ring, const ElementMatrix& A);

IntMatrix identity_int(std::size_t n);
IntMatrix multiply(const IntMatrix& A, const IntMatrix& B);
/// Exact determinant by fraction-free elimination.
Integer determinant(const IntMatrix& A);

ElementMatrix identity(const Ring& ring, std::size_t n);
ElementMatrix multiply(const Ring& ring, const ElementMatrix& A, const ElementMatrix& B);

}  // namespace mennicke
