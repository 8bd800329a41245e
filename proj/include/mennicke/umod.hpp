#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mennicke/linalg.hpp"
#include "mennicke/ring.hpp"

namespace mennicke {

/// Right: the acting matrix is in E_n, column j += lambda * column i.
/// Left: the acting matrix is in E_m, row i += lambda * row j.
/// Either way the acting matrix is e_ij(lambda) = I + lambda * E_ij.
enum class Side { Left, Right };

struct ElementaryOp {
  Side side = Side::Right;
  std::size_t i = 0;  // 0-based
  std::size_t j = 0;
  Element lambda;

  friend bool operator==(const ElementaryOp& a, const ElementaryOp& b) {
    return a.side == b.side && a.i == b.i && a.j == b.j && a.lambda == b.lambda;
  }
};

using Transcript = std::vector<ElementaryOp>;

/// Reversed order with every lambda negated.
Transcript invert_transcript(const Ring& ring, const Transcript& t);

/// A row with entries generating the unit ideal; witness . entries = 1.
class UnimodularRow {
 public:
  UnimodularRow(Ring ring, std::vector<Element> entries, std::vector<Element> witness);

  const Ring& ring() const { return ring_; }
  const std::vector<Element>& entries() const { return entries_; }
  const std::vector<Element>& witness() const { return witness_; }
  std::size_t size() const { return entries_.size(); }

 private:
  Ring ring_;
  std::vector<Element> entries_;
  std::vector<Element> witness_;
};

/// An m x n matrix (1 <= m < n) with a stored n x m right inverse.
class RightInvertibleMatrix {
 public:
  RightInvertibleMatrix(Ring ring, ElementMatrix entries, ElementMatrix right_inverse);

  const Ring& ring() const { return ring_; }
  std::size_t m() const { return entries_.rows(); }
  std::size_t n() const { return entries_.cols(); }
  const ElementMatrix& entries() const { return entries_; }
  const ElementMatrix& right_inverse() const { return right_inverse_; }

 private:
  Ring ring_;
  ElementMatrix entries_;
  ElementMatrix right_inverse_;
};

UnimodularRow new_unimodular_row(const Ring& ring, std::vector<Element> entries);
RightInvertibleMatrix new_right_invertible(const Ring& ring, std::size_t m, std::size_t n, ElementMatrix entries);

/// Applies one op to bare entries; throws IndexOutOfBounds on bad indices.
void apply_op(const Ring& ring, ElementMatrix& M, const ElementaryOp& op);

/// Transports the invariant along the transcript and re-validates it at the
/// end. Left ops are rejected on rows.
UnimodularRow apply_transcript(const UnimodularRow& v, const Transcript& t);
RightInvertibleMatrix apply_transcript(const RightInvertibleMatrix& M, const Transcript& t);

/// Bounded sampling per ring kind: Integers uniform in [-3, 3]; residue
/// rings and prime fields uniform over all elements; GF(p)[x] degree <= 1
/// with uniform coefficients; products componentwise. Draws are
/// `engine() % range`, so streams are identical on every platform.
Element random_element(const Ring& ring, std::mt19937_64& engine);

struct RandomInstance {
  RightInvertibleMatrix matrix;
  Transcript generator;  // replaying this on (I_m | 0) yields matrix
};

/// Starts from (I_m | 0) and applies `steps` seeded random ops: Right ops,
/// plus Left ops with probability 1/3 when m >= 2.
RandomInstance random_unimodular_instance(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t seed,
                                          std::size_t steps);
RightInvertibleMatrix random_unimodular(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t seed,
                                        std::size_t steps);

struct VerificationReport {
  bool passed = false;
  std::optional<std::pair<std::size_t, std::size_t>> mismatch;  // first differing (row, col)
  std::string detail;
};

/// Replays the left ops, then the right ops, on `original` and compares the
/// result with `claimed` entrywise.
VerificationReport verify_certificate(const Ring& ring, const ElementMatrix& original, const Transcript& left,
                                      const Transcript& right, const ElementMatrix& claimed);

ElementMatrix row_matrix(const std::vector<Element>& row);

}  // namespace mennicke
