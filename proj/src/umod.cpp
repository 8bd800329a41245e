#include "mennicke/umod.hpp"

#include "mennicke/error.hpp"

namespace mennicke {

Transcript invert_transcript(const Ring& ring, const Transcript& t) {
  Transcript out;
  out.reserve(t.size());
  for (auto it = t.rbegin(); it != t.rend(); ++it) out.push_back({it->side, it->i, it->j, ring.neg(it->lambda)});
  return out;
}

UnimodularRow::UnimodularRow(Ring ring, std::vector<Element> entries, std::vector<Element> witness)
    : ring_(std::move(ring)), entries_(std::move(entries)), witness_(std::move(witness)) {
  if (entries_.size() != witness_.size()) throw Error(ErrorCode::DimensionMismatch, "witness length");
  Element sum = ring_.zero();
  for (std::size_t i = 0; i < entries_.size(); ++i) sum = ring_.add(sum, ring_.mul(entries_[i], witness_[i]));
  if (sum != ring_.one()) throw Error(ErrorCode::NotUnimodular, "witness does not pair to 1");
}

RightInvertibleMatrix::RightInvertibleMatrix(Ring ring, ElementMatrix entries, ElementMatrix right_inverse)
    : ring_(std::move(ring)), entries_(std::move(entries)), right_inverse_(std::move(right_inverse)) {
  if (right_inverse_.rows() != entries_.cols() || right_inverse_.cols() != entries_.rows())
    throw Error(ErrorCode::DimensionMismatch, "right inverse shape");
  if (multiply(ring_, entries_, right_inverse_) != identity(ring_, entries_.rows()))
    throw Error(ErrorCode::NotRightInvertible, "stored right inverse does not give the identity");
}

UnimodularRow new_unimodular_row(const Ring& ring, std::vector<Element> entries) {
  if (entries.size() < 2) throw Error(ErrorCode::DimensionMismatch, "unimodular rows have length at least 2");
  for (const auto& e : entries)
    if (!ring.owns(e)) throw Error(ErrorCode::MalformedElement, "entry is not an element of " + ring.descriptor());
  auto w = bezout_witness(ring, entries);
  if (!w) throw Error(ErrorCode::NotUnimodular, "entries do not generate the unit ideal");
  return UnimodularRow(ring, std::move(entries), std::move(*w));
}

RightInvertibleMatrix new_right_invertible(const Ring& ring, std::size_t m, std::size_t n, ElementMatrix entries) {
  if (m < 1 || m >= n) throw Error(ErrorCode::DimensionMismatch, "need 1 <= m < n");
  if (entries.rows() != m || entries.cols() != n) throw Error(ErrorCode::DimensionMismatch, "entries shape");
  for (const auto& e : entries.data())
    if (!ring.owns(e)) throw Error(ErrorCode::MalformedElement, "entry is not an element of " + ring.descriptor());
  auto B = solve_right_inverse(ring, entries);
  if (!B) throw Error(ErrorCode::NotRightInvertible, "matrix has no right inverse");
  return RightInvertibleMatrix(ring, std::move(entries), std::move(*B));
}

namespace {

void check_indices(const ElementaryOp& op, std::size_t bound) {
  if (op.i == op.j) throw Error(ErrorCode::IndexOutOfBounds, "elementary op needs distinct indices");
  if (op.i >= bound || op.j >= bound)
    throw Error(ErrorCode::IndexOutOfBounds, "op index " + std::to_string(std::max(op.i, op.j) + 1) +
                                                 " exceeds dimension " + std::to_string(bound));
}

/// dst_col += f * src_col
void add_column(const Ring& ring, ElementMatrix& M, std::size_t dst, std::size_t src, const Element& f) {
  for (std::size_t r = 0; r < M.rows(); ++r) M(r, dst) = ring.add(M(r, dst), ring.mul(f, M(r, src)));
}

/// dst_row += f * src_row
void add_row(const Ring& ring, ElementMatrix& M, std::size_t dst, std::size_t src, const Element& f) {
  for (std::size_t c = 0; c < M.cols(); ++c) M(dst, c) = ring.add(M(dst, c), ring.mul(f, M(src, c)));
}

/// Applies op to M and the inverse op on the other side of B, so M * B is
/// unchanged: M e = M', e^{-1} B = B' for right ops; e M = M', B e^{-1} = B'
/// for left ops.
void apply_with_inverse(const Ring& ring, ElementMatrix& M, ElementMatrix& B, const ElementaryOp& op) {
  if (ring.is_zero(op.lambda)) {
    check_indices(op, op.side == Side::Right ? M.cols() : M.rows());
    return;
  }
  const Element minus = ring.neg(op.lambda);
  if (op.side == Side::Right) {
    check_indices(op, M.cols());
    add_column(ring, M, op.j, op.i, op.lambda);
    add_row(ring, B, op.i, op.j, minus);
  } else {
    check_indices(op, M.rows());
    add_row(ring, M, op.i, op.j, op.lambda);
    add_column(ring, B, op.j, op.i, minus);
  }
}

}  // namespace

void apply_op(const Ring& ring, ElementMatrix& M, const ElementaryOp& op) {
  if (op.side == Side::Right) {
    check_indices(op, M.cols());
    if (!ring.is_zero(op.lambda)) add_column(ring, M, op.j, op.i, op.lambda);
  } else {
    check_indices(op, M.rows());
    if (!ring.is_zero(op.lambda)) add_row(ring, M, op.i, op.j, op.lambda);
  }
}

ElementMatrix row_matrix(const std::vector<Element>& row) { return ElementMatrix(1, row.size(), row); }

UnimodularRow apply_transcript(const UnimodularRow& v, const Transcript& t) {
  ElementMatrix M = row_matrix(v.entries());
  ElementMatrix W(v.size(), 1, v.witness());
  for (const auto& op : t) {
    if (op.side == Side::Left) throw Error(ErrorCode::LeftOpOnRow, "rows only carry the right E_n action");
    apply_with_inverse(v.ring(), M, W, op);
  }
  return UnimodularRow(v.ring(), M.row(0), W.data());
}

RightInvertibleMatrix apply_transcript(const RightInvertibleMatrix& A, const Transcript& t) {
  ElementMatrix M = A.entries();
  ElementMatrix B = A.right_inverse();
  for (const auto& op : t) apply_with_inverse(A.ring(), M, B, op);
  return RightInvertibleMatrix(A.ring(), std::move(M), std::move(B));
}

namespace {

Integer draw(std::mt19937_64& engine, const Integer& range) {
  if (range.fits_ulong_p()) return Integer(static_cast<unsigned long>(engine() % range.get_ui()));
  // Wide ranges: assemble 64-bit limbs, then reduce.
  Integer acc = 0;
  for (std::size_t bits = 0; bits < mpz_sizeinbase(range.get_mpz_t(), 2) + 64; bits += 64) {
    acc <<= 64;
    acc += Integer(std::to_string(engine()));
  }
  return Integer(acc % range);
}

}  // namespace

Element random_element(const Ring& ring, std::mt19937_64& engine) {
  switch (ring.kind()) {
    case RingKind::Integers: return Element(Integer(draw(engine, 7) - 3));
    case RingKind::Residue:
    case RingKind::PrimeField: return Element(draw(engine, ring.modulus()));
    case RingKind::PolyOverPrimeField: {
      Integer c0 = draw(engine, ring.modulus());
      Integer c1 = draw(engine, ring.modulus());
      return Element(ring.poly_arith().make({c0, c1}));
    }
    case RingKind::Product: {
      std::vector<Element> parts;
      for (const auto& comp : ring.components()) parts.push_back(random_element(comp, engine));
      return Element(std::move(parts));
    }
  }
  return ring.zero();
}

RandomInstance random_unimodular_instance(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t seed,
                                          std::size_t steps) {
  if (m < 1 || m >= n) throw Error(ErrorCode::DimensionMismatch, "need 1 <= m < n");
  ElementMatrix start(m, n, ring.zero());
  ElementMatrix inverse(n, m, ring.zero());
  for (std::size_t i = 0; i < m; ++i) {
    start(i, i) = ring.one();
    inverse(i, i) = ring.one();
  }
  RightInvertibleMatrix base(ring, start, inverse);

  std::mt19937_64 engine(seed);
  Transcript ops;
  for (std::size_t s = 0; s < steps; ++s) {
    const bool left = m >= 2 && engine() % 3 == 0;
    const std::size_t dim = left ? m : n;
    const std::size_t i = engine() % dim;
    std::size_t j = engine() % (dim - 1);
    if (j >= i) ++j;
    ops.push_back({left ? Side::Left : Side::Right, i, j, random_element(ring, engine)});
  }
  return {apply_transcript(base, ops), ops};
}

RightInvertibleMatrix random_unimodular(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t seed,
                                        std::size_t steps) {
  return random_unimodular_instance(ring, m, n, seed, steps).matrix;
}

VerificationReport verify_certificate(const Ring& ring, const ElementMatrix& original, const Transcript& left,
                                      const Transcript& right, const ElementMatrix& claimed) {
  VerificationReport report;
  if (original.rows() != claimed.rows() || original.cols() != claimed.cols()) {
    report.detail = "claimed matrix has a different shape";
    return report;
  }
  ElementMatrix M = original;
  try {
    for (const auto& op : left) {
      if (op.side != Side::Left) throw Error(ErrorCode::MalformedInput, "right op in the left transcript");
      apply_op(ring, M, op);
    }
    for (const auto& op : right) {
      if (op.side != Side::Right) throw Error(ErrorCode::MalformedInput, "left op in the right transcript");
      apply_op(ring, M, op);
    }
  } catch (const Error& e) {
    report.detail = e.what();
    return report;
  }
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (M(i, j) != claimed(i, j)) {
        report.mismatch = {i, j};
        report.detail = "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + "): replay gives " +
                        ring.format(M(i, j)) + ", claimed " + ring.format(claimed(i, j));
        return report;
      }
    }
  report.passed = true;
  return report;
}

}  // namespace mennicke
