#include <doctest.h>

#include <random>

#include "mennicke/error.hpp"
#include "mennicke/umod.hpp"

using namespace mennicke;

namespace {

Element E(long v) { return Element(Integer(v)); }

ElementaryOp R(std::size_t i, std::size_t j, long lambda) { return {Side::Right, i, j, E(lambda)}; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::OracleFailure;
}

Transcript random_transcript(const Ring& ring, std::mt19937_64& rng, std::size_t m, std::size_t n,
                             std::size_t len, bool allow_left) {
  Transcript t;
  for (std::size_t k = 0; k < len; ++k) {
    const bool left = allow_left && m >= 2 && rng() % 2;
    const std::size_t dim = left ? m : n;
    const std::size_t i = rng() % dim;
    std::size_t j = rng() % (dim - 1);
    if (j >= i) ++j;
    t.push_back({left ? Side::Left : Side::Right, i, j, random_element(ring, rng)});
  }
  return t;
}

}  // namespace

TEST_CASE("new_unimodular_row") {
  const Ring Z = Ring::integers();
  const auto v = new_unimodular_row(Z, {E(3), E(5)});
  CHECK(v.witness() == std::vector<Element>{E(2), E(-1)});
  CHECK(code_of([&] { new_unimodular_row(Z, {E(2), E(4)}); }) == ErrorCode::NotUnimodular);
  CHECK(code_of([&] { new_unimodular_row(Z, {E(1)}); }) == ErrorCode::DimensionMismatch);
  const Ring F2 = Ring::parse("GF(2)");
  CHECK(new_unimodular_row(F2, {E(0), E(1)}).witness() == std::vector<Element>{E(0), E(1)});
  CHECK_THROWS_AS(UnimodularRow(Z, {E(3), E(5)}, {E(1), E(1)}), Error);
}

TEST_CASE("new_right_invertible") {
  const Ring Z = Ring::integers();
  const ElementMatrix I2_0(2, 4, {E(1), E(0), E(0), E(0), E(0), E(1), E(0), E(0)});
  const auto M = new_right_invertible(Z, 2, 4, I2_0);
  CHECK(M.right_inverse() == ElementMatrix(4, 2, {E(1), E(0), E(0), E(1), E(0), E(0), E(0), E(0)}));
  const ElementMatrix even(2, 4, {E(2), E(0), E(4), E(0), E(0), E(2), E(0), E(6)});
  CHECK(code_of([&] { new_right_invertible(Z, 2, 4, even); }) == ErrorCode::NotRightInvertible);
  const Ring R4 = Ring::parse("Z/4");
  const auto N = new_right_invertible(R4, 1, 2, ElementMatrix(1, 2, {E(2), E(3)}));
  CHECK(multiply(R4, N.entries(), N.right_inverse()) == identity(R4, 1));
  CHECK(code_of([&] { new_right_invertible(Z, 2, 2, ElementMatrix(2, 2, E(0))); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("apply_transcript examples") {
  const Ring Z = Ring::integers();
  const auto v = new_unimodular_row(Z, {E(1), E(0)});
  CHECK(apply_transcript(v, {R(0, 1, 5)}).entries() == std::vector<Element>{E(1), E(5)});
  CHECK(apply_transcript(v, {}).entries() == v.entries());
  const auto w = new_unimodular_row(Z, {E(3), E(5)});
  CHECK(apply_transcript(w, {R(1, 0, -1)}).entries() == std::vector<Element>{E(-2), E(5)});
  CHECK(code_of([&] { apply_transcript(w, {R(0, 2, 1)}); }) == ErrorCode::IndexOutOfBounds);
  CHECK(code_of([&] { apply_transcript(w, {R(1, 1, 1)}); }) == ErrorCode::IndexOutOfBounds);
  CHECK(code_of([&] { apply_transcript(w, {{Side::Left, 0, 1, E(1)}}); }) == ErrorCode::LeftOpOnRow);

  ElementMatrix M(2, 3, {E(1), E(2), E(3), E(4), E(5), E(6)});
  apply_op(Z, M, {Side::Left, 1, 0, E(2)});
  CHECK(M == ElementMatrix(2, 3, {E(1), E(2), E(3), E(6), E(9), E(12)}));
  CHECK(code_of([&] { apply_op(Z, M, {Side::Left, 0, 2, E(1)}); }) == ErrorCode::IndexOutOfBounds);
}

TEST_CASE("invert_transcript") {
  const Ring Z = Ring::integers();
  CHECK(invert_transcript(Z, {R(0, 1, 5)}) == Transcript{R(0, 1, -5)});
  CHECK(invert_transcript(Z, {}).empty());
  CHECK(invert_transcript(Z, {R(0, 1, 2), R(1, 0, 3)}) == Transcript{R(1, 0, -3), R(0, 1, -2)});
}

TEST_CASE("witness transport keeps the pairing") {
  std::mt19937_64 rng(12);
  for (const char* d : {"Z", "Z/12", "GF(3)[x]", "(Z/4, GF(3))"}) {
    const Ring ring = Ring::parse(d);
    for (int k = 0; k < 50; ++k) {
      auto row = apply_transcript(new_unimodular_row(ring, {ring.one(), ring.zero(), ring.zero()}),
                                  random_transcript(ring, rng, 1, 3, 10, false));
      for (const auto& op : random_transcript(ring, rng, 1, 3, 10, false)) {
        row = apply_transcript(row, {op});
        Element s = ring.zero();
        for (std::size_t i = 0; i < row.size(); ++i) s = ring.add(s, ring.mul(row.entries()[i], row.witness()[i]));
        CHECK(s == ring.one());
      }
    }
  }
}

TEST_CASE("transcripts round trip") {
  std::mt19937_64 rng(13);
  for (const char* d : {"Z", "Z/9", "GF(2)[x]", "(GF(2), Z/3)"}) {
    const Ring ring = Ring::parse(d);
    for (int k = 0; k < 40; ++k) {
      const auto M = random_unimodular(ring, 2, 4, rng(), 8);
      const auto t = random_transcript(ring, rng, 2, 4, 1 + rng() % 30, true);
      const auto there = apply_transcript(M, t);
      CHECK(apply_transcript(there, invert_transcript(ring, t)).entries() == M.entries());
      // Elementary ops keep right-invertibility.
      CHECK(solve_right_inverse(ring, there.entries()).has_value());
    }
  }
}

TEST_CASE("random_unimodular") {
  const Ring Z = Ring::integers();
  const auto base = random_unimodular(Z, 2, 4, 99, 0);
  CHECK(base.entries() == ElementMatrix(2, 4, {E(1), E(0), E(0), E(0), E(0), E(1), E(0), E(0)}));
  for (const char* d : {"Z", "Z/9", "GF(3)[x]", "(Z/4, GF(3))"}) {
    const Ring ring = Ring::parse(d);
    const auto a = random_unimodular_instance(ring, 2, 5, 17, 25);
    const auto b = random_unimodular_instance(ring, 2, 5, 17, 25);
    CHECK(a.matrix.entries() == b.matrix.entries());
    CHECK(a.generator == b.generator);
  }
  const auto inst = random_unimodular_instance(Z, 1, 3, 7, 20);
  ElementMatrix start(1, 3, {E(1), E(0), E(0)});
  for (const auto& op : inst.generator) apply_op(Z, start, op);
  CHECK(start == inst.matrix.entries());
  CHECK(is_unimodular(Z, inst.matrix.entries().data()));
  CHECK(std::all_of(inst.generator.begin(), inst.generator.end(),
                    [](const ElementaryOp& op) { return op.side == Side::Right; }));
}

TEST_CASE("random_element stays in the documented ranges") {
  std::mt19937_64 rng(1);
  const Ring Z = Ring::integers();
  for (int k = 0; k < 500; ++k) {
    const Integer v = random_element(Z, rng).integer();
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
  const Ring P = Ring::parse("GF(5)[x]");
  for (int k = 0; k < 200; ++k) CHECK(random_element(P, rng).poly().degree() <= 1);
}

TEST_CASE("verify_certificate") {
  const Ring Z = Ring::integers();
  const ElementMatrix A(2, 3, {E(1), E(2), E(3), E(4), E(5), E(7)});
  auto ok = verify_certificate(Z, A, {}, {}, A);
  CHECK(ok.passed);
  ElementMatrix claimed = A;
  claimed(1, 2) = E(8);
  auto bad = verify_certificate(Z, A, {}, {}, claimed);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.mismatch);
  CHECK(*bad.mismatch == std::pair<std::size_t, std::size_t>{1, 2});

  const Transcript left{{Side::Left, 0, 1, E(-1)}};
  const Transcript right{R(0, 2, 2)};
  ElementMatrix replay = A;
  for (const auto& op : left) apply_op(Z, replay, op);
  for (const auto& op : right) apply_op(Z, replay, op);
  CHECK(verify_certificate(Z, A, left, right, replay).passed);
  CHECK_FALSE(verify_certificate(Z, A, right, left, replay).passed);
  CHECK_FALSE(verify_certificate(Z, A, {}, {R(0, 9, 1)}, replay).passed);
}
