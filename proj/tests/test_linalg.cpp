#include <doctest.h>

#include <random>

#include "mennicke/linalg.hpp"
#include "oracles.hpp"

using namespace mennicke;

namespace {

IntMatrix make(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Integer> data;
  std::size_t cols = 0;
  for (auto r : rows) {
    cols = r.size();
    for (long x : r) data.emplace_back(x);
  }
  return IntMatrix(rows.size(), cols, data);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A(i, j) = oracle::uniform(rng, -bound, bound);
  return A;
}

std::vector<std::vector<mpz_class>> nested(const IntMatrix& A) {
  std::vector<std::vector<mpz_class>> out(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) out[i] = A.row(i);
  return out;
}

void check_snf(const IntMatrix& A) {
  const auto r = smith_normal_form(A);
  CHECK(multiply(multiply(r.U, A), r.V) == r.D);
  CHECK(abs(oracle::det(nested(r.U))) == 1);
  CHECK(abs(oracle::det(nested(r.V))) == 1);
  const std::size_t k = std::min(A.rows(), A.cols());
  for (std::size_t i = 0; i < r.D.rows(); ++i)
    for (std::size_t j = 0; j < r.D.cols(); ++j)
      if (i != j) CHECK(r.D(i, j) == 0);
  for (std::size_t i = 0; i < k; ++i) {
    CHECK(r.D(i, i) >= 0);
    if (i + 1 < k) {
      if (r.D(i, i) == 0)
        CHECK(r.D(i + 1, i + 1) == 0);
      else
        CHECK(r.D(i + 1, i + 1) % r.D(i, i) == 0);
    }
  }
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
  CHECK(smith_normal_form(make({{2, 4}, {6, 8}})).D == make({{2, 0}, {0, 4}}));
  const auto id = smith_normal_form(identity_int(3));
  CHECK(id.D == identity_int(3));
  CHECK(smith_normal_form(make({{0}})).D == make({{0}}));
  check_snf(make({{2, 4}, {6, 8}}));
}

TEST_CASE("smith_normal_form on 500 random matrices") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 500; ++k) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    check_snf(random_matrix(rng, r, c, 50));
  }
}

TEST_CASE("3x3 invariant factors match determinantal divisors") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const IntMatrix A = random_matrix(rng, 3, 3, k % 2 ? 50 : 4);
    const auto D = smith_normal_form(A).D;
    mpz_class prev = 1;
    for (std::size_t i = 1; i <= 3; ++i) {
      const mpz_class dk = oracle::determinantal_divisor(nested(A), i);
      const mpz_class expected = prev == 0 ? mpz_class(0) : mpz_class(dk / prev);
      CHECK(D(i - 1, i - 1) == expected);
      prev = dk;
    }
  }
}

TEST_CASE("hermite_normal_form examples and shape") {
  CHECK(hermite_normal_form(make({{4}, {6}})).H == make({{2}, {0}}));
  CHECK(hermite_normal_form(identity_int(3)).H == identity_int(3));
  CHECK(hermite_normal_form(make({{1, 2}, {3, 4}})).H == make({{1, 0}, {0, 2}}));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    const IntMatrix A = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 20);
    const auto [H, U] = hermite_normal_form(A);
    CHECK(multiply(U, A) == H);
    CHECK(abs(determinant(U)) == 1);
    std::size_t last_pivot = 0;
    bool zero_rows = false;
    for (std::size_t i = 0; i < H.rows(); ++i) {
      std::size_t p = 0;
      while (p < H.cols() && H(i, p) == 0) ++p;
      if (p == H.cols()) {
        zero_rows = true;
        continue;
      }
      CHECK_FALSE(zero_rows);
      if (i > 0) CHECK(p > last_pivot);
      last_pivot = p;
      CHECK(H(i, p) > 0);
      for (std::size_t r = 0; r < i; ++r) {
        CHECK(H(r, p) >= 0);
        CHECK(H(r, p) < H(i, p));
      }
    }
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix A = random_matrix(rng, n, n, 9);
    CHECK(determinant(A) == oracle::det(nested(A)));
  }
}

TEST_CASE("lattice_contains examples") {
  const std::vector<IntVector> b{{2, 0}, {0, 2}};
  CHECK(lattice_contains(b, {2, 2}));
  CHECK_FALSE(lattice_contains(b, {1, 0}));
  CHECK(lattice_contains(std::vector<IntVector>{{1, 1}}, {3, 3}));
  CHECK(lattice_contains(std::vector<IntVector>{}, {0, 0}));
  CHECK_FALSE(lattice_contains(std::vector<IntVector>{}, {0, 1}));
  CHECK_THROWS(lattice_contains(b, {1, 2, 3}));
}

TEST_CASE("lattice_contains agrees with a coefficient search") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 150; ++k) {
    const std::size_t count = 1 + rng() % 2;
    std::vector<std::vector<long>> basis(count, std::vector<long>(3));
    for (auto& v : basis)
      for (auto& x : v) x = oracle::uniform(rng, -4, 4);
    std::vector<long> target(3);
    if (rng() % 2) {
      for (auto& x : target) x = oracle::uniform(rng, -8, 8);
    } else {
      for (const auto& v : basis) {
        const long c = oracle::uniform(rng, -3, 3);
        for (int i = 0; i < 3; ++i) target[i] += c * v[i];
      }
    }
    bool found = false;
    for (long a = -10; a <= 10 && !found; ++a)
      for (long b = (count > 1 ? -10 : 0); b <= (count > 1 ? 10 : 0) && !found; ++b) {
        bool eq = true;
        for (int i = 0; i < 3; ++i) eq = eq && a * basis[0][i] + (count > 1 ? b * basis[1][i] : 0) == target[i];
        found = eq;
      }
    std::vector<IntVector> bv;
    for (const auto& v : basis) bv.push_back({v[0], v[1], v[2]});
    const bool contained = lattice_contains(lattice_basis(bv, 3), {target[0], target[1], target[2]});
    CHECK(found == contained);
    CHECK(lattice_contains(bv, {target[0], target[1], target[2]}) == contained);
  }
}

TEST_CASE("lattice_basis spans the same lattice") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    std::vector<IntVector> vs;
    for (int i = 0; i < 5; ++i) vs.push_back({oracle::uniform(rng, -9, 9), oracle::uniform(rng, -9, 9),
                                              oracle::uniform(rng, -9, 9), oracle::uniform(rng, -9, 9)});
    const auto basis = lattice_basis(vs, 4);
    for (const auto& v : vs) CHECK(lattice_contains(basis, v));
    for (const auto& b : basis) CHECK(lattice_contains(vs, b));
  }
}

TEST_CASE("solve_right_inverse examples") {
  const Ring Z = Ring::integers();
  auto E = [](long v) { return Element(Integer(v)); };
  auto B = solve_right_inverse(Z, ElementMatrix(2, 3, {E(1), E(0), E(0), E(0), E(1), E(0)}));
  REQUIRE(B);
  CHECK(*B == ElementMatrix(3, 2, {E(1), E(0), E(0), E(1), E(0), E(0)}));
  auto b2 = solve_right_inverse(Z, ElementMatrix(1, 2, {E(2), E(3)}));
  REQUIRE(b2);
  CHECK(multiply(Z, ElementMatrix(1, 2, {E(2), E(3)}), *b2) == identity(Z, 1));
  CHECK_FALSE(solve_right_inverse(Z, ElementMatrix(1, 2, {E(2), E(4)})));
  const Ring R4 = Ring::parse("Z/4");
  auto b3 = solve_right_inverse(R4, ElementMatrix(1, 2, {E(2), E(3)}));
  REQUIRE(b3);
  CHECK(multiply(R4, ElementMatrix(1, 2, {E(2), E(3)}), *b3) == identity(R4, 1));
}

TEST_CASE("solve_right_inverse over residue rings agrees with brute force") {
  std::mt19937_64 rng(7);
  for (long n : {2L, 3L, 4L}) {
    const Ring R = Ring::residue(n);
    const auto elems = enumerate_elements(R);
    for (auto [m, c] : {std::pair<std::size_t, std::size_t>{1, 2}, {1, 3}, {2, 3}, {2, 2}}) {
      for (int k = 0; k < 40; ++k) {
        std::vector<Element> data;
        for (std::size_t i = 0; i < m * c; ++i) data.push_back(elems[rng() % elems.size()]);
        const ElementMatrix A(m, c, data);
        const auto B = solve_right_inverse(R, A);
        if (B) {
          CHECK(multiply(R, A, *B) == identity(R, m));
          continue;
        }
        const std::size_t cells = c * m;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < cells; ++i) total *= elems.size();
        bool exists = false;
        for (std::uint64_t code = 0; code < total && !exists; ++code) {
          std::vector<Element> bd(cells);
          std::uint64_t x = code;
          for (auto& e : bd) {
            e = elems[x % elems.size()];
            x /= elems.size();
          }
          exists = multiply(R, A, ElementMatrix(c, m, bd)) == identity(R, m);
        }
        CHECK_FALSE(exists);
      }
    }
  }
}

TEST_CASE("solve_right_inverse over fields, polynomials and products") {
  std::mt19937_64 rng(8);
  for (const char* d : {"GF(5)", "GF(2)[x]", "GF(3)[x]", "(Z/4, GF(3))", "Z"}) {
    const Ring R = Ring::parse(d);
    const auto elems = R.is_finite() ? enumerate_elements(R) : std::vector<Element>{};
    int found = 0;
    for (int k = 0; k < 60; ++k) {
      std::vector<Element> data;
      for (int i = 0; i < 6; ++i) {
        if (R.is_finite()) {
          data.push_back(elems[rng() % elems.size()]);
        } else if (R.kind() == RingKind::Integers) {
          data.push_back(Element(Integer(oracle::uniform(rng, -5, 5))));
        } else {
          data.push_back(R.poly_arith().make({oracle::uniform(rng, 0, 4), oracle::uniform(rng, 0, 4)}));
        }
      }
      const ElementMatrix A(2, 3, data);
      if (auto B = solve_right_inverse(R, A)) {
        ++found;
        CHECK(multiply(R, A, *B) == identity(R, 2));
      }
    }
    CHECK(found > 0);
  }
}
