#pragma once

// Reference computations for the tests. Deliberately naive: machine
// integers, exhaustive search, no shared code with the library.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mennicke/ring.hpp"

namespace oracle {

using i64 = std::int64_t;

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline i64 gcd_all(const std::vector<i64>& xs) {
  i64 g = 0;
  for (auto x : xs) g = std::gcd(g, x);
  return g;
}

/// 0, 1, -1, 2, -2, ... up to +-bound.
inline std::vector<i64> search_values(i64 bound) {
  std::vector<i64> v{0};
  for (i64 k = 1; k <= bound; ++k) {
    v.push_back(k);
    v.push_back(-k);
  }
  return v;
}

/// First t (colexicographic over search_values, first coordinate fastest)
/// with gcd(b_i + t_i c) = 1.
inline std::optional<std::vector<i64>> stable_range_search(const std::vector<i64>& b, i64 c, i64 bound) {
  const auto vals = search_values(bound);
  std::vector<std::size_t> idx(b.size(), 0);
  while (true) {
    std::vector<i64> shifted(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) shifted[i] = b[i] + vals[idx[i]] * c;
    if (gcd_all(shifted) == 1) {
      std::vector<i64> t;
      for (auto k : idx) t.push_back(vals[k]);
      return t;
    }
    std::size_t p = 0;
    while (p < idx.size() && idx[p] + 1 == vals.size()) idx[p++] = 0;
    if (p == idx.size()) return std::nullopt;
    ++idx[p];
  }
}

/// Determinant by cofactor expansion.
inline mpz_class det(const std::vector<std::vector<mpz_class>>& A) {
  const std::size_t n = A.size();
  if (n == 0) return 1;
  if (n == 1) return A[0][0];
  mpz_class d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(A[i][j]);
      minor.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * A[0][c] * det(minor);
  }
  return d;
}

/// gcd of all k x k minors of A.
inline mpz_class determinantal_divisor(const std::vector<std::vector<mpz_class>>& A, std::size_t k) {
  const std::size_t m = A.size(), n = A[0].size();
  mpz_class g = 0;
  for (unsigned rmask = 0; rmask < (1u << m); ++rmask) {
    if (static_cast<std::size_t>(__builtin_popcount(rmask)) != k) continue;
    for (unsigned cmask = 0; cmask < (1u << n); ++cmask) {
      if (static_cast<std::size_t>(__builtin_popcount(cmask)) != k) continue;
      std::vector<std::vector<mpz_class>> sub;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(rmask >> i & 1)) continue;
        std::vector<mpz_class> row;
        for (std::size_t j = 0; j < n; ++j)
          if (cmask >> j & 1) row.push_back(A[i][j]);
        sub.push_back(row);
      }
      mpz_class d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

inline i64 uniform(std::mt19937_64& rng, i64 lo, i64 hi) {
  return lo + static_cast<i64>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace oracle
