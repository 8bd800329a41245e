#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mennicke/umod.hpp"

namespace mennicke {

struct MnConfig {
  int retry_budget = 32;
  std::uint64_t rng_seed = 0;
  /// Replaces the ring's declared sdim in the range check.
  std::optional<int> sdim_override;
};

/// v eps = (x, tail), w delta = (y, tail), x + y = 1.
struct RowNormalization {
  Ring ring;
  Element x;
  Element y;
  std::vector<Element> tail;
  Transcript eps;
  Transcript delta;
};

/// Requires sdim(R) <= 2n - 3. Emits Right ops only.
RowNormalization mn_rows(const UnimodularRow& v, const UnimodularRow& w, std::optional<int> sdim_override = {});

/// S -> (X | alpha), T -> (I - X | alpha).
struct PairNormalization {
  Ring ring;
  ElementMatrix X;
  ElementMatrix alpha;
  Transcript left_s, right_s;
  Transcript left_t, right_t;
};

/// Requires 2 <= m < n and sdim(R) <= 2(n - m) - 1.
PairNormalization mn_matrices(const RightInvertibleMatrix& S, const RightInvertibleMatrix& T,
                              const MnConfig& cfg = {});

/// Targets in [first, last) may receive multiples of `value`, and `value`
/// may receive multiples of those targets.
struct HelperGroup {
  Element value;
  std::size_t first = 0;
  std::size_t last = 0;
};

struct SubsetMove {
  enum class Kind {
    Pivot,    // targets[target] += coeff * pivot
    Helper,   // targets[target] += coeff * helpers[group]
    Perturb,  // helpers[group] += coeff * targets[target]
  };
  Kind kind = Kind::Pivot;
  std::size_t target = 0;
  std::size_t group = 0;
  Element coeff;
};

struct SubsetPlan {
  std::vector<SubsetMove> moves;  // apply in order
  std::vector<Element> targets;   // values after all moves
  std::vector<Element> helpers;
  int retries = 0;
};

/// Finds moves making `targets` unimodular: multiples of the pivot first,
/// then multiples of the helper product modulo the pivot, then up to
/// cfg.retry_budget rounds of seeded random helper moves in both directions.
/// Throws SubsetUnimodularizationExhausted when every rung fails.
SubsetPlan subset_unimodularize(const Ring& ring, const std::vector<Element>& targets, const Element& pivot,
                                const std::vector<HelperGroup>& helpers, const MnConfig& cfg = {});

}  // namespace mennicke
