#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mennicke/linalg.hpp"
#include "mennicke/ring.hpp"

namespace mennicke {

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

/// All m x n right-invertible matrices (m = 1: unimodular rows) over a
/// finite ring, in lexicographic order of their row-major entries.
/// Throws NotFinite, or CapExceeded when |R|^{mn} > cap.
std::vector<ElementMatrix> enumerate_um(const Ring& ring, std::size_t m, std::size_t n,
                                        std::uint64_t cap = kDefaultCap);

/// Orbits of E_n acting on the right. Orbit k is represented by
/// all_rows[representative[k]], its lexicographically least member.
class OrbitTable {
 public:
  OrbitTable(Ring ring, std::size_t m, std::size_t n, std::uint64_t cap = kDefaultCap);

  const Ring& ring() const { return ring_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const std::vector<ElementMatrix>& all_rows() const { return rows_; }
  std::size_t orbit_count() const { return reps_.size(); }
  const std::vector<std::size_t>& representatives() const { return reps_; }

  /// Orbit index of a member, or nothing if the matrix is not right-invertible.
  std::optional<std::size_t> orbit_of(const ElementMatrix& A) const;
  const ElementMatrix& canon(const ElementMatrix& A) const;

 private:
  std::optional<std::uint64_t> code(const ElementMatrix& A) const;

  Ring ring_;
  std::size_t m_, n_;
  std::vector<Element> elements_;
  std::vector<ElementMatrix> rows_;
  std::vector<std::uint64_t> codes_;   // sorted, parallel to rows_
  std::vector<std::size_t> orbit_;     // parallel to rows_
  std::vector<std::size_t> reps_;
};

OrbitTable enumerate_orbits(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t cap = kDefaultCap);

/// Assigns symbol generators to rows (x, tail). Tails range over
/// `tails`; `label` returns nothing when (x, tail) is not unimodular.
struct Labeling {
  Ring ring;
  std::vector<std::vector<Element>> tails;
  std::size_t generator_count = 0;
  std::vector<std::string> generator_names;
  std::function<std::optional<std::size_t>(const Element& x, std::size_t tail_index)> label;
};

/// Generators are the orbits of unimodular rows of length table.n().
Labeling orbit_labeling(const OrbitTable& table);

/// Generators are the classes of x modulo (tail) with (x, tail) unimodular,
/// one family per tail. Honours MS1 in the form "congruent first entries
/// give equal symbols", and nothing more.
Labeling congruence_labeling(const Ring& ring, std::vector<std::vector<Element>> tails);

enum class RelationKind { MS2, MS3, MS4, MS5, MS6, MS7 };

std::string to_string(RelationKind k);
RelationKind parse_relation_kind(std::string_view s);

/// One relation in additive form. `params` holds (x, y) for MS2 and MS3,
/// (f, g) for MS4, (r, q) for MS5, (x) for MS6 and MS7.
struct RelationInstance {
  RelationKind kind;
  std::size_t tail_index = 0;
  std::vector<Element> params;
  unsigned exponent = 0;  // MS7 only
  IntVector vector;
};

struct HarvestOptions {
  unsigned min_exponent = 2;  // MS7
  unsigned max_exponent = 3;
  /// 0 enumerates every instance; otherwise a seeded sample of this size.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

std::vector<RelationInstance> harvest_relations(const Labeling& labeling, RelationKind kind,
                                                const HarvestOptions& opts = {});

/// Re-checks the hypothesis of an instance and recomputes its vector.
bool relation_holds(const Labeling& labeling, const RelationInstance& inst);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<IntVector> relations;
};

Presentation make_presentation(const Labeling& labeling, const std::vector<RelationKind>& kinds,
                               const HarvestOptions& opts = {});

struct GroupInvariants {
  /// d_1 | d_2 | ..., units omitted, 0 for a free summand.
  std::vector<Integer> invariant_factors;
  /// Prime powers of the torsion part, ascending, followed by a 0 per
  /// free summand.
  std::vector<Integer> elementary_divisors;
};

GroupInvariants universal_group(const Presentation& pres);

struct Violation {
  RelationKind kind;  // the relation that fell outside the lattice
  RelationInstance instance;
};

struct EquivalenceReport {
  bool ms5_in_ms3_ms4 = true;
  bool ms3_in_ms5_ms4 = true;
  std::size_t ms3_count = 0, ms4_count = 0, ms5_count = 0;
  std::vector<Violation> violations;
  bool passed() const { return ms5_in_ms3_ms4 && ms3_in_ms5_ms4; }
};

/// Checks that every MS5 vector lies in the lattice of MS3 and MS4 vectors
/// and vice versa. With `withhold_ms4` the MS4 vectors are left out.
EquivalenceReport check_equivalence_ms3_ms5(const Labeling& labeling, bool withhold_ms4 = false);

struct ChainStep {
  std::string claim;
  bool passed = false;
};

struct ChainReport {
  std::vector<ChainStep> steps;
  bool passed() const;
};

/// Congruences mod (tail) behind MS3 => MS5, given r(1+q) = q mod (tail).
ChainReport verify_chain_ms3_to_ms5(const Ring& ring, const std::vector<Element>& tail, const Element& r,
                                    const Element& q);

/// Congruences mod (tail) behind MS5 => MS3, given x + y = 1 and
/// vy = 1 mod (tail).
ChainReport verify_chain_ms5_to_ms3(const Ring& ring, const std::vector<Element>& tail, const Element& x,
                                    const Element& y, const Element& v);

struct ChainTally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when nothing failed
};

struct ChainSampling {
  ChainTally ms3_to_ms5;
  ChainTally ms5_to_ms3;
  bool passed() const { return ms3_to_ms5.failures == 0 && ms5_to_ms3.failures == 0; }
};

/// Draws `count` hypothesis-satisfying instances per direction with tails of
/// length `tail_length` (entries from random_element) and runs both chains.
ChainSampling sample_chains(const Ring& ring, std::size_t tail_length, std::size_t count, std::uint64_t seed);

}  // namespace mennicke
