#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "mennicke/error.hpp"
#include "mennicke/symbols.hpp"
#include "mennicke/umod.hpp"

using namespace mennicke;

namespace {

Element E(long v) { return Element(Integer(v)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::OracleFailure;
}

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

/// Orbits by union-find over every generator application, independent of the
/// table's BFS.
std::size_t union_find_orbits(const Ring& ring, const std::vector<ElementMatrix>& all) {
  std::map<ElementMatrix, std::size_t, bool (*)(const ElementMatrix&, const ElementMatrix&)> pos(
      [](const ElementMatrix& a, const ElementMatrix& b) { return a.data() < b.data(); });
  for (std::size_t i = 0; i < all.size(); ++i) pos[all[i]] = i;
  std::vector<std::size_t> parent(all.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto elems = enumerate_elements(ring);
  for (std::size_t k = 0; k < all.size(); ++k)
    for (std::size_t i = 0; i < all[k].cols(); ++i)
      for (std::size_t j = 0; j < all[k].cols(); ++j) {
        if (i == j) continue;
        for (const auto& lam : elems) {
          ElementMatrix B = all[k];
          apply_op(ring, B, {Side::Right, i, j, lam});
          parent[find(k)] = find(pos.at(B));
        }
      }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) roots += find(i) == i;
  return roots;
}

}  // namespace

TEST_CASE("enumerate_um counts") {
  CHECK(enumerate_um(Ring::parse("GF(2)"), 1, 2).size() == 3);
  CHECK(enumerate_um(Ring::parse("Z/4"), 1, 2).size() == 12);
  CHECK(enumerate_um(Ring::parse("GF(3)"), 1, 2).size() == 8);
  // |GL_2(GF(2))| = 6 and 2 x 3 full-rank matrices over GF(2): (8-1)(8-2) = 42.
  CHECK(enumerate_um(Ring::parse("GF(2)"), 2, 2).size() == 6);
  CHECK(enumerate_um(Ring::parse("GF(2)"), 2, 3).size() == 42);
  const auto um = enumerate_um(Ring::parse("Z/6"), 1, 2);
  CHECK(um.size() == 24);
  CHECK(std::is_sorted(um.begin(), um.end(), [](const auto& a, const auto& b) { return a.data() < b.data(); }));
  CHECK(code_of([] { enumerate_um(Ring::integers(), 1, 2); }) == ErrorCode::NotFinite);
  CHECK(code_of([] { enumerate_um(Ring::parse("Z/11"), 1, 6); }) == ErrorCode::CapExceeded);
  CHECK(code_of([] { enumerate_um(Ring::parse("Z/4"), 1, 2, 15); }) == ErrorCode::CapExceeded);
  CHECK(enumerate_um(Ring::parse("Z/4"), 1, 2, 16).size() == 12);
}

TEST_CASE("orbit tables") {
  for (const char* d : {"GF(2)", "Z/4", "GF(3)"}) {
    const auto t = enumerate_orbits(Ring::parse(d), 1, 2);
    CHECK(t.orbit_count() == 1);
  }
  const auto t = enumerate_orbits(Ring::parse("GF(2)"), 1, 2);
  CHECK(t.canon(row_matrix({E(1), E(1)})) == row_matrix({E(0), E(1)}));
  CHECK_FALSE(t.orbit_of(row_matrix({E(0), E(0)})));
}

TEST_CASE("orbit tables partition and are invariant under generators") {
  struct Case {
    const char* ring;
    std::size_t m, n;
  };
  for (auto [d, m, n] : std::vector<Case>{{"GF(2)", 1, 3}, {"Z/4", 1, 3}, {"Z/6", 1, 2}, {"GF(2)", 2, 3},
                                          {"GF(3)", 2, 2}, {"Z/4", 2, 2}, {"(GF(2), GF(2))", 1, 2}}) {
    const Ring ring = Ring::parse(d);
    const auto table = enumerate_orbits(ring, m, n);
    const auto all = enumerate_um(ring, m, n);
    CHECK(table.all_rows() == all);
    CHECK(table.orbit_count() == union_find_orbits(ring, all));
    const auto elems = enumerate_elements(ring);
    for (const auto& A : all) {
      const auto& c = table.canon(A);
      CHECK(!(A.data() < c.data()));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          for (const auto& lam : elems) {
            ElementMatrix B = A;
            apply_op(ring, B, {Side::Right, i, j, lam});
            CHECK(table.canon(B) == c);
          }
        }
    }
  }
  // Square invertible matrices split by determinant class: E_2(GF(3)) = SL_2.
  CHECK(enumerate_orbits(Ring::parse("GF(3)"), 2, 2).orbit_count() == 2);
}

TEST_CASE("harvest MS2 over Z/4") {
  const auto table = enumerate_orbits(Ring::parse("Z/4"), 1, 2);
  const Labeling L = orbit_labeling(table);
  const auto ms2 = harvest_relations(L, RelationKind::MS2);
  bool seen = false;
  for (const auto& inst : ms2) {
    CHECK(relation_holds(L, inst));
    if (inst.params == std::vector<Element>{E(1), E(3)} && L.tails[inst.tail_index] == std::vector<Element>{E(2)}) {
      seen = true;
      CHECK(inst.vector == ints({1}));
    }
  }
  CHECK(seen);
}

TEST_CASE("harvest hypotheses re-verify") {
  for (const char* d : {"GF(2)", "GF(3)", "Z/4", "Z/6"}) {
    const Labeling L = orbit_labeling(enumerate_orbits(Ring::parse(d), 1, 2));
    for (auto k : {RelationKind::MS2, RelationKind::MS3, RelationKind::MS4, RelationKind::MS5, RelationKind::MS6,
                   RelationKind::MS7}) {
      for (const auto& inst : harvest_relations(L, k)) {
        CHECK(relation_holds(L, inst));
        CHECK(inst.vector.size() == L.generator_count);
        if (k == RelationKind::MS3) CHECK(L.ring.add(inst.params[0], inst.params[1]) == L.ring.one());
        if (k == RelationKind::MS5)
          CHECK(congruent(L.ring, L.ring.mul(inst.params[0], L.ring.add(L.ring.one(), inst.params[1])),
                          inst.params[1], L.tails[inst.tail_index]));
        if (k == RelationKind::MS7) CHECK(inst.exponent >= 2);
      }
    }
  }
  const Ring F2 = Ring::parse("GF(2)");
  const Labeling L = orbit_labeling(enumerate_orbits(F2, 1, 2));
  RelationInstance ms3{RelationKind::MS3, 1, {E(0), E(1)}, 0, {}};
  REQUIRE(L.tails[1] == std::vector<Element>{E(1)});
  ms3.vector = ints({1});
  CHECK(relation_holds(L, ms3));
  // MS6 with x and -x in one orbit gives the zero vector.
  for (const auto& inst : harvest_relations(L, RelationKind::MS6)) CHECK(inst.vector == ints({0}));
}

TEST_CASE("harvest sampling is seeded") {
  const Labeling L = congruence_labeling(Ring::parse("Z/20"), {{E(10)}});
  HarvestOptions opts;
  opts.samples = 25;
  opts.seed = 4;
  const auto a = harvest_relations(L, RelationKind::MS2, opts);
  const auto b = harvest_relations(L, RelationKind::MS2, opts);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].vector == b[i].vector);
}

TEST_CASE("universal_group") {
  const Labeling L = orbit_labeling(enumerate_orbits(Ring::parse("Z/6"), 1, 2));
  CHECK(universal_group(make_presentation(L, {RelationKind::MS2})).invariant_factors.empty());

  const auto g = universal_group({{"g1", "g2"}, {ints({2, 0}), ints({0, 3})}});
  CHECK(g.invariant_factors == ints({6}));
  CHECK(g.elementary_divisors == ints({2, 3}));

  const auto free = universal_group({{"g1", "g2"}, {}});
  CHECK(free.invariant_factors == ints({0, 0}));
  CHECK(free.elementary_divisors == ints({0, 0}));

  const auto mixed = universal_group({{"a", "b", "c"}, {ints({4, 0, 0}), ints({0, 6, 0})}});
  CHECK(mixed.invariant_factors == ints({2, 12, 0}));
  CHECK(mixed.elementary_divisors == ints({2, 3, 4, 0}));
}

TEST_CASE("universal_group ignores row order and redundant relations") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 60; ++k) {
    const std::size_t gens = 1 + rng() % 4, rels = rng() % 5;
    Presentation p;
    for (std::size_t i = 0; i < gens; ++i) p.generators.push_back("g" + std::to_string(i));
    for (std::size_t r = 0; r < rels; ++r) {
      IntVector v;
      for (std::size_t i = 0; i < gens; ++i) v.push_back(static_cast<long>(rng() % 13) - 6);
      p.relations.push_back(v);
    }
    const auto base = universal_group(p);
    Presentation shuffled = p;
    for (std::size_t i = shuffled.relations.size(); i > 1; --i)
      std::swap(shuffled.relations[i - 1], shuffled.relations[rng() % i]);
    CHECK(universal_group(shuffled).invariant_factors == base.invariant_factors);
    if (!p.relations.empty()) {
      IntVector combo(gens, 0);
      for (const auto& r : p.relations) {
        const long c = static_cast<long>(rng() % 7) - 3;
        for (std::size_t i = 0; i < gens; ++i) combo[i] += c * r[i];
      }
      Presentation extended = p;
      extended.relations.push_back(combo);
      CHECK(universal_group(extended).invariant_factors == base.invariant_factors);
    }
  }
}

TEST_CASE("MS3 and MS5 generate the same lattice modulo MS4") {
  for (const char* d : {"GF(2)", "GF(3)", "Z/4", "Z/6", "Z/9", "(GF(2), GF(2))"}) {
    const Labeling L = orbit_labeling(enumerate_orbits(Ring::parse(d), 1, 2));
    const auto rep = check_equivalence_ms3_ms5(L);
    CHECK(rep.passed());
    CHECK(rep.violations.empty());
  }
  for (long m : {5L, 8L, 12L, 15L, 16L, 21L}) {
    const Ring R = Ring::residue(m);
    for (long a = 0; a < m; ++a) {
      const auto rep = check_equivalence_ms3_ms5(congruence_labeling(R, {{R.from_integer(a)}}));
      CHECK(rep.passed());
    }
  }
  const Ring P = Ring::parse("GF(3)");
  CHECK(check_equivalence_ms3_ms5(congruence_labeling(P, {{E(0)}, {E(1)}})).passed());
}

TEST_CASE("withholding MS4 is detected") {
  const Ring R = Ring::residue(5);
  const Labeling L = congruence_labeling(R, {{E(0)}});
  CHECK(L.generator_count == 4);
  const auto rep = check_equivalence_ms3_ms5(L, true);
  CHECK_FALSE(rep.passed());
  REQUIRE_FALSE(rep.violations.empty());
  const auto full = check_equivalence_ms3_ms5(L);
  std::vector<IntVector> lattice;
  for (auto k : {RelationKind::MS3})
    for (const auto& inst : harvest_relations(L, k)) lattice.push_back(inst.vector);
  for (const auto& v : rep.violations) {
    CHECK(relation_holds(L, v.instance));
    if (v.kind == RelationKind::MS5) CHECK_FALSE(lattice_contains(lattice_basis(lattice, 4), v.instance.vector));
  }
  CHECK(full.passed());
}

TEST_CASE("chain verifier examples") {
  const Ring Z = Ring::integers();
  const auto a = verify_chain_ms3_to_ms5(Z, {E(4)}, E(2), E(2));
  CHECK(a.passed());
  CHECK(a.steps[1].claim == "r = q(1-r)");
  const auto b = verify_chain_ms5_to_ms3(Z, {E(5)}, E(-2), E(3), E(2));
  CHECK(b.passed());
  const Ring R = Ring::parse("Z/7");
  CHECK(verify_chain_ms3_to_ms5(R, {E(1)}, E(3), E(5)).passed());
  CHECK(verify_chain_ms5_to_ms3(R, {E(1), E(0)}, E(4), E(4), E(6)).passed());
  CHECK(code_of([&] { verify_chain_ms3_to_ms5(Z, {E(4)}, E(1), E(1)); }) == ErrorCode::HypothesisViolated);
  CHECK(code_of([&] { verify_chain_ms5_to_ms3(Z, {E(5)}, E(1), E(1), E(1)); }) == ErrorCode::HypothesisViolated);
  CHECK(code_of([&] { verify_chain_ms5_to_ms3(Z, {E(5)}, E(-2), E(3), E(3)); }) == ErrorCode::HypothesisViolated);
}

TEST_CASE("chain sampling over residue rings and Z") {
  for (long m = 4; m <= 36; ++m) {
    const auto s = sample_chains(Ring::residue(m), 1 + m % 2, 200, static_cast<std::uint64_t>(m));
    CHECK(s.ms3_to_ms5.instances == 200);
    CHECK(s.ms5_to_ms3.instances == 200);
    CHECK(s.passed());
  }
  const auto z = sample_chains(Ring::integers(), 1, 1000, 3);
  CHECK(z.ms3_to_ms5.instances == 1000);
  CHECK(z.ms5_to_ms3.instances == 1000);
  CHECK(z.passed());
  const auto p = sample_chains(Ring::parse("GF(3)[x]"), 2, 300, 9);
  CHECK(p.passed());
}
