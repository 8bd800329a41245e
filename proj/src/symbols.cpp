#include "mennicke/symbols.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "mennicke/error.hpp"
#include "mennicke/umod.hpp"

namespace mennicke {

namespace {

std::uint64_t checked_total(const Ring& ring, std::size_t digits, std::uint64_t cap) {
  if (!ring.is_finite()) throw Error(ErrorCode::NotFinite, ring.descriptor() + " is not finite");
  Integer total;
  mpz_pow_ui(total.get_mpz_t(), ring.cardinality().get_mpz_t(), digits);
  if (total > Integer(std::to_string(cap)))
    throw Error(ErrorCode::CapExceeded,
                "|R|^(mn) = " + total.get_str() + " exceeds the cap " + std::to_string(cap));
  return std::stoull(total.get_str());
}

Element determinant_over(const Ring& ring, const ElementMatrix& A) {
  const std::size_t k = A.rows();
  if (k == 1) return A(0, 0);
  Element det = ring.zero();
  for (std::size_t c = 0; c < k; ++c) {
    ElementMatrix minor(k - 1, k - 1);
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t j = 0, jj = 0; j < k; ++j)
        if (j != c) minor(i - 1, jj++) = A(i, j);
    Element term = ring.mul(A(0, c), determinant_over(ring, minor));
    det = c % 2 == 0 ? ring.add(det, term) : ring.sub(det, term);
  }
  return det;
}

/// A is right-invertible iff its maximal minors generate the unit ideal.
bool right_invertible(const Ring& ring, const ElementMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  if (m == 1) return is_unimodular(ring, A.data());
  std::vector<Element> minors;
  std::vector<std::size_t> cols(m);
  for (std::size_t i = 0; i < m; ++i) cols[i] = i;
  while (true) {
    ElementMatrix sub(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sub(i, j) = A(i, cols[j]);
    minors.push_back(determinant_over(ring, sub));
    std::size_t p = m;
    while (p > 0 && cols[p - 1] == n - m + p - 1) --p;
    if (p == 0) break;
    ++cols[p - 1];
    for (std::size_t i = p; i < m; ++i) cols[i] = cols[i - 1] + 1;
  }
  return is_unimodular(ring, minors);
}

ElementMatrix decode(const std::vector<Element>& elems, std::uint64_t code, std::size_t m, std::size_t n) {
  const std::uint64_t q = elems.size();
  std::vector<Element> data(m * n);
  for (std::size_t p = m * n; p-- > 0;) {
    data[p] = elems[code % q];
    code /= q;
  }
  return ElementMatrix(m, n, std::move(data));
}

std::string format_row(const Ring& ring, const ElementMatrix& A) {
  std::string s = "(";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) s += ",";
      s += ring.format(A(i, j));
    }
  }
  return s + ")";
}

}  // namespace

std::vector<ElementMatrix> enumerate_um(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t cap) {
  if (m < 1 || m > n) throw Error(ErrorCode::DimensionMismatch, "need 1 <= m <= n");
  const std::uint64_t total = checked_total(ring, m * n, cap);
  const auto elems = enumerate_elements(ring);
  std::vector<ElementMatrix> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    ElementMatrix A = decode(elems, code, m, n);
    if (right_invertible(ring, A)) out.push_back(std::move(A));
  }
  return out;
}

OrbitTable::OrbitTable(Ring ring, std::size_t m, std::size_t n, std::uint64_t cap)
    : ring_(std::move(ring)), m_(m), n_(n) {
  if (m < 1 || m > n) throw Error(ErrorCode::DimensionMismatch, "need 1 <= m <= n");
  const std::uint64_t total = checked_total(ring_, m * n, cap);
  elements_ = enumerate_elements(ring_);
  const std::size_t q = elements_.size();

  std::vector<std::uint32_t> add(q * q), mul(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      add[a * q + b] = static_cast<std::uint32_t>(
          std::lower_bound(elements_.begin(), elements_.end(), ring_.add(elements_[a], elements_[b])) -
          elements_.begin());
      mul[a * q + b] = static_cast<std::uint32_t>(
          std::lower_bound(elements_.begin(), elements_.end(), ring_.mul(elements_[a], elements_[b])) -
          elements_.begin());
    }

  for (std::uint64_t c = 0; c < total; ++c) {
    ElementMatrix A = decode(elements_, c, m, n);
    if (!right_invertible(ring_, A)) continue;
    rows_.push_back(std::move(A));
    codes_.push_back(c);
  }

  const std::size_t digits = m * n;
  auto to_digits = [&](std::uint64_t c) {
    std::vector<std::uint32_t> d(digits);
    for (std::size_t p = digits; p-- > 0;) {
      d[p] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    return d;
  };
  auto to_code = [&](const std::vector<std::uint32_t>& d) {
    std::uint64_t c = 0;
    for (auto x : d) c = c * q + x;
    return c;
  };

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  orbit_.assign(rows_.size(), kUnset);
  for (std::size_t start = 0; start < rows_.size(); ++start) {
    if (orbit_[start] != kUnset) continue;
    const std::size_t id = reps_.size();
    reps_.push_back(start);
    orbit_[start] = id;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const auto cur = to_digits(codes_[queue.front()]);
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          for (std::size_t lam = 1; lam < q; ++lam) {
            auto next = cur;
            for (std::size_t k = 0; k < m; ++k)
              next[k * n + j] = add[next[k * n + j] * q + mul[lam * q + cur[k * n + i]]];
            const auto pos = static_cast<std::size_t>(
                std::lower_bound(codes_.begin(), codes_.end(), to_code(next)) - codes_.begin());
            if (orbit_[pos] == kUnset) {
              orbit_[pos] = id;
              queue.push_back(pos);
            }
          }
        }
    }
  }
}

std::optional<std::uint64_t> OrbitTable::code(const ElementMatrix& A) const {
  if (A.rows() != m_ || A.cols() != n_) return std::nullopt;
  std::uint64_t c = 0;
  for (const auto& e : A.data()) {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
    if (it == elements_.end() || *it != e) return std::nullopt;
    c = c * elements_.size() + static_cast<std::uint64_t>(it - elements_.begin());
  }
  return c;
}

std::optional<std::size_t> OrbitTable::orbit_of(const ElementMatrix& A) const {
  auto c = code(A);
  if (!c) return std::nullopt;
  auto it = std::lower_bound(codes_.begin(), codes_.end(), *c);
  if (it == codes_.end() || *it != *c) return std::nullopt;
  return orbit_[static_cast<std::size_t>(it - codes_.begin())];
}

const ElementMatrix& OrbitTable::canon(const ElementMatrix& A) const {
  auto k = orbit_of(A);
  if (!k) throw Error(ErrorCode::NotRightInvertible, "matrix is not in the table");
  return rows_[reps_[*k]];
}

OrbitTable enumerate_orbits(const Ring& ring, std::size_t m, std::size_t n, std::uint64_t cap) {
  return OrbitTable(ring, m, n, cap);
}

Labeling orbit_labeling(const OrbitTable& table) {
  if (table.m() != 1 || table.n() < 2) throw Error(ErrorCode::DimensionMismatch, "symbols need rows of length >= 2");
  auto shared = std::make_shared<const OrbitTable>(table);
  Labeling L{table.ring(), {}, 0, {}, {}};
  const auto elems = enumerate_elements(L.ring);
  const std::size_t len = table.n() - 1;
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    std::vector<Element> tail;
    for (auto i : idx) tail.push_back(elems[i]);
    L.tails.push_back(std::move(tail));
    std::size_t p = len;
    while (p > 0 && idx[p - 1] + 1 == elems.size()) idx[--p] = 0;
    if (p == 0) break;
    ++idx[p - 1];
  }
  L.generator_count = table.orbit_count();
  for (auto r : table.representatives()) L.generator_names.push_back(format_row(L.ring, table.all_rows()[r]));
  const auto tails = L.tails;
  L.label = [shared, tails](const Element& x, std::size_t t) -> std::optional<std::size_t> {
    std::vector<Element> row{x};
    row.insert(row.end(), tails[t].begin(), tails[t].end());
    const std::size_t len = row.size();
    return shared->orbit_of(ElementMatrix(1, len, std::move(row)));
  };
  return L;
}

Labeling congruence_labeling(const Ring& ring, std::vector<std::vector<Element>> tails) {
  Labeling L{ring, std::move(tails), 0, {}, {}};
  const auto elems = enumerate_elements(ring);
  auto classes = std::make_shared<std::vector<std::map<Element, std::size_t>>>();
  for (const auto& tail : L.tails) {
    std::map<Element, std::size_t> cls;
    for (const auto& x : elems) {
      std::vector<Element> row{x};
      row.insert(row.end(), tail.begin(), tail.end());
      if (!is_unimodular(ring, row)) continue;
      const Element key = reduce_modulo_ideal(ring, x, tail);
      if (cls.count(key)) continue;
      cls.emplace(key, L.generator_count++);
      std::string name = "[" + ring.format(key) + " mod (";
      for (std::size_t i = 0; i < tail.size(); ++i) name += (i ? "," : "") + ring.format(tail[i]);
      L.generator_names.push_back(name + ")]");
    }
    classes->push_back(std::move(cls));
  }
  const auto tails_copy = L.tails;
  L.label = [ring, classes, tails_copy](const Element& x, std::size_t t) -> std::optional<std::size_t> {
    const auto& tail = tails_copy[t];
    std::vector<Element> row{x};
    row.insert(row.end(), tail.begin(), tail.end());
    if (!is_unimodular(ring, row)) return std::nullopt;
    auto it = (*classes)[t].find(reduce_modulo_ideal(ring, x, tail));
    if (it == (*classes)[t].end()) return std::nullopt;
    return it->second;
  };
  return L;
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::MS2: return "ms2";
    case RelationKind::MS3: return "ms3";
    case RelationKind::MS4: return "ms4";
    case RelationKind::MS5: return "ms5";
    case RelationKind::MS6: return "ms6";
    case RelationKind::MS7: return "ms7";
  }
  return "?";
}

RelationKind parse_relation_kind(std::string_view s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (auto k : {RelationKind::MS2, RelationKind::MS3, RelationKind::MS4, RelationKind::MS5, RelationKind::MS6,
                 RelationKind::MS7})
    if (to_string(k) == lower) return k;
  throw Error(ErrorCode::MalformedInput, "unknown relation '" + std::string(s) + "'");
}

namespace {

/// Builds the vector of an instance, or nothing when its hypothesis fails
/// or a participating row is not unimodular.
std::optional<IntVector> relation_vector(const Labeling& L, RelationKind kind, std::size_t t,
                                         const std::vector<Element>& p, unsigned exponent) {
  const Ring& R = L.ring;
  IntVector v(L.generator_count, 0);
  auto term = [&](const Element& x, long coeff) {
    auto g = L.label(x, t);
    if (!g) return false;
    v[*g] += coeff;
    return true;
  };
  switch (kind) {
    case RelationKind::MS2:
      if (!(term(p[0], 1) && term(p[1], 1) && term(R.mul(p[0], p[1]), -1))) return std::nullopt;
      break;
    case RelationKind::MS3:
      if (R.add(p[0], p[1]) != R.one()) return std::nullopt;
      if (!(term(p[0], 1) && term(p[1], 1) && term(R.mul(p[0], p[1]), -1))) return std::nullopt;
      break;
    case RelationKind::MS4: {
      const Element f2 = R.mul(p[0], p[0]);
      if (!(term(f2, 1) && term(p[1], 1) && term(R.mul(f2, p[1]), -1))) return std::nullopt;
      break;
    }
    case RelationKind::MS5: {
      const Element one_q = R.add(R.one(), p[1]);
      if (!congruent(R, R.mul(p[0], one_q), p[1], L.tails[t])) return std::nullopt;
      if (!(term(p[0], 1) && term(one_q, 1) && term(p[1], -1))) return std::nullopt;
      break;
    }
    case RelationKind::MS6:
      if (!(term(p[0], 1) && term(R.neg(p[0]), -1))) return std::nullopt;
      break;
    case RelationKind::MS7:
      if (exponent < 2) return std::nullopt;
      if (!(term(p[0], static_cast<long>(exponent)) && term(R.pow(p[0], exponent), -1))) return std::nullopt;
      break;
  }
  return v;
}

}  // namespace

std::vector<RelationInstance> harvest_relations(const Labeling& L, RelationKind kind, const HarvestOptions& opts) {
  const auto elems = enumerate_elements(L.ring);
  std::vector<RelationInstance> out;
  auto consider = [&](std::size_t t, std::vector<Element> p, unsigned e) {
    if (auto v = relation_vector(L, kind, t, p, e)) out.push_back({kind, t, std::move(p), e, std::move(*v)});
  };
  for (std::size_t t = 0; t < L.tails.size(); ++t) {
    switch (kind) {
      case RelationKind::MS2:
      case RelationKind::MS4:
      case RelationKind::MS5:
        for (const auto& a : elems)
          for (const auto& b : elems) consider(t, {a, b}, 0);
        break;
      case RelationKind::MS3:
        for (const auto& x : elems) consider(t, {x, L.ring.sub(L.ring.one(), x)}, 0);
        break;
      case RelationKind::MS6:
        for (const auto& x : elems) consider(t, {x}, 0);
        break;
      case RelationKind::MS7:
        for (unsigned e = opts.min_exponent; e <= opts.max_exponent; ++e)
          for (const auto& x : elems) consider(t, {x}, e);
        break;
    }
  }
  if (opts.samples > 0 && opts.samples < out.size()) {
    std::mt19937_64 engine(opts.seed);
    for (std::size_t i = 0; i < opts.samples; ++i) {
      const std::size_t j = i + engine() % (out.size() - i);
      std::swap(out[i], out[j]);
    }
    out.resize(opts.samples);
  }
  return out;
}

bool relation_holds(const Labeling& L, const RelationInstance& inst) {
  auto v = relation_vector(L, inst.kind, inst.tail_index, inst.params, inst.exponent);
  return v && *v == inst.vector;
}

Presentation make_presentation(const Labeling& L, const std::vector<RelationKind>& kinds,
                               const HarvestOptions& opts) {
  Presentation p{L.generator_names, {}};
  std::set<IntVector> seen;
  for (auto k : kinds)
    for (auto& inst : harvest_relations(L, k, opts))
      if (seen.insert(inst.vector).second) p.relations.push_back(std::move(inst.vector));
  return p;
}

GroupInvariants universal_group(const Presentation& pres) {
  const std::size_t gens = pres.generators.size();
  for (const auto& r : pres.relations)
    if (r.size() != gens) throw Error(ErrorCode::DimensionMismatch, "relation length differs from generator count");
  GroupInvariants out;
  const auto basis = lattice_basis(pres.relations, gens);
  std::size_t rank = 0;
  if (!basis.empty()) {
    IntMatrix A(basis.size(), gens);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < gens; ++j) A(i, j) = basis[i][j];
    const auto snf = smith_normal_form(A);
    for (std::size_t i = 0; i < std::min(A.rows(), A.cols()); ++i) {
      const Integer& d = snf.D(i, i);
      if (d == 0) continue;
      ++rank;
      if (d != 1) out.invariant_factors.push_back(d);
    }
  }
  const std::size_t free = gens - rank;
  for (std::size_t i = 0; i < free; ++i) out.invariant_factors.push_back(0);

  const Ring Z = Ring::integers();
  for (const auto& d : out.invariant_factors) {
    if (d == 0) continue;
    for (const auto& p : factor_pivot(Z, d)) {
      Integer pk = 1, rest = d;
      while (rest % p.integer() == 0) {
        rest /= p.integer();
        pk *= p.integer();
      }
      out.elementary_divisors.push_back(pk);
    }
  }
  std::sort(out.elementary_divisors.begin(), out.elementary_divisors.end());
  for (std::size_t i = 0; i < free; ++i) out.elementary_divisors.push_back(0);
  return out;
}

namespace {

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::vector<IntVector> distinct_vectors(const std::vector<RelationInstance>& a,
                                        const std::vector<RelationInstance>& b) {
  std::set<IntVector> seen;
  std::vector<IntVector> out;
  for (const auto* list : {&a, &b})
    for (const auto& inst : *list)
      if (!is_zero_vector(inst.vector) && seen.insert(inst.vector).second) out.push_back(inst.vector);
  return out;
}

bool check_inside(const std::vector<IntVector>& basis, const std::vector<RelationInstance>& probes, RelationKind kind,
                  std::vector<Violation>& violations) {
  bool ok = true;
  std::set<IntVector> checked;
  for (const auto& inst : probes) {
    if (!checked.insert(inst.vector).second) continue;
    if (!lattice_contains(basis, inst.vector)) {
      ok = false;
      violations.push_back({kind, inst});
    }
  }
  return ok;
}

}  // namespace

EquivalenceReport check_equivalence_ms3_ms5(const Labeling& L, bool withhold_ms4) {
  const auto ms3 = harvest_relations(L, RelationKind::MS3);
  const auto ms5 = harvest_relations(L, RelationKind::MS5);
  const auto ms4 = withhold_ms4 ? std::vector<RelationInstance>{} : harvest_relations(L, RelationKind::MS4);
  EquivalenceReport rep;
  rep.ms3_count = ms3.size();
  rep.ms4_count = ms4.size();
  rep.ms5_count = ms5.size();
  const std::size_t dim = L.generator_count;
  const auto from_ms3 = lattice_basis(distinct_vectors(ms3, ms4), dim);
  rep.ms5_in_ms3_ms4 = check_inside(from_ms3, ms5, RelationKind::MS5, rep.violations);
  const auto from_ms5 = lattice_basis(distinct_vectors(ms5, ms4), dim);
  rep.ms3_in_ms5_ms4 = check_inside(from_ms5, ms3, RelationKind::MS3, rep.violations);
  return rep;
}

bool ChainReport::passed() const {
  return std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) { return s.passed; });
}

ChainReport verify_chain_ms3_to_ms5(const Ring& R, const std::vector<Element>& tail, const Element& r,
                                    const Element& q) {
  const Element one_q = R.add(R.one(), q);
  const Element one_r = R.sub(R.one(), r);
  if (!congruent(R, R.mul(r, one_q), q, tail))
    throw Error(ErrorCode::HypothesisViolated, "r(1+q) is not congruent to q");
  const Element sq = R.mul(one_q, one_q);
  auto step = [&](std::string claim, const Element& a, const Element& b) {
    return ChainStep{std::move(claim), congruent(R, a, b, tail)};
  };
  ChainReport rep;
  rep.steps.push_back(step("q = r(1+q)", q, R.mul(r, one_q)));
  rep.steps.push_back(step("r = q(1-r)", r, R.mul(q, one_r)));
  rep.steps.push_back(step("r(1+q) = q(1-r)(1+q)", R.mul(r, one_q), R.mul(R.mul(q, one_r), one_q)));
  rep.steps.push_back(
      step("q(1-r)(1+q) = r(1-r)(1+q)^2", R.mul(R.mul(q, one_r), one_q), R.mul(R.mul(r, one_r), sq)));
  rep.steps.push_back(step("q = r(1-r)(1+q)^2", q, R.mul(R.mul(r, one_r), sq)));
  rep.steps.push_back(step("(1-r)(1+q) = 1", R.mul(one_r, one_q), R.one()));
  rep.steps.push_back(step("(1-r)(1+q)^2 = 1+q", R.mul(one_r, sq), one_q));
  return rep;
}

ChainReport verify_chain_ms5_to_ms3(const Ring& R, const std::vector<Element>& tail, const Element& x,
                                    const Element& y, const Element& v) {
  if (R.add(x, y) != R.one()) throw Error(ErrorCode::HypothesisViolated, "x + y is not 1");
  if (!congruent(R, R.mul(v, y), R.one(), tail))
    throw Error(ErrorCode::HypothesisViolated, "vy is not congruent to 1");
  const Element v1 = R.sub(v, R.one());
  const Element v2xy = R.mul(R.mul(R.mul(v, v), x), y);
  auto step = [&](std::string claim, const Element& a, const Element& b) {
    return ChainStep{std::move(claim), congruent(R, a, b, tail)};
  };
  ChainReport rep;
  rep.steps.push_back(step("vx = v-1", R.mul(v, x), v1));
  rep.steps.push_back(step("v-1 = (v-1)vy", v1, R.mul(R.mul(v1, v), y)));
  rep.steps.push_back(step("(v-1)vy = v^2xy", R.mul(R.mul(v1, v), y), v2xy));
  rep.steps.push_back(step("v-1 = v^2xy", v1, v2xy));
  rep.steps.push_back(step("v^2y = v", R.mul(R.mul(v, v), y), v));
  return rep;
}

namespace {

void record(ChainTally& tally, const ChainReport& rep, const std::string& where) {
  ++tally.instances;
  if (rep.passed()) return;
  ++tally.failures;
  if (!tally.first_failure.empty()) return;
  for (const auto& s : rep.steps)
    if (!s.passed) {
      tally.first_failure = where + ": " + s.claim;
      break;
    }
}

std::string describe(const Ring& ring, const std::vector<Element>& tail, std::initializer_list<Element> params) {
  std::string s = "tail (";
  for (std::size_t i = 0; i < tail.size(); ++i) s += (i ? "," : "") + ring.format(tail[i]);
  s += ") params";
  for (const auto& p : params) s += " " + ring.format(p);
  return s;
}

}  // namespace

ChainSampling sample_chains(const Ring& ring, std::size_t tail_length, std::size_t count, std::uint64_t seed) {
  if (tail_length == 0) throw Error(ErrorCode::DimensionMismatch, "tails have length at least 1");
  std::mt19937_64 engine(seed);
  auto draw_tail = [&] {
    std::vector<Element> tail;
    for (std::size_t i = 0; i < tail_length; ++i) tail.push_back(random_element(ring, engine));
    return tail;
  };
  // Hypotheses fail often for some draws; the cap keeps a pathological ring
  // from spinning forever.
  const std::size_t max_draws = 1000 * count + 1000;

  ChainSampling out;
  for (std::size_t draws = 0; out.ms3_to_ms5.instances < count && draws < max_draws; ++draws) {
    const auto tail = draw_tail();
    const Element r = random_element(ring, engine);
    const Element q = random_element(ring, engine);
    if (!congruent(ring, ring.mul(r, ring.add(ring.one(), q)), q, tail)) continue;
    record(out.ms3_to_ms5, verify_chain_ms3_to_ms5(ring, tail, r, q), describe(ring, tail, {r, q}));
  }
  for (std::size_t draws = 0; out.ms5_to_ms3.instances < count && draws < max_draws; ++draws) {
    const auto tail = draw_tail();
    const Element x = random_element(ring, engine);
    const Element y = ring.sub(ring.one(), x);
    std::vector<Element> row{y};
    row.insert(row.end(), tail.begin(), tail.end());
    auto w = bezout_witness(ring, row);
    if (!w) continue;
    const Element v = (*w)[0];
    record(out.ms5_to_ms3, verify_chain_ms5_to_ms3(ring, tail, x, y, v), describe(ring, tail, {x, y, v}));
  }
  return out;
}

}  // namespace mennicke
