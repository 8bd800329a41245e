#include "mennicke/mn.hpp"

#include <string>

#include "mennicke/error.hpp"

namespace mennicke {

namespace {

[[noreturn]] void oracle_failure(const std::string& what) { throw Error(ErrorCode::OracleFailure, what); }

int effective_sdim(const Ring& ring, std::optional<int> override_value) {
  if (override_value) return *override_value;
  if (auto d = ring.declared_sdim()) return *d;
  throw Error(ErrorCode::RangeConditionViolated, "sdim of " + ring.descriptor() + " is unknown; pass a bound");
}

void simulate(const Ring& ring, std::vector<Element>& row, const ElementaryOp& op) {
  row[op.j] = ring.add(row[op.j], ring.mul(op.lambda, row[op.i]));
}

void push(const Ring& ring, Transcript& t, std::vector<Element>& row, std::size_t i, std::size_t j,
          const Element& lambda) {
  if (ring.is_zero(lambda)) return;
  t.push_back({Side::Right, i, j, lambda});
  simulate(ring, row, t.back());
}

struct RowOps {
  Transcript eps, delta;
};

/// The three-step normalization of a pair of rows, as ops on each row.
RowOps row_ops(const Ring& ring, std::vector<Element> v, std::vector<Element> w) {
  const std::size_t n = v.size();
  RowOps out;

  std::vector<Element> rest;
  for (std::size_t i = 1; i < n; ++i) rest.push_back(v[i]);
  for (std::size_t i = 1; i < n; ++i) rest.push_back(w[i]);
  std::vector<Element> t;
  try {
    t = stable_range_reduce(ring, rest, ring.mul(v[0], w[0]));
  } catch (const Error& e) {
    oracle_failure(std::string("stable range step: ") + e.what());
  }
  const Element v1 = v[0], w1 = w[0];
  for (std::size_t i = 1; i < n; ++i) push(ring, out.eps, v, 0, i, ring.mul(t[i - 1], w1));
  for (std::size_t i = 1; i < n; ++i) push(ring, out.delta, w, 0, i, ring.mul(t[n - 2 + i], v1));

  rest.clear();
  for (std::size_t i = 1; i < n; ++i) rest.push_back(v[i]);
  for (std::size_t i = 1; i < n; ++i) rest.push_back(w[i]);
  auto witness = bezout_witness(ring, rest);
  if (!witness) oracle_failure("shortened row is not unimodular");
  const Element sigma = ring.sub(ring.sub(ring.one(), v[0]), w[0]);
  for (std::size_t i = 1; i < n; ++i) push(ring, out.eps, v, i, 0, ring.mul((*witness)[i - 1], sigma));
  for (std::size_t i = 1; i < n; ++i) push(ring, out.delta, w, i, 0, ring.mul((*witness)[n - 2 + i], sigma));

  for (std::size_t i = 1; i < n; ++i) {
    const Element d = ring.sub(w[i], v[i]);
    push(ring, out.eps, v, 0, i, d);
    push(ring, out.delta, w, 0, i, ring.neg(d));
  }
  return out;
}

struct Work {
  Ring ring;
  ElementMatrix S, T;
  Transcript ls, rs, lt, rt;

  void op(bool on_s, Side side, std::size_t i, std::size_t j, const Element& lambda) {
    if (ring.is_zero(lambda)) return;
    ElementaryOp e{side, i, j, lambda};
    apply_op(ring, on_s ? S : T, e);
    Transcript& t = on_s ? (side == Side::Left ? ls : rs) : (side == Side::Left ? lt : rt);
    t.push_back(std::move(e));
  }
};

void normalize_first_row(Work& W) {
  RowOps ops = row_ops(W.ring, W.S.row(0), W.T.row(0));
  for (const auto& e : ops.eps) W.op(true, Side::Right, e.i, e.j, e.lambda);
  for (const auto& e : ops.delta) W.op(false, Side::Right, e.i, e.j, e.lambda);
}

/// Rows 0..r-1 are already (Y | beta), (I - Y | beta); extends the shape to
/// row r.
void complete_row(Work& W, std::size_t r, const MnConfig& cfg) {
  const Ring& R = W.ring;
  const std::size_t n = W.S.cols();

  // Opposite entries left of the diagonal.
  for (std::size_t i = 0; i < r; ++i) {
    const Element lambda = R.neg(R.add(W.S(r, i), W.T(r, i)));
    W.op(true, Side::Left, r, i, lambda);
    W.op(false, Side::Left, r, i, lambda);
  }

  std::vector<Element> firsts;
  for (std::size_t k = 0; k < r; ++k) firsts.push_back(W.S(r, k));
  const PrincipalGenerator pg = principal_generator(R, firsts);

  const std::size_t q = n - r - 1;
  std::vector<Element> targets;
  for (std::size_t j = r + 1; j < n; ++j) targets.push_back(W.S(r, j));
  for (std::size_t j = r + 1; j < n; ++j) targets.push_back(W.T(r, j));
  std::vector<HelperGroup> helpers{{W.S(r, r), 0, q}, {W.T(r, r), q, 2 * q}};

  const SubsetPlan plan = subset_unimodularize(R, targets, pg.generator, helpers, cfg);
  for (const auto& mv : plan.moves) {
    const bool on_s = mv.target < q;
    const std::size_t col = r + 1 + mv.target % q;
    switch (mv.kind) {
      case SubsetMove::Kind::Pivot:
        for (std::size_t k = 0; k < r; ++k) {
          const Element lambda = R.mul(mv.coeff, pg.cofactors[k]);
          W.op(on_s, Side::Right, k, col, on_s ? lambda : R.neg(lambda));
        }
        break;
      case SubsetMove::Kind::Helper: W.op(on_s, Side::Right, r, col, mv.coeff); break;
      case SubsetMove::Kind::Perturb: W.op(on_s, Side::Right, col, r, mv.coeff); break;
    }
  }
  for (std::size_t i = 0; i < q; ++i) {
    if (W.S(r, r + 1 + i) != plan.targets[i] || W.T(r, r + 1 + i) != plan.targets[q + i])
      oracle_failure("subset moves did not land on the planned targets");
  }

  // Diagonal entries summing to 1.
  auto witness = bezout_witness(R, plan.targets);
  if (!witness) oracle_failure("targets are not unimodular after the subset step");
  const Element sigma = R.sub(R.sub(R.one(), W.S(r, r)), W.T(r, r));
  for (std::size_t i = 0; i < q; ++i) W.op(true, Side::Right, r + 1 + i, r, R.mul(sigma, (*witness)[i]));
  for (std::size_t i = 0; i < q; ++i) W.op(false, Side::Right, r + 1 + i, r, R.mul(sigma, (*witness)[q + i]));

  // Opposite entries above the diagonal in column r.
  for (std::size_t i = 0; i < r; ++i) {
    const Element lambda = R.neg(R.add(W.S(i, r), W.T(i, r)));
    W.op(true, Side::Right, i, r, lambda);
    W.op(false, Side::Right, i, r, lambda);
  }

  // Equal tails: S col j += X d, T col j -= (I - X) d with d = T col j - S col j.
  std::vector<std::vector<Element>> d(r + 1, std::vector<Element>(n));
  for (std::size_t k = 0; k <= r; ++k)
    for (std::size_t j = r + 1; j < n; ++j) d[k][j] = R.sub(W.T(k, j), W.S(k, j));
  for (std::size_t k = 0; k <= r; ++k)
    for (std::size_t j = r + 1; j < n; ++j) {
      W.op(true, Side::Right, k, j, d[k][j]);
      W.op(false, Side::Right, k, j, R.neg(d[k][j]));
    }
}

void normalize_top(Work& W, std::size_t rows, const MnConfig& cfg) {
  if (rows == 1) {
    normalize_first_row(W);
    return;
  }
  normalize_top(W, rows - 1, cfg);
  complete_row(W, rows - 1, cfg);
}

bool try_pivot(const Ring& ring, std::vector<Element>& vals, const Element& pivot, std::vector<SubsetMove>& moves) {
  if (is_unimodular(ring, vals)) return true;
  std::vector<Element> all = vals;
  all.push_back(pivot);
  if (!is_unimodular(ring, all)) return false;
  std::vector<Element> t;
  try {
    t = stable_range_reduce(ring, vals, pivot);
  } catch (const Error&) {
    return false;
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (ring.is_zero(t[i])) continue;
    moves.push_back({SubsetMove::Kind::Pivot, i, 0, t[i]});
    vals[i] = ring.add(vals[i], ring.mul(t[i], pivot));
  }
  return is_unimodular(ring, vals);
}

bool try_helpers(const Ring& ring, std::vector<Element>& vals, const Element& pivot,
                 const std::vector<Element>& hvals, const std::vector<HelperGroup>& groups,
                 std::vector<SubsetMove>& moves) {
  if (groups.empty()) return false;
  std::vector<std::size_t> group_of(vals.size(), groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k)
    for (std::size_t i = groups[k].first; i < groups[k].last; ++i) group_of[i] = k;
  for (auto k : group_of)
    if (k == groups.size()) return false;

  Element c = ring.one();
  for (const auto& h : hvals) c = ring.mul(c, h);
  std::vector<Element> t;
  try {
    t = shorten_modulo(ring, vals, c, pivot);
  } catch (const Error&) {
    return false;
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (ring.is_zero(t[i])) continue;
    Element coeff = t[i];
    for (std::size_t k = 0; k < hvals.size(); ++k)
      if (k != group_of[i]) coeff = ring.mul(coeff, hvals[k]);
    if (ring.is_zero(coeff)) continue;
    moves.push_back({SubsetMove::Kind::Helper, i, group_of[i], coeff});
    vals[i] = ring.add(vals[i], ring.mul(coeff, hvals[group_of[i]]));
  }
  return try_pivot(ring, vals, pivot, moves);
}

}  // namespace

RowNormalization mn_rows(const UnimodularRow& v, const UnimodularRow& w, std::optional<int> sdim_override) {
  if (v.ring() != w.ring()) throw Error(ErrorCode::DimensionMismatch, "rows over different rings");
  if (v.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "rows of different lengths");
  const Ring& ring = v.ring();
  const int n = static_cast<int>(v.size());
  const int d = effective_sdim(ring, sdim_override);
  if (d > 2 * n - 3)
    throw Error(ErrorCode::RangeConditionViolated,
                "sdim " + std::to_string(d) + " exceeds 2n - 3 = " + std::to_string(2 * n - 3));

  RowOps ops = row_ops(ring, v.entries(), w.entries());
  const UnimodularRow v2 = apply_transcript(v, ops.eps);
  const UnimodularRow w2 = apply_transcript(w, ops.delta);

  RowNormalization out{ring, v2.entries()[0], w2.entries()[0], {}, std::move(ops.eps), std::move(ops.delta)};
  if (ring.add(out.x, out.y) != ring.one()) oracle_failure("leading entries do not sum to 1");
  for (std::size_t i = 1; i < v2.size(); ++i) {
    if (v2.entries()[i] != w2.entries()[i]) oracle_failure("tails differ after equalization");
    out.tail.push_back(v2.entries()[i]);
  }
  return out;
}

PairNormalization mn_matrices(const RightInvertibleMatrix& S, const RightInvertibleMatrix& T, const MnConfig& cfg) {
  if (S.ring() != T.ring()) throw Error(ErrorCode::DimensionMismatch, "matrices over different rings");
  if (S.m() != T.m() || S.n() != T.n()) throw Error(ErrorCode::DimensionMismatch, "matrices of different shapes");
  const std::size_t m = S.m(), n = S.n();
  if (m < 2) throw Error(ErrorCode::DimensionMismatch, "matrix normalization needs m >= 2; use rows for m = 1");
  const Ring& ring = S.ring();
  const int d = effective_sdim(ring, cfg.sdim_override);
  const int bound = 2 * static_cast<int>(n - m) - 1;
  if (d > bound)
    throw Error(ErrorCode::RangeConditionViolated,
                "sdim " + std::to_string(d) + " exceeds 2(n - m) - 1 = " + std::to_string(bound));

  Work W{ring, S.entries(), T.entries(), {}, {}, {}, {}};
  normalize_top(W, m, cfg);

  Transcript all_s = W.ls, all_t = W.lt;
  all_s.insert(all_s.end(), W.rs.begin(), W.rs.end());
  all_t.insert(all_t.end(), W.rt.begin(), W.rt.end());
  const RightInvertibleMatrix S2 = apply_transcript(S, all_s);
  const RightInvertibleMatrix T2 = apply_transcript(T, all_t);
  if (S2.entries() != W.S || T2.entries() != W.T) oracle_failure("replay disagrees with the working copy");

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Element expected = i == j ? ring.one() : ring.zero();
      if (ring.add(W.S(i, j), W.T(i, j)) != expected) oracle_failure("leading blocks do not sum to I");
    }
    for (std::size_t j = m; j < n; ++j)
      if (W.S(i, j) != W.T(i, j)) oracle_failure("trailing blocks differ");
  }
  return {ring, W.S.block(0, 0, m, m), W.S.block(0, m, m, n - m), std::move(W.ls), std::move(W.rs),
          std::move(W.lt), std::move(W.rt)};
}

SubsetPlan subset_unimodularize(const Ring& ring, const std::vector<Element>& targets, const Element& pivot,
                                const std::vector<HelperGroup>& helpers, const MnConfig& cfg) {
  for (const auto& h : helpers)
    if (h.first > h.last || h.last > targets.size())
      throw Error(ErrorCode::IndexOutOfBounds, "helper group range exceeds the targets");

  SubsetPlan plan;
  plan.targets = targets;
  for (const auto& h : helpers) plan.helpers.push_back(h.value);

  auto attempt = [&]() {
    std::vector<Element> vals = plan.targets;
    std::vector<SubsetMove> moves;
    if (try_pivot(ring, vals, pivot, moves)) {
      plan.moves.insert(plan.moves.end(), moves.begin(), moves.end());
      plan.targets = std::move(vals);
      return true;
    }
    vals = plan.targets;
    moves.clear();
    if (try_helpers(ring, vals, pivot, plan.helpers, helpers, moves)) {
      plan.moves.insert(plan.moves.end(), moves.begin(), moves.end());
      plan.targets = std::move(vals);
      return true;
    }
    return false;
  };

  if (attempt()) return plan;

  std::mt19937_64 engine(cfg.rng_seed);
  for (int retry = 1; retry <= cfg.retry_budget; ++retry) {
    plan.retries = retry;
    for (std::size_t k = 0; k < helpers.size(); ++k) {
      const auto& h = helpers[k];
      if (h.first == h.last) continue;
      const std::size_t idx = h.first + engine() % (h.last - h.first);
      const Element lambda = random_element(ring, engine);
      if (ring.is_zero(lambda)) continue;
      // Moving a target can clear a prime that divides every target, the
      // pivot and the helper product; moving a helper only reshuffles it.
      if (engine() % 2 == 0) {
        plan.moves.push_back({SubsetMove::Kind::Helper, idx, k, lambda});
        plan.targets[idx] = ring.add(plan.targets[idx], ring.mul(lambda, plan.helpers[k]));
      } else {
        plan.moves.push_back({SubsetMove::Kind::Perturb, idx, k, lambda});
        plan.helpers[k] = ring.add(plan.helpers[k], ring.mul(lambda, plan.targets[idx]));
      }
    }
    if (attempt()) return plan;
  }
  throw Error(ErrorCode::SubsetUnimodularizationExhausted,
              "no move sequence made the targets unimodular within " + std::to_string(cfg.retry_budget) +
                  " retries");
}

}  // namespace mennicke
