#include "sparkcx/product.hpp"

#include <sstream>

namespace sparkcx {

// ---------------------------------------------------------------------------
// cups

namespace {

template <class Vec>
Vec cup_simplicial_impl(const SimplicialComplex& k, int q1, const Vec& x, int q2,
                        const Vec& y) {
  int q = q1 + q2;
  Vec out(k.count(q));
  if ((long)x.size() != k.count(q1) || (long)y.size() != k.count(q2))
    throw input_error("cup_simplicial: size mismatch");
  for (long t = 0; t < k.count(q); ++t) {
    const auto& s = k.simplex(q, t);
    std::vector<int> front(s.begin(), s.begin() + q1 + 1);
    std::vector<int> back(s.begin() + q1, s.end());
    long fi = k.index_of(q1, front);
    long bi = k.index_of(q2, back);
    if (fi < 0 || bi < 0) throw invariant_error("cup: face missing");
    out[t] = x[fi] * y[bi];
  }
  return out;
}

}  // namespace

RatVec cup_simplicial(const SimplicialComplex& k, int q1, const RatVec& x, int q2,
                      const RatVec& y) {
  return cup_simplicial_impl(k, q1, x, q2, y);
}

IntVec cup_simplicial(const SimplicialComplex& k, int q1, const IntVec& x, int q2,
                      const IntVec& y) {
  return cup_simplicial_impl(k, q1, x, q2, y);
}

namespace {

struct CechEntry {
  long p, q, nerve_id, local;
  Rat value;
};

std::vector<CechEntry> nonzero_entries(const CechModel& m, int k, const RatVec& x) {
  std::vector<CechEntry> out;
  const auto& lay = m.layout();
  if (k < 0 || k >= (int)lay.degrees.size()) return out;
  for (const auto& blk : lay.degrees[k]) {
    for (long a = 0; a < (long)m.cover->intersections[blk.p].size(); ++a) {
      long cnt = m.cover->intersections[blk.p][a].count((int)blk.q);
      long base = blk.offset + m.cq.basis.index((int)blk.p, (int)blk.q, a, 0);
      for (long t = 0; t < cnt; ++t)
        if (x[base + t] != 0) out.push_back({blk.p, blk.q, a, t, x[base + t]});
    }
  }
  return out;
}

bool strictly_increasing(const std::vector<int>& v) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] >= v[i + 1]) return false;
  return true;
}

}  // namespace

RatVec cup_total(const CechModel& m, int k1, const RatVec& x, int k2, const RatVec& y) {
  const auto& lay = m.layout();
  const auto& nerve = m.cover->nerve;
  int n = k1 + k2;
  RatVec out = rat_zeros(m.cq.tot.total->rank(n));
  if (n >= (int)lay.degrees.size()) return out;

  auto xs = nonzero_entries(m, k1, x);
  auto ys = nonzero_entries(m, k2, y);
  for (const auto& ex : xs) {
    const auto& gf = nerve.simplex((int)ex.p, ex.nerve_id);
    const auto& sf = m.K->simplex((int)ex.q,
                                  m.cover->intersections[ex.p][ex.nerve_id].ids[ex.q][ex.local]);
    for (const auto& ey : ys) {
      const auto& gb = nerve.simplex((int)ey.p, ey.nerve_id);
      if (gf.back() != gb.front()) continue;
      const auto& sb = m.K->simplex((int)ey.q,
                                    m.cover->intersections[ey.p][ey.nerve_id].ids[ey.q][ey.local]);
      if (sf.back() != sb.front()) continue;
      std::vector<int> gamma(gf);
      gamma.insert(gamma.end(), gb.begin() + 1, gb.end());
      if (!strictly_increasing(gamma)) continue;
      std::vector<int> sigma(sf);
      sigma.insert(sigma.end(), sb.begin() + 1, sb.end());
      if (!strictly_increasing(sigma)) continue;
      long P = ex.p + ey.p, Q = ex.q + ey.q;
      long bid = nerve.index_of((int)P, gamma);
      if (bid < 0) continue;  // the joint intersection may be empty
      long pid = m.K->index_of((int)Q, sigma);
      if (pid < 0) continue;
      long ls = m.cover->intersections[P][bid].local_index((int)Q, pid);
      if (ls < 0) continue;
      const TotalBlock* dst = lay.block(n, P, Q);
      if (!dst) throw invariant_error("cup_total: missing target block");
      Rat term = ex.value * ey.value;
      if ((ex.p * ey.q) % 2 != 0) term = -term;
      out[dst->offset + m.cq.basis.index((int)P, (int)Q, bid, ls)] += term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// spark product

Spark spark_product(const CechModel& m, const Spark& s1, const Spark& s2) {
  if (s1.owner.get() != m.S.get() || s2.owner.get() != m.S.get())
    throw input_error("spark_product: sparks not over this model");
  int k = s1.k, l = s2.k;
  RatVec ie2 = m.S->apply_iota(l + 1, s2.e);
  RatVec term1 = cup_total(m, k, s1.a, l + 1, ie2);
  RatVec pr1 = m.S->apply_psi(k + 1, s1.r);
  RatVec term2 = cup_total(m, k + 1, pr1, l, s2.a);
  Rat sgn = ((k + 1) % 2 == 0) ? Rat(1) : Rat(-1);
  RatVec a = add(term1, scale(sgn, term2));
  IntVec r = cup_simplicial(m.cover->nerve, k + 1, s1.r, l + 1, s2.r);
  Spark out = make_spark(m.S, k + l + 1, std::move(a), std::move(r));
  RatVec expect_e = cup_simplicial(*m.K, k + 1, s1.e, l + 1, s2.e);
  if (out.e != expect_e)
    throw invariant_error("spark_product: cached curvature mismatch");
  return out;
}

Spark spark_product_alt(const CechModel& m, const Spark& s1, const Spark& s2) {
  int k = s1.k, l = s2.k;
  RatVec pr2 = m.S->apply_psi(l + 1, s2.r);
  RatVec term1 = cup_total(m, k, s1.a, l + 1, pr2);
  RatVec ie1 = m.S->apply_iota(k + 1, s1.e);
  RatVec term2 = cup_total(m, k + 1, ie1, l, s2.a);
  Rat sgn = ((k + 1) % 2 == 0) ? Rat(1) : Rat(-1);
  RatVec a = add(term1, scale(sgn, term2));
  IntVec r = cup_simplicial(m.cover->nerve, k + 1, s1.r, l + 1, s2.r);
  return make_spark(m.S, k + l + 1, std::move(a), std::move(r));
}

Spark unit_spark(const CechModel& m) {
  IntVec ones(m.cover->nerve.count(0), Int(1));
  return make_spark(m.S, -1, RatVec{}, std::move(ones));
}

// ---------------------------------------------------------------------------
// ring reports

std::string DeltaRingReport::to_string() const {
  std::ostringstream os;
  os << "delta1 " << (delta1_multiplicative ? "ok" : "FAIL") << ", delta2 "
     << (delta2_multiplicative ? "ok" : "FAIL") << ", sign ";
  if (plus_sign && minus_sign)
    os << "+/-";
  else if (plus_sign)
    os << "+";
  else if (minus_sign)
    os << "-";
  else
    os << "none";
  return os.str();
}

DeltaRingReport delta_ring_check(const CechModel& m, const Spark& s1, const Spark& s2) {
  DeltaRingReport rep;
  Spark p12 = spark_product(m, s1, s2);
  Spark p21 = spark_product(m, s2, s1);

  rep.delta1_multiplicative =
      (delta1(p12) == cup_simplicial(*m.K, s1.k + 1, s1.e, s2.k + 1, s2.e));

  // delta2 multiplicativity in the H^*(I) presentation
  int deg = s1.k + s2.k + 2;
  const ZCohomology& h = m.S->hI(deg);
  IntVec lhs = delta2(p12);
  IntVec rhs_rep = cup_simplicial(m.cover->nerve, s1.k + 1, s1.r, s2.k + 1, s2.r);
  rep.delta2_multiplicative = (lhs == h.class_coords(rhs_rep));

  rep.plus_sign = equivalent(p12, p21);
  rep.minus_sign = equivalent(p12, negate(p21));
  return rep;
}

TruncationPushReport truncation_push_check(const LevelModel& lm, const Spark& s1,
                                           const Spark& s2, SplitMix64& rng,
                                           long kernel_samples) {
  TruncationPushReport rep;
  const CechModel& m = *lm.full;

  // well-definedness of *_p: perturb s1 by an equivalence witness and compare
  // the projected products
  Spark prod = spark_product(m, s1, s2);
  Spark perturbed = [&] {
    RatVec b(m.S->F->rank(s1.k - 1));
    for (auto& q : b) q = rng.small_rat(1, 2);
    IntVec sv(m.S->I->rank(s1.k));
    for (auto& x : sv) x = rng.small_int(1);
    RatVec a = add(s1.a, m.S->F->diff(s1.k - 1) * b);
    a = add(a, m.S->apply_psi(s1.k, sv));
    IntVec r = sub(s1.r, m.S->I->diff_int(s1.k) * sv);
    return make_spark(m.S, s1.k, a, r);
  }();
  Spark prod2 = spark_product(m, perturbed, s2);
  rep.projected_products_equivalent = equivalent(lm.project(prod), lm.project(prod2));

  // kernel ideal: an explicit representative killed by the projection stays
  // killed after multiplying with sampled sparks
  rep.kernel_ideal = true;
  rep.kernel_samples = kernel_samples;
  // representative concentrated in simplicial rows >= level: iota of a
  // global cochain of degree >= level (row q = degree)
  int kk = lm.level;  // a in (0, level): killed by the projection
  if (kk <= m.S->E->kmax()) {
    RatVec alpha(m.S->E->rank(kk));
    for (auto& q : alpha) q = rng.small_rat(1, 2);
    bool nonzero = false;
    for (const auto& q : alpha) nonzero = nonzero || q != 0;
    if (!nonzero && !alpha.empty()) alpha[0] = 1;
    Spark ker_rep = make_spark(m.S, kk, m.S->apply_iota(kk, alpha),
                               int_zeros(m.S->I->rank(kk + 1)));
    if (!equivalent(lm.project(ker_rep), zero_spark(lm.S, kk))) {
      rep.kernel_ideal = false;
    } else {
      for (long t = 0; t < kernel_samples && rep.kernel_ideal; ++t) {
        int deg2 = (t % 2 == 0) ? 0 : -1;
        Spark other = (deg2 == -1) ? unit_spark(m) : sample_spark(m.S, 0, rng);
        Spark kp = spark_product(m, ker_rep, other);
        if (!equivalent(lm.project(kp), zero_spark(lm.S, kp.k))) rep.kernel_ideal = false;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// certificates

bool cup_compatibility_certificates(const CechModel& m, int max_total_degree) {
  const auto& K = *m.K;
  const auto& N = m.cover->nerve;
  // iota(e) . iota(e') = iota(e . e')
  for (int q1 = 0; q1 <= K.dim(); ++q1)
    for (int q2 = 0; q1 + q2 <= std::min(max_total_degree, K.dim()); ++q2) {
      for (long i = 0; i < K.count(q1); ++i)
        for (long j = 0; j < K.count(q2); ++j) {
          RatVec e1 = rat_zeros(K.count(q1));
          e1[i] = 1;
          RatVec e2 = rat_zeros(K.count(q2));
          e2[j] = 1;
          RatVec lhs = cup_total(m, q1, m.S->apply_iota(q1, e1), q2, m.S->apply_iota(q2, e2));
          RatVec rhs = m.S->apply_iota(q1 + q2, cup_simplicial(K, q1, e1, q2, e2));
          if (lhs != rhs) return false;
        }
    }
  // psi(r) . psi(r') = psi(r . r')
  for (int p1 = 0; p1 <= N.dim(); ++p1)
    for (int p2 = 0; p1 + p2 <= std::min(max_total_degree, N.dim()); ++p2) {
      for (long i = 0; i < N.count(p1); ++i)
        for (long j = 0; j < N.count(p2); ++j) {
          IntVec r1 = int_zeros(N.count(p1));
          r1[i] = 1;
          IntVec r2 = int_zeros(N.count(p2));
          r2[j] = 1;
          RatVec lhs = cup_total(m, p1, m.S->apply_psi(p1, r1), p2, m.S->apply_psi(p2, r2));
          RatVec rhs = m.S->apply_psi(p1 + p2, cup_simplicial(N, p1, r1, p2, r2));
          if (lhs != rhs) return false;
        }
    }
  return true;
}

bool cup_leibniz_on_bases(const CechModel& m, int max_total_degree) {
  const auto& total = *m.cq.tot.total;
  for (int k1 = 0; k1 <= max_total_degree; ++k1)
    for (int k2 = 0; k1 + k2 <= max_total_degree; ++k2) {
      for (long i = 0; i < total.rank(k1); ++i)
        for (long j = 0; j < total.rank(k2); ++j) {
          RatVec x = rat_zeros(total.rank(k1));
          x[i] = 1;
          RatVec y = rat_zeros(total.rank(k2));
          y[j] = 1;
          RatVec lhs = total.diff(k1 + k2) * cup_total(m, k1, x, k2, y);
          RatVec rhs = cup_total(m, k1 + 1, total.diff(k1) * x, k2, y);
          RatVec second = cup_total(m, k1, x, k2 + 1, total.diff(k2) * y);
          Rat sgn = (k1 % 2 == 0) ? Rat(1) : Rat(-1);
          rhs = add(rhs, scale(sgn, second));
          if (lhs != rhs) return false;
        }
    }
  return true;
}

}  // namespace sparkcx
