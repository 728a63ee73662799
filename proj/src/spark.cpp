#include "sparkcx/spark.hpp"

#include <sstream>

namespace sparkcx {

// ---------------------------------------------------------------------------
// analysis accessors

namespace {

template <class M>
const typename M::mapped_type& fetch(const M& m, int k, const char* what) {
  auto it = m.find(k);
  if (it == m.end()) throw invariant_error(std::string("analysis missing at degree: ") + what);
  return it->second;
}

}  // namespace

const QCohomology& SparkComplex::hF(int k) const { return fetch(an->hF, k, "hF"); }
const QCohomology& SparkComplex::hE(int k) const { return fetch(an->hE, k, "hE"); }
const ZCohomology& SparkComplex::hI(int k) const { return fetch(an->hI, k, "hI"); }
const RatMat& SparkComplex::iota_star(int k) const { return fetch(an->iota_star, k, "iota*"); }
const RatMat& SparkComplex::iota_star_inv(int k) const {
  return fetch(an->iota_star_inv, k, "iota*inv");
}
const RatMat& SparkComplex::psi_star(int k) const { return fetch(an->psi_star, k, "psi*"); }
const RatSolver& SparkComplex::iota_solver(int k) const {
  return *fetch(an->iota_solve, k, "iota solver");
}
const RatSolver& SparkComplex::fdiff_solver(int k) const {
  return *fetch(an->fdiff_solve, k, "F-diff solver");
}
const IntSolver& SparkComplex::idiff_solver(int k) const {
  return *fetch(an->idiff_solve, k, "I-diff solver");
}
const MixedSolver& SparkComplex::equiv_solver(int k) const {
  return *fetch(an->equiv_solve, k, "equivalence solver");
}

// ---------------------------------------------------------------------------
// validation

SparkPtr validate_spark_complex(const ChainMap& iota, const ChainMap& psi,
                                bool waive_axiom_i) {
  if (iota.dst().get() != psi.dst().get())
    throw input_error("spark complex: iota and psi must share the same F");
  auto S = std::make_shared<SparkComplex>();
  S->F = iota.dst();
  S->E = iota.src();
  S->I = psi.src();
  S->iota = iota;
  S->psi = psi;
  S->axiom_i_waived = waive_axiom_i;
  if (S->F->coeff() != Coeff::Q || S->E->coeff() != Coeff::Q || S->I->coeff() != Coeff::Z)
    throw input_error("spark complex: F,E over Q and I over Z required");

  int lo = S->kmin() - 1, hi = S->kmax() + 2;

  // axiom (i)
  if (!waive_axiom_i) {
    for (int k = std::max(1, S->F->kmin()); k <= S->F->kmax(); ++k) {
      RatMat a = iota.at(k), b = psi.at(k);
      if (a.cols() == 0 || b.cols() == 0) continue;
      long ra = rank(a), rb = rank(b), rab = rank(hcat(a, b));
      if (rab == ra + rb) continue;
      // common span witness: kernel vector of [a | -b] with psi-part hitting
      // a nonzero vector
      RatMat comb = hcat(a, b);
      for (long j = 0; j < b.cols(); ++j)
        for (long i = 0; i < b.rows(); ++i) comb.at(i, a.cols() + j) = -b.at(i, j);
      RatMat ker = rational_kernel(comb);
      for (long j = 0; j < ker.cols(); ++j) {
        RatVec sv(ker.col(j).begin() + a.cols(), ker.col(j).end());
        RatVec img = b * sv;
        if (all_zero(img)) continue;
        Int scale = 1;
        for (const auto& q : sv) {
          Int l;
          mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
          scale = l;
        }
        AxiomWitness w;
        w.axiom = "i";
        w.degree = k;
        for (const auto& q : sv) {
          Rat x = q * Rat(scale);
          w.integer_witness.push_back(x.get_num());
        }
        w.detail = "psi(s) lies in the span of iota(E) at degree " + std::to_string(k);
        throw spark_error("axiom (i) violated", w);
      }
      throw spark_error("axiom (i) violated (no explicit witness extracted)");
    }
  }

  // axiom (iii): psi injective in degree 0
  {
    IntMat k0 = integer_kernel(psi.at(0).to_int());
    if (k0.cols() != 0) {
      AxiomWitness w;
      w.axiom = "iii";
      w.degree = 0;
      w.integer_witness = k0.col(0);
      w.detail = "nonzero integral cochain with psi = 0 in degree 0";
      throw spark_error("axiom (iii) violated", w);
    }
  }

  // analysis + axiom (ii)
  auto an = std::make_shared<SparkAnalysis>();
  for (int k = lo; k <= hi; ++k) {
    an->hF.emplace(k, q_cohomology(*S->F, k));
    an->hE.emplace(k, q_cohomology(*S->E, k));
    an->hI.emplace(k, z_cohomology(*S->I, k));
  }
  for (int k = lo; k <= hi; ++k) {
    const QCohomology& hf = an->hF.at(k);
    const QCohomology& he = an->hE.at(k);
    const ZCohomology& hi_ = an->hI.at(k);
    RatMat is(hf.dim, he.dim);
    for (long i = 0; i < he.dim; ++i)
      is.set_col(i, hf.class_coords(iota.at(k) * he.reps.col(i)));
    RatMat ps(hf.dim, hi_.coords());
    for (long i = 0; i < hi_.coords(); ++i)
      ps.set_col(i, hf.class_coords(psi.at(k) * to_rat(hi_.generator_rep(i))));
    an->psi_star.emplace(k, std::move(ps));

    if (he.dim != hf.dim || (he.dim > 0 && rank(is) != he.dim)) {
      AxiomWitness w;
      w.axiom = "ii";
      w.degree = k;
      w.detail = "iota_*: H^" + std::to_string(k) + "(E) -> H^" + std::to_string(k) +
                 "(F) is not an isomorphism (dims " + std::to_string(he.dim) + " vs " +
                 std::to_string(hf.dim) + ")";
      throw spark_error("axiom (ii) violated", w);
    }
    RatMat inv(he.dim, he.dim);
    if (he.dim > 0) {
      RatMat aug = hcat(is, RatMat::identity(he.dim));
      auto piv = rref_inplace(aug);
      if ((long)piv.size() != he.dim) throw invariant_error("iota_star not invertible");
      for (long i = 0; i < he.dim; ++i)
        for (long j = 0; j < he.dim; ++j) inv.at(i, j) = aug.at(i, he.dim + j);
    }
    an->iota_star.emplace(k, std::move(is));
    an->iota_star_inv.emplace(k, std::move(inv));
  }
  for (int k = lo; k <= hi; ++k) {
    an->iota_solve.emplace(k, std::make_shared<RatSolver>(iota.at(k)));
    an->fdiff_solve.emplace(k, std::make_shared<RatSolver>(S->F->diff(k)));
    an->idiff_solve.emplace(k, std::make_shared<IntSolver>(S->I->diff_int(k)));
    const IntMat& zk = an->hI.at(k).cocycles;
    RatMat lat(S->F->rank(k), zk.cols());
    for (long j = 0; j < zk.cols(); ++j) lat.set_col(j, psi.at(k) * to_rat(zk.col(j)));
    an->equiv_solve.emplace(k, std::make_shared<MixedSolver>(S->F->diff(k - 1), lat));
  }
  S->an = an;
  return S;
}

// ---------------------------------------------------------------------------
// sparks

Spark make_spark(const SparkPtr& s, int k, RatVec a, IntVec r) {
  if ((long)a.size() != s->F->rank(k) || (long)r.size() != s->I->rank(k + 1))
    throw input_error("make_spark: dimension mismatch");
  if (!all_zero(s->I->diff_int(k + 1) * r)) throw spark_error("not a cycle: dr != 0");
  RatVec w = s->F->diff(k) * a;
  RatVec pr = s->apply_psi(k + 1, r);
  for (size_t i = 0; i < w.size(); ++i) w[i] += pr[i];
  auto e = s->iota_solver(k + 1).solve(w);
  if (!e) {
    std::ostringstream os;
    os << "not a spark: da + psi(r) outside iota(E); residual =";
    for (const auto& q : w) os << " " << to_string(q);
    throw spark_error(os.str());
  }
  RatVec de = s->E->diff(k + 1) * *e;
  if (!all_zero(de)) throw invariant_error("spark: de != 0");
  Spark out;
  out.owner = s;
  out.k = k;
  out.a = std::move(a);
  out.r = std::move(r);
  out.e = *e;
  return out;
}

Spark zero_spark(const SparkPtr& s, int k) {
  return make_spark(s, k, rat_zeros(s->F->rank(k)), int_zeros(s->I->rank(k + 1)));
}

Spark spark_from_data(const SparkPtr& s, int k, const RatVec& e, const IntVec& r) {
  if ((long)e.size() != s->E->rank(k + 1) || (long)r.size() != s->I->rank(k + 1))
    throw input_error("spark_from_data: dimension mismatch");
  if (!all_zero(s->E->diff(k + 1) * e)) throw spark_error("spark_from_data: de != 0");
  if (!all_zero(s->I->diff_int(k + 1) * r)) throw spark_error("spark_from_data: dr != 0");
  RatVec ie = s->apply_iota(k + 1, e);
  RatVec pr = s->apply_psi(k + 1, r);
  RatVec cls_e = s->hF(k + 1).class_coords(ie);
  RatVec cls_r = s->hF(k + 1).class_coords(pr);
  if (cls_e != cls_r) {
    std::ostringstream os;
    os << "classes disagree in H^" << (k + 1) << "(F): [iota e] =";
    for (const auto& q : cls_e) os << " " << to_string(q);
    os << " ; [psi r] =";
    for (const auto& q : cls_r) os << " " << to_string(q);
    throw spark_error(os.str());
  }
  RatVec rhs = sub(ie, pr);
  auto a = s->fdiff_solver(k).solve(rhs);
  if (!a) throw invariant_error("spark_from_data: exact class but unsolvable");
  Spark out;
  out.owner = s;
  out.k = k;
  out.a = *a;
  out.r = r;
  out.e = e;
  return out;
}

RatVec delta1(const Spark& s) { return s.e; }

IntVec delta2(const Spark& s) { return s.owner->hI(s.k + 1).class_coords(s.r); }

Spark add(const Spark& s1, const Spark& s2) {
  if (s1.owner.get() != s2.owner.get() || s1.k != s2.k)
    throw input_error("spark addition: mismatched sparks");
  Spark out = s1;
  out.a = add(s1.a, s2.a);
  out.r = add(s1.r, s2.r);
  out.e = add(s1.e, s2.e);
  return out;
}

Spark negate(const Spark& s) {
  Spark out = s;
  out.a = scale(Rat(-1), s.a);
  out.r = neg(s.r);
  out.e = scale(Rat(-1), s.e);
  return out;
}

// ---------------------------------------------------------------------------
// equivalence

std::optional<EquivalenceWitness> sparks_equivalent(const Spark& s1, const Spark& s2) {
  if (s1.owner.get() != s2.owner.get() || s1.k != s2.k)
    throw input_error("sparks_equivalent: mismatched sparks");
  const SparkPtr& S = s1.owner;
  int k = s1.k;

  // 1) ds = r2 - r1 over Z
  IntVec dr = sub(s2.r, s1.r);
  auto s0 = S->idiff_solver(k).solve(dr);
  if (!s0) return std::nullopt;

  // 2) a1 - a2 - psi(s0) in dF^{k-1} + psi(Z^k(I))
  const IntMat& zk = S->hI(k).cocycles;  // kernel lattice basis of d_I^k
  RatVec target = sub(s1.a, s2.a);
  RatVec ps0 = S->apply_psi(k, *s0);
  target = sub(target, ps0);
  auto mix = S->equiv_solver(k).solve(target);
  if (!mix) return std::nullopt;

  EquivalenceWitness w;
  w.b = mix->x;
  w.s = *s0;
  for (long j = 0; j < zk.cols(); ++j)
    if (mix->y[j] != 0) w.s = add(w.s, [&] {
      IntVec c = zk.col(j);
      for (auto& x : c) x *= mix->y[j];
      return c;
    }());
  if (!verify_witness(s1, s2, w)) throw invariant_error("equivalence witness failed re-check");
  return w;
}

bool equivalent(const Spark& s1, const Spark& s2) {
  return sparks_equivalent(s1, s2).has_value();
}

bool verify_witness(const Spark& s1, const Spark& s2, const EquivalenceWitness& w) {
  const SparkPtr& S = s1.owner;
  int k = s1.k;
  RatVec lhs = sub(s1.a, s2.a);
  RatVec rhs = S->F->diff(k - 1) * w.b;
  RatVec pw = S->apply_psi(k, w.s);
  for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += pw[i];
  if (lhs != rhs) return false;
  IntVec rdiff = sub(s1.r, s2.r);
  IntVec ds = S->I->diff_int(k) * w.s;
  return rdiff == neg(ds);
}

// ---------------------------------------------------------------------------
// Z_I subgroup and membership

bool z_i_membership(const SparkPtr& s, int k, const RatVec& e) {
  if (!all_zero(s->E->diff(k) * e)) throw input_error("z_i_membership: e not closed");
  RatVec w = s->hF(k).class_coords(s->apply_iota(k, e));
  const RatMat& ps = s->psi_star(k);
  return lattice_membership(ps, w).has_value();
}

ZISubgroup zi_subgroup(const SparkPtr& s, int k) {
  ZISubgroup out;
  out.degree = k;
  const QCohomology& he = s->hE(k);
  out.closed_basis = he.cocycles;
  out.exact_dim = he.im_rank;
  const ZCohomology& hi = s->hI(k);
  std::vector<long> free_idx;
  for (long i = 0; i < hi.coords(); ++i)
    if (hi.orders[i] == 0) free_idx.push_back(i);
  out.lattice_reps = RatMat(s->E->rank(k), (long)free_idx.size());
  for (size_t t = 0; t < free_idx.size(); ++t) {
    RatVec w = s->psi_star(k).col(free_idx[t]);
    RatVec ec = s->iota_star_inv(k) * w;
    RatVec rep = s->hE(k).reps * ec;
    out.lattice_reps.set_col((long)t, rep);
    IntVec wit = int_zeros(hi.coords());
    wit[free_idx[t]] = 1;
    out.witnesses.push_back(wit);
  }
  return out;
}

std::pair<RatVec, RatVec> absorb_into_e(const SparkPtr& s, int k, const RatVec& f) {
  // df = iota(e') (solve), [e'] = 0 so e' = d e0; g = f - iota(e0) is closed;
  // match [g] through iota_* and peel off the coboundary.
  RatVec df = s->F->diff(k) * f;
  auto e1 = s->iota_solver(k + 1).solve(df);
  if (!e1) throw input_error("absorb_into_e: df not in iota(E)");
  auto e0 = solve_rational(s->E->diff(k), *e1);
  if (!e0) throw invariant_error("absorb_into_e: [e'] != 0 against axiom (ii)");
  RatVec g = sub(f, s->apply_iota(k, e0->x0));
  RatVec w = s->hF(k).class_coords(g);
  RatVec zc = s->iota_star_inv(k) * w;
  RatVec z = s->hE(k).reps * zc;
  RatVec resid = sub(g, s->apply_iota(k, z));
  auto b = s->fdiff_solver(k - 1).solve(resid);
  if (!b) throw invariant_error("absorb_into_e: residual class nonzero");
  RatVec e = add(e0->x0, z);
  RatVec bcorr = scale(Rat(-1), *b);
  // check f + d bcorr = iota(e)
  RatVec lhs = add(f, s->F->diff(k - 1) * bcorr);
  if (lhs != s->apply_iota(k, e)) throw invariant_error("absorb_into_e: identity failed");
  return {e, bcorr};
}

Spark flatten_to_e_form(const Spark& sp) {
  const SparkPtr& S = sp.owner;
  int k = sp.k;
  IntVec cls = delta2(sp);
  if (!all_zero(cls)) throw input_error("flatten_to_e_form: delta2 != 0");
  IntVec minus_r = neg(sp.r);
  auto ssol = S->idiff_solver(k).solve(minus_r);
  if (!ssol) throw invariant_error("flatten_to_e_form: trivial class but ds = -r unsolvable");
  RatVec a1 = sub(sp.a, S->apply_psi(k, *ssol));
  auto [e, b] = absorb_into_e(S, k, a1);
  Spark out = make_spark(S, k, S->apply_iota(k, e), int_zeros(S->I->rank(k + 1)));
  if (!equivalent(out, sp)) throw invariant_error("flatten_to_e_form: result not equivalent");
  return out;
}

// ---------------------------------------------------------------------------
// evaluation

Rat evaluate(const Spark& s, const IntVec& z) {
  const SparkPtr& S = s.owner;
  if ((long)z.size() != S->F->rank(s.k)) throw input_error("evaluate: chain size mismatch");
  // boundary = transpose of d^{k-1}
  RatMat bd = S->F->diff(s.k - 1).transposed();
  if (!all_zero(bd * to_rat(z))) throw input_error("evaluate: z is not a cycle");
  Rat sum = 0;
  for (size_t i = 0; i < z.size(); ++i)
    if (z[i] != 0) sum += s.a[i] * Rat(z[i]);
  return mod_one(sum);
}

// ---------------------------------------------------------------------------
// sampling

Spark sample_spark(const SparkPtr& s, int k, SplitMix64& rng) {
  const ZCohomology& hi = s->hI(k + 1);
  IntVec r = int_zeros(s->I->rank(k + 1));
  for (long j = 0; j < hi.cocycles.cols(); ++j) {
    Int c = rng.small_int(2);
    if (c == 0) continue;
    IntVec col = hi.cocycles.col(j);
    for (size_t i = 0; i < r.size(); ++i) r[i] += c * col[i];
  }
  // e with [iota e] = [psi r], plus a random exact shift
  RatVec w = s->hF(k + 1).class_coords(s->apply_psi(k + 1, r));
  RatVec ec = s->iota_star_inv(k + 1) * w;
  RatVec e = s->hE(k + 1).reps * ec;
  RatVec e0(s->E->rank(k));
  for (auto& q : e0) q = rng.small_rat();
  e = add(e, s->E->diff(k) * e0);

  RatVec rhs = sub(s->apply_iota(k + 1, e), s->apply_psi(k + 1, r));
  auto a = s->fdiff_solver(k).solve(rhs);
  if (!a) throw invariant_error("sample_spark: solve failed");
  RatVec av = *a;
  // randomize within the fiber: closed directions and coboundaries
  const RatMat& zf = s->hF(k).cocycles;
  for (long j = 0; j < zf.cols(); ++j) {
    Rat c = rng.small_rat(1, 2);
    if (c == 0) continue;
    for (long i = 0; i < zf.rows(); ++i) av[i] += c * zf.at(i, j);
  }
  RatVec f0(s->F->rank(k - 1));
  for (auto& q : f0) q = rng.small_rat(1, 2);
  av = add(av, s->F->diff(k - 1) * f0);
  return make_spark(s, k, av, r);
}

}  // namespace sparkcx
