#include "sparkcx/quasi.hpp"

namespace sparkcx {

SparkQuasiIso validate_quasi_iso(SparkPtr small, SparkPtr big, ChainMap psi_map,
                                 ChainMap f_inc) {
  if (psi_map.src().get() != small->I.get() || psi_map.dst().get() != big->I.get())
    throw input_error("quasi-iso: psi_map must map I_small -> I_big");
  if (f_inc.src().get() != small->F.get() || f_inc.dst().get() != big->F.get())
    throw input_error("quasi-iso: f_inc must map F_small -> F_big");
  if (small->E.get() != big->E.get())
    throw input_error("quasi-iso: the E complexes must be shared");

  // iota_big = f_inc o iota_small
  for (int k = small->E->kmin(); k <= small->E->kmax(); ++k) {
    RatMat lhs = big->iota.at(k);
    RatMat rhs = f_inc.at(k) * small->iota.at(k);
    if (!(lhs - rhs).is_zero())
      throw spark_error("quasi-iso: iota squares do not commute at degree " +
                        std::to_string(k));
  }
  // f_inc o psi_small = psi_big o psi_map
  for (int k = small->I->kmin(); k <= small->I->kmax(); ++k) {
    RatMat lhs = f_inc.at(k) * small->psi.at(k);
    RatMat rhs = big->psi.at(k) * psi_map.at(k);
    if (!(lhs - rhs).is_zero())
      throw spark_error("quasi-iso: psi squares do not commute at degree " +
                        std::to_string(k));
  }

  SparkQuasiIso q;
  q.small = std::move(small);
  q.big = std::move(big);
  q.psi_map = std::move(psi_map);
  q.f_inc = std::move(f_inc);

  int lo = std::min(q.small->I->kmin(), q.big->I->kmin());
  int hi = std::max(q.small->I->kmax(), q.big->I->kmax()) + 1;
  for (int k = lo; k <= hi; ++k) {
    InducedMap im = induced_map_zz(q.small->hI(k), q.big->hI(k), q.psi_map.at(k));
    if (!im.isomorphism) {
      // cokernel witness for the error report
      IntMat m = im.matrix.to_int();
      const ZCohomology& hd = q.big->hI(k);
      std::vector<long> idx;
      for (long i = 0; i < hd.coords(); ++i)
        if (hd.orders[i] != 0) idx.push_back(i);
      IntMat rel(hd.coords(), (long)idx.size());
      for (size_t j = 0; j < idx.size(); ++j) rel.at(idx[j], (long)j) = hd.orders[idx[j]];
      GroupDescriptor coker = quotient_descriptor(hd.coords(), hcat(m, rel));
      throw spark_error("quasi-iso: psi_* not an isomorphism at degree " +
                        std::to_string(k) +
                        (im.injective ? "" : " (not injective)") +
                        (im.surjective ? "" : " (cokernel " + coker.to_string() + ")"));
    }
    q.psi_induced.emplace(k, std::move(im));
  }

  q.f_identity = true;
  for (int k = q.small->F->kmin(); k <= q.big->F->kmax() && q.f_identity; ++k) {
    RatMat fk = q.f_inc.at(k);
    if (fk.rows() != fk.cols() || !(fk - RatMat::identity(fk.rows())).is_zero())
      q.f_identity = false;
  }
  if (!q.f_identity) {
    for (int k = q.small->kmin(); k <= q.small->kmax() + 1; ++k)
      q.lift_solve.emplace(k, std::make_shared<RatSolver>(
                                  hcat(q.f_inc.at(k), q.big->F->diff(k - 1))));
  }
  return q;
}

Spark push(const SparkQuasiIso& q, const Spark& s) {
  if (s.owner.get() != q.small.get()) throw input_error("push: spark not over the small model");
  RatVec a = q.f_inc.apply(s.k, s.a);
  RatVec rr = q.psi_map.apply(s.k + 1, to_rat(s.r));
  IntVec r(rr.size());
  for (size_t i = 0; i < rr.size(); ++i) {
    if (rr[i].get_den() != 1) throw invariant_error("push: psi_map not integral");
    r[i] = rr[i].get_num();
  }
  Spark out = make_spark(q.big, s.k, std::move(a), std::move(r));
  if (out.e != s.e) throw invariant_error("push: delta1 not preserved");
  return out;
}

EquivalenceWitness push_witness(const SparkQuasiIso& q, const EquivalenceWitness& w, int k) {
  EquivalenceWitness out;
  out.b = q.f_inc.apply(k - 1, w.b);
  RatVec sr = q.psi_map.apply(k, to_rat(w.s));
  out.s.resize(sr.size());
  for (size_t i = 0; i < sr.size(); ++i) out.s[i] = sr[i].get_num();
  return out;
}

LiftResult lift(const SparkQuasiIso& q, const Spark& t) {
  if (t.owner.get() != q.big.get()) throw input_error("lift: spark not over the big model");
  const SparkPtr& S = q.small;
  const SparkPtr& B = q.big;
  int k = t.k;

  // 1) r in Z^{k+1}(I_small) with psi_*[r] = [rbar]
  const ZCohomology& hi_b = B->hI(k + 1);
  const ZCohomology& hi_s = S->hI(k + 1);
  IntVec target = hi_b.class_coords(t.r);
  const InducedMap& im = q.psi_induced.at(k + 1);
  IntMat m = im.matrix.to_int();
  std::vector<long> idx;
  for (long i = 0; i < hi_b.coords(); ++i)
    if (hi_b.orders[i] != 0) idx.push_back(i);
  IntMat rel(hi_b.coords(), (long)idx.size());
  for (size_t j = 0; j < idx.size(); ++j) rel.at(idx[j], (long)j) = hi_b.orders[idx[j]];
  auto coeff = solve_modulo(m, rel, target);
  if (!coeff) throw invariant_error("lift: psi_* surjectivity solve failed");
  IntVec r = int_zeros(S->I->rank(k + 1));
  for (long i = 0; i < (long)coeff->size(); ++i) {
    if ((*coeff)[i] == 0) continue;
    IntVec rep = hi_s.generator_rep(i);
    for (size_t u = 0; u < r.size(); ++u) r[u] += (*coeff)[i] * rep[u];
  }

  // 2) sbar with d sbar = psi_map(r) - rbar
  RatVec pr = q.psi_map.apply(k + 1, to_rat(r));
  IntVec prz(pr.size());
  for (size_t i = 0; i < pr.size(); ++i) prz[i] = pr[i].get_num();
  IntVec rhs = sub(prz, t.r);
  auto sbar = B->idiff_solver(k).solve(rhs);
  if (!sbar) throw invariant_error("lift: d sbar solve failed");

  // 3) x = abar - psibar(sbar); solve j(a) + d(bbar) = x
  RatVec x = sub(t.a, B->apply_psi(k, *sbar));
  RatVec a, bbar;
  if (q.f_identity) {
    a = x;
    bbar = rat_zeros(B->F->rank(k - 1));
  } else {
    auto sol = q.lift_solve.at(k)->solve(x);
    if (!sol) throw invariant_error("lift: correction into the small F failed");
    a.assign(sol->begin(), sol->begin() + q.f_inc.at(k).cols());
    bbar.assign(sol->begin() + q.f_inc.at(k).cols(), sol->end());
  }

  LiftResult out;
  out.small = make_spark(S, k, a, r);
  out.big_witness.b = scale(Rat(-1), bbar);
  out.big_witness.s = neg(*sbar);
  Spark pushed = push(q, out.small);
  if (!verify_witness(pushed, t, out.big_witness))
    throw invariant_error("lift: equivalence witness failed verification");
  return out;
}

}  // namespace sparkcx
