#include "sparkcx/cech.hpp"

namespace sparkcx {

CechModelPtr cech_spark_complex(std::shared_ptr<const SimplicialComplex> k,
                                std::shared_ptr<const CoverData> cover) {
  if (!cover->good()) throw cover_error("cover not good: " + cover->describe_bad());
  auto m = std::make_shared<CechModel>();
  m->K = k;
  m->cover = cover;
  m->cq = cech_double_complex(k, cover, Coeff::Q);

  // I = C^*(N; Z) with psi through the bottom-row constants
  auto nerveZ = cover->nerve.cochain_complex(Coeff::Z);
  std::map<int, RatMat> psi_blocks;
  for (int deg = 0; deg <= nerveZ->kmax(); ++deg) psi_blocks.emplace(deg, m->cq.nerve_edge.at(deg));
  ChainMap psi(nerveZ, m->cq.tot.total, std::move(psi_blocks));
  m->S = validate_spark_complex(m->cq.global_edge, psi);
  return m;
}

// ---------------------------------------------------------------------------
// hyperspark

HypersparkModel hyperspark_complex(const CechModelPtr& base) {
  HypersparkModel out;
  out.base = base;
  out.cz = cech_double_complex(base->K, base->cover, Coeff::Z);

  // psi_bar: the integral total complex includes componentwise
  auto iz = out.cz.tot.total;
  std::map<int, RatMat> inc;
  for (int deg = 0; deg <= iz->kmax(); ++deg) {
    long n = iz->rank(deg);
    if (base->cq.tot.total->rank(deg) != n)
      throw invariant_error("hyperspark: bidegree layouts disagree");
    inc.emplace(deg, RatMat::identity(n));
  }
  ChainMap psi_bar(iz, base->cq.tot.total, std::move(inc));
  out.S = validate_spark_complex(base->cq.global_edge, psi_bar, /*waive_axiom_i=*/true);

  // the edge inclusion C^*(N;Z) -> total-Z
  std::map<int, RatMat> edge;
  for (int deg = 0; deg <= base->S->I->kmax(); ++deg) {
    RatMat m(iz->rank(deg), base->S->I->rank(deg));
    const TotalBlock* blk = out.cz.tot.layout.block(deg, deg, 0);
    if (blk) {
      for (long a = 0; a < base->cover->nerve.count(deg); ++a) {
        const Subcomplex& s = base->cover->intersections[deg][a];
        for (long ls = 0; ls < s.count(0); ++ls)
          m.at(blk->offset + out.cz.basis.index(deg, 0, a, ls), a) = 1;
      }
    }
    edge.emplace(deg, std::move(m));
  }
  ChainMap psi_map(base->S->I, iz, std::move(edge));
  ChainMap f_inc = ChainMap::identity(base->cq.tot.total);
  out.qiso = validate_quasi_iso(base->S, out.S, std::move(psi_map), std::move(f_inc));
  return out;
}

// ---------------------------------------------------------------------------
// level-p truncation

LevelModel level_p_spark_complex(const CechModelPtr& full, int level) {
  if (level < 1) throw input_error("level_p_spark_complex: level must be >= 1");
  LevelModel lm;
  lm.full = full;
  lm.level = level;
  lm.trunc = truncate(full->cq.dc, level, full->cq.tot);

  // truncated E: degrees < level, top differential cut to zero
  const CochainComplex& e = *full->S->E;
  int etop = std::min(e.kmax(), level - 1);
  std::vector<long> ranks;
  std::vector<RatMat> diffs;
  for (int q = 0; q <= etop; ++q) {
    ranks.push_back(e.rank(q));
    diffs.push_back(q < etop ? e.diff(q) : RatMat(0, e.rank(q)));
  }
  lm.Ep = std::make_shared<CochainComplex>(Coeff::Q, 0, std::move(ranks), std::move(diffs));

  std::map<int, RatMat> iota_blocks;
  for (int q = 0; q <= etop; ++q)
    iota_blocks.emplace(q, lm.trunc.projection.at(q) * full->cq.global_edge.at(q));
  ChainMap iota_p(lm.Ep, lm.trunc.tot.total, std::move(iota_blocks));

  std::map<int, RatMat> psi_blocks;
  for (int deg = 0; deg <= full->S->I->kmax(); ++deg)
    psi_blocks.emplace(deg, lm.trunc.projection.at(deg) * full->S->psi.at(deg));
  ChainMap psi_p(full->S->I, lm.trunc.tot.total, std::move(psi_blocks));

  lm.S = validate_spark_complex(iota_p, psi_p);
  return lm;
}

Spark LevelModel::project(const Spark& s) const {
  if (s.owner.get() != full->S.get()) throw input_error("project: spark not over full model");
  return make_spark(S, s.k, trunc.projection.apply(s.k, s.a), s.r);
}

RatVec LevelModel::include(int k, const RatVec& v) const {
  RatVec out = rat_zeros(full->cq.tot.total->rank(k));
  if (k < 0 || k >= (int)trunc.tot.layout.degrees.size()) return out;
  for (const auto& blk : trunc.tot.layout.degrees[k]) {
    const TotalBlock* dst = full->cq.tot.layout.block(k, blk.p, blk.q);
    if (!dst) throw invariant_error("include: missing full block");
    for (long i = 0; i < blk.rank; ++i) out[dst->offset + i] = v[blk.offset + i];
  }
  return out;
}

Spark LevelModel::preimage(const Spark& t) const {
  if (t.owner.get() != S.get()) throw input_error("preimage: spark not over level model");
  const SparkPtr& Sf = full->S;
  int k = t.k;

  // full spark with the same r
  RatVec w = Sf->hF(k + 1).class_coords(Sf->apply_psi(k + 1, t.r));
  RatVec ec = Sf->iota_star_inv(k + 1) * w;
  RatVec e0 = Sf->hE(k + 1).reps * ec;
  RatVec rhs = sub(Sf->apply_iota(k + 1, e0), Sf->apply_psi(k + 1, t.r));
  auto a0 = Sf->fdiff_solver(k).solve(rhs);
  if (!a0) throw invariant_error("level preimage: base solve failed");

  // match the truncated a exactly: delta = t.a - project(a0) absorbs into
  // iota_p(E_p) modulo a level coboundary
  RatVec delta = sub(t.a, trunc.projection.apply(k, *a0));
  auto [eps, beta] = absorb_into_e(S, k, delta);

  RatVec a = *a0;
  // lift iota_p(eps): eps lives in E^k when k < level, else it is empty
  if ((long)eps.size() > 0) {
    RatVec eps_full(full->S->E->rank(k), Rat(0));
    for (size_t i = 0; i < eps.size(); ++i) eps_full[i] = eps[i];
    a = add(a, Sf->apply_iota(k, eps_full));
  }
  RatVec beta_full = include(k - 1, beta);
  a = sub(a, Sf->F->diff(k - 1) * beta_full);

  Spark out = make_spark(Sf, k, a, t.r);
  Spark back = project(out);
  if (back.a != t.a || back.r != t.r)
    throw invariant_error("level preimage: projection mismatch");
  return out;
}

std::optional<std::pair<Spark, EquivalenceWitness>> truncation_kernel_representative(
    const LevelModel& lm, const Spark& s) {
  Spark p = lm.project(s);
  auto w = sparks_equivalent(p, zero_spark(lm.S, s.k));
  if (!w) return std::nullopt;
  // pull the witness back: a' = a - d(include b) - psi(s_w) has project 0
  const SparkPtr& Sf = lm.full->S;
  RatVec bfull = lm.include(s.k - 1, w->b);
  RatVec a1 = sub(s.a, Sf->F->diff(s.k - 1) * bfull);
  a1 = sub(a1, Sf->apply_psi(s.k, w->s));
  IntVec r1 = add(s.r, Sf->I->diff_int(s.k) * w->s);
  if (!all_zero(r1)) throw invariant_error("kernel representative: r did not cancel");
  Spark rep = make_spark(Sf, s.k, a1, r1);
  if (!all_zero(lm.trunc.projection.apply(s.k, a1)))
    throw invariant_error("kernel representative: projection not zero");
  EquivalenceWitness wit{bfull, w->s};
  if (!verify_witness(s, rep, wit))
    throw invariant_error("kernel representative: witness failed");
  return {{rep, wit}};
}

// ---------------------------------------------------------------------------
// pullback

namespace {

int sort_sign_vec(std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) {
        std::swap(v[i], v[j]);
        sign = -sign;
      }
    }
  return sign;
}

}  // namespace

ModelMap model_pullback(SimplicialMap f, CechModelPtr src_model, CechModelPtr dst_model,
                        std::vector<int> member_image) {
  f.validate();
  ModelMap mm;
  mm.f = f;
  mm.src_model = src_model;
  mm.dst_model = dst_model;
  mm.member_image = member_image;

  const auto& src_cov = *src_model->cover;
  const auto& dst_cov = *dst_model->cover;
  if (member_image.size() != src_cov.members.size())
    throw input_error("pullback: member correspondence has wrong size");

  // f(U'_i) must lie inside U_{rho(i)}
  for (size_t i = 0; i < src_cov.members.size(); ++i) {
    const Subcomplex& u = src_cov.members[i];
    const Subcomplex& v = dst_cov.members[member_image[i]];
    for (int q = 0; q <= u.dim(); ++q)
      for (long id : u.ids[q]) {
        std::vector<int> img;
        for (int vtx : src_model->K->simplex(q, id)) img.push_back(f.vertex_image[vtx]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        long tid = dst_model->K->index_of((int)img.size() - 1, img);
        if (tid < 0 || !v.contains((int)img.size() - 1, tid))
          throw input_error("pullback: cover incompatibility at member " + std::to_string(i));
      }
  }

  // total pullback, blockwise
  const auto& slay = src_model->layout();
  const auto& dlay = dst_model->layout();
  std::map<int, RatMat> blocks;
  int kmax = dst_model->cq.tot.total->kmax();
  for (int deg = 0; deg <= kmax; ++deg) {
    RatMat m(src_model->cq.tot.total->rank(deg), dst_model->cq.tot.total->rank(deg));
    if (deg < (int)slay.degrees.size()) {
      for (const auto& sblk : slay.degrees[deg]) {
        const TotalBlock* dblk = dlay.block(deg, sblk.p, sblk.q);
        if (!dblk) continue;
        long p = sblk.p, q = sblk.q;
        const auto& nerve_s = src_cov.nerve;
        for (long aid = 0; aid < nerve_s.count((int)p); ++aid) {
          std::vector<int> nimg;
          for (int v : nerve_s.simplex((int)p, aid)) nimg.push_back(member_image[v]);
          int nsign = sort_sign_vec(nimg);
          if (nsign == 0) continue;
          long bid = dst_cov.nerve.index_of((int)p, nimg);
          if (bid < 0) throw invariant_error("pullback: image nerve simplex missing");
          const Subcomplex& si = src_cov.intersections[p][aid];
          const Subcomplex& di = dst_cov.intersections[p][bid];
          for (long ls = 0; ls < si.count((int)q); ++ls) {
            std::vector<int> img;
            for (int v : src_model->K->simplex((int)q, si.ids[q][ls]))
              img.push_back(f.vertex_image[v]);
            int ssign = sort_sign_vec(img);
            if (ssign == 0) continue;
            long pid = dst_model->K->index_of((int)q, img);
            long ld = di.local_index((int)q, pid);
            if (ld < 0) throw invariant_error("pullback: image simplex outside intersection");
            m.at(sblk.offset + src_model->cq.basis.index((int)p, (int)q, aid, ls),
                 dblk->offset + dst_model->cq.basis.index((int)p, (int)q, bid, ld)) =
                nsign * ssign;
          }
        }
      }
    }
    blocks.emplace(deg, std::move(m));
  }
  mm.total_pullback =
      ChainMap(dst_model->cq.tot.total, src_model->cq.tot.total, std::move(blocks));

  // nerve pullback
  {
    auto nerve_map = SimplicialMap{
        std::make_shared<SimplicialComplex>(src_cov.nerve),
        std::make_shared<SimplicialComplex>(dst_cov.nerve), member_image};
    nerve_map.validate();
    std::map<int, RatMat> nb;
    for (int deg = 0; deg <= dst_model->S->I->kmax(); ++deg)
      nb.emplace(deg, nerve_map.cochain_pullback(deg));
    mm.nerve_pullback = ChainMap(dst_model->S->I, src_model->S->I, std::move(nb));
  }

  // global cochain pullback
  {
    std::map<int, RatMat> eb;
    for (int deg = 0; deg <= dst_model->S->E->kmax(); ++deg)
      eb.emplace(deg, f.cochain_pullback(deg));
    mm.e_pullback = ChainMap(dst_model->S->E, src_model->S->E, std::move(eb));
  }

  // edge compatibility
  for (int deg = 0; deg <= dst_model->S->E->kmax(); ++deg) {
    RatMat lhs = mm.total_pullback.at(deg) * dst_model->S->iota.at(deg);
    RatMat rhs = src_model->S->iota.at(deg) * mm.e_pullback.at(deg);
    if (!(lhs - rhs).is_zero()) throw invariant_error("pullback: iota square broken");
  }
  for (int deg = 0; deg <= dst_model->S->I->kmax(); ++deg) {
    RatMat lhs = mm.total_pullback.at(deg) * dst_model->S->psi.at(deg);
    RatMat rhs = src_model->S->psi.at(deg) * mm.nerve_pullback.at(deg);
    if (!(lhs - rhs).is_zero()) throw invariant_error("pullback: psi square broken");
  }
  return mm;
}

ModelMap star_model_pullback(SimplicialMap f, CechModelPtr src_model, CechModelPtr dst_model) {
  std::vector<int> member_image(f.vertex_image.begin(), f.vertex_image.end());
  return model_pullback(std::move(f), std::move(src_model), std::move(dst_model),
                        std::move(member_image));
}

Spark pullback(const ModelMap& m, const Spark& s) {
  if (s.owner.get() != m.dst_model->S.get())
    throw input_error("pullback: spark not over the target model");
  RatVec a = m.total_pullback.apply(s.k, s.a);
  RatVec rr = m.nerve_pullback.apply(s.k + 1, to_rat(s.r));
  IntVec r(rr.size());
  for (size_t i = 0; i < rr.size(); ++i) r[i] = rr[i].get_num();
  return make_spark(m.src_model->S, s.k, std::move(a), std::move(r));
}

// ---------------------------------------------------------------------------
// cycles

IntVec total_cycle(const CechModel& m, int k, const IntVec& z) {
  if ((long)z.size() != m.K->count(k)) throw input_error("total_cycle: wrong chain size");
  // simplicial boundary check
  IntMat bd = m.K->coboundary(k - 1).transposed();
  if (!all_zero(bd * z)) throw input_error("total_cycle: z is not a cycle");

  const auto& lay = m.layout();
  long n = m.cq.tot.total->rank(k);
  IntVec z0 = int_zeros(n);
  const TotalBlock* blk0 = lay.block(k, 0, k);
  if (!blk0) throw input_error("total_cycle: no (0,k) block");
  for (long i = 0; i < (long)z.size(); ++i) {
    if (z[i] == 0) continue;
    // first member containing the simplex
    long member = -1, local = -1;
    for (long a = 0; a < (long)m.cover->members.size(); ++a) {
      long li = m.cover->intersections[0][a].local_index(k, i);
      if (li >= 0) {
        member = a;
        local = li;
        break;
      }
    }
    if (member < 0) throw invariant_error("total_cycle: simplex not covered");
    z0[blk0->offset + m.cq.basis.index(0, (int)k, member, local)] += z[i];
  }

  // correct with columns from blocks p >= 1 so the total boundary vanishes
  IntMat dT = m.cq.tot.total->diff(k - 1).to_int().transposed();  // chains_k -> chains_{k-1}
  IntVec rhs = neg(dT * z0);
  std::vector<long> cols;
  if (k < (int)lay.degrees.size())
    for (const auto& b : lay.degrees[k])
      if (b.p >= 1)
        for (long i = 0; i < b.rank; ++i) cols.push_back(b.offset + i);
  IntMat sub(dT.rows(), (long)cols.size());
  for (size_t j = 0; j < cols.size(); ++j) sub.set_col((long)j, dT.col(cols[j]));
  auto sol = solve_integer(sub, rhs);
  if (!sol) throw invariant_error("total_cycle: no integral correction");
  IntVec out = z0;
  for (size_t j = 0; j < cols.size(); ++j) out[cols[j]] += sol->x0[j];
  return out;
}

}  // namespace sparkcx
