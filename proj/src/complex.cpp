#include "sparkcx/complex.hpp"

#include <algorithm>

namespace sparkcx {

// ---------------------------------------------------------------------------
// CochainComplex

CochainComplex::CochainComplex(Coeff coeff, int kmin, std::vector<long> ranks,
                               std::vector<RatMat> diffs)
    : coeff_(coeff), kmin_(kmin), ranks_(std::move(ranks)), d_(std::move(diffs)) {
  if (d_.size() != ranks_.size())
    throw input_error("complex: need one differential per degree");
  for (size_t i = 0; i < ranks_.size(); ++i) {
    long next = (i + 1 < ranks_.size()) ? ranks_[i + 1] : 0;
    if (d_[i].rows() != next || d_[i].cols() != ranks_[i])
      throw input_error("complex: differential shape mismatch at degree " +
                        std::to_string(kmin_ + (int)i));
    if (coeff_ == Coeff::Z && !d_[i].is_integral())
      throw input_error("complex: Z-complex with non-integer differential");
  }
  for (size_t i = 0; i + 1 < d_.size(); ++i) {
    if (!(d_[i + 1] * d_[i]).is_zero())
      throw invariant_error("complex: d o d != 0 at degree " +
                            std::to_string(kmin_ + (int)i));
  }
}

CochainComplex CochainComplex::zero(Coeff c) {
  return CochainComplex(c, 0, {0}, {RatMat(0, 0)});
}

long CochainComplex::rank(int k) const {
  if (!in_range(k)) return 0;
  return ranks_[k - kmin_];
}

RatMat CochainComplex::diff(int k) const {
  if (!in_range(k)) return RatMat(rank(k + 1), rank(k));
  return d_[k - kmin_];
}

IntMat CochainComplex::diff_int(int k) const { return diff(k).to_int(); }

// ---------------------------------------------------------------------------
// ChainMap

ChainMap::ChainMap(ComplexPtr src, ComplexPtr dst, std::map<int, RatMat> blocks)
    : src_(std::move(src)), dst_(std::move(dst)), f_(std::move(blocks)) {
  for (const auto& [k, m] : f_) {
    if (m.rows() != dst_->rank(k) || m.cols() != src_->rank(k))
      throw input_error("chain map: block shape mismatch at degree " +
                        std::to_string(k));
  }
  for (int k = src_->kmin() - 1; k <= src_->kmax(); ++k) {
    RatMat lhs = at(k + 1) * src_->diff(k);
    RatMat rhs = dst_->diff(k) * at(k);
    if (!(lhs - rhs).is_zero())
      throw invariant_error("chain map does not commute with d at degree " +
                            std::to_string(k));
  }
}

ChainMap ChainMap::identity(ComplexPtr c) {
  std::map<int, RatMat> blocks;
  for (int k = c->kmin(); k <= c->kmax(); ++k)
    blocks.emplace(k, RatMat::identity(c->rank(k)));
  auto cc = c;
  return ChainMap(std::move(c), std::move(cc), std::move(blocks));
}

ChainMap ChainMap::zero(ComplexPtr src, ComplexPtr dst) {
  return ChainMap(std::move(src), std::move(dst), {});
}

RatMat ChainMap::at(int k) const {
  auto it = f_.find(k);
  if (it != f_.end()) return it->second;
  return RatMat(dst_ ? dst_->rank(k) : 0, src_ ? src_->rank(k) : 0);
}

RatVec ChainMap::apply(int k, const RatVec& v) const { return at(k) * v; }

ChainMap ChainMap::compose_after(const ChainMap& g) const {
  if (g.dst_.get() != src_.get())
    throw input_error("chain map composition: middle complexes differ");
  std::map<int, RatMat> blocks;
  for (int k = g.src_->kmin(); k <= g.src_->kmax(); ++k) {
    if (g.src_->rank(k) == 0 || dst_->rank(k) == 0) continue;
    blocks.emplace(k, at(k) * g.at(k));
  }
  return ChainMap(g.src_, dst_, std::move(blocks));
}

// ---------------------------------------------------------------------------
// cohomology over Z

IntVec ZCohomology::canonicalize(IntVec smith) const {
  for (size_t i = 0; i < smith.size(); ++i) {
    if (orders[i] != 0) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), smith[i].get_mpz_t(), orders[i].get_mpz_t());
      smith[i] = r;
    }
  }
  return smith;
}

IntVec ZCohomology::class_coords(const IntVec& cocycle) const {
  auto sol = cocycle_solver->solve(cocycle);
  if (!sol) throw input_error("class_coords: vector is not a cocycle");
  return canonicalize(smith_u * *sol);
}

IntVec ZCohomology::generator_rep(long i) const {
  return cocycles * smith_uinv.col(i);
}

ZCohomology z_cohomology(const CochainComplex& c, int k) {
  if (c.coeff() != Coeff::Z) throw input_error("z_cohomology on non-Z complex");
  ZCohomology h;
  h.ambient = c.rank(k);
  h.cocycles = integer_kernel(c.diff_int(k));
  h.cocycle_solver = std::make_shared<IntSolver>(h.cocycles);
  IntMat img = c.diff_int(k - 1);
  h.relations = IntMat(h.cocycles.cols(), img.cols());
  for (long j = 0; j < img.cols(); ++j) {
    auto sol = h.cocycle_solver->solve(img.col(j));
    if (!sol) throw invariant_error("image not contained in kernel lattice");
    h.relations.set_col(j, *sol);
  }
  SnfResult s = smith_normal_form(h.relations);
  h.smith_u = s.u;
  h.smith_uinv = unimodular_inverse(s.u);
  long z = h.cocycles.cols();
  h.orders.assign(z, Int(0));
  for (long i = 0; i < s.rank; ++i) h.orders[i] = s.d.at(i, i);
  h.desc.free_rank = z - s.rank;
  for (const auto& d : s.divisors())
    if (d >= 2) h.desc.torsion.push_back(d);
  return h;
}

// ---------------------------------------------------------------------------
// cohomology over Q

RatVec QCohomology::kernel_coords(const RatVec& cocycle) const {
  auto sol = cocycle_solver->solve(cocycle);
  if (!sol) throw input_error("kernel_coords: vector is not a cocycle");
  return *sol;
}

RatVec QCohomology::class_coords(const RatVec& cocycle) const {
  RatVec kc = kernel_coords(cocycle);
  RatVec w = basis_inv * kc;
  return RatVec(w.begin() + im_rank, w.end());
}

namespace {

// incremental independence tester over Q (reduced columns with pivots)
struct Eliminator {
  std::vector<std::pair<long, RatVec>> cols;
  bool try_add(RatVec v) {
    for (const auto& [p, c] : cols) {
      if (v[p] == 0) continue;
      Rat f = v[p] / c[p];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= f * c[i];
    }
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        cols.emplace_back((long)i, std::move(v));
        return true;
      }
    return false;
  }
};

}  // namespace

QCohomology q_cohomology(const CochainComplex& c, int k) {
  QCohomology h;
  h.ambient = c.rank(k);
  h.cocycles = rational_kernel(c.diff(k));
  h.cocycle_solver = std::make_shared<RatSolver>(h.cocycles);
  long z = h.cocycles.cols();

  // image of d_{k-1} in kernel coordinates
  RatMat img = c.diff(k - 1);
  RatMat img_k(z, img.cols());
  for (long j = 0; j < img.cols(); ++j) {
    auto sol = h.cocycle_solver->solve(img.col(j));
    if (!sol) throw invariant_error("image not contained in kernel");
    img_k.set_col(j, *sol);
  }

  // select independent image columns, then complete with unit vectors
  RatMat pool = hcat(img_k, RatMat::identity(z));
  std::vector<long> chosen;
  Eliminator elim;
  for (long j = 0; j < pool.cols() && (long)chosen.size() < z; ++j) {
    if (elim.try_add(pool.col(j))) chosen.push_back(j);
  }
  h.im_rank = 0;
  for (long j : chosen)
    if (j < img_k.cols()) ++h.im_rank;
  h.dim = z - h.im_rank;

  RatMat basis(z, z);
  for (size_t t = 0; t < chosen.size(); ++t) basis.set_col((long)t, pool.col(chosen[t]));
  // invert
  RatMat aug = hcat(basis, RatMat::identity(z));
  auto piv = rref_inplace(aug);
  if ((long)piv.size() != z) throw invariant_error("q_cohomology: basis not invertible");
  h.basis_inv = RatMat(z, z);
  for (long i = 0; i < z; ++i)
    for (long j = 0; j < z; ++j) h.basis_inv.at(i, j) = aug.at(i, z + j);

  h.reps = RatMat(h.ambient, h.dim);
  for (long t = h.im_rank; t < z; ++t)
    h.reps.set_col(t - h.im_rank, h.cocycles * basis.col(t));
  return h;
}

bool QCohomology::is_cocycle(const RatMat& d, const RatVec& v) const {
  return all_zero(d * v);
}

GroupDescriptor cohomology_descriptor(const CochainComplex& c, int k) {
  if (c.coeff() == Coeff::Z) return z_cohomology(c, k).desc;
  GroupDescriptor g;
  g.free_rank = q_cohomology(c, k).dim;
  return g;
}

// ---------------------------------------------------------------------------
// induced maps

namespace {

// scale rational rows to a common integer system
std::pair<IntMat, IntVec> clear_denominators(const RatMat& m, const RatVec& b) {
  IntMat mi(m.rows(), m.cols());
  IntVec bi(m.rows());
  for (long i = 0; i < m.rows(); ++i) {
    Int l = b[i].get_den();
    for (long j = 0; j < m.cols(); ++j) {
      Int g;
      mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
      l = g;
    }
    for (long j = 0; j < m.cols(); ++j) {
      Rat q = m.at(i, j) * Rat(l);
      mi.at(i, j) = q.get_num();
    }
    Rat q = b[i] * Rat(l);
    bi[i] = q.get_num();
  }
  return {mi, bi};
}

}  // namespace

std::optional<IntVec> lattice_membership(const RatMat& gens, const RatVec& target) {
  auto [mi, bi] = clear_denominators(gens, target);
  auto sol = solve_integer(mi, bi);
  if (!sol) return std::nullopt;
  return sol->x0;
}

std::optional<IntVec> solve_modulo(const IntMat& m, const IntMat& rel,
                                   const IntVec& target) {
  IntMat big = hcat(m, rel);
  auto sol = solve_integer(big, target);
  if (!sol) return std::nullopt;
  IntVec c(sol->x0.begin(), sol->x0.begin() + m.cols());
  return c;
}

InducedMap induced_map_zz(const ZCohomology& hs, const ZCohomology& hd,
                          const RatMat& f_k) {
  InducedMap out;
  long s = hs.coords(), t = hd.coords();
  IntMat m(t, s);
  IntMat fi = f_k.to_int();
  for (long i = 0; i < s; ++i) {
    IntVec img = fi * hs.generator_rep(i);
    m.set_col(i, hd.class_coords(img));
  }
  out.matrix = RatMat::from(m);

  // relation lattices diag(orders), zero columns dropped
  auto diag_of = [](const std::vector<Int>& ords) {
    long n = (long)ords.size();
    std::vector<long> idx;
    for (long i = 0; i < n; ++i)
      if (ords[i] != 0) idx.push_back(i);
    IntMat d(n, (long)idx.size());
    for (size_t j = 0; j < idx.size(); ++j) d.at(idx[j], (long)j) = ords[idx[j]];
    return d;
  };
  IntMat rel_s = diag_of(hs.orders);
  IntMat rel_t = diag_of(hd.orders);

  // surjective iff coker = Z^t / (im(m) + rel_t) is trivial
  out.surjective = quotient_descriptor(t, hcat(m, rel_t)).trivial();

  // injective iff preimage lattice {c : m c in rel_t} equals rel_s + ker...
  IntMat stacked = hcat(m, rel_t);  // solve m c = rel_t y
  IntMat ker = integer_kernel(stacked);
  IntMat pre(s, ker.cols());
  for (long j = 0; j < ker.cols(); ++j) {
    IntVec full = ker.col(j);
    IntVec c(full.begin(), full.begin() + s);
    pre.set_col(j, c);
  }
  // kernel subgroup = pre / rel_s inside Z^s
  if (pre.cols() == 0) {
    out.injective = true;
  } else {
    IntMat pre_basis = hcat(pre, rel_s);  // generators of the preimage group
    // descriptor of (pre + rel_s)/rel_s: lattice N spanned by pre_basis,
    // quotient by rel_s
    HnfResult h = hermite_normal_form(pre_basis);
    IntMat n(s, h.rank);
    for (long j = 0; j < h.rank; ++j) n.set_col(j, h.h.col(j));
    out.injective = subquotient_descriptor(n, rel_s).trivial();
  }
  out.isomorphism = out.injective && out.surjective;
  return out;
}

InducedMap induced_map_qq(const QCohomology& hs, const QCohomology& hd,
                          const RatMat& f_k) {
  InducedMap out;
  out.matrix = RatMat(hd.dim, hs.dim);
  for (long i = 0; i < hs.dim; ++i)
    out.matrix.set_col(i, hd.class_coords(f_k * hs.reps.col(i)));
  long r = rank(out.matrix);
  out.injective = (r == hs.dim);
  out.surjective = (r == hd.dim);
  out.isomorphism = out.injective && out.surjective;
  return out;
}

InducedMap induced_map_zq(const ZCohomology& hs, const QCohomology& hd,
                          const RatMat& f_k) {
  InducedMap out;
  long s = hs.coords();
  out.matrix = RatMat(hd.dim, s);
  for (long i = 0; i < s; ++i) {
    IntVec rep = hs.generator_rep(i);
    out.matrix.set_col(i, hd.class_coords(f_k * to_rat(rep)));
  }
  // torsion generators must die rationally
  for (long i = 0; i < s; ++i)
    if (hs.orders[i] > 1)
      if (!all_zero(out.matrix.col(i)))
        throw invariant_error("torsion class with nonzero rational image");
  long r = rank(out.matrix);
  out.injective = (r == s);  // meaningful only for torsion-free sources
  out.surjective = (r == hd.dim);
  out.isomorphism = false;
  return out;
}

InducedMap induced_map(const ChainMap& f, int k) {
  Coeff cs = f.src()->coeff(), cd = f.dst()->coeff();
  if (cs == Coeff::Z && cd == Coeff::Z)
    return induced_map_zz(z_cohomology(*f.src(), k), z_cohomology(*f.dst(), k), f.at(k));
  if (cs == Coeff::Q && cd == Coeff::Q)
    return induced_map_qq(q_cohomology(*f.src(), k), q_cohomology(*f.dst(), k), f.at(k));
  if (cs == Coeff::Z && cd == Coeff::Q)
    return induced_map_zq(z_cohomology(*f.src(), k), q_cohomology(*f.dst(), k), f.at(k));
  throw input_error("induced_map: unsupported coefficient pair");
}

// ---------------------------------------------------------------------------
// cones

std::pair<CochainComplex, ConeLayout> cone(const ChainMap& f) {
  const auto& src = *f.src();
  const auto& dst = *f.dst();
  if (src.coeff() != dst.coeff())
    throw input_error("cone: mixed coefficients need cone_cohomology");
  ConeLayout lay;
  lay.kmin = std::min(dst.kmin(), src.kmin() - 1);
  lay.kmax = std::max(dst.kmax(), src.kmax() - 1) + 1;
  std::vector<long> ranks;
  std::vector<RatMat> diffs;
  for (int k = lay.kmin; k <= lay.kmax; ++k) {
    lay.dst_rank[k] = dst.rank(k);
    lay.src_shift_rank[k] = src.rank(k + 1);
    ranks.push_back(dst.rank(k) + src.rank(k + 1));
  }
  for (int k = lay.kmin; k <= lay.kmax; ++k) {
    long rows_d = dst.rank(k + 1), rows_s = src.rank(k + 2);
    long cols_d = dst.rank(k), cols_s = src.rank(k + 1);
    RatMat m(rows_d + rows_s, cols_d + cols_s);
    RatMat dd = dst.diff(k);
    for (long i = 0; i < rows_d; ++i)
      for (long j = 0; j < cols_d; ++j) m.at(i, j) = dd.at(i, j);
    RatMat fk = f.at(k + 1);
    for (long i = 0; i < rows_d; ++i)
      for (long j = 0; j < cols_s; ++j) m.at(i, cols_d + j) = fk.at(i, j);
    RatMat ds = src.diff(k + 1);
    for (long i = 0; i < rows_s; ++i)
      for (long j = 0; j < cols_s; ++j) m.at(rows_d + i, cols_d + j) = -ds.at(i, j);
    diffs.push_back(std::move(m));
  }
  return {CochainComplex(dst.coeff(), lay.kmin, std::move(ranks), std::move(diffs)), lay};
}

MixedGroupDescriptor cone_cohomology(const ChainMap& f, int k) {
  if (f.src()->coeff() != Coeff::Z || f.dst()->coeff() != Coeff::Q)
    throw input_error("cone_cohomology expects f : Z-complex -> Q-complex");
  // 0 -> H^k(F)/im f_* -> H^k(G) -> ker(f_*: H^{k+1}(I) -> H^{k+1}(F)) -> 0
  // and the divisible left part splits off canonically.
  MixedGroupDescriptor out;

  QCohomology hfk = q_cohomology(*f.dst(), k);
  ZCohomology hik = z_cohomology(*f.src(), k);
  RatMat img(hfk.dim, hik.coords());
  for (long i = 0; i < hik.coords(); ++i)
    img.set_col(i, hfk.class_coords(f.at(k) * to_rat(hik.generator_rep(i))));
  long rho = rank(img);
  out.qz_rank = rho;
  out.q_rank = hfk.dim - rho;

  ZCohomology hi1 = z_cohomology(*f.src(), k + 1);
  QCohomology hf1 = q_cohomology(*f.dst(), k + 1);
  InducedMap psi = induced_map_zq(hi1, hf1, f.at(k + 1));
  // kernel subgroup of H^{k+1}(I): {c : matrix * c = 0 rationally} / relations
  auto [mi, bi] = [&] {
    RatVec zero = rat_zeros(hf1.dim);
    IntMat m(hf1.dim, hi1.coords());
    // clear denominators row-wise on the induced matrix
    for (long i = 0; i < hf1.dim; ++i) {
      Int l = 1;
      for (long j = 0; j < hi1.coords(); ++j) {
        Int g;
        mpz_lcm(g.get_mpz_t(), l.get_mpz_t(),
                psi.matrix.at(i, j).get_den().get_mpz_t());
        l = g;
      }
      for (long j = 0; j < hi1.coords(); ++j) {
        Rat q = psi.matrix.at(i, j) * Rat(l);
        m.at(i, j) = q.get_num();
      }
    }
    return std::pair<IntMat, IntVec>{m, int_zeros(hf1.dim)};
  }();
  (void)bi;
  IntMat ker = integer_kernel(mi);  // saturated: contains all torsion coords

  // descriptor of ker / relations(diag orders)
  long s = hi1.coords();
  std::vector<long> idx;
  for (long i = 0; i < s; ++i)
    if (hi1.orders[i] != 0) idx.push_back(i);
  IntMat rel(s, (long)idx.size());
  for (size_t j = 0; j < idx.size(); ++j) rel.at(idx[j], (long)j) = hi1.orders[idx[j]];

  if (ker.cols() == 0) {
    out.fg = GroupDescriptor{};
  } else {
    HnfResult h = hermite_normal_form(hcat(ker, rel));
    IntMat n(s, h.rank);
    for (long j = 0; j < h.rank; ++j) n.set_col(j, h.h.col(j));
    // ker is saturated and contains rel, so n spans the same lattice as ker
    out.fg = subquotient_descriptor(n, rel);
  }
  return out;
}

MixedGroupDescriptor two_step_hypercohomology(const ChainMap& f, int k, int shift) {
  return cone_cohomology(f, k - shift);
}

}  // namespace sparkcx
