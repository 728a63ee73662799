#include "sparkcx/double_complex.hpp"

namespace sparkcx {

DoubleComplex::DoubleComplex(Coeff coeff, std::vector<std::vector<long>> ranks,
                             std::vector<std::vector<RatMat>> hor,
                             std::vector<std::vector<RatMat>> ver)
    : coeff_(coeff), ranks_(std::move(ranks)), delta_(std::move(hor)), dver_(std::move(ver)) {
  long pm = pmax(), qm = qmax();
  for (long p = 0; p <= pm; ++p)
    for (long q = 0; q <= qm; ++q) {
      if (delta(p, q).rows() != rank(p + 1, q) || delta(p, q).cols() != rank(p, q))
        throw input_error("double complex: delta shape mismatch");
      if (dver(p, q).rows() != rank(p, q + 1) || dver(p, q).cols() != rank(p, q))
        throw input_error("double complex: d shape mismatch");
      if (coeff_ == Coeff::Z && (!delta(p, q).is_integral() || !dver(p, q).is_integral()))
        throw input_error("double complex: Z coefficients with non-integer entries");
    }
  for (long p = 0; p <= pm; ++p)
    for (long q = 0; q <= qm; ++q) {
      if (!(delta(p + 1, q) * delta(p, q)).is_zero())
        throw invariant_error("double complex: delta^2 != 0");
      if (!(dver(p, q + 1) * dver(p, q)).is_zero())
        throw invariant_error("double complex: d^2 != 0");
      RatMat a = dver(p + 1, q) * delta(p, q);
      RatMat b = delta(p, q + 1) * dver(p, q);
      if (!(a - b).is_zero())
        throw invariant_error("double complex: delta and d do not commute");
    }
}

long DoubleComplex::rank(long p, long q) const {
  if (p < 0 || q < 0 || p > pmax() || q > qmax()) return 0;
  return ranks_[p][q];
}

RatMat DoubleComplex::delta(long p, long q) const {
  if (p < 0 || q < 0 || p > pmax() || q > qmax())
    return RatMat(rank(p + 1, q), rank(p, q));
  return delta_[p][q];
}

RatMat DoubleComplex::dver(long p, long q) const {
  if (p < 0 || q < 0 || p > pmax() || q > qmax())
    return RatMat(rank(p, q + 1), rank(p, q));
  return dver_[p][q];
}

// ---------------------------------------------------------------------------
// layout

long TotalLayout::rank(int k) const {
  if (k < 0 || k >= (int)degrees.size()) return 0;
  long r = 0;
  for (const auto& b : degrees[k]) r += b.rank;
  return r;
}

const TotalBlock* TotalLayout::block(int k, long p, long q) const {
  if (k < 0 || k >= (int)degrees.size()) return nullptr;
  for (const auto& b : degrees[k])
    if (b.p == p && b.q == q) return &b;
  return nullptr;
}

template <class Vec>
static Vec project_impl(const TotalLayout& lay, int k, const Vec& total, long p, long q) {
  const TotalBlock* b = lay.block(k, p, q);
  if (!b) return Vec{};
  return Vec(total.begin() + b->offset, total.begin() + b->offset + b->rank);
}

template <class Vec>
static void add_impl(const TotalLayout& lay, int k, Vec& total, long p, long q,
                     const Vec& comp) {
  const TotalBlock* b = lay.block(k, p, q);
  if (!b) {
    if (!comp.empty()) throw input_error("layout: no such block");
    return;
  }
  if ((long)comp.size() != b->rank) throw input_error("layout: component size mismatch");
  for (long i = 0; i < b->rank; ++i) total[b->offset + i] += comp[i];
}

RatVec TotalLayout::project(int k, const RatVec& total, long p, long q) const {
  return project_impl(*this, k, total, p, q);
}
void TotalLayout::add_into(int k, RatVec& total, long p, long q, const RatVec& comp) const {
  add_impl(*this, k, total, p, q, comp);
}
IntVec TotalLayout::project(int k, const IntVec& total, long p, long q) const {
  return project_impl(*this, k, total, p, q);
}
void TotalLayout::add_into(int k, IntVec& total, long p, long q, const IntVec& comp) const {
  add_impl(*this, k, total, p, q, comp);
}

// ---------------------------------------------------------------------------
// totalization

Totalization totalize(const DoubleComplex& dc) {
  long pm = dc.pmax(), qm = dc.qmax();
  int kmax = (int)(pm + qm);
  if (kmax < 0) kmax = 0;

  TotalLayout lay;
  lay.degrees.resize(kmax + 2);
  for (int k = 0; k <= kmax + 1; ++k) {
    long off = 0;
    for (long p = 0; p <= std::min<long>(k, pm); ++p) {
      long q = k - p;
      if (q < 0 || q > qm) continue;
      lay.degrees[k].push_back({p, q, off, dc.rank(p, q)});
      off += dc.rank(p, q);
    }
  }

  std::vector<long> ranks;
  std::vector<RatMat> diffs;
  for (int k = 0; k <= kmax + 1; ++k) ranks.push_back(lay.rank(k));
  for (int k = 0; k <= kmax + 1; ++k) {
    RatMat m(lay.rank(k + 1), lay.rank(k));
    for (const auto& src : lay.degrees[k]) {
      // horizontal: sign (-1)^q
      if (const TotalBlock* dst = lay.block(k + 1, src.p + 1, src.q)) {
        RatMat blk = dc.delta(src.p, src.q);
        Rat sgn = (src.q % 2 == 0) ? Rat(1) : Rat(-1);
        for (long i = 0; i < blk.rows(); ++i)
          for (long j = 0; j < blk.cols(); ++j)
            if (blk.at(i, j) != 0) m.at(dst->offset + i, src.offset + j) = sgn * blk.at(i, j);
      }
      // vertical: no sign
      if (const TotalBlock* dst = lay.block(k + 1, src.p, src.q + 1)) {
        RatMat blk = dc.dver(src.p, src.q);
        for (long i = 0; i < blk.rows(); ++i)
          for (long j = 0; j < blk.cols(); ++j)
            if (blk.at(i, j) != 0) m.at(dst->offset + i, src.offset + j) = blk.at(i, j);
      }
    }
    diffs.push_back(std::move(m));
  }

  Totalization t;
  t.total = std::make_shared<CochainComplex>(dc.coeff(), 0, std::move(ranks), std::move(diffs));
  t.layout = std::move(lay);
  return t;
}

// ---------------------------------------------------------------------------
// truncation

Truncation truncate(const DoubleComplex& dc, int level, const Totalization& full) {
  if (level < 1) throw input_error("truncate: level must be >= 1");
  long pm = dc.pmax();
  long qm = std::min<long>(dc.qmax(), level - 1);

  std::vector<std::vector<long>> ranks(pm + 1, std::vector<long>(qm + 1, 0));
  std::vector<std::vector<RatMat>> delta(pm + 1), dver(pm + 1);
  for (long p = 0; p <= pm; ++p) {
    delta[p].resize(qm + 1);
    dver[p].resize(qm + 1);
    for (long q = 0; q <= qm; ++q) {
      ranks[p][q] = dc.rank(p, q);
      delta[p][q] = dc.delta(p, q);
      dver[p][q] = (q < qm) ? dc.dver(p, q) : RatMat(0, dc.rank(p, q));
    }
  }

  Truncation tr;
  tr.level = level;
  tr.dc = DoubleComplex(dc.coeff(), std::move(ranks), std::move(delta), std::move(dver));
  tr.tot = totalize(tr.dc);

  // block projection full -> truncated
  std::map<int, RatMat> blocks;
  for (int k = 0; k <= full.total->kmax(); ++k) {
    RatMat m(tr.tot.layout.rank(k), full.layout.rank(k));
    if (k < (int)full.layout.degrees.size())
      for (const auto& src : full.layout.degrees[k]) {
        const TotalBlock* dst = tr.tot.layout.block(k, src.p, src.q);
        if (!dst) continue;
        for (long i = 0; i < src.rank; ++i) m.at(dst->offset + i, src.offset + i) = 1;
      }
    blocks.emplace(k, std::move(m));
  }
  tr.projection = ChainMap(full.total, tr.tot.total, std::move(blocks));
  return tr;
}

}  // namespace sparkcx
