#pragma once

#include "sparkcx/complex.hpp"

namespace sparkcx {

// Bigraded complex with commuting raw differentials: horizontal
// delta : (p,q) -> (p+1,q) and vertical d : (p,q) -> (p,q+1).
// Totalization applies the sign (-1)^q to delta, which makes the signed
// differentials anticommute and D? = 0.
class DoubleComplex {
 public:
  DoubleComplex() = default;
  DoubleComplex(Coeff coeff, std::vector<std::vector<long>> ranks,
                std::vector<std::vector<RatMat>> delta,
                std::vector<std::vector<RatMat>> dver);

  Coeff coeff() const { return coeff_; }
  long pmax() const { return (long)ranks_.size() - 1; }
  long qmax() const { return ranks_.empty() ? -1 : (long)ranks_[0].size() - 1; }
  long rank(long p, long q) const;
  RatMat delta(long p, long q) const;  // shape rank(p+1,q) x rank(p,q)
  RatMat dver(long p, long q) const;   // shape rank(p,q+1) x rank(p,q)

 private:
  Coeff coeff_ = Coeff::Q;
  std::vector<std::vector<long>> ranks_;      // [p][q]
  std::vector<std::vector<RatMat>> delta_, dver_;
};

struct TotalBlock {
  long p, q, offset, rank;
};

// Per-degree block layout of the total complex, blocks in ascending p.
struct TotalLayout {
  std::vector<std::vector<TotalBlock>> degrees;  // index = total degree k >= 0

  long rank(int k) const;
  const TotalBlock* block(int k, long p, long q) const;  // null if absent
  RatVec project(int k, const RatVec& total, long p, long q) const;
  void add_into(int k, RatVec& total, long p, long q, const RatVec& comp) const;
  IntVec project(int k, const IntVec& total, long p, long q) const;
  void add_into(int k, IntVec& total, long p, long q, const IntVec& comp) const;
};

struct Totalization {
  ComplexPtr total;
  TotalLayout layout;
};

Totalization totalize(const DoubleComplex& dc);

// Level-p truncation: keeps vertical degrees q < level with the projected
// differential.  The discarded rows form an ideal closed under the total
// differential, so the block projection is a chain map.
struct Truncation {
  int level = 1;
  DoubleComplex dc;
  Totalization tot;
  ChainMap projection;  // full total -> truncated total
};

Truncation truncate(const DoubleComplex& dc, int level, const Totalization& full);

}  // namespace sparkcx
