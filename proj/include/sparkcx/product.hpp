#pragma once

#include "sparkcx/cech.hpp"

namespace sparkcx {

// Alexander-Whitney cup product on simplicial cochains:
// (x.y)(v0..v_{q+q'}) = x(v0..v_q) * y(v_q..v_{q+q'})
RatVec cup_simplicial(const SimplicialComplex& k, int q1, const RatVec& x, int q2,
                      const RatVec& y);
IntVec cup_simplicial(const SimplicialComplex& k, int q1, const IntVec& x, int q2,
                      const IntVec& y);

// cup on the total Cech-simplicial complex: Cech front/back faces combined
// with the simplicial cup on the common intersection, with the sign
// (-1)^{p q'} between the Cech degree of x and the simplicial degree of y
RatVec cup_total(const CechModel& m, int k1, const RatVec& x, int k2, const RatVec& y);

// the spark-level product
//   (a1 . iota(e2) + (-1)^{k+1} psi(r1) . a2,  r1 . r2)
// with the cached curvature e1 . e2; re-validated through make_spark
Spark spark_product(const CechModel& m, const Spark& s1, const Spark& s2);

// the companion expression (a1 . psi(r2) + (-1)^{k+1} iota(e1) . a2, r1 . r2);
// equivalence with spark_product is a test, not an assumption
Spark spark_product_alt(const CechModel& m, const Spark& s1, const Spark& s2);

// unit class: the degree -1 spark (0, 1) over a connected nerve
Spark unit_spark(const CechModel& m);

struct DeltaRingReport {
  bool delta1_multiplicative = false;
  bool delta2_multiplicative = false;
  bool plus_sign = false;   // s1*s2 ~ +s2*s1
  bool minus_sign = false;  // s1*s2 ~ -s2*s1
  std::string to_string() const;
};

DeltaRingReport delta_ring_check(const CechModel& m, const Spark& s1, const Spark& s2);

struct TruncationPushReport {
  bool projected_products_equivalent = false;  // Pi(s1*s2) ~ Pi(s1) *_p Pi(s2)
  bool kernel_ideal = false;                   // Pi(s1) ~ 0 => Pi(s1*s2) ~ 0
  long kernel_samples = 0;
};

// *_p is the projected full product; the report checks well-definedness on a
// perturbed representative and the kernel-ideal property
TruncationPushReport truncation_push_check(const LevelModel& lm, const Spark& s1,
                                           const Spark& s2, SplitMix64& rng,
                                           long kernel_samples = 8);

// both cup compatibility certificates, on full bases:
// iota(e).iota(e') = iota(e.e') and psi(r).psi(r') = psi(r.r')
bool cup_compatibility_certificates(const CechModel& m, int max_total_degree);

// Leibniz D(x.y) = Dx.y + (-1)^{deg x} x.Dy on all basis pairs up to the
// given total degree
bool cup_leibniz_on_bases(const CechModel& m, int max_total_degree);

}  // namespace sparkcx
