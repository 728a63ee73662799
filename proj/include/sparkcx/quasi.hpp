#pragma once

#include "sparkcx/spark.hpp"

namespace sparkcx {

// Inclusion-shaped quasi-isomorphism of spark complexes: F includes into
// Fbar, E is shared, psi_map : I -> Ibar induces isomorphisms on all H^k(I).
struct SparkQuasiIso {
  SparkPtr small, big;
  ChainMap psi_map;  // I_small -> I_big
  ChainMap f_inc;    // F_small -> F_big

  // induced matrices on H^k(I) in Smith coordinates, with flags
  std::map<int, InducedMap> psi_induced;

  // lift machinery: when the F-inclusion is the identity the correction step
  // is trivial; otherwise [f_inc | d_Fbar] is factorized per degree
  bool f_identity = false;
  std::map<int, std::shared_ptr<const RatSolver>> lift_solve;
};

// throws spark_error naming the failing degree or commutation square
SparkQuasiIso validate_quasi_iso(SparkPtr small, SparkPtr big, ChainMap psi_map,
                                 ChainMap f_inc);

Spark push(const SparkQuasiIso& q, const Spark& s);

struct LiftResult {
  Spark small;
  EquivalenceWitness big_witness;  // push(small) ~ t via this witness
};

// constructive inverse of push on classes; aborts loudly on internal failure
LiftResult lift(const SparkQuasiIso& q, const Spark& t);

// witnesses transport through push: s1 ~ s2 implies push(s1) ~ push(s2)
EquivalenceWitness push_witness(const SparkQuasiIso& q, const EquivalenceWitness& w, int k);

}  // namespace sparkcx
