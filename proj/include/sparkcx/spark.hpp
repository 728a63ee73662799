#pragma once

#include "sparkcx/rng.hpp"
#include "sparkcx/simplicial.hpp"

namespace sparkcx {

struct AxiomWitness {
  std::string axiom;  // "i", "ii", "iii"
  int degree = 0;
  IntVec integer_witness;
  std::string detail;
};

struct spark_error : std::runtime_error {
  std::optional<AxiomWitness> witness;
  explicit spark_error(const std::string& what, std::optional<AxiomWitness> w = {})
      : std::runtime_error(what), witness(std::move(w)) {}
};

struct SparkAnalysis {
  std::map<int, QCohomology> hF, hE;
  std::map<int, ZCohomology> hI;
  std::map<int, RatMat> iota_star;      // hE reps -> hF class coords
  std::map<int, RatMat> iota_star_inv;  // inverse (square, axiom ii)
  std::map<int, RatMat> psi_star;       // hI smith generators -> hF class coords
  // factorized solvers, one per degree
  std::map<int, std::shared_ptr<const RatSolver>> iota_solve;   // iota.at(k)
  std::map<int, std::shared_ptr<const RatSolver>> fdiff_solve;  // F.diff(k)
  std::map<int, std::shared_ptr<const IntSolver>> idiff_solve;  // I.diff(k)
  std::map<int, std::shared_ptr<const MixedSolver>> equiv_solve;
};

// Validated triple (F, E, I, iota, psi).  F and E are Q-complexes, I is a
// Z-complex, iota : E -> F and psi : I -> F share the same F.  Axioms:
//   (i)   span iota(E^k) meets the lattice psi(I^k) only in 0, k > 0
//   (ii)  iota induces isomorphisms H^k(E) -> H^k(F)
//   (iii) psi is injective in degree 0
// axiom_i_waived marks enlargement models whose (i) is knowingly violated by
// integer-valued global cochains; every operation here works without (i),
// since e is recovered by an exact solve.
struct SparkComplex {
  ComplexPtr F, E, I;
  ChainMap iota, psi;
  bool axiom_i_waived = false;
  std::shared_ptr<const SparkAnalysis> an;

  int kmin() const { return std::min(F->kmin(), I->kmin() - 1); }
  int kmax() const { return std::max(F->kmax(), I->kmax()); }

  const QCohomology& hF(int k) const;
  const QCohomology& hE(int k) const;
  const ZCohomology& hI(int k) const;
  const RatMat& iota_star(int k) const;
  const RatMat& iota_star_inv(int k) const;
  const RatMat& psi_star(int k) const;
  const RatSolver& iota_solver(int k) const;
  const RatSolver& fdiff_solver(int k) const;
  const IntSolver& idiff_solver(int k) const;
  const MixedSolver& equiv_solver(int k) const;

  RatVec apply_iota(int k, const RatVec& e) const { return iota.apply(k, e); }
  RatVec apply_psi(int k, const IntVec& r) const { return psi.apply(k, to_rat(r)); }
};

using SparkPtr = std::shared_ptr<const SparkComplex>;

// throws spark_error carrying the axiom witness on failure
SparkPtr validate_spark_complex(const ChainMap& iota, const ChainMap& psi,
                                bool waive_axiom_i = false);

// A degree-k spark (a, r) with the cached e solving iota(e) = da + psi(r).
struct Spark {
  SparkPtr owner;
  int k = 0;
  RatVec a;  // F^k
  IntVec r;  // I^{k+1}
  RatVec e;  // E^{k+1}
};

Spark make_spark(const SparkPtr& s, int k, RatVec a, IntVec r);
Spark zero_spark(const SparkPtr& s, int k);

// builds a spark with delta1 = e and r as given; requires de = 0, dr = 0 and
// [iota e] = psi_*[r]; throws spark_error with both classes otherwise
Spark spark_from_data(const SparkPtr& s, int k, const RatVec& e, const IntVec& r);

RatVec delta1(const Spark& s);  // the cached e
IntVec delta2(const Spark& s);  // Smith coordinates of [r] in H^{k+1}(I)

Spark add(const Spark& s1, const Spark& s2);
Spark negate(const Spark& s);

struct EquivalenceWitness {
  RatVec b;  // F^{k-1}
  IntVec s;  // I^k
};

// decides a1 - a2 = db + psi(s), r1 - r2 = -ds; total decision procedure
std::optional<EquivalenceWitness> sparks_equivalent(const Spark& s1, const Spark& s2);
bool equivalent(const Spark& s1, const Spark& s2);
// re-check a claimed witness exactly
bool verify_witness(const Spark& s1, const Spark& s2, const EquivalenceWitness& w);

// class of iota(e) lies in the lattice psi_* H^k(I)?  e must be closed.
bool z_i_membership(const SparkPtr& s, int k, const RatVec& e);

struct ZISubgroup {
  int degree = 0;
  RatMat closed_basis;  // basis of Z^k(E)
  long exact_dim = 0;   // dim dE^{k-1}
  RatMat lattice_reps;  // closed E-cochains hitting the psi_* generators
  std::vector<IntVec> witnesses;  // psi-side combination per rep
};

ZISubgroup zi_subgroup(const SparkPtr& s, int k);

// given f in F^k with df in iota(E), returns (e, b) with f + db = iota(e)
std::pair<RatVec, RatVec> absorb_into_e(const SparkPtr& s, int k, const RatVec& f);

// transform a spark with delta2 = 0 into an equivalent (iota(e), 0) form
Spark flatten_to_e_form(const Spark& s);

// pairing <a, z> mod 1 against an integral cycle z in the chain dual of F^k
Rat evaluate(const Spark& s, const IntVec& z);

Spark sample_spark(const SparkPtr& s, int k, SplitMix64& rng);

// --- grid (3x3 exact diagram) ----------------------------------------------

struct GridNode {
  std::string name;
  std::optional<GroupDescriptor> fg;
  std::optional<MixedGroupDescriptor> mixed;
  std::vector<std::pair<std::string, long>> structural;
  std::string to_string() const;
};

struct GridCert {
  std::string where;
  bool matrix_exact = false;
  long samples = 0;
  uint64_t seed = 0;
  bool passed = false;
  std::string detail;
};

struct GridReport {
  int degree = 0;
  uint64_t seed = 0;
  long budget = 0;
  std::vector<GridNode> nodes;
  std::vector<GridCert> certs;
  bool all_passed() const;
  const GridNode& node(const std::string& name) const;
  std::string to_string() const;
};

GridReport grid(const SparkPtr& s, int k, long sample_budget, uint64_t seed);

}  // namespace sparkcx
