#pragma once

#include <map>
#include <memory>

#include "sparkcx/linalg.hpp"

namespace sparkcx {

enum class Coeff { Z, Q };

inline std::string to_string(Coeff c) { return c == Coeff::Z ? "Z" : "Q"; }

// A finitely presented cochain complex on a finite degree range.  Degrees
// outside [kmin, kmax] are zero; accessors return empty shapes there.
// Differentials of Z-complexes must have integer entries.
class CochainComplex {
 public:
  CochainComplex() = default;
  CochainComplex(Coeff coeff, int kmin, std::vector<long> ranks,
                 std::vector<RatMat> diffs);

  static CochainComplex zero(Coeff c);

  Coeff coeff() const { return coeff_; }
  int kmin() const { return kmin_; }
  int kmax() const { return kmin_ + (int)ranks_.size() - 1; }

  long rank(int k) const;
  RatMat diff(int k) const;      // shape rank(k+1) x rank(k)
  IntMat diff_int(int k) const;  // Z view

  bool in_range(int k) const { return k >= kmin() && k <= kmax(); }

 private:
  Coeff coeff_ = Coeff::Q;
  int kmin_ = 0;
  std::vector<long> ranks_;
  std::vector<RatMat> d_;
};

using ComplexPtr = std::shared_ptr<const CochainComplex>;

// Degree-preserving chain map; commutation with the differentials is an
// exact construction-time check.
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ComplexPtr src, ComplexPtr dst, std::map<int, RatMat> blocks);

  static ChainMap identity(ComplexPtr c);
  static ChainMap zero(ComplexPtr src, ComplexPtr dst);

  const ComplexPtr& src() const { return src_; }
  const ComplexPtr& dst() const { return dst_; }

  RatMat at(int k) const;  // shape dst.rank(k) x src.rank(k)
  RatVec apply(int k, const RatVec& v) const;

  ChainMap compose_after(const ChainMap& g) const;  // this o g

 private:
  ComplexPtr src_, dst_;
  std::map<int, RatMat> f_;
};

// --- cohomology presentations ----------------------------------------------

// H^k of a Z-complex: cocycle lattice basis, image relations, Smith
// coordinates.  Smith generator i has order rel_divisors[i] (0 = infinite).
struct ZCohomology {
  long ambient = 0;
  IntMat cocycles;   // ambient x z
  std::shared_ptr<const IntSolver> cocycle_solver;
  IntMat relations;  // z x (rank of d_{k-1}'s source)
  IntMat smith_u, smith_uinv;
  std::vector<Int> orders;  // per smith coordinate; 0 means infinite order
  GroupDescriptor desc;

  long coords() const { return cocycles.cols(); }
  // canonical Smith coordinates of a cocycle's class
  IntVec class_coords(const IntVec& cocycle) const;
  IntVec canonicalize(IntVec smith) const;
  IntVec generator_rep(long i) const;  // ambient cocycle
  bool is_cocycle_coordsable(const IntVec& v) const;
};

// H^k of a Q-complex: kernel basis, image, chosen complement representatives.
struct QCohomology {
  long ambient = 0;
  RatMat cocycles;  // ambient x z kernel basis
  std::shared_ptr<const RatSolver> cocycle_solver;
  long dim = 0;     // h = dim H^k
  long im_rank = 0;
  RatMat reps;       // ambient x h
  RatMat basis_inv;  // z x z, inverse of [image basis | rep injection]
  RatVec class_coords(const RatVec& cocycle) const;  // h coordinates
  RatVec kernel_coords(const RatVec& cocycle) const;
  bool is_cocycle(const RatMat& d, const RatVec& v) const;
};

ZCohomology z_cohomology(const CochainComplex& c, int k);
QCohomology q_cohomology(const CochainComplex& c, int k);

// descriptor-level summary for either coefficient ring
GroupDescriptor cohomology_descriptor(const CochainComplex& c, int k);

struct InducedMap {
  // columns: images of source generators in target class coordinates
  RatMat matrix;
  bool injective = false;
  bool surjective = false;
  bool isomorphism = false;
};

// f_* : H^k(src) -> H^k(dst); handles Z->Z, Q->Q, Z->Q.
InducedMap induced_map(const ChainMap& f, int k);
InducedMap induced_map_zz(const ZCohomology& hs, const ZCohomology& hd,
                          const RatMat& f_k);
InducedMap induced_map_qq(const QCohomology& hs, const QCohomology& hd,
                          const RatMat& f_k);
InducedMap induced_map_zq(const ZCohomology& hs, const QCohomology& hd,
                          const RatMat& f_k);

// --- cones ------------------------------------------------------------------

// Cone of a same-ring chain map: G^k = dst^k (+) src^{k+1},
// D(a, r) = (da + f(r), -dr).
struct ConeLayout {
  int kmin, kmax;
  std::map<int, long> dst_rank, src_shift_rank;
};

std::pair<CochainComplex, ConeLayout> cone(const ChainMap& f);

// Mixed-coefficient cone of f : I (Z) -> F (Q); elements are kept as a pair
// (rational block, integral block) and only descriptors and constructive
// membership are exposed.
MixedGroupDescriptor cone_cohomology(const ChainMap& f, int k);

// Same, with the target complex occupying degrees >= shift in the reported
// grading (shift 0 agrees with cone_cohomology degree-for-degree).
MixedGroupDescriptor two_step_hypercohomology(const ChainMap& f, int k,
                                              int shift = 0);

// membership of a rational class vector in the lattice spanned by the given
// generator columns (integral combinations); returns the combination
std::optional<IntVec> lattice_membership(const RatMat& gens, const RatVec& target);

// integral c with m*c = target modulo the column span of rel
std::optional<IntVec> solve_modulo(const IntMat& m, const IntMat& rel,
                                   const IntVec& target);

}  // namespace sparkcx
