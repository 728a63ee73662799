#pragma once

#include <memory>
#include <optional>

#include "sparkcx/matrix.hpp"

namespace sparkcx {

// Isomorphism type of a finitely generated abelian group: Z^free + torsion
// with the divisor chain d1 | d2 | ... , di >= 2.
struct GroupDescriptor {
  long free_rank = 0;
  std::vector<Int> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const GroupDescriptor& o) const = default;
  std::string to_string() const;
};

// Isomorphism type (Q/Z)^qz + Q^q + Z^free + torsion.  The splitting off of
// the divisible part is canonical: Q and Q/Z are divisible, hence injective
// as Z-modules, so every extension of a finitely generated group by them
// splits (Ext against a divisible group vanishes).
struct MixedGroupDescriptor {
  long qz_rank = 0;
  long q_rank = 0;
  GroupDescriptor fg;

  bool trivial() const { return qz_rank == 0 && q_rank == 0 && fg.trivial(); }
  bool operator==(const MixedGroupDescriptor& o) const = default;
  std::string to_string() const;
};

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ...
struct SnfResult {
  IntMat u, d, v;
  long rank = 0;                // number of nonzero diagonal entries
  std::vector<Int> divisors() const;
};

SnfResult smith_normal_form(const IntMat& m);

// Column-style Hermite form: H = M * V with V unimodular, nonzero columns
// first, pivot rows strictly increasing, pivots positive, and entries to the
// left of a pivot in its row reduced into [0, pivot).
struct HnfResult {
  IntMat h, v;
  long rank = 0;
  std::vector<long> pivot_rows;  // one per nonzero column
};

HnfResult hermite_normal_form(const IntMat& m);

Int determinant(const IntMat& m);  // fraction-free (Bareiss)

struct IntSolution {
  IntVec x0;
  IntMat kernel;  // columns form a Z-basis of {x : Mx = 0}
};

struct RatSolution {
  RatVec x0;
  RatMat kernel;
};

struct MixedSolution {
  RatVec x;  // rational block coefficients
  IntVec y;  // integer block coefficients
};

// Mx = b over Z; empty result when b is not in the column lattice.
std::optional<IntSolution> solve_integer(const IntMat& m, const IntVec& b);

// Mx = b over Q.
std::optional<RatSolution> solve_rational(const RatMat& m, const RatVec& b);

// A*x + L*y = b with x rational, y integral.  The rational block is
// eliminated first (row echelon with leftmost pivots); integer solvability of
// the projected system is decided over Z; x is back-substituted.
std::optional<MixedSolution> solve_mixed(const RatMat& a, const RatMat& l,
                                         const RatVec& b);

// Z^ambient_rank / column-span(relations).
GroupDescriptor quotient_descriptor(long ambient_rank, const IntMat& relations);

// N and R are lattices given by basis/generator columns in a common ambient,
// R sublattice of N; returns the descriptor of N/R.  Ambient membership of R
// in N is solved exactly and failure is an invariant error.
GroupDescriptor subquotient_descriptor(const IntMat& n, const IntMat& r);

// Rank of a matrix over Q.
long rank(const RatMat& m);
long rank(const IntMat& m);

// Basis of {x : Mx = 0} over Q, as columns (non-pivot unit completion).
RatMat rational_kernel(const RatMat& m);

// Reduced row echelon form; returns pivot column indices.
std::vector<long> rref_inplace(RatMat& m);

IntMat integer_kernel(const IntMat& m);  // Z-basis of the kernel lattice

// x with U x = e_i for unimodular U (exact inverse column).
IntMat unimodular_inverse(const IntMat& u);

// --- factorized solvers -----------------------------------------------------
// The model computations solve against the same matrices thousands of times
// (class coordinates, spark equations, equivalence decisions); these cache
// the elimination once and answer in O(n^2).

class RatSolver {
 public:
  RatSolver() = default;
  explicit RatSolver(const RatMat& m);
  std::optional<RatVec> solve(const RatVec& b) const;
  long rank() const { return (long)pivots_.size(); }
  long rows() const { return rows_; }
  long cols() const { return cols_; }

 private:
  long rows_ = 0, cols_ = 0;
  RatMat t_;  // row transform: t_ * m is reduced, pivot rows first
  std::vector<long> pivots_;
};

class IntSolver {
 public:
  IntSolver() = default;
  explicit IntSolver(const IntMat& m);
  std::optional<IntVec> solve(const IntVec& b) const;
  const IntMat& kernel() const { return kernel_; }

 private:
  long rows_ = 0, cols_ = 0;
  SnfResult s_;
  IntMat kernel_;
};

class MixedSolver {
 public:
  MixedSolver() = default;
  MixedSolver(const RatMat& a, const RatMat& l);
  std::optional<MixedSolution> solve(const RatVec& b) const;

 private:
  RatMat a_, l_;
  RatMat t_;  // row transform with A-block pivots first
  long arank_ = 0;
  std::vector<Int> scales_;
  std::shared_ptr<const IntSolver> proj_;
  std::shared_ptr<const RatSolver> back_;
};

}  // namespace sparkcx
