#pragma once

#include <map>

#include "sparkcx/double_complex.hpp"

namespace sparkcx {

// Finite abstract simplicial complex on vertices 0..n-1; simplices are
// strictly increasing vertex lists, closed under faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // face closure of the given simplices
  static SimplicialComplex closure(long n_vertices,
                                   const std::vector<std::vector<int>>& simplices);

  long n_vertices() const { return n_; }
  int dim() const { return (int)s_.size() - 1; }
  long count(int q) const {
    return (q >= 0 && q <= dim()) ? (long)s_[q].size() : 0;
  }
  const std::vector<std::vector<int>>& simplices(int q) const;
  const std::vector<int>& simplex(int q, long id) const { return s_[q][id]; }
  long index_of(int q, const std::vector<int>& s) const;  // -1 if absent
  bool has(const std::vector<int>& s) const;

  IntMat coboundary(int q) const;  // C^q -> C^{q+1}, entries (-1)^i
  std::shared_ptr<const CochainComplex> cochain_complex(Coeff c) const;

  // reduced integral cohomology of a point (H~* = 0 over Z)?
  bool is_z_acyclic() const;

  std::vector<std::vector<int>> maximal_simplices() const;
  long total_simplices() const;

 private:
  long n_ = 0;
  std::vector<std::vector<std::vector<int>>> s_;
  std::vector<std::map<std::vector<int>, long>> index_;
};

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k);

// Vertex-induced map of complexes; simplices map to simplices after
// deleting repeats.
struct SimplicialMap {
  std::shared_ptr<const SimplicialComplex> src, dst;
  std::vector<int> vertex_image;

  void validate() const;
  // pullback on alternating cochains: C^q(dst) -> C^q(src); degenerate
  // images contribute 0, otherwise the sort permutation sign
  RatMat cochain_pullback(int q) const;
};

// A subcomplex recorded as per-dimension sorted lists of parent simplex ids.
struct Subcomplex {
  std::vector<std::vector<long>> ids;  // [q] -> sorted parent ids

  int dim() const { return (int)ids.size() - 1; }
  long count(int q) const {
    return (q >= 0 && q <= dim()) ? (long)ids[q].size() : 0;
  }
  bool empty() const;
  long local_index(int q, long parent_id) const;  // -1 if absent
  bool contains(int q, long parent_id) const { return local_index(q, parent_id) >= 0; }
};

Subcomplex intersect(const Subcomplex& a, const Subcomplex& b);
Subcomplex full_subcomplex(const SimplicialComplex& k);
// closed star of a vertex: all faces of simplices containing v
Subcomplex closed_star(const SimplicialComplex& k, int v);
// coboundary of the subcomplex in parent combinatorics, local indexing
IntMat sub_coboundary(const SimplicialComplex& parent, const Subcomplex& s, int q);
bool sub_is_z_acyclic(const SimplicialComplex& parent, const Subcomplex& s);

// A cover of K by subcomplexes, with nerve and per-intersection acyclicity
// flags computed (never assumed).
struct CoverData {
  std::shared_ptr<const SimplicialComplex> complex;
  std::vector<Subcomplex> members;
  SimplicialComplex nerve;
  // intersections[p][nerve_id], aligned with nerve.simplices(p)
  std::vector<std::vector<Subcomplex>> intersections;
  std::vector<std::vector<bool>> acyclic;
  bool covers = false;

  bool good() const;
  // (p, nerve simplex id) of the first non-acyclic intersection
  std::optional<std::pair<int, long>> first_bad() const;
  std::string describe_bad() const;
};

CoverData make_cover(std::shared_ptr<const SimplicialComplex> k,
                     std::vector<Subcomplex> members);
CoverData star_cover(std::shared_ptr<const SimplicialComplex> k);

// ---------------------------------------------------------------------------
// Cech double complex: bidegree (p,q) has one basis element per pair
// (nerve p-simplex A, q-simplex of the intersection over A); horizontal
// delta is the alternating restriction, vertical d the simplicial
// coboundary inside each intersection.

struct CechBasis {
  // offsets[p][nerve_id] = first basis index of that intersection's block in
  // bidegree (p, *) (per q, blocks are enumerated in nerve order)
  std::vector<std::vector<std::vector<long>>> offsets;  // [p][q][nerve_id]
  long index(int p, int q, long nerve_id, long local) const {
    return offsets[p][q][nerve_id] + local;
  }
};

struct CechComplex {
  std::shared_ptr<const SimplicialComplex> k;
  std::shared_ptr<const CoverData> cover;
  Coeff coeff;
  DoubleComplex dc;
  Totalization tot;
  CechBasis basis;
  ComplexPtr global;          // C^*(K)
  ComplexPtr nerve_cochains;  // C^*(N)
  ChainMap global_edge;       // C^*(K) -> total, restrictions into column 0
  ChainMap nerve_edge;        // C^*(N) -> total, constants into row 0
};

CechComplex cech_double_complex(std::shared_ptr<const SimplicialComplex> k,
                                std::shared_ptr<const CoverData> cover, Coeff coeff);

}  // namespace sparkcx
