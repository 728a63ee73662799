#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparkcx/fixtures.hpp"

using namespace sparkcx;

namespace {

GroupDescriptor fg(long free, std::vector<long> tor = {}) {
  GroupDescriptor g;
  g.free_rank = free;
  for (long t : tor) g.torsion.push_back(Int(t));
  return g;
}

// homology via the transposed (boundary) matrices: an independent route to
// the torsion, used as the universal-coefficient cross-check
GroupDescriptor homology_z(const SimplicialComplex& k, int q) {
  IntMat bd_q = k.coboundary(q - 1).transposed();      // C_q -> C_{q-1}
  IntMat bd_q1 = k.coboundary(q).transposed();         // C_{q+1} -> C_q
  IntMat cycles = integer_kernel(bd_q.rows() ? bd_q : IntMat(0, k.count(q)));
  IntMat rel(cycles.cols(), bd_q1.cols());
  for (long j = 0; j < bd_q1.cols(); ++j) {
    auto sol = solve_integer(cycles, bd_q1.col(j));
    REQUIRE(sol.has_value());
    rel.set_col(j, sol->x0);
  }
  return quotient_descriptor(cycles.cols(), rel);
}

}  // namespace

TEST_CASE("circle cochain cohomology") {
  auto k = fixtures::circle(3);
  auto c = k.cochain_complex(Coeff::Z);
  CHECK(z_cohomology(*c, 0).desc == fg(1));
  CHECK(z_cohomology(*c, 1).desc == fg(1));
  // representatives are cocycles
  auto h1 = z_cohomology(*c, 1);
  for (long i = 0; i < h1.cocycles.cols(); ++i)
    CHECK(all_zero(c->diff_int(1) * h1.cocycles.col(i)));
}

TEST_CASE("six-vertex projective plane with universal-coefficient cross-check") {
  auto k = fixtures::rp2_six_vertex();
  auto c = k.cochain_complex(Coeff::Z);
  CHECK(z_cohomology(*c, 0).desc == fg(1));
  CHECK(z_cohomology(*c, 1).desc == fg(0));
  CHECK(z_cohomology(*c, 2).desc == fg(0, {2}));
  // torsion H^2 = torsion H_1 (computed through the boundary route)
  GroupDescriptor h1 = homology_z(k, 1);
  CHECK(h1.torsion == z_cohomology(*c, 2).desc.torsion);
}

TEST_CASE("zero complex") {
  auto c = CochainComplex::zero(Coeff::Z);
  CHECK(z_cohomology(c, 0).desc.trivial());
  CHECK(z_cohomology(c, 5).desc.trivial());
}

TEST_CASE("construction rejects broken data") {
  // d o d != 0
  RatMat d0 = RatMat::from_rows({{"1"}});
  RatMat d1 = RatMat::from_rows({{"1"}});
  CHECK_THROWS_AS(CochainComplex(Coeff::Q, 0, {1, 1, 1}, {d0, d1, RatMat(0, 1)}),
                  invariant_error);
  // non-integral Z-complex
  CHECK_THROWS_AS(CochainComplex(Coeff::Z, 0, {1, 1}, {RatMat::from_rows({{"1/2"}}),
                                                       RatMat(0, 1)}),
                  input_error);
}

TEST_CASE("cone of the identity is acyclic, cone of zero is the direct sum") {
  auto k = fixtures::circle(3);
  auto cq = k.cochain_complex(Coeff::Q);
  auto [gid, lay1] = cone(ChainMap::identity(cq));
  for (int q = gid.kmin(); q <= gid.kmax(); ++q)
    CHECK(q_cohomology(gid, q).dim == 0);

  auto [gz, lay2] = cone(ChainMap::zero(cq, cq));
  for (int q = gz.kmin(); q <= gz.kmax(); ++q)
    CHECK(gz.rank(q) == cq->rank(q) + cq->rank(q + 1));
  // H^k(cone of 0) = H^k(target) + H^{k+1}(source)
  CHECK(q_cohomology(gz, 0).dim == 1 + 1);  // H^0 + H^1 of the circle
}

TEST_CASE("induced maps: identity and multiplication by two") {
  auto k = fixtures::circle(3);
  auto cz = k.cochain_complex(Coeff::Z);
  InducedMap id1 = induced_map(ChainMap::identity(cz), 1);
  CHECK(id1.isomorphism);

  std::map<int, RatMat> two;
  for (int q = 0; q <= cz->kmax(); ++q) {
    RatMat m = RatMat::identity(cz->rank(q));
    for (long i = 0; i < m.rows(); ++i) m.at(i, i) = 2;
    two.emplace(q, std::move(m));
  }
  ChainMap mul2(cz, cz, std::move(two));
  InducedMap im = induced_map(mul2, 1);
  CHECK(im.injective);
  CHECK(!im.surjective);
  CHECK(!im.isomorphism);
  // the free Smith coordinate is scaled by two
  auto h1 = z_cohomology(*cz, 1);
  for (long i = 0; i < h1.coords(); ++i)
    if (h1.orders[i] == 0) CHECK(im.matrix.at(i, i) == Rat(2));
}

TEST_CASE("cone cohomology of the coefficient inclusion") {
  auto k = fixtures::circle(6);
  auto cz = k.cochain_complex(Coeff::Z);
  auto cq = k.cochain_complex(Coeff::Q);
  std::map<int, RatMat> blocks;
  for (int q = 0; q <= cz->kmax(); ++q) blocks.emplace(q, RatMat::identity(cz->rank(q)));
  ChainMap inc(cz, cq, std::move(blocks));

  MixedGroupDescriptor h0 = cone_cohomology(inc, 0);
  CHECK(h0.qz_rank == 1);
  CHECK(h0.q_rank == 0);
  CHECK(h0.fg.trivial());

  MixedGroupDescriptor h1 = cone_cohomology(inc, 1);
  CHECK(h1.qz_rank == 1);
  CHECK(h1.fg.trivial());

  CHECK(two_step_hypercohomology(inc, 0, 0) == h0);
  CHECK(two_step_hypercohomology(inc, 1, 0) == h1);
}

TEST_CASE("cone cohomology with zero target is the shifted source") {
  auto k = fixtures::circle(3);
  auto cz = k.cochain_complex(Coeff::Z);
  auto zq = std::make_shared<CochainComplex>(CochainComplex::zero(Coeff::Q));
  ChainMap zero = ChainMap::zero(cz, zq);
  MixedGroupDescriptor h0 = cone_cohomology(zero, 0);
  CHECK(h0.qz_rank == 0);
  CHECK(h0.q_rank == 0);
  CHECK(h0.fg == fg(1));  // H^1 of the circle
}

TEST_CASE("acyclic source and target give the trivial descriptor") {
  // a single simplex is acyclic in positive degrees
  auto k = SimplicialComplex::closure(3, {{0, 1, 2}});
  auto cz = k.cochain_complex(Coeff::Z);
  auto cq = k.cochain_complex(Coeff::Q);
  std::map<int, RatMat> blocks;
  for (int q = 0; q <= cz->kmax(); ++q) blocks.emplace(q, RatMat::identity(cz->rank(q)));
  ChainMap inc(cz, cq, std::move(blocks));
  CHECK(cone_cohomology(inc, 1).trivial());
  CHECK(cone_cohomology(inc, 2).trivial());
}

TEST_CASE("totalization of degenerate double complexes") {
  auto k = fixtures::circle(3);
  auto c = k.cochain_complex(Coeff::Q);
  // single column: ranks (1 x degrees)
  {
    std::vector<std::vector<long>> ranks(1);
    std::vector<std::vector<RatMat>> hor(1), ver(1);
    for (int q = 0; q <= c->kmax(); ++q) {
      ranks[0].push_back(c->rank(q));
      ver[0].push_back(c->diff(q));
      hor[0].push_back(RatMat(0, c->rank(q)));
    }
    DoubleComplex dc(Coeff::Q, ranks, hor, ver);
    Totalization t = totalize(dc);
    for (int q = 0; q <= c->kmax(); ++q) {
      CHECK(t.total->rank(q) == c->rank(q));
      CHECK(t.total->diff(q) == c->diff(q));
    }
  }
  // single row: the total differential is plain delta
  {
    std::vector<std::vector<long>> ranks;
    std::vector<std::vector<RatMat>> hor, ver;
    for (int p = 0; p <= c->kmax(); ++p) {
      ranks.push_back({c->rank(p)});
      hor.push_back({c->diff(p)});
      ver.push_back({RatMat(0, c->rank(p))});
    }
    DoubleComplex dc(Coeff::Q, ranks, hor, ver);
    Totalization t = totalize(dc);
    for (int p = 0; p <= c->kmax(); ++p) CHECK(t.total->diff(p) == c->diff(p));
  }
}

TEST_CASE("truncation beyond the extent is the identity") {
  const auto& m = fixtures::model("circle3");
  Truncation tr = truncate(m->cq.dc, 10, m->cq.tot);
  for (int k = 0; k <= m->cq.tot.total->kmax(); ++k) {
    CHECK(tr.tot.total->rank(k) == m->cq.tot.total->rank(k));
    RatMat p = tr.projection.at(k);
    CHECK((p - RatMat::identity(p.rows())).is_zero());
  }
  CHECK_THROWS_AS(truncate(m->cq.dc, 0, m->cq.tot), input_error);
}
