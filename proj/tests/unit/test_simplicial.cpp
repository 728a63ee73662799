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

GroupDescriptor h(const SimplicialComplex& k, int q) {
  return z_cohomology(*k.cochain_complex(Coeff::Z), q).desc;
}

}  // namespace

TEST_CASE("face closure and coboundary") {
  auto k = SimplicialComplex::closure(4, {{0, 1, 2}, {1, 2, 3}});
  CHECK(k.count(0) == 4);
  CHECK(k.count(1) == 5);
  CHECK(k.count(2) == 2);
  CHECK((k.coboundary(1) * k.coboundary(0)).is_zero());
  CHECK_THROWS_AS(SimplicialComplex::closure(3, {{1, 0}}), input_error);
  CHECK_THROWS_AS(SimplicialComplex::closure(2, {{0, 5}}), input_error);
}

TEST_CASE("fixture complexes have the right cohomology") {
  CHECK(h(fixtures::circle(6), 1) == fg(1));
  CHECK(h(fixtures::icosahedron(), 0) == fg(1));
  CHECK(h(fixtures::icosahedron(), 1) == fg(0));
  CHECK(h(fixtures::icosahedron(), 2) == fg(1));
  CHECK(h(fixtures::octahedron(), 2) == fg(1));
  CHECK(h(fixtures::grid_torus(6, 6), 1) == fg(2));
  CHECK(h(fixtures::grid_torus(6, 6), 2) == fg(1));
  CHECK(h(fixtures::grid_klein(6, 6), 1) == fg(1));
  CHECK(h(fixtures::grid_klein(6, 6), 2) == fg(0, {2}));
  CHECK(h(fixtures::hemi_dodecahedron(), 1) == fg(0));
  CHECK(h(fixtures::hemi_dodecahedron(), 2) == fg(0, {2}));
  CHECK(h(fixtures::torus_seven_vertex(), 1) == fg(2));
}

TEST_CASE("circle6 star cover is good and its nerve is a circle") {
  const auto& f = fixtures::get("circle6");
  CHECK(f.cover_kind == "star");
  CHECK(f.cover->good());
  auto nz = f.cover->nerve.cochain_complex(Coeff::Z);
  CHECK(z_cohomology(*nz, 0).desc == fg(1));
  CHECK(z_cohomology(*nz, 1).desc == fg(1));
}

TEST_CASE("octahedron star cover fails with the antipodal witness") {
  auto k = std::make_shared<SimplicialComplex>(fixtures::octahedron());
  CoverData cov = star_cover(k);
  CHECK(cov.covers);
  CHECK(!cov.good());
  auto bad = cov.first_bad();
  REQUIRE(bad.has_value());
  // the witness intersection is an equatorial circle: reduced H^1 = Z
  const Subcomplex& inter = cov.intersections[bad->first][bad->second];
  std::vector<long> ranks_;
  std::vector<RatMat> diffs;
  for (int q = 0; q <= std::max(inter.dim(), 0); ++q) {
    ranks_.push_back(inter.count(q));
    diffs.push_back(RatMat::from(sub_coboundary(*k, inter, q)));
  }
  CochainComplex c(Coeff::Z, 0, ranks_, diffs);
  CHECK(z_cohomology(c, 1).desc == fg(1));
  CHECK(cov.describe_bad().find("not acyclic") != std::string::npos);
}

TEST_CASE("a single simplex is its own good star cover") {
  auto k = std::make_shared<SimplicialComplex>(SimplicialComplex::closure(3, {{0, 1, 2}}));
  CoverData cov = star_cover(k);
  CHECK(cov.good());
  for (int v = 0; v < 3; ++v)
    CHECK(cov.members[v].count(2) == 1);  // each star is the whole simplex
}

TEST_CASE("fixture covers verify") {
  for (const auto& n : fixtures::names()) {
    const auto& f = fixtures::get(n);
    INFO(n, " cover kind ", f.cover_kind);
    CHECK(f.cover->covers);
    CHECK(f.cover->good());
  }
}

TEST_CASE("trivial cover gives a single column") {
  auto k = std::make_shared<SimplicialComplex>(fixtures::circle(6));
  std::vector<Subcomplex> members = {full_subcomplex(*k)};
  auto cov = std::make_shared<CoverData>(make_cover(k, std::move(members)));
  // covering, but not good: the single member is the circle itself
  REQUIRE(cov->covers);
  CHECK(!cov->good());
  CechComplex cc = cech_double_complex(k, cov, Coeff::Q);
  CHECK(cc.dc.pmax() == 0);
  for (int q = 0; q <= k->dim(); ++q) CHECK(cc.dc.rank(0, q) == k->count(q));
  for (int q = 0; q <= k->dim(); ++q)
    CHECK(cc.tot.total->diff(q) == k->cochain_complex(Coeff::Q)->diff(q));
}

TEST_CASE("cech double complex edges on circle6") {
  const auto& f = fixtures::get("circle6");
  CechComplex cc = cech_double_complex(f.complex, f.cover, Coeff::Q);
  // total cohomology matches the circle
  CHECK(q_cohomology(*cc.tot.total, 0).dim == 1);
  CHECK(q_cohomology(*cc.tot.total, 1).dim == 1);
  CHECK(q_cohomology(*cc.tot.total, 2).dim == 0);
  // integral bottom edge: the nerve has H^0 = H^1 = Z
  CechComplex cz = cech_double_complex(f.complex, f.cover, Coeff::Z);
  auto nz = cz.nerve_cochains;
  CHECK(z_cohomology(*nz, 0).desc == fg(1));
  CHECK(z_cohomology(*nz, 1).desc == fg(1));
  // both edges induce isomorphisms in rational cohomology
  for (int q = 0; q <= 1; ++q) CHECK(induced_map(cc.global_edge, q).isomorphism);
}

TEST_CASE("edge isomorphisms hold on every fixture") {
  for (const auto& n : fixtures::names()) {
    const auto& m = fixtures::model(n);
    for (int q = 0; q <= m->K->dim(); ++q) {
      INFO(n, " degree ", q);
      CHECK(induced_map(m->cq.global_edge, q).isomorphism);
    }
  }
}

TEST_CASE("barycentric subdivision preserves cohomology") {
  auto sd = barycentric_subdivision(fixtures::rp2_six_vertex());
  CHECK(sd.count(0) == 6 + 15 + 10);
  CHECK(h(sd, 1) == fg(0));
  CHECK(h(sd, 2) == fg(0, {2}));
}

TEST_CASE("simplicial map validation and pullback") {
  auto c12 = std::make_shared<SimplicialComplex>(fixtures::circle(12));
  auto c6 = std::make_shared<SimplicialComplex>(fixtures::circle(6));
  SimplicialMap f{c12, c6, {}};
  for (int i = 0; i < 12; ++i) f.vertex_image.push_back(i % 6);
  f.validate();
  // pullback commutes with the coboundary
  RatMat p0 = f.cochain_pullback(0);
  RatMat p1 = f.cochain_pullback(1);
  RatMat lhs = p1 * RatMat::from(c6->coboundary(0));
  RatMat rhs = RatMat::from(c12->coboundary(0)) * p0;
  CHECK((lhs - rhs).is_zero());

  // a constant map is simplicial; skipping every second vertex is not
  SimplicialMap constant{c12, c6, std::vector<int>(12, 0)};
  constant.validate();
  SimplicialMap bad{c12, c6, {}};
  for (int i = 0; i < 12; ++i) bad.vertex_image.push_back((2 * i) % 6);
  CHECK_THROWS_AS(bad.validate(), input_error);
}
