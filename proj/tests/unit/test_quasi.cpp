#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparkcx/fixtures.hpp"

using namespace sparkcx;

namespace {

// tiny abstract spark complex: F = E = Q in degree 0, I = Z in degree 0
SparkPtr toy_spark_complex() {
  auto f = std::make_shared<CochainComplex>(Coeff::Q, 0, std::vector<long>{1},
                                            std::vector<RatMat>{RatMat(0, 1)});
  auto i = std::make_shared<CochainComplex>(Coeff::Z, 0, std::vector<long>{1},
                                            std::vector<RatMat>{RatMat(0, 1)});
  ChainMap iota = ChainMap::identity(f);
  std::map<int, RatMat> pb;
  pb.emplace(0, RatMat::identity(1));
  ChainMap psi(i, f, std::move(pb));
  return validate_spark_complex(iota, psi);
}

}  // namespace

TEST_CASE("identity quasi-isomorphism validates") {
  SparkPtr s = toy_spark_complex();
  SparkQuasiIso q = validate_quasi_iso(s, s, ChainMap::identity(s->I),
                                       ChainMap::identity(s->F));
  CHECK(q.f_identity);
  CHECK(q.psi_induced.at(0).isomorphism);
}

TEST_CASE("multiplication by two is rejected with a cokernel witness") {
  SparkPtr s = toy_spark_complex();
  std::map<int, RatMat> two;
  RatMat m2 = RatMat::identity(1);
  m2.at(0, 0) = 2;
  two.emplace(0, m2);
  ChainMap psi2(s->I, s->I, std::move(two));
  // need commutation f_inc o psi = psi o psi_map; multiplication by two on I
  // against the identity on F breaks the square, so test against a scaled F
  // inclusion too: the clean violation keeps the square but fails on H^*
  std::map<int, RatMat> fb;
  fb.emplace(0, m2);
  // psi_big o (x2 on I) = x2 on F o psi_small holds with f_inc = x2, but x2
  // on F is not an inclusion-shaped map we admit elsewhere; validate only
  // the H^*(I) isomorphism failure
  try {
    validate_quasi_iso(s, s, psi2, ChainMap::identity(s->F));
    FAIL("expected a validation error");
  } catch (const spark_error& e) {
    std::string w = e.what();
    bool mentions = w.find("Z/2") != std::string::npos || w.find("commute") != std::string::npos;
    CHECK(mentions);
  }
}

TEST_CASE("hyperspark quasi-isomorphism on circle6") {
  const HypersparkModel& h = fixtures::hyperspark("circle6");
  CHECK(h.S->axiom_i_waived);
  CHECK(h.qiso.f_identity);
  SplitMix64 rng(3);
  for (int t = 0; t < 5; ++t) {
    int k = (int)rng.range(-1, 1);
    Spark s = sample_spark(h.qiso.small, k, rng);
    Spark p = push(h.qiso, s);
    CHECK(delta1(p) == delta1(s));
    LiftResult lr = lift(h.qiso, p);
    CHECK(equivalent(lr.small, s));
  }
}

TEST_CASE("lift pulls off-edge integral data onto the Cech edge") {
  const HypersparkModel& h = fixtures::hyperspark("circle6");
  SplitMix64 rng(17);
  // big-side sparks have r spread over all bidegrees of the integral total
  Spark t = sample_spark(h.qiso.big, 0, rng);
  LiftResult lr = lift(h.qiso, t);
  CHECK((long)lr.small.r.size() == h.qiso.small->I->rank(1));
  CHECK(delta1(lr.small) == delta1(t));
  Spark fwd = push(h.qiso, lr.small);
  CHECK(verify_witness(fwd, t, lr.big_witness));
}

TEST_CASE("push transports equivalence witnesses") {
  const HypersparkModel& h = fixtures::hyperspark("circle6");
  SplitMix64 rng(29);
  Spark s1 = sample_spark(h.qiso.small, 0, rng);
  RatVec b(h.qiso.small->F->rank(-1));
  IntVec sv(h.qiso.small->I->rank(0));
  for (auto& x : sv) x = rng.small_int(1);
  RatVec a2 = add(s1.a, h.qiso.small->apply_psi(0, sv));
  IntVec r2 = sub(s1.r, h.qiso.small->I->diff_int(0) * sv);
  Spark s2 = make_spark(h.qiso.small, 0, a2, r2);
  auto w = sparks_equivalent(s1, s2);
  REQUIRE(w.has_value());
  EquivalenceWitness wp = push_witness(h.qiso, *w, 0);
  CHECK(verify_witness(push(h.qiso, s1), push(h.qiso, s2), wp));
}

TEST_CASE("degree -1 sparks push to degree -1 sparks") {
  const HypersparkModel& h = fixtures::hyperspark("circle6");
  IntVec ones(h.qiso.small->I->rank(0), Int(1));
  Spark u = make_spark(h.qiso.small, -1, RatVec{}, ones);
  Spark p = push(h.qiso, u);
  CHECK(p.k == -1);
  CHECK(!all_zero(p.r));
  LiftResult lr = lift(h.qiso, p);
  CHECK(equivalent(lr.small, u));
}
