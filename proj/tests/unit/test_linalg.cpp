#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparkcx/linalg.hpp"
#include "sparkcx/rng.hpp"

using namespace sparkcx;

namespace {

std::vector<Int> divisors_of(const IntMat& m) { return smith_normal_form(m).divisors(); }

Int gcd_of_entries(const IntMat& m) {
  Int g = 0;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      Int t;
      mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), m.at(i, j).get_mpz_t());
      g = t;
    }
  return g;
}

}  // namespace

TEST_CASE("smith normal form on the 2x2 example") {
  IntMat m = {{2, 4}, {6, 8}};
  SnfResult s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);
  // independent oracle: d1 = gcd of entries, d1*d2 = |det|
  auto div = s.divisors();
  REQUIRE(div.size() == 2);
  CHECK(div[0] == gcd_of_entries(m));
  CHECK(div[0] * div[1] == abs(determinant(m)));
  CHECK(div[0] == 2);
  CHECK(div[1] == 4);
}

TEST_CASE("smith normal form identity and zero") {
  CHECK(divisors_of(IntMat::identity(3)) == std::vector<Int>{1, 1, 1});
  IntMat z(2, 3);
  SnfResult s = smith_normal_form(z);
  CHECK(s.d.is_zero());
  CHECK(s.rank == 0);
}

TEST_CASE("solve_integer scalar cases") {
  {
    auto sol = solve_integer(IntMat{{2}}, {Int(4)});
    REQUIRE(sol.has_value());
    CHECK(sol->x0 == IntVec{Int(2)});
    CHECK(sol->kernel.cols() == 0);
  }
  CHECK(!solve_integer(IntMat{{2}}, {Int(3)}).has_value());
}

TEST_CASE("solve_integer with kernel lattice") {
  IntMat m = {{1, 2}, {2, 4}};
  auto sol = solve_integer(m, {Int(3), Int(6)});
  REQUIRE(sol.has_value());
  CHECK(m * sol->x0 == IntVec{Int(3), Int(6)});
  REQUIRE(sol->kernel.cols() == 1);
  CHECK(all_zero(m * sol->kernel.col(0)));
  // the kernel lattice contains [-2, 1], and the brute-force solution set
  // over a box is exactly x0 + lattice
  CHECK(solve_integer(sol->kernel, {Int(-2), Int(1)}).has_value());
  for (long x = -5; x <= 5; ++x)
    for (long y = -5; y <= 5; ++y) {
      IntVec v = {Int(x), Int(y)};
      bool solves = (m * v == IntVec{Int(3), Int(6)});
      if (solves) CHECK(solve_integer(sol->kernel, sub(v, sol->x0)).has_value());
    }
}

TEST_CASE("solve_rational examples") {
  {
    auto sol = solve_rational(RatMat::from_rows({{"2"}}), {Rat(3)});
    REQUIRE(sol.has_value());
    CHECK(sol->x0 == RatVec{Rat(3, 2)});
  }
  {
    RatMat id = RatMat::identity(3);
    RatVec b = {Rat(1, 2), Rat(-2), Rat(7, 3)};
    auto sol = solve_rational(id, b);
    REQUIRE(sol.has_value());
    CHECK(sol->x0 == b);
    CHECK(sol->kernel.cols() == 0);
  }
  CHECK(!solve_rational(RatMat::from_rows({{"1", "1"}, {"1", "1"}}), {Rat(1), Rat(2)})
             .has_value());
}

TEST_CASE("solve_mixed examples") {
  {
    // empty rational block reduces to the integral solve
    auto sol = solve_mixed(RatMat(1, 0), RatMat::from_rows({{"2"}}), {Rat(4)});
    REQUIRE(sol.has_value());
    CHECK(sol->y == IntVec{Int(2)});
  }
  {
    auto sol = solve_mixed(RatMat::from_rows({{"1"}}), RatMat::from_rows({{"1"}}),
                           {Rat(1, 2)});
    REQUIRE(sol.has_value());
    CHECK(sol->x[0] + Rat(sol->y[0]) == Rat(1, 2));
  }
  {
    // 2y = 3 has no integral solution; brute force confirms over [-5,5]
    RatMat a(2, 1);
    a.at(0, 0) = 1;
    RatMat l(2, 1);
    l.at(1, 0) = 2;
    CHECK(!solve_mixed(a, l, {Rat(1, 3), Rat(3)}).has_value());
    for (long y = -5; y <= 5; ++y) CHECK(Rat(2 * y) != Rat(3));
  }
}

TEST_CASE("quotient descriptors") {
  CHECK(quotient_descriptor(1, IntMat{{2}}).to_string() == "Z/2");
  CHECK(quotient_descriptor(2, IntMat(2, 0)).to_string() == "Z^2");
  GroupDescriptor g = quotient_descriptor(2, IntMat{{2, 0}, {0, 0}});
  CHECK(g.free_rank == 1);
  REQUIRE(g.torsion.size() == 1);
  CHECK(g.torsion[0] == 2);
}

TEST_CASE("hermite normal form identities and lattice invariance") {
  SplitMix64 rng(11);
  for (int t = 0; t < 60; ++t) {
    long rows = rng.range(1, 3), cols = rng.range(1, 3);
    IntMat m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m.at(i, j) = rng.small_int(3);
    HnfResult h = hermite_normal_form(m);
    CHECK(m * h.v == h.h);
    CHECK(abs(determinant(h.v)) == 1);
    // column mixing leaves the form unchanged
    IntMat m2 = m;
    if (cols > 1) {
      m2.col_addmul(0, cols - 1, rng.small_int(2));
      m2.swap_cols(0, cols - 1);
    }
    CHECK(hermite_normal_form(m2).h == h.h);
  }
}

TEST_CASE("randomized snf recomposition and divisibility") {
  SplitMix64 rng(7);
  for (int t = 0; t < 120; ++t) {
    long rows = rng.range(1, 4), cols = rng.range(1, 4);
    IntMat m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m.at(i, j) = rng.small_int(6);
    SnfResult s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    auto div = s.divisors();
    for (size_t i = 0; i + 1 < div.size(); ++i) CHECK(div[i + 1] % div[i] == 0);
  }
}

TEST_CASE("factorized solvers agree with the direct ones") {
  SplitMix64 rng(23);
  for (int t = 0; t < 40; ++t) {
    long rows = rng.range(1, 4), cols = rng.range(1, 4);
    IntMat m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m.at(i, j) = rng.small_int(3);
    IntVec b(rows);
    for (auto& x : b) x = rng.small_int(4);
    IntSolver is(m);
    auto s1 = solve_integer(m, b);
    auto s2 = is.solve(b);
    CHECK(s1.has_value() == s2.has_value());
    if (s2) CHECK(m * *s2 == b);

    RatMat mq = RatMat::from(m);
    RatVec bq = to_rat(b);
    RatSolver rs(mq);
    auto r1 = solve_rational(mq, bq);
    auto r2 = rs.solve(bq);
    CHECK(r1.has_value() == r2.has_value());
    if (r2) CHECK(mq * *r2 == bq);

    RatMat a(rows, rng.range(0, 2));
    for (long i = 0; i < a.rows(); ++i)
      for (long j = 0; j < a.cols(); ++j) a.at(i, j) = rng.small_rat();
    MixedSolver ms(a, mq);
    auto m1 = solve_mixed(a, mq, bq);
    auto m2 = ms.solve(bq);
    CHECK(m1.has_value() == m2.has_value());
    if (m2) {
      RatVec lhs = a * m2->x;
      for (long j = 0; j < mq.cols(); ++j)
        for (long i = 0; i < rows; ++i) lhs[i] += mq.at(i, j) * Rat(m2->y[j]);
      CHECK(lhs == bq);
    }
  }
}

TEST_CASE("descriptor formatting") {
  GroupDescriptor g;
  CHECK(g.to_string() == "0");
  g.free_rank = 1;
  CHECK(g.to_string() == "Z");
  g.free_rank = 3;
  g.torsion = {Int(2), Int(6)};
  CHECK(g.to_string() == "Z^3 + Z/2 + Z/6");
  MixedGroupDescriptor m;
  m.qz_rank = 1;
  m.q_rank = 2;
  m.fg = g;
  CHECK(m.to_string() == "Z^3 + Z/2 + Z/6 + (Q/Z) + Q^2");
}

TEST_CASE("rational parsing") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat("-4") == Rat(-4));
  CHECK_THROWS_AS(parse_rat("3/0"), input_error);
  CHECK_THROWS_AS(parse_rat("x"), input_error);
}
