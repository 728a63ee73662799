#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sparkcx/io.hpp"
#include "sparkcx/selftest.hpp"

using namespace sparkcx;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run(std::vector<std::string> args) {
  std::vector<char*> argv;
  static std::string prog = "sparkcx";
  argv.push_back(prog.data());
  for (auto& a : args) argv.push_back(a.data());
  return io::run_cli((int)argv.size(), argv.data());
}

}  // namespace

TEST_CASE("scx parsing: the smallest circle") {
  std::string text = "scx v1\nvertices 3\nsimplex 0 1\nsimplex 1 2\nsimplex 0 2\n";
  SimplicialComplex k = io::parse_scx(text);
  CHECK(k.count(0) == 3);
  CHECK(k.count(1) == 3);
  auto c = k.cochain_complex(Coeff::Z);
  CHECK(z_cohomology(*c, 1).desc.free_rank == 1);
  // round trip to canonical form
  std::string canon = io::serialize_scx(k);
  CHECK(io::serialize_scx(io::parse_scx(canon)) == canon);
}

TEST_CASE("scx parse errors carry line numbers") {
  try {
    io::parse_scx("scx v1\nvertices 3\nsimplex 2 1\n");
    FAIL("expected parse error");
  } catch (const io::parse_error& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("strictly increase") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_scx("vertices 3\n"), io::parse_error);
  CHECK_THROWS_AS(io::parse_scx("scx v1\nvertices 3\nsimplex 0 1\nsimplex 0 1\n"),
                  io::parse_error);
  CHECK_THROWS_AS(io::parse_scx("scx v1\nvertices 2\nsimplex 0 5\n"), io::parse_error);
}

TEST_CASE("spc sections and rationals") {
  std::string text =
      "spc v1\n"
      "section C coeff q degrees 0 1\n"
      "deg 0 rows 1 cols 1\n"
      "0\n"
      "deg 1 rows 0 cols 1\n";
  auto sections = io::parse_spc(text);
  REQUIRE(sections.count("C") == 1);
  CochainComplex c = io::complex_from_section(sections.at("C"));
  CHECK(c.rank(0) == 1);
  CHECK(c.rank(1) == 1);

  CHECK_THROWS_AS(io::parse_spc("spc v1\nsection C coeff q degrees 0 0\n"
                                "deg 0 rows 1 cols 1\n3/0\n"),
                  io::parse_error);
}

TEST_CASE("spk round trip") {
  const auto& m = fixtures::model("circle6");
  SplitMix64 rng(2);
  Spark s = sample_spark(m->S, 0, rng);
  io::SpkData d = io::parse_spk(io::serialize_spk(s));
  CHECK(d.degree == 0);
  CHECK(d.a == s.a);
  CHECK(d.r == s.r);
  Spark back = make_spark(m->S, d.degree, d.a, d.r);
  CHECK(back.e == s.e);
}

TEST_CASE("cli determinism and exit codes") {
  std::string out1 = std::string(std::tmpnam(nullptr)) + ".txt";
  std::string out2 = std::string(std::tmpnam(nullptr)) + ".txt";
  CHECK(run({"cohomology", "rp2", "--coeff", "z", "--out", out1}) == 0);
  CHECK(run({"cohomology", "rp2", "--coeff", "z", "--out", out2}) == 0);
  std::string a = slurp(out1), b = slurp(out2);
  CHECK(a == b);
  CHECK(a.find("H^2: Z/2") != std::string::npos);
  CHECK(a.find("H^0: Z") != std::string::npos);
  std::remove(out1.c_str());
  std::remove(out2.c_str());

  CHECK(run({"cohomology", "/no/such/file.scx"}) == 2);
  CHECK(run({"nonsense-command"}) == 2);

  // a refused cover is a mathematical check failure
  std::string oct = std::string(std::tmpnam(nullptr)) + ".scx";
  {
    std::ofstream f(oct);
    f << io::serialize_scx(fixtures::octahedron());
  }
  CHECK(run({"check-cover", oct, "--out", std::string(std::tmpnam(nullptr))}) == 1);
  CHECK(run({"build-model", "cech", oct}) == 2);
  std::remove(oct.c_str());
}

TEST_CASE("cli spark-eq prints a witness that re-validates") {
  const auto& m = fixtures::model("circle6");
  RatVec ones(m->S->E->rank(0), Rat(1, 2));
  Spark s1 = make_spark(m->S, 0, m->S->apply_iota(0, ones), int_zeros(m->S->I->rank(1)));
  RatVec threes(m->S->E->rank(0), Rat(3, 2));
  Spark s2 = make_spark(m->S, 0, m->S->apply_iota(0, threes), int_zeros(m->S->I->rank(1)));
  std::string f1 = std::string(std::tmpnam(nullptr)) + ".spk";
  std::string f2 = std::string(std::tmpnam(nullptr)) + ".spk";
  {
    std::ofstream a(f1);
    a << io::serialize_spk(s1);
    std::ofstream b(f2);
    b << io::serialize_spk(s2);
  }
  std::string out = std::string(std::tmpnam(nullptr)) + ".txt";
  CHECK(run({"spark-eq", "circle6", f1, f2, "--out", out}) == 0);
  std::string rep = slurp(out);
  CHECK(rep.find("equivalent: yes") != std::string::npos);
  CHECK(rep.find("witness_recheck: ok") != std::string::npos);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(out.c_str());
}
