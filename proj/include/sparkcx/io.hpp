#pragma once

#include "sparkcx/fixtures.hpp"

namespace sparkcx {
namespace io {

struct parse_error : std::runtime_error {
  long line = 0;
  parse_error(const std::string& what, long line_no)
      : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
};

// .scx --------------------------------------------------------------------
//   scx v1
//   vertices N
//   simplex i j k ...        (one line per maximal simplex, strictly increasing)
SimplicialComplex parse_scx(const std::string& text);
std::string serialize_scx(const SimplicialComplex& k);

// .spc --------------------------------------------------------------------
// named matrix sections for raw complexes and chain maps:
//   spc v1
//   section NAME coeff q|z degrees KMIN KMAX
//   deg K rows R cols C
//   <R lines of C entries, integers or p/q>
struct SpcSection {
  std::string name;
  Coeff coeff = Coeff::Q;
  int kmin = 0, kmax = 0;
  std::map<int, RatMat> blocks;
};
std::map<std::string, SpcSection> parse_spc(const std::string& text);
// a section whose blocks are the differentials d_k (rank(k+1) x rank(k))
CochainComplex complex_from_section(const SpcSection& s);

// .spk --------------------------------------------------------------------
//   spk v1
//   degree K
//   a <entries>
//   r <entries>
struct SpkData {
  int degree = 0;
  RatVec a;
  IntVec r;
};
SpkData parse_spk(const std::string& text);
std::string serialize_spk(const Spark& s);

// .lbd --------------------------------------------------------------------
//   lbd v1
//   g ALPHA BETA <entries>    (0-cochain on the overlap, vertex order)
//   a ALPHA <entries>         (1-cochain on the member, edge order)
DiscreteLineBundle parse_lbd(const std::string& text, const CechModelPtr& model);
std::string serialize_lbd(const DiscreteLineBundle& l);

// deterministic report ------------------------------------------------------
struct Report {
  std::string command;
  uint64_t seed = 0;
  long budget = 0;
  std::vector<std::pair<std::string, std::string>> sections;
  int exit_code = 0;  // 0 ok, 1 math failure, 2 input error

  void add(const std::string& key, const std::string& value);
  std::string to_string() const;
};

int run_cli(int argc, char** argv);

}  // namespace io
}  // namespace sparkcx
