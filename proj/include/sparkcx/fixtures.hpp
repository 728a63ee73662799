#pragma once

#include "sparkcx/bundle.hpp"

namespace sparkcx {
namespace fixtures {

// raw complexes
SimplicialComplex circle(int n);
SimplicialComplex icosahedron();
SimplicialComplex octahedron();
SimplicialComplex grid_torus(int nx, int ny);
SimplicialComplex grid_klein(int nx, int ny);
SimplicialComplex hemi_dodecahedron();  // 16-vertex projective plane
SimplicialComplex rp2_six_vertex();     // minimal projective plane
SimplicialComplex torus_seven_vertex();
SimplicialComplex point();

// A named fixture: complex plus a machine-verified good cover.  Fixtures
// whose natural star cover fails the acyclicity check carry a block or
// face-patch cover instead; the kind string records the choice.
struct Fixture {
  std::string name;
  std::shared_ptr<const SimplicialComplex> complex;
  std::shared_ptr<const CoverData> cover;
  std::string cover_kind;
};

const std::vector<std::string>& names();  // point circle3 circle6 circle12
                                          // sphere torus rp2 klein
const Fixture& get(const std::string& name);

// cached models (built on first use)
const CechModelPtr& model(const std::string& name);
const HypersparkModel& hyperspark(const std::string& name);

// fundamental 1-cycle of a circle fixture (all edges oriented around)
IntVec circle_cycle(const SimplicialComplex& k);

// expected integral cohomology of every fixture, for the oracle tables
struct CohomologyRow {
  std::string name;
  std::vector<GroupDescriptor> h;  // degrees 0..2
};
std::vector<CohomologyRow> expected_cohomology();

}  // namespace fixtures
}  // namespace sparkcx
