#include "sparkcx/fixtures.hpp"

#include <algorithm>
#include <set>

namespace sparkcx {
namespace fixtures {

SimplicialComplex circle(int n) {
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e = {i, (i + 1) % n};
    std::sort(e.begin(), e.end());
    edges.push_back(e);
  }
  return SimplicialComplex::closure(n, edges);
}

SimplicialComplex point() { return SimplicialComplex::closure(1, {{0}}); }

SimplicialComplex icosahedron() {
  auto u = [](int i) { return 1 + (i % 5); };
  auto l = [](int i) { return 6 + (i % 5); };
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < 5; ++i) {
    faces.push_back({0, u(i), u(i + 1)});
    faces.push_back({u(i), u(i + 1), l(i)});
    faces.push_back({l(i), l(i + 1), u(i + 1)});
    faces.push_back({11, l(i), l(i + 1)});
  }
  for (auto& f : faces) std::sort(f.begin(), f.end());
  return SimplicialComplex::closure(12, faces);
}

SimplicialComplex octahedron() {
  std::vector<std::vector<int>> faces = {{0, 1, 2}, {0, 2, 4}, {0, 3, 4}, {0, 1, 3},
                                         {1, 2, 5}, {2, 4, 5}, {3, 4, 5}, {1, 3, 5}};
  return SimplicialComplex::closure(6, faces);
}

namespace {

std::vector<std::vector<int>> grid_cells(int nx, int ny, bool klein,
                                         int bx0 = -1, int by0 = -1) {
  auto vid = [&](int x, int y) {
    // normalize; the klein seam flips x when y wraps
    while (y >= ny) {
      y -= ny;
      if (klein) x = (nx - x) % nx;
    }
    while (y < 0) {
      y += ny;
      if (klein) x = (nx - x) % nx;
    }
    x = ((x % nx) + nx) % nx;
    return x * ny + y;
  };
  std::vector<std::vector<int>> tris;
  auto want = [&](int cx, int cy) {
    if (bx0 < 0) return true;
    int dx = cx - bx0, dy = cy - by0;
    return dx >= 0 && dx < 2 && dy >= 0 && dy < 2;
  };
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      if (!want(x, y)) continue;
      std::vector<int> t1 = {vid(x, y), vid(x + 1, y), vid(x + 1, y + 1)};
      std::vector<int> t2 = {vid(x, y), vid(x, y + 1), vid(x + 1, y + 1)};
      std::sort(t1.begin(), t1.end());
      std::sort(t2.begin(), t2.end());
      tris.push_back(t1);
      tris.push_back(t2);
    }
  return tris;
}

Subcomplex subcomplex_from_maximal(const SimplicialComplex& k,
                                   const std::vector<std::vector<int>>& maximal) {
  std::vector<std::set<long>> keep(k.dim() + 1);
  std::vector<std::vector<int>> stack = maximal;
  std::set<std::vector<int>> seen;
  while (!stack.empty()) {
    auto s = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(s).second) continue;
    long id = k.index_of((int)s.size() - 1, s);
    if (id < 0) throw input_error("subcomplex: simplex not in parent");
    keep[(int)s.size() - 1].insert(id);
    if (s.size() > 1)
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f;
        for (size_t j = 0; j < s.size(); ++j)
          if (j != i) f.push_back(s[j]);
        stack.push_back(std::move(f));
      }
  }
  Subcomplex out;
  out.ids.resize(k.dim() + 1);
  for (int q = 0; q <= k.dim(); ++q) out.ids[q].assign(keep[q].begin(), keep[q].end());
  while (!out.ids.empty() && out.ids.back().empty()) out.ids.pop_back();
  return out;
}

}  // namespace

SimplicialComplex grid_torus(int nx, int ny) {
  return SimplicialComplex::closure(nx * ny, grid_cells(nx, ny, false));
}

SimplicialComplex grid_klein(int nx, int ny) {
  return SimplicialComplex::closure(nx * ny, grid_cells(nx, ny, true));
}

SimplicialComplex hemi_dodecahedron() {
  // Petersen-graph vertex set: outer cycle 0..4, inner 5..9 (spokes i, 5+i;
  // inner steps of two).  Six pentagons; a center vertex triangulates each.
  std::vector<std::vector<int>> pent;
  pent.push_back({0, 1, 2, 3, 4});
  for (int i = 0; i < 5; ++i)
    pent.push_back({i, (i + 1) % 5, 5 + (i + 1) % 5, 5 + (i + 3) % 5, 5 + i});
  std::vector<std::vector<int>> faces;
  for (int f = 0; f < 6; ++f) {
    int c = 10 + f;
    const auto& cyc = pent[f];
    for (int j = 0; j < 5; ++j) {
      std::vector<int> t = {c, cyc[j], cyc[(j + 1) % 5]};
      std::sort(t.begin(), t.end());
      faces.push_back(t);
    }
  }
  return SimplicialComplex::closure(16, faces);
}

SimplicialComplex rp2_six_vertex() {
  std::vector<std::vector<int>> faces = {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5},
                                         {0, 4, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 5},
                                         {2, 3, 4}, {3, 4, 5}};
  return SimplicialComplex::closure(6, faces);
}

SimplicialComplex torus_seven_vertex() {
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < 7; ++i) {
    std::vector<int> a = {i, (i + 1) % 7, (i + 3) % 7};
    std::vector<int> b = {i, (i + 2) % 7, (i + 3) % 7};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    faces.push_back(a);
    faces.push_back(b);
  }
  return SimplicialComplex::closure(7, faces);
}

// ---------------------------------------------------------------------------
// fixture registry

namespace {

Fixture build_star_fixture(const std::string& name, SimplicialComplex k) {
  Fixture f;
  f.name = name;
  f.complex = std::make_shared<SimplicialComplex>(std::move(k));
  f.cover = std::make_shared<CoverData>(star_cover(f.complex));
  f.cover_kind = "star";
  return f;
}

Fixture build_sphere_fixture() {
  // the icosahedron if its star cover verifies, else the subdivided
  // octahedron fallback
  Fixture f;
  f.name = "sphere";
  auto ico = std::make_shared<SimplicialComplex>(icosahedron());
  auto cov = std::make_shared<CoverData>(star_cover(ico));
  if (cov->good()) {
    f.complex = ico;
    f.cover = cov;
    f.cover_kind = "star(icosahedron)";
    return f;
  }
  auto sd = std::make_shared<SimplicialComplex>(barycentric_subdivision(octahedron()));
  f.complex = sd;
  f.cover = std::make_shared<CoverData>(star_cover(sd));
  f.cover_kind = "star(sd(octahedron))";
  if (!f.cover->good()) throw invariant_error("sphere fixture: no good cover found");
  return f;
}

Fixture build_grid_fixture(const std::string& name, bool klein) {
  const int nx = 6, ny = 6;
  Fixture f;
  f.name = name;
  f.complex = std::make_shared<SimplicialComplex>(klein ? grid_klein(nx, ny)
                                                        : grid_torus(nx, ny));
  // nine 2x2-cell blocks
  std::vector<Subcomplex> members;
  for (int bi = 0; bi < 3; ++bi)
    for (int bj = 0; bj < 3; ++bj)
      members.push_back(subcomplex_from_maximal(
          *f.complex, grid_cells(nx, ny, klein, 2 * bi, 2 * bj)));
  auto cov = std::make_shared<CoverData>(make_cover(f.complex, std::move(members)));
  if (cov->good()) {
    f.cover = cov;
    f.cover_kind = "blocks3x3";
    return f;
  }
  // fall back to the star cover
  f.cover = std::make_shared<CoverData>(star_cover(f.complex));
  f.cover_kind = "star";
  if (!f.cover->good()) throw invariant_error(name + " fixture: no good cover found");
  return f;
}

Fixture build_rp2_fixture() {
  Fixture f;
  f.name = "rp2";
  f.complex = std::make_shared<SimplicialComplex>(hemi_dodecahedron());
  std::vector<std::vector<int>> pent;
  pent.push_back({0, 1, 2, 3, 4});
  for (int i = 0; i < 5; ++i)
    pent.push_back({i, (i + 1) % 5, 5 + (i + 1) % 5, 5 + (i + 3) % 5, 5 + i});
  std::vector<Subcomplex> members;
  for (int fi = 0; fi < 6; ++fi) {
    std::vector<std::vector<int>> tris;
    for (int j = 0; j < 5; ++j) {
      std::vector<int> t = {10 + fi, pent[fi][j], pent[fi][(j + 1) % 5]};
      std::sort(t.begin(), t.end());
      tris.push_back(t);
    }
    members.push_back(subcomplex_from_maximal(*f.complex, tris));
  }
  f.cover = std::make_shared<CoverData>(make_cover(f.complex, std::move(members)));
  f.cover_kind = "pentagons";
  if (!f.cover->good()) throw invariant_error("rp2 fixture: pentagon cover not good");
  return f;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"point",  "circle3", "circle6", "circle12",
                                             "sphere", "torus",   "rp2",     "klein"};
  return n;
}

namespace {

// the 3-cycle's star cover is not good (any two stars meet in an edge plus
// an opposite vertex); the three closed edges do form a good cover
Fixture build_circle3_fixture() {
  Fixture f;
  f.name = "circle3";
  f.complex = std::make_shared<SimplicialComplex>(circle(3));
  std::vector<Subcomplex> members;
  for (long e = 0; e < f.complex->count(1); ++e)
    members.push_back(subcomplex_from_maximal(*f.complex, {f.complex->simplex(1, e)}));
  f.cover = std::make_shared<CoverData>(make_cover(f.complex, std::move(members)));
  f.cover_kind = "edges";
  if (!f.cover->good()) throw invariant_error("circle3 fixture: edge cover not good");
  return f;
}

}  // namespace

const Fixture& get(const std::string& name) {
  static std::map<std::string, Fixture> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  Fixture f;
  if (name == "point")
    f = build_star_fixture(name, point());
  else if (name == "circle3")
    f = build_circle3_fixture();
  else if (name == "circle6")
    f = build_star_fixture(name, circle(6));
  else if (name == "circle12")
    f = build_star_fixture(name, circle(12));
  else if (name == "sphere")
    f = build_sphere_fixture();
  else if (name == "torus")
    f = build_grid_fixture(name, false);
  else if (name == "klein")
    f = build_grid_fixture(name, true);
  else if (name == "rp2")
    f = build_rp2_fixture();
  else
    throw input_error("unknown fixture: " + name);
  return cache.emplace(name, std::move(f)).first->second;
}

const CechModelPtr& model(const std::string& name) {
  static std::map<std::string, CechModelPtr> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  const Fixture& f = get(name);
  return cache.emplace(name, cech_spark_complex(f.complex, f.cover)).first->second;
}

const HypersparkModel& hyperspark(const std::string& name) {
  static std::map<std::string, HypersparkModel> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  return cache.emplace(name, hyperspark_complex(model(name))).first->second;
}

IntVec circle_cycle(const SimplicialComplex& k) {
  // orient each edge {i, j} from lower to higher and walk around the cycle:
  // the edge {i, i+1} appears with +1, the closing edge {0, n-1} with -1
  long n = k.n_vertices();
  IntVec z(k.count(1), Int(0));
  for (long i = 0; i < n; ++i) {
    int a = (int)i, b = (int)((i + 1) % n);
    std::vector<int> e = {std::min(a, b), std::max(a, b)};
    long id = k.index_of(1, e);
    if (id < 0) throw input_error("circle_cycle: not a circle complex");
    z[id] += (a < b) ? 1 : -1;
  }
  return z;
}

std::vector<CohomologyRow> expected_cohomology() {
  auto fg = [](long free, std::vector<long> tor = {}) {
    GroupDescriptor g;
    g.free_rank = free;
    for (long t : tor) g.torsion.push_back(Int(t));
    return g;
  };
  std::vector<CohomologyRow> rows;
  rows.push_back({"point", {fg(1), fg(0), fg(0)}});
  rows.push_back({"circle3", {fg(1), fg(1), fg(0)}});
  rows.push_back({"circle6", {fg(1), fg(1), fg(0)}});
  rows.push_back({"circle12", {fg(1), fg(1), fg(0)}});
  rows.push_back({"sphere", {fg(1), fg(0), fg(1)}});
  rows.push_back({"torus", {fg(1), fg(2), fg(1)}});
  rows.push_back({"rp2", {fg(1), fg(0), fg(0, {2})}});
  rows.push_back({"klein", {fg(1), fg(1), fg(0, {2})}});
  return rows;
}

}  // namespace fixtures
}  // namespace sparkcx
