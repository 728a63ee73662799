#include "sparkcx/simplicial.hpp"

#include <algorithm>
#include <set>

namespace sparkcx {

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex SimplicialComplex::closure(
    long n_vertices, const std::vector<std::vector<int>>& simplices) {
  SimplicialComplex k;
  k.n_ = n_vertices;
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> stack;
  for (auto s : simplices) {
    if (s.empty()) throw input_error("empty simplex");
    for (size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] >= s[i + 1]) throw input_error("simplex vertices must strictly increase");
    if (s.back() >= n_vertices || s.front() < 0)
      throw input_error("simplex vertex out of range");
    stack.push_back(std::move(s));
  }
  while (!stack.empty()) {
    auto s = std::move(stack.back());
    stack.pop_back();
    if (!all.insert(s).second) continue;
    if (s.size() > 1)
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f;
        for (size_t j = 0; j < s.size(); ++j)
          if (j != i) f.push_back(s[j]);
        stack.push_back(std::move(f));
      }
  }
  int dmax = -1;
  for (const auto& s : all) dmax = std::max(dmax, (int)s.size() - 1);
  k.s_.resize(dmax + 1);
  for (const auto& s : all) k.s_[s.size() - 1].push_back(s);
  for (auto& lvl : k.s_) std::sort(lvl.begin(), lvl.end());
  k.index_.resize(k.s_.size());
  for (size_t q = 0; q < k.s_.size(); ++q)
    for (size_t i = 0; i < k.s_[q].size(); ++i) k.index_[q].emplace(k.s_[q][i], (long)i);
  return k;
}

const std::vector<std::vector<int>>& SimplicialComplex::simplices(int q) const {
  static const std::vector<std::vector<int>> empty;
  if (q < 0 || q > dim()) return empty;
  return s_[q];
}

long SimplicialComplex::index_of(int q, const std::vector<int>& s) const {
  if (q < 0 || q > dim()) return -1;
  auto it = index_[q].find(s);
  return it == index_[q].end() ? -1 : it->second;
}

bool SimplicialComplex::has(const std::vector<int>& s) const {
  return index_of((int)s.size() - 1, s) >= 0;
}

IntMat SimplicialComplex::coboundary(int q) const {
  IntMat m(count(q + 1), count(q));
  if (m.rows() == 0 || m.cols() == 0) return m;
  for (long t = 0; t < count(q + 1); ++t) {
    const auto& tau = s_[q + 1][t];
    for (size_t i = 0; i < tau.size(); ++i) {
      std::vector<int> face;
      for (size_t j = 0; j < tau.size(); ++j)
        if (j != i) face.push_back(tau[j]);
      long fi = index_of(q, face);
      m.at(t, fi) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

std::shared_ptr<const CochainComplex> SimplicialComplex::cochain_complex(Coeff c) const {
  int d = std::max(dim(), 0);
  std::vector<long> ranks;
  std::vector<RatMat> diffs;
  for (int q = 0; q <= d; ++q) {
    ranks.push_back(count(q));
    diffs.push_back(RatMat::from(coboundary(q)));
  }
  return std::make_shared<CochainComplex>(c, 0, std::move(ranks), std::move(diffs));
}

bool SimplicialComplex::is_z_acyclic() const {
  if (count(0) == 0) return false;
  auto c = cochain_complex(Coeff::Z);
  auto h0 = z_cohomology(*c, 0);
  GroupDescriptor point;
  point.free_rank = 1;
  if (!(h0.desc == point)) return false;
  for (int q = 1; q <= dim(); ++q)
    if (!z_cohomology(*c, q).desc.trivial()) return false;
  return true;
}

std::vector<std::vector<int>> SimplicialComplex::maximal_simplices() const {
  std::vector<std::vector<int>> out;
  for (int q = 0; q <= dim(); ++q) {
    for (const auto& s : s_[q]) {
      bool maximal = true;
      for (int qq = q + 1; qq <= dim() && maximal; ++qq)
        for (const auto& t : s_[qq]) {
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
        }
      if (maximal) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

long SimplicialComplex::total_simplices() const {
  long t = 0;
  for (int q = 0; q <= dim(); ++q) t += count(q);
  return t;
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
  // vertices of Sd(K) = simplices of K; simplices = chains under the face
  // partial order
  std::vector<std::pair<int, long>> verts;  // (q, id)
  std::map<std::pair<int, long>, int> vid;
  for (int q = 0; q <= k.dim(); ++q)
    for (long i = 0; i < k.count(q); ++i) {
      vid[{q, i}] = (int)verts.size();
      verts.push_back({q, i});
    }
  auto is_face = [&](const std::pair<int, long>& a, const std::pair<int, long>& b) {
    const auto& sa = k.simplex(a.first, a.second);
    const auto& sb = k.simplex(b.first, b.second);
    return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
  };
  // maximal chains through maximal simplices
  std::vector<std::vector<int>> chains;
  std::vector<std::pair<int, long>> chain;
  auto emit = [&] {
    std::vector<int> c;
    for (auto& e : chain) c.push_back(vid[e]);
    std::sort(c.begin(), c.end());
    chains.push_back(std::move(c));
  };
  std::function<void(std::pair<int, long>)> grow = [&](std::pair<int, long> top) {
    chain.push_back(top);
    if (top.first == 0) {
      emit();
    } else {
      // extend downward by any facet
      const auto& s = k.simplex(top.first, top.second);
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f;
        for (size_t j = 0; j < s.size(); ++j)
          if (j != i) f.push_back(s[j]);
        grow({top.first - 1, k.index_of(top.first - 1, f)});
      }
    }
    chain.pop_back();
  };
  for (const auto& m : k.maximal_simplices()) {
    int q = (int)m.size() - 1;
    grow({q, k.index_of(q, m)});
  }
  (void)is_face;
  return SimplicialComplex::closure((long)verts.size(), chains);
}

// ---------------------------------------------------------------------------
// SimplicialMap

void SimplicialMap::validate() const {
  if ((long)vertex_image.size() != src->n_vertices())
    throw input_error("simplicial map: wrong vertex count");
  for (int v : vertex_image)
    if (v < 0 || v >= dst->n_vertices()) throw input_error("simplicial map: image out of range");
  for (int q = 0; q <= src->dim(); ++q)
    for (const auto& s : src->simplices(q)) {
      std::set<int> img;
      for (int v : s) img.insert(vertex_image[v]);
      std::vector<int> t(img.begin(), img.end());
      if (!dst->has(t))
        throw input_error("simplicial map: image of a simplex is not a simplex");
    }
}

namespace {

// sort with permutation sign; returns 0 on repeats
int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) {
        std::swap(v[i], v[j]);
        sign = -sign;
      }
    }
  return sign;
}

}  // namespace

RatMat SimplicialMap::cochain_pullback(int q) const {
  RatMat m(src->count(q), dst->count(q));
  for (long i = 0; i < src->count(q); ++i) {
    std::vector<int> img;
    for (int v : src->simplex(q, i)) img.push_back(vertex_image[v]);
    int sign = sort_sign(img);
    if (sign == 0) continue;
    long j = dst->index_of(q, img);
    if (j < 0) throw invariant_error("pullback: image simplex missing");
    m.at(i, j) = sign;
  }
  return m;
}

// ---------------------------------------------------------------------------
// subcomplexes

bool Subcomplex::empty() const {
  for (const auto& lvl : ids)
    if (!lvl.empty()) return false;
  return true;
}

long Subcomplex::local_index(int q, long parent_id) const {
  if (q < 0 || q > dim()) return -1;
  auto it = std::lower_bound(ids[q].begin(), ids[q].end(), parent_id);
  if (it == ids[q].end() || *it != parent_id) return -1;
  return it - ids[q].begin();
}

Subcomplex intersect(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out;
  int d = std::min(a.dim(), b.dim());
  out.ids.resize(std::max(d + 1, 0));
  for (int q = 0; q <= d; ++q)
    std::set_intersection(a.ids[q].begin(), a.ids[q].end(), b.ids[q].begin(),
                          b.ids[q].end(), std::back_inserter(out.ids[q]));
  while (!out.ids.empty() && out.ids.back().empty()) out.ids.pop_back();
  return out;
}

Subcomplex full_subcomplex(const SimplicialComplex& k) {
  Subcomplex s;
  s.ids.resize(k.dim() + 1);
  for (int q = 0; q <= k.dim(); ++q)
    for (long i = 0; i < k.count(q); ++i) s.ids[q].push_back(i);
  return s;
}

Subcomplex closed_star(const SimplicialComplex& k, int v) {
  std::vector<std::set<long>> keep(k.dim() + 1);
  for (int q = 0; q <= k.dim(); ++q)
    for (long i = 0; i < k.count(q); ++i) {
      const auto& s = k.simplex(q, i);
      if (!std::binary_search(s.begin(), s.end(), v)) continue;
      // all faces of s belong to the closed star
      long m = (long)s.size();
      for (long mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> f;
        for (long b = 0; b < m; ++b)
          if (mask & (1L << b)) f.push_back(s[b]);
        keep[(int)f.size() - 1].insert(k.index_of((int)f.size() - 1, f));
      }
    }
  Subcomplex out;
  out.ids.resize(k.dim() + 1);
  for (int q = 0; q <= k.dim(); ++q) out.ids[q].assign(keep[q].begin(), keep[q].end());
  while (!out.ids.empty() && out.ids.back().empty()) out.ids.pop_back();
  return out;
}

IntMat sub_coboundary(const SimplicialComplex& parent, const Subcomplex& s, int q) {
  IntMat m(s.count(q + 1), s.count(q));
  for (long t = 0; t < s.count(q + 1); ++t) {
    const auto& tau = parent.simplex(q + 1, s.ids[q + 1][t]);
    for (size_t i = 0; i < tau.size(); ++i) {
      std::vector<int> face;
      for (size_t j = 0; j < tau.size(); ++j)
        if (j != i) face.push_back(tau[j]);
      long pid = parent.index_of(q, face);
      long li = s.local_index(q, pid);
      if (li < 0) throw invariant_error("subcomplex not face-closed");
      m.at(t, li) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

bool sub_is_z_acyclic(const SimplicialComplex& parent, const Subcomplex& s) {
  if (s.count(0) == 0) return false;
  std::vector<long> ranks;
  std::vector<RatMat> diffs;
  int d = std::max(s.dim(), 0);
  for (int q = 0; q <= d; ++q) {
    ranks.push_back(s.count(q));
    diffs.push_back(RatMat::from(sub_coboundary(parent, s, q)));
  }
  CochainComplex c(Coeff::Z, 0, std::move(ranks), std::move(diffs));
  auto h0 = z_cohomology(c, 0);
  GroupDescriptor point;
  point.free_rank = 1;
  if (!(h0.desc == point)) return false;
  for (int q = 1; q <= d; ++q)
    if (!z_cohomology(c, q).desc.trivial()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// covers

bool CoverData::good() const {
  if (!covers) return false;
  for (const auto& lvl : acyclic)
    for (bool b : lvl)
      if (!b) return false;
  return true;
}

std::optional<std::pair<int, long>> CoverData::first_bad() const {
  for (int p = 0; p < (int)acyclic.size(); ++p)
    for (long i = 0; i < (long)acyclic[p].size(); ++i)
      if (!acyclic[p][i]) return {{p, i}};
  return std::nullopt;
}

std::string CoverData::describe_bad() const {
  if (!covers) return "members do not cover the complex";
  auto b = first_bad();
  if (!b) return "";
  std::string s = "intersection of members {";
  const auto& verts = nerve.simplex(b->first, b->second);
  for (size_t i = 0; i < verts.size(); ++i)
    s += (i ? "," : "") + std::to_string(verts[i]);
  s += "} is not acyclic";
  return s;
}

CoverData make_cover(std::shared_ptr<const SimplicialComplex> k,
                     std::vector<Subcomplex> members) {
  CoverData cd;
  cd.complex = k;
  cd.members = std::move(members);
  long n = (long)cd.members.size();

  // coverage
  cd.covers = true;
  for (int q = 0; q <= k->dim() && cd.covers; ++q)
    for (long i = 0; i < k->count(q); ++i) {
      bool found = false;
      for (const auto& m : cd.members)
        if (m.contains(q, i)) {
          found = true;
          break;
        }
      if (!found) {
        cd.covers = false;
        break;
      }
    }

  // nerve by dimension-increasing extension
  std::vector<std::vector<int>> nerve_simplices;
  std::vector<std::vector<Subcomplex>> inters;
  std::vector<std::vector<std::vector<int>>> level_simp;

  std::vector<Subcomplex> cur_inter;
  std::vector<std::vector<int>> cur;
  for (int i = 0; i < n; ++i) {
    if (cd.members[i].empty()) continue;
    cur.push_back({i});
    cur_inter.push_back(cd.members[i]);
  }
  while (!cur.empty()) {
    level_simp.push_back(cur);
    inters.push_back(cur_inter);
    for (const auto& s : cur) nerve_simplices.push_back(s);
    std::vector<std::vector<int>> next;
    std::vector<Subcomplex> next_inter;
    for (size_t t = 0; t < cur.size(); ++t)
      for (int j = cur[t].back() + 1; j < n; ++j) {
        Subcomplex meet = intersect(cur_inter[t], cd.members[j]);
        if (meet.empty()) continue;
        auto s = cur[t];
        s.push_back(j);
        next.push_back(std::move(s));
        next_inter.push_back(std::move(meet));
      }
    cur = std::move(next);
    cur_inter = std::move(next_inter);
  }
  cd.nerve = SimplicialComplex::closure(n, nerve_simplices);

  // align intersections with the nerve's ordering
  cd.intersections.resize(level_simp.size());
  cd.acyclic.resize(level_simp.size());
  for (int p = 0; p < (int)level_simp.size(); ++p) {
    cd.intersections[p].resize(cd.nerve.count(p));
    cd.acyclic[p].assign(cd.nerve.count(p), false);
    for (size_t t = 0; t < level_simp[p].size(); ++t) {
      long id = cd.nerve.index_of(p, level_simp[p][t]);
      cd.intersections[p][id] = inters[p][t];
      cd.acyclic[p][id] = sub_is_z_acyclic(*k, inters[p][t]);
    }
  }
  return cd;
}

CoverData star_cover(std::shared_ptr<const SimplicialComplex> k) {
  std::vector<Subcomplex> members;
  for (int v = 0; v < k->n_vertices(); ++v) members.push_back(closed_star(*k, v));
  return make_cover(std::move(k), std::move(members));
}

// ---------------------------------------------------------------------------
// Cech double complex

CechComplex cech_double_complex(std::shared_ptr<const SimplicialComplex> k,
                                std::shared_ptr<const CoverData> cover, Coeff coeff) {
  if (!cover->covers) throw input_error("cech_double_complex: cover does not cover");
  CechComplex out;
  out.k = k;
  out.cover = cover;
  out.coeff = coeff;

  const auto& nerve = cover->nerve;
  long pm = std::max(nerve.dim(), 0);
  long qm = std::max(k->dim(), 0);

  // basis offsets
  out.basis.offsets.resize(pm + 1);
  std::vector<std::vector<long>> ranks(pm + 1, std::vector<long>(qm + 1, 0));
  for (long p = 0; p <= pm; ++p) {
    out.basis.offsets[p].resize(qm + 1);
    for (long q = 0; q <= qm; ++q) {
      out.basis.offsets[p][q].resize(nerve.count((int)p));
      long off = 0;
      for (long a = 0; a < nerve.count((int)p); ++a) {
        out.basis.offsets[p][q][a] = off;
        off += cover->intersections[p][a].count((int)q);
      }
      ranks[p][q] = off;
    }
  }

  // vertical differentials: block-diagonal simplicial coboundaries
  std::vector<std::vector<RatMat>> dver(pm + 1), delta(pm + 1);
  for (long p = 0; p <= pm; ++p) {
    dver[p].resize(qm + 1);
    delta[p].resize(qm + 1);
    for (long q = 0; q <= qm; ++q) {
      RatMat dv(ranks[p][q == qm ? q : q + 1], 0);  // placeholder, set below
      dv = RatMat((q + 1 <= qm) ? ranks[p][q + 1] : 0, ranks[p][q]);
      for (long a = 0; a < nerve.count((int)p); ++a) {
        const Subcomplex& s = cover->intersections[p][a];
        IntMat blk = sub_coboundary(*k, s, (int)q);
        long roff = (q + 1 <= qm) ? out.basis.offsets[p][q + 1][a] : 0;
        long coff = out.basis.offsets[p][q][a];
        for (long i = 0; i < blk.rows(); ++i)
          for (long j = 0; j < blk.cols(); ++j)
            if (blk.at(i, j) != 0) dv.at(roff + i, coff + j) = Rat(blk.at(i, j));
      }
      dver[p][q] = std::move(dv);

      // horizontal: alternating restriction into each (p+1)-nerve simplex
      RatMat dl((p + 1 <= pm) ? ranks[p + 1][q] : 0, ranks[p][q]);
      if (p + 1 <= pm) {
        for (long b = 0; b < nerve.count((int)p + 1); ++b) {
          const auto& beta = nerve.simplex((int)p + 1, b);
          const Subcomplex& sb = cover->intersections[p + 1][b];
          for (size_t i = 0; i < beta.size(); ++i) {
            std::vector<int> alpha;
            for (size_t j = 0; j < beta.size(); ++j)
              if (j != i) alpha.push_back(beta[j]);
            long aid = nerve.index_of((int)p, alpha);
            const Subcomplex& sa = cover->intersections[p][aid];
            int sign = (i % 2 == 0) ? 1 : -1;
            for (long ls = 0; ls < sb.count((int)q); ++ls) {
              long pid = sb.ids[q][ls];
              long la = sa.local_index((int)q, pid);
              if (la < 0) throw invariant_error("cech: face intersection mismatch");
              dl.at(out.basis.offsets[p + 1][q][b] + ls,
                    out.basis.offsets[p][q][aid] + la) += sign;
            }
          }
        }
      }
      delta[p][q] = std::move(dl);
    }
  }

  out.dc = DoubleComplex(coeff, std::move(ranks), std::move(delta), std::move(dver));
  out.tot = totalize(out.dc);

  out.global = k->cochain_complex(coeff);
  out.nerve_cochains = nerve.cochain_complex(coeff);

  // global edge: e |-> (e|_member) placed in column p = 0
  std::map<int, RatMat> ge;
  for (int deg = 0; deg <= (int)qm; ++deg) {
    RatMat m(out.tot.layout.rank(deg), out.global->rank(deg));
    const TotalBlock* blk = out.tot.layout.block(deg, 0, deg);
    if (blk) {
      for (long a = 0; a < nerve.count(0); ++a) {
        const Subcomplex& s = cover->intersections[0][a];
        for (long ls = 0; ls < s.count(deg); ++ls)
          m.at(blk->offset + out.basis.index(0, deg, a, ls), s.ids[deg][ls]) = 1;
      }
    }
    ge.emplace(deg, std::move(m));
  }
  out.global_edge = ChainMap(out.global, out.tot.total, std::move(ge));

  // nerve edge: y |-> constant functions on the intersections, row q = 0
  std::map<int, RatMat> ne;
  for (int deg = 0; deg <= (int)pm; ++deg) {
    RatMat m(out.tot.layout.rank(deg), out.nerve_cochains->rank(deg));
    const TotalBlock* blk = out.tot.layout.block(deg, deg, 0);
    if (blk) {
      for (long a = 0; a < nerve.count(deg); ++a) {
        const Subcomplex& s = cover->intersections[deg][a];
        for (long ls = 0; ls < s.count(0); ++ls)
          m.at(blk->offset + out.basis.index(deg, 0, a, ls), a) = 1;
      }
    }
    ne.emplace(deg, std::move(m));
  }
  out.nerve_edge = ChainMap(out.nerve_cochains, out.tot.total, std::move(ne));

  return out;
}

}  // namespace sparkcx
