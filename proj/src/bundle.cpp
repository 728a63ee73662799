#include "sparkcx/bundle.hpp"

namespace sparkcx {

namespace {

long nerve_edges(const CechModel& m) { return m.cover->nerve.count(1); }

// value of delta g on nerve triangle t at local vertex v
Rat delta_g_value(const DiscreteLineBundle& l, long tri, long local_vertex) {
  const auto& m = *l.model;
  const auto& nerve = m.cover->nerve;
  const auto& tv = nerve.simplex(2, tri);
  const Subcomplex& inter = m.cover->intersections[2][tri];
  long parent_vertex = inter.ids[0][local_vertex];
  Rat acc = 0;
  for (int i = 0; i < 3; ++i) {
    std::vector<int> face;
    for (int j = 0; j < 3; ++j)
      if (j != i) face.push_back(tv[j]);
    long eid = nerve.index_of(1, face);
    long lv = m.cover->intersections[1][eid].local_index(0, parent_vertex);
    if (lv < 0) throw invariant_error("bundle: vertex missing from face intersection");
    Rat val = l.g[eid][lv];
    acc += (i % 2 == 0) ? val : -val;
  }
  return acc;
}

}  // namespace

void DiscreteLineBundle::validate() const {
  const auto& m = *model;
  const auto& nerve = m.cover->nerve;
  if ((long)g.size() != nerve_edges(m) || (long)a.size() != (long)m.cover->members.size())
    throw input_error("bundle: wrong number of components");
  for (long e = 0; e < nerve_edges(m); ++e)
    if ((long)g[e].size() != m.cover->intersections[1][e].count(0))
      throw input_error("bundle: g size mismatch on overlap " + std::to_string(e));
  for (long al = 0; al < (long)a.size(); ++al)
    if ((long)a[al].size() != m.cover->intersections[0][al].count(1))
      throw input_error("bundle: A size mismatch on member " + std::to_string(al));

  // cocycle: delta g integral and constant per triple overlap
  for (long t = 0; t < nerve.count(2); ++t) {
    const Subcomplex& inter = m.cover->intersections[2][t];
    Rat first;
    for (long v = 0; v < inter.count(0); ++v) {
      Rat val = delta_g_value(*this, t, v);
      if (v == 0)
        first = val;
      else if (val != first)
        throw input_error("bundle: delta g not constant on triple overlap " +
                          std::to_string(t));
    }
    if (inter.count(0) > 0 && !is_integral(first))
      throw input_error("bundle: delta g not integral on triple overlap " +
                        std::to_string(t));
  }

  // compatibility: A_alpha - A_beta = d g on pairwise overlaps
  for (long e = 0; e < nerve_edges(m); ++e) {
    const auto& ev = nerve.simplex(1, e);
    const Subcomplex& inter = m.cover->intersections[1][e];
    RatVec dg = RatMat::from(sub_coboundary(*m.K, inter, 0)) * g[e];
    for (long le = 0; le < inter.count(1); ++le) {
      long pid = inter.ids[1][le];
      long la = m.cover->intersections[0][ev[0]].local_index(1, pid);
      long lb = m.cover->intersections[0][ev[1]].local_index(1, pid);
      if (la < 0 || lb < 0) throw invariant_error("bundle: edge outside members");
      if (a[ev[0]][la] - a[ev[1]][lb] != dg[le])
        throw input_error("bundle: connection incompatible with g on overlap " +
                          std::to_string(e));
    }
  }
}

DiscreteLineBundle trivial_bundle(const CechModelPtr& m) {
  DiscreteLineBundle l;
  l.model = m;
  l.g.resize(nerve_edges(*m));
  for (long e = 0; e < nerve_edges(*m); ++e)
    l.g[e] = rat_zeros(m->cover->intersections[1][e].count(0));
  l.a.resize(m->cover->members.size());
  for (size_t al = 0; al < m->cover->members.size(); ++al)
    l.a[al] = rat_zeros(m->cover->intersections[0][al].count(1));
  return l;
}

IntVec bundle_cocycle(const DiscreteLineBundle& l) {
  const auto& m = *l.model;
  IntVec r(m.cover->nerve.count(2));
  for (long t = 0; t < m.cover->nerve.count(2); ++t) {
    if (m.cover->intersections[2][t].count(0) == 0)
      throw invariant_error("bundle: triple overlap without vertices");
    Rat v = delta_g_value(l, t, 0);
    r[t] = v.get_num();
  }
  return r;
}

Spark bundle_to_spark(const DiscreteLineBundle& l) {
  l.validate();
  const auto& m = *l.model;
  const auto& lay = m.layout();
  RatVec a_total = rat_zeros(m.cq.tot.total->rank(1));
  const TotalBlock* b01 = lay.block(1, 0, 1);
  if (b01)
    for (long al = 0; al < (long)l.a.size(); ++al)
      for (long i = 0; i < (long)l.a[al].size(); ++i)
        a_total[b01->offset + m.cq.basis.index(0, 1, al, i)] = l.a[al][i];
  const TotalBlock* b10 = lay.block(1, 1, 0);
  if (b10)
    for (long e = 0; e < (long)l.g.size(); ++e)
      for (long i = 0; i < (long)l.g[e].size(); ++i)
        a_total[b10->offset + m.cq.basis.index(1, 0, e, i)] = -l.g[e][i];
  return make_spark(m.S, 1, std::move(a_total), bundle_cocycle(l));
}

RatVec curvature(const DiscreteLineBundle& l) {
  const auto& m = *l.model;
  RatVec out = rat_zeros(m.K->count(2));
  std::vector<bool> seen(m.K->count(2), false);
  for (long al = 0; al < (long)l.a.size(); ++al) {
    const Subcomplex& s = m.cover->intersections[0][al];
    RatVec da = RatMat::from(sub_coboundary(*m.K, s, 1)) * l.a[al];
    for (long t = 0; t < s.count(2); ++t) {
      long pid = s.ids[2][t];
      if (seen[pid]) {
        if (out[pid] != da[t]) throw invariant_error("curvature: local values disagree");
      } else {
        out[pid] = da[t];
        seen[pid] = true;
      }
    }
  }
  return out;
}

IntVec chern_class(const DiscreteLineBundle& l) {
  return l.model->S->hI(2).class_coords(bundle_cocycle(l));
}

DiscreteLineBundle bundle_from_chern(const CechModelPtr& m, const IntVec& smith_coords) {
  const ZCohomology& h2 = m->S->hI(2);
  if ((long)smith_coords.size() != h2.coords())
    throw input_error("bundle_from_chern: wrong coordinate count");
  IntVec r = int_zeros(m->S->I->rank(2));
  for (long i = 0; i < (long)smith_coords.size(); ++i) {
    if (smith_coords[i] == 0) continue;
    IntVec rep = h2.generator_rep(i);
    for (size_t u = 0; u < r.size(); ++u) r[u] += smith_coords[i] * rep[u];
  }

  DiscreteLineBundle l;
  l.model = m;

  // delta g = r as constants on the triple overlaps
  const auto& dc = m->cq.dc;
  RatVec rhs = rat_zeros(dc.rank(2, 0));
  for (long t = 0; t < m->cover->nerve.count(2); ++t) {
    const Subcomplex& inter = m->cover->intersections[2][t];
    for (long v = 0; v < inter.count(0); ++v)
      rhs[m->cq.basis.index(2, 0, t, v)] = Rat(r[t]);
  }
  auto gsol = solve_rational(dc.delta(1, 0), rhs);
  if (!gsol) throw invariant_error("bundle_from_chern: delta g = r unsolvable");
  l.g.resize(nerve_edges(*m));
  for (long e = 0; e < nerve_edges(*m); ++e) {
    long cnt = m->cover->intersections[1][e].count(0);
    l.g[e] = RatVec(gsol->x0.begin() + m->cq.basis.index(1, 0, e, 0),
                    gsol->x0.begin() + m->cq.basis.index(1, 0, e, 0) + cnt);
  }

  // delta A = -dg on pairwise overlaps
  RatVec dg = dc.dver(1, 0) * gsol->x0;
  auto asol = solve_rational(dc.delta(0, 1), scale(Rat(-1), dg));
  if (!asol) throw invariant_error("bundle_from_chern: connection solve failed");
  l.a.resize(m->cover->members.size());
  for (long al = 0; al < (long)l.a.size(); ++al) {
    long cnt = m->cover->intersections[0][al].count(1);
    l.a[al] = RatVec(asol->x0.begin() + m->cq.basis.index(0, 1, al, 0),
                     asol->x0.begin() + m->cq.basis.index(0, 1, al, 0) + cnt);
  }
  l.validate();
  return l;
}

DiscreteLineBundle tensor(const DiscreteLineBundle& l1, const DiscreteLineBundle& l2) {
  if (l1.model.get() != l2.model.get()) throw input_error("tensor: different base models");
  DiscreteLineBundle out;
  out.model = l1.model;
  out.g.resize(l1.g.size());
  for (size_t e = 0; e < l1.g.size(); ++e) out.g[e] = add(l1.g[e], l2.g[e]);
  out.a.resize(l1.a.size());
  for (size_t al = 0; al < l1.a.size(); ++al) out.a[al] = add(l1.a[al], l2.a[al]);
  out.validate();
  return out;
}

bool gauge_equivalent(const DiscreteLineBundle& l1, const DiscreteLineBundle& l2) {
  if (l1.model.get() != l2.model.get()) throw input_error("gauge: different base models");
  return equivalent(bundle_to_spark(l1), bundle_to_spark(l2));
}

Rat holonomy(const DiscreteLineBundle& l, const IntVec& z) {
  return evaluate(bundle_to_spark(l), total_cycle(*l.model, 1, z));
}

DiscreteLineBundle flat_bundle_with_holonomy(const CechModelPtr& m, const Rat& target,
                                             const IntVec& cycle) {
  // constant-per-overlap rational Cech 1-cocycle generating H^1(N;Q),
  // calibrated against the cycle
  const ZCohomology& h1 = m->S->hI(1);
  long gen = -1;
  for (long i = 0; i < h1.coords(); ++i)
    if (h1.orders[i] == 0) {
      gen = i;
      break;
    }
  if (gen < 0) throw input_error("flat bundle: no free H^1 class on the nerve");
  IntVec w = h1.generator_rep(gen);

  auto build = [&](const Rat& t) {
    DiscreteLineBundle l = trivial_bundle(m);
    for (long e = 0; e < (long)l.g.size(); ++e)
      for (auto& q : l.g[e]) q = t * Rat(w[e]);
    l.validate();
    return l;
  };
  // raw (un-reduced) pairing of the generator bundle with the cycle scales
  // linearly in t, so one probe calibrates exactly
  IntVec ztot = total_cycle(*m, 1, cycle);
  Spark probe = bundle_to_spark(build(Rat(1)));
  Rat raw = 0;
  for (size_t i = 0; i < ztot.size(); ++i)
    if (ztot[i] != 0) raw += probe.a[i] * Rat(ztot[i]);
  if (raw == 0) throw input_error("flat bundle: cycle does not pair with H^1");
  Rat t = target / raw;
  DiscreteLineBundle out = build(t);
  if (evaluate(bundle_to_spark(out), ztot) != mod_one(target))
    throw invariant_error("flat bundle: calibration failed");
  return out;
}

}  // namespace sparkcx
