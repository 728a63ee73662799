#pragma once

#include "sparkcx/product.hpp"

namespace sparkcx {

// Discrete line bundle with connection over a Cech model: g assigns to each
// nerve edge a rational 0-cochain on the pairwise intersection (the additive
// log of a transition function), A assigns to each member a rational
// 1-cochain (the connection).  Invariants:
//   - the Cech coboundary of g is an integer constant on every triple
//     intersection (the exponentiated cocycle condition)
//   - A_alpha - A_beta = d g_{alpha beta} on every pairwise intersection
struct DiscreteLineBundle {
  CechModelPtr model;
  std::vector<RatVec> g;  // by nerve edge id
  std::vector<RatVec> a;  // by member id

  void validate() const;  // throws input_error naming the failing overlap
};

DiscreteLineBundle trivial_bundle(const CechModelPtr& m);

// degree-1 spark (A in bidegree (0,1), -g in bidegree (1,0)); the spark
// equation then produces e = curvature and r = delta g
Spark bundle_to_spark(const DiscreteLineBundle& l);

// the integer Cech 2-cocycle delta g
IntVec bundle_cocycle(const DiscreteLineBundle& l);

RatVec curvature(const DiscreteLineBundle& l);  // global rational 2-cochain
IntVec chern_class(const DiscreteLineBundle& l);  // Smith coords in H^2(N;Z)

// picks a representative cocycle for the class and solves for g, then A
DiscreteLineBundle bundle_from_chern(const CechModelPtr& m, const IntVec& smith_coords);

DiscreteLineBundle tensor(const DiscreteLineBundle& l1, const DiscreteLineBundle& l2);

bool gauge_equivalent(const DiscreteLineBundle& l1, const DiscreteLineBundle& l2);

// <bundle spark, total lift of z> mod 1
Rat holonomy(const DiscreteLineBundle& l, const IntVec& z);

// flat bundle (A = 0, constant g, delta g = 0) calibrated so that its
// holonomy on the given cycle equals the target
DiscreteLineBundle flat_bundle_with_holonomy(const CechModelPtr& m, const Rat& target,
                                             const IntVec& cycle);

}  // namespace sparkcx
