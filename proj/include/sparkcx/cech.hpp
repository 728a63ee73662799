#pragma once

#include "sparkcx/quasi.hpp"

namespace sparkcx {

struct cover_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The basic model over a verified good cover: F = total rational Cech double
// complex, E = global cochains included along the left edge, I = integral
// nerve cochains mapped to constants along the bottom row.
struct CechModel {
  std::shared_ptr<const SimplicialComplex> K;
  std::shared_ptr<const CoverData> cover;
  CechComplex cq;  // rational double complex with both edge maps
  SparkPtr S;

  const TotalLayout& layout() const { return cq.tot.layout; }
};

using CechModelPtr = std::shared_ptr<const CechModel>;

// refuses covers that fail the acyclicity check, naming the intersection
CechModelPtr cech_spark_complex(std::shared_ptr<const SimplicialComplex> k,
                                std::shared_ptr<const CoverData> cover);

// Enlarged model: I is replaced by the total integral double complex and psi
// by the componentwise inclusion, with the edge inclusion C^*(N;Z) -> total
// as the validated quasi-isomorphism.  Axiom (i) is waived: integral global
// cochains land in both images; the transport machinery never uses (i).
struct HypersparkModel {
  CechModelPtr base;
  CechComplex cz;  // integral double complex
  SparkPtr S;
  SparkQuasiIso qiso;  // base->S into S
};

HypersparkModel hyperspark_complex(const CechModelPtr& base);

// Level-p model: the rational double complex truncated to simplicial rows
// q < p with the projected differential, E truncated to degrees < p, psi
// unchanged (the bottom row survives every truncation).
struct LevelModel {
  CechModelPtr full;
  int level = 1;
  Truncation trunc;
  ComplexPtr Ep;
  SparkPtr S;

  Spark project(const Spark& full_spark) const;
  // exact section of project on sparks (surjectivity, constructive)
  Spark preimage(const Spark& level_spark) const;
  // block inclusion F_p -> F_full with project o include = id
  RatVec include(int k, const RatVec& v) const;
};

LevelModel level_p_spark_complex(const CechModelPtr& full, int level);

// equivalent representative (a', 0) of s with project(a') = 0, when
// project(s) ~ 0 in the level model; nullopt otherwise
std::optional<std::pair<Spark, EquivalenceWitness>> truncation_kernel_representative(
    const LevelModel& lm, const Spark& s);

// --- pullback ----------------------------------------------------------------

// simplicial map together with a member correspondence carrying each source
// cover member into its target member
struct ModelMap {
  SimplicialMap f;
  CechModelPtr src_model;  // over f.src
  CechModelPtr dst_model;  // over f.dst
  std::vector<int> member_image;
  ChainMap total_pullback;  // F(dst) -> F(src)
  ChainMap nerve_pullback;  // I(dst) -> I(src)
  ChainMap e_pullback;      // E(dst) -> E(src)
};

ModelMap model_pullback(SimplicialMap f, CechModelPtr src_model, CechModelPtr dst_model,
                        std::vector<int> member_image);

// for star covers the member correspondence is the vertex image
ModelMap star_model_pullback(SimplicialMap f, CechModelPtr src_model,
                             CechModelPtr dst_model);

Spark pullback(const ModelMap& m, const Spark& s);

// --- cycles -------------------------------------------------------------------

// lift a simplicial k-cycle of K into the chain dual of F^k: assign each
// simplex to its first covering member, then correct with p >= 1 chain
// blocks so the total boundary vanishes
IntVec total_cycle(const CechModel& m, int k, const IntVec& z);

}  // namespace sparkcx
