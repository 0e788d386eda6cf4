#pragma once

#include <optional>
#include <vector>

#include "firmcor/galois.hpp"

namespace firmcor {

// *C = Hom_A(_AC, A) with f*g(c) = g(c_(1) f(c_(2))) and unit ε.
// A functional is a dimA x dimC matrix, flattened row-major (a*dimC + c).
struct DualRing {
  Coring c;
  Mat basis;
  AlgPtr ring;
  Mat unit_map;        // A -> *C, a ↦ ε(-)a
  Bimodule bimodule;   // (A, A): (af)(c) = f(ca), (fa)(c) = f(c)a
  Report report;

  int dim() const { return basis.cols(); }
  Mat functional(int i) const;
  std::optional<Vec> coords(const Mat& f) const;
};

// NotFiniteProjective is never raised: over a field every finite C qualifies
Result<DualRing> dual_ring(const Coring& c);

// x⊗c ↦ x·f(c) on M ⊗_A C (M a right A-module), in quotient coordinates of mc
Mat apply_functional(const Tensor& mc, const Mat& f);

// m·f = m_[0] f(m_[1]); left ring kept from the comodule
Bimodule module_of_comodule(const DualRing& d, const RightComodule& n);

struct RationalStructure {
  Bimodule module;       // right ring *C
  Bimodule over_A;       // right A-action through the unit map
  Tensor MC;             // M ⊗_A C
  Mat eval;              // M⊗_A C -> ⊕_f M, y ↦ ((M⊗f)(y))_f
  bool eval_injective = false;
  Mat rational;          // basis of M^rat, columns in M
  Mat coaction;          // M^rat -> M ⊗_A C
  std::optional<RightComodule> comodule;  // M^rat with the recovered coaction
  std::vector<Mat> psi;  // ψ_m : *C -> M, f ↦ m·f, for each basis m of M^rat
  Report report;

  bool all_rational() const { return rational.cols() == module.dim; }
};

// NotAModule with witness {m, f, g} where (m·f)·g != m·(f*g), or {m} when the
// unit does not act as the identity
Result<RationalStructure> rational_structure(const DualRing& d, const Bimodule& m);

struct DualIdentities {
  RationalStructure regular;  // *C over itself
  Report report;
};

// c_(1)f(c_(2)) = f_[0](c)f_[1] on basis pairs, ρ multiplicative on basis pairs,
// right local units on *C and on C
Result<DualIdentities> verify_dual_identities(const DualRing& d);

struct DaggerIso {
  DualSpace star;   // Hom_A(*C, A), right R-module by (φr)(f) = φ(r*f)
  Tensor dagger;    // star ⊗_R R
  Mat alpha;        // dagger -> C, φ⊗r ↦ φ(r_[0])r_[1]
  Mat beta;         // C -> dagger, c ↦ ψ_c⊗e
  Report report;
};

Result<DaggerIso> dagger_iso(const DualRing& d, const RationalStructure& regular);

// comatrix coring C ⊗_R *C with Σ = *C, Σ′ = C, μ = evaluation, R = B = *C, ι = ρ,
// and C itself as target
struct RationalComatrix {
  ComatrixData data;
  Mat rho;  // Σ -> Σ ⊗_A C
  GaloisSetup g;
  GaloisVerdict verdict;
  Report report;  // can against c⊗f ↦ c·f and against f_[0](c)f_[1]
};

Result<RationalComatrix> rational_comatrix(const DualRing& d, const RationalStructure& regular);

// Hom^C(*C, N)⊗_R R ≅ N through φ⊗r ↦ φ(r) with inverse m ↦ ψ_m⊗e, and N□_C C ≅ N
Report equivalence_check(const RationalComatrix& rc, const RightComodule& n);
// M ⊗_R *C ≅ M for a right R-module M
Report firm_side_check(const RationalComatrix& rc, const Bimodule& m);

struct DualReport {
  DualRing dual;
  DualIdentities identities;
  DaggerIso dagger;
  RationalComatrix comatrix;
  int comodules = 0;
  int modules = 0;
  Report report;
};

// everything above on one coring, with comodules enumerated up to max_dim
Result<DualReport> dual_report(const Coring& c, int max_dim = 1);

}  // namespace firmcor
