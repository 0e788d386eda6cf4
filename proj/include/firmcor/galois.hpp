#pragma once

#include <optional>
#include <string>
#include <vector>

#include "firmcor/comatrix.hpp"
#include "firmcor/instances.hpp"

namespace firmcor {

struct GaloisMaps {
  Mat can;             // Σ*⊗_RΣ -> C
  Mat can_dagger;      // Σ†⊗_RΣ -> C, through Σ†⊗ρ_Σ
  Mat can_dagger_alt;  // the same map through λ_Σ†⊗Σ and δ_C
  Report report;
};

// Everything the Galois side needs, built once per (instance, target).
// Σ* is the full right dual of Σ and Σ† = Σ*⊗_R R.
struct GaloisSetup {
  std::string name;
  ComatrixCoring cc;          // Σ′⊗_RΣ from the instance data
  SigmaStarTransport star;    // Σ*, and the self comatrix star.coring
  DaggerCoring dagger;        // Σ†⊗_RΣ
  Coring target;
  RightComodule sigma;        // Σ over the target, R-linear coaction
  GaloisMaps maps;
  LeftComodule dagger_c;      // Σ† over the target via can
  LeftComodule d_c;           // Σ†⊗_RΣ over the target via can†
  Report report;

  const ComatrixCoring& self() const { return star.coring; }
};

// target from the bundle, or Σ′⊗_RΣ with ρ_Σ when the bundle has none.
// NotBicomodule when ρ fails R-linearity.
Result<GaloisSetup> galois_setup(const InstanceBundle& b);
// target = Σ*⊗_RΣ itself
Result<GaloisSetup> self_setup(const InstanceBundle& b);
Result<GaloisSetup> galois_setup(const ComatrixCoring& cc, const Coring& target, const Mat& rho, const std::string& name);

Result<GaloisMaps> canonical_maps(const GaloisSetup& g);

struct GaloisVerdict {
  bool galois = false;
  std::optional<Mat> inverse;
  Vec witness;          // kernel vector or cokernel functional of can
  std::string witness_kind;
  Report report;        // composites with the inverse, can/can† agreement
};

GaloisVerdict galois_check(const GaloisSetup& g);

// Hom_A(Σ, N), or Hom^C(Σ, N) when colinear, as a right R-module (h·r = h∘r).
// basis columns are h flattened row-major (dimN x dimΣ).
struct HomSpace {
  Mat basis;
  Bimodule module;
  int dn = 0, ds = 0;
  int dim() const { return basis.cols(); }
  Mat map(int i) const;
  std::optional<Vec> coords(const Mat& h) const;
};

HomSpace hom_space(const GaloisSetup& g, const RightComodule& n, bool colinear);

// clave truth vector for one comodule
struct ClaveVector {
  bool zeta = false, pi = false, chi = false;
  std::optional<bool> psi, preserves;  // only when Galois
  bool consistent() const;
};

struct ComoduleKit {
  HomSpace hom;
  Tensor hs;         // Hom^C(Σ,N) ⊗_R Σ
  Mat zeta;
  Tensor hrs;        // Hom^C(Σ,N) ⊗_R R ⊗_R Σ
  Mat pi;
  Cotensor cot;      // N □ Σ†
  Bimodule cot_module;
  Tensor cs;         // (N □ Σ†) ⊗_R Σ
  Mat eq_sigma;      // eq ⊗ Σ into N ⊗ Σ† ⊗ Σ
  Mat delta;         // N ⊗ Σ† ⊗ Σ -> N
  Mat chi;
  Mat pair_sigma;    // (ρ_N⊗Σ†⊗Σ − N⊗λ⊗Σ)
  Cotensor cot_d;    // N □ (Σ†⊗_RΣ)
  std::optional<Mat> psi;
  Mat alpha;         // Hom_A(Σ,N) ⊗_R R -> N ⊗ Σ†
  ClaveVector clave;
  Report report;     // cinema square, α image, pair∘eq = 0
};

ComoduleKit adjunction_kit(const GaloisSetup& g, const RightComodule& n, bool galois);

// the canonical map through Hom^C(Σ,C): can = π_C ∘ ℸ
struct DalethCheck {
  Mat daleth;
  Report report;
};
DalethCheck daleth_check(const GaloisSetup& g);

// triangle identities of the three adjunctions at N = R
Report triangle_checks(const GaloisSetup& g);

// f: N1 -> N2 a comodule map; ζ and χ naturality squares
Report naturality_check(const GaloisSetup& g, const RightComodule& n1, const RightComodule& n2, const Mat& f);

// unit N -> Hom^C(Σ, N⊗_RΣ)⊗_R R for a right R-module N (firm = false when N is not)
struct UnitKit {
  bool firm = false;
  RightComodule ns;
  HomSpace hom;
  Mat eta;
};
UnitKit unit_kit(const GaloisSetup& g, const Bimodule& n);

ClaveVector clave_check(const GaloisSetup& g, const RightComodule& n, bool galois);

struct EndoRing {
  HomSpace hom;           // End^C(Σ)
  AlgPtr T;
  Mat embedding;          // R -> T
  bool embedding_injective = false;
  Mat v_R;                // R -> T ⊗_R R
  bool v_R_invertible = false;
  bool closed = false;    // T·R ⊆ R (needs an injective embedding)
  std::vector<int> closure_witness;  // (t, r) with t·r outside R
  bool left_ideal() const { return v_R_invertible; }
  Report report;
};

EndoRing endo_ring(const GaloisSetup& g);

// M = Σ* as right T-module, N = Σ: M⊗_RN -> M⊗_TN bijective and tn = (tr)n^r
Report leftflat_check(const GaloisSetup& g, const EndoRing& e);

enum class Tri { certified, refuted, inconclusive };
std::string tri_name(Tri t);

struct FlatReport {
  bool flat = false;
  Tri faithfully_flat = Tri::inconclusive;
  int checked_ideals = 0;
  bool approximate = false;
  Mat witness_ideal;      // basis columns in R
  Mat nonflat_ideal;
  Report report;
};

// right ideals of R: all of them when p^dim R <= 2^12, otherwise those generated
// by at most two basis elements (approximate). BudgetExceeded past budget ideals.
Result<std::vector<Mat>> right_ideals(const AlgPtr& r, int budget, bool* approximate = nullptr);

// f: firm left R-module
FlatReport flat_report(const Bimodule& f, const AlgPtr& r, int budget = 4096);

struct GeneratorReport {
  bool generator = true;
  int checked = 0;
  int failing = -1;  // index into the family
  Report report;
};

GeneratorReport generator_check(const GaloisSetup& g, const std::vector<RightComodule>& family);

struct DescentReport {
  std::string label;
  int max_dim = 0;
  int comodules = 0;
  std::vector<int> per_dim;
  bool galois = false;
  FlatReport flat;
  bool generator = false;
  bool left_ideal = false;
  bool counits_bijective = false;   // ζ, π, χ on every enumerated N
  bool clave_consistent = true;
  int first_non_bijective = -1;     // comodule index with ζ_N not bijective
  bool units_bijective = false;     // η on the firm family R, (R/I)⊗R
  bool units_injective = false;
  bool psi_all = false, preserves_all = false;
  bool zeta_T_bijective = false;    // Hom^C(Σ,N)⊗_TΣ -> N
  std::vector<bool> flatdescent;    // (i)..(viii)
  std::vector<bool> ffdescent;      // (i)..(v)
  Report report;                    // implications asserted
};

Result<DescentReport> descent_report(const GaloisSetup& g, int max_dim, int ideal_budget = 4096,
                                     long long search_budget = 1LL << 22);

}  // namespace firmcor
