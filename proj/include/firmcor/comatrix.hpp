#pragma once

#include <string>
#include <utility>
#include <vector>

#include "firmcor/coring.hpp"

namespace firmcor {

// Input of the construction. mu and iota are given on ambient lifts:
// mu: Σ′ ⊗_K Σ -> A, iota: R -> Σ ⊗_K Σ′.
struct ComatrixData {
  std::string name;
  AlgPtr A, B, R;
  Bimodule sigma;   // (B, A)
  Bimodule sigmap;  // (A, B)
  Mat mu;
  Mat iota;
};

struct SRing {
  Tensor S;                      // Σ ⊗_A Σ′
  Tensor SS;                     // Σ ⊗_A Σ′ ⊗_B Σ ⊗_A Σ′
  Mat nabla;                     // SS -> S
  AlgPtr ring;                   // S as an algebra
  std::vector<Mat> on_sigma;     // left S-action on Σ
  std::vector<Mat> on_sigmap;    // right S-action on Σ′
  Mat iota;                      // R -> S
  Bimodule sigma_R;              // (R, A) with the induced action
  Bimodule sigmap_R;             // (A, R)
  Mat mu_B, mu_S, mu_R;          // μ on Σ′⊗_BΣ, Σ′⊗_SΣ, Σ′⊗_RΣ
  Report report;
};

// NotRingHom (witness pair), NotBalanced, ShapeMismatch
Result<SRing> build_s_ring(const ComatrixData& d);

struct ComatrixCoring {
  ComatrixData data;
  SRing s;
  FirmStructure firm_r;      // R ⊗_R R
  FirmStructure firm_sigma;  // R ⊗_R Σ
  Tensor t3;                 // Σ′ ⊗_R R ⊗_R Σ
  Mat sigmap_d;              // Σ′⊗d_Σ : C -> t3
  Mat iota_mid;              // Σ′⊗ι⊗Σ : t3 -> C⊗_A C
  Coring coring;             // carrier Σ′ ⊗_R Σ
  Tensor carrier;
  RightComodule sigma;       // ρ_Σ
  Tensor dagger;             // Σ† = Σ′ ⊗_R R
  LeftComodule sigma_dagger; // λ_Σ†
  Report report;
};

// NotFirm when R or _RΣ is not firm; the construction result is validated
Result<ComatrixCoring> build_comatrix(const ComatrixData& d);

struct ComatrixPrime {
  FirmStructure firm_sigmap;  // Σ′ ⊗_R R
  Mat delta_prime;
  Report report;              // delta_equal, d_sigmap / d_sigma colinearity
};

Result<ComatrixPrime> build_comatrix_prime(const ComatrixCoring& cc);

struct DaggerCoring {
  Tensor D;              // Σ† ⊗_R Σ, presented as Σ′ ⊗_R R ⊗_R Σ
  Coring coring;
  Mat f;                 // D -> Σ′ ⊗_R Σ
  Mat f_inverse;
  RightComodule sigma;   // ρ†
  LeftComodule dagger;   // λ†
  Report report;
};

Result<DaggerCoring> build_dagger(const ComatrixCoring& cc);

// Right A-linear maps Σ -> A. A functional is stored as the dimA x dimΣ matrix
// flattened row-major (index a*dimΣ + u).
struct DualSpace {
  Mat basis;           // columns in K^(dimA*dimΣ)
  Bimodule module;     // (A, lring of Σ): (aφ)(u) = aφ(u), (φr)(u) = φ(ru)
  Mat ev;              // Σ* ⊗_K Σ -> A
  int dim() const { return basis.cols(); }
  Mat functional(int i) const;  // dimA x dimΣ
  // coordinates of a functional given as a dimA x dimΣ matrix
  std::optional<Vec> coords(const Mat& f) const;
};

DualSpace dual_space(const Bimodule& sigma, const AlgPtr& A);

struct SigmaStarTransport {
  DualSpace star;
  ComatrixData data;     // (A, B, Σ, Σ*, ev, R, ι*)
  ComatrixCoring coring; // Σ* ⊗_R Σ
  Mat phibar;            // Σ′ -> Σ*
  Mat map;               // φ̄⊗Σ : Σ′⊗_RΣ -> Σ*⊗_RΣ
  Mat inverse;
  Mat alpha_tilde;       // the composite inverse built through α_A
  Report report;
};

// NotInvertible when φ̄⊗Σ has a kernel
Result<SigmaStarTransport> transport_to_sigma_star(const ComatrixCoring& cc);

struct ContextReport {
  Report report;
  std::vector<std::pair<Vec, Vec>> dual_basis;  // (e_i in Σ, f_i in Σ′)
};

// Unital context ι: B -> Σ ⊗_A Σ′, ε: Σ′ ⊗_B Σ -> A (both on ambient lifts).
ContextReport context_validate(const AlgPtr& A, const AlgPtr& B, const Bimodule& sigma, const Bimodule& sigmap,
                               const Mat& iota, const Mat& eps);

// d of a firm structure lifted to the ambient of its tensor (tensor.sec * d)
Mat lifted_d(const FirmStructure& f);

}  // namespace firmcor
