#pragma once

#include <string>
#include <vector>

#include "firmcor/tensor.hpp"

namespace firmcor {

// (C, Δ, ε) over a unital base algebra A. delta lands in the quotient
// coordinates of CC = C ⊗_A C.
struct Coring {
  std::string name;
  AlgPtr A;
  Bimodule C;
  Tensor CC;
  Mat delta;
  Mat eps;

  int dim() const { return C.dim; }
};

Coring make_coring(std::string name, Bimodule c, Mat delta, Mat eps);
// delta given on the ambient C ⊗_K C
Coring make_coring_ambient(std::string name, Bimodule c, const Mat& delta_ambient, Mat eps);

Report validate_coring(const Coring& c);

struct RightComodule {
  std::string name;
  Bimodule M;  // right ring A; left ring is whatever else acts (K if nothing)
  Tensor MC;
  Mat rho;  // M -> M ⊗_A C
};

struct LeftComodule {
  std::string name;
  Bimodule N;  // left ring A
  Tensor CN;
  Mat lambda;  // N -> C ⊗_A N
};

RightComodule make_right_comodule(std::string name, Bimodule m, const Coring& c, Mat rho);
LeftComodule make_left_comodule(std::string name, Bimodule n, const Coring& c, Mat lambda);

// coassociativity, counit law, A-linearity, and left (resp. right) linearity
// over the other ring when check_other_side is set
Report validate_comodule(const RightComodule& m, const Coring& c, bool check_other_side = true);
Report validate_left_comodule(const LeftComodule& n, const Coring& c, bool check_other_side = true);

Report coring_hom_check(const Coring& src, const Coring& dst, const Mat& h);

struct Cotensor {
  Tensor MN;       // M ⊗_A N
  Tensor MCN;      // M ⊗_A C ⊗_A N
  Mat pair;        // ρ⊗N − M⊗λ : MN -> MCN
  Mat inclusion;   // basis of the kernel, as columns in MN
  int dim() const { return inclusion.cols(); }
};

Cotensor cotensor(const RightComodule& m, const LeftComodule& n, const Coring& c);

// Right comodule structures on the free modules A^d, d <= max_dim, sorted by
// coaction matrix. budget caps the number of search nodes.
Result<std::vector<RightComodule>> enumerate_comodules(const Coring& c, int max_dim, long long budget = 1LL << 22);

// right comodule on A^d from a d x d matrix of coring elements:
// ρ(e_i) = Σ_j e_j ⊗ x[j][i]
RightComodule comodule_from_matrix(const Coring& c, int d, const std::vector<std::vector<Vec>>& x);

// C = A itself
Coring trivial_coring(const AlgPtr& a);
// A ⊗_B A along an algebra map B -> A (matrix dimA x dimB)
Coring sweedler_coring(const AlgPtr& a, const AlgPtr& b, const Mat& incl, std::string name = "A⊗_B A");

// M ⊗_A A -> M and A ⊗_A N -> N built on the given tensors
Mat right_unitor(const Tensor& ma);
Mat left_unitor(const Tensor& an);

}  // namespace firmcor
