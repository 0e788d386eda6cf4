#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "firmcor/linalg.hpp"
#include "firmcor/report.hpp"

namespace firmcor {

// Finite-dimensional algebra by structure constants: mult[(i*dim+j)*dim+k]
// is the coefficient of e_k in e_i e_j. No unit means "not declared unital".
struct Algebra {
  int p = 2;
  int dim = 0;
  std::string name;
  std::vector<int> mult;
  std::optional<Vec> unit;

  // derived: L[i] is x -> e_i x, Rm[j] is x -> x e_j
  std::vector<Mat> L;
  std::vector<Mat> Rm;

  static Algebra make(int p, int dim, std::vector<int> mult, std::optional<Vec> unit, std::string name);

  int c(int i, int j, int k) const { return mult[(static_cast<size_t>(i) * dim + j) * dim + k]; }
  bool unital() const { return unit.has_value(); }
  Vec mul(const Vec& x, const Vec& y) const;
  Mat left_mult(const Vec& x) const;
  Mat right_mult(const Vec& x) const;
};

using AlgPtr = std::shared_ptr<const Algebra>;

AlgPtr make_algebra(int p, int dim, std::vector<int> mult, std::optional<Vec> unit, std::string name);
// the base field F_p as a one-dimensional algebra
AlgPtr field_algebra(int p);
// subalgebra of n x n matrices spanned by the given matrices (must be closed)
AlgPtr matrix_subalgebra(int p, const std::vector<Mat>& basis, bool declare_unit, std::string name);
bool same_ring(const AlgPtr& a, const AlgPtr& b);

Report validate_algebra(const Algebra& a);

// Two-sided module. left[i] is the action of the i-th basis element of lring,
// right[j] the action of the j-th basis element of rring; both dim x dim.
struct Bimodule {
  int p = 2;
  int dim = 0;
  std::string name;
  AlgPtr lring;
  AlgPtr rring;
  std::vector<Mat> left;
  std::vector<Mat> right;

  Mat left_elem(const Vec& r) const;
  Mat right_elem(const Vec& r) const;
};

Bimodule make_bimodule(std::string name, AlgPtr lring, AlgPtr rring, std::vector<Mat> left, std::vector<Mat> right);
// R as (R,R)-bimodule
Bimodule regular_bimodule(const AlgPtr& r);
// only a left action; the right ring is the base field acting by scalars
Bimodule left_module(std::string name, const AlgPtr& r, std::vector<Mat> left);
Bimodule right_module(std::string name, const AlgPtr& r, std::vector<Mat> right);
// A^d as (K, A)-bimodule
Bimodule free_right_module(const AlgPtr& a, int d);
// same space, actions replaced on one side
Bimodule with_left(const Bimodule& m, const AlgPtr& r, std::vector<Mat> left);
Bimodule with_right(const Bimodule& m, const AlgPtr& r, std::vector<Mat> right);
// restriction of scalars along an algebra map given as a matrix (dim target x dim source)
std::vector<Mat> pull_actions(const std::vector<Mat>& actions, const Mat& along);
// sub-bimodule spanned by the columns of basis (must be stable)
Bimodule sub_bimodule(const Bimodule& m, const Mat& basis, std::string name);
Bimodule quotient_bimodule(const Bimodule& m, const Mat& sub_basis, std::string name, Mat* projection = nullptr);

Report validate_bimodule(const Bimodule& m);

struct LocalUnits {
  std::vector<Vec> elements;
  std::vector<std::optional<Vec>> left;
  std::vector<std::optional<Vec>> right;
  std::optional<Vec> common_left;
  std::optional<Vec> common_right;
  bool basis_only = false;
};

// elements empty: every element of R when p^dim <= 2^16, otherwise the basis
// elements only (basis_only set), or SearchSpaceTooLarge when strict.
// Idempotent units are preferred when the solution space is small enough to scan.
Result<LocalUnits> find_local_units(const Algebra& r, std::vector<Vec> elements = {}, bool strict = false);

// every element of F_p^n in lexicographic order
std::vector<Vec> all_vectors(int p, int n);

}  // namespace firmcor
