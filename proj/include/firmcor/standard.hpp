#pragma once

#include "firmcor/algebra.hpp"

namespace firmcor {

// E_ij in n x n matrices
Mat matrix_unit(int p, int n, int i, int j);

// F_p[x]/(x^2 - a x - b), basis {1, x}
AlgPtr quadratic_algebra(int p, int a, int b, std::string name);
// full matrix algebra M_n(F_p), basis E_ij in row-major order
AlgPtr matrix_algebra(int p, int n);
// F_p^k with componentwise product, basis of orthogonal idempotents
AlgPtr product_algebra(int p, int k);
// dim-n ring with identically zero multiplication
AlgPtr zero_ring(int p, int n);

// columns F_p^n as a left M_n-module, rows as a right M_n-module
Bimodule column_module(const AlgPtr& mn, int n);
Bimodule row_module(const AlgPtr& mn, int n);

// left action of a matrix subalgebra on F_p^n, given the basis matrices
std::vector<Mat> natural_left_action(const std::vector<Mat>& basis);
// right action on row vectors: x -> x E, as matrices on the row coordinates
std::vector<Mat> natural_right_action(const std::vector<Mat>& basis);

}  // namespace firmcor
