#include "firmcor/standard.hpp"

namespace firmcor {

Mat matrix_unit(int p, int n, int i, int j) {
  Mat m(p, n, n);
  m.set(i, j, 1);
  return m;
}

AlgPtr quadratic_algebra(int p, int a, int b, std::string name) {
  // 1*1=1, 1*x=x, x*1=x, x*x=b+a x
  std::vector<int> mult = {1, 0, 0, 1, 0, 1, b, a};
  return make_algebra(p, 2, mult, Vec{1, 0}, std::move(name));
}

AlgPtr matrix_algebra(int p, int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(matrix_unit(p, n, i, j));
  return matrix_subalgebra(p, basis, true, "M" + std::to_string(n));
}

AlgPtr product_algebra(int p, int k) {
  std::vector<int> mult(static_cast<size_t>(k) * k * k, 0);
  for (int i = 0; i < k; ++i) mult[(static_cast<size_t>(i) * k + i) * k + i] = 1;
  return make_algebra(p, k, mult, Vec(k, 1), "K^" + std::to_string(k));
}

AlgPtr zero_ring(int p, int n) {
  return make_algebra(p, n, std::vector<int>(static_cast<size_t>(n) * n * n, 0), std::nullopt, "Z" + std::to_string(n));
}

std::vector<Mat> natural_left_action(const std::vector<Mat>& basis) { return basis; }

std::vector<Mat> natural_right_action(const std::vector<Mat>& basis) {
  // row vector x maps to x E; in column coordinates that is E^T
  std::vector<Mat> out;
  for (auto& e : basis) out.push_back(e.transpose());
  return out;
}

Bimodule column_module(const AlgPtr& mn, int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(matrix_unit(mn->p, n, i, j));
  auto m = left_module("col", mn, natural_left_action(basis));
  return m;
}

Bimodule row_module(const AlgPtr& mn, int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(matrix_unit(mn->p, n, i, j));
  return right_module("row", mn, natural_right_action(basis));
}

}  // namespace firmcor
