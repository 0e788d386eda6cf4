#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "firmcor/result.hpp"

namespace firmcor {

using Vec = std::vector<int>;

bool is_prime(int p);
int inv_mod(int a, int p);
inline int mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

// Dense matrix over F_p, row-major. Columns are images of domain basis vectors.
class Mat {
 public:
  Mat() = default;
  Mat(int p, int rows, int cols);

  static Mat identity(int p, int n);
  static Mat from_rows(int p, const std::vector<Vec>& rows, int cols = -1);
  static Mat from_cols(int p, int rows, const std::vector<Vec>& cols);
  static Mat column(int p, const Vec& v);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, long long v) { a_[static_cast<size_t>(r) * cols_ + c] = mod(v, p_); }
  void add_to(int r, int c, long long v) { set(r, c, (*this)(r, c) + v); }

  Vec col(int j) const;
  Vec row(int i) const;
  void set_col(int j, const Vec& v);
  void set_row(int i, const Vec& v);

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(int s) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;
  Mat transpose() const;
  Mat block(int r0, int c0, int nr, int nc) const;
  Mat cols_subset(const std::vector<int>& idx) const;

  // first column index where this differs from o (or -1), used for witnesses
  int first_diff_col(const Mat& o) const;

  const std::vector<int32_t>& data() const { return a_; }
  std::string str() const;

 private:
  int p_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int32_t> a_;
};

Mat kron(const Mat& a, const Mat& b);
Mat kron_all(const std::vector<Mat>& ms);
// kron(fs[0], ..., fs[n]) * x without forming the product; square identity
// factors are skipped
Mat kron_apply(const std::vector<Mat>& fs, const Mat& x);
Mat hcat(const std::vector<Mat>& ms);
Mat vcat(const std::vector<Mat>& ms);
Vec kron_vec(const Vec& a, const Vec& b, int p);
Vec unit_vec(int n, int i);
bool is_zero_vec(const Vec& v);
Vec add_vec(const Vec& a, const Vec& b, int p);
Vec scale_vec(const Vec& a, int s, int p);

struct Rref {
  Mat r;  // reduced rows, zero rows trimmed
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

Rref rref(const Mat& m);

struct KernelImage {
  int rank = 0;
  Mat kernel;  // columns, reduced echelon as rows
  Mat image;   // columns, reduced echelon as rows
  std::vector<int> pivot_columns;
};

KernelImage rref_kernel_image(const Mat& m);
Mat kernel(const Mat& m);
Mat image(const Mat& m);
int rank(const Mat& m);

struct Solution {
  Vec x;
  Mat kernel;
};

// NoSolution when b is not in the column space.
Result<Solution> solve(const Mat& m, const Vec& b);
// Particular solution of m X = b, column by column; nullopt if some column fails.
std::optional<Mat> solve_mat(const Mat& m, const Mat& b);

struct QuotientPresentation {
  int ambient = 0;
  Mat relations;   // reduced rows spanning the relation subspace
  Mat projection;  // dim x ambient
  Mat section;     // ambient x dim
  std::vector<int> free_columns;
  int dim() const { return projection.rows(); }
};

QuotientPresentation quotient(int p, int ambient, const Mat& relation_cols);

// NotInvertible carries a kernel vector, or a cokernel functional when the
// kernel is zero (detail says which).
Result<Mat> invert(const Mat& m);

bool is_injective(const Mat& m);
bool is_surjective(const Mat& m);
bool same_span(const Mat& a, const Mat& b);
bool contains_span(const Mat& big, const Mat& small);

}  // namespace firmcor
