#include "firmcor/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace firmcor {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int inv_mod(int a, int p) {
  a = mod(a, p);
  if (a == 0) throw std::domain_error("inverse of zero");
  int t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    int q = r / nr;
    int tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return mod(t, p);
}

Mat::Mat(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

Mat Mat::identity(int p, int n) {
  Mat m(p, n, n);
  for (int i = 0; i < n; ++i) m.a_[static_cast<size_t>(i) * n + i] = 1 % p;
  return m;
}

Mat Mat::from_rows(int p, const std::vector<Vec>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  Mat m(p, static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Mat Mat::from_cols(int p, int rows, const std::vector<Vec>& cols) {
  Mat m(p, rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j) m.set_col(j, cols[j]);
  return m;
}

Mat Mat::column(int p, const Vec& v) { return from_cols(p, static_cast<int>(v.size()), {v}); }

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(int i) const {
  return Vec(a_.begin() + static_cast<long>(i) * cols_, a_.begin() + static_cast<long>(i + 1) * cols_);
}

void Mat::set_col(int j, const Vec& v) {
  if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("set_col size");
  for (int i = 0; i < rows_; ++i) set(i, j, v[i]);
}

void Mat::set_row(int i, const Vec& v) {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("set_row size");
  for (int j = 0; j < cols_; ++j) set(i, j, v[j]);
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matmul shape " + std::to_string(rows_) + "x" +
                                                    std::to_string(cols_) + " * " + std::to_string(o.rows_) +
                                                    "x" + std::to_string(o.cols_));
  Mat out(p_, rows_, o.cols_);
  std::vector<long long> acc(o.cols_);
  for (int i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const int32_t* ar = a_.data() + static_cast<size_t>(i) * cols_;
    for (int k = 0; k < cols_; ++k) {
      long long a = ar[k];
      if (a == 0) continue;
      const int32_t* br = o.a_.data() + static_cast<size_t>(k) * o.cols_;
      for (int j = 0; j < o.cols_; ++j) acc[j] += a * br[j];
    }
    int32_t* dst = out.a_.data() + static_cast<size_t>(i) * o.cols_;
    for (int j = 0; j < o.cols_; ++j) dst[j] = static_cast<int32_t>(acc[j] % p_);
  }
  return out;
}

Vec Mat::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matvec shape");
  Vec out(rows_);
  for (int i = 0; i < rows_; ++i) {
    long long s = 0;
    for (int k = 0; k < cols_; ++k) s += static_cast<long long>((*this)(i, k)) * v[k];
    out[i] = mod(s, p_);
  }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("add shape");
  Mat out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] + o.a_[i]) % p_;
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("sub shape");
  Mat out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] - o.a_[i] + p_) % p_;
  return out;
}

Mat Mat::scaled(int s) const {
  Mat out = *this;
  s = mod(s, p_);
  for (auto& x : out.a_) x = static_cast<int32_t>((static_cast<long long>(x) * s) % p_);
  return out;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](int32_t x) { return x == 0; });
}

bool Mat::is_identity() const { return rows_ == cols_ && *this == identity(p_, rows_); }

Mat Mat::transpose() const {
  Mat t(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.a_[static_cast<size_t>(j) * rows_ + i] = (*this)(i, j);
  return t;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat b(p_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b.a_[static_cast<size_t>(i) * nc + j] = (*this)(r0 + i, c0 + j);
  return b;
}

Mat Mat::cols_subset(const std::vector<int>& idx) const {
  Mat b(p_, rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) b.a_[static_cast<size_t>(i) * idx.size() + j] = (*this)(i, idx[j]);
  return b;
}

int Mat::first_diff_col(const Mat& o) const {
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i)
      if ((*this)(i, j) != o(i, j)) return j;
  return -1;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i1 = 0; i1 < a.rows(); ++i1)
    for (int j1 = 0; j1 < a.cols(); ++j1) {
      int x = a(i1, j1);
      if (x == 0) continue;
      for (int i2 = 0; i2 < b.rows(); ++i2)
        for (int j2 = 0; j2 < b.cols(); ++j2) {
          int y = b(i2, j2);
          if (y) out.set(i1 * b.rows() + i2, j1 * b.cols() + j2, static_cast<long long>(x) * y);
        }
    }
  return out;
}

Mat kron_all(const std::vector<Mat>& ms) {
  if (ms.empty()) throw std::invalid_argument("kron_all of nothing");
  Mat out = ms.back();
  for (size_t i = ms.size() - 1; i-- > 0;) out = kron(ms[i], out);
  return out;
}

Mat hcat(const std::vector<Mat>& ms) {
  if (ms.empty()) throw std::invalid_argument("hcat of nothing");
  int rows = ms[0].rows(), cols = 0;
  for (auto& m : ms) {
    if (m.rows() != rows) throw std::invalid_argument("hcat rows");
    cols += m.cols();
  }
  Mat out(ms[0].p(), rows, cols);
  int c0 = 0;
  for (auto& m : ms) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < m.cols(); ++j) out.set(i, c0 + j, m(i, j));
    c0 += m.cols();
  }
  return out;
}

Mat vcat(const std::vector<Mat>& ms) {
  if (ms.empty()) throw std::invalid_argument("vcat of nothing");
  int cols = ms[0].cols(), rows = 0;
  for (auto& m : ms) {
    if (m.cols() != cols) throw std::invalid_argument("vcat cols");
    rows += m.rows();
  }
  Mat out(ms[0].p(), rows, cols);
  int r0 = 0;
  for (auto& m : ms) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < cols; ++j) out.set(r0 + i, j, m(i, j));
    r0 += m.rows();
  }
  return out;
}

Vec kron_vec(const Vec& a, const Vec& b, int p) {
  Vec out(a.size() * b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = mod(static_cast<long long>(a[i]) * b[j], p);
  }
  return out;
}

Vec unit_vec(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

Vec add_vec(const Vec& a, const Vec& b, int p) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = mod(a[i] + b[i], p);
  return out;
}

Vec scale_vec(const Vec& a, int s, int p) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = mod(static_cast<long long>(a[i]) * s, p);
  return out;
}

Rref rref(const Mat& m) {
  const int p = m.p();
  const int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<int>> a(rows);
  for (int i = 0; i < rows; ++i) a[i] = m.row(i);
  Rref out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    int iv = inv_mod(a[r][c], p);
    if (iv != 1)
      for (int j = c; j < cols; ++j) a[r][j] = static_cast<int>((static_cast<long long>(a[r][j]) * iv) % p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long long f = p - a[i][c];
      for (int j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = static_cast<int>((a[i][j] + f * a[r][j]) % p);
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.r = Mat::from_rows(p, a, cols);
  return out;
}

namespace {

// kernel vectors straight from the reduced form (one per free column)
std::vector<Vec> raw_kernel(const Rref& rr, int cols, int p) {
  std::vector<bool> is_piv(cols, false);
  for (int c : rr.pivots) is_piv[c] = true;
  std::vector<Vec> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(cols, 0);
    v[f] = 1;
    for (int i = 0; i < rr.rank(); ++i) v[rr.pivots[i]] = mod(-rr.r(i, f), p);
    out.push_back(v);
  }
  return out;
}

Mat rows_to_reduced_cols(int p, int n, const std::vector<Vec>& vs) {
  if (vs.empty()) return Mat(p, n, 0);
  Rref rr = rref(Mat::from_rows(p, vs, n));
  return rr.r.transpose();
}

}  // namespace

KernelImage rref_kernel_image(const Mat& m) {
  KernelImage out;
  Rref rr = rref(m);
  out.rank = rr.rank();
  out.pivot_columns = rr.pivots;
  out.kernel = rows_to_reduced_cols(m.p(), m.cols(), raw_kernel(rr, m.cols(), m.p()));
  out.image = image(m);
  return out;
}

Mat kernel(const Mat& m) {
  Rref rr = rref(m);
  return rows_to_reduced_cols(m.p(), m.cols(), raw_kernel(rr, m.cols(), m.p()));
}

Mat image(const Mat& m) {
  if (m.cols() == 0) return Mat(m.p(), m.rows(), 0);
  Rref rr = rref(m.transpose());
  return rr.r.transpose();
}

int rank(const Mat& m) { return rref(m).rank(); }

Result<Solution> solve(const Mat& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows()) return Failure{"ShapeMismatch", "rhs length", {}};
  Mat aug = hcat({m, Mat::column(m.p(), b)});
  Rref rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) {
    // certificate: a functional killing the column space but not b
    Mat coker = kernel(m.transpose());
    Vec w;
    for (int j = 0; j < coker.cols(); ++j) {
      Vec y = coker.col(j);
      long long s = 0;
      for (size_t i = 0; i < y.size(); ++i) s += static_cast<long long>(y[i]) * b[i];
      if (mod(s, m.p())) {
        w = y;
        break;
      }
    }
    return Failure{"NoSolution", "right-hand side outside the image", w};
  }
  Solution s;
  s.x.assign(m.cols(), 0);
  for (int i = 0; i < rr.rank(); ++i) s.x[rr.pivots[i]] = rr.r(i, m.cols());
  s.kernel = kernel(m);
  return s;
}

std::optional<Mat> solve_mat(const Mat& m, const Mat& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve_mat shape");
  const int n = m.cols();
  Mat aug = hcat({m, b});
  Rref rr = rref(aug);
  Mat x(m.p(), n, b.cols());
  for (int i = 0; i < rr.rank(); ++i) {
    if (rr.pivots[i] >= n) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x.set(rr.pivots[i], j, rr.r(i, n + j));
  }
  return x;
}

QuotientPresentation quotient(int p, int ambient, const Mat& relation_cols) {
  QuotientPresentation q;
  q.ambient = ambient;
  Rref rr = relation_cols.cols() ? rref(relation_cols.transpose()) : Rref{Mat(p, 0, ambient), {}};
  q.relations = rr.r;
  std::vector<bool> is_piv(ambient, false);
  for (int c : rr.pivots) is_piv[c] = true;
  for (int c = 0; c < ambient; ++c)
    if (!is_piv[c]) q.free_columns.push_back(c);
  const int d = static_cast<int>(q.free_columns.size());
  q.projection = Mat(p, d, ambient);
  q.section = Mat(p, ambient, d);
  for (int t = 0; t < d; ++t) {
    int f = q.free_columns[t];
    q.projection.set(t, f, 1);
    q.section.set(f, t, 1);
    // e_{c_s} = r_s - sum_f r_s[f] e_f, and r_s is zero in the quotient
    for (int s = 0; s < rr.rank(); ++s) q.projection.set(t, rr.pivots[s], -rr.r(s, f));
  }
  return q;
}

Result<Mat> invert(const Mat& m) {
  Mat ker = kernel(m);
  if (ker.cols() > 0) return Failure{"NotInvertible", "kernel vector", ker.col(0)};
  if (m.rows() != m.cols()) {
    Mat coker = kernel(m.transpose());
    return Failure{"NotInvertible", "cokernel functional", coker.col(0)};
  }
  auto x = solve_mat(m, Mat::identity(m.p(), m.rows()));
  if (!x) throw std::logic_error("injective square matrix not invertible");
  return *x;
}

bool is_injective(const Mat& m) { return rank(m) == m.cols(); }
bool is_surjective(const Mat& m) { return rank(m) == m.rows(); }

bool contains_span(const Mat& big, const Mat& small) {
  if (small.cols() == 0) return true;
  return rank(hcat({big, small})) == rank(big);
}

bool same_span(const Mat& a, const Mat& b) { return contains_span(a, b) && contains_span(b, a); }

}  // namespace firmcor

namespace firmcor {

Mat kron_apply(const std::vector<Mat>& fs, const Mat& x) {
  const int p = x.p();
  std::vector<int> dims;
  long long total = 1;
  for (auto& f : fs) {
    dims.push_back(f.cols());
    total *= f.cols();
  }
  if (total != x.rows()) throw std::invalid_argument("kron_apply: shape mismatch");
  // columns of x as a flat buffer, one tensor per column
  std::vector<std::vector<long long>> cur(x.cols());
  for (int c = 0; c < x.cols(); ++c) {
    cur[c].resize(x.rows());
    for (int r = 0; r < x.rows(); ++r) cur[c][r] = x(r, c);
  }
  for (size_t k = 0; k < fs.size(); ++k) {
    const Mat& f = fs[k];
    if (f.rows() == f.cols() && f.is_identity()) continue;
    long long pre = 1, post = 1;
    for (size_t i = 0; i < k; ++i) pre *= dims[i];
    for (size_t i = k + 1; i < dims.size(); ++i) post *= dims[i];
    const int in = f.cols(), out = f.rows();
    for (auto& v : cur) {
      std::vector<long long> nv(static_cast<size_t>(pre * out * post), 0);
      for (long long a = 0; a < pre; ++a)
        for (int i = 0; i < in; ++i)
          for (long long b = 0; b < post; ++b) {
            long long s = v[static_cast<size_t>((a * in + i) * post + b)];
            if (s == 0) continue;
            for (int o = 0; o < out; ++o) {
              int fo = f(o, i);
              if (fo) nv[static_cast<size_t>((a * out + o) * post + b)] += s * fo;
            }
          }
      for (auto& e : nv) e %= p;
      v = std::move(nv);
    }
    dims[k] = out;
  }
  long long rows = 1;
  for (int d : dims) rows *= d;
  Mat outm(p, static_cast<int>(rows), x.cols());
  for (int c = 0; c < x.cols(); ++c)
    for (long long r = 0; r < rows; ++r) outm.set(static_cast<int>(r), c, cur[c][r]);
  return outm;
}

}  // namespace firmcor
