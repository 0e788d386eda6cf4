#include "firmcor/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace firmcor {

namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Mat vectorize_cols(const std::vector<Mat>& ms) {
  int p = ms.empty() ? 2 : ms[0].p();
  int n = ms.empty() ? 0 : ms[0].rows() * ms[0].cols();
  Mat out(p, n, static_cast<int>(ms.size()));
  for (size_t k = 0; k < ms.size(); ++k)
    for (int i = 0; i < ms[k].rows(); ++i)
      for (int j = 0; j < ms[k].cols(); ++j) out.set(i * ms[k].cols() + j, static_cast<int>(k), ms[k](i, j));
  return out;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > (1LL << 40)) return r;
  }
  return r;
}

}  // namespace

Algebra Algebra::make(int p, int dim, std::vector<int> mult, std::optional<Vec> unit, std::string name) {
  Algebra a;
  a.p = p;
  a.dim = dim;
  a.name = std::move(name);
  for (auto& x : mult) x = mod(x, p);
  if (unit)
    for (auto& x : *unit) x = mod(x, p);
  a.mult = std::move(mult);
  a.unit = std::move(unit);
  if (static_cast<long long>(a.mult.size()) != static_cast<long long>(dim) * dim * dim) return a;
  a.L.assign(dim, Mat(p, dim, dim));
  a.Rm.assign(dim, Mat(p, dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        int v = a.c(i, j, k);
        if (!v) continue;
        a.L[i].set(k, j, v);
        a.Rm[j].set(k, i, v);
      }
  return a;
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  Vec out(dim, 0);
  for (int i = 0; i < dim; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < dim; ++j) {
      if (!y[j]) continue;
      long long s = static_cast<long long>(x[i]) * y[j];
      for (int k = 0; k < dim; ++k) out[k] = mod(out[k] + s * c(i, j, k), p);
    }
  }
  return out;
}

Mat Algebra::left_mult(const Vec& x) const {
  Mat m(p, dim, dim);
  for (int i = 0; i < dim; ++i)
    if (x[i]) m = m + L[i].scaled(x[i]);
  return m;
}

Mat Algebra::right_mult(const Vec& x) const {
  Mat m(p, dim, dim);
  for (int i = 0; i < dim; ++i)
    if (x[i]) m = m + Rm[i].scaled(x[i]);
  return m;
}

AlgPtr make_algebra(int p, int dim, std::vector<int> mult, std::optional<Vec> unit, std::string name) {
  return std::make_shared<const Algebra>(Algebra::make(p, dim, std::move(mult), std::move(unit), std::move(name)));
}

AlgPtr field_algebra(int p) { return make_algebra(p, 1, {1}, Vec{1}, "K"); }

AlgPtr matrix_subalgebra(int p, const std::vector<Mat>& basis, bool declare_unit, std::string name) {
  const int d = static_cast<int>(basis.size());
  Mat vb = vectorize_cols(basis);
  if (rank(vb) != d) throw std::invalid_argument("matrix_subalgebra: dependent basis");
  std::vector<int> mult(static_cast<size_t>(d) * d * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat prod = basis[i] * basis[j];
      auto x = solve_mat(vb, vectorize_cols({prod}));
      if (!x) throw std::invalid_argument("matrix_subalgebra: not closed under products");
      for (int k = 0; k < d; ++k) mult[(static_cast<size_t>(i) * d + j) * d + k] = (*x)(k, 0);
    }
  std::optional<Vec> unit;
  if (declare_unit) {
    int n = basis.empty() ? 0 : basis[0].rows();
    auto x = solve_mat(vb, vectorize_cols({Mat::identity(p, n)}));
    if (!x) throw std::invalid_argument("matrix_subalgebra: identity not in span");
    unit = x->col(0);
  }
  return make_algebra(p, d, std::move(mult), unit, std::move(name));
}

bool same_ring(const AlgPtr& a, const AlgPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->p == b->p && a->dim == b->dim && a->mult == b->mult;
}

Report validate_algebra(const Algebra& a) {
  Report rep;
  const int n = a.dim;
  if (static_cast<long long>(a.mult.size()) != static_cast<long long>(n) * n * n) {
    rep.fail("shape", "ShapeMismatch: mult has " + std::to_string(a.mult.size()) + " entries for dim " + std::to_string(n));
    return rep;
  }
  if (a.unit && static_cast<int>(a.unit->size()) != n) {
    rep.fail("shape", "ShapeMismatch: unit length");
    return rep;
  }
  bool assoc = true;
  for (int i = 0; i < n && assoc; ++i)
    for (int j = 0; j < n && assoc; ++j)
      for (int k = 0; k < n && assoc; ++k) {
        Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
        if (a.mul(a.mul(ei, ej), ek) != a.mul(ei, a.mul(ej, ek))) {
          rep.fail("associativity", "AssociativityFailed at " + triple(i, j, k), {i, j, k});
          assoc = false;
        }
      }
  if (assoc) rep.pass("associativity");
  if (a.unit) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      Vec ei = unit_vec(n, i);
      if (a.mul(*a.unit, ei) != ei || a.mul(ei, *a.unit) != ei) {
        rep.fail("unit", "UnitAxiomFailed at e" + std::to_string(i), {i});
        ok = false;
      }
    }
    if (ok) rep.pass("unit");
  }
  return rep;
}

Mat Bimodule::left_elem(const Vec& r) const {
  Mat m(p, dim, dim);
  for (size_t i = 0; i < left.size(); ++i)
    if (r[i]) m = m + left[i].scaled(r[i]);
  return m;
}

Mat Bimodule::right_elem(const Vec& r) const {
  Mat m(p, dim, dim);
  for (size_t i = 0; i < right.size(); ++i)
    if (r[i]) m = m + right[i].scaled(r[i]);
  return m;
}

Bimodule make_bimodule(std::string name, AlgPtr lring, AlgPtr rring, std::vector<Mat> left, std::vector<Mat> right) {
  Bimodule m;
  m.p = lring->p;
  m.name = std::move(name);
  m.dim = !left.empty() ? left[0].rows() : (!right.empty() ? right[0].rows() : 0);
  m.lring = std::move(lring);
  m.rring = std::move(rring);
  m.left = std::move(left);
  m.right = std::move(right);
  return m;
}

Bimodule regular_bimodule(const AlgPtr& r) { return make_bimodule(r->name, r, r, r->L, r->Rm); }

Bimodule left_module(std::string name, const AlgPtr& r, std::vector<Mat> left) {
  int d = left.empty() ? 0 : left[0].rows();
  auto k = field_algebra(r->p);
  auto m = make_bimodule(std::move(name), r, k, std::move(left), {Mat::identity(r->p, d)});
  m.dim = d;
  return m;
}

Bimodule right_module(std::string name, const AlgPtr& r, std::vector<Mat> right) {
  int d = right.empty() ? 0 : right[0].rows();
  auto k = field_algebra(r->p);
  auto m = make_bimodule(std::move(name), k, r, {Mat::identity(r->p, d)}, std::move(right));
  m.dim = d;
  return m;
}

Bimodule free_right_module(const AlgPtr& a, int d) {
  std::vector<Mat> right;
  for (int j = 0; j < a->dim; ++j) right.push_back(kron(Mat::identity(a->p, d), a->Rm[j]));
  auto m = right_module("A^" + std::to_string(d), a, std::move(right));
  m.dim = d * a->dim;
  m.left = {Mat::identity(a->p, m.dim)};
  return m;
}

Bimodule with_left(const Bimodule& m, const AlgPtr& r, std::vector<Mat> left) {
  Bimodule out = m;
  out.lring = r;
  out.left = std::move(left);
  return out;
}

Bimodule with_right(const Bimodule& m, const AlgPtr& r, std::vector<Mat> right) {
  Bimodule out = m;
  out.rring = r;
  out.right = std::move(right);
  return out;
}

std::vector<Mat> pull_actions(const std::vector<Mat>& actions, const Mat& along) {
  std::vector<Mat> out;
  for (int j = 0; j < along.cols(); ++j) {
    Mat m(actions[0].p(), actions[0].rows(), actions[0].cols());
    for (int i = 0; i < along.rows(); ++i)
      if (along(i, j)) m = m + actions[i].scaled(along(i, j));
    out.push_back(m);
  }
  return out;
}

Bimodule sub_bimodule(const Bimodule& m, const Mat& basis, std::string name) {
  auto restrict_all = [&](const std::vector<Mat>& acts) {
    std::vector<Mat> out;
    for (auto& a : acts) {
      auto x = solve_mat(basis, a * basis);
      if (!x) throw std::invalid_argument("sub_bimodule: subspace not stable");
      out.push_back(*x);
    }
    return out;
  };
  Bimodule s = m;
  s.name = std::move(name);
  s.dim = basis.cols();
  s.left = restrict_all(m.left);
  s.right = restrict_all(m.right);
  return s;
}

Bimodule quotient_bimodule(const Bimodule& m, const Mat& sub_basis, std::string name, Mat* projection) {
  auto q = quotient(m.p, m.dim, sub_basis);
  Bimodule s = m;
  s.name = std::move(name);
  s.dim = q.dim();
  for (auto& a : s.left) a = q.projection * a * q.section;
  for (auto& a : s.right) a = q.projection * a * q.section;
  if (projection) *projection = q.projection;
  return s;
}

Report validate_bimodule(const Bimodule& m) {
  Report rep;
  if (static_cast<int>(m.left.size()) != m.lring->dim || static_cast<int>(m.right.size()) != m.rring->dim) {
    rep.fail("shape", "ShapeMismatch: action count differs from ring dimension");
    return rep;
  }
  for (auto* acts : {&m.left, &m.right})
    for (auto& a : *acts)
      if (a.rows() != m.dim || a.cols() != m.dim) {
        rep.fail("shape", "ShapeMismatch: action matrix size");
        return rep;
      }
  const int dl = m.lring->dim, dr = m.rring->dim;
  bool ok = true;
  // (r_i r_j) x = r_i (r_j x)
  for (int i = 0; i < dl && ok; ++i)
    for (int j = 0; j < dl && ok; ++j) {
      Vec prod(dl);
      for (int k = 0; k < dl; ++k) prod[k] = m.lring->c(i, j, k);
      Mat lhs = m.left_elem(prod), rhs = m.left[i] * m.left[j];
      int col = lhs.first_diff_col(rhs);
      if (col >= 0) {
        rep.fail("left_action", "left action not associative at " + triple(i, j, col), {i, j, col});
        ok = false;
      }
    }
  if (ok) rep.pass("left_action");
  ok = true;
  // x (r_i r_j) = (x r_i) r_j
  for (int i = 0; i < dr && ok; ++i)
    for (int j = 0; j < dr && ok; ++j) {
      Vec prod(dr);
      for (int k = 0; k < dr; ++k) prod[k] = m.rring->c(i, j, k);
      Mat lhs = m.right_elem(prod), rhs = m.right[j] * m.right[i];
      int col = lhs.first_diff_col(rhs);
      if (col >= 0) {
        rep.fail("right_action", "right action not associative at " + triple(col, i, j), {col, i, j});
        ok = false;
      }
    }
  if (ok) rep.pass("right_action");
  ok = true;
  for (int i = 0; i < dl && ok; ++i)
    for (int j = 0; j < dr && ok; ++j) {
      int col = (m.left[i] * m.right[j]).first_diff_col(m.right[j] * m.left[i]);
      if (col >= 0) {
        rep.fail("commute", "l(m r) != (l m) r at " + triple(i, col, j), {i, col, j});
        ok = false;
      }
    }
  if (ok) rep.pass("commute");
  Mat id = Mat::identity(m.p, m.dim);
  if (m.lring->unit) {
    Mat u = m.left_elem(*m.lring->unit);
    int col = u.first_diff_col(id);
    rep.add("left_unital", col < 0, col < 0 ? "" : "unit does not act as identity", col < 0 ? std::vector<int>{} : std::vector<int>{col});
  }
  if (m.rring->unit) {
    Mat u = m.right_elem(*m.rring->unit);
    int col = u.first_diff_col(id);
    rep.add("right_unital", col < 0, col < 0 ? "" : "unit does not act as identity", col < 0 ? std::vector<int>{} : std::vector<int>{col});
  }
  return rep;
}

std::vector<Vec> all_vectors(int p, int n) {
  long long total = ipow(p, n);
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(total));
  Vec v(n, 0);
  for (long long t = 0; t < total; ++t) {
    out.push_back(v);
    for (int i = n - 1; i >= 0; --i) {
      if (++v[i] < p) break;
      v[i] = 0;
    }
  }
  return out;
}

namespace {

// a solution of m u = b, preferring an idempotent one when the affine space is small
std::optional<Vec> unit_solution(const Algebra& r, const Mat& m, const Vec& b) {
  auto s = solve(m, b);
  if (!s) return std::nullopt;
  const int k = s->kernel.cols();
  if (ipow(r.p, k) <= 4096) {
    for (auto& coeff : all_vectors(r.p, k)) {
      Vec u = s->x;
      for (int j = 0; j < k; ++j)
        if (coeff[j]) u = add_vec(u, scale_vec(s->kernel.col(j), coeff[j], r.p), r.p);
      if (r.mul(u, u) == u) return u;
    }
  }
  return s->x;
}

}  // namespace

Result<LocalUnits> find_local_units(const Algebra& r, std::vector<Vec> elements, bool strict) {
  LocalUnits out;
  if (elements.empty()) {
    if (ipow(r.p, r.dim) <= (1LL << 16)) {
      elements = all_vectors(r.p, r.dim);
    } else if (strict) {
      return Failure{"SearchSpaceTooLarge", "p^dim exceeds 2^16", {r.p, r.dim}};
    } else {
      for (int i = 0; i < r.dim; ++i) elements.push_back(unit_vec(r.dim, i));
      out.basis_only = true;
    }
  }
  std::vector<Mat> lhs_left, lhs_right;
  std::vector<Vec> rhs;
  for (auto& e : elements) {
    Mat rm = r.right_mult(e);  // u -> u e
    Mat lm = r.left_mult(e);   // u -> e u
    out.elements.push_back(e);
    out.left.push_back(unit_solution(r, rm, e));
    out.right.push_back(unit_solution(r, lm, e));
    lhs_left.push_back(rm);
    lhs_right.push_back(lm);
    rhs.push_back(e);
  }
  if (elements.empty()) {
    out.common_left = out.common_right = Vec(r.dim, 0);
    return out;
  }
  // common units for the whole requested set; basis elements suffice by linearity
  Vec stacked;
  for (auto& v : rhs) stacked.insert(stacked.end(), v.begin(), v.end());
  std::vector<Mat> bl, br;
  Vec sb;
  for (int i = 0; i < r.dim; ++i) {
    bl.push_back(r.Rm[i]);
    br.push_back(r.L[i]);
    Vec ei = unit_vec(r.dim, i);
    sb.insert(sb.end(), ei.begin(), ei.end());
  }
  if (r.dim > 0) {
    out.common_left = unit_solution(r, vcat(bl), sb);
    out.common_right = unit_solution(r, vcat(br), sb);
  } else {
    out.common_left = out.common_right = Vec{};
  }
  return out;
}

}  // namespace firmcor
