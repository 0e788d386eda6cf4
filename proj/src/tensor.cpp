#include "firmcor/tensor.hpp"

#include <stdexcept>

namespace firmcor {

namespace {

// kernel basis straight off the reduced form; enough for annihilation checks
Mat null_space(const Mat& m) {
  Rref rr = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : rr.pivots) is_piv[c] = true;
  Mat out(m.p(), m.cols(), m.cols() - rr.rank());
  int col = 0;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    out.set(f, col, 1);
    for (int i = 0; i < rr.rank(); ++i) out.set(rr.pivots[i], col, -rr.r(i, f));
    ++col;
  }
  return out;
}

bool acts_trivially(const Bimodule& m, bool right) {
  const auto& ring = right ? m.rring : m.lring;
  const auto& acts = right ? m.right : m.left;
  return ring->dim == 1 && ring->unit && (*ring->unit)[0] == 1 && acts.size() == 1 && acts[0].is_identity();
}

}  // namespace

Result<Tensor> Tensor::build(std::vector<Bimodule> factors) {
  if (factors.empty()) return Failure{"ShapeMismatch", "empty tensor", {}};
  const int p = factors[0].p;
  for (size_t s = 0; s + 1 < factors.size(); ++s) {
    if (!same_ring(factors[s].rring, factors[s + 1].lring))
      return Failure{"ActionMismatch",
                     "right ring of " + factors[s].name + " differs from left ring of " + factors[s + 1].name,
                     {static_cast<int>(s)}};
  }
  Tensor t;
  int total = 1;
  for (auto& f : factors) total *= f.dim;
  if (total == 0) {
    t.factors_ = std::move(factors);
    t.proj_ = Mat(p, 0, 0);
    t.sec_ = Mat(p, 0, 0);
    t.rel_ = Mat(p, 0, 0);
    return t;
  }
  Mat proj = Mat::identity(p, factors[0].dim);
  Mat sec = proj;
  // right action of the ring at the current slot on the partial quotient
  int amb = factors[0].dim;
  for (size_t k = 1; k < factors.size(); ++k) {
    const Bimodule& prev = factors[k - 1];
    const Bimodule& next = factors[k];
    const int q = proj.rows();
    const int n = next.dim;
    const int pre = amb / prev.dim;
    Mat new_proj, new_sec;
    if (acts_trivially(prev, true) && acts_trivially(next, false)) {
      new_proj = Mat::identity(p, q * n);
      new_sec = new_proj;
    } else {
      std::vector<Mat> gens;
      for (size_t j = 0; j < prev.right.size(); ++j) {
        Mat rt = proj * kron(Mat::identity(p, pre), prev.right[j]) * sec;
        Mat g = kron(rt, Mat::identity(p, n)) - kron(Mat::identity(p, q), next.left[j]);
        if (!g.is_zero()) gens.push_back(g);
      }
      auto qp = gens.empty() ? quotient(p, q * n, Mat(p, q * n, 0)) : quotient(p, q * n, hcat(gens));
      new_proj = qp.projection;
      new_sec = qp.section;
    }
    proj = new_proj * kron(proj, Mat::identity(p, n));
    sec = kron(sec, Mat::identity(p, n)) * new_sec;
    amb *= n;
  }
  t.factors_ = std::move(factors);
  t.proj_ = std::move(proj);
  t.sec_ = std::move(sec);
  t.rel_ = null_space(t.proj_);
  return t;
}

Tensor Tensor::make(std::vector<Bimodule> factors) { return must(build(std::move(factors))); }

Vec Tensor::pure(const std::vector<Vec>& xs) const {
  if (xs.size() != factors_.size()) throw std::invalid_argument("pure: arity");
  Vec v = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) v = kron_vec(v, xs[i], p());
  return proj_ * v;
}

Bimodule Tensor::bimodule(std::string name) const {
  const int p = this->p();
  const Bimodule& first = factors_.front();
  const Bimodule& last = factors_.back();
  const int rest_l = ambient() / std::max(first.dim, 1);
  const int rest_r = ambient() / std::max(last.dim, 1);
  std::vector<Mat> left, right;
  for (auto& a : first.left) left.push_back(proj_ * kron(a, Mat::identity(p, rest_l)) * sec_);
  for (auto& a : last.right) right.push_back(proj_ * kron(Mat::identity(p, rest_r), a) * sec_);
  if (first.dim == 0)
    for (auto& a : left) a = Mat(p, dim(), dim());
  if (last.dim == 0)
    for (auto& a : right) a = Mat(p, dim(), dim());
  if (name.empty()) {
    for (size_t i = 0; i < factors_.size(); ++i) name += (i ? "⊗" : "") + factors_[i].name;
  }
  Bimodule b = make_bimodule(std::move(name), first.lring, last.rring, std::move(left), std::move(right));
  b.dim = dim();
  return b;
}

Result<Tensor> balanced_tensor(const Bimodule& m, const Bimodule& n) { return Tensor::build({m, n}); }

Result<Mat> induced_map(const Tensor& t, const Mat& ambient_map) {
  if (ambient_map.cols() != t.ambient()) return Failure{"ShapeMismatch", "ambient width", {}};
  Mat z = ambient_map * t.relations();
  for (int j = 0; j < z.cols(); ++j)
    if (!is_zero_vec(z.col(j))) return Failure{"NotBalanced", "relation not annihilated", t.relations().col(j)};
  return ambient_map * t.sec();
}

Result<Mat> tensor_map(const Tensor& src, const Tensor& dst, const Mat& ambient_map) {
  if (ambient_map.rows() != dst.ambient() || ambient_map.cols() != src.ambient())
    return Failure{"ShapeMismatch",
                   "ambient map " + std::to_string(ambient_map.rows()) + "x" + std::to_string(ambient_map.cols()) +
                       " for " + std::to_string(dst.ambient()) + "x" + std::to_string(src.ambient()),
                   {}};
  return induced_map(src, dst.proj() * ambient_map);
}

Mat tensor_map_unchecked(const Tensor& src, const Tensor& dst, const Mat& ambient_map) {
  return dst.proj() * ambient_map * src.sec();
}

Mat multiplication_ambient_right(const Bimodule& m) {
  const int dr = m.rring->dim;
  Mat out(m.p, m.dim, m.dim * dr);
  for (int i = 0; i < m.dim; ++i)
    for (int k = 0; k < dr; ++k) out.set_col(i * dr + k, m.right[k].col(i));
  return out;
}

Mat multiplication_ambient_left(const Bimodule& m) {
  const int dl = m.lring->dim;
  Mat out(m.p, m.dim, dl * m.dim);
  for (int k = 0; k < dl; ++k)
    for (int i = 0; i < m.dim; ++i) out.set_col(k * m.dim + i, m.left[k].col(i));
  return out;
}

namespace {

Result<FirmStructure> finish_firm(Tensor t, const Mat& amb, const std::string& what) {
  auto varpi = induced_map(t, amb);
  if (!varpi) return varpi.error();
  auto d = invert(*varpi);
  if (!d) {
    const auto& e = d.error();
    return Failure{"NotFirm", what + ": multiplication map has a " + e.detail, e.witness};
  }
  return FirmStructure{std::move(t), *varpi, *d};
}

}  // namespace

Result<FirmStructure> firm_right(const Bimodule& m) {
  auto t = Tensor::build({m, regular_bimodule(m.rring)});
  if (!t) return t.error();
  return finish_firm(std::move(t).value(), multiplication_ambient_right(m), m.name + " as right " + m.rring->name + "-module");
}

Result<FirmStructure> firm_left(const Bimodule& m) {
  auto t = Tensor::build({regular_bimodule(m.lring), m});
  if (!t) return t.error();
  return finish_firm(std::move(t).value(), multiplication_ambient_left(m), m.name + " as left " + m.lring->name + "-module");
}

Result<FirmStructure> firm_ring(const AlgPtr& r) { return firm_right(regular_bimodule(r)); }

}  // namespace firmcor
