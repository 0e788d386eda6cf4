#include "firmcor/coring.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace firmcor {

namespace {

std::vector<int> col_witness(int c) { return c < 0 ? std::vector<int>{} : std::vector<int>{c}; }

void compare(Report& rep, const std::string& name, const Mat& lhs, const Mat& rhs, const std::string& what) {
  int c = lhs.first_diff_col(rhs);
  rep.add(name, c < 0, c < 0 ? "" : what + " fails at basis element " + std::to_string(c), col_witness(c));
}

// check that a map X -> Y intertwines the given actions (per ring basis element)
void check_linear(Report& rep, const std::string& name, const Mat& f, const std::vector<Mat>& src_act,
                  const std::vector<Mat>& dst_act) {
  for (size_t a = 0; a < src_act.size(); ++a) {
    int c = (f * src_act[a]).first_diff_col(dst_act[a] * f);
    if (c >= 0) {
      rep.fail(name, "not linear for ring basis element " + std::to_string(a) + " at basis element " + std::to_string(c),
               {static_cast<int>(a), c});
      return;
    }
  }
  rep.pass(name);
}

}  // namespace

Mat right_unitor(const Tensor& ma) { return must(induced_map(ma, multiplication_ambient_right(ma.factor(0)))); }
Mat left_unitor(const Tensor& an) { return must(induced_map(an, multiplication_ambient_left(an.factor(1)))); }

Coring make_coring(std::string name, Bimodule c, Mat delta, Mat eps) {
  Coring out;
  out.name = std::move(name);
  out.A = c.lring;
  out.CC = Tensor::make({c, c});
  out.C = std::move(c);
  out.delta = std::move(delta);
  out.eps = std::move(eps);
  return out;
}

Coring make_coring_ambient(std::string name, Bimodule c, const Mat& delta_ambient, Mat eps) {
  Tensor cc = Tensor::make({c, c});
  Mat delta = cc.proj() * delta_ambient;
  return make_coring(std::move(name), std::move(c), std::move(delta), std::move(eps));
}

Report validate_coring(const Coring& c) {
  Report rep;
  const int n = c.dim();
  const int p = c.C.p;
  if (!same_ring(c.C.lring, c.A) || !same_ring(c.C.rring, c.A)) {
    rep.fail("shape", "ShapeMismatch: carrier is not an A-bimodule");
    return rep;
  }
  if (!c.A->unit) {
    rep.fail("shape", "base algebra must be unital");
    return rep;
  }
  if (c.delta.rows() != c.CC.dim() || c.delta.cols() != n || c.eps.rows() != c.A->dim || c.eps.cols() != n) {
    rep.fail("shape", "ShapeMismatch: delta or epsilon has the wrong size");
    return rep;
  }
  Bimodule ccb = c.CC.bimodule();
  check_linear(rep, "delta_left_linear", c.delta, c.C.left, ccb.left);
  check_linear(rep, "delta_right_linear", c.delta, c.C.right, ccb.right);
  check_linear(rep, "eps_left_linear", c.eps, c.C.left, c.A->L);
  check_linear(rep, "eps_right_linear", c.eps, c.C.right, c.A->Rm);
  if (!rep.ok()) return rep;

  Tensor ccc = Tensor::make({c.C, c.C, c.C});
  Mat dl = c.CC.sec() * c.delta;
  auto d_c = tensor_map(c.CC, ccc, kron(dl, Mat::identity(p, n)));
  auto c_d = tensor_map(c.CC, ccc, kron(Mat::identity(p, n), dl));
  if (!d_c || !c_d) {
    rep.fail("coassociativity", "delta does not descend to C⊗C⊗C");
    return rep;
  }
  compare(rep, "coassociativity", *d_c * c.delta, *c_d * c.delta, "CoassociativityFailed");

  auto areg = regular_bimodule(c.A);
  Tensor ca = Tensor::make({c.C, areg});
  Tensor ac = Tensor::make({areg, c.C});
  auto c_e = tensor_map(c.CC, ca, kron(Mat::identity(p, n), c.eps));
  auto e_c = tensor_map(c.CC, ac, kron(c.eps, Mat::identity(p, n)));
  if (!c_e || !e_c) {
    rep.fail("counit", "epsilon does not descend");
    return rep;
  }
  Mat id = Mat::identity(p, n);
  compare(rep, "counit_right", right_unitor(ca) * *c_e * c.delta, id, "CounitFailed (C⊗ε)Δ");
  compare(rep, "counit_left", left_unitor(ac) * *e_c * c.delta, id, "CounitFailed (ε⊗C)Δ");
  return rep;
}

RightComodule make_right_comodule(std::string name, Bimodule m, const Coring& c, Mat rho) {
  RightComodule out;
  out.name = std::move(name);
  out.MC = Tensor::make({m, c.C});
  out.M = std::move(m);
  out.rho = std::move(rho);
  return out;
}

LeftComodule make_left_comodule(std::string name, Bimodule n, const Coring& c, Mat lambda) {
  LeftComodule out;
  out.name = std::move(name);
  out.CN = Tensor::make({c.C, n});
  out.N = std::move(n);
  out.lambda = std::move(lambda);
  return out;
}

Report validate_comodule(const RightComodule& m, const Coring& c, bool check_other_side) {
  Report rep;
  const int p = c.C.p;
  if (!same_ring(m.M.rring, c.A)) {
    rep.fail("shape", "ShapeMismatch: comodule is not a right A-module");
    return rep;
  }
  if (m.rho.rows() != m.MC.dim() || m.rho.cols() != m.M.dim) {
    rep.fail("shape", "ShapeMismatch: coaction has the wrong size");
    return rep;
  }
  Bimodule mcb = m.MC.bimodule();
  check_linear(rep, "rho_right_linear", m.rho, m.M.right, mcb.right);
  if (check_other_side) check_linear(rep, "rho_left_linear", m.rho, m.M.left, mcb.left);
  if (!rep.ok()) return rep;
  Tensor mcc = Tensor::make({m.M, c.C, c.C});
  auto r_c = tensor_map(m.MC, mcc, kron(m.MC.sec() * m.rho, Mat::identity(p, c.dim())));
  auto m_d = tensor_map(m.MC, mcc, kron(Mat::identity(p, m.M.dim), c.CC.sec() * c.delta));
  if (!r_c || !m_d) {
    rep.fail("coassociativity", "coaction does not descend");
    return rep;
  }
  compare(rep, "coassociativity", *r_c * m.rho, *m_d * m.rho, "CoassociativityFailed");
  Tensor ma = Tensor::make({m.M, regular_bimodule(c.A)});
  auto m_e = tensor_map(m.MC, ma, kron(Mat::identity(p, m.M.dim), c.eps));
  compare(rep, "counit", right_unitor(ma) * must(m_e) * m.rho, Mat::identity(p, m.M.dim), "CounitFailed");
  return rep;
}

Report validate_left_comodule(const LeftComodule& n, const Coring& c, bool check_other_side) {
  Report rep;
  const int p = c.C.p;
  if (!same_ring(n.N.lring, c.A)) {
    rep.fail("shape", "ShapeMismatch: comodule is not a left A-module");
    return rep;
  }
  if (n.lambda.rows() != n.CN.dim() || n.lambda.cols() != n.N.dim) {
    rep.fail("shape", "ShapeMismatch: coaction has the wrong size");
    return rep;
  }
  Bimodule cnb = n.CN.bimodule();
  check_linear(rep, "lambda_left_linear", n.lambda, n.N.left, cnb.left);
  if (check_other_side) check_linear(rep, "lambda_right_linear", n.lambda, n.N.right, cnb.right);
  if (!rep.ok()) return rep;
  Tensor ccn = Tensor::make({c.C, c.C, n.N});
  auto c_l = tensor_map(n.CN, ccn, kron(Mat::identity(p, c.dim()), n.CN.sec() * n.lambda));
  auto d_n = tensor_map(n.CN, ccn, kron(c.CC.sec() * c.delta, Mat::identity(p, n.N.dim)));
  if (!c_l || !d_n) {
    rep.fail("coassociativity", "coaction does not descend");
    return rep;
  }
  compare(rep, "coassociativity", *c_l * n.lambda, *d_n * n.lambda, "CoassociativityFailed");
  Tensor an = Tensor::make({regular_bimodule(c.A), n.N});
  auto e_n = tensor_map(n.CN, an, kron(c.eps, Mat::identity(p, n.N.dim)));
  compare(rep, "counit", left_unitor(an) * must(e_n) * n.lambda, Mat::identity(p, n.N.dim), "CounitFailed");
  return rep;
}

Report coring_hom_check(const Coring& src, const Coring& dst, const Mat& h) {
  Report rep;
  if (!same_ring(src.A, dst.A)) {
    rep.fail("base", "BaseMismatch");
    return rep;
  }
  if (h.rows() != dst.dim() || h.cols() != src.dim()) {
    rep.fail("shape", "ShapeMismatch");
    return rep;
  }
  check_linear(rep, "left_linear", h, src.C.left, dst.C.left);
  check_linear(rep, "right_linear", h, src.C.right, dst.C.right);
  auto hh = tensor_map(src.CC, dst.CC, kron(h, h));
  if (!hh) {
    rep.fail("delta", "h⊗h does not descend");
    return rep;
  }
  compare(rep, "delta", dst.delta * h, *hh * src.delta, "comultiplication not preserved");
  compare(rep, "eps", dst.eps * h, src.eps, "counit not preserved");
  return rep;
}

Cotensor cotensor(const RightComodule& m, const LeftComodule& n, const Coring& c) {
  const int p = c.C.p;
  Cotensor out{Tensor::make({m.M, n.N}), Tensor::make({m.M, c.C, n.N}), Mat(), Mat()};
  Mat a = must(tensor_map(out.MN, out.MCN, kron(m.MC.sec() * m.rho, Mat::identity(p, n.N.dim))));
  Mat b = must(tensor_map(out.MN, out.MCN, kron(Mat::identity(p, m.M.dim), n.CN.sec() * n.lambda)));
  out.pair = a - b;
  out.inclusion = kernel(out.pair);
  return out;
}

RightComodule comodule_from_matrix(const Coring& c, int d, const std::vector<std::vector<Vec>>& x) {
  const AlgPtr& a = c.A;
  Bimodule m = free_right_module(a, d);
  Tensor mc = Tensor::make({m, c.C});
  const int da = a->dim;
  Mat rho(c.C.p, mc.dim(), d * da);
  for (int i = 0; i < d; ++i)
    for (int t = 0; t < da; ++t) {
      Vec col(mc.dim(), 0);
      for (int j = 0; j < d; ++j) {
        Vec ej = kron_vec(unit_vec(d, j), *a->unit, c.C.p);
        Vec cj = c.C.right[t] * x[j][i];
        col = add_vec(col, mc.pure({ej, cj}), c.C.p);
      }
      rho.set_col(i * da + t, col);
    }
  RightComodule out;
  out.name = "A^" + std::to_string(d);
  out.M = std::move(m);
  out.MC = std::move(mc);
  out.rho = std::move(rho);
  return out;
}

Result<std::vector<RightComodule>> enumerate_comodules(const Coring& c, int max_dim, long long budget) {
  const int p = c.C.p;
  const int n = c.dim();
  std::vector<RightComodule> out;
  // counit constraint first: each entry lies in a fibre of ε
  Vec one = *c.A->unit;
  Vec zero(c.A->dim, 0);
  Mat keps = kernel(c.eps);
  auto fibre = [&](const Vec& target) {
    std::vector<Vec> pts;
    auto s = solve(c.eps, target);
    if (!s) return pts;
    for (auto& coeff : all_vectors(p, keps.cols())) {
      Vec v = s->x;
      for (int j = 0; j < keps.cols(); ++j)
        if (coeff[j]) v = add_vec(v, scale_vec(keps.col(j), coeff[j], p), p);
      pts.push_back(v);
    }
    return pts;
  };
  const std::vector<Vec> diag = fibre(one), off = fibre(zero);
  const Mat& ccp = c.CC.proj();
  auto bil = [&](const Vec& x, const Vec& y) { return ccp * kron_vec(x, y, p); };
  long long nodes = 0;

  for (int d = 0; d <= max_dim; ++d) {
    std::vector<RightComodule> found;
    if (d == 0) {
      found.push_back(comodule_from_matrix(c, 0, {}));
    } else if (!diag.empty()) {
      // order: row 0, then column by column
      std::vector<std::pair<int, int>> order;
      for (int j = 0; j < d; ++j) order.push_back({0, j});
      for (int j = 0; j < d; ++j)
        for (int i = 1; i < d; ++i) order.push_back({i, j});
      std::vector<std::vector<int>> pos(d, std::vector<int>(d));
      for (size_t t = 0; t < order.size(); ++t) pos[order[t].first][order[t].second] = static_cast<int>(t);
      std::vector<std::vector<std::pair<int, int>>> ready(order.size());
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
          int last = 0;
          for (int j = 0; j < d; ++j) last = std::max({last, pos[k][j], pos[j][i]});
          ready[last].push_back({k, i});
        }
      std::vector<std::vector<Vec>> x(d, std::vector<Vec>(d, Vec(n, 0)));
      bool exceeded = false;
      std::function<void(size_t)> dfs = [&](size_t t) {
        if (exceeded) return;
        if (t == order.size()) {
          found.push_back(comodule_from_matrix(c, d, x));
          return;
        }
        auto [i, j] = order[t];
        const auto& cands = (i == j) ? diag : off;
        for (auto& v : cands) {
          if (++nodes > budget) {
            exceeded = true;
            return;
          }
          x[i][j] = v;
          bool ok = true;
          for (auto [k, l] : ready[t]) {
            Vec rhs(c.CC.dim(), 0);
            for (int m = 0; m < d; ++m) rhs = add_vec(rhs, bil(x[k][m], x[m][l]), p);
            if (c.delta * x[k][l] != rhs) {
              ok = false;
              break;
            }
          }
          if (ok) dfs(t + 1);
        }
      };
      dfs(0);
      if (exceeded)
        return Failure{"SearchBudgetExceeded", "comodule search stopped at dimension " + std::to_string(d),
                       {d, static_cast<int>(std::min<long long>(budget, 1 << 30))}};
    }
    std::sort(found.begin(), found.end(),
              [](const RightComodule& a, const RightComodule& b) { return a.rho.data() < b.rho.data(); });
    for (auto& f : found) out.push_back(std::move(f));
  }
  return out;
}

Coring trivial_coring(const AlgPtr& a) {
  Bimodule c = regular_bimodule(a);
  Tensor cc = Tensor::make({c, c});
  Mat delta(a->p, cc.dim(), a->dim);
  for (int i = 0; i < a->dim; ++i) delta.set_col(i, cc.pure({*a->unit, unit_vec(a->dim, i)}));
  return make_coring("A", c, delta, Mat::identity(a->p, a->dim));
}

Coring sweedler_coring(const AlgPtr& a, const AlgPtr& b, const Mat& incl, std::string name) {
  const int p = a->p;
  Bimodule a_ab = make_bimodule("A", a, b, a->L, pull_actions(a->Rm, incl));
  Bimodule a_ba = make_bimodule("A", b, a, pull_actions(a->L, incl), a->Rm);
  Tensor t = Tensor::make({a_ab, a_ba});
  Bimodule c = t.bimodule(name);
  Tensor cc = Tensor::make({c, c});
  const Vec& one = *a->unit;
  Mat delta(p, cc.dim(), t.dim());
  for (int q = 0; q < t.dim(); ++q) {
    Vec lifted = t.sec().col(q);
    Vec col(cc.dim(), 0);
    for (int i = 0; i < a->dim; ++i)
      for (int j = 0; j < a->dim; ++j) {
        int v = lifted[i * a->dim + j];
        if (!v) continue;
        Vec x = t.pure({unit_vec(a->dim, i), one});
        Vec y = t.pure({one, unit_vec(a->dim, j)});
        col = add_vec(col, scale_vec(cc.pure({x, y}), v, p), p);
      }
    delta.set_col(q, col);
  }
  Mat mult(p, a->dim, a->dim * a->dim);
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < a->dim; ++j) mult.set_col(i * a->dim + j, a->mul(unit_vec(a->dim, i), unit_vec(a->dim, j)));
  Mat eps = must(induced_map(t, mult));
  return make_coring(std::move(name), c, delta, eps);
}

}  // namespace firmcor
