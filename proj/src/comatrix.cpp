#include "firmcor/comatrix.hpp"

#include <string>

namespace firmcor {

namespace {

Mat id(int p, int n) { return Mat::identity(p, n); }

void add_equal(Report& rep, const std::string& name, const Mat& lhs, const Mat& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    rep.fail(name, "shape differs");
    return;
  }
  int col = lhs.first_diff_col(rhs);
  if (col < 0)
    rep.pass(name);
  else
    rep.fail(name, "matrices differ at column " + std::to_string(col), {col});
}

Failure tag(Failure f, const std::string& where) {
  f.detail = where + (f.detail.empty() ? "" : ": " + f.detail);
  return f;
}

// v as a one-column matrix
Mat colm(int p, const Vec& v) { return Mat::column(p, v); }

}  // namespace

Mat lifted_d(const FirmStructure& f) { return f.tensor.sec() * f.d; }

Result<SRing> build_s_ring(const ComatrixData& d) {
  const int p = d.A->p;
  const int dS = d.sigma.dim, dP = d.sigmap.dim, dA = d.A->dim, dR = d.R->dim;
  if (!same_ring(d.sigma.lring, d.B) || !same_ring(d.sigma.rring, d.A) || !same_ring(d.sigmap.lring, d.A) ||
      !same_ring(d.sigmap.rring, d.B))
    return Failure{"ShapeMismatch", "Σ must be a (B,A)- and Σ′ an (A,B)-bimodule", {}};
  if (d.mu.rows() != dA || d.mu.cols() != dP * dS) return Failure{"ShapeMismatch", "μ", {}};
  if (d.iota.rows() != dS * dP || d.iota.cols() != dR) return Failure{"ShapeMismatch", "ι", {}};

  SRing s;
  Report& rep = s.report;

  for (int a = 0; a < dA; ++a) {
    int c = (d.mu * kron(d.sigmap.left[a], id(p, dS))).first_diff_col(d.A->L[a] * d.mu);
    if (c >= 0) return Failure{"NotBalanced", "μ is not left A-linear", {a, c}};
    c = (d.mu * kron(id(p, dP), d.sigma.right[a])).first_diff_col(d.A->Rm[a] * d.mu);
    if (c >= 0) return Failure{"NotBalanced", "μ is not right A-linear", {a, c}};
  }
  rep.pass("mu_bilinear");

  Tensor over_b = Tensor::make({d.sigmap, d.sigma});
  auto mb = induced_map(over_b, d.mu);
  if (!mb) return tag(mb.error(), "μ over B");
  s.mu_B = *mb;

  auto st = Tensor::build({d.sigma, d.sigmap});
  if (!st) return st.error();
  s.S = std::move(st).value();
  s.SS = Tensor::make({d.sigma, d.sigmap, d.sigma, d.sigmap});
  const Tensor& S = s.S;
  const int sa = dS * dP;

  // x·μ(φ⊗y) for every (φ, y), as right actions on Σ
  std::vector<Mat> xmu(static_cast<size_t>(dP) * dS), muy(static_cast<size_t>(dP) * dS);
  for (int phi = 0; phi < dP; ++phi)
    for (int y = 0; y < dS; ++y) {
      Vec m = d.mu.col(phi * dS + y);
      xmu[phi * dS + y] = d.sigma.right_elem(m);
      muy[phi * dS + y] = d.sigmap.left_elem(m);
    }

  // ∇ on the ambient: x⊗φ⊗y⊗ψ -> xμ(φ⊗y)⊗ψ
  Mat amb(p, sa, sa * sa);
  for (int x = 0; x < dS; ++x)
    for (int phi = 0; phi < dP; ++phi)
      for (int y = 0; y < dS; ++y) {
        Vec v = xmu[phi * dS + y].col(x);
        for (int psi = 0; psi < dP; ++psi) {
          int col = ((x * dP + phi) * dS + y) * dP + psi;
          for (int x2 = 0; x2 < dS; ++x2)
            if (v[x2]) amb.set(x2 * dP + psi, col, v[x2]);
        }
      }
  Mat P = S.proj() * amb;
  auto nab = induced_map(s.SS, P);
  if (!nab) return tag(nab.error(), "∇");
  s.nabla = *nab;

  const int n = S.dim();
  std::vector<int> mult(static_cast<size_t>(n) * n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec v = P * kron_vec(S.sec().col(i), S.sec().col(j), p);
      for (int k = 0; k < n; ++k) mult[(static_cast<size_t>(i) * n + j) * n + k] = v[k];
    }
  s.ring = make_algebra(p, n, std::move(mult), std::nullopt, "S");
  rep.merge(validate_algebra(*s.ring), "S");

  // S acting on Σ: (x⊗φ)·u = xμ(φ⊗u)
  Mat act(p, dS, sa * dS);
  for (int x = 0; x < dS; ++x)
    for (int phi = 0; phi < dP; ++phi)
      for (int u = 0; u < dS; ++u) act.set_col((x * dP + phi) * dS + u, xmu[phi * dS + u].col(x));
  if (S.relations().cols() > 0) {
    Mat z = act * kron(S.relations(), id(p, dS));
    int c = z.first_diff_col(Mat(p, z.rows(), z.cols()));
    if (c >= 0) return Failure{"NotBalanced", "S-action on Σ", {c}};
  }
  // Σ′ acted on by S: φ·(y⊗ψ) = μ(φ⊗y)ψ
  Mat act2(p, dP, dP * sa);
  for (int phi = 0; phi < dP; ++phi)
    for (int y = 0; y < dS; ++y)
      for (int psi = 0; psi < dP; ++psi) act2.set_col(phi * sa + y * dP + psi, muy[phi * dS + y].col(psi));
  if (S.relations().cols() > 0) {
    Mat z = act2 * kron(id(p, dP), S.relations());
    int c = z.first_diff_col(Mat(p, z.rows(), z.cols()));
    if (c >= 0) return Failure{"NotBalanced", "S-action on Σ′", {c}};
  }
  for (int i = 0; i < n; ++i) {
    Mat sec_i = colm(p, S.sec().col(i));
    s.on_sigma.push_back(act * kron(sec_i, id(p, dS)));
    s.on_sigmap.push_back(act2 * kron(id(p, dP), sec_i));
  }
  Bimodule sigma_S = make_bimodule(d.sigma.name, s.ring, d.A, s.on_sigma, d.sigma.right);
  Bimodule sigmap_S = make_bimodule(d.sigmap.name, d.A, s.ring, d.sigmap.left, s.on_sigmap);
  rep.merge(validate_bimodule(sigma_S), "sigma_S");
  rep.merge(validate_bimodule(sigmap_S), "sigmap_S");

  s.iota = S.proj() * d.iota;
  for (int i = 0; i < dR; ++i)
    for (int j = 0; j < dR; ++j) {
      Vec lhs = s.iota * d.R->mul(unit_vec(dR, i), unit_vec(dR, j));
      Vec rhs = s.ring->mul(s.iota.col(i), s.iota.col(j));
      if (lhs != rhs) return Failure{"NotRingHom", "ι(rt) ≠ ι(r)ι(t)", {i, j}};
    }
  rep.pass("iota_ring_hom");

  s.sigma_R = with_left(d.sigma, d.R, pull_actions(s.on_sigma, s.iota));
  s.sigmap_R = with_right(d.sigmap, d.R, pull_actions(s.on_sigmap, s.iota));
  // the same actions straight from the ambient ι: r·u = e_r μ(φ_r⊗u), φ·r = μ(φ⊗e_r)φ_r
  for (int r = 0; r < dR; ++r) {
    Mat ir = colm(p, d.iota.col(r));
    add_equal(rep, "R_action_sigma", s.sigma_R.left[r], act * kron(ir, id(p, dS)));
    add_equal(rep, "R_action_sigmap", s.sigmap_R.right[r], act2 * kron(id(p, dP), ir));
  }
  // a declared unit of R need not act as identity here; that is a firmness question
  for (auto* m : {&s.sigma_R, &s.sigmap_R}) {
    Report vr = validate_bimodule(*m);
    for (auto& c : vr.checks)
      if (c.name.find("unital") == std::string::npos) rep.checks.push_back(c);
  }

  Tensor over_s = Tensor::make({sigmap_S, sigma_S});
  auto ms = induced_map(over_s, d.mu);
  if (!ms) return tag(ms.error(), "μ over S");
  s.mu_S = *ms;
  Tensor over_r = Tensor::make({s.sigmap_R, s.sigma_R});
  auto mr = induced_map(over_r, d.mu);
  if (!mr) return tag(mr.error(), "μ over R");
  s.mu_R = *mr;
  add_equal(rep, "mu_B_descends", s.mu_B * over_b.proj(), d.mu);
  add_equal(rep, "mu_S_descends", s.mu_S * over_s.proj(), d.mu);
  add_equal(rep, "mu_R_descends", s.mu_R * over_r.proj(), d.mu);
  return s;
}

Result<ComatrixCoring> build_comatrix(const ComatrixData& d) {
  auto sr = build_s_ring(d);
  if (!sr) return sr.error();
  ComatrixCoring cc;
  cc.data = d;
  cc.s = std::move(sr).value();
  Report& rep = cc.report;
  rep.merge(cc.s.report, "s_ring");
  const int p = d.A->p;
  const int dS = d.sigma.dim, dP = d.sigmap.dim, dR = d.R->dim;
  const Bimodule& sigma_R = cc.s.sigma_R;
  const Bimodule& sigmap_R = cc.s.sigmap_R;

  auto fr = firm_ring(d.R);
  if (!fr) return fr.error();
  cc.firm_r = std::move(fr).value();
  auto fs = firm_left(sigma_R);
  if (!fs) return fs.error();
  cc.firm_sigma = std::move(fs).value();

  Bimodule regR = regular_bimodule(d.R);
  cc.carrier = Tensor::make({sigmap_R, sigma_R});
  const Tensor& car = cc.carrier;
  Bimodule C = car.bimodule(d.name.empty() ? "Σ′⊗_RΣ" : d.name);
  cc.t3 = Tensor::make({sigmap_R, regR, sigma_R});
  Tensor CC = Tensor::make({C, C});

  auto sd = tensor_map(car, cc.t3, kron(id(p, dP), lifted_d(cc.firm_sigma)));
  if (!sd) return tag(sd.error(), "Σ′⊗d_Σ");
  cc.sigmap_d = *sd;
  Mat mid = kron_apply({id(p, dP), d.iota, id(p, dS)}, id(p, cc.t3.ambient()));
  mid = CC.proj() * kron_apply({car.proj(), car.proj()}, mid);
  auto im = induced_map(cc.t3, mid);
  if (!im) return tag(im.error(), "Σ′⊗ι⊗Σ");
  cc.iota_mid = *im;

  cc.coring = make_coring(C.name, C, cc.iota_mid * cc.sigmap_d, cc.s.mu_R);
  rep.merge(validate_coring(cc.coring), "coring");

  // ρ_Σ = (ι⊗Σ)∘d_Σ
  Tensor SC = Tensor::make({sigma_R, C});
  Mat rho_amb = kron_apply({d.iota, id(p, dS)}, id(p, dR * dS));
  rho_amb = SC.proj() * kron_apply({id(p, dS), car.proj()}, rho_amb);
  auto rho = induced_map(cc.firm_sigma.tensor, rho_amb);
  if (!rho) return tag(rho.error(), "ι⊗Σ");
  cc.sigma = make_right_comodule("Σ", sigma_R, cc.coring, *rho * cc.firm_sigma.d);
  rep.merge(validate_comodule(cc.sigma, cc.coring, true), "rho_sigma");

  // λ_Σ† = (Σ′⊗ι⊗R)∘(Σ′⊗d_R)
  cc.dagger = Tensor::make({sigmap_R, regR});
  Bimodule dag = cc.dagger.bimodule("Σ†");
  Tensor PRR = Tensor::make({sigmap_R, regR, regR});
  auto pd = tensor_map(cc.dagger, PRR, kron(id(p, dP), lifted_d(cc.firm_r)));
  if (!pd) return tag(pd.error(), "Σ′⊗d_R");
  Tensor CD = Tensor::make({C, dag});
  Mat lam_amb = kron_apply({id(p, dP), d.iota, id(p, dR)}, id(p, PRR.ambient()));
  lam_amb = CD.proj() * kron_apply({car.proj(), cc.dagger.proj()}, lam_amb);
  auto lam = induced_map(PRR, lam_amb);
  if (!lam) return tag(lam.error(), "Σ′⊗ι⊗R");
  cc.sigma_dagger = make_left_comodule("Σ†", dag, cc.coring, *lam * *pd);
  rep.merge(validate_left_comodule(cc.sigma_dagger, cc.coring, true), "lambda_dagger");

  // (d_Σ⊗Σ′)∘ι = (R⊗ι)∘d_R as maps R -> R⊗Σ⊗Σ′
  Tensor SR = Tensor::make({sigma_R, sigmap_R});
  Tensor RSS = Tensor::make({regR, sigma_R, sigmap_R});
  auto lhs = tensor_map(SR, RSS, kron(lifted_d(cc.firm_sigma), id(p, dP)));
  auto rhs = tensor_map(cc.firm_r.tensor, RSS, kron(id(p, dR), d.iota));
  if (!lhs || !rhs) {
    rep.fail("porfirm", "component maps not balanced");
  } else {
    add_equal(rep, "porfirm", *lhs * cc.s.iota, *rhs * cc.firm_r.d);
  }
  return cc;
}

Result<ComatrixPrime> build_comatrix_prime(const ComatrixCoring& cc) {
  const ComatrixData& d = cc.data;
  const int p = d.A->p;
  const int dS = d.sigma.dim, dP = d.sigmap.dim, dR = d.R->dim;
  auto fp = firm_right(cc.s.sigmap_R);
  if (!fp) return fp.error();
  ComatrixPrime out;
  out.firm_sigmap = std::move(fp).value();
  Report& rep = out.report;
  const FirmStructure& F = out.firm_sigmap;
  const Tensor& car = cc.carrier;
  const Bimodule& C = cc.coring.C;
  const int dC = C.dim;

  auto dps = tensor_map(car, cc.t3, kron(lifted_d(F), id(p, dS)));
  if (!dps) return tag(dps.error(), "d_Σ′⊗Σ");
  out.delta_prime = cc.iota_mid * *dps;
  add_equal(rep, "delta_equal", out.delta_prime, cc.coring.delta);

  // λ_Σ′(φ) = φ^r ⊗ ι(r) lands in C ⊗ Σ′
  Tensor CP = Tensor::make({C, cc.s.sigmap_R});
  Mat amb = kron_apply({id(p, dP), d.iota}, id(p, dP * dR));
  amb = CP.proj() * kron_apply({car.proj(), id(p, dP)}, amb);
  auto lp = induced_map(F.tensor, amb);
  if (!lp) return tag(lp.error(), "Σ′⊗ι");
  LeftComodule sp = make_left_comodule("Σ′", cc.s.sigmap_R, cc.coring, *lp * F.d);
  rep.merge(validate_left_comodule(sp, cc.coring, true), "lambda_sigmap");
  // d_Σ′ : Σ′ -> Σ† is colinear and right R-linear
  const Bimodule& dag = cc.sigma_dagger.N;
  auto cdp = tensor_map(CP, cc.sigma_dagger.CN, kron(id(p, dC), F.d));
  if (!cdp) return tag(cdp.error(), "C⊗d_Σ′");
  add_equal(rep, "d_sigmap_colinear", *cdp * sp.lambda, cc.sigma_dagger.lambda * F.d);
  for (int r = 0; r < dR; ++r) add_equal(rep, "d_sigmap_R_linear", dag.right[r] * F.d, F.d * cc.s.sigmap_R.right[r]);
  rep.add("d_sigmap_invertible", invert(F.d).ok());

  // d_Σ : Σ -> R⊗_RΣ against ρ(r⊗u) = s⊗ι(r^s)⊗u
  const FirmStructure& G = cc.firm_sigma;
  Bimodule rs = G.tensor.bimodule("R⊗Σ");
  Tensor TC = Tensor::make({rs, C});
  Mat ra = kron_apply({lifted_d(cc.firm_r), id(p, dS)}, id(p, dR * dS));
  ra = kron_apply({id(p, dR), d.iota, id(p, dS)}, ra);
  ra = TC.proj() * kron_apply({G.tensor.proj(), car.proj()}, ra);
  auto rt = induced_map(G.tensor, ra);
  if (!rt) return tag(rt.error(), "R⊗ι⊗Σ");
  RightComodule rsc = make_right_comodule("R⊗Σ", rs, cc.coring, *rt);
  rep.merge(validate_comodule(rsc, cc.coring, true), "rho_R_sigma");
  auto dc = tensor_map(cc.sigma.MC, TC, kron(G.d, id(p, dC)));
  if (!dc) return tag(dc.error(), "d_Σ⊗C");
  add_equal(rep, "d_sigma_colinear", *dc * cc.sigma.rho, *rt * G.d);
  for (int r = 0; r < dR; ++r) add_equal(rep, "d_sigma_R_linear", rs.left[r] * G.d, G.d * cc.s.sigma_R.left[r]);
  return out;
}

Result<DaggerCoring> build_dagger(const ComatrixCoring& cc) {
  const ComatrixData& d = cc.data;
  const int p = d.A->p;
  const int dS = d.sigma.dim, dP = d.sigmap.dim, dR = d.R->dim;
  DaggerCoring out;
  Report& rep = out.report;
  out.D = cc.t3;
  const Tensor& D = out.D;
  Bimodule Db = D.bimodule("Σ†⊗_RΣ");
  Tensor DD = Tensor::make({Db, Db});
  Mat dR_l = lifted_d(cc.firm_r), dS_l = lifted_d(cc.firm_sigma);
  Mat I_P = id(p, dP), I_R = id(p, dR), I_S = id(p, dS);

  // φ⊗r⊗x -> φ⊗r⊗ι(t)⊗s^t⊗x^s
  Mat x1 = kron_apply({I_P, I_R, dS_l}, id(p, D.ambient()));
  x1 = kron_apply({I_P, I_R, dR_l, I_S}, x1);
  x1 = kron_apply({I_P, I_R, d.iota, I_R, I_S}, x1);
  x1 = DD.proj() * kron_apply({D.proj(), D.proj()}, x1);
  auto del = induced_map(D, x1);
  if (!del) return tag(del.error(), "Δ†");
  // φ⊗r⊗x -> φ⊗s⊗ι(t)⊗(r^s)^t⊗x
  Mat x2 = kron_apply({I_P, dR_l, I_S}, id(p, D.ambient()));
  x2 = kron_apply({I_P, I_R, dR_l, I_S}, x2);
  x2 = kron_apply({I_P, I_R, d.iota, I_R, I_S}, x2);
  x2 = DD.proj() * kron_apply({D.proj(), D.proj()}, x2);
  auto del2 = induced_map(D, x2);
  if (!del2) return tag(del2.error(), "Δ† second form");
  add_equal(rep, "delta_dagger_forms", *del, *del2);

  Mat act = multiplication_ambient_left(cc.s.sigma_R);
  auto eps = induced_map(D, d.mu * kron(I_P, act));
  if (!eps) return tag(eps.error(), "ε†");
  out.coring = make_coring(Db.name, Db, *del, *eps);
  rep.merge(validate_coring(out.coring), "coring");

  auto f = tensor_map(D, cc.carrier, kron(I_P, act));
  if (!f) return tag(f.error(), "f");
  out.f = *f;
  auto fi = invert(out.f);
  if (!fi) return tag(fi.error(), "f");
  out.f_inverse = *fi;
  add_equal(rep, "f_inverse_is_sigmap_d", out.f_inverse, cc.sigmap_d);
  rep.merge(coring_hom_check(out.coring, cc.coring, out.f), "f");

  // ρ†(x) = ι(s)⊗r^s⊗x^r
  Tensor SD = Tensor::make({cc.s.sigma_R, Db});
  Mat ra = kron_apply({dR_l, I_S}, id(p, dR * dS));
  ra = kron_apply({d.iota, I_R, I_S}, ra);
  ra = SD.proj() * kron_apply({I_S, D.proj()}, ra);
  auto rd = induced_map(cc.firm_sigma.tensor, ra);
  if (!rd) return tag(rd.error(), "ρ†");
  out.sigma = make_right_comodule("Σ", cc.s.sigma_R, out.coring, *rd * cc.firm_sigma.d);
  rep.merge(validate_comodule(out.sigma, out.coring, true), "rho_dagger");
  auto sf = tensor_map(SD, cc.sigma.MC, kron(I_S, out.f));
  if (!sf) return tag(sf.error(), "Σ⊗f");
  add_equal(rep, "rho_transport", *sf * out.sigma.rho, cc.sigma.rho);

  // λ†(φ⊗r) = φ⊗s⊗ι(t)⊗(r^s)^t
  const Bimodule& dag = cc.sigma_dagger.N;
  Tensor DS = Tensor::make({Db, dag});
  Mat la = kron_apply({I_P, dR_l}, id(p, dP * dR));
  la = kron_apply({I_P, I_R, dR_l}, la);
  la = kron_apply({I_P, I_R, d.iota, I_R}, la);
  la = DS.proj() * kron_apply({D.proj(), cc.dagger.proj()}, la);
  auto ld = induced_map(cc.dagger, la);
  if (!ld) return tag(ld.error(), "λ†");
  out.dagger = make_left_comodule("Σ†", dag, out.coring, *ld);
  rep.merge(validate_left_comodule(out.dagger, out.coring, true), "lambda_dagger");
  auto fs = tensor_map(DS, cc.sigma_dagger.CN, kron(out.f, id(p, dag.dim)));
  if (!fs) return tag(fs.error(), "f⊗Σ†");
  add_equal(rep, "lambda_transport", *fs * out.dagger.lambda, cc.sigma_dagger.lambda);
  return out;
}

Mat DualSpace::functional(int i) const {
  const int dA = module.lring->dim;
  const int dS = dA == 0 ? 0 : basis.rows() / dA;
  Mat f(basis.p(), dA, dS);
  for (int a = 0; a < dA; ++a)
    for (int u = 0; u < dS; ++u) f.set(a, u, basis(a * dS + u, i));
  return f;
}

std::optional<Vec> DualSpace::coords(const Mat& f) const {
  Vec v(static_cast<size_t>(f.rows()) * f.cols());
  for (int a = 0; a < f.rows(); ++a)
    for (int u = 0; u < f.cols(); ++u) v[static_cast<size_t>(a) * f.cols() + u] = f(a, u);
  auto s = solve(basis, v);
  if (!s) return std::nullopt;
  return s->x;
}

DualSpace dual_space(const Bimodule& sigma, const AlgPtr& A) {
  const int p = sigma.p;
  const int dA = A->dim, dS = sigma.dim, n = dA * dS;
  // F·σ_t − Rm_t·F = 0 for every basis element t of A
  Mat sys(p, n * dA, n);
  for (int t = 0; t < dA; ++t)
    for (int a = 0; a < dA; ++a)
      for (int u = 0; u < dS; ++u) {
        int col = a * dS + u;
        for (int v = 0; v < dS; ++v) sys.add_to(t * n + a * dS + v, col, sigma.right[t](u, v));
        for (int b = 0; b < dA; ++b) sys.add_to(t * n + b * dS + u, col, -A->Rm[t](b, a));
      }
  DualSpace out;
  out.basis = kernel(sys);
  const int k = out.basis.cols();
  auto restrict_to = [&](auto&& op) {
    Mat images(p, n, k);
    for (int i = 0; i < k; ++i) {
      Mat f(p, dA, dS);
      for (int a = 0; a < dA; ++a)
        for (int u = 0; u < dS; ++u) f.set(a, u, out.basis(a * dS + u, i));
      Mat g = op(f);
      Vec v(n);
      for (int a = 0; a < dA; ++a)
        for (int u = 0; u < dS; ++u) v[a * dS + u] = g(a, u);
      images.set_col(i, v);
    }
    auto m = solve_mat(out.basis, images);
    if (!m) throw InternalError(Failure{"NotBalanced", "dual space not stable under an action", {}});
    return *m;
  };
  std::vector<Mat> left, right;
  for (int a = 0; a < dA; ++a) left.push_back(restrict_to([&](const Mat& f) { return A->L[a] * f; }));
  for (size_t r = 0; r < sigma.left.size(); ++r)
    right.push_back(restrict_to([&](const Mat& f) { return f * sigma.left[r]; }));
  out.module = make_bimodule("Σ*", A, sigma.lring, std::move(left), std::move(right));
  out.module.dim = k;
  out.ev = Mat(p, dA, k * dS);
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < dA; ++a)
      for (int u = 0; u < dS; ++u) out.ev.set(a, i * dS + u, out.basis(a * dS + u, i));
  return out;
}

Result<SigmaStarTransport> transport_to_sigma_star(const ComatrixCoring& cc) {
  const ComatrixData& d = cc.data;
  const int p = d.A->p;
  const int dS = d.sigma.dim, dP = d.sigmap.dim, dR = d.R->dim, dA = d.A->dim;
  SigmaStarTransport out;
  Report& rep = out.report;
  out.star = dual_space(d.sigma, d.A);
  const DualSpace& st = out.star;
  const int k = st.dim();

  out.phibar = Mat(p, k, dP);
  for (int phi = 0; phi < dP; ++phi) {
    Mat f(p, dA, dS);
    for (int a = 0; a < dA; ++a)
      for (int u = 0; u < dS; ++u) f.set(a, u, d.mu(a, phi * dS + u));
    auto c = st.coords(f);
    if (!c) return Failure{"NotBalanced", "μ(φ⊗−) is not right A-linear", {phi}};
    out.phibar.set_col(phi, *c);
  }
  out.data = ComatrixData{d.name + "*", d.A, d.B, d.R, d.sigma, st.module, st.ev, kron(id(p, dS), out.phibar) * d.iota};
  auto sc = build_comatrix(out.data);
  if (!sc) return tag(sc.error(), "Σ*⊗_RΣ");
  out.coring = std::move(sc).value();
  rep.merge(out.coring.report, "star");

  auto m = tensor_map(cc.carrier, out.coring.carrier, kron(out.phibar, id(p, dS)));
  if (!m) return tag(m.error(), "φ̄⊗Σ");
  out.map = *m;
  auto inv = invert(out.map);
  if (!inv) return tag(inv.error(), "φ̄⊗Σ");
  out.inverse = *inv;
  rep.merge(coring_hom_check(cc.coring, out.coring.coring, out.map), "map");

  // α̃: h⊗x -> h⊗r⊗x^r -> h⊗s⊗r^s⊗x^r -> h(e_s)φ_s⊗r^s x^r
  Mat P(p, dP, k * dR);
  for (int h = 0; h < k; ++h) {
    Mat fh = st.functional(h);
    for (int s = 0; s < dR; ++s) {
      Vec v(dP, 0);
      for (int y = 0; y < dS; ++y)
        for (int psi = 0; psi < dP; ++psi) {
          int c = d.iota(y * dP + psi, s);
          if (!c) continue;
          Vec w = d.sigmap.left_elem(fh.col(y)).col(psi);
          v = add_vec(v, scale_vec(w, c, p), p);
        }
      P.set_col(h * dR + s, v);
    }
  }
  Mat a = kron_apply({id(p, k), lifted_d(cc.firm_sigma)}, id(p, k * dS));
  a = kron_apply({id(p, k), lifted_d(cc.firm_r), id(p, dS)}, a);
  a = kron_apply({P, id(p, dR), id(p, dS)}, a);
  a = cc.carrier.proj() * kron_apply({id(p, dP), multiplication_ambient_left(cc.s.sigma_R)}, a);
  auto at = induced_map(out.coring.carrier, a);
  if (!at) return tag(at.error(), "α̃");
  out.alpha_tilde = *at;
  add_equal(rep, "alpha_tilde_is_inverse", out.alpha_tilde, out.inverse);
  return out;
}

ContextReport context_validate(const AlgPtr& A, const AlgPtr& B, const Bimodule& sigma, const Bimodule& sigmap,
                               const Mat& iota, const Mat& eps) {
  ContextReport out;
  Report& rep = out.report;
  const int dS = sigma.dim, dP = sigmap.dim, dA = A->dim, dB = B->dim;
  if (!B->unit) {
    rep.fail("shape", "B must be unital");
    return out;
  }
  if (iota.rows() != dS * dP || iota.cols() != dB || eps.rows() != dA || eps.cols() != dP * dS) {
    rep.fail("shape", "ShapeMismatch");
    return out;
  }
  // ε(φ⊗y) as actions
  std::vector<Mat> on_sigma(static_cast<size_t>(dP) * dS), on_sigmap(static_cast<size_t>(dP) * dS);
  for (int phi = 0; phi < dP; ++phi)
    for (int y = 0; y < dS; ++y) {
      on_sigma[phi * dS + y] = sigma.right_elem(eps.col(phi * dS + y));
      on_sigmap[phi * dS + y] = sigmap.left_elem(eps.col(phi * dS + y));
    }
  // (ε⊗Σ′)(Σ′⊗ι)(φ⊗b) = φb
  bool left_ok = true;
  for (int phi = 0; phi < dP && left_ok; ++phi)
    for (int b = 0; b < dB && left_ok; ++b) {
      Vec v(dP, 0);
      for (int y = 0; y < dS; ++y)
        for (int psi = 0; psi < dP; ++psi)
          if (int c = iota(y * dP + psi, b)) v = add_vec(v, scale_vec(on_sigmap[phi * dS + y].col(psi), c, sigma.p), sigma.p);
      if (v != sigmap.right[b].col(phi)) {
        rep.fail("left", "DiagramFails", {phi, b});
        left_ok = false;
      }
    }
  if (left_ok) rep.pass("left");
  // (Σ⊗ε)(ι⊗Σ)(b⊗u) = bu
  bool right_ok = true;
  for (int b = 0; b < dB && right_ok; ++b)
    for (int u = 0; u < dS && right_ok; ++u) {
      Vec v(dS, 0);
      for (int y = 0; y < dS; ++y)
        for (int psi = 0; psi < dP; ++psi)
          if (int c = iota(y * dP + psi, b)) v = add_vec(v, scale_vec(on_sigma[psi * dS + u].col(y), c, sigma.p), sigma.p);
      if (v != sigma.left[b].col(u)) {
        rep.fail("right", "DiagramFails", {b, u});
        right_ok = false;
      }
    }
  if (right_ok) rep.pass("right");
  if (!rep.ok()) return out;
  Vec one = iota * *B->unit;
  for (int y = 0; y < dS; ++y) {
    Vec f(dP, 0);
    bool any = false;
    for (int psi = 0; psi < dP; ++psi)
      if (one[y * dP + psi]) {
        f[psi] = one[y * dP + psi];
        any = true;
      }
    if (any) out.dual_basis.emplace_back(unit_vec(dS, y), f);
  }
  return out;
}

}  // namespace firmcor
