#include "firmcor/galois.hpp"

#include <algorithm>
#include <cmath>
#include <map>
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

bool bijective(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

bool span_equal(const Mat& a, const Mat& b) {
  int ra = a.cols() ? rank(a) : 0, rb = b.cols() ? rank(b) : 0;
  if (ra != rb) return false;
  if (ra == 0) return true;
  return rank(hcat({a, b})) == ra;
}

Mat flatten_cols(const std::vector<Mat>& hs, int p, int n) {
  Mat out(p, n, static_cast<int>(hs.size()));
  for (size_t c = 0; c < hs.size(); ++c)
    for (int i = 0; i < hs[c].rows(); ++i)
      for (int j = 0; j < hs[c].cols(); ++j) out.set(i * hs[c].cols() + j, static_cast<int>(c), hs[c](i, j));
  return out;
}

const Bimodule& sigma_r(const GaloisSetup& g) { return g.sigma.M; }

// (h, x) -> h(x0) x1 on the ambient Σ* ⊗_K Σ
Mat can_ambient(const GaloisSetup& g) {
  const DualSpace& st = g.star.star;
  const int p = g.target.C.p, k = st.dim(), dS = sigma_r(g).dim, dC = g.target.dim();
  Mat rl = g.sigma.MC.sec() * g.sigma.rho;
  Mat out(p, dC, k * dS);
  for (int h = 0; h < k; ++h) {
    Mat fh = st.functional(h);
    std::vector<Mat> lact;
    for (int y = 0; y < dS; ++y) lact.push_back(g.target.C.left_elem(fh.col(y)));
    for (int x = 0; x < dS; ++x) {
      Vec v(dC, 0);
      for (int y = 0; y < dS; ++y)
        for (int c = 0; c < dC; ++c) {
          int coef = rl(y * dC + c, x);
          if (coef) v = add_vec(v, scale_vec(lact[y].col(c), coef, p), p);
        }
      out.set_col(h * dS + x, v);
    }
  }
  return out;
}

// Σ† ⊗_K Σ -> A, (φ⊗r, x) -> φ(rx), on quotient coordinates of Σ†
Mat dagger_pairing(const GaloisSetup& g) {
  const ComatrixCoring& sc = g.self();
  const int p = g.target.C.p, k = g.star.star.dim(), dS = sigma_r(g).dim;
  Mat act = multiplication_ambient_left(sigma_r(g));
  return g.star.star.ev * kron_apply({id(p, k), act}, kron(sc.dagger.sec(), id(p, dS)));
}

// (m, q, x) -> m·φ(rx) on M ⊗_K Σ† ⊗_K Σ for a right A-module M
Mat delta_ambient(const GaloisSetup& g, const Bimodule& m) {
  const int p = m.p, dM = m.dim, dq = g.self().dagger.dim(), dS = sigma_r(g).dim;
  Mat ed = dagger_pairing(g);
  Mat out(p, dM, dM * dq * dS);
  for (int q = 0; q < dq; ++q)
    for (int x = 0; x < dS; ++x) {
      Mat a = m.right_elem(ed.col(q * dS + x));
      for (int n = 0; n < dM; ++n) out.set_col((n * dq + q) * dS + x, a.col(n));
    }
  return out;
}

Mat zeta_ambient(const HomSpace& h) {
  Mat za(h.basis.p(), h.dn, h.dim() * h.ds);
  for (int i = 0; i < h.dim(); ++i) {
    Mat m = h.map(i);
    for (int u = 0; u < h.ds; ++u) za.set_col(i * h.ds + u, m.col(u));
  }
  return za;
}

Mat pi_ambient(const HomSpace& h, const Bimodule& sR) {
  const int dR = sR.lring->dim;
  Mat pa(h.basis.p(), h.dn, h.dim() * dR * h.ds);
  for (int i = 0; i < h.dim(); ++i) {
    Mat m = h.map(i);
    for (int r = 0; r < dR; ++r) {
      Mat mr = m * sR.left[r];
      for (int u = 0; u < h.ds; ++u) pa.set_col((i * dR + r) * h.ds + u, mr.col(u));
    }
  }
  return pa;
}

// r -> coordinates of x -> r·x in End^C(Σ)
Mat nu_matrix(const GaloisSetup& g, const HomSpace& t) {
  const Bimodule& sR = sigma_r(g);
  Mat nu(sR.p, t.dim(), sR.lring->dim);
  for (int r = 0; r < sR.lring->dim; ++r) {
    auto c = t.coords(sR.left[r]);
    if (!c) throw InternalError(Failure{"NotBicomodule", "left R-action on Σ is not colinear", {r}});
    nu.set_col(r, *c);
  }
  return nu;
}

Result<LeftComodule> dagger_over_target(const GaloisSetup& g, const Mat& can) {
  const ComatrixCoring& sc = g.self();
  const Bimodule& dag = sc.sigma_dagger.N;
  Tensor cd = Tensor::make({g.target.C, dag});
  auto m = tensor_map(sc.sigma_dagger.CN, cd, kron(can, id(dag.p, dag.dim)));
  if (!m) return tag(m.error(), "can⊗Σ†");
  return make_left_comodule("Σ†", dag, g.target, *m * sc.sigma_dagger.lambda);
}

}  // namespace

Mat HomSpace::map(int i) const {
  Mat h(basis.p(), dn, ds);
  for (int a = 0; a < dn; ++a)
    for (int u = 0; u < ds; ++u) h.set(a, u, basis(a * ds + u, i));
  return h;
}

std::optional<Vec> HomSpace::coords(const Mat& h) const {
  Vec v(static_cast<size_t>(dn) * ds);
  for (int a = 0; a < dn; ++a)
    for (int u = 0; u < ds; ++u) v[static_cast<size_t>(a) * ds + u] = h(a, u);
  if (dim() == 0) {
    if (is_zero_vec(v)) return Vec{};
    return std::nullopt;
  }
  auto s = solve(basis, v);
  if (!s) return std::nullopt;
  return s->x;
}

bool ClaveVector::consistent() const {
  if (zeta != pi || zeta != chi) return false;
  if (psi && *psi != zeta) return false;
  if (preserves && *preserves != zeta) return false;
  return true;
}

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::certified: return "certified";
    case Tri::refuted: return "refuted";
    default: return "inconclusive";
  }
}

Result<GaloisSetup> galois_setup(const ComatrixCoring& cc, const Coring& target, const Mat& rho, const std::string& name) {
  GaloisSetup g;
  g.name = name;
  g.cc = cc;
  auto st = transport_to_sigma_star(cc);
  if (!st) return tag(st.error(), "Σ*");
  g.star = std::move(st).value();
  auto dg = build_dagger(g.star.coring);
  if (!dg) return tag(dg.error(), "Σ†⊗_RΣ");
  g.dagger = std::move(dg).value();
  g.target = target;
  const Bimodule& sR = g.self().s.sigma_R;
  for (size_t r = 0; r < sR.left.size(); ++r)
    if (sR.left[r] != cc.s.sigma_R.left[r])
      return Failure{"NotBicomodule", "R acts differently through ι and ι*", {static_cast<int>(r)}};
  Tensor mc = Tensor::make({sR, target.C});
  if (rho.rows() != mc.dim() || rho.cols() != sR.dim) return Failure{"ShapeMismatch", "ρ_Σ", {}};
  g.sigma = make_right_comodule("Σ", sR, target, rho);
  Report vc = validate_comodule(g.sigma, target, false);
  if (!vc.ok()) return vc.as_failure("NotComodule");
  Bimodule mcb = g.sigma.MC.bimodule();
  for (size_t r = 0; r < sR.left.size(); ++r) {
    Mat lhs = mcb.left[r] * rho, rhs = rho * sR.left[r];
    int col = lhs.first_diff_col(rhs);
    if (col >= 0) return Failure{"NotBicomodule", "ρ_Σ is not left R-linear", {static_cast<int>(r), col}};
  }
  g.report.merge(g.star.report, "star");
  g.report.merge(g.dagger.report, "dagger");

  auto maps = canonical_maps(g);
  if (!maps) return maps.error();
  g.maps = std::move(maps).value();
  g.report.merge(g.maps.report, "maps");

  auto dc = dagger_over_target(g, g.maps.can);
  if (!dc) return dc.error();
  g.dagger_c = std::move(dc).value();
  g.report.merge(validate_left_comodule(g.dagger_c, target, true), "dagger_c");
  // Σ†⊗_RΣ over C through can†
  const Coring& D = g.dagger.coring;
  Tensor cd = Tensor::make({target.C, D.C});
  auto m = tensor_map(D.CC, cd, kron(g.maps.can_dagger, id(D.C.p, D.C.dim)));
  if (!m) return tag(m.error(), "can†⊗D");
  g.d_c = make_left_comodule("Σ†⊗_RΣ", D.C, target, *m * D.delta);
  g.report.merge(validate_left_comodule(g.d_c, target, true), "d_c");
  return g;
}

Result<GaloisSetup> galois_setup(const InstanceBundle& b) {
  auto cc = build_comatrix(b.data);
  if (!cc) return cc.error();
  if (b.target) {
    Tensor mc = Tensor::make({cc->s.sigma_R, b.target->C});
    if (b.rho.rows() != mc.ambient() || b.rho.cols() != cc->s.sigma_R.dim) return Failure{"ShapeMismatch", "ρ_Σ", {}};
    return galois_setup(*cc, *b.target, mc.proj() * b.rho, b.name);
  }
  return galois_setup(*cc, cc->coring, cc->sigma.rho, b.name);
}

Result<GaloisSetup> self_setup(const InstanceBundle& b) {
  auto cc = build_comatrix(b.data);
  if (!cc) return cc.error();
  auto st = transport_to_sigma_star(*cc);
  if (!st) return tag(st.error(), "Σ*");
  return galois_setup(*cc, st->coring.coring, st->coring.sigma.rho, b.name + "/self");
}

Result<GaloisMaps> canonical_maps(const GaloisSetup& g) {
  const ComatrixCoring& sc = g.self();
  const Bimodule& sR = sigma_r(g);
  const int p = sR.p, k = g.star.star.dim(), dS = sR.dim, dC = g.target.dim();
  GaloisMaps out;
  Report& rep = out.report;
  Mat camb = can_ambient(g);
  auto can = induced_map(sc.carrier, camb);
  if (!can) return tag(can.error(), "can");
  out.can = *can;
  // (φ⊗r)⊗x -> can(φ⊗rx)
  Mat act = multiplication_ambient_left(sR);
  auto cd = induced_map(g.dagger.D, camb * kron(id(p, k), act));
  if (!cd) return tag(cd.error(), "can†");
  out.can_dagger = *cd;

  // second route: c⊗(φ⊗r)⊗x -> c·φ(rx) after λ^C_Σ†

  auto lc = dagger_over_target(g, out.can);
  if (!lc) return lc.error();
  const int dq = sc.dagger.dim();
  Mat Lc = lc->CN.sec() * lc->lambda;
  Mat ed = dagger_pairing(g);
  Mat M2(p, dC, dC * dq * dS);
  for (int q = 0; q < dq; ++q)
    for (int x = 0; x < dS; ++x) {
      Mat a = g.target.C.right_elem(ed.col(q * dS + x));
      for (int c = 0; c < dC; ++c) M2.set_col((c * dq + q) * dS + x, a.col(c));
    }
  Mat amb2 = M2 * kron(Lc, id(p, dS)) * kron(sc.dagger.proj(), id(p, dS));
  auto cd2 = induced_map(g.dagger.D, amb2);
  if (!cd2) return tag(cd2.error(), "can† through λ");
  out.can_dagger_alt = *cd2;

  rep.merge(coring_hom_check(sc.coring, g.target, out.can), "can_hom");
  rep.merge(coring_hom_check(g.dagger.coring, g.target, out.can_dagger), "can_dagger_hom");
  add_equal(rep, "can_dagger_routes", out.can_dagger, out.can_dagger_alt);
  add_equal(rep, "can_factors_through_d", out.can, out.can_dagger * sc.sigmap_d);
  add_equal(rep, "can_f_is_can_dagger", out.can * g.dagger.f, out.can_dagger);
  return out;
}

GaloisVerdict galois_check(const GaloisSetup& g) {
  GaloisVerdict v;
  Report& rep = v.report;
  const Mat& can = g.maps.can;
  auto inv = invert(can);
  auto invd = invert(g.maps.can_dagger);
  rep.add("can_dagger_agrees", inv.ok() == invd.ok());
  if (inv) {
    v.galois = true;
    v.inverse = *inv;
    add_equal(rep, "inverse_left", *inv * can, id(can.p(), can.cols()));
    add_equal(rep, "inverse_right", can * *inv, id(can.p(), can.rows()));
  } else {
    v.witness = inv.error().witness;
    v.witness_kind = inv.error().detail;
    if (v.witness_kind == "kernel vector") {
      rep.add("witness_in_kernel", is_zero_vec(can * v.witness));
    } else {
      Mat f = Mat::column(can.p(), v.witness).transpose();
      rep.add("witness_kills_image", (f * can).is_zero());
    }
  }
  return v;
}

HomSpace hom_space(const GaloisSetup& g, const RightComodule& n, bool colinear) {
  const Bimodule& S = sigma_r(g);
  const int p = S.p, dS = S.dim, dN = n.M.dim, dA = g.target.A->dim, dC = g.target.dim();
  const int nv = dN * dS;
  const int dMC = colinear ? n.MC.dim() : 0;
  Mat sys(p, dA * nv + dMC * dS, nv);
  Mat rl = g.sigma.MC.sec() * g.sigma.rho;
  for (int i = 0; i < dN; ++i)
    for (int j = 0; j < dS; ++j) {
      const int col = i * dS + j;
      for (int a = 0; a < dA; ++a) {
        for (int v = 0; v < dS; ++v) sys.add_to(a * nv + i * dS + v, col, S.right[a](j, v));
        for (int u = 0; u < dN; ++u) sys.add_to(a * nv + u * dS + j, col, -n.M.right[a](u, i));
      }
      if (!colinear) continue;
      const int base = dA * nv;
      // ρ_N∘E: column j is ρ_N(e_i)
      for (int m = 0; m < dMC; ++m) sys.add_to(base + m * dS + j, col, n.rho(m, i));
      // (E⊗C)∘ρ_Σ
      for (int x = 0; x < dS; ++x)
        for (int c = 0; c < dC; ++c) {
          int coef = rl(j * dC + c, x);
          if (!coef) continue;
          for (int m = 0; m < dMC; ++m) sys.add_to(base + m * dS + x, col, -static_cast<long long>(coef) * n.MC.proj()(m, i * dC + c));
        }
    }
  HomSpace out;
  out.dn = dN;
  out.ds = dS;
  out.basis = kernel(sys);
  const int k = out.basis.cols();
  std::vector<Mat> right;
  for (int r = 0; r < S.lring->dim; ++r) {
    std::vector<Mat> imgs;
    for (int i = 0; i < k; ++i) imgs.push_back(out.map(i) * S.left[r]);
    if (k == 0) {
      right.push_back(Mat(p, 0, 0));
      continue;
    }
    auto c = solve_mat(out.basis, flatten_cols(imgs, p, nv));
    if (!c) throw InternalError(Failure{"NotBicomodule", "Hom(Σ, N) not stable under R", {r}});
    right.push_back(*c);
  }
  out.module = right_module(colinear ? "Hom^C(Σ,N)" : "Hom_A(Σ,N)", S.lring, std::move(right));
  out.module.dim = k;
  out.module.left = {id(p, k)};
  return out;
}

ComoduleKit adjunction_kit(const GaloisSetup& g, const RightComodule& n, bool galois) {
  const ComatrixCoring& sc = g.self();
  const Bimodule& sR = sigma_r(g);
  const Bimodule& dag = sc.sigma_dagger.N;
  const AlgPtr& R = sR.lring;
  const int p = sR.p, dS = sR.dim, dN = n.M.dim, dR = R->dim, kk = g.star.star.dim(), dq = dag.dim;
  Bimodule regR = regular_bimodule(R);
  ComoduleKit k;
  Report& rep = k.report;

  k.hom = hom_space(g, n, true);
  k.hs = Tensor::make({k.hom.module, sR});
  k.zeta = must(induced_map(k.hs, zeta_ambient(k.hom)));
  k.hrs = Tensor::make({k.hom.module, regR, sR});
  k.pi = must(induced_map(k.hrs, pi_ambient(k.hom, sR)));

  k.cot = cotensor(n, g.dagger_c, g.target);
  k.cot_module = sub_bimodule(k.cot.MN.bimodule("N⊗Σ†"), k.cot.inclusion, "N□Σ†");
  k.cs = Tensor::make({k.cot_module, sR});
  Tensor nds = Tensor::make({n.M, dag, sR});
  Mat inc = k.cot.MN.sec() * k.cot.inclusion;
  k.eq_sigma = must(tensor_map(k.cs, nds, kron(inc, id(p, dS))));
  Mat dn = delta_ambient(g, n.M);
  k.delta = must(induced_map(nds, dn));
  k.chi = must(induced_map(k.cs, dn * kron(inc, id(p, dS))));
  add_equal(rep, "chi_is_delta_eq", k.chi, k.delta * k.eq_sigma);

  Tensor ncds = Tensor::make({n.M, g.target.C, dag, sR});
  Mat a1 = kron_all({n.MC.sec() * n.rho, id(p, dq), id(p, dS)});
  Mat a2 = kron_all({id(p, dN), g.dagger_c.CN.sec() * g.dagger_c.lambda, id(p, dS)});
  k.pair_sigma = must(induced_map(nds, ncds.proj() * (a1 - a2)));
  rep.add("pair_kills_eq", (k.pair_sigma * k.eq_sigma).is_zero());
  const int req = k.eq_sigma.cols() ? rank(k.eq_sigma) : 0;
  const int rpair = k.pair_sigma.cols() && k.pair_sigma.rows() ? rank(k.pair_sigma) : 0;
  const bool preserves = req == k.eq_sigma.cols() && req == nds.dim() - rpair;

  // Ψ_N through N⊗_A(Σ†⊗_RΣ)
  const Coring& D = g.dagger.coring;
  k.cot_d = cotensor(n, g.d_c, g.target);
  Mat assoc = must(tensor_map(nds, k.cot_d.MN, kron(id(p, dN), g.dagger.D.proj() * kron(sc.dagger.sec(), id(p, dS)))));
  Mat target_psi = assoc * k.eq_sigma;
  if (k.cot_d.inclusion.cols() == 0) {
    if (target_psi.is_zero()) k.psi = Mat(p, 0, target_psi.cols());
  } else if (target_psi.cols() == 0) {
    k.psi = Mat(p, k.cot_d.inclusion.cols(), 0);
  } else {
    k.psi = solve_mat(k.cot_d.inclusion, target_psi);
  }
  if (!k.psi) {
    rep.fail("psi_defined", "eq⊗Σ does not land in N□(Σ†⊗Σ)");
  } else {
    rep.pass("psi_defined");
    Mat ncan = must(tensor_map(k.cot_d.MN, n.MC, kron(id(p, dN), g.maps.can_dagger)));
    add_equal(rep, "cinema", ncan * k.cot_d.inclusion * *k.psi, n.rho * k.chi);
  }
  (void)D;

  // α: Hom_A(Σ,N)⊗_R R -> N⊗_AΣ†, h⊗r -> h(e_s)⊗φ_s⊗r^s
  HomSpace ha = hom_space(g, n, false);
  const int hA = ha.dim();
  Tensor har = Tensor::make({ha.module, regR});
  const Mat& iota = g.star.data.iota;
  Mat Q(p, dN * kk, hA * dR);
  for (int h = 0; h < hA; ++h) {
    Mat mh = ha.map(h);
    for (int s = 0; s < dR; ++s) {
      Vec v(dN * kk, 0);
      for (int y = 0; y < dS; ++y)
        for (int phi = 0; phi < kk; ++phi) {
          int c = iota(y * kk + phi, s);
          if (c) v = add_vec(v, scale_vec(kron_vec(mh.col(y), unit_vec(kk, phi), p), c, p), p);
        }
      Q.set_col(h * dR + s, v);
    }
  }
  Mat aa = kron_apply({id(p, hA), lifted_d(sc.firm_r)}, id(p, hA * dR));
  aa = kron_apply({Q, id(p, dR)}, aa);
  aa = k.cot.MN.proj() * kron_apply({id(p, dN), sc.dagger.proj()}, aa);
  k.alpha = must(induced_map(har, aa));
  rep.add("alpha_invertible", bijective(k.alpha));
  if (k.hom.dim() > 0) {
    auto J = solve_mat(ha.basis, k.hom.basis);
    if (!J) {
      rep.fail("hom_c_in_hom_a", "colinear maps not A-linear");
    } else {
      Tensor hcr = Tensor::make({k.hom.module, regR});
      Mat j = must(tensor_map(hcr, har, kron(*J, id(p, dR))));
      rep.add("alpha_cotensor", span_equal(k.alpha * j, k.cot.inclusion));
    }
  } else {
    rep.add("alpha_cotensor", k.cot.inclusion.cols() == 0);
  }

  k.clave.zeta = bijective(k.zeta);
  k.clave.pi = bijective(k.pi);
  k.clave.chi = bijective(k.chi);
  if (galois) {
    k.clave.psi = k.psi && bijective(*k.psi);
    k.clave.preserves = preserves;
  }
  rep.add("clave_consistent", k.clave.consistent());
  return k;
}

ClaveVector clave_check(const GaloisSetup& g, const RightComodule& n, bool galois) {
  return adjunction_kit(g, n, galois).clave;
}

DalethCheck daleth_check(const GaloisSetup& g) {
  const ComatrixCoring& sc = g.self();
  const Bimodule& sR = sigma_r(g);
  const int p = sR.p, dS = sR.dim, dC = g.target.dim(), kk = g.star.star.dim(), dR = sR.lring->dim;
  DalethCheck out;
  RightComodule creg = make_right_comodule("C", g.target.C, g.target, g.target.delta);
  HomSpace hc = hom_space(g, creg, true);
  // φ -> (φ⊗C)∘ρ_Σ
  Mat camb = can_ambient(g);
  Mat hh(p, hc.dim(), kk);
  for (int phi = 0; phi < kk; ++phi) {
    Mat m(p, dC, dS);
    for (int x = 0; x < dS; ++x)
      for (int c = 0; c < dC; ++c) m.set(c, x, camb(c, phi * dS + x));
    auto co = hc.coords(m);
    if (!co) {
      out.report.fail("daleth_colinear", "(φ⊗C)ρ_Σ is not colinear", {phi});
      return out;
    }
    hh.set_col(phi, *co);
  }
  out.report.pass("daleth_colinear");
  Tensor hrs = Tensor::make({hc.module, regular_bimodule(sR.lring), sR});
  Mat amb = kron_apply({id(p, kk), lifted_d(sc.firm_sigma)}, id(p, kk * dS));
  amb = hrs.proj() * kron_apply({hh, id(p, dR), id(p, dS)}, amb);
  out.daleth = must(induced_map(sc.carrier, amb));
  Mat pi = must(induced_map(hrs, pi_ambient(hc, sR)));
  add_equal(out.report, "can_is_pi_daleth", g.maps.can, pi * out.daleth);
  return out;
}

Report triangle_checks(const GaloisSetup& g) {
  const ComatrixCoring& sc = g.self();
  const Bimodule& sR = sigma_r(g);
  const AlgPtr& R = sR.lring;
  const int p = sR.p, dS = sR.dim, dR = R->dim, kk = g.star.star.dim();
  Bimodule regR = regular_bimodule(R);
  const FirmStructure& fs = sc.firm_sigma;
  Report rep;
  HomSpace t = hom_space(g, g.sigma, true);
  Mat nu = nu_matrix(g, t);

  // Hom^C(Σ,−): ζ_Σ∘(ν_R⊗Σ) = ϖ
  Tensor hs = Tensor::make({t.module, sR});
  Mat zeta = must(induced_map(hs, zeta_ambient(t)));
  Mat nus = must(tensor_map(fs.tensor, hs, kron(nu, id(p, dS))));
  add_equal(rep, "hom_triangle", zeta * nus, fs.varpi);

  // Hom^C(Σ,−)⊗_R R: π_Σ∘(η_R⊗Σ) = ϖ
  Tensor hr = Tensor::make({t.module, regR});
  Mat eta = hr.proj() * kron(nu, id(p, dR)) * lifted_d(g.self().firm_r);
  Tensor hrs = Tensor::make({t.module, regR, sR});
  Mat pi = must(induced_map(hrs, pi_ambient(t, sR)));
  Mat etas = must(tensor_map(fs.tensor, hrs, kron(hr.sec() * eta, id(p, dS))));
  add_equal(rep, "hom_r_triangle", pi * etas, fs.varpi);

  // −⊗_AΣ†: δ_{R⊗Σ}∘(η_R⊗Σ) = id
  Tensor t5 = Tensor::make({regR, sR, sc.s.sigmap_R, regR, sR});
  Mat e6 = kron_apply({id(p, dR), lifted_d(sc.firm_r)}, lifted_d(sc.firm_r));
  e6 = kron_apply({id(p, dR), g.star.data.iota, id(p, dR)}, e6);
  Mat e6s = must(tensor_map(fs.tensor, t5, kron(e6, id(p, dS))));
  Mat act = multiplication_ambient_left(sR);
  Mat E(p, dS, dS * kk * dS);
  for (int phi = 0; phi < kk; ++phi)
    for (int x = 0; x < dS; ++x) {
      Mat a = sR.right_elem(g.star.star.ev.col(phi * dS + x));
      for (int y = 0; y < dS; ++y) E.set_col((y * kk + phi) * dS + x, a.col(y));
    }
  Mat d6 = kron_apply({id(p, dR), id(p, dS), id(p, kk), act}, id(p, t5.ambient()));
  d6 = fs.tensor.proj() * kron_apply({id(p, dR), E}, d6);
  Mat delta = must(induced_map(t5, d6));
  add_equal(rep, "dagger_triangle", delta * e6s, id(p, fs.tensor.dim()));
  return rep;
}

Report naturality_check(const GaloisSetup& g, const RightComodule& n1, const RightComodule& n2, const Mat& f) {
  const int p = f.p();
  Report rep;
  auto fc = tensor_map(n1.MC, n2.MC, kron(f, id(p, g.target.dim())));
  if (!fc) {
    rep.fail("morphism", "f is not A-linear");
    return rep;
  }
  for (int a = 0; a < g.target.A->dim; ++a) add_equal(rep, "f_A_linear", f * n1.M.right[a], n2.M.right[a] * f);
  add_equal(rep, "f_colinear", *fc * n1.rho, n2.rho * f);
  if (!rep.ok()) return rep;
  HomSpace h1 = hom_space(g, n1, true), h2 = hom_space(g, n2, true);
  Mat hf(p, h2.dim(), h1.dim());
  for (int i = 0; i < h1.dim(); ++i) {
    auto c = h2.coords(f * h1.map(i));
    if (!c) {
      rep.fail("hom_f", "f∘h not colinear", {i});
      return rep;
    }
    hf.set_col(i, *c);
  }
  const Bimodule& sR = sigma_r(g);
  Tensor t1 = Tensor::make({h1.module, sR}), t2 = Tensor::make({h2.module, sR});
  Mat z1 = must(induced_map(t1, zeta_ambient(h1))), z2 = must(induced_map(t2, zeta_ambient(h2)));
  Mat hfs = must(tensor_map(t1, t2, kron(hf, id(p, sR.dim))));
  add_equal(rep, "zeta_natural", f * z1, z2 * hfs);
  ComoduleKit k1 = adjunction_kit(g, n1, false), k2 = adjunction_kit(g, n2, false);
  // f□Σ† then ⊗Σ
  Mat fd = must(tensor_map(k1.cot.MN, k2.cot.MN, kron(f, id(p, g.self().sigma_dagger.N.dim))));
  Mat img = fd * k1.cot.inclusion;
  std::optional<Mat> fcot;
  if (k1.cot.inclusion.cols() == 0)
    fcot = Mat(p, k2.cot.inclusion.cols(), 0);
  else if (k2.cot.inclusion.cols() == 0)
    fcot = img.is_zero() ? std::optional<Mat>(Mat(p, 0, k1.cot.inclusion.cols())) : std::nullopt;
  else
    fcot = solve_mat(k2.cot.inclusion, img);
  if (!fcot) {
    rep.fail("cotensor_f", "f⊗Σ† leaves the cotensor product");
    return rep;
  }
  Mat fcs = must(tensor_map(k1.cs, k2.cs, kron(*fcot, id(p, sR.dim))));
  add_equal(rep, "chi_natural", f * k1.chi, k2.chi * fcs);
  return rep;
}

UnitKit unit_kit(const GaloisSetup& g, const Bimodule& n) {
  const Bimodule& sR = sigma_r(g);
  const int p = sR.p, dS = sR.dim, dN = n.dim, dC = g.target.dim(), dR = sR.lring->dim;
  UnitKit u;
  auto fn = firm_right(n);
  if (!fn) {
    u.firm = false;
    return u;
  }
  u.firm = true;
  Tensor ns = Tensor::make({n, sR});
  Bimodule nsb = ns.bimodule("N⊗Σ");
  Tensor mc = Tensor::make({nsb, g.target.C});
  Mat rl = g.sigma.MC.sec() * g.sigma.rho;
  Mat amb = mc.proj() * kron(ns.proj(), id(p, dC)) * kron(id(p, dN), rl);
  u.ns = make_right_comodule("N⊗Σ", nsb, g.target, must(induced_map(ns, amb)));
  u.hom = hom_space(g, u.ns, true);
  Tensor hr = Tensor::make({u.hom.module, regular_bimodule(sR.lring)});
  Mat nu(p, u.hom.dim(), dN);
  for (int i = 0; i < dN; ++i) {
    Mat m = ns.proj() * kron(Mat::column(p, unit_vec(dN, i)), id(p, dS));
    auto c = u.hom.coords(m);
    if (!c) throw InternalError(Failure{"NotBicomodule", "x -> n⊗x is not colinear", {i}});
    nu.set_col(i, *c);
  }
  u.eta = hr.proj() * kron(nu, id(p, dR)) * lifted_d(*fn);
  return u;
}

EndoRing endo_ring(const GaloisSetup& g) {
  const Bimodule& sR = sigma_r(g);
  const AlgPtr& R = sR.lring;
  const int p = sR.p, dR = R->dim;
  EndoRing e;
  Report& rep = e.report;
  e.hom = hom_space(g, g.sigma, true);
  const int n = e.hom.dim();
  std::vector<Mat> maps;
  for (int i = 0; i < n; ++i) maps.push_back(e.hom.map(i));
  std::vector<int> mult(static_cast<size_t>(n) * n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto c = e.hom.coords(maps[i] * maps[j]);
      if (!c) throw InternalError(Failure{"NotClosed", "End^C(Σ) not closed under composition", {i, j}});
      for (int k = 0; k < n; ++k) mult[(static_cast<size_t>(i) * n + j) * n + k] = (*c)[k];
    }
  auto unit = e.hom.coords(id(p, sR.dim));
  rep.add("identity_colinear", unit.has_value());
  e.T = make_algebra(p, n, std::move(mult), unit, "T");
  rep.merge(validate_algebra(*e.T), "T");
  e.embedding = nu_matrix(g, e.hom);
  e.embedding_injective = rank(e.embedding) == dR;
  for (int a = 0; a < dR; ++a)
    for (int b = 0; b < dR; ++b) {
      Vec lhs = e.embedding * R->mul(unit_vec(dR, a), unit_vec(dR, b));
      Vec rhs = e.T->mul(e.embedding.col(a), e.embedding.col(b));
      if (lhs != rhs) {
        rep.fail("embedding_ring_map", "R -> T is not multiplicative", {a, b});
        goto done_mult;
      }
    }
  rep.pass("embedding_ring_map");
done_mult:
  std::vector<Mat> tr;
  for (int r = 0; r < dR; ++r) tr.push_back(e.T->right_mult(e.embedding.col(r)));
  Bimodule tb = right_module("T", R, std::move(tr));
  tb.dim = n;
  tb.left = {id(p, n)};
  Tensor t_r = Tensor::make({tb, regular_bimodule(R)});
  e.v_R = Mat(p, t_r.dim(), dR);
  if (unit)
    for (int r = 0; r < dR; ++r) e.v_R.set_col(r, t_r.pure({*unit, unit_vec(dR, r)}));
  e.v_R_invertible = unit && bijective(e.v_R);

  e.closed = e.embedding_injective;
  if (e.embedding_injective) {
    for (int t = 0; t < n && e.closed; ++t)
      for (int r = 0; r < dR; ++r) {
        Vec prod = e.T->mul(unit_vec(n, t), e.embedding.col(r));
        if (!solve(e.embedding, prod)) {
          e.closed = false;
          e.closure_witness = {t, r};
          break;
        }
      }
  }
  rep.add("left_ideal_agreement", e.closed == e.v_R_invertible,
          e.closed ? "closed" : (e.embedding_injective ? "t·r outside R" : "R -> T not injective"), e.closure_witness);
  return e;
}

Report leftflat_check(const GaloisSetup& g, const EndoRing& e) {
  Report rep;
  rep.add("left_ideal", e.left_ideal());
  if (!e.left_ideal()) return rep;
  const Bimodule& sR = sigma_r(g);
  const DualSpace& st = g.star.star;
  const int p = sR.p, dS = sR.dim, dR = sR.lring->dim, n = e.hom.dim();
  std::vector<Mat> maps;
  for (int i = 0; i < n; ++i) maps.push_back(e.hom.map(i));
  // Σ* as right T-module: h·t = h∘t
  std::vector<Mat> mt;
  for (int t = 0; t < n; ++t) {
    Mat m(p, st.dim(), st.dim());
    for (int h = 0; h < st.dim(); ++h) {
      auto c = st.coords(st.functional(h) * maps[t]);
      if (!c) throw InternalError(Failure{"NotBalanced", "h∘t not A-linear", {h, t}});
      m.set_col(h, *c);
    }
    mt.push_back(m);
  }
  const Bimodule& mR = g.self().s.sigmap_R;
  Bimodule mT = make_bimodule("Σ*", mR.lring, e.T, mR.left, mt);
  mT.dim = st.dim();
  Bimodule sT = make_bimodule("Σ", e.T, sR.rring, maps, sR.right);
  sT.dim = dS;
  rep.merge(validate_bimodule(mT), "sigma_star_T");
  rep.merge(validate_bimodule(sT), "sigma_T");
  for (int r = 0; r < dR; ++r) {
    Mat restr(p, st.dim(), st.dim());
    for (int t = 0; t < n; ++t) restr = restr + mt[t].scaled(e.embedding(t, r));
    add_equal(rep, "sigma_star_restricts", restr, mR.right[r]);
  }
  Tensor over_r = Tensor::make({mR, sR});
  Tensor over_t = Tensor::make({mT, sT});
  Mat m = must(tensor_map(over_r, over_t, id(p, over_r.ambient())));
  rep.add("tensor_T_iso_tensor_R", bijective(m));
  // tn = (tr)n^r
  Mat dl = lifted_d(g.self().firm_sigma);
  for (int t = 0; t < n; ++t) {
    Mat f(p, dS, dS);
    for (int r = 0; r < dR; ++r) {
      Vec tr = e.T->mul(unit_vec(n, t), e.embedding.col(r));
      Mat trm(p, dS, dS);
      for (int i = 0; i < n; ++i) trm = trm + maps[i].scaled(tr[i]);
      Mat slice(p, dS, dS);
      for (int x = 0; x < dS; ++x)
        for (int y = 0; y < dS; ++y) slice.set(y, x, dl(r * dS + y, x));
      f = f + trm * slice;
    }
    add_equal(rep, "left_T_action", f, maps[t]);
  }
  return rep;
}

namespace {

using IdealKey = std::pair<int, std::vector<int32_t>>;

Mat ideal_closure(const AlgPtr& r, const Mat& gens) {
  if (gens.cols() == 0) return Mat(r->p, r->dim, 0);
  Mat cur = image(gens);
  while (true) {
    std::vector<Mat> parts{cur};
    for (int j = 0; j < r->dim; ++j) parts.push_back(r->Rm[j] * cur);
    Mat nxt = image(hcat(parts));
    if (nxt.cols() == cur.cols()) return nxt;
    cur = nxt;
  }
}

IdealKey key_of(const Mat& m) { return {m.cols(), m.data()}; }

}  // namespace

Result<std::vector<Mat>> right_ideals(const AlgPtr& r, int budget, bool* approximate) {
  const int p = r->p, n = r->dim;
  std::map<IdealKey, Mat> seen;
  const bool full = std::pow(static_cast<double>(p), n) <= 4096.0;
  if (approximate) *approximate = !full;
  auto insert = [&](Mat m) {
    auto key = key_of(m);
    if (seen.count(key)) return false;
    seen.emplace(key, std::move(m));
    return true;
  };
  insert(Mat(p, n, 0));
  if (full) {
    std::vector<Vec> all = all_vectors(p, n);
    std::vector<Mat> queue{Mat(p, n, 0)};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Mat cur = queue[qi];
      for (auto& v : all) {
        if (is_zero_vec(v)) continue;
        Mat ext = hcat({cur, Mat::column(p, v)});
        if (cur.cols() && rank(ext) == cur.cols()) continue;
        Mat next = ideal_closure(r, ext);
        if (insert(next)) {
          queue.push_back(next);
          if (static_cast<int>(seen.size()) > budget) return Failure{"BudgetExceeded", "more right ideals than the budget", {budget}};
        }
      }
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Mat g = i == j ? Mat::column(p, unit_vec(n, i)) : Mat::from_cols(p, n, {unit_vec(n, i), unit_vec(n, j)});
        insert(ideal_closure(r, g));
        if (static_cast<int>(seen.size()) > budget) return Failure{"BudgetExceeded", "more right ideals than the budget", {budget}};
      }
  }
  std::vector<Mat> out;
  for (auto& [k, m] : seen) out.push_back(m);
  return out;
}

FlatReport flat_report(const Bimodule& f, const AlgPtr& r, int budget) {
  FlatReport out;
  Report& rep = out.report;
  const int p = r->p, dF = f.dim;
  auto ideals = right_ideals(r, budget, &out.approximate);
  if (!ideals) {
    rep.fail("ideals", ideals.error().str());
    out.approximate = true;
    out.faithfully_flat = Tri::inconclusive;
    return out;
  }
  Bimodule rr = right_module("R", r, r->Rm);
  Bimodule regR = regular_bimodule(r);
  out.flat = true;
  bool witness = false;
  for (const Mat& I : *ideals) {
    ++out.checked_ideals;
    Bimodule ib = sub_bimodule(rr, I, "I");
    Tensor itf = Tensor::make({ib, f});
    Mat amb(p, dF, I.cols() * dF);
    for (int i = 0; i < I.cols(); ++i) {
      Mat a = f.left_elem(I.col(i));
      for (int x = 0; x < dF; ++x) amb.set_col(i * dF + x, a.col(x));
    }
    Mat mu = must(induced_map(itf, amb));
    if (out.flat && !is_injective(mu)) {
      out.flat = false;
      out.nonflat_ideal = I;
    }
    if (!witness) {
      Bimodule q = quotient_bimodule(rr, I, "R/I");
      Tensor qr = Tensor::make({q, regR});
      Tensor qf = Tensor::make({q, f});
      if (qr.dim() > 0 && qf.dim() == 0) {
        witness = true;
        out.witness_ideal = I;
      }
    }
  }
  rep.add("flat", out.flat, out.approximate ? "ideals generated by at most two basis elements" : "all right ideals");
  if (!out.flat) {
    out.faithfully_flat = Tri::refuted;
    if (!witness) out.witness_ideal = out.nonflat_ideal;
  } else if (witness) {
    out.faithfully_flat = Tri::refuted;
  } else {
    out.faithfully_flat = out.approximate ? Tri::inconclusive : Tri::certified;
  }
  return out;
}

GeneratorReport generator_check(const GaloisSetup& g, const std::vector<RightComodule>& family) {
  GeneratorReport out;
  const Bimodule& sR = sigma_r(g);
  for (size_t i = 0; i < family.size(); ++i) {
    HomSpace h = hom_space(g, family[i], true);
    Tensor hs = Tensor::make({h.module, sR});
    Mat z = must(induced_map(hs, zeta_ambient(h)));
    ++out.checked;
    if (!is_surjective(z)) {
      out.generator = false;
      out.failing = static_cast<int>(i);
      out.report.fail("ev_surjective", family[i].name, {static_cast<int>(i)});
      return out;
    }
  }
  out.report.pass("ev_surjective");
  return out;
}

namespace {

// Hom^C(Σ,N)⊗_TΣ -> N
bool zeta_t_bijective(const GaloisSetup& g, const EndoRing& e, const HomSpace& h) {
  const Bimodule& sR = sigma_r(g);
  const int p = sR.p, n = e.hom.dim();
  std::vector<Mat> acts;
  for (int t = 0; t < n; ++t) {
    Mat m(p, h.dim(), h.dim());
    for (int i = 0; i < h.dim(); ++i) {
      auto c = h.coords(h.map(i) * e.hom.map(t));
      if (!c) throw InternalError(Failure{"NotClosed", "h∘t not colinear", {i, t}});
      m.set_col(i, *c);
    }
    acts.push_back(m);
  }
  Bimodule ht = right_module("Hom", e.T, std::move(acts));
  ht.dim = h.dim();
  ht.left = {id(p, h.dim())};
  std::vector<Mat> maps;
  for (int t = 0; t < n; ++t) maps.push_back(e.hom.map(t));
  Bimodule st = make_bimodule("Σ", e.T, sR.rring, maps, sR.right);
  st.dim = sR.dim;
  Tensor tt = Tensor::make({ht, st});
  return bijective(must(induced_map(tt, zeta_ambient(h))));
}

struct FamilyVerdict {
  bool counits = true;       // ζ, π, χ on every N
  bool pi_all = true;
  bool units_bij = true, units_inj = true;
  bool units_known = true;
};

}  // namespace

Result<DescentReport> descent_report(const GaloisSetup& g, int max_dim, int ideal_budget, long long search_budget) {
  auto fam = enumerate_comodules(g.target, max_dim, search_budget);
  if (!fam) return fam.error();
  const Bimodule& sR = sigma_r(g);
  const AlgPtr& R = sR.lring;
  const int dA = g.target.A->dim;
  DescentReport out;
  Report& rep = out.report;
  out.max_dim = max_dim;
  out.label = "certified up to dimension " + std::to_string(max_dim);
  out.comodules = static_cast<int>(fam->size());
  out.per_dim.assign(max_dim + 1, 0);
  for (auto& n : *fam) ++out.per_dim[n.M.dim / dA];

  GaloisVerdict gv = galois_check(g);
  out.galois = gv.galois;
  rep.merge(gv.report, "galois");
  out.flat = flat_report(sR, R, ideal_budget);
  EndoRing e = endo_ring(g);
  out.left_ideal = e.left_ideal();
  rep.merge(e.report, "endo");

  out.counits_bijective = true;
  out.generator = true;
  out.psi_all = out.preserves_all = true;
  out.zeta_T_bijective = true;
  for (size_t i = 0; i < fam->size(); ++i) {
    ComoduleKit k = adjunction_kit(g, (*fam)[i], out.galois);
    const ClaveVector& c = k.clave;
    if (!c.consistent()) {
      out.clave_consistent = false;
      rep.fail("clave_consistent", (*fam)[i].name, {static_cast<int>(i)});
    }
    for (auto& ch : k.report.checks)
      if (!ch.ok && ch.name != "clave_consistent" && ch.name != "alpha_invertible")
        rep.fail("kit." + ch.name, ch.detail, {static_cast<int>(i)});
    if (!(c.zeta && c.pi && c.chi)) {
      out.counits_bijective = false;
      if (out.first_non_bijective < 0 && !c.zeta) out.first_non_bijective = static_cast<int>(i);
    }
    if (!is_surjective(k.zeta)) out.generator = false;
    if (!c.psi.value_or(false)) out.psi_all = false;
    if (!c.preserves.value_or(false)) out.preserves_all = false;
    if (e.T->unital() && !zeta_t_bijective(g, e, k.hom)) out.zeta_T_bijective = false;
  }
  if (out.clave_consistent) rep.pass("clave_consistent");

  // firm right R-modules R and (R/I)⊗_R R
  bool approx = false;
  auto ideals = right_ideals(R, ideal_budget, &approx);
  Bimodule rr = right_module("R", R, R->Rm);
  Bimodule regR = regular_bimodule(R);
  auto unit_family = [&](const GaloisSetup& gg, FamilyVerdict& v) {
    if (!ideals) {
      v.units_known = false;
      return;
    }
    for (const Mat& I : *ideals) {
      Bimodule q = quotient_bimodule(rr, I, "R/I");
      Bimodule n = Tensor::make({q, regR}).bimodule("(R/I)⊗R");
      UnitKit u = unit_kit(gg, n);
      if (!u.firm) continue;
      if (!bijective(u.eta)) v.units_bij = false;
      if (!is_injective(u.eta)) v.units_inj = false;
    }
  };
  FamilyVerdict here;
  here.counits = out.counits_bijective;
  unit_family(g, here);
  out.units_bijective = here.units_bij && here.units_known;
  out.units_injective = here.units_inj && here.units_known;
  rep.add("firm_family", here.units_known, approx ? "approximate ideal family" : "");

  // the same adjunction against Σ*⊗_RΣ, with a smaller comodule bound
  FamilyVerdict self;
  bool self_ok = false;
  auto sg = galois_setup(g.cc, g.self().coring, g.self().sigma.rho, g.name + "/self");
  if (sg) {
    auto sfam = enumerate_comodules(sg->target, std::min(max_dim, 2), search_budget);
    if (sfam) {
      self_ok = true;
      for (auto& n : *sfam) {
        ComoduleKit k = adjunction_kit(*sg, n, true);
        if (!bijective(k.pi)) self.pi_all = false;
      }
      unit_family(*sg, self);
    }
  }
  rep.add("self_family", self_ok);

  const bool i = out.counits_bijective;
  out.flatdescent = {i,
                     i,
                     i,
                     out.galois && out.psi_all,
                     out.galois && out.preserves_all,
                     out.galois && out.flat.flat,
                     out.generator,
                     out.zeta_T_bijective};
  const auto& fd = out.flatdescent;
  auto implies = [](bool a, bool b) { return !a || b; };
  rep.add("flatdescent_i_to_v", fd[0] == fd[3] && fd[0] == fd[4]);
  rep.add("flatdescent_vii_viii", fd[6] == fd[7]);
  rep.add("flatdescent_vi_implies_v", implies(fd[5], fd[4]));
  rep.add("flatdescent_i_implies_vii", implies(fd[0], fd[6]));
  if (out.left_ideal) rep.add("flatdescent_vii_implies_vi", implies(fd[6], fd[5]));

  const bool ff = out.flat.faithfully_flat == Tri::certified;
  const bool equiv = out.counits_bijective && out.units_bijective;
  const bool self_equiv = self_ok && self.pi_all && self.units_bij && self.units_known;
  out.ffdescent = {out.galois && ff, equiv, out.galois && self_equiv, out.generator && out.units_bijective,
                   out.generator && out.units_injective && out.left_ideal};
  bool all_same = true;
  for (bool b : out.ffdescent) all_same = all_same && b == out.ffdescent[0];
  rep.add("ffdescent_equivalent", all_same);
  rep.add("ffdescent_self_equivalence", ff == self_equiv);
  return out;
}

}  // namespace firmcor
