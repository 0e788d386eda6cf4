#include "firmcor/dualring.hpp"

#include <string>

namespace firmcor {

namespace {

Mat id(int p, int n) { return Mat::identity(p, n); }

Failure tag(Failure f, const std::string& where) {
  f.detail = where + ": " + f.detail;
  return f;
}

void add_equal(Report& rep, const std::string& name, const Mat& lhs, const Mat& rhs, std::vector<int> extra = {}) {
  int col = lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() ? lhs.first_diff_col(rhs) : 0;
  if (col < 0) {
    rep.pass(name);
    return;
  }
  extra.push_back(col);
  rep.fail(name, "matrices differ", extra);
}

Mat reshape(const Vec& v, int rows, int cols, int p) {
  Mat m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, v[i * cols + j]);
  return m;
}

Vec flatten(const Mat& m) {
  Vec v(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

// g⊗c ↦ g(x)c on *C ⊗_K C, for a fixed x in C
Mat pair_at(const DualRing& d, int x) {
  const int p = d.c.A->p, n = d.c.dim(), k = d.dim();
  Mat out(p, n, k * n);
  for (int g = 0; g < k; ++g) {
    Mat a = d.c.C.left_elem(d.functional(g).col(x));
    for (int c = 0; c < n; ++c) out.set_col(g * n + c, a.col(c));
  }
  return out;
}

// ρ on *C as a right comodule, in coordinates of regular.MC
Mat full_coaction(const RationalStructure& reg) {
  std::vector<Mat> rights(reg.module.right.begin(), reg.module.right.end());
  auto y = solve_mat(reg.eval, vcat(rights));
  if (!y) throw InternalError(Failure{"NotRational", "*C is not rational over itself", {}});
  return *y;
}

// Σ = *C as (R, A)
Bimodule sigma_of(const DualRing& d, const RationalStructure& reg) {
  Bimodule s = with_left(reg.over_A, d.ring, d.ring->L);
  s.name = "*C";
  return s;
}

}  // namespace

Mat DualRing::functional(int i) const { return reshape(basis.col(i), c.A->dim, c.dim(), c.A->p); }

std::optional<Vec> DualRing::coords(const Mat& f) const {
  auto s = solve(basis, flatten(f));
  if (!s) return std::nullopt;
  return s->x;
}

Mat apply_functional(const Tensor& mc, const Mat& f) {
  const Bimodule& m = mc.factor(0);
  const int p = m.p, n = mc.factor(1).dim, dm = m.dim;
  Mat amb(p, dm, dm * n);
  for (int c = 0; c < n; ++c) {
    Mat act = m.right_elem(f.col(c));
    for (int x = 0; x < dm; ++x) amb.set_col(x * n + c, act.col(x));
  }
  return amb * mc.sec();
}

Result<DualRing> dual_ring(const Coring& c) {
  DualRing d;
  d.c = c;
  const AlgPtr& A = c.A;
  const int p = A->p, a = A->dim, n = c.dim(), N = a * n;
  // F·left_t − L_t·F = 0
  Mat sys(p, a * N, N);
  for (int t = 0; t < a; ++t)
    for (int k = 0; k < a; ++k)
      for (int v = 0; v < n; ++v) {
        int var = k * n + v;
        for (int x = 0; x < n; ++x) sys.add_to(t * N + k * n + x, var, c.C.left[t](v, x));
        for (int r = 0; r < a; ++r) sys.add_to(t * N + r * n + v, var, -A->L[t](r, k));
      }
  d.basis = kernel(sys);
  const int k = d.basis.cols();
  Report& rep = d.report;

  std::vector<Mat> conv(k);  // C ⊗_A C -> C, x⊗y ↦ x f(y)
  for (int i = 0; i < k; ++i) {
    Mat f = d.functional(i);
    conv[i] = apply_functional(c.CC, f);
    Mat amb = conv[i] * c.CC.proj();
    rep.add("functional_balanced", (amb * c.CC.relations()).is_zero(), "", {i});
  }
  std::vector<int> mult(static_cast<size_t>(k) * k * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Mat fg = d.functional(j) * conv[i] * c.delta;
      auto co = d.coords(fg);
      if (!co) return Failure{"NotClosed", "f*g is not left A-linear", {i, j}};
      for (int t = 0; t < k; ++t) mult[(static_cast<size_t>(i) * k + j) * k + t] = (*co)[t];
    }
  auto unit = d.coords(c.eps);
  if (!unit) return Failure{"NotClosed", "ε is not left A-linear", {}};
  d.ring = make_algebra(p, k, mult, *unit, "*C");
  rep.merge(validate_algebra(*d.ring), "ring");

  d.unit_map = Mat(p, k, a);
  std::vector<Mat> left(a, Mat(p, k, k)), right(a, Mat(p, k, k));
  for (int t = 0; t < a; ++t) {
    auto u = d.coords(A->Rm[t] * c.eps);
    if (!u) return Failure{"NotClosed", "ε(-)a", {t}};
    d.unit_map.set_col(t, *u);
    for (int i = 0; i < k; ++i) {
      Mat f = d.functional(i);
      auto l = d.coords(f * c.C.right[t]);
      auto r = d.coords(A->Rm[t] * f);
      if (!l || !r) return Failure{"NotClosed", "A-action on *C", {t, i}};
      left[t].set_col(i, *l);
      right[t].set_col(i, *r);
    }
  }
  d.bimodule = make_bimodule("*C", A, A, left, right);
  d.bimodule.dim = k;
  rep.merge(validate_bimodule(d.bimodule), "bimodule");
  for (int t = 0; t < a; ++t) {
    Vec u = d.unit_map.col(t);
    add_equal(rep, "unit_left_is_af", d.ring->left_mult(u), left[t], {t});
    add_equal(rep, "unit_right_is_fa", d.ring->right_mult(u), right[t], {t});
  }
  return d;
}

Bimodule module_of_comodule(const DualRing& d, const RightComodule& n) {
  std::vector<Mat> right;
  for (int i = 0; i < d.dim(); ++i) right.push_back(apply_functional(n.MC, d.functional(i)) * n.rho);
  Bimodule m = make_bimodule(n.name, n.M.lring, d.ring, n.M.left, right);
  m.dim = n.M.dim;
  return m;
}

Result<RationalStructure> rational_structure(const DualRing& d, const Bimodule& m) {
  if (!same_ring(m.rring, d.ring)) return Failure{"ShapeMismatch", "right ring is not *C", {}};
  const int p = m.p, k = d.dim(), dm = m.dim;
  for (int f = 0; f < k; ++f)
    for (int g = 0; g < k; ++g) {
      Mat lhs = m.right[g] * m.right[f];
      Mat rhs = m.right_elem(d.ring->mul(unit_vec(k, f), unit_vec(k, g)));
      int col = lhs.first_diff_col(rhs);
      if (col >= 0) return Failure{"NotAModule", "(m·f)·g != m·(f*g)", {col, f, g}};
    }
  {
    int col = m.right_elem(*d.ring->unit).first_diff_col(id(p, dm));
    if (col >= 0) return Failure{"NotAModule", "the unit of *C does not fix m", {col}};
  }
  RationalStructure rs;
  rs.module = m;
  rs.over_A = with_right(m, d.c.A, pull_actions(m.right, d.unit_map));
  rs.MC = Tensor::make({rs.over_A, d.c.C});
  Report& rep = rs.report;

  std::vector<Mat> evs, acts;
  for (int f = 0; f < k; ++f) {
    evs.push_back(apply_functional(rs.MC, d.functional(f)));
    acts.push_back(m.right[f]);
  }
  rs.eval = vcat(evs);
  Mat V = vcat(acts);
  rs.eval_injective = is_injective(rs.eval);
  rep.add("coaction_unique", rs.eval_injective);

  // m is rational iff V m lies in the image of eval
  Mat ker = kernel(hcat({V, rs.eval.scaled(p - 1)}));
  rs.rational = image(ker.block(0, 0, dm, ker.cols()));
  const int r = rs.rational.cols();
  auto y = solve_mat(rs.eval, V * rs.rational);
  if (!y) return Failure{"InternalError", "rational element without a coaction", {}};
  rs.coaction = *y;
  for (int i = 0; i < r; ++i) {
    Mat psi(p, dm, k);
    for (int f = 0; f < k; ++f) psi.set_col(f, m.right[f] * rs.rational.col(i));
    rs.psi.push_back(psi);
  }

  Bimodule sub = sub_bimodule(rs.over_A, rs.rational, "M^rat");
  Tensor sc = Tensor::make({sub, d.c.C});
  auto incl = tensor_map(sc, rs.MC, kron(rs.rational, id(p, d.c.dim())));
  if (!incl) return incl.error();
  auto rho = solve_mat(*incl, rs.coaction);
  rep.add("coaction_lands_in_rational", rho.has_value());
  if (rho) {
    rs.comodule = make_right_comodule("M^rat", sub, d.c, *rho);
    rep.merge(validate_comodule(*rs.comodule, d.c, false), "recovered");
    Bimodule back = module_of_comodule(d, *rs.comodule);
    Bimodule restricted = sub_bimodule(m, rs.rational, "M^rat");
    for (int f = 0; f < k; ++f) add_equal(rep, "action_from_coaction", back.right[f], restricted.right[f], {f});
  }
  return rs;
}

Result<DualIdentities> verify_dual_identities(const DualRing& d) {
  const Coring& c = d.c;
  const int p = c.A->p, k = d.dim(), n = c.dim();
  Bimodule reg = right_module("*C", d.ring, d.ring->Rm);
  auto rs = rational_structure(d, reg);
  if (!rs) return tag(rs.error(), "*C over itself");
  DualIdentities out;
  out.regular = std::move(rs).value();
  Report& rep = out.report;
  rep.merge(out.regular.report, "regular");
  rep.add("dual_is_rational", out.regular.all_rational());
  if (!out.regular.all_rational()) return out;
  Mat rho = full_coaction(out.regular);
  const Tensor& MC = out.regular.MC;
  Mat lifted = MC.sec() * rho;

  // c_(1)f(c_(2)) = f_[0](c)f_[1]
  std::vector<Mat> pairs;
  for (int x = 0; x < n; ++x) {
    pairs.push_back(pair_at(d, x));
    rep.add("pairing_balanced", (pairs[x] * MC.relations()).is_zero(), "", {x});
  }
  bool question = true;
  std::vector<int> qw;
  for (int f = 0; f < k; ++f) {
    Mat lhs = apply_functional(c.CC, d.functional(f)) * c.delta;
    for (int x = 0; x < n && question; ++x)
      if (lhs.col(x) != pairs[x] * lifted.col(f)) {
        question = false;
        qw = {x, f};
      }
  }
  rep.add("question", question, "", qw);

  // ρ(f*g) = ρ(f)ρ(g) with (f⊗c)(g⊗d) = f⊗g(c)d
  auto product = [&](const Vec& u, const Vec& v) {
    Vec out(static_cast<size_t>(k) * n, 0);
    for (int i = 0; i < k; ++i)
      for (int x = 0; x < n; ++x) {
        int a = u[i * n + x];
        if (!a) continue;
        for (int g = 0; g < k; ++g) {
          Mat act = c.C.left_elem(d.functional(g).col(x));
          for (int y = 0; y < n; ++y) {
            int b = v[g * n + y];
            if (!b) continue;
            Vec img = act.col(y);
            for (int z = 0; z < n; ++z) out[i * n + z] = mod(out[i * n + z] + static_cast<long long>(a) * b * img[z], p);
          }
        }
      }
    return MC.proj() * out;
  };
  bool mult = true;
  std::vector<int> mw;
  for (int f = 0; f < k && mult; ++f)
    for (int g = 0; g < k && mult; ++g) {
      Vec lhs = rho * d.ring->mul(unit_vec(k, f), unit_vec(k, g));
      if (lhs != product(lifted.col(f), lifted.col(g))) {
        mult = false;
        mw = {f, g};
      }
    }
  rep.add("rho_multiplicative", mult, "", mw);

  // right local units on *C and on C
  std::vector<Vec> basis;
  for (int i = 0; i < k; ++i) basis.push_back(unit_vec(k, i));
  auto lu = find_local_units(*d.ring, basis);
  bool ring_units = lu.ok();
  if (lu)
    for (auto& r : lu->right) ring_units = ring_units && r.has_value();
  rep.add("right_local_units_ring", ring_units);
  Bimodule cm = module_of_comodule(d, make_right_comodule("C", c.C, c, c.delta));
  bool c_units = true;
  for (int x = 0; x < n; ++x) {
    Mat sys(p, n, k);
    for (int f = 0; f < k; ++f) sys.set_col(f, cm.right[f].col(x));
    auto e = solve(sys, unit_vec(n, x));
    if (!e) {
      rep.fail("right_local_units_C", "no e with c·e = c", {x});
      c_units = false;
      break;
    }
  }
  if (c_units) rep.pass("right_local_units_C");
  return out;
}

Result<DaggerIso> dagger_iso(const DualRing& d, const RationalStructure& reg) {
  if (!reg.all_rational()) return Failure{"NotRational", "*C is not rational over itself", {}};
  const int p = d.c.A->p, k = d.dim(), n = d.c.dim(), a = d.c.A->dim;
  DaggerIso out;
  Bimodule sigma = sigma_of(d, reg);
  out.star = dual_space(sigma, d.c.A);
  auto t = Tensor::build({out.star.module, regular_bimodule(d.ring)});
  if (!t) return tag(t.error(), "Hom_A(*C,A)⊗_R R");
  out.dagger = std::move(t).value();
  Mat lifted = reg.MC.sec() * full_coaction(reg);
  const int ks = out.star.dim();

  // φ⊗r ↦ φ(r_[0])r_[1]
  Mat amb(p, n, ks * k);
  for (int phi = 0; phi < ks; ++phi) {
    Mat F = out.star.functional(phi);
    std::vector<Mat> acts;
    for (int g = 0; g < k; ++g) acts.push_back(d.c.C.left_elem(F.col(g)));
    for (int r = 0; r < k; ++r) {
      Vec v(n, 0);
      for (int g = 0; g < k; ++g)
        for (int x = 0; x < n; ++x) {
          int s = lifted(g * n + x, r);
          if (s) v = add_vec(v, scale_vec(acts[g].col(x), s, p), p);
        }
      amb.set_col(phi * k + r, v);
    }
  }
  auto al = induced_map(out.dagger, amb);
  if (!al) return tag(al.error(), "α");
  out.alpha = *al;

  // c ↦ ψ_c⊗e, ψ_c(f) = f(c)
  const Vec& e = *d.ring->unit;
  out.beta = Mat(p, out.dagger.dim(), n);
  for (int x = 0; x < n; ++x) {
    Mat psi(p, a, k);
    for (int g = 0; g < k; ++g) psi.set_col(g, d.functional(g).col(x));
    auto co = out.star.coords(psi);
    if (!co) return Failure{"NotRightLinear", "ψ_c is not right A-linear", {x}};
    out.beta.set_col(x, out.dagger.proj() * kron_vec(*co, e, p));
  }
  Report& rep = out.report;
  rep.add("dims_match", out.dagger.dim() == n);
  add_equal(rep, "alpha_beta", out.alpha * out.beta, id(p, n));
  add_equal(rep, "beta_alpha", out.beta * out.alpha, id(p, out.dagger.dim()));
  return out;
}

Result<RationalComatrix> rational_comatrix(const DualRing& d, const RationalStructure& reg) {
  if (!reg.all_rational()) return Failure{"NotRational", "*C is not rational over itself", {}};
  const Coring& c = d.c;
  const int p = c.A->p, k = d.dim(), n = c.dim(), a = c.A->dim;
  RationalComatrix out;
  Bimodule sigma = sigma_of(d, reg);
  Bimodule cm = module_of_comodule(d, make_right_comodule("C", c.C, c, c.delta));
  Bimodule sigmap = with_right(c.C, d.ring, cm.right);
  sigmap.name = "C";
  Mat mu(p, a, n * k);
  for (int x = 0; x < n; ++x)
    for (int f = 0; f < k; ++f) mu.set_col(x * k + f, d.functional(f).col(x));
  out.rho = full_coaction(reg);
  Mat lifted = reg.MC.sec() * out.rho;
  out.data = ComatrixData{"C⊗_R *C", c.A, d.ring, d.ring, sigma, sigmap, mu, lifted};
  auto cc = build_comatrix(out.data);
  if (!cc) return tag(cc.error(), "C⊗_R *C");
  Tensor mc = Tensor::make({cc->s.sigma_R, c.C});
  auto g = galois_setup(*cc, c, mc.proj() * lifted, c.name + "/rational");
  if (!g) return g.error();
  out.g = std::move(g).value();
  out.verdict = galois_check(out.g);
  Report& rep = out.report;
  rep.merge(cc->report, "comatrix");
  rep.merge(out.g.report, "setup");
  rep.merge(out.verdict.report, "galois");
  rep.add("galois", out.verdict.galois);

  const Tensor& carrier = cc->carrier;
  Mat can = out.g.maps.can * out.g.star.map;
  // c⊗f ↦ c·f
  Mat firm(p, n, n * k);
  for (int x = 0; x < n; ++x)
    for (int f = 0; f < k; ++f) firm.set_col(x * k + f, cm.right[f].col(x));
  add_equal(rep, "can_is_firmness", can * carrier.proj(), firm);
  // c⊗f ↦ f_[0](c)f_[1]
  Mat through(p, n, n * k);
  for (int x = 0; x < n; ++x) {
    Mat pr = pair_at(d, x);
    for (int f = 0; f < k; ++f) through.set_col(x * k + f, pr * lifted.col(f));
  }
  add_equal(rep, "can_is_coaction_pairing", can * carrier.proj(), through);
  // can⁻¹(c) = c⊗e
  Mat inv(p, carrier.dim(), n);
  for (int x = 0; x < n; ++x) inv.set_col(x, carrier.proj() * kron_vec(unit_vec(n, x), *d.ring->unit, p));
  add_equal(rep, "can_inverse_left", inv * can, id(p, carrier.dim()));
  add_equal(rep, "can_inverse_right", can * inv, id(p, n));
  return out;
}

Report equivalence_check(const RationalComatrix& rc, const RightComodule& n) {
  Report rep;
  const GaloisSetup& g = rc.g;
  const Coring& c = g.target;
  const AlgPtr& R = rc.data.R;
  const int p = c.A->p, k = R->dim, dn = n.M.dim;
  HomSpace hs = hom_space(g, n, true);
  Tensor t = Tensor::make({hs.module, regular_bimodule(R)});
  // φ⊗r ↦ φ(r)
  Mat amb(p, dn, hs.dim() * k);
  for (int i = 0; i < hs.dim(); ++i) {
    Mat h = hs.map(i);
    for (int r = 0; r < k; ++r) amb.set_col(i * k + r, h.col(r));
  }
  auto alpha = induced_map(t, amb);
  if (!alpha) {
    rep.fail("alpha_defined", alpha.error().detail);
    return rep;
  }
  rep.add("alpha_invertible", invert(*alpha).ok(), "", {hs.dim(), dn});
  // m ↦ ψ_m⊗e with ψ_m(f) = m·f; R = *C here, so f·m is computed from ρ_N
  auto dual = dual_ring(c);
  if (!dual || dual->dim() != k) {
    rep.fail("dual_ring", "could not rebuild *C");
    return rep;
  }
  Mat back(p, t.dim(), dn);
  bool colinear = true;
  for (int m = 0; m < dn; ++m) {
    Mat psi(p, dn, k);
    for (int f = 0; f < k; ++f) psi.set_col(f, apply_functional(n.MC, dual->functional(f)) * n.rho.col(m));
    auto co = hs.coords(psi);
    if (!co) {
      rep.fail("psi_colinear", "ψ_m is not a comodule map", {m});
      colinear = false;
      break;
    }
    back.set_col(m, t.proj() * kron_vec(*co, *R->unit, p));
  }
  if (colinear) {
    rep.pass("psi_colinear");
    add_equal(rep, "alpha_psi", *alpha * back, id(p, dn));
  }
  // N □_C C -> N, n⊗c ↦ nε(c)
  LeftComodule cl = make_left_comodule("C", c.C, c, c.delta);
  Cotensor cot = cotensor(n, cl, c);
  Mat counit(p, dn, dn * c.dim());
  for (int x = 0; x < c.dim(); ++x) {
    Mat act = n.M.right_elem(c.eps.col(x));
    for (int m = 0; m < dn; ++m) counit.set_col(m * c.dim() + x, act.col(m));
  }
  rep.add("cotensor_counit", invert(counit * cot.MN.sec() * cot.inclusion).ok());
  return rep;
}

Report firm_side_check(const RationalComatrix& rc, const Bimodule& m) {
  Report rep;
  if (!same_ring(m.rring, rc.data.R)) {
    rep.fail("ring", "module is not over *C");
    return rep;
  }
  auto f = firm_right(m);
  rep.add("firm", f.ok(), f ? "" : f.error().detail);
  return rep;
}

Result<DualReport> dual_report(const Coring& c, int max_dim) {
  auto d = dual_ring(c);
  if (!d) return d.error();
  auto ids = verify_dual_identities(*d);
  if (!ids) return ids.error();
  auto dg = dagger_iso(*d, ids->regular);
  if (!dg) return dg.error();
  auto rc = rational_comatrix(*d, ids->regular);
  if (!rc) return rc.error();
  auto cs = enumerate_comodules(c, max_dim);
  if (!cs) return cs.error();
  DualReport out{std::move(d).value(), std::move(ids).value(), std::move(dg).value(), std::move(rc).value(), 0, 0, {}};
  Report& rep = out.report;
  rep.merge(out.dual.report, "dual");
  rep.merge(out.identities.report, "identities");
  rep.merge(out.dagger.report, "dagger");
  rep.merge(out.comatrix.report, "rational_comatrix");
  for (auto& n : *cs) {
    rep.merge(equivalence_check(out.comatrix, n), "comodule");
    ++out.comodules;
  }
  const AlgPtr& R = out.dual.ring;
  Bimodule rr = right_module("R", R, R->Rm);
  auto ideals = right_ideals(R, 4096);
  if (!ideals) return ideals.error();
  for (auto& I : *ideals) {
    Bimodule q = I.cols() == 0 ? rr : quotient_bimodule(rr, I, "R/I");
    if (q.dim == 0) continue;
    rep.merge(firm_side_check(out.comatrix, q), "module");
    ++out.modules;
  }
  return out;
}

}  // namespace firmcor
