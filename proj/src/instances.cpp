#include "firmcor/instances.hpp"

#include "firmcor/standard.hpp"

namespace firmcor {

namespace {

// A as a (B, A)- and as an (A, B)-bimodule along incl: B -> A
Bimodule a_left_b(const AlgPtr& a, const AlgPtr& b, const Mat& incl) {
  return make_bimodule("Σ", b, a, pull_actions(a->L, incl), a->Rm);
}
Bimodule a_right_b(const AlgPtr& a, const AlgPtr& b, const Mat& incl) {
  return make_bimodule("Σ′", a, b, a->L, pull_actions(a->Rm, incl));
}

Mat mult_map(const AlgPtr& a) {
  Mat m(a->p, a->dim, a->dim * a->dim);
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < a->dim; ++j) m.set_col(i * a->dim + j, a->mul(unit_vec(a->dim, i), unit_vec(a->dim, j)));
  return m;
}

// pairing of row vectors with column vectors
Mat eval_map(int p, int n) {
  Mat m(p, 1, n * n);
  for (int i = 0; i < n; ++i) m.set(0, i * n + i, 1);
  return m;
}

// ρ(a) = 1 ⊗ (1 ⊗ a) for Σ = A over A ⊗_B A, on the ambient Σ ⊗_K C
Mat sweedler_rho(const AlgPtr& a, const AlgPtr& b, const Mat& incl) {
  Bimodule a_ab = make_bimodule("A", a, b, a->L, pull_actions(a->Rm, incl));
  Bimodule a_ba = make_bimodule("A", b, a, pull_actions(a->L, incl), a->Rm);
  Tensor t = Tensor::make({a_ab, a_ba});
  const int n = a->dim, dc = t.dim();
  Mat rho(a->p, n * dc, n);
  for (int u = 0; u < n; ++u) rho.set_col(u, kron_vec(*a->unit, t.pure({*a->unit, unit_vec(n, u)}), a->p));
  return rho;
}

InstanceBundle sweedler(int p, int qa, int qb, const std::string& name, const std::string& field) {
  auto a = quadratic_algebra(p, qa, qb, field);
  auto b = field_algebra(p);
  Mat incl = Mat::from_cols(p, 2, {{1, 0}});
  InstanceBundle out;
  out.name = name;
  out.notes = "Sweedler coring of " + field + " over F" + std::to_string(p) + "; Σ = Σ′ = A, μ = multiplication, R = B";
  Mat iota(p, 4, 1);
  iota.set(0, 0, 1);  // ι(1) = 1⊗1
  out.data = ComatrixData{name, a, b, b, a_left_b(a, b, incl), a_right_b(a, b, incl), mult_map(a), iota};
  out.target = sweedler_coring(a, b, incl);
  out.rho = sweedler_rho(a, b, incl);
  return out;
}

InstanceBundle trivial() {
  auto k = field_algebra(2);
  InstanceBundle out;
  out.name = "trivial";
  out.notes = "everything is F2";
  Mat one = Mat::identity(2, 1);
  Bimodule s = make_bimodule("Σ", k, k, k->L, k->Rm);
  Bimodule sp = make_bimodule("Σ′", k, k, k->L, k->Rm);
  out.data = ComatrixData{"trivial", k, k, k, s, sp, one, one};
  out.target = trivial_coring(k);
  out.rho = one;
  return out;
}

InstanceBundle projection() {
  auto a = field_algebra(2);
  auto b = product_algebra(2, 2);
  Mat incl = Mat::from_rows(2, {{1, 0}});  // e1 -> 1, e2 -> 0
  InstanceBundle out;
  out.name = "projection-f2xf2";
  out.notes = "B = R = F2×F2 acting on A = F2 through the first factor; Galois but not faithfully flat";
  Mat iota = Mat::from_rows(2, {{1, 0}});
  out.data = ComatrixData{out.name, a, b, b, a_left_b(a, b, incl), a_right_b(a, b, incl), mult_map(a), iota};
  out.target = sweedler_coring(a, b, incl);
  out.rho = sweedler_rho(a, b, incl);
  return out;
}

InstanceBundle dual_basis_matrix() {
  auto k = field_algebra(2);
  auto m2 = matrix_algebra(2, 2);
  InstanceBundle out;
  out.name = "dual-basis-matrix";
  out.notes = "Σ = F2² columns over B = R = M2(F2), Σ′ = rows, ι(E_ij) = e_i⊗e_j*";
  Bimodule s = column_module(m2, 2);
  s.name = "Σ";
  Bimodule sp = row_module(m2, 2);
  sp.name = "Σ′";
  out.data = ComatrixData{out.name, k, m2, m2, s, sp, eval_map(2, 2), Mat::identity(2, 4)};
  out.target = trivial_coring(k);
  out.rho = Mat::identity(2, 2);
  return out;
}

InstanceBundle corner(bool against_trivial) {
  const int p = 2, n = 3;
  auto k = field_algebra(p);
  // idempotents u_P = E00 (P = F2), u_Q = E11 + E22 (Q = F2²); R = u_P T u_P ⊕ u_Q T u_Q
  std::vector<Mat> basis = {matrix_unit(p, n, 0, 0), matrix_unit(p, n, 1, 1), matrix_unit(p, n, 1, 2),
                            matrix_unit(p, n, 2, 1), matrix_unit(p, n, 2, 2)};
  auto r = matrix_subalgebra(p, basis, false, "R");
  InstanceBundle out;
  out.name = against_trivial ? "corner-idempotents-trivial-target" : "corner-idempotents";
  out.notes = "Σ = P⊕Q with P = F2, Q = F2²; R spanned by the diagonal corners of End(Σ), no declared unit";
  Bimodule s = make_bimodule("Σ", k, k, {Mat::identity(p, n)}, {Mat::identity(p, n)});
  Bimodule sp = make_bimodule("Σ′", k, k, {Mat::identity(p, n)}, {Mat::identity(p, n)});
  Mat iota(p, n * n, 5);
  for (int b = 0; b < 5; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) iota.set(i * n + j, b, basis[b](i, j));
  out.data = ComatrixData{out.name, k, k, r, s, sp, eval_map(p, n), iota};
  if (against_trivial) {
    out.target = trivial_coring(k);
    out.rho = Mat::identity(p, n);
  }
  return out;
}

InstanceBundle matrix_f2() {
  const int p = 2, n = 2;
  auto k = field_algebra(p);
  InstanceBundle out;
  out.name = "matrix-f2";
  out.notes = "Σ = F2², Σ′ = its dual, R = B = F2, ι(1) = Σ e_i⊗e_i*; C is the 2×2 matrix coring";
  Bimodule s = make_bimodule("Σ", k, k, {Mat::identity(p, n)}, {Mat::identity(p, n)});
  Bimodule sp = make_bimodule("Σ′", k, k, {Mat::identity(p, n)}, {Mat::identity(p, n)});
  Mat iota(p, n * n, 1);
  for (int i = 0; i < n; ++i) iota.set(i * n + i, 0, 1);
  out.data = ComatrixData{out.name, k, k, k, s, sp, eval_map(p, n), iota};
  return out;
}

}  // namespace

std::vector<InstanceBundle> bundled() {
  return {trivial(),  sweedler(2, 1, 1, "sweedler-f4-f2", "F4"), projection(), dual_basis_matrix(), corner(false),
          matrix_f2(), sweedler(3, 0, 2, "sweedler-f9-f3", "F9")};
}

Result<InstanceBundle> find_bundled(const std::string& name) {
  for (auto& b : bundled())
    if (b.name == name) return b;
  return Failure{"NotFound", "no bundled instance named " + name, {}};
}

InstanceBundle corner_against_trivial() { return corner(true); }

Report validate_instance(const InstanceBundle& b) {
  Report rep;
  const ComatrixData& d = b.data;
  rep.merge(validate_algebra(*d.A), "A");
  rep.merge(validate_algebra(*d.B), "B");
  rep.merge(validate_algebra(*d.R), "R");
  rep.add("A_unital", d.A->unital());
  rep.add("B_unital", d.B->unital());
  rep.merge(validate_bimodule(d.sigma), "Sigma");
  rep.merge(validate_bimodule(d.sigmap), "SigmaPrime");
  if (!rep.ok()) return rep;
  auto cc = build_comatrix(d);
  if (!cc) {
    rep.fail("comatrix", cc.error().str(), cc.error().witness);
    return rep;
  }
  rep.merge(cc->report, "comatrix");
  if (b.target) {
    rep.merge(validate_coring(*b.target), "target");
    Tensor mc = Tensor::make({cc->s.sigma_R, b.target->C});
    if (b.rho.rows() != d.sigma.dim * b.target->dim() || b.rho.cols() != d.sigma.dim) {
      rep.fail("target_rho", "ShapeMismatch");
    } else {
      auto m = make_right_comodule("Σ", cc->s.sigma_R, *b.target, mc.proj() * b.rho);
      rep.merge(validate_comodule(m, *b.target, true), "target_rho");
    }
  }
  return rep;
}

}  // namespace firmcor
