#include "doctest.h"
#include "firmcor/dualring.hpp"
#include "firmcor/standard.hpp"
#include "oracles.hpp"

using namespace firmcor;

namespace {

std::string failures(const Report& r) {
  std::string s;
  for (auto& c : r.checks)
    if (!c.ok) s += c.name + " (" + c.detail + "); ";
  return s;
}

// the comatrix coring of every bundle, plus the target coring when there is one
std::vector<Coring> bundled_corings() {
  std::vector<Coring> out;
  auto all = bundled();
  all.push_back(corner_against_trivial());
  for (auto& b : all) {
    auto cc = must(build_comatrix(b.data));
    cc.coring.name = b.name;
    out.push_back(cc.coring);
    if (b.target) {
      Coring t = *b.target;
      t.name = b.name + "/target";
      out.push_back(t);
    }
  }
  return out;
}

Coring coring_of(const std::string& name) { return must(build_comatrix(must(find_bundled(name)).data)).coring; }

Mat as_matrix(const Vec& v, int rows, int cols, int p) {
  Mat m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, v[i * cols + j]);
  return m;
}

// every left A-linear functional, found by trying all matrices
std::vector<Mat> brute_dual(const Coring& c) {
  const int p = c.A->p, a = c.A->dim, n = c.dim();
  std::vector<Mat> out;
  for (auto& v : oracle::all_vectors(p, a * n)) {
    Mat f = as_matrix(v, a, n, p);
    bool ok = true;
    for (int t = 0; t < a && ok; ++t)
      for (int x = 0; x < n && ok; ++x)
        ok = oracle::mat_apply(f, c.C.left[t].col(x)) == oracle::mat_apply(c.A->L[t], f.col(x));
    if (ok) out.push_back(f);
  }
  return out;
}

// f*g(x) = g(x_(1) f(x_(2))), summed over a lift of Δ(x)
Mat brute_conv(const Coring& c, const Mat& f, const Mat& g) {
  const int p = c.A->p, n = c.dim();
  Mat out(p, c.A->dim, n);
  Mat lifted = c.CC.sec() * c.delta;
  for (int x = 0; x < n; ++x) {
    Vec acc(n, 0);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        int s = lifted(u * n + v, x);
        if (!s) continue;
        Vec uf = oracle::mat_apply(c.C.right_elem(f.col(v)), unit_vec(n, u));
        acc = add_vec(acc, scale_vec(uf, s, p), p);
      }
    out.set_col(x, oracle::mat_apply(g, acc));
  }
  return out;
}

// an algebra isomorphism a -> b found by trying every invertible matrix
bool isomorphic(const Algebra& a, const Algebra& b) {
  if (a.dim != b.dim || a.p != b.p) return false;
  const int n = a.dim;
  for (auto& v : oracle::all_vectors(a.p, n * n)) {
    Mat phi = as_matrix(v, n, n, a.p);
    if (rank(phi) != n) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        ok = phi * a.mul(unit_vec(n, i), unit_vec(n, j)) == b.mul(phi.col(i), phi.col(j));
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("dual of the trivial coring is F2") {
  auto d = must(dual_ring(trivial_coring(field_algebra(2))));
  CHECK(d.dim() == 1);
  CHECK(d.report.ok());
  CHECK(*d.ring->unit == Vec{1});
}

TEST_CASE("dual of the Sweedler coring F4/F2 is 4-dimensional and matches brute force") {
  Coring c = coring_of("sweedler-f4-f2");
  auto d = must(dual_ring(c));
  CHECK(d.dim() == 4);
  CHECK_MESSAGE(d.report.ok(), failures(d.report));
  auto all = brute_dual(c);
  CHECK(all.size() == 16);
  for (auto& f : all) CHECK(d.coords(f).has_value());
  // convolution closes and is associative on every triple of elements
  for (auto& f : all)
    for (auto& g : all) {
      Mat fg = brute_conv(c, f, g);
      REQUIRE(d.coords(fg).has_value());
      for (auto& h : all) CHECK(brute_conv(c, fg, h) == brute_conv(c, f, brute_conv(c, g, h)));
    }
  // structure constants agree with the direct convolution
  for (int i = 0; i < d.dim(); ++i)
    for (int j = 0; j < d.dim(); ++j) {
      Vec prod = d.ring->mul(unit_vec(4, i), unit_vec(4, j));
      Mat expect = brute_conv(c, d.functional(i), d.functional(j));
      CHECK(*d.coords(expect) == prod);
    }
  // ε is a two-sided unit
  for (auto& f : all) {
    CHECK(brute_conv(c, c.eps, f) == f);
    CHECK(brute_conv(c, f, c.eps) == f);
  }
}

TEST_CASE("dual of the 2x2 matrix coring is M2(F2)") {
  auto d = must(dual_ring(coring_of("matrix-f2")));
  CHECK(d.dim() == 4);
  auto e = [](int i, int j) {
    Mat m(2, 2, 2);
    m.set(i, j, 1);
    return m;
  };
  auto m2 = matrix_subalgebra(2, {e(0, 0), e(0, 1), e(1, 0), e(1, 1)}, true, "M2");
  CHECK(isomorphic(*m2, *d.ring));
  // and not commutative, so not F2^4 or F16
  CHECK(d.ring->mul(unit_vec(4, 0), unit_vec(4, 1)) != d.ring->mul(unit_vec(4, 1), unit_vec(4, 0)));
}

TEST_CASE("dual ring invariants on every bundled coring") {
  for (auto& c : bundled_corings()) {
    auto d = dual_ring(c);
    REQUIRE_MESSAGE(d.ok(), c.name);
    CHECK_MESSAGE(d->report.ok(), std::string(c.name + ": " + failures(d->report)));
    CHECK_MESSAGE(static_cast<int>(brute_dual(c).size()) == static_cast<int>(std::pow(c.A->p, d->dim())), c.name);
  }
}

TEST_CASE("trivial coring: every comodule is rational with ρ(m) = m⊗1") {
  Coring c = trivial_coring(field_algebra(2));
  auto d = must(dual_ring(c));
  auto cs = must(enumerate_comodules(c, 2));
  for (auto& n : cs) {
    auto rs = must(rational_structure(d, module_of_comodule(d, n)));
    CHECK(rs.all_rational());
    REQUIRE(rs.comodule.has_value());
    CHECK(rs.report.ok());
    // the only coaction over F2 is m ↦ m⊗1
    Vec one(1, 1);
    for (int m = 0; m < n.M.dim; ++m) CHECK(rs.coaction.col(m) == rs.MC.pure({unit_vec(n.M.dim, m), one}));
  }
}

TEST_CASE("Sweedler comodules survive the round trip through *C-modules") {
  Coring c = coring_of("sweedler-f4-f2");
  auto d = must(dual_ring(c));
  auto cs = must(enumerate_comodules(c, 2));
  CHECK(cs.size() == 34);
  for (auto& n : cs) {
    Bimodule m = module_of_comodule(d, n);
    auto rs = must(rational_structure(d, m));
    CHECK_MESSAGE(rs.report.ok(), failures(rs.report));
    REQUIRE(rs.all_rational());
    CHECK(rs.eval_injective);
    // the A-action through ι is the original one
    for (size_t t = 0; t < n.M.right.size(); ++t) CHECK(rs.over_A.right[t] == n.M.right[t]);
    // full rational part in its own coordinates: coaction equals ρ_N after the change of basis
    Mat incl = must(tensor_map(rs.comodule->MC, n.MC, kron(rs.rational, Mat::identity(2, c.dim()))));
    CHECK(incl * rs.comodule->rho == n.rho * rs.rational);
  }
}

TEST_CASE("an action broken at one triple is rejected with that triple") {
  Coring c = coring_of("sweedler-f4-f2");
  auto d = must(dual_ring(c));
  Bimodule reg = right_module("*C", d.ring, d.ring->Rm);
  REQUIRE(rational_structure(d, reg).ok());
  // find a non-unit basis element and flip one entry of its action
  int f = 0;
  while (d.ring->Rm[f].is_identity()) ++f;
  Bimodule bad = reg;
  bad.right[f].add_to(0, 0, 1);
  auto rs = rational_structure(d, bad);
  REQUIRE_FALSE(rs.ok());
  CHECK(rs.error().kind == "NotAModule");
  auto w = rs.error().witness;
  REQUIRE(w.size() == 3);
  const int k = d.dim();
  Mat lhs = bad.right[w[2]] * bad.right[w[1]];
  Mat rhs = bad.right_elem(d.ring->mul(unit_vec(k, w[1]), unit_vec(k, w[2])));
  CHECK(lhs.col(w[0]) != rhs.col(w[0]));
  CHECK((w[1] == f || w[2] == f || d.ring->mul(unit_vec(k, w[1]), unit_vec(k, w[2]))[f] != 0));
}

TEST_CASE("an action where the unit moves an element is rejected") {
  auto d = must(dual_ring(coring_of("matrix-f2")));
  Bimodule reg = right_module("*C", d.ring, d.ring->Rm);
  Bimodule bad = reg;
  for (auto& r : bad.right) r = Mat(2, r.rows(), r.cols());
  auto rs = rational_structure(d, bad);
  REQUIRE_FALSE(rs.ok());
  CHECK(rs.error().kind == "NotAModule");
  CHECK(rs.error().witness.size() == 1);
}

TEST_CASE("question equation, multiplicative ρ and local units on every bundled coring") {
  for (auto& c : bundled_corings()) {
    auto d = must(dual_ring(c));
    auto ids = verify_dual_identities(d);
    REQUIRE_MESSAGE(ids.ok(), c.name);
    CHECK_MESSAGE(ids->report.ok(), std::string(c.name + ": " + failures(ids->report)));
    CHECK(ids->regular.all_rational());
  }
}

TEST_CASE("question equation checked by hand on Sweedler basis pairs") {
  Coring c = coring_of("sweedler-f4-f2");
  auto d = must(dual_ring(c));
  auto ids = must(verify_dual_identities(d));
  const Tensor& MC = ids.regular.MC;
  const int n = c.dim(), k = d.dim();
  Mat lifted = MC.sec() * ids.regular.coaction;  // rational part is everything; basis is rational
  int pairs = 0;
  for (int f = 0; f < k; ++f) {
    // lhs by brute convolution-style evaluation of c_(1)f(c_(2))
    Mat lc = c.CC.sec() * c.delta;
    for (int x = 0; x < n; ++x) {
      Vec lhs(n, 0);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (int s = lc(u * n + v, x))
            lhs = add_vec(lhs, scale_vec(oracle::mat_apply(c.C.right_elem(d.functional(f).col(v)), unit_vec(n, u)), s, 2), 2);
      // rhs from the rational coaction of f, expressed in the rational basis
      auto fr = must(solve(ids.regular.rational, unit_vec(k, f)));
      Vec rho_f = oracle::mat_apply(lifted, fr.x);
      Vec rhs(n, 0);
      for (int g = 0; g < k; ++g)
        for (int y = 0; y < n; ++y)
          if (int s = rho_f[g * n + y])
            rhs = add_vec(rhs, scale_vec(oracle::mat_apply(c.C.left_elem(d.functional(g).col(x)), unit_vec(n, y)), s, 2), 2);
      CHECK(lhs == rhs);
      ++pairs;
    }
  }
  CHECK(pairs == 16);
}

TEST_CASE("dagger isomorphism composes to identities on every bundled coring") {
  for (auto& c : bundled_corings()) {
    auto d = must(dual_ring(c));
    auto ids = must(verify_dual_identities(d));
    auto dg = dagger_iso(d, ids.regular);
    REQUIRE_MESSAGE(dg.ok(), c.name);
    CHECK_MESSAGE(dg->report.ok(), std::string(c.name + ": " + failures(dg->report)));
    CHECK(dg->alpha.rows() == c.dim());
    CHECK((dg->alpha * dg->beta).is_identity());
    CHECK((dg->beta * dg->alpha).is_identity());
  }
}

TEST_CASE("trivial coring: α and β are identities") {
  auto d = must(dual_ring(trivial_coring(field_algebra(2))));
  auto ids = must(verify_dual_identities(d));
  auto dg = must(dagger_iso(d, ids.regular));
  CHECK(dg.alpha == Mat::identity(2, 1));
  CHECK(dg.beta == Mat::identity(2, 1));
}

TEST_CASE("C ⊗_R *C is Galois and can is the firmness map") {
  for (auto& c : bundled_corings()) {
    auto d = must(dual_ring(c));
    auto ids = must(verify_dual_identities(d));
    auto rc = rational_comatrix(d, ids.regular);
    REQUIRE_MESSAGE(rc.ok(), std::string(c.name + ": " + (rc.ok() ? "" : rc.error().str())));
    CHECK_MESSAGE(rc->report.ok(), std::string(c.name + ": " + failures(rc->report)));
    CHECK(rc->verdict.galois);
  }
}

TEST_CASE("composed equivalence agrees object-wise") {
  for (auto& c : bundled_corings()) {
    const int md = c.dim() * c.A->dim > 8 ? 1 : 2;
    auto r = dual_report(c, md);
    REQUIRE_MESSAGE(r.ok(), std::string(c.name + ": " + (r.ok() ? "" : r.error().str())));
    CHECK_MESSAGE(r->report.ok(), std::string(c.name + ": " + failures(r->report)));
    CHECK(r->comodules > 0);
    CHECK(r->modules > 0);
  }
}
