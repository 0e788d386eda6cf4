#include "doctest.h"
#include "firmcor/comatrix.hpp"
#include "firmcor/instances.hpp"
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

ComatrixData data_of(const std::string& name) { return must(find_bundled(name)).data; }

}  // namespace

TEST_CASE("every bundled instance validates and builds") {
  auto all = bundled();
  CHECK(all.size() >= 5);
  for (auto& b : all) {
    INFO(b.name);
    Report r = validate_instance(b);
    CHECK_MESSAGE(r.ok(), failures(r));
  }
}

TEST_CASE("trivial S-ring and coring") {
  auto d = data_of("trivial");
  auto s = build_s_ring(d);
  REQUIRE(s.ok());
  CHECK(s->ring->dim == 1);
  CHECK(s->ring->c(0, 0, 0) == 1);
  auto cc = build_comatrix(d);
  REQUIRE(cc.ok());
  CHECK(cc->coring.dim() == 1);
  CHECK(cc->coring.eps == Mat::identity(2, 1));
  CHECK(cc->coring.delta == Mat::identity(2, 1));
}

TEST_CASE("ι failing multiplicativity at one pair gives NotRingHom") {
  auto d = data_of("matrix-f2");
  // R = F2 ⊕ F2 with e0 e0 = e0, e1 e1 = e1 but ι(e1) = ι(e0): e0 e1 = 0 yet ι(e0)ι(e1) ≠ 0
  d.R = product_algebra(2, 2);
  d.iota = hcat({d.iota, d.iota});
  auto s = build_s_ring(d);
  REQUIRE(!s.ok());
  CHECK(s.error().kind == "NotRingHom");
  CHECK(s.error().witness == std::vector<int>{0, 1});
}

TEST_CASE("S for the dual-basis data matches M2 structure constants") {
  auto d = data_of("dual-basis-matrix");
  auto s = build_s_ring(d);
  REQUIRE(s.ok());
  REQUIRE(s->ring->dim == 4);
  // Σ ⊗_F2 Σ′ is already the ambient; e_i⊗e_j* is the basis element i*2+j
  CHECK(s->S.proj().is_identity());
  auto m2 = matrix_algebra(2, 2);
  CHECK(s->ring->mult == m2->mult);
  CHECK(s->iota.is_identity());
  CHECK(s->report.ok());
}

TEST_CASE("S over itself acts like matrices on columns") {
  // oracle: xμ(φ⊗u) computed from the matrix picture e_i e_j^T u
  auto d = data_of("matrix-f2");
  auto s = must(build_s_ring(d));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat e = matrix_unit(2, 2, i, j);
      CHECK(s.on_sigma[i * 2 + j] == e);
      CHECK(s.on_sigmap[i * 2 + j] == e.transpose());
    }
}

TEST_CASE("Sweedler comatrix coring is isomorphic to A⊗_B A") {
  for (auto name : {"sweedler-f4-f2", "sweedler-f9-f3"}) {
    INFO(name);
    auto b = must(find_bundled(name));
    auto cc = must(build_comatrix(b.data));
    CHECK(cc.report.ok());
    const Coring& sw = *b.target;
    REQUIRE(cc.coring.dim() == 4);
    REQUIRE(sw.dim() == 4);
    // both carriers are quotients of A⊗_K A by the same B-relations, so the
    // identity of the ambient induces the iso
    Tensor sw_t = Tensor::make({cc.carrier.factor(0), cc.carrier.factor(1)});
    auto iso = tensor_map(cc.carrier, sw_t, Mat::identity(b.data.A->p, 4));
    REQUIRE(iso.ok());
    REQUIRE(invert(*iso).ok());
    Report r = coring_hom_check(cc.coring, sw, *iso);
    CHECK_MESSAGE(r.ok(), failures(r));
  }
}

TEST_CASE("Δ(a⊗a′) = (a⊗1)⊗(1⊗a′) on the Sweedler instance") {
  auto b = must(find_bundled("sweedler-f4-f2"));
  auto cc = must(build_comatrix(b.data));
  const Tensor& car = cc.carrier;
  Vec one = {1, 0};
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2) {
      Vec x = car.pure({unit_vec(2, a), unit_vec(2, a2)});
      Vec lhs = cc.coring.delta * x;
      Vec rhs = cc.coring.CC.pure({car.pure({unit_vec(2, a), one}), car.pure({one, unit_vec(2, a2)})});
      CHECK(lhs == rhs);
      // ε(a⊗a′) = a a′
      CHECK(cc.coring.eps * x == b.data.A->mul(unit_vec(2, a), unit_vec(2, a2)));
    }
}

TEST_CASE("corner coring: Δ(φ⊗x) sums over the two idempotents") {
  // Δ(φ⊗x) = Σ_α φ⊗ι_α(e)⊗e*π_α⊗x with α running over the blocks P, Q
  auto b = must(find_bundled("corner-idempotents"));
  auto cc = must(build_comatrix(b.data));
  CHECK(cc.report.ok());
  CHECK(cc.coring.dim() == 2);
  const Tensor& car = cc.carrier;
  std::vector<std::vector<int>> blocks = {{0}, {1, 2}};
  for (int phi = 0; phi < 3; ++phi)
    for (int x = 0; x < 3; ++x) {
      Vec rhs(cc.coring.CC.dim(), 0);
      for (auto& blk : blocks)
        for (int e : blk)
          rhs = add_vec(rhs, cc.coring.CC.pure({car.pure({unit_vec(3, phi), unit_vec(3, e)}), car.pure({unit_vec(3, e), unit_vec(3, x)})}), 2);
      CHECK(cc.coring.delta * car.pure({unit_vec(3, phi), unit_vec(3, x)}) == rhs);
    }
}

TEST_CASE("Δ′ = Δ and d_Σ, d_Σ′ are bicomodule isomorphisms") {
  for (auto& b : bundled()) {
    INFO(b.name);
    auto cc = must(build_comatrix(b.data));
    auto pr = build_comatrix_prime(cc);
    REQUIRE(pr.ok());
    CHECK_MESSAGE(pr->report.ok(), failures(pr->report));
    CHECK(pr->delta_prime == cc.coring.delta);
  }
}

TEST_CASE("Σ′ not firm over R gives NotFirm") {
  // Σ′ = F2² with μ seeing only the first coordinate: 1 acts on Σ′ as a projection
  auto k = field_algebra(2);
  Bimodule s = make_bimodule("Σ", k, k, {Mat::identity(2, 1)}, {Mat::identity(2, 1)});
  Bimodule sp = make_bimodule("Σ′", k, k, {Mat::identity(2, 2)}, {Mat::identity(2, 2)});
  Mat mu = Mat::from_rows(2, {{1, 0}});
  Mat iota = Mat::from_rows(2, {{1}, {0}});
  ComatrixData d{"half", k, k, k, s, sp, mu, iota};
  auto cc = build_comatrix(d);
  REQUIRE(cc.ok());
  CHECK(cc->report.ok());
  CHECK(cc->coring.dim() == 1);
  auto pr = build_comatrix_prime(*cc);
  REQUIRE(!pr.ok());
  CHECK(pr.error().kind == "NotFirm");
  // ϖ_Σ′ misses (0,1): the witness is a functional vanishing on its image
  Vec w(pr.error().witness.begin(), pr.error().witness.end());
  CHECK(w == Vec{0, 1});
  CHECK((Mat::from_rows(2, {w}) * multiplication_ambient_right(cc->s.sigmap_R)).is_zero());
}

namespace {

// Σ = Σ′ = F2², μ(φ⊗u) = φ_0 u_0, ι(1) = e_0⊗e_0*: ι stays multiplicative but
// 1 acts on Σ as a projection and φ̄ kills e_1*
ComatrixData degenerate() {
  auto k = field_algebra(2);
  Bimodule s = make_bimodule("Σ", k, k, {Mat::identity(2, 2)}, {Mat::identity(2, 2)});
  Bimodule sp = make_bimodule("Σ′", k, k, {Mat::identity(2, 2)}, {Mat::identity(2, 2)});
  Mat mu = Mat::from_rows(2, {{1, 0, 0, 0}});
  Mat iota = Mat::from_rows(2, {{1}, {0}, {0}, {0}});
  return ComatrixData{"degenerate", k, k, k, s, sp, mu, iota};
}

}  // namespace

TEST_CASE("_RΣ not firm gives NotFirm from build_comatrix") {
  auto d = degenerate();
  REQUIRE(build_s_ring(d).ok());
  auto cc = build_comatrix(d);
  REQUIRE(!cc.ok());
  CHECK(cc.error().kind == "NotFirm");
  // a zero pairing already breaks ι
  d.mu = Mat(2, 1, 4);
  auto cc2 = build_comatrix(d);
  REQUIRE(!cc2.ok());
  CHECK(cc2.error().kind == "NotRingHom");
}

TEST_CASE("dagger coring, f and transported coactions") {
  for (auto& b : bundled()) {
    INFO(b.name);
    auto cc = must(build_comatrix(b.data));
    auto dg = build_dagger(cc);
    REQUIRE(dg.ok());
    CHECK_MESSAGE(dg->report.ok(), failures(dg->report));
    CHECK((dg->f * dg->f_inverse).is_identity());
    CHECK((dg->f_inverse * dg->f).is_identity());
  }
  auto cc = must(build_comatrix(data_of("trivial")));
  auto dg = must(build_dagger(cc));
  CHECK(dg.f == Mat::identity(2, 1));
}

TEST_CASE("dual space of A^n is A^n") {
  auto f4 = quadratic_algebra(2, 1, 1, "F4");
  auto m = free_right_module(f4, 2);
  auto ds = dual_space(m, f4);
  CHECK(ds.dim() == 4);
  // brute force: right A-linear maps among all dimA x dimΣ matrices
  int count = 0;
  for (auto& v : oracle::all_vectors(2, 8)) {
    Mat f(2, 2, 4);
    for (int i = 0; i < 8; ++i) f.set(i / 4, i % 4, v[i]);
    bool lin = true;
    for (int t = 0; t < 2; ++t) lin = lin && (f * m.right[t] == f4->Rm[t] * f);
    if (lin) {
      ++count;
      CHECK(ds.coords(f).has_value());
    }
  }
  CHECK(count == 16);
}

TEST_CASE("transport to Σ* is an invertible coring map matching α̃") {
  for (auto& b : bundled()) {
    INFO(b.name);
    auto cc = must(build_comatrix(b.data));
    auto tr = transport_to_sigma_star(cc);
    REQUIRE(tr.ok());
    CHECK_MESSAGE(tr->report.ok(), failures(tr->report));
    CHECK((tr->map * tr->inverse).is_identity());
  }
  auto cc = must(build_comatrix(data_of("trivial")));
  auto tr = must(transport_to_sigma_star(cc));
  CHECK(tr.map == Mat::identity(2, 1));
}

TEST_CASE("degenerate μ is stopped before the transport") {
  // φ̄ has a kernel here, and the firmness precondition is what catches it
  auto d = degenerate();
  auto cc = build_comatrix(d);
  REQUIRE(!cc.ok());
  CHECK(cc.error().kind == "NotFirm");
  auto star = dual_space(d.sigma, d.A);
  Mat phibar(2, star.dim(), 2);
  for (int phi = 0; phi < 2; ++phi) {
    Mat f(2, 1, 2);
    for (int u = 0; u < 2; ++u) f.set(0, u, d.mu(0, phi * 2 + u));
    phibar.set_col(phi, *star.coords(f));
  }
  auto inv = invert(phibar);
  REQUIRE(!inv.ok());
  CHECK(inv.error().kind == "NotInvertible");
}

TEST_CASE("(d_Σ⊗Σ′)ι = (R⊗ι)d_R on every instance") {
  for (auto& b : bundled()) {
    INFO(b.name);
    auto cc = must(build_comatrix(b.data));
    bool found = false;
    for (auto& c : cc.report.checks)
      if (c.name == "porfirm") {
        found = true;
        CHECK(c.ok);
      }
    CHECK(found);
  }
}

TEST_CASE("μ descends over B, S and R") {
  for (auto& b : bundled()) {
    INFO(b.name);
    auto s = must(build_s_ring(b.data));
    CHECK_MESSAGE(s.report.ok(), failures(s.report));
  }
}

TEST_CASE("comatrix contexts") {
  // Sweedler context B ⊆ A, Σ = Σ′ = A
  auto b = must(find_bundled("sweedler-f4-f2"));
  const auto& d = b.data;
  auto r = context_validate(d.A, d.B, d.sigma, d.sigmap, d.iota, d.mu);
  CHECK(r.report.ok());
  REQUIRE(r.dual_basis.size() == 1);
  CHECK(r.dual_basis[0].first == Vec{1, 0});
  CHECK(r.dual_basis[0].second == Vec{1, 0});
  // breaking the Σ′ side: ε(φ⊗x) = 0 for φ = x
  Mat bad = d.mu;
  bad.set_col(0, Vec{0, 0});
  auto r2 = context_validate(d.A, d.B, d.sigma, d.sigmap, d.iota, bad);
  CHECK(!r2.report.ok());
  REQUIRE(r2.report.first_failure());
  CHECK(r2.report.first_failure()->name == "left");
  CHECK(r2.report.first_failure()->detail == "DiagramFails");
  CHECK(r2.report.first_failure()->witness == std::vector<int>{0, 0});
  // A^n with its dual over A = F2, B = M_n
  auto m = must(find_bundled("dual-basis-matrix")).data;
  auto r3 = context_validate(m.A, m.B, m.sigma, m.sigmap, m.iota, m.mu);
  CHECK(r3.report.ok());
  REQUIRE(r3.dual_basis.size() == 2);
  CHECK(r3.dual_basis[0] == std::make_pair(Vec{1, 0}, Vec{1, 0}));
  CHECK(r3.dual_basis[1] == std::make_pair(Vec{0, 1}, Vec{0, 1}));
}
