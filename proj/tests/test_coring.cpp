#include <set>

#include "doctest.h"
#include "firmcor/coring.hpp"
#include "firmcor/standard.hpp"
#include "comodule_oracle.hpp"
#include "oracles.hpp"

using namespace firmcor;

namespace {

Coring sweedler_f4() {
  auto f4 = quadratic_algebra(2, 1, 1, "F4");
  return sweedler_coring(f4, field_algebra(2), Mat::from_cols(2, 2, {{1, 0}}));
}

}  // namespace

TEST_CASE("trivial and Sweedler corings are valid") {
  auto f4 = quadratic_algebra(2, 1, 1, "F4");
  auto triv = trivial_coring(f4);
  CHECK(validate_coring(triv).ok());
  auto sw = sweedler_f4();
  CHECK(sw.dim() == 4);
  CHECK(validate_coring(sw).ok());
  auto f9 = quadratic_algebra(3, 0, 2, "F9");
  auto sw9 = sweedler_coring(f9, field_algebra(3), Mat::from_cols(3, 2, {{1, 0}}));
  CHECK(sw9.dim() == 4);
  CHECK(validate_coring(sw9).ok());
  auto m2 = matrix_algebra(2, 2);
  auto swm = sweedler_coring(m2, field_algebra(2), Mat::from_cols(2, 4, {{1, 0, 0, 1}}));
  CHECK(swm.dim() == 16);
  CHECK(validate_coring(swm).ok());
  CHECK(coring_hom_check(sw, sw, Mat::identity(2, 4)).ok());
}

TEST_CASE("broken counit and coaction are caught") {
  auto f4 = quadratic_algebra(2, 1, 1, "F4");
  auto triv = trivial_coring(f4);
  auto bad = triv;
  bad.eps = Mat(2, 2, 2);
  auto rep = validate_coring(bad);
  CHECK(!rep.ok());
  CHECK(rep.first_failure()->detail.find("CounitFailed") == 0);

  auto sw = sweedler_f4();
  auto comods = enumerate_comodules(sw, 1);
  REQUIRE(comods.ok());
  REQUIRE(comods->size() >= 2);
  auto m = (*comods)[1];
  CHECK(validate_comodule(m, sw).ok());
  m.rho = Mat(2, m.rho.rows(), m.rho.cols());
  auto r2 = validate_comodule(m, sw);
  CHECK(!r2.ok());
  CHECK(r2.first_failure()->name == "counit");
  // zero map is not a coring map
  CHECK(!coring_hom_check(sw, sw, Mat(2, 4, 4)).ok());
}

TEST_CASE("comodule enumeration matches brute force") {
  auto f2 = field_algebra(2);
  auto triv = trivial_coring(f2);
  for (int d = 1; d <= 2; ++d) {
    auto oracle_set = oracle::brute_x_forms(triv, d);
    CHECK(oracle_set.size() == 1);
  }
  auto sw = sweedler_f4();
  auto all = enumerate_comodules(sw, 2);
  REQUIRE(all.ok());
  std::set<std::vector<int>> got1, got2;
  for (auto& m : *all) {
    CHECK(validate_comodule(m, sw, false).ok());
    int d = m.M.dim / 2;
    if (d == 0) continue;
    (d == 1 ? got1 : got2).insert(m.rho.data());
  }
  CHECK(got1 == oracle::brute_x_forms(sw, 1));
  auto b2 = oracle::brute_x_forms(sw, 2);
  CHECK(got2 == b2);
  // frozen: forms of F4^d over F2, |GL_d(F4)| / |GL_d(F2)|
  CHECK(got1.size() == 3);
  CHECK(got2.size() == 30);
  // sorted output is deterministic
  auto again = enumerate_comodules(sw, 2);
  REQUIRE(again.ok());
  for (size_t i = 0; i < all->size(); ++i) CHECK((*all)[i].rho == (*again)[i].rho);
}

TEST_CASE("search budget") {
  auto sw = sweedler_f4();
  auto r = enumerate_comodules(sw, 2, 10);
  REQUIRE(!r.ok());
  CHECK(r.error().kind == "SearchBudgetExceeded");
}

TEST_CASE("cotensor with the coring is the comodule") {
  auto sw = sweedler_f4();
  auto cl = make_left_comodule("C", sw.C, sw, sw.delta);
  CHECK(validate_left_comodule(cl, sw).ok());
  auto comods = enumerate_comodules(sw, 2);
  REQUIRE(comods.ok());
  for (auto& m : *comods) {
    auto ct = cotensor(m, cl, sw);
    CHECK(ct.dim() == m.M.dim);
  }
}
