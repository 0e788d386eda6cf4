#pragma once

#include <set>
#include <vector>

#include "firmcor/coring.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace firmcor;

// every d x d matrix over C satisfying the X-form equations, found without
// solving the counit constraint first
inline std::set<std::vector<int>> brute_x_forms(const Coring& c, int d) {
  const int p = c.C.p, n = c.dim();
  auto elems = oracle::all_vectors(p, n);
  std::set<std::vector<int>> out;
  const int cells = d * d;
  std::vector<size_t> idx(cells, 0);
  while (true) {
    auto at = [&](int j, int i) { return elems[idx[j * d + i]]; };
    bool ok = true;
    for (int k = 0; k < d && ok; ++k)
      for (int i = 0; i < d && ok; ++i) {
        Vec e = oracle::mat_apply(c.eps, at(k, i));
        if (e != (k == i ? *c.A->unit : Vec(c.A->dim, 0))) ok = false;
        Vec rhs(c.CC.dim(), 0);
        for (int j = 0; j < d; ++j) rhs = add_vec(rhs, oracle::mat_apply(c.CC.proj(), kron_vec(at(k, j), at(j, i), p)), p);
        if (oracle::mat_apply(c.delta, at(k, i)) != rhs) ok = false;
      }
    if (ok) {
      std::vector<std::vector<Vec>> x(d, std::vector<Vec>(d));
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) x[j][i] = at(j, i);
      out.insert(comodule_from_matrix(c, d, x).rho.data());
    }
    int t = cells - 1;
    for (; t >= 0; --t) {
      if (++idx[t] < elems.size()) break;
      idx[t] = 0;
    }
    if (t < 0) break;
  }
  return out;
}

}  // namespace oracle
