#pragma once

#include <vector>

#include "firmcor/algebra.hpp"

namespace firmcor {

// M_0 ⊗ M_1 ⊗ ... ⊗ M_n balanced over the ring between neighbours
// (rring of M_s must equal lring of M_{s+1}). Ambient basis is the
// Kronecker product in row-major order, index(i,j) = i*dim(N) + j. The
// quotient is built one factor at a time, which gives the same space as
// quotienting the full ambient by all slot relations at once.
class Tensor {
 public:
  static Result<Tensor> build(std::vector<Bimodule> factors);
  static Tensor make(std::vector<Bimodule> factors);  // throws on mismatch

  int dim() const { return proj_.rows(); }
  int ambient() const { return proj_.cols(); }
  int p() const { return factors_[0].p; }
  const Mat& proj() const { return proj_; }
  const Mat& sec() const { return sec_; }
  // columns spanning the kernel of proj (all balance relations)
  const Mat& relations() const { return rel_; }
  const std::vector<Bimodule>& factors() const { return factors_; }
  const Bimodule& factor(int i) const { return factors_[i]; }
  int size() const { return static_cast<int>(factors_.size()); }

  // class of x_0 ⊗ ... ⊗ x_n
  Vec pure(const std::vector<Vec>& xs) const;
  // residual actions: left ring of factor 0 and right ring of the last factor
  Bimodule bimodule(std::string name = {}) const;

 private:
  std::vector<Bimodule> factors_;
  Mat proj_, sec_, rel_;
};

Result<Tensor> balanced_tensor(const Bimodule& m, const Bimodule& n);

// descend a map given on the ambient of t (rows = target space)
Result<Mat> induced_map(const Tensor& t, const Mat& ambient_map);
// dst.proj * amb * src.sec, after checking amb maps relations of src into relations of dst
Result<Mat> tensor_map(const Tensor& src, const Tensor& dst, const Mat& ambient_map);
Mat tensor_map_unchecked(const Tensor& src, const Tensor& dst, const Mat& ambient_map);
// lift of a map X -> t into the ambient of t
inline Mat lift(const Tensor& t, const Mat& m) { return t.sec() * m; }

// ϖ: M ⊗_R R -> M (right) and R ⊗_R M -> M (left), on the ambient
Mat multiplication_ambient_right(const Bimodule& m);
Mat multiplication_ambient_left(const Bimodule& m);

struct FirmStructure {
  Tensor tensor;
  Mat varpi;
  Mat d;
};

// M with a right R-action: M ⊗_R R -> M
Result<FirmStructure> firm_right(const Bimodule& m);
// M with a left R-action: R ⊗_R M -> M
Result<FirmStructure> firm_left(const Bimodule& m);
Result<FirmStructure> firm_ring(const AlgPtr& r);

}  // namespace firmcor
