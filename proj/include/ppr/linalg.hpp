#pragma once

// Small dense helpers shared by the solvers. All SVD work goes through Eigen.

#include "ppr/common.hpp"

namespace ppr::linalg {

RVec singular_values(const CMat& a);

// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const CMat& a, double rel_tol);

// Right singular vector of the smallest singular value. Also reports the
// two smallest singular values so callers can judge the kernel gap.
struct NullVector {
  CVec v;
  double sigma_min = 0.0;
  double sigma_next = 0.0;
};
NullVector smallest_right_singular(const CMat& a);

// Columns span {u : u^T a = 0} numerically, taken from the `count` smallest
// left singular directions.
CMat left_null_basis(const CMat& a, int count);

// Moore-Penrose pseudoinverse with singular values below rel_tol * sigma_max dropped.
CMat pinv(const CMat& a, double rel_tol = 1e-12);
RMat pinv(const RMat& a, double rel_tol = 1e-12);

// Least-squares solve a x = b.
CVec lstsq(const CMat& a, const CVec& b);

// Top eigenpair of a Hermitian matrix.
struct Eigenpair {
  double value = 0.0;
  CVec vector;
};
Eigenpair top_eigenpair(const CMat& hermitian);

}  // namespace ppr::linalg
