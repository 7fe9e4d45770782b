#include "ppr/linalg.hpp"

#include <Eigen/SVD>

namespace ppr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::NoFactorization: return "no factorization";
    case ErrorKind::Underdetermined: return "underdetermined";
    case ErrorKind::SchemeNotGenerating: return "scheme not generating";
    case ErrorKind::InvalidAutocorrelation: return "invalid autocorrelation";
    case ErrorKind::PhaseLinkUndefined: return "phase link undefined";
    case ErrorKind::InconsistentPairing: return "not a valid autocorrelation GCD";
    case ErrorKind::Diverged: return "diverged";
  }
  return "unknown";
}

namespace linalg {

RVec singular_values(const CMat& a) {
  if (a.size() == 0) return RVec();
  if (a.rows() >= a.cols()) {
    Eigen::JacobiSVD<CMat, Eigen::ColPivHouseholderQRPreconditioner> svd(a);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<CMat, Eigen::ColPivHouseholderQRPreconditioner> svd(a.adjoint());
  return svd.singularValues();
}

int numerical_rank(const CMat& a, double rel_tol) {
  const RVec s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

NullVector smallest_right_singular(const CMat& a) {
  require(a.cols() > 0, "smallest_right_singular: empty matrix");
  NullVector out;
  const Eigen::Index n = a.cols();
  if (a.rows() >= n) {
    Eigen::JacobiSVD<CMat, Eigen::ColPivHouseholderQRPreconditioner> svd(a, Eigen::ComputeThinV);
    const RVec& s = svd.singularValues();
    out.v = svd.matrixV().col(n - 1);
    out.sigma_min = s(n - 1);
    out.sigma_next = n >= 2 ? s(n - 2) : s(n - 1);
  } else {
    // Wide matrix: the kernel has dimension >= n - rows, smallest value is 0.
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
    out.v = svd.matrixV().col(n - 1);
    out.sigma_min = 0.0;
    out.sigma_next = a.rows() + 1 < n ? 0.0 : svd.singularValues()(a.rows() - 1);
  }
  return out;
}

CMat left_null_basis(const CMat& a, int count) {
  require(count >= 0 && count <= a.rows(), "left_null_basis: bad count");
  // u^T a = 0  <=>  a^T u = 0, so the basis is the right kernel of a^T.
  const CMat at = a.transpose();
  Eigen::BDCSVD<CMat> svd(at, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(count);
}

CMat pinv(const CMat& a, double rel_tol) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& s = svd.singularValues();
  RVec inv = RVec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

RMat pinv(const RMat& a, double rel_tol) {
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& s = svd.singularValues();
  RVec inv = RVec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

CVec lstsq(const CMat& a, const CVec& b) {
  return a.colPivHouseholderQr().solve(b);
}

Eigenpair top_eigenpair(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian);
  const Eigen::Index n = hermitian.rows();
  return {es.eigenvalues()(n - 1), es.eigenvectors().col(n - 1)};
}

}  // namespace linalg
}  // namespace ppr
