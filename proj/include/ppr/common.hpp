#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ppr {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CMatRow = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One row of an iterative solver's convergence history.
struct TraceEntry {
  int k = 0;
  double cost = 0.0;
  double residual = 0.0;
  double seconds = 0.0;
};

enum class ErrorKind {
  InvalidArgument,
  NoFactorization,
  Underdetermined,
  SchemeNotGenerating,
  InvalidAutocorrelation,
  PhaseLinkUndefined,
  InconsistentPairing,
  Diverged,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace ppr
