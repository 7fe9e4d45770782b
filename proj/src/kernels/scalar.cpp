#include "ppr/kernels.hpp"

namespace ppr::kernels {
namespace {

void matvec(const cd* a, std::size_t rows, std::size_t cols, const cd* x, cd* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const cd* row = a + i * cols;
    cd acc(0.0);
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec_adjoint(const cd* a, std::size_t rows, std::size_t cols, const cd* r, cd* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = cd(0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const cd* row = a + i * cols;
    const cd ri = r[i];
    for (std::size_t j = 0; j < cols; ++j) out[j] += std::conj(row[j]) * ri;
  }
}

double intensity_residual(const cd* u, const double* y, std::size_t n, cd* w) {
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::norm(u[i]) - y[i];
    w[i] = a * u[i];
    loss += a * a;
  }
  return 0.5 * loss;
}

void step_polynomial(const cd* u, const cd* v, const double* y, std::size_t n, double* q) {
  double scc = 0, sbc = 0, sbb2ac = 0, sab = 0, saa = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::norm(u[i]) - y[i];
    const double b = -2.0 * (u[i].real() * v[i].real() + u[i].imag() * v[i].imag());
    const double c = std::norm(v[i]);
    scc += c * c;
    sbc += b * c;
    sbb2ac += b * b + 2.0 * a * c;
    sab += a * b;
    saa += a * a;
  }
  q[0] = 0.5 * saa;
  q[1] = sab;
  q[2] = 0.5 * sbb2ac;
  q[3] = sbc;
  q[4] = 0.5 * scc;
}

void row_inner_real(const cd* w, const cd* a, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const cd x = w[i * cols + j], z = a[i * cols + j];
      acc += x.real() * z.real() + x.imag() * z.imag();
    }
    out[i] = acc;
  }
}

}  // namespace

namespace detail {
const Table scalar_table{matvec, matvec_adjoint, intensity_residual, step_polynomial, row_inner_real};
}

}  // namespace ppr::kernels
