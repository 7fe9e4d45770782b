#pragma once

// Inner loops of the lifted solvers. Every kernel has a scalar reference
// version and, on x86-64, an AVX2/FMA version picked at runtime. Complex data
// is interleaved (re, im) as in std::complex<double>; matrices are row major.

#include <cstddef>

#include "ppr/common.hpp"

namespace ppr::kernels {

enum class Isa { Scalar, Avx2 };

struct Table {
  // y = A x, A is rows x cols.
  void (*matvec)(const cd* a, std::size_t rows, std::size_t cols, const cd* x, cd* y);
  // out = A^H r.
  void (*matvec_adjoint)(const cd* a, std::size_t rows, std::size_t cols, const cd* r, cd* out);
  // w_i = (|u_i|^2 - y_i) u_i; returns 0.5 * sum (|u_i|^2 - y_i)^2.
  double (*intensity_residual)(const cd* u, const double* y, std::size_t n, cd* w);
  // Coefficients q[0..4] of mu -> 0.5 * sum (|u_i - mu v_i|^2 - y_i)^2.
  void (*step_polynomial)(const cd* u, const cd* v, const double* y, std::size_t n, double* q);
  // out_i = Re sum_j w_ij conj(a_ij) for two rows x cols matrices.
  void (*row_inner_real)(const cd* w, const cd* a, std::size_t rows, std::size_t cols, double* out);
};

bool supported(Isa isa);
const Table& table(Isa isa);

// The table used by the solvers. Defaults to the widest supported ISA unless
// the environment variable PPR_KERNELS=scalar is set.
const Table& active();
Isa active_isa();
void set_active_isa(Isa isa);
const char* name(Isa isa);

namespace detail {
extern const Table scalar_table;
#if defined(PPR_BUILD_AVX2)
extern const Table avx2_table;
#endif
}  // namespace detail

}  // namespace ppr::kernels
