// Built with -mavx2 -mfma. Nothing here may run unless the CPU reports both.

#include <immintrin.h>

#include "ppr/kernels.hpp"

namespace ppr::kernels {
namespace {

inline const double* dp(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (re, im) of the two complex lanes summed together.
inline __m128d csum(__m256d v) {
  return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

// [y0, y0, y1, y1]
inline __m256d dup2(const double* y) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(y)), 0x50);
}

// [|u0|^2, |u0|^2, |u1|^2, |u1|^2]
inline __m256d abs2(__m256d u) {
  const __m256d sq = _mm256_mul_pd(u, u);
  return _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
}

void matvec(const cd* a, std::size_t rows, std::size_t cols, const cd* x, cd* y) {
  const double* xd = dp(x);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = dp(a + i * cols);
    __m256d p0 = _mm256_setzero_pd(), q0 = _mm256_setzero_pd();
    __m256d p1 = _mm256_setzero_pd(), q1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      const __m256d a0 = _mm256_loadu_pd(row + 2 * j), a1 = _mm256_loadu_pd(row + 2 * j + 4);
      const __m256d x0 = _mm256_loadu_pd(xd + 2 * j), x1 = _mm256_loadu_pd(xd + 2 * j + 4);
      p0 = _mm256_fmadd_pd(_mm256_movedup_pd(a0), x0, p0);
      q0 = _mm256_fmadd_pd(_mm256_permute_pd(a0, 0xF), _mm256_permute_pd(x0, 0x5), q0);
      p1 = _mm256_fmadd_pd(_mm256_movedup_pd(a1), x1, p1);
      q1 = _mm256_fmadd_pd(_mm256_permute_pd(a1, 0xF), _mm256_permute_pd(x1, 0x5), q1);
    }
    for (; j + 2 <= cols; j += 2) {
      const __m256d a0 = _mm256_loadu_pd(row + 2 * j);
      const __m256d x0 = _mm256_loadu_pd(xd + 2 * j);
      p0 = _mm256_fmadd_pd(_mm256_movedup_pd(a0), x0, p0);
      q0 = _mm256_fmadd_pd(_mm256_permute_pd(a0, 0xF), _mm256_permute_pd(x0, 0x5), q0);
    }
    const __m256d s = _mm256_addsub_pd(_mm256_add_pd(p0, p1), _mm256_add_pd(q0, q1));
    const __m128d r = csum(s);
    cd acc(_mm_cvtsd_f64(r), _mm_cvtsd_f64(_mm_unpackhi_pd(r, r)));
    for (; j < cols; ++j) acc += a[i * cols + j] * x[j];
    y[i] = acc;
  }
}

void matvec_adjoint(const cd* a, std::size_t rows, std::size_t cols, const cd* r, cd* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = cd(0.0);
  double* od = dp(out);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = dp(a + i * cols);
    const __m256d rr = _mm256_set1_pd(r[i].real());
    const __m256d ri = _mm256_set1_pd(r[i].imag());
    std::size_t j = 0;
    for (; j + 2 <= cols; j += 2) {
      const __m256d av = _mm256_loadu_pd(row + 2 * j);
      // conj(a) * r: even lanes rr*ar + ri*ai, odd lanes ri*ar - rr*ai
      const __m256d t = _mm256_fmsubadd_pd(ri, _mm256_permute_pd(av, 0x5), _mm256_mul_pd(rr, av));
      _mm256_storeu_pd(od + 2 * j, _mm256_add_pd(_mm256_loadu_pd(od + 2 * j), t));
    }
    for (; j < cols; ++j) out[j] += std::conj(a[i * cols + j]) * r[i];
  }
}

double intensity_residual(const cd* u, const double* y, std::size_t n, cd* w) {
  const double* ud = dp(u);
  double* wd = dp(w);
  __m256d loss = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d uv = _mm256_loadu_pd(ud + 2 * i);
    const __m256d a = _mm256_sub_pd(abs2(uv), dup2(y + i));
    _mm256_storeu_pd(wd + 2 * i, _mm256_mul_pd(a, uv));
    loss = _mm256_fmadd_pd(a, a, loss);
  }
  double total = 0.5 * hsum(loss);  // every residual appears twice
  for (; i < n; ++i) {
    const double a = std::norm(u[i]) - y[i];
    w[i] = a * u[i];
    total += a * a;
  }
  return 0.5 * total;
}

void step_polynomial(const cd* u, const cd* v, const double* y, std::size_t n, double* q) {
  const double* ud = dp(u);
  const double* vd = dp(v);
  const __m256d m2 = _mm256_set1_pd(-2.0);
  __m256d scc = _mm256_setzero_pd(), sbc = _mm256_setzero_pd(), sq2 = _mm256_setzero_pd();
  __m256d sab = _mm256_setzero_pd(), saa = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d uv = _mm256_loadu_pd(ud + 2 * i);
    const __m256d vv = _mm256_loadu_pd(vd + 2 * i);
    const __m256d a = _mm256_sub_pd(abs2(uv), dup2(y + i));
    const __m256d prod = _mm256_mul_pd(uv, vv);
    const __m256d b = _mm256_mul_pd(m2, _mm256_add_pd(prod, _mm256_permute_pd(prod, 0x5)));
    const __m256d c = abs2(vv);
    scc = _mm256_fmadd_pd(c, c, scc);
    sbc = _mm256_fmadd_pd(b, c, sbc);
    sq2 = _mm256_fmadd_pd(b, b, sq2);
    sq2 = _mm256_fmadd_pd(_mm256_add_pd(a, a), c, sq2);
    sab = _mm256_fmadd_pd(a, b, sab);
    saa = _mm256_fmadd_pd(a, a, saa);
  }
  double tcc = 0.5 * hsum(scc), tbc = 0.5 * hsum(sbc), tq2 = 0.5 * hsum(sq2);
  double tab = 0.5 * hsum(sab), taa = 0.5 * hsum(saa);
  for (; i < n; ++i) {
    const double a = std::norm(u[i]) - y[i];
    const double b = -2.0 * (u[i].real() * v[i].real() + u[i].imag() * v[i].imag());
    const double c = std::norm(v[i]);
    tcc += c * c;
    tbc += b * c;
    tq2 += b * b + 2.0 * a * c;
    tab += a * b;
    taa += a * a;
  }
  q[0] = 0.5 * taa;
  q[1] = tab;
  q[2] = 0.5 * tq2;
  q[3] = tbc;
  q[4] = 0.5 * tcc;
}

void row_inner_real(const cd* w, const cd* a, std::size_t rows, std::size_t cols, double* out) {
  const std::size_t len = 2 * cols;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* wr = dp(w + i * cols);
    const double* ar = dp(a + i * cols);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= len; k += 8) {
      acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(wr + k), _mm256_loadu_pd(ar + k), acc0);
      acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(wr + k + 4), _mm256_loadu_pd(ar + k + 4), acc1);
    }
    for (; k + 4 <= len; k += 4)
      acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(wr + k), _mm256_loadu_pd(ar + k), acc0);
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < len; ++k) total += wr[k] * ar[k];
    out[i] = total;
  }
}

}  // namespace

namespace detail {
const Table avx2_table{matvec, matvec_adjoint, intensity_residual, step_polynomial, row_inner_real};
}

}  // namespace ppr::kernels
