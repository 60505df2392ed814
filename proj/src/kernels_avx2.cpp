#include "boostmg/kernels.hpp"

// AVX2+FMA kernel variants. Compiled with per-function target attributes so
// the translation unit stays loadable on any x86-64; dispatch happens in
// kernels.cpp via __builtin_cpu_supports.

#if defined(__x86_64__) || defined(__i386__)
#define BOOSTMG_X86 1
#include <immintrin.h>
#else
#define BOOSTMG_X86 0
#endif

namespace boostmg::kern {

#if BOOSTMG_X86

namespace {

__attribute__((target("avx2,fma")))
void axpy_avx2(double* y, double a, const double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    y0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), y0);
    _mm256_storeu_pd(y + i, y0);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma")))
double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

__attribute__((target("avx2,fma")))
void scale_avx2(double* x, double a, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

constexpr Ops kAvx2Ops{axpy_avx2, dot_avx2, scale_avx2, "avx2"};

}  // namespace

const Ops* avx2_ops() {
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &kAvx2Ops : nullptr;
}

#else

const Ops* avx2_ops() { return nullptr; }

#endif  // BOOSTMG_X86

}  // namespace boostmg::kern
