#pragma once

// Dense vector kernels used by the simplex inner loops (basis-inverse
// column updates, pricing). A scalar reference implementation always
// exists; an AVX2+FMA variant is selected at runtime when the CPU
// supports it. The two are equivalence-tested against each other.

#include <cstddef>

namespace boostmg::kern {

enum class Backend { kScalar, kAvx2 };

struct Ops {
  // y += a * x
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // x *= a
  void (*scale)(double* x, double a, std::size_t n);
  const char* name;
};

// Active kernel set. Selection happens once, on first use:
// AVX2+FMA when available, unless overridden by force_backend() or the
// BOOSTMG_KERNELS environment variable ("scalar" or "avx2").
const Ops& ops();

Backend active_backend();
const char* active_backend_name();

// Test hook; throws std::runtime_error if the backend is unsupported here.
void force_backend(Backend b);

bool avx2_supported();

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unsupported

}  // namespace boostmg::kern
