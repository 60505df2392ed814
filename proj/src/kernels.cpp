#include "boostmg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace boostmg::kern {

namespace {

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

constexpr Ops kScalarOps{axpy_scalar, dot_scalar, scale_scalar, "scalar"};

std::atomic<const Ops*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::kScalar};

const Ops* pick_default() {
  const char* env = std::getenv("BOOSTMG_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return &kScalarOps;
    if (std::strcmp(env, "avx2") == 0 && avx2_ops() != nullptr) return avx2_ops();
    // unknown value or unsupported request: fall through to auto
  }
  if (const Ops* v = avx2_ops()) return v;
  return &kScalarOps;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

bool avx2_supported() { return avx2_ops() != nullptr; }

const Ops& ops() {
  const Ops* p = g_active.load(std::memory_order_acquire);
  if (p == nullptr) {
    p = pick_default();
    g_active.store(p, std::memory_order_release);
    g_backend.store(p == &kScalarOps ? Backend::kScalar : Backend::kAvx2,
                    std::memory_order_release);
  }
  return *p;
}

Backend active_backend() {
  ops();
  return g_backend.load(std::memory_order_acquire);
}

const char* active_backend_name() { return ops().name; }

void force_backend(Backend b) {
  if (b == Backend::kScalar) {
    g_active.store(&kScalarOps, std::memory_order_release);
    g_backend.store(Backend::kScalar, std::memory_order_release);
    return;
  }
  const Ops* v = avx2_ops();
  if (v == nullptr) throw std::runtime_error("avx2 kernels not supported on this CPU");
  g_active.store(v, std::memory_order_release);
  g_backend.store(Backend::kAvx2, std::memory_order_release);
}

}  // namespace boostmg::kern
