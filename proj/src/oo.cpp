#include "boostmg/oo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace boostmg {

int compute_n(double confidence, double alpha) {
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("compute_n: confidence must be in (0,1)");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("compute_n: alpha must be in (0,1)");
  const double ratio = std::log1p(-confidence) / std::log1p(-alpha);
  return static_cast<int>(std::ceil(ratio - 1e-12));
}

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double alignment_probability(int n, int g, int s, int k) {
  if (g < 1 || s < 1 || g > n || s > n)
    throw std::invalid_argument("alignment_probability: need 1 <= g,s <= n");
  if (k < 1 || k > std::min(g, s))
    throw std::invalid_argument("alignment_probability: need 1 <= k <= min(g,s)");
  const double log_total = log_choose(n, s);
  double p = 0.0;
  for (int i = k; i <= std::min(g, s); ++i) {
    if (s - i > n - g) continue;  // not enough non-good items
    p += std::exp(log_choose(g, i) + log_choose(n - g, s - i) - log_total);
  }
  return std::min(p, 1.0);
}

int compute_s(int n, int g, int k, double target) {
  if (!(target > 0.0) || !(target < 1.0))
    throw std::invalid_argument("compute_s: target must be in (0,1)");
  if (k < 1 || k > g)
    throw std::invalid_argument("compute_s: need 1 <= k <= g");
  for (int s = k; s <= n; ++s) {
    if (alignment_probability(n, g, s, k) >= target) return s;
  }
  throw std::runtime_error("compute_s: no s <= N reaches the alignment target");
}

std::vector<Design> sample_designs(int n, const DesignBounds& bounds,
                                   SamplingStrategy strategy,
                                   std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_designs: N must be >= 1");
  if (bounds.battery_min_kwh > bounds.battery_max_kwh ||
      bounds.pv_min_kw > bounds.pv_max_kw)
    throw std::invalid_argument("sample_designs: degenerate bounds (min > max)");
  if (bounds.battery_min_kwh < 0.0 || bounds.pv_min_kw < 0.0)
    throw std::invalid_argument("sample_designs: negative bounds");

  std::vector<Design> out;
  out.reserve(n);
  if (strategy == SamplingStrategy::kGrid) {
    const bool eb_flat = bounds.battery_max_kwh == bounds.battery_min_kwh;
    const bool pv_flat = bounds.pv_max_kw == bounds.pv_min_kw;
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (pv_flat) cols = 1;
    int rows = (n + cols - 1) / cols;
    if (eb_flat) {
      rows = 1;
      cols = n;
    }
    if (static_cast<long>(rows) * cols < n ||
        (eb_flat && pv_flat && n > 1))
      throw std::invalid_argument("sample_designs: bounds too tight for N distinct designs");
    if ((rows > 1 && eb_flat) || (cols > 1 && pv_flat))
      throw std::invalid_argument("sample_designs: bounds too tight for N distinct designs");
    for (int i = 0; i < rows && static_cast<int>(out.size()) < n; ++i) {
      const double eb =
          rows == 1 ? bounds.battery_min_kwh
                    : bounds.battery_min_kwh +
                          (bounds.battery_max_kwh - bounds.battery_min_kwh) * i /
                              (rows - 1);
      for (int j = 0; j < cols && static_cast<int>(out.size()) < n; ++j) {
        const double pv =
            cols == 1 ? bounds.pv_min_kw
                      : bounds.pv_min_kw +
                            (bounds.pv_max_kw - bounds.pv_min_kw) * j / (cols - 1);
        out.push_back({eb, pv});
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
      return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    std::set<std::pair<double, double>> seen;
    int guard = 0;
    while (static_cast<int>(out.size()) < n) {
      if (++guard > 1000 * n)
        throw std::runtime_error("sample_designs: cannot draw N distinct designs");
      Design d{bounds.battery_min_kwh +
                   (bounds.battery_max_kwh - bounds.battery_min_kwh) * unit(),
               bounds.pv_min_kw + (bounds.pv_max_kw - bounds.pv_min_kw) * unit()};
      if (seen.insert({d.battery_kwh, d.pv_kw}).second) out.push_back(d);
    }
  }
  return out;
}

double spearman_rho(const std::vector<int>& rank_a,
                    const std::vector<int>& rank_b) {
  const std::size_t n = rank_a.size();
  if (n != rank_b.size() || n < 2)
    throw std::invalid_argument("spearman_rho: need two rank vectors, length >= 2");
  double sum_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rank_a[i] - rank_b[i];
    sum_d2 += d * d;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
}

double kendall_tau(const std::vector<int>& rank_a, const std::vector<int>& rank_b) {
  const std::size_t n = rank_a.size();
  if (n != rank_b.size() || n < 2)
    throw std::invalid_argument("kendall_tau: need two rank vectors, length >= 2");
  long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int a = rank_a[i] - rank_a[j];
      const int b = rank_b[i] - rank_b[j];
      const long s = static_cast<long>(a) * b;
      if (s > 0) ++concordant;
      else if (s < 0) ++discordant;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * (n - 1);
  return (concordant - discordant) / pairs;
}

}  // namespace boostmg
