#pragma once

// Ordinal-optimization plan arithmetic: phase-1 sample count from the
// top-percentile coverage bound, the hypergeometric alignment probability,
// the minimal phase-2 subset size meeting an alignment target, design
// sampling, and rank diagnostics.

#include <cstdint>
#include <vector>

#include "boostmg/dispatch.hpp"

namespace boostmg {

// Smallest N with at least one of N uniform draws inside the top-alpha
// fraction with probability >= P: ceil(ln(1-P)/ln(1-alpha)).
int compute_n(double confidence, double alpha);

// Prob(|G ∩ S| >= k) for a uniformly random size-s subset S of N items of
// which g are good; evaluated in log space.
double alignment_probability(int n, int g, int s, int k);

// Smallest s with alignment_probability(n, g, s, k) >= target.
int compute_s(int n, int g, int k, double target);

enum class SamplingStrategy { kGrid, kUniformRandom };

struct DesignBounds {
  double battery_min_kwh = 0.0;
  double battery_max_kwh = 0.0;
  double pv_min_kw = 0.0;
  double pv_max_kw = 0.0;
};

// N distinct designs. Grid strategy lays a near-square lattice over the
// rectangle (endpoints included); uniform-random is seeded and reproducible.
std::vector<Design> sample_designs(int n, const DesignBounds& bounds,
                                   SamplingStrategy strategy,
                                   std::uint64_t seed);

// Rank-correlation helpers over two rank vectors (permutations of 1..n).
double spearman_rho(const std::vector<int>& rank_a, const std::vector<int>& rank_b);
double kendall_tau(const std::vector<int>& rank_a, const std::vector<int>& rank_b);

}  // namespace boostmg
