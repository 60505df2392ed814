#include "boostmg/branch_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace boostmg {

namespace {

constexpr double kHuge = std::numeric_limits<double>::infinity();

struct Node {
  double bound;
  long id;
  std::vector<std::pair<int, std::uint8_t>> fixes;  // (var, value)
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id < b.id;  // equal bounds: prefer the newest node
  }
};

void apply_fixes(const std::vector<std::pair<int, std::uint8_t>>& fixes,
                 std::vector<double>& lb, std::vector<double>& ub) {
  for (auto [v, val] : fixes) {
    const double x = static_cast<double>(val);
    lb[v] = std::max(lb[v], x);
    ub[v] = std::min(ub[v], x);
  }
}

// objective degradation per unit of locked fraction, averaged over observations
struct PseudoCost {
  double down_sum = 0.0;
  double up_sum = 0.0;
  int down_n = 0;
  int up_n = 0;
};

}  // namespace

SolveReport solve_milp(const StandardFormModel& m, const MilpOptions& opt,
                       const Basis* root_hint) {
  const auto t0 = std::chrono::steady_clock::now();
  m.validate();

  std::vector<int> ivars;
  for (int j = 0; j < m.num_vars(); ++j)
    if (m.is_integer[j]) ivars.push_back(j);

  if (ivars.empty()) {
    SolveReport rep = solve_lp(m, opt.lp, root_hint);
    rep.nodes = 1;
    if (rep.status == SolveStatus::kOptimal)
      rep.incumbent_history.push_back(rep.objective);
    return rep;
  }

  SolveReport out;
  out.nodes = 0;
  out.iterations = 0;

  // root-level bounds; reduced-cost fixing tightens these in place
  std::vector<double> rlb = m.lower;
  std::vector<double> rub = m.upper;

  SolveReport root = solve_lp_bounded(m, rlb, rub, opt.lp, root_hint);
  out.iterations += root.iterations;
  if (root.status != SolveStatus::kOptimal) {
    out.status = root.status;
    out.x = root.x;
    out.nodes = 1;
    return out;
  }

  double inc_obj = kHuge;
  std::vector<double> inc_x;

  std::vector<double> wlb(m.num_vars()), wub(m.num_vars());

  // Solve with every binary pinned to its rounded value in `x`; on success
  // this yields an exactly-priced feasible incumbent candidate.
  auto try_fixed_incumbent =
      [&](const std::vector<double>& x,
          const std::vector<std::pair<int, std::uint8_t>>& fixes) -> bool {
    std::vector<double> flb = rlb;
    std::vector<double> fub = rub;
    apply_fixes(fixes, flb, fub);
    for (int v : ivars) {
      const double val = x[v] >= 0.5 ? 1.0 : 0.0;
      if (val < flb[v] - 0.5 || val > fub[v] + 0.5) return false;
      flb[v] = val;
      fub[v] = val;
    }
    SolveReport r = solve_lp_bounded(m, flb, fub, opt.lp, root_hint);
    out.iterations += r.iterations;
    if (r.status != SolveStatus::kOptimal) return false;
    if (r.objective < inc_obj) {
      inc_obj = r.objective;
      inc_x = r.x;
      out.incumbent_history.push_back(inc_obj);
    }
    return true;
  };

  // rounding heuristics off the root relaxation: nearest rounding, then
  // committing wherever the relaxation used a binary at all
  {
    std::vector<double> nearest = root.x;
    for (int v : ivars) nearest[v] = nearest[v] >= 0.5 ? 1.0 : 0.0;
    try_fixed_incumbent(nearest, {});
    std::vector<double> up = root.x;
    bool differs = false;
    for (int v : ivars) {
      up[v] = up[v] > opt.integrality_tol ? 1.0 : 0.0;
      differs = differs || up[v] != nearest[v];
    }
    if (differs) try_fixed_incumbent(up, {});
  }

  // reduced-cost fixing at the root
  if (std::isfinite(inc_obj) && !root.reduced_costs.empty()) {
    const double margin = inc_obj - root.objective;
    const double eps = 1e-7 * (1.0 + std::fabs(inc_obj));
    for (int v : ivars) {
      if (rlb[v] == rub[v]) continue;
      const double d = root.reduced_costs[v];
      const double x = root.x[v];
      if (x <= opt.integrality_tol && d > margin + eps) {
        rub[v] = 0.0;  // raising v to 1 cannot beat the incumbent
      } else if (x >= 1.0 - opt.integrality_tol && -d > margin + eps) {
        rlb[v] = 1.0;
      }
    }
  }

  std::vector<PseudoCost> pcost(m.num_vars());
  std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;
  long next_id = 0;
  heap.push(Node{root.objective, next_id++, {}});

  auto prune_eps = [&]() {
    return std::max(1e-9, opt.relative_gap * std::fabs(inc_obj));
  };

  bool hit_node_limit = false;
  bool have_current = false;
  Node current;
  while (true) {
    Node node;
    if (have_current) {
      node = std::move(current);
      have_current = false;
    } else if (!heap.empty()) {
      node = heap.top();
      heap.pop();
    } else {
      break;
    }
    if (std::isfinite(inc_obj) && node.bound >= inc_obj - prune_eps()) continue;
    if (out.nodes >= opt.max_nodes) {
      hit_node_limit = true;
      break;
    }
    ++out.nodes;

    wlb = rlb;
    wub = rub;
    apply_fixes(node.fixes, wlb, wub);
    const bool is_root = node.fixes.empty();
    SolveReport rel =
        is_root ? root : solve_lp_bounded(m, wlb, wub, opt.lp, root_hint);
    if (!is_root) out.iterations += rel.iterations;

    if (rel.status == SolveStatus::kInfeasible) continue;
    if (rel.status != SolveStatus::kOptimal) {
      out.status = rel.status;
      out.x = inc_x;
      out.objective = inc_obj;
      return out;
    }
    if (std::isfinite(inc_obj) && rel.objective >= inc_obj - prune_eps())
      continue;

    // fractional candidates, most fractional first
    std::vector<int> fractional;
    for (int v : ivars) {
      if (wlb[v] == wub[v]) continue;
      const double f = rel.x[v];
      if (std::min(f, 1.0 - f) > opt.integrality_tol) fractional.push_back(v);
    }
    if (fractional.empty()) {
      if (try_fixed_incumbent(rel.x, node.fixes)) continue;
      // exact re-pricing failed on a tolerance edge: force a dichotomy on
      // the least integral binary that is still free
      int force = -1;
      double dist_best = -1.0;
      for (int v : ivars) {
        if (wlb[v] == wub[v]) continue;
        const double dist = std::min(rel.x[v], 1.0 - rel.x[v]);
        if (dist > dist_best) {
          dist_best = dist;
          force = v;
        }
      }
      if (force < 0) continue;  // everything pinned; nothing to do
      fractional.push_back(force);
    }
    std::sort(fractional.begin(), fractional.end(), [&](int a, int b) {
      const double da = std::min(rel.x[a], 1.0 - rel.x[a]);
      const double db = std::min(rel.x[b], 1.0 - rel.x[b]);
      if (da != db) return da > db;
      return a < b;
    });

    // evaluate a child LP with one extra fix; bounds are restored after
    auto solve_child = [&](int v, std::uint8_t val) {
      const double olb = wlb[v], oub = wub[v];
      wlb[v] = val;
      wub[v] = val;
      SolveReport r = solve_lp_bounded(m, wlb, wub, opt.lp, root_hint);
      wlb[v] = olb;
      wub[v] = oub;
      out.iterations += r.iterations;
      return r;
    };
    auto integral_point = [&](const std::vector<double>& x) {
      for (int v : ivars) {
        const double f = x[v];
        if (std::min(f, 1.0 - f) > opt.integrality_tol) return false;
      }
      return true;
    };

    // reliability branching: strong evaluation until a variable has
    // pseudo-cost history, estimates afterwards
    int strong_budget = 4;
    int branch_var = -1;
    double best_score = -1.0;
    double chosen_down = kHuge, chosen_up = kHuge;
    bool chosen_exact = false;
    for (int v : fractional) {
      const double f = rel.x[v];
      PseudoCost& pc = pcost[v];
      double gain_down, gain_up;
      bool exact = false;
      double bound_down = 0.0, bound_up = 0.0;
      if ((pc.down_n == 0 || pc.up_n == 0) && strong_budget > 0) {
        --strong_budget;
        exact = true;
        const SolveReport r0 = solve_child(v, 0);
        const SolveReport r1 = solve_child(v, 1);
        bound_down = r0.status == SolveStatus::kOptimal ? r0.objective : kHuge;
        bound_up = r1.status == SolveStatus::kOptimal ? r1.objective : kHuge;
        gain_down = std::max(0.0, bound_down - rel.objective);
        gain_up = std::max(0.0, bound_up - rel.objective);
        if (std::isfinite(bound_down)) {
          pc.down_sum += gain_down / std::max(f, 1e-6);
          pc.down_n += 1;
          if (integral_point(r0.x)) {
            auto fixes = node.fixes;
            fixes.emplace_back(v, std::uint8_t{0});
            try_fixed_incumbent(r0.x, fixes);
          }
        }
        if (std::isfinite(bound_up)) {
          pc.up_sum += gain_up / std::max(1.0 - f, 1e-6);
          pc.up_n += 1;
          if (integral_point(r1.x)) {
            auto fixes = node.fixes;
            fixes.emplace_back(v, std::uint8_t{1});
            try_fixed_incumbent(r1.x, fixes);
          }
        }
      } else if (pc.down_n > 0 && pc.up_n > 0) {
        gain_down = pc.down_sum / pc.down_n * f;
        gain_up = pc.up_sum / pc.up_n * (1.0 - f);
      } else {
        gain_down = f;
        gain_up = 1.0 - f;
      }
      const double score =
          std::max(gain_down, 1e-12) * std::max(gain_up, 1e-12);
      if (score > best_score) {
        best_score = score;
        branch_var = v;
        chosen_exact = exact;
        chosen_down = exact ? bound_down : rel.objective;
        chosen_up = exact ? bound_up : rel.objective;
      }
    }
    if (branch_var < 0) continue;

    const double down_bound = std::max(rel.objective, chosen_down);
    const double up_bound = std::max(rel.objective, chosen_up);
    // dive toward the more promising side; exact bounds decide when known
    std::uint8_t toward;
    if (chosen_exact && down_bound != up_bound) {
      toward = up_bound < down_bound ? 1 : 0;
    } else {
      toward = rel.x[branch_var] >= 0.5 ? 1 : 0;
    }
    const double toward_bound = toward == 1 ? up_bound : down_bound;
    const double away_bound = toward == 1 ? down_bound : up_bound;
    if (std::isfinite(away_bound)) {
      Node away;
      away.bound = away_bound;
      away.id = next_id++;
      away.fixes = node.fixes;
      away.fixes.emplace_back(branch_var, static_cast<std::uint8_t>(1 - toward));
      heap.push(std::move(away));
    }
    if (std::isfinite(toward_bound)) {
      current.bound = toward_bound;
      current.id = next_id++;
      current.fixes = std::move(node.fixes);
      current.fixes.emplace_back(branch_var, toward);
      have_current = true;
    }
  }

  if (hit_node_limit) {
    out.status = SolveStatus::kNodeLimit;
  } else {
    out.status = std::isfinite(inc_obj) ? SolveStatus::kOptimal
                                        : SolveStatus::kInfeasible;
  }
  out.objective = inc_obj;
  out.x = inc_x;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace boostmg
