#include "boostmg/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "boostmg/kernels.hpp"

namespace boostmg {

namespace {

enum VStat : std::int8_t { kBasic = -1, kAtLower = 0, kAtUpper = 1 };

enum class LoopResult { kOptimal, kUnbounded, kIterLimit };

class Simplex {
 public:
  Simplex(const StandardFormModel& model, const std::vector<double>& lower,
          const std::vector<double>& upper, const SimplexOptions& opt)
      : model_(model),
        opt_(opt),
        n_(model.num_vars()),
        rows_(model.num_rows()),
        total_(n_ + rows_) {
    lb_.assign(total_, 0.0);
    ub_.assign(total_, kInf);
    std::copy(lower.begin(), lower.end(), lb_.begin());
    std::copy(upper.begin(), upper.end(), ub_.begin());
    cost_.assign(total_, 0.0);
    art_sign_.assign(rows_, 1.0);
    stat_.assign(total_, kAtLower);
    basic_.assign(rows_, -1);
    binv_.assign(static_cast<std::size_t>(rows_) * rows_, 0.0);
    xb_.assign(rows_, 0.0);
    d_.assign(total_, 0.0);
    alpha_.assign(rows_, 0.0);
    rho_.assign(rows_, 0.0);
    work_.assign(rows_, 0.0);
    rhs_scale_ = 1.0;
    for (double b : model_.rhs) rhs_scale_ = std::max(rhs_scale_, std::fabs(b));
  }

  SolveReport run(const Basis* warm, Basis* basis_out) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    bool proceed = true;
    if (warm != nullptr && init_from_warm(*warm)) {
      fix_artificials();
    } else {
      init_artificial();
      proceed = run_phase1(rep);
    }
    if (proceed) run_phase2(rep);
    assemble(rep);
    if (basis_out != nullptr) basis_out->basic = basic_;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
  }

 private:
  // --- data layout -------------------------------------------------------
  // Variables 0..n_-1 are structural, n_..n_+rows_-1 are artificials whose
  // column is art_sign_[k] * e_k. binv_ is column-major rows_ x rows_.

  const StandardFormModel& model_;
  SimplexOptions opt_;
  int n_;
  int rows_;
  int total_;
  std::vector<double> lb_, ub_, cost_;
  std::vector<double> art_sign_;
  std::vector<std::int8_t> stat_;
  std::vector<int> basic_;
  std::vector<double> binv_, xb_, d_, alpha_, rho_, work_;
  double rhs_scale_ = 1.0;
  long iters_ = 0;
  int stall_ = 0;
  bool bland_ = false;
  bool phase1_ = false;

  double* bcol(int c) { return binv_.data() + static_cast<std::size_t>(c) * rows_; }

  double nonbasic_value(int j) const {
    return stat_[j] == kAtUpper ? ub_[j] : lb_[j];
  }

  bool fixed(int j) const { return lb_[j] == ub_[j]; }

  // alpha_ = Binv * A_j
  void ftran(int j) {
    std::fill(alpha_.begin(), alpha_.end(), 0.0);
    if (j < n_) {
      for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k) {
        kern::ops().axpy(alpha_.data(), model_.cols.value[k],
                         bcol(model_.cols.index[k]), rows_);
      }
    } else {
      const int r = j - n_;
      kern::ops().axpy(alpha_.data(), art_sign_[r], bcol(r), rows_);
    }
  }

  // rho^T A_j for the current rho_
  double row_dot_col(int j) const {
    if (j < n_) {
      double s = 0.0;
      for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
        s += model_.cols.value[k] * rho_[model_.cols.index[k]];
      return s;
    }
    return art_sign_[j - n_] * rho_[j - n_];
  }

  void fill_rho(int r) {
    const double* b = binv_.data();
    for (int c = 0; c < rows_; ++c)
      rho_[c] = b[static_cast<std::size_t>(c) * rows_ + r];
  }

  void compute_xb() {
    work_ = model_.rhs;
    for (int j = 0; j < n_; ++j) {
      if (stat_[j] == kBasic) continue;
      const double v = nonbasic_value(j);
      if (v == 0.0) continue;
      for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
        work_[model_.cols.index[k]] -= v * model_.cols.value[k];
    }
    std::fill(xb_.begin(), xb_.end(), 0.0);
    for (int k = 0; k < rows_; ++k) {
      if (work_[k] != 0.0) kern::ops().axpy(xb_.data(), work_[k], bcol(k), rows_);
    }
  }

  void compute_d() {
    // y = Binv^T c_B, then d_j = c_j - y . A_j
    for (int k = 0; k < rows_; ++k) work_[k] = cost_[basic_[k]];
    std::vector<double>& y = rho_;  // reuse scratch
    for (int c = 0; c < rows_; ++c)
      y[c] = kern::ops().dot(work_.data(), bcol(c), rows_);
    for (int j = 0; j < total_; ++j) {
      if (stat_[j] == kBasic) {
        d_[j] = 0.0;
        continue;
      }
      double s = cost_[j];
      if (j < n_) {
        for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
          s -= model_.cols.value[k] * y[model_.cols.index[k]];
      } else {
        s -= art_sign_[j - n_] * y[j - n_];
      }
      d_[j] = s;
    }
  }

  // --- initialization ----------------------------------------------------

  void place_nonbasic(int j) {
    if (std::isfinite(lb_[j])) {
      stat_[j] = kAtLower;
    } else {
      stat_[j] = kAtUpper;
    }
  }

  void init_artificial() {
    for (int j = 0; j < n_; ++j) place_nonbasic(j);
    work_ = model_.rhs;
    for (int j = 0; j < n_; ++j) {
      const double v = nonbasic_value(j);
      if (v == 0.0) continue;
      for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
        work_[model_.cols.index[k]] -= v * model_.cols.value[k];
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (int r = 0; r < rows_; ++r) {
      art_sign_[r] = work_[r] >= 0.0 ? 1.0 : -1.0;
      lb_[n_ + r] = 0.0;
      ub_[n_ + r] = kInf;
      basic_[r] = n_ + r;
      stat_[n_ + r] = kBasic;
      xb_[r] = std::fabs(work_[r]);
      bcol(r)[r] = art_sign_[r];
    }
  }

  bool init_from_warm(const Basis& warm) {
    if (static_cast<int>(warm.basic.size()) != rows_) return false;
    std::vector<std::int8_t> seen(n_, 0);
    for (int j : warm.basic) {
      if (j < 0 || j >= n_ || seen[j]) return false;
      seen[j] = 1;
    }
    // Triangular peel: repeatedly take a row covered by exactly one
    // unassigned basic column.
    std::vector<std::vector<int>> row_cols(rows_);
    for (int j : warm.basic)
      for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
        row_cols[model_.cols.index[k]].push_back(j);
    std::vector<int> deg(rows_);
    std::vector<std::int8_t> col_done(n_, 0), row_done(rows_, 0);
    std::vector<int> stack;
    for (int r = 0; r < rows_; ++r) {
      deg[r] = static_cast<int>(row_cols[r].size());
      if (deg[r] == 1) stack.push_back(r);
    }
    std::vector<std::pair<int, int>> order;  // (row, col) in peel order
    order.reserve(rows_);
    while (!stack.empty()) {
      const int r = stack.back();
      stack.pop_back();
      if (row_done[r] || deg[r] != 1) continue;
      int c = -1;
      for (int j : row_cols[r])
        if (!col_done[j]) c = j;
      if (c < 0) return false;
      row_done[r] = 1;
      col_done[c] = 1;
      order.push_back({r, c});
      for (int k = model_.cols.starts[c]; k < model_.cols.starts[c + 1]; ++k) {
        const int rr = model_.cols.index[k];
        if (row_done[rr]) continue;
        if (--deg[rr] == 1) stack.push_back(rr);
      }
    }
    if (static_cast<int>(order.size()) != rows_) return false;
    // diag entries
    std::vector<double> diag(rows_, 0.0);
    for (auto [r, c] : order) {
      basic_[r] = c;
      for (int k = model_.cols.starts[c]; k < model_.cols.starts[c + 1]; ++k)
        if (model_.cols.index[k] == r) diag[r] = model_.cols.value[k];
      if (std::fabs(diag[r]) < opt_.pivot_tol) return false;
    }
    // Binv columns by forward substitution in peel order.
    std::fill(binv_.begin(), binv_.end(), 0.0);
    std::vector<double> resid(rows_);
    for (int t = 0; t < rows_; ++t) {
      std::fill(resid.begin(), resid.end(), 0.0);
      resid[t] = 1.0;
      double* col = bcol(t);
      for (auto [r, c] : order) {
        const double xv = resid[r] / diag[r];
        if (xv == 0.0) continue;
        col[r] = xv;
        for (int k = model_.cols.starts[c]; k < model_.cols.starts[c + 1]; ++k)
          resid[model_.cols.index[k]] -= model_.cols.value[k] * xv;
      }
    }
    for (int j = 0; j < n_; ++j) {
      if (seen[j]) {
        stat_[j] = kBasic;
      } else {
        place_nonbasic(j);
      }
    }
    compute_xb();
    for (int r = 0; r < rows_; ++r) {
      const int j = basic_[r];
      if (xb_[r] < lb_[j] - opt_.feas_tol || xb_[r] > ub_[j] + opt_.feas_tol)
        return false;
    }
    return true;
  }

  void fix_artificials() {
    for (int r = 0; r < rows_; ++r) {
      const int j = n_ + r;
      lb_[j] = 0.0;
      ub_[j] = 0.0;
      cost_[j] = 0.0;
      if (stat_[j] != kBasic) stat_[j] = kAtLower;
    }
  }

  // --- main loop ---------------------------------------------------------

  bool price(int& q) {
    q = -1;
    double best = opt_.opt_tol;
    for (int j = 0; j < total_; ++j) {
      if (stat_[j] == kBasic || fixed(j)) continue;
      const double viol = stat_[j] == kAtLower ? -d_[j] : d_[j];
      if (viol <= opt_.opt_tol) continue;
      if (bland_) {
        q = j;
        return true;
      }
      if (viol > best) {
        best = viol;
        q = j;
      }
    }
    return q >= 0;
  }

  void update_binv(int r, double ap) {
    const double inv_ap = 1.0 / ap;
    const double* a = alpha_.data();
    for (int c = 0; c < rows_; ++c) {
      double* col = bcol(c);
      const double g = col[r];
      if (g == 0.0) continue;
      const double f = g * inv_ap;
      kern::ops().axpy(col, -f, a, rows_);
      col[r] = f;
    }
  }

  void pivot(int q, int r, std::int8_t leave_stat, double t, int dir) {
    const int p = basic_[r];
    const double ap = alpha_[r];
    const double entering_value = nonbasic_value(q) + dir * t;
    if (t != 0.0) kern::ops().axpy(xb_.data(), -dir * t, alpha_.data(), rows_);
    xb_[r] = entering_value;
    // reduced-cost update needs the pre-update row r of Binv
    fill_rho(r);
    const double mult = d_[q] / ap;
    if (mult != 0.0) {
      for (int j = 0; j < total_; ++j) {
        if (stat_[j] == kBasic) continue;
        d_[j] -= mult * row_dot_col(j);
      }
    }
    stat_[p] = leave_stat;
    stat_[q] = kBasic;
    basic_[r] = q;
    d_[q] = 0.0;
    d_[p] = -mult;
    update_binv(r, ap);
  }

  // One pricing + ratio-test step. Returns kOptimal-like via price() caller.
  // true = ok, false = unbounded.
  bool step(int q) {
    ftran(q);
    const int dir = stat_[q] == kAtLower ? 1 : -1;
    double t_best = ub_[q] - lb_[q];  // bound-flip range, possibly inf
    int r_best = -1;
    std::int8_t leave_stat = kAtLower;
    constexpr double tie = 1e-10;
    for (int i = 0; i < rows_; ++i) {
      const double a = alpha_[i];
      if (std::fabs(a) <= opt_.pivot_tol) continue;
      const int bi = basic_[i];
      const double rate = -dir * a;  // d(xb_i)/dt
      double t;
      std::int8_t ls;
      if (rate < 0.0) {
        if (!std::isfinite(lb_[bi])) continue;
        t = (xb_[i] - lb_[bi]) / -rate;
        ls = kAtLower;
      } else {
        if (!std::isfinite(ub_[bi])) continue;
        t = (ub_[bi] - xb_[i]) / rate;
        ls = kAtUpper;
      }
      if (t < 0.0) t = 0.0;
      bool take = false;
      if (t < t_best - tie) {
        take = true;
      } else if (r_best >= 0 && t <= t_best + tie) {
        if (bland_) {
          take = bi < basic_[r_best];
        } else {
          const double pa = std::fabs(a), pb = std::fabs(alpha_[r_best]);
          take = pa > pb || (pa == pb && bi < basic_[r_best]);
        }
      }
      if (take) {
        t_best = t;
        r_best = i;
        leave_stat = ls;
      }
    }
    if (!std::isfinite(t_best)) return false;
    if (r_best < 0) {
      // bound flip: no basis change
      const double delta = dir * t_best;
      kern::ops().axpy(xb_.data(), -delta, alpha_.data(), rows_);
      stat_[q] = stat_[q] == kAtLower ? kAtUpper : kAtLower;
      note_progress(t_best);
    } else {
      pivot(q, r_best, leave_stat, t_best, dir);
      note_progress(t_best);
    }
    return true;
  }

  void note_progress(double t) {
    if (t > 1e-10) {
      stall_ = 0;
      bland_ = false;
    } else if (++stall_ > 60) {
      bland_ = true;
    }
  }

  LoopResult core_loop() {
    int since_refresh = 0;
    while (true) {
      if (iters_ >= opt_.max_iterations) return LoopResult::kIterLimit;
      int q;
      if (!price(q)) {
        // confirm against drift before declaring optimality
        compute_d();
        if (!price(q)) return LoopResult::kOptimal;
      }
      ++iters_;
      if (!step(q)) return LoopResult::kUnbounded;
      if (++since_refresh >= opt_.refresh_interval) {
        since_refresh = 0;
        compute_d();
        compute_xb();
      }
    }
  }

  double artificial_sum() const {
    double s = 0.0;
    for (int r = 0; r < rows_; ++r)
      if (basic_[r] >= n_) s += std::fabs(xb_[r]);
    return s;
  }

  bool run_phase1(SolveReport& rep) {
    phase1_ = true;
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int r = 0; r < rows_; ++r) cost_[n_ + r] = 1.0;
    compute_d();
    const LoopResult lr = core_loop();
    phase1_ = false;
    if (lr == LoopResult::kIterLimit) {
      rep.status = SolveStatus::kIterationLimit;
      return false;
    }
    // phase 1 cannot be unbounded: objective is a sum of nonnegatives
    if (artificial_sum() > 1e-8 * std::max(1.0, rhs_scale_)) {
      rep.status = SolveStatus::kInfeasible;
      return false;
    }
    drive_out_artificials();
    fix_artificials();
    for (int r = 0; r < rows_; ++r)
      if (basic_[r] >= n_) xb_[r] = 0.0;  // snap redundant-row artificials
    return true;
  }

  void drive_out_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basic_[r] < n_) continue;
      if (std::fabs(xb_[r]) > 1e-8 * std::max(1.0, rhs_scale_)) continue;
      fill_rho(r);
      int q = -1;
      double best = 1e-7;
      for (int j = 0; j < n_; ++j) {
        if (stat_[j] == kBasic) continue;
        const double v = std::fabs(row_dot_col(j));
        if (v > best) {
          best = v;
          q = j;
        }
      }
      if (q < 0) continue;  // redundant row, artificial stays at zero
      ftran(q);
      pivot(q, r, kAtLower, 0.0, stat_[q] == kAtLower ? 1 : -1);
      ++iters_;
    }
  }

  void run_phase2(SolveReport& rep) {
    for (int j = 0; j < n_; ++j) cost_[j] = model_.obj[j];
    for (int r = 0; r < rows_; ++r) cost_[n_ + r] = 0.0;
    compute_d();
    LoopResult lr = core_loop();
    if (lr == LoopResult::kOptimal) {
      // final hygiene: recompute the primal point; if residuals are off,
      // refactorize once and resume
      compute_xb();
      if (residual_inf_norm() > 0.5e-6 && refactorize()) {
        compute_xb();
        compute_d();
        lr = core_loop();
        compute_xb();
      }
    }
    switch (lr) {
      case LoopResult::kOptimal: rep.status = SolveStatus::kOptimal; break;
      case LoopResult::kUnbounded: rep.status = SolveStatus::kUnbounded; break;
      case LoopResult::kIterLimit: rep.status = SolveStatus::kIterationLimit; break;
    }
  }

  // Rebuild Binv from the basis columns with Gauss-Jordan elimination
  // (partial pivoting). Returns false when the basis matrix is singular.
  bool refactorize() {
    const int m = rows_;
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);  // row-major
    for (int r = 0; r < m; ++r) {
      const int j = basic_[r];
      if (j < n_) {
        for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
          a[static_cast<std::size_t>(model_.cols.index[k]) * m + r] =
              model_.cols.value[k];
      } else {
        a[static_cast<std::size_t>(j - n_) * m + r] = art_sign_[j - n_];
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int col = 0; col < m; ++col) {
      int piv = col;
      double pv = std::fabs(a[static_cast<std::size_t>(col) * m + col]);
      for (int r = col + 1; r < m; ++r) {
        const double v = std::fabs(a[static_cast<std::size_t>(r) * m + col]);
        if (v > pv) {
          pv = v;
          piv = r;
        }
      }
      if (pv < 1e-12) return false;
      if (piv != col) {
        for (int c = 0; c < m; ++c) {
          std::swap(a[static_cast<std::size_t>(piv) * m + c],
                    a[static_cast<std::size_t>(col) * m + c]);
          std::swap(inv[static_cast<std::size_t>(piv) * m + c],
                    inv[static_cast<std::size_t>(col) * m + c]);
        }
      }
      const double ip = 1.0 / a[static_cast<std::size_t>(col) * m + col];
      kern::ops().scale(&a[static_cast<std::size_t>(col) * m], ip, m);
      kern::ops().scale(&inv[static_cast<std::size_t>(col) * m], ip, m);
      for (int r = 0; r < m; ++r) {
        if (r == col) continue;
        const double f = a[static_cast<std::size_t>(r) * m + col];
        if (f == 0.0) continue;
        kern::ops().axpy(&a[static_cast<std::size_t>(r) * m], -f,
                         &a[static_cast<std::size_t>(col) * m], m);
        kern::ops().axpy(&inv[static_cast<std::size_t>(r) * m], -f,
                         &inv[static_cast<std::size_t>(col) * m], m);
      }
    }
    // inv is row-major B^{-1}; binv_ stores it column-major
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        binv_[static_cast<std::size_t>(c) * m + r] =
            inv[static_cast<std::size_t>(r) * m + c];
    return true;
  }

  double residual_inf_norm() {
    std::vector<double> x(n_);
    extract_x(x);
    work_ = model_.rhs;
    for (int j = 0; j < n_; ++j) {
      if (x[j] == 0.0) continue;
      for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
        work_[model_.cols.index[k]] -= x[j] * model_.cols.value[k];
    }
    double r = 0.0;
    for (double v : work_) r = std::max(r, std::fabs(v));
    return r;
  }

  void extract_x(std::vector<double>& x) const {
    for (int j = 0; j < n_; ++j)
      x[j] = stat_[j] == kBasic ? 0.0 : nonbasic_value(j);
    for (int r = 0; r < rows_; ++r) {
      const int j = basic_[r];
      if (j >= n_) continue;
      double v = xb_[r];
      // snap small bound violations
      if (v < lb_[j] && v > lb_[j] - opt_.feas_tol) v = lb_[j];
      if (v > ub_[j] && v < ub_[j] + opt_.feas_tol) v = ub_[j];
      x[j] = v;
    }
  }

  void assemble(SolveReport& rep) {
    rep.iterations = iters_;
    rep.x.assign(n_, 0.0);
    extract_x(rep.x);
    if (rep.status == SolveStatus::kOptimal) {
      double z = 0.0;
      for (int j = 0; j < n_; ++j) z += model_.obj[j] * rep.x[j];
      rep.objective = z;
      if (residual_inf_norm() > 1e-6 * std::max(1.0, rhs_scale_)) {
        // never return a silently wrong answer
        rep.status = SolveStatus::kIterationLimit;
        return;
      }
      // duals and reduced costs from the final basis
      for (int r = 0; r < rows_; ++r) work_[r] = cost_[basic_[r]];
      rep.duals.assign(rows_, 0.0);
      for (int c = 0; c < rows_; ++c)
        rep.duals[c] = kern::ops().dot(work_.data(), bcol(c), rows_);
      rep.reduced_costs.assign(n_, 0.0);
      for (int j = 0; j < n_; ++j) {
        double s = model_.obj[j];
        for (int k = model_.cols.starts[j]; k < model_.cols.starts[j + 1]; ++k)
          s -= model_.cols.value[k] * rep.duals[model_.cols.index[k]];
        rep.reduced_costs[j] = s;
      }
    }
  }
};

}  // namespace

SolveReport solve_lp_bounded(const StandardFormModel& m,
                             const std::vector<double>& lower,
                             const std::vector<double>& upper,
                             const SimplexOptions& opt, const Basis* warm,
                             Basis* basis_out) {
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j]) {
      SolveReport rep;
      rep.status = SolveStatus::kInfeasible;
      rep.x.assign(m.num_vars(), 0.0);
      return rep;
    }
  }
  Simplex s(m, lower, upper, opt);
  return s.run(warm, basis_out);
}

SolveReport solve_lp(const StandardFormModel& m, const SimplexOptions& opt,
                     const Basis* warm, Basis* basis_out) {
  return solve_lp_bounded(m, m.lower, m.upper, opt, warm, basis_out);
}

}  // namespace boostmg
