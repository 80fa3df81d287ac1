#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdyn/augmented.hpp"
#include "sdyn/detail/iterative.hpp"

namespace sdyn::detail {

/// Transition structure of the absorbed walk, restricted to the free
/// (non-fully-stubborn) social nodes.
///
/// Row r of the interior operator holds w_ij / w_i for each free neighbor
/// j of free node i; the absorption block keeps, per row, the transition
/// mass into each stubborn agent's absorbing vertex (the anchor for a
/// partially stubborn agent, the agent itself when fully stubborn).
/// The operator is reversible with respect to pi_i ~ w_i, so its
/// symmetrization s_ij = w_ij / sqrt(w_i w_j) shares its spectrum.
class AbsorbingSystem {
 public:
  explicit AbsorbingSystem(const AugmentedGraph& ag) : ag_(&ag) {
    if (ag.absorbing().empty())
      throw std::domain_error("absorbing system: at least one stubborn agent required");
    const auto& free = ag.free_nodes();
    const int m = ag.free_count();

    stubborn_ = ag.profile().stubborn();
    std::vector<int> col_of(ag.base_count(), -1);
    for (int c = 0; c < static_cast<int>(stubborn_.size()); ++c) col_of[stubborn_[c]] = c;

    row_start_.assign(m + 1, 0);
    pi_ = stationary_distribution(ag);
    sqrt_pi_.resize(m);
    for (int r = 0; r < m; ++r) sqrt_pi_[r] = std::sqrt(pi_[r]);

    for (int r = 0; r < m; ++r) {
      const int i = free[r];
      for (auto [j, w] : ag.neighbors(i)) {
        (void)w;
        if (!ag.is_absorbing(j)) ++row_start_[r + 1];
      }
    }
    for (int r = 0; r < m; ++r) row_start_[r + 1] += row_start_[r];
    cols_.resize(row_start_[m]);
    interior_.resize(row_start_[m]);
    sym_.resize(row_start_[m]);

    absorb_rows_.assign(m + 1, 0);
    std::vector<std::pair<int, double>> absorb_tmp;
    for (int r = 0; r < m; ++r) {
      const int i = free[r];
      int cursor = row_start_[r];
      const double wi = ag.weight(i);
      for (auto [j, w] : ag.neighbors(i)) {
        if (ag.is_absorbing(j)) {
          const int agent = ag.is_anchor(j) ? ag.anchor_owner(j) : j;
          absorb_tmp.emplace_back(col_of[agent], w / wi);
          ++absorb_rows_[r + 1];
        } else {
          const int rc = ag.free_rank(j);
          cols_[cursor] = rc;
          interior_[cursor] = w / wi;
          sym_[cursor] = w / std::sqrt(wi * ag.weight(j));
          ++cursor;
        }
      }
    }
    for (int r = 0; r < m; ++r) absorb_rows_[r + 1] += absorb_rows_[r];
    absorb_ = std::move(absorb_tmp);
  }

  const AugmentedGraph& augmented() const { return *ag_; }
  int size() const { return static_cast<int>(row_start_.size()) - 1; }
  const std::vector<int>& stubborn_agents() const { return stubborn_; }
  int stubborn_count() const { return static_cast<int>(stubborn_.size()); }
  const std::vector<double>& pi() const { return pi_; }

  /// y = interior-transition matrix applied to x.
  void apply_interior(const std::vector<double>& x, std::vector<double>& y) const {
    const int m = size();
    y.assign(m, 0.0);
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int k = row_start_[r]; k < row_start_[r + 1]; ++k) s += interior_[k] * x[cols_[k]];
      y[r] = s;
    }
  }

  /// y = symmetrized interior operator applied to x (same spectrum).
  void apply_sym(const std::vector<double>& x, std::vector<double>& y) const {
    const int m = size();
    y.assign(m, 0.0);
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int k = row_start_[r]; k < row_start_[r + 1]; ++k) s += sym_[k] * x[cols_[k]];
      y[r] = s;
    }
  }

  /// Absorption mass from free row r into stubborn column c, accumulated
  /// into out[c] with multiplier f(c).
  template <typename Fn>
  void for_each_absorption(int r, Fn&& fn) const {
    for (int k = absorb_rows_[r]; k < absorb_rows_[r + 1]; ++k)
      fn(absorb_[k].first, absorb_[k].second);
  }

  /// Right-hand side b = absorption block applied to stubborn values.
  std::vector<double> absorption_rhs(const std::vector<double>& stubborn_values) const {
    std::vector<double> b(size(), 0.0);
    for (int r = 0; r < size(); ++r)
      for_each_absorption(r, [&](int c, double v) { b[r] += v * stubborn_values[c]; });
    return b;
  }

  /// Solves (I - interior) x = b through the symmetrized SPD form.
  SolveStats solve(const std::vector<double>& b, std::vector<double>& x, double tol,
                   long max_iter = 0) const {
    const int m = size();
    if (max_iter == 0) max_iter = 40L * m + 200;
    std::vector<double> bs(m);
    for (int r = 0; r < m; ++r) bs[r] = b[r] * sqrt_pi_[r];
    auto apply = [this](const std::vector<double>& in, std::vector<double>& out) {
      apply_sym(in, out);
      for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] - out[i];
    };
    std::vector<double> y;
    // The diagonal scaling is bounded by the pi extremes, so solving the
    // symmetrized system a bit below `tol` keeps the original residual there.
    double scale = 1.0;
    for (int r = 0; r < m; ++r) scale = std::min(scale, sqrt_pi_[r]);
    SolveStats st = conjugate_gradient(apply, bs, y, tol * scale, max_iter);
    x.resize(m);
    for (int r = 0; r < m; ++r) x[r] = y[r] / sqrt_pi_[r];
    // Report the residual of the untransformed system.
    std::vector<double> ax;
    apply_interior(x, ax);
    double res = 0.0;
    for (int r = 0; r < m; ++r) res = std::max(res, std::abs(b[r] - (x[r] - ax[r])));
    st.residual = res;
    st.converged = res <= tol;
    return st;
  }

 private:
  const AugmentedGraph* ag_;
  std::vector<int> stubborn_;
  std::vector<int> row_start_;
  std::vector<int> cols_;
  std::vector<double> interior_;
  std::vector<double> sym_;
  std::vector<int> absorb_rows_;
  std::vector<std::pair<int, double>> absorb_;
  std::vector<double> pi_;
  std::vector<double> sqrt_pi_;
};

}  // namespace sdyn::detail
