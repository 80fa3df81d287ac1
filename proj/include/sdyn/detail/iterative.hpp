#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "sdyn/detail/rng.hpp"

namespace sdyn::detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct SolveStats {
  long iterations = 0;
  double residual = 0.0;  // final infinity-norm residual of the solved system
  bool converged = false;
};

/// Conjugate gradients for a symmetric positive definite operator.
/// Stops on the true residual (recomputed, infinity norm) <= tol.
template <typename Apply>
SolveStats conjugate_gradient(Apply&& apply, const std::vector<double>& b,
                              std::vector<double>& x, double tol, long max_iter) {
  const std::size_t n = b.size();
  x.assign(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> p = r;
  std::vector<double> ap(n);
  double rr = dot(r, r);
  SolveStats stats;

  for (long it = 0; it < max_iter; ++it) {
    if (norm_inf(r) <= tol) break;
    apply(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;  // loss of positive definiteness at round-off level
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    stats.iterations = it + 1;
    // Periodically recompute the residual from scratch to shed drift.
    if ((it + 1) % 50 == 0) {
      apply(x, ap);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
      rr = dot(r, r);
      p = r;
    }
  }
  apply(x, ap);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(b[i] - ap[i]));
  stats.residual = res;
  stats.converged = res <= tol;
  return stats;
}

struct EigenStats {
  double value = 0.0;
  std::vector<double> vector;
  long iterations = 0;
  double residual = 0.0;  // ||S v - value v||_2 for the unshifted operator
  bool converged = false;
};

/// Largest eigenvalue of a symmetric operator S with spectrum in [-1, 1],
/// optionally restricted to the orthogonal complement of `deflate`.
///
/// Iterates on (S + I)/2, whose restriction is positive semidefinite, so
/// the power method converges regardless of the sign of the extreme
/// eigenvalues; the Rayleigh quotient is reported for S itself.
template <typename Apply>
EigenStats power_extreme(Apply&& apply_s, int n, const std::vector<double>* deflate,
                         double tol, long max_iter, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0xA24BAED4963EE407ULL));
  std::vector<double> v(n), sv(n), resid(n);
  for (double& vi : v) vi = uniform01(rng) - 0.5;

  auto project = [&](std::vector<double>& y) {
    if (!deflate) return;
    const double c = dot(y, *deflate);
    for (int i = 0; i < n; ++i) y[i] -= c * (*deflate)[i];
  };

  project(v);
  double nv = norm2(v);
  if (nv == 0.0) {  // pathological start; reseed deterministically
    for (double& vi : v) vi = uniform01(rng) - 0.5;
    project(v);
    nv = norm2(v);
  }
  for (double& vi : v) vi /= nv;

  EigenStats stats;
  for (long it = 0; it < max_iter; ++it) {
    apply_s(v, sv);
    project(sv);
    const double theta = dot(v, sv);  // Rayleigh quotient for S
    double rn = 0.0;
    for (int i = 0; i < n; ++i) {
      resid[i] = sv[i] - theta * v[i];
      rn += resid[i] * resid[i];
    }
    rn = std::sqrt(rn);
    stats.value = theta;
    stats.iterations = it + 1;
    stats.residual = rn;
    if (rn <= tol) {
      stats.converged = true;
      break;
    }
    // next iterate: (S + I)/2 applied to v
    double nn = 0.0;
    for (int i = 0; i < n; ++i) {
      sv[i] = 0.5 * (sv[i] + v[i]);
      nn += sv[i] * sv[i];
    }
    nn = std::sqrt(nn);
    if (nn == 0.0) {  // operator annihilates v: eigenvalue -1 exactly
      stats.value = -1.0;
      stats.residual = 0.0;
      stats.converged = true;
      break;
    }
    for (int i = 0; i < n; ++i) v[i] = sv[i] / nn;
  }
  stats.vector = std::move(v);
  return stats;
}

/// Smallest eigenvalue of S via power_extreme on -S.
template <typename Apply>
EigenStats power_extreme_min(Apply&& apply_s, int n, const std::vector<double>* deflate,
                             double tol, long max_iter, std::uint64_t seed) {
  auto neg = [&](const std::vector<double>& in, std::vector<double>& out) {
    apply_s(in, out);
    for (double& v : out) v = -v;
  };
  EigenStats st = power_extreme(neg, n, deflate, tol, max_iter, seed);
  st.value = -st.value;
  return st;
}

}  // namespace sdyn::detail
