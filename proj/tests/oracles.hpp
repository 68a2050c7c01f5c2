#pragma once

// Reference implementations used only by the tests. Everything here is a
// direct transcription of a definition (double loops, dense grids, closed
// forms), deliberately written without reusing library internals so that a
// library bug cannot cancel out of a comparison.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vvcorr/distribution.hpp"

namespace oracles {

using vvcorr::Channel;
using vvcorr::Distribution;
using vvcorr::JointDistribution;

inline double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

inline std::vector<double> marginal_a(const JointDistribution& j) {
  std::vector<double> pa(j.na(), 0.0);
  for (std::size_t a = 0; a < j.na(); ++a)
    for (std::size_t b = 0; b < j.nb(); ++b) pa[a] += j.at(a, b);
  return pa;
}

inline std::vector<double> marginal_b(const JointDistribution& j) {
  std::vector<double> pb(j.nb(), 0.0);
  for (std::size_t a = 0; a < j.na(); ++a)
    for (std::size_t b = 0; b < j.nb(); ++b) pb[b] += j.at(a, b);
  return pb;
}

// sum_b ( sum_a p(a) |p(b|a) - p(b)|^alpha )^(1/alpha), finite alpha >= 1.
inline double v_alpha(const JointDistribution& j, double alpha) {
  const auto pa = marginal_a(j);
  const auto pb = marginal_b(j);
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] <= 0.0) continue;
      const double cond = j.at(a, b) / pa[a];
      inner += pa[a] * std::pow(std::abs(cond - pb[b]), alpha);
    }
    total += std::pow(inner, 1.0 / alpha);
  }
  return total;
}

// sum_b max over supported a of |p(b|a) - p(b)|.
inline double v_infinity(const JointDistribution& j) {
  const auto pa = marginal_a(j);
  const auto pb = marginal_b(j);
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double best = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] <= 0.0) continue;
      best = std::max(best, std::abs(j.at(a, b) / pa[a] - pb[b]));
    }
    total += best;
  }
  return total;
}

// sum_b p(b) ( sum_a |p(a|b) - 1/|A||^alpha )^(1/alpha).
inline double w_alpha(const JointDistribution& j, double alpha) {
  const auto pb = marginal_b(j);
  const double u = 1.0 / static_cast<double>(j.na());
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    if (pb[b] <= 0.0) continue;
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      inner += std::pow(std::abs(j.at(a, b) / pb[b] - u), alpha);
    }
    total += pb[b] * std::pow(inner, 1.0 / alpha);
  }
  return total;
}

inline double shannon_mi(const JointDistribution& j) {
  const auto pa = marginal_a(j);
  const auto pb = marginal_b(j);
  double mi = 0.0;
  for (std::size_t a = 0; a < j.na(); ++a)
    for (std::size_t b = 0; b < j.nb(); ++b) {
      const double p = j.at(a, b);
      if (p > 0.0) mi += p * std::log2(p / (pa[a] * pb[b]));
    }
  return mi;
}

// (alpha/(alpha-1)) log2 sum_b ( sum_a p(a) p(b|a)^alpha )^(1/alpha), alpha > 1.
inline double sibson_mi(const JointDistribution& j, double alpha) {
  const auto pa = marginal_a(j);
  double outer = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] <= 0.0) continue;
      inner += pa[a] * std::pow(j.at(a, b) / pa[a], alpha);
    }
    outer += std::pow(inner, 1.0 / alpha);
  }
  return alpha / (alpha - 1.0) * std::log2(outer);
}

// -a' log2 sum_b ( sum_a p(a,b)^alpha )^(1/alpha), alpha > 1.
inline double cond_renyi_entropy(const JointDistribution& j, double alpha) {
  double outer = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) inner += std::pow(j.at(a, b), alpha);
    outer += std::pow(inner, 1.0 / alpha);
  }
  return -(alpha / (alpha - 1.0)) * std::log2(outer);
}

// -log2 sum_{a,b} p(b) p(a|b)^alpha.
inline double hayashi_cond_entropy(const JointDistribution& j, double alpha) {
  const auto pb = marginal_b(j);
  double s = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    if (pb[b] <= 0.0) continue;
    for (std::size_t a = 0; a < j.na(); ++a) s += pb[b] * std::pow(j.at(a, b) / pb[b], alpha);
  }
  return -std::log2(s);
}

// Renyi divergence of order alpha > 1 in bits; +inf when supp(p) escapes supp(q).
inline double renyi_divergence(const std::vector<double>& p, const std::vector<double>& q,
                               double alpha) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  return std::log2(s) / (alpha - 1.0);
}

inline double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    s += p[i] * std::log2(p[i] / q[i]);
  }
  return s;
}

// min over q on a dense grid of sum_a p(a) D_alpha(p(.|a) || q), binary B only.
// The grid step bounds the gap to the true minimum by O(step^2), so values
// agree with a certified solver to ~1e-6 at step 1e-4.
inline double csiszar_grid_binary_b(const JointDistribution& j, double alpha,
                                    double step = 1e-4) {
  const auto pa = marginal_a(j);
  double best = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * step;
    const std::vector<double> q = {t, 1.0 - t};
    double val = 0.0;
    for (std::size_t a = 0; a < j.na() && std::isfinite(val); ++a) {
      if (pa[a] <= 0.0) continue;
      std::vector<double> row(j.nb());
      for (std::size_t b = 0; b < j.nb(); ++b) row[b] = j.at(a, b) / pa[a];
      val += pa[a] * renyi_divergence(row, q, alpha);
    }
    best = std::min(best, val);
  }
  return best;
}

// min over a hierarchically refined simplex grid (coarse scan, then local
// refinement around the best cell) of sum_a p(a) D_alpha(p(.|a) || q), for
// B of size 3. Value accuracy ~1e-5.
inline double csiszar_grid_ternary_b(const JointDistribution& j, double alpha) {
  const auto pa = marginal_a(j);
  auto eval = [&](double q0, double q1) {
    const std::vector<double> q = {q0, q1, 1.0 - q0 - q1};
    double val = 0.0;
    for (std::size_t a = 0; a < j.na() && std::isfinite(val); ++a) {
      if (pa[a] <= 0.0) continue;
      std::vector<double> row(j.nb());
      for (std::size_t b = 0; b < j.nb(); ++b) row[b] = j.at(a, b) / pa[a];
      val += pa[a] * renyi_divergence(row, q, alpha);
    }
    return val;
  };
  const int coarse = 200;
  double best = std::numeric_limits<double>::infinity(), b0 = 1.0 / 3, b1 = 1.0 / 3;
  for (int i = 0; i <= coarse; ++i)
    for (int k = 0; k + i <= coarse; ++k) {
      const double q0 = static_cast<double>(i) / coarse;
      const double q1 = static_cast<double>(k) / coarse;
      const double v = eval(q0, q1);
      if (v < best) { best = v; b0 = q0; b1 = q1; }
    }
  const double h = 1.0 / coarse, fine = h / 100.0;
  for (double q0 = std::max(0.0, b0 - h); q0 <= std::min(1.0, b0 + h); q0 += fine)
    for (double q1 = std::max(0.0, b1 - h); q0 + q1 <= 1.0 && q1 <= b1 + h; q1 += fine) {
      if (q1 < std::max(0.0, b1 - h)) continue;
      best = std::min(best, eval(q0, q1));
    }
  return best;
}

// Tsallis mutual information by dense grid over binary-B references:
// min_q [ sum_a p(a) D_f(p(.|a)||q) - D_f(p_B||q) ] with f = (t^a - t)/(a-1).
inline double tsallis_grid_binary_b(const JointDistribution& j, double alpha,
                                    double step = 1e-4) {
  const auto pa = marginal_a(j);
  const auto pb = marginal_b(j);
  auto d_f = [&](const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
      const double t = p[i] / q[i];
      s += q[i] * (std::pow(t, alpha) - t) / (alpha - 1.0);
    }
    return s;
  };
  double best = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 1; i < steps; ++i) {
    const double t = static_cast<double>(i) * step;
    const std::vector<double> q = {t, 1.0 - t};
    double val = -d_f(pb, q);
    for (std::size_t a = 0; a < j.na() && std::isfinite(val); ++a) {
      if (pa[a] <= 0.0) continue;
      std::vector<double> row(j.nb());
      for (std::size_t b = 0; b < j.nb(); ++b) row[b] = j.at(a, b) / pa[a];
      val += pa[a] * d_f(row, q);
    }
    best = std::min(best, val);
  }
  return best;
}

// Closed forms for the symbol-erasure channel with uniform input on d symbols.
inline double erasure_w(double eps, int d, double alpha) {
  const double dd = d;
  return (1.0 - eps) *
         std::pow(std::pow(1.0 - 1.0 / dd, alpha) + (dd - 1.0) * std::pow(dd, -alpha),
                  1.0 / alpha);
}

inline double erasure_v(double eps, int d, double alpha) {
  return std::pow(static_cast<double>(d), 1.0 - 1.0 / alpha) * erasure_w(eps, d, alpha);
}

inline double erasure_v_inf(double eps, int d) {
  return (1.0 - eps) * (static_cast<double>(d) - 1.0);
}

// Exact factorial-based count of k-to-1 maps from n sources onto n/k bins.
inline double count_k_to_1(int n, int k) {
  double v = 0.0;
  for (int i = 2; i <= n; ++i) v += std::log2(static_cast<double>(i));
  double kf = 0.0;
  for (int i = 2; i <= k; ++i) kf += std::log2(static_cast<double>(i));
  return std::round(std::exp2(v - kf * static_cast<double>(n / k)));
}

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
