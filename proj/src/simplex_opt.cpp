#include "vvcorr/simplex_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vvcorr/measures.hpp"

namespace vvcorr {

namespace {

constexpr double kInteriorFloor = 1e-12;

void floor_block(std::vector<double>& x, std::size_t lo, std::size_t hi) {
  double total = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    x[i] = std::max(x[i], kInteriorFloor);
    total += x[i];
  }
  for (std::size_t i = lo; i < hi; ++i) x[i] /= total;
}

void check_finite(double v, const char* what) {
  if (std::isnan(v)) throw std::invalid_argument(std::string(what) + " returned NaN");
}

}  // namespace

std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  std::size_t support = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    running += u[i];
    double candidate = (running - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) {
      theta = candidate;
      support = i + 1;
    }
  }
  (void)support;
  for (auto& x : v) x = std::max(x - theta, 0.0);
  return v;
}

OptReport minimize_convex_on_simplex(const Objective& f, const Gradient& grad, std::size_t dim,
                                     double tol, int max_iter, const std::vector<double>* init,
                                     std::size_t blocks) {
  if (blocks == 0 || dim == 0 || dim % blocks != 0) {
    throw std::invalid_argument("minimize_convex_on_simplex: bad dimensions");
  }
  const std::size_t width = dim / blocks;
  std::vector<double> x;
  if (init != nullptr) {
    if (init->size() != dim) throw std::invalid_argument("minimize_convex_on_simplex: bad init");
    x = *init;
  } else {
    x.assign(dim, 1.0 / static_cast<double>(width));
  }
  for (std::size_t blk = 0; blk < blocks; ++blk) floor_block(x, blk * width, (blk + 1) * width);

  double fx = f(x);
  check_finite(fx, "objective");
  double step = 1.0;
  OptReport report;
  int it = 0;
  for (; it < max_iter; ++it) {
    std::vector<double> g = grad(x);
    if (g.size() != dim) throw std::invalid_argument("minimize_convex_on_simplex: bad gradient");
    for (double v : g) check_finite(v, "gradient");

    // Frank-Wolfe gap: certified distance to the optimum for convex f.
    double fw_gap = 0.0;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      double dot = 0.0, gmin = g[blk * width];
      for (std::size_t i = blk * width; i < (blk + 1) * width; ++i) {
        dot += g[i] * x[i];
        gmin = std::min(gmin, g[i]);
      }
      fw_gap += dot - gmin;
    }
    report.kkt_residual = fw_gap;
    if (fw_gap <= tol) {
      report.converged = true;
      break;
    }

    // Armijo backtracking along the projected gradient step.
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> y(dim);
      for (std::size_t blk = 0; blk < blocks; ++blk) {
        std::vector<double> blockv(width);
        for (std::size_t i = 0; i < width; ++i) blockv[i] = x[blk * width + i] - step * g[blk * width + i];
        blockv = project_to_simplex(std::move(blockv));
        for (std::size_t i = 0; i < width; ++i) y[blk * width + i] = blockv[i];
        floor_block(y, blk * width, (blk + 1) * width);
      }
      double decrease = 0.0;
      for (std::size_t i = 0; i < dim; ++i) decrease += g[i] * (x[i] - y[i]);
      double fy = f(y);
      check_finite(fy, "objective");
      if (fy <= fx - 1e-4 * decrease || decrease <= 0.0) {
        if (fy <= fx) {
          x = std::move(y);
          fx = fy;
          moved = true;
          step = std::min(step * 2.0, 1e6);
          break;
        }
      }
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (!moved && step < 1e-18) break;
  }
  report.x = std::move(x);
  report.value = fx;
  report.iterations = it;
  return report;
}

AlphaOptimum maximize_over_alpha(const std::function<double(double)>& g, double lo, double hi,
                                 double tol) {
  if (!(lo < hi)) throw std::invalid_argument("maximize_over_alpha: empty interval");
  const int kGridPoints = 41;
  AlphaOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  int evals = 0;
  std::vector<double> grid(kGridPoints);
  std::vector<double> vals(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1);
    vals[i] = g(grid[i]);
    ++evals;
    if (vals[i] > best.value) {
      best.value = vals[i];
      best.alpha = grid[i];
    }
  }
  int bi = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    if (vals[i] == best.value && grid[i] == best.alpha) bi = i;
  }
  double a = grid[std::max(bi - 1, 0)];
  double b = grid[std::min(bi + 1, kGridPoints - 1)];

  // Golden-section refinement inside the bracketing grid cell pair.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  evals += 2;
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g(x1);
    }
    ++evals;
  }
  double mid = 0.5 * (a + b);
  double fmid = g(mid);
  ++evals;
  if (fmid > best.value) {
    best.value = fmid;
    best.alpha = mid;
  }
  if (f1 > best.value) {
    best.value = f1;
    best.alpha = x1;
  }
  if (f2 > best.value) {
    best.value = f2;
    best.alpha = x2;
  }
  best.evaluations = evals;
  return best;
}

ExchangeCheck minimax_exchange_check(const JointDistribution& j, double rate, double tol) {
  if (rate < 0.0) throw std::invalid_argument("minimax_exchange_check: rate must be >= 0");
  const Distribution pa = j.marginal_a();
  const Channel ch = j.channel_b_given_a();
  const std::size_t na = j.na(), nb = j.nb();
  const double h_a = shannon_entropy(pa);
  const double inner_tol = std::min(tol * 1e-2, 1e-8);

  // Route 1: maximize the exponent over the order parameter.
  auto exponent_at = [&](double alpha) -> double {
    if (alpha <= 1.0 + 1e-12) return 0.0;  // 1/a' vanishes at alpha = 1
    Alpha a(alpha);
    MeasureResult mi = csiszar_mi(j, a, inner_tol);
    return (h_a - mi.value - rate) * a.inv_conjugate();
  };
  AlphaOptimum opt = maximize_over_alpha(exponent_at, 1.0, 2.0, std::min(tol, 1e-6));

  // Route 2: exchanged order. Over channels q(b|a) with the input marginal
  // pinned to p_A, minimize max over z in [0, 1/2] of
  //   z * (H(A|B)_q - rate) + D(q || p(b|a) | p_A),
  // which is D + max(0, (H_q - rate)/2) since the inner program is linear in
  // z. The positive part is smoothed (softplus, mu = 1e-5) for the gradient;
  // the reported value uses the exact positive part at the found channel.
  const double mu = 1e-5;
  const double log2e = 1.0 / std::log(2.0);

  auto eval = [&](const std::vector<double>& q, bool smoothed) -> double {
    std::vector<double> qb(nb, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < nb; ++b) qb[b] += pa[a] * q[a * nb + b];
    }
    double d = 0.0, h = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      if (pa[a] <= 0.0) continue;
      for (std::size_t b = 0; b < nb; ++b) {
        double qq = q[a * nb + b];
        if (qq <= 0.0) continue;
        double pp = std::max(ch.at(a, b), 1e-300);
        d += pa[a] * qq * std::log2(qq / pp);
        h -= pa[a] * qq * std::log2(pa[a] * qq / qb[b]);
      }
    }
    if (smoothed) {
      // softplus with width mu, scaled to the z-range [0, 1/2]
      double t = (h - rate) / mu;
      double sp = t > 40.0 ? t : std::log1p(std::exp(std::min(t, 40.0)));
      return d + 0.5 * mu * sp;
    }
    return d + std::max(0.0, 0.5 * (h - rate));
  };

  Objective obj = [&](const std::vector<double>& q) { return eval(q, true); };
  Gradient grd = [&](const std::vector<double>& q) {
    std::vector<double> qb(nb, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < nb; ++b) qb[b] += pa[a] * q[a * nb + b];
    }
    double h = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      if (pa[a] <= 0.0) continue;
      for (std::size_t b = 0; b < nb; ++b) {
        double qq = q[a * nb + b];
        if (qq <= 0.0) continue;
        h -= pa[a] * qq * std::log2(pa[a] * qq / qb[b]);
      }
    }
    double t = (h - rate) / mu;
    double z = 0.5 / (1.0 + std::exp(-std::min(std::max(t, -40.0), 40.0)));  // in (0, 1/2)
    std::vector<double> g(na * nb, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      if (pa[a] <= 0.0) continue;
      for (std::size_t b = 0; b < nb; ++b) {
        double qq = std::max(q[a * nb + b], 1e-300);
        double pp = std::max(ch.at(a, b), 1e-300);
        double grad_d = pa[a] * (std::log2(qq / pp) + log2e);
        double grad_h = -pa[a] * std::log2(pa[a] * qq / std::max(qb[b], 1e-300));
        g[a * nb + b] = grad_d + z * grad_h;
      }
    }
    return g;
  };

  // The inner minimizer at a fixed order is the Augustin-tilted channel
  // q(b|a) proportional to p(b|a)^alpha q*(b)^(1-alpha), with q* the Augustin
  // mean. Tilts at and around the order-side optimum make sharp warm starts.
  auto tilted_start = [&](double alpha) -> std::vector<double> {
    std::vector<double> qb = j.marginal_b().probs();
    for (int it = 0; it < 80; ++it) {
      std::vector<double> next(nb, 0.0);
      for (std::size_t a = 0; a < na; ++a) {
        if (pa[a] <= 0.0) continue;
        double z = 0.0;
        std::vector<double> row(nb, 0.0);
        for (std::size_t b = 0; b < nb; ++b) {
          row[b] = std::pow(ch.at(a, b), alpha) * std::pow(std::max(qb[b], 1e-12), 1.0 - alpha);
          z += row[b];
        }
        for (std::size_t b = 0; b < nb; ++b) next[b] += pa[a] * row[b] / z;
      }
      double total = 0.0;
      for (double v : next) total += v;
      for (double& v : next) v /= total;
      qb = std::move(next);
    }
    std::vector<double> start(na * nb, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      double z = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        start[a * nb + b] =
            std::pow(ch.at(a, b), alpha) * std::pow(std::max(qb[b], 1e-12), 1.0 - alpha);
        z += start[a * nb + b];
      }
      if (z <= 0.0) {
        for (std::size_t b = 0; b < nb; ++b) start[a * nb + b] = ch.at(a, b);
      } else {
        for (std::size_t b = 0; b < nb; ++b) start[a * nb + b] /= z;
      }
    }
    return start;
  };

  std::vector<std::vector<double>> starts;
  starts.emplace_back(na * nb);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) starts.back()[a * nb + b] = ch.at(a, b);
  }
  for (double alpha : {opt.alpha, 0.5 * (opt.alpha + 2.0), 2.0}) {
    if (alpha > 1.0 + 1e-9) starts.push_back(tilted_start(alpha));
  }

  ExchangeCheck out;
  out.lhs = opt.value;
  out.lhs_alpha = opt.alpha;
  out.rhs = std::numeric_limits<double>::infinity();
  for (const std::vector<double>& init : starts) {
    OptReport rep = minimize_convex_on_simplex(obj, grd, na * nb, std::min(tol * 1e-2, 1e-7),
                                               50000, &init, na);
    const double value = eval(rep.x, false);
    if (value < out.rhs) {
      out.rhs = value;
      out.rhs_channel = rep.x;
    }
  }
  return out;
}

}  // namespace vvcorr
