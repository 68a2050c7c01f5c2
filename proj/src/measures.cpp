#include "vvcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vvcorr/simplex_opt.hpp"

namespace vvcorr {

namespace {

constexpr double kLog2E = 1.4426950408889634074;  // log2(e)
constexpr double kQFloor = 1e-12;  // floor on reference weights inside divergences

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_finite_order(const Alpha& alpha, const char* op) {
  if (alpha.is_infinity()) {
    throw std::invalid_argument(std::string(op) + ": order must be finite");
  }
}

}  // namespace

JointDistribution postprocess_a(const JointDistribution& j, const Channel& ch) {
  if (ch.na() != j.na()) {
    throw std::invalid_argument("postprocess_a: channel input size mismatch");
  }
  const std::size_t nx = ch.nb(), nb = j.nb();
  std::vector<double> table(nx * nb, 0.0);
  for (std::size_t a = 0; a < j.na(); ++a) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double w = ch.at(a, x);
      if (w == 0.0) continue;
      for (std::size_t b = 0; b < nb; ++b) table[x * nb + b] += w * j.at(a, b);
    }
  }
  return JointDistribution(nx, nb, std::move(table));
}

JointDistribution postprocess_b(const JointDistribution& j, const Channel& ch) {
  if (ch.na() != j.nb()) {
    throw std::invalid_argument("postprocess_b: channel input size mismatch");
  }
  const std::size_t na = j.na(), ny = ch.nb();
  std::vector<double> table(na * ny, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < j.nb(); ++b) {
      const double w = j.at(a, b);
      if (w == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) table[a * ny + y] += w * ch.at(b, y);
    }
  }
  return JointDistribution(na, ny, std::move(table));
}

double shannon_entropy(const Distribution& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) h -= xlog2x(p[i]);
  return h;
}

double shannon_mi(const JointDistribution& j) {
  const Distribution pa = j.marginal_a(), pb = j.marginal_b();
  double mi = 0.0;
  for (std::size_t a = 0; a < j.na(); ++a) {
    for (std::size_t b = 0; b < j.nb(); ++b) {
      const double pab = j.at(a, b);
      if (pab > 0.0) mi += pab * std::log2(pab / (pa[a] * pb[b]));
    }
  }
  return std::max(0.0, mi);
}

double conditional_entropy_a_given_b(const JointDistribution& j) {
  const Distribution pb = j.marginal_b();
  double h = 0.0;
  for (std::size_t a = 0; a < j.na(); ++a) {
    for (std::size_t b = 0; b < j.nb(); ++b) {
      const double pab = j.at(a, b);
      if (pab > 0.0) h -= pab * std::log2(pab / pb[b]);
    }
  }
  return std::max(0.0, h);
}

double v_infinity(const JointDistribution& j) {
  const Distribution pa = j.marginal_a(), pb = j.marginal_b();
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] <= 0.0) continue;
      inner = std::max(inner, std::abs(j.at(a, b) / pa[a] - pb[b]));
    }
    total += inner;
  }
  return total;
}

double v_alpha(const JointDistribution& j, Alpha alpha) {
  if (alpha.is_infinity()) return v_infinity(j);
  const double al = alpha.value();
  const Distribution pa = j.marginal_a(), pb = j.marginal_b();
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] <= 0.0) continue;
      inner += pa[a] * std::pow(std::abs(j.at(a, b) / pa[a] - pb[b]), al);
    }
    total += std::pow(inner, 1.0 / al);
  }
  return total;
}

double w_alpha(const JointDistribution& j, Alpha alpha) {
  const std::size_t na = j.na();
  const Distribution pb = j.marginal_b();
  const double center = 1.0 / static_cast<double>(na);
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    if (pb[b] <= 0.0) continue;
    double inner = 0.0;
    if (alpha.is_infinity()) {
      for (std::size_t a = 0; a < na; ++a) {
        inner = std::max(inner, std::abs(j.at(a, b) / pb[b] - center));
      }
    } else {
      const double al = alpha.value();
      double acc = 0.0;
      for (std::size_t a = 0; a < na; ++a) {
        acc += std::pow(std::abs(j.at(a, b) / pb[b] - center), al);
      }
      inner = std::pow(acc, 1.0 / al);
    }
    total += pb[b] * inner;
  }
  return total;
}

double sibson_mi(const JointDistribution& j, Alpha alpha) {
  if (alpha.is_one()) return shannon_mi(j);
  const Distribution pa = j.marginal_a();
  if (alpha.is_infinity()) {
    double sum = 0.0;
    for (std::size_t b = 0; b < j.nb(); ++b) {
      double best = 0.0;
      for (std::size_t a = 0; a < j.na(); ++a) {
        if (pa[a] > 0.0) best = std::max(best, j.at(a, b) / pa[a]);
      }
      sum += best;
    }
    return std::log2(sum);
  }
  const double al = alpha.value();
  double sum = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] > 0.0) inner += pa[a] * std::pow(j.at(a, b) / pa[a], al);
    }
    sum += std::pow(inner, 1.0 / al);
  }
  return alpha.conjugate() * std::log2(sum);
}

double cond_renyi_entropy(const JointDistribution& j, Alpha alpha) {
  if (alpha.is_one()) return conditional_entropy_a_given_b(j);
  if (alpha.is_infinity()) {
    double sum = 0.0;
    for (std::size_t b = 0; b < j.nb(); ++b) {
      double best = 0.0;
      for (std::size_t a = 0; a < j.na(); ++a) best = std::max(best, j.at(a, b));
      sum += best;
    }
    return -std::log2(sum);
  }
  const double al = alpha.value();
  double sum = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      const double pab = j.at(a, b);
      if (pab > 0.0) inner += std::pow(pab, al);
    }
    if (inner > 0.0) sum += std::pow(inner, 1.0 / al);
  }
  return -alpha.conjugate() * std::log2(sum);
}

double hayashi_cond_entropy(const JointDistribution& j, Alpha alpha) {
  require_finite_order(alpha, "hayashi_cond_entropy");
  if (alpha.is_one()) return conditional_entropy_a_given_b(j);
  const double al = alpha.value();
  const Distribution pb = j.marginal_b();
  double sum = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    if (pb[b] <= 0.0) continue;
    for (std::size_t a = 0; a < j.na(); ++a) {
      const double cond = j.at(a, b) / pb[b];
      if (cond > 0.0) sum += pb[b] * std::pow(cond, al);
    }
  }
  return -std::log2(sum);
}

double renyi_divergence(const Distribution& p, const Distribution& q, Alpha alpha) {
  require_finite_order(alpha, "renyi_divergence");
  if (p.size() != q.size()) {
    throw std::invalid_argument("renyi_divergence: dimension mismatch");
  }
  if (alpha.is_one()) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0) {
        if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
        d += p[i] * std::log2(p[i] / q[i]);
      }
    }
    return std::max(0.0, d);
  }
  const double al = alpha.value();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
      sum += std::pow(p[i], al) * std::pow(q[i], 1.0 - al);
    }
  }
  return std::log2(sum) / (al - 1.0);
}

namespace {

// Shared state for the constrained-reference Renyi minimization.
struct CsiszarWork {
  double al = 2.0;
  std::vector<double> pa;                 // input marginal
  std::vector<std::size_t> support;      // indices with pa > 0
  std::vector<std::vector<double>> rows;  // p(b|a) for supported a
  std::size_t nb = 0;

  // sum_a p(a) D_al(p(.|a) || q) with q floored.
  double primal(const std::vector<double>& q) const {
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      double s = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const double pb = rows[i][b];
        if (pb > 0.0) s += std::pow(pb, al) * std::pow(std::max(q[b], kQFloor), 1.0 - al);
      }
      total += pa[support[i]] * std::log2(s) / (al - 1.0);
    }
    return total;
  }

  std::vector<double> primal_grad(const std::vector<double>& q) const {
    std::vector<double> g(nb, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      double s = 0.0;
      std::vector<double> num(nb, 0.0);
      for (std::size_t b = 0; b < nb; ++b) {
        const double pb = rows[i][b];
        if (pb > 0.0) {
          const double qb = std::max(q[b], kQFloor);
          const double term = std::pow(pb, al) * std::pow(qb, 1.0 - al);
          s += term;
          num[b] = term / qb;
        }
      }
      for (std::size_t b = 0; b < nb; ++b) {
        if (num[b] != 0.0) g[b] -= kLog2E * pa[support[i]] * num[b] / s;
      }
    }
    return g;
  }

  // Tilted channel t(b|a) proportional to p(b|a)^al q(b)^(1-al).
  std::vector<std::vector<double>> tilted(const std::vector<double>& q) const {
    std::vector<std::vector<double>> t(support.size(), std::vector<double>(nb, 0.0));
    for (std::size_t i = 0; i < support.size(); ++i) {
      double z = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const double pb = rows[i][b];
        if (pb > 0.0) {
          t[i][b] = std::pow(pb, al) * std::pow(std::max(q[b], kQFloor), 1.0 - al);
          z += t[i][b];
        }
      }
      for (std::size_t b = 0; b < nb; ++b) t[i][b] /= z;
    }
    return t;
  }

  // Dual objective I(A;B)_t - a' D(t || p(.|.) | p_A): a lower bound on the
  // optimum for every channel t with the same input marginal.
  double dual(const std::vector<std::vector<double>>& t) const {
    std::vector<double> tb(nb, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t b = 0; b < nb; ++b) tb[b] += pa[support[i]] * t[i][b];
    }
    double mi = 0.0, div = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      const double w = pa[support[i]];
      for (std::size_t b = 0; b < nb; ++b) {
        const double tv = t[i][b];
        if (tv > 0.0) {
          mi += w * tv * std::log2(tv / tb[b]);
          div += w * tv * std::log2(tv / rows[i][b]);
        }
      }
    }
    return mi - (al / (al - 1.0)) * div;
  }

  std::vector<double> averaged(const std::vector<std::vector<double>>& t) const {
    std::vector<double> q(nb, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t b = 0; b < nb; ++b) q[b] += pa[support[i]] * t[i][b];
    }
    return q;
  }
};

}  // namespace

MeasureResult csiszar_mi(const JointDistribution& j, Alpha alpha, double tol,
                         int max_iterations) {
  require_finite_order(alpha, "csiszar_mi");
  const double al = alpha.value();
  if (al <= 1.0 || al > 2.0) {
    throw std::invalid_argument("csiszar_mi: order must lie in (1, 2]");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("csiszar_mi: tolerance must be positive");

  CsiszarWork w;
  w.al = al;
  w.nb = j.nb();
  const Distribution pa = j.marginal_a();
  w.pa = pa.probs();
  for (std::size_t a = 0; a < j.na(); ++a) {
    if (pa[a] > 0.0) {
      w.support.push_back(a);
      w.rows.push_back(j.conditional_b_given_a(a).p);
    }
  }
  if (w.support.empty()) throw std::invalid_argument("csiszar_mi: empty input marginal");

  std::vector<double> q = j.marginal_b().probs();
  double best_primal = std::numeric_limits<double>::infinity();
  double best_dual = -std::numeric_limits<double>::infinity();
  std::vector<double> best_q = q;
  int iters = 0;
  bool converged = false;

  for (; iters < max_iterations; ++iters) {
    const double cur = w.primal(q);
    if (cur < best_primal) {
      best_primal = cur;
      best_q = q;
    }
    const auto t = w.tilted(q);
    best_dual = std::max(best_dual, w.dual(t));
    if (best_primal - best_dual <= tol) {
      converged = true;
      ++iters;
      break;
    }
    std::vector<double> next = w.averaged(t);
    if (w.primal(next) > cur + 1e-15) {
      // Geometric-mean damping keeps the fixed point monotone in practice.
      double z = 0.0;
      for (std::size_t b = 0; b < w.nb; ++b) {
        next[b] = std::sqrt(std::max(next[b], kQFloor) * std::max(q[b], kQFloor));
        z += next[b];
      }
      for (std::size_t b = 0; b < w.nb; ++b) next[b] /= z;
    }
    q = std::move(next);
  }

  if (!converged) {
    // Projected-gradient fallback on the primal, restarted from the best iterate.
    const OptReport rep = minimize_convex_on_simplex(
        [&w](const std::vector<double>& x) { return w.primal(x); },
        [&w](const std::vector<double>& x) { return w.primal_grad(x); }, w.nb, tol * 0.1,
        50000, &best_q);
    iters += rep.iterations;
    if (rep.value < best_primal) {
      best_primal = rep.value;
      best_q = rep.x;
    }
    best_dual = std::max(best_dual, w.dual(w.tilted(best_q)));
    converged = best_primal - best_dual <= tol;
  }

  MeasureResult out;
  out.value = best_primal;
  // Rounding can push the dual a final ulp past the primal once the gap closes.
  out.cert = {std::min(best_dual, best_primal), best_primal};
  out.iterations = iters;
  out.converged = converged;
  return out;
}

ConvexFunctionSpec kl_function() {
  ConvexFunctionSpec fs;
  fs.f = [](double t) { return xlog2x(t); };
  fs.df = [](double t) { return std::log2(t) + kLog2E; };
  fs.d2f = [](double t) { return kLog2E / t; };
  fs.name = "kl";
  return fs;
}

ConvexFunctionSpec tsallis_function(double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("tsallis_function: order must exceed 1");
  }
  ConvexFunctionSpec fs;
  fs.f = [alpha](double t) { return (std::pow(t, alpha) - t) / (alpha - 1.0); };
  fs.df = [alpha](double t) { return (alpha * std::pow(t, alpha - 1.0) - 1.0) / (alpha - 1.0); };
  fs.d2f = [alpha](double t) { return alpha * std::pow(t, alpha - 2.0); };
  fs.name = "tsallis-" + std::to_string(alpha);
  return fs;
}

namespace {

// Spot checks of the admissibility conditions on a 100-point grid:
// f(1) = 0, f'' > 0 (strict convexity), 1/f'' midpoint-concave, and the
// supplied second derivative consistent with a finite difference of f'.
void validate_convex_spec(const ConvexFunctionSpec& fs) {
  if (!fs.f || !fs.df || !fs.d2f) {
    throw std::invalid_argument("convex spec: missing callable");
  }
  if (std::abs(fs.f(1.0)) > 1e-9) {
    throw std::invalid_argument("convex spec '" + fs.name + "': f(1) must vanish");
  }
  constexpr int kGrid = 100;
  const double lo = 0.05, hi = 5.0;
  std::vector<double> inv_curv(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    const double t = lo + (hi - lo) * i / (kGrid - 1);
    const double c = fs.d2f(t);
    if (!(c > 1e-10)) {
      throw std::invalid_argument("convex spec '" + fs.name + "': f'' must be positive");
    }
    inv_curv[i] = 1.0 / c;
    const double h = 1e-5;
    const double fd = (fs.df(t + h) - fs.df(t - h)) / (2.0 * h);
    if (std::abs(fd - c) > 1e-4 * (1.0 + std::abs(c))) {
      throw std::invalid_argument("convex spec '" + fs.name +
                                  "': f'' inconsistent with finite difference of f'");
    }
  }
  for (int i = 1; i + 1 < kGrid; ++i) {
    if (2.0 * inv_curv[i] + 1e-9 < inv_curv[i - 1] + inv_curv[i + 1]) {
      throw std::invalid_argument("convex spec '" + fs.name + "': 1/f'' must be concave");
    }
  }
}

}  // namespace

double f_divergence(const Distribution& p, const Distribution& q, const ConvexFunctionSpec& fs) {
  if (p.size() != q.size()) throw std::invalid_argument("f_divergence: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) {
      total += q[i] * fs.f(p[i] / q[i]);
    } else if (p[i] > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return total;
}

namespace {

struct FmiWork {
  const ConvexFunctionSpec* fs = nullptr;
  std::vector<double> pa;
  std::vector<std::size_t> support;
  std::vector<std::vector<double>> rows;
  std::vector<double> pb;
  std::size_t nb = 0;
  bool subtract_center = true;  // false for the centered variant

  double objective(const std::vector<double>& q) const {
    double total = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double qb = std::max(q[b], kQFloor);
      double acc = 0.0;
      for (std::size_t i = 0; i < support.size(); ++i) {
        acc += pa[support[i]] * fs->f(rows[i][b] / qb);
      }
      if (subtract_center) acc -= fs->f(pb[b] / qb);
      total += qb * acc;
    }
    return total;
  }

  // d/dq_b of q f(p/q) is f(r) - r f'(r) at r = p/q.
  std::vector<double> gradient(const std::vector<double>& q) const {
    std::vector<double> g(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      const double qb = std::max(q[b], kQFloor);
      double acc = 0.0;
      for (std::size_t i = 0; i < support.size(); ++i) {
        const double r = rows[i][b] / qb;
        acc += pa[support[i]] * (fs->f(r) - r * fs->df(r));
      }
      if (subtract_center) {
        const double s = pb[b] / qb;
        acc -= fs->f(s) - s * fs->df(s);
      }
      g[b] = acc;
    }
    return g;
  }
};

FmiWork make_fmi_work(const JointDistribution& j, const ConvexFunctionSpec& fs) {
  FmiWork w;
  w.fs = &fs;
  w.nb = j.nb();
  const Distribution pa = j.marginal_a();
  w.pa = pa.probs();
  for (std::size_t a = 0; a < j.na(); ++a) {
    if (pa[a] > 0.0) {
      w.support.push_back(a);
      w.rows.push_back(j.conditional_b_given_a(a).p);
    }
  }
  w.pb = j.marginal_b().probs();
  return w;
}

MeasureResult run_fmi(const JointDistribution& j, const ConvexFunctionSpec& fs, double tol,
                      bool subtract_center) {
  validate_convex_spec(fs);
  FmiWork w = make_fmi_work(j, fs);
  w.subtract_center = subtract_center;
  const OptReport rep = minimize_convex_on_simplex(
      [&w](const std::vector<double>& x) { return w.objective(x); },
      [&w](const std::vector<double>& x) { return w.gradient(x); }, w.nb, tol, 20000, &w.pb);
  MeasureResult out;
  out.value = std::max(0.0, rep.value);
  out.cert = {std::max(0.0, rep.value - rep.kkt_residual), out.value};
  out.iterations = rep.iterations;
  out.converged = rep.converged;
  return out;
}

}  // namespace

MeasureResult f_mutual_information(const JointDistribution& j, const ConvexFunctionSpec& fs,
                                   double tol) {
  return run_fmi(j, fs, tol, true);
}

MeasureResult f_mi_centered(const JointDistribution& j, const ConvexFunctionSpec& fs,
                            double tol) {
  return run_fmi(j, fs, tol, false);
}

double f_mi_plugin(const JointDistribution& j, const ConvexFunctionSpec& fs) {
  validate_convex_spec(fs);
  const Distribution pa = j.marginal_a(), pb = j.marginal_b();
  double total = 0.0;
  for (std::size_t a = 0; a < j.na(); ++a) {
    if (pa[a] <= 0.0) continue;
    total += pa[a] * f_divergence(Distribution(j.conditional_b_given_a(a).p), pb, fs);
  }
  return total;
}

namespace {

// g(b) = sum_a p(a) p(b|a)^alpha - p(b)^alpha, clamped at zero; tiny negative
// values are floating-point noise (the expression is a power-mean gap).
std::vector<double> tsallis_gap(const JointDistribution& j, double alpha) {
  const Distribution pa = j.marginal_a(), pb = j.marginal_b();
  std::vector<double> g(j.nb(), 0.0);
  for (std::size_t b = 0; b < j.nb(); ++b) {
    double acc = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] > 0.0) acc += pa[a] * std::pow(j.at(a, b) / pa[a], alpha);
    }
    g[b] = std::max(0.0, acc - std::pow(pb[b], alpha));
  }
  return g;
}

}  // namespace

double tsallis_mi(const JointDistribution& j, double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("tsallis_mi: order must be finite and exceed 1");
  }
  const std::vector<double> g = tsallis_gap(j, alpha);
  double root_sum = 0.0;
  for (double gb : g) root_sum += std::pow(gb, 1.0 / alpha);
  return std::pow(root_sum, alpha) / (alpha - 1.0);
}

Distribution tsallis_optimal_q(const JointDistribution& j, double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("tsallis_optimal_q: order must be finite and exceed 1");
  }
  const std::vector<double> g = tsallis_gap(j, alpha);
  std::vector<double> q(g.size(), 0.0);
  double total = 0.0;
  for (std::size_t b = 0; b < g.size(); ++b) {
    q[b] = std::pow(g[b], 1.0 / alpha);
    total += q[b];
  }
  if (total <= 0.0) return j.marginal_b();  // independent joint: any reference is optimal
  for (double& x : q) x /= total;
  return Distribution(std::move(q));
}

double chi_square_form_v2(const JointDistribution& j) {
  const Distribution pa = j.marginal_a(), pb = j.marginal_b();
  double total = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    if (pb[b] <= 0.0) continue;
    double chi = 0.0;
    for (std::size_t a = 0; a < j.na(); ++a) {
      if (pa[a] > 0.0) {
        const double cond = j.at(a, b) / pb[b];
        chi += cond * cond / pa[a];
      }
    }
    total += pb[b] * std::sqrt(std::max(0.0, chi - 1.0));
  }
  return total;
}

SemanticSecurityGap semantic_security_gap(const Channel& ch, const Distribution& p_ref,
                                          const Distribution& q_actual) {
  if (p_ref.size() != ch.na() || q_actual.size() != ch.na()) {
    throw std::invalid_argument("semantic_security_gap: input size mismatch");
  }
  for (std::size_t a = 0; a < ch.na(); ++a) {
    if (q_actual[a] > 0.0 && p_ref[a] <= 0.0) {
      throw std::invalid_argument(
          "semantic_security_gap: actual input must be supported on the reference");
    }
  }
  SemanticSecurityGap out;
  out.mi_bits = shannon_mi(JointDistribution::from_marginal_channel(q_actual, ch));
  out.bound =
      2.0 * kLog2E * v_infinity(JointDistribution::from_marginal_channel(p_ref, ch));
  return out;
}

}  // namespace vvcorr
