#include "vvcorr/quantum.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace vvcorr {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kEigRelFloor = 1e-15;

using Cplx = std::complex<double>;

Cmat identity(Eigen::Index d) { return Cmat::Identity(d, d); }

double herm_residual(const Cmat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::SelfAdjointEigenSolver<Cmat> eig_of(const Cmat& m) {
  Eigen::SelfAdjointEigenSolver<Cmat> es((m + m.adjoint()) * 0.5);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return es;
}

}  // namespace

Cmat kron(const Cmat& a, const Cmat& b) {
  Cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Cmat swap_operator(Eigen::Index d) {
  Cmat f = Cmat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  return f;
}

Cmat factor_swap(Eigen::Index d1, Eigen::Index d2) {
  Cmat p = Cmat::Zero(d1 * d2, d1 * d2);
  for (Eigen::Index a = 0; a < d1; ++a)
    for (Eigen::Index b = 0; b < d2; ++b) p(b * d1 + a, a * d2 + b) = 1.0;
  return p;
}

Cmat partial_trace_first(const Cmat& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  Cmat out = Cmat::Zero(d2, d2);
  for (Eigen::Index a = 0; a < d1; ++a) out += m.block(a * d2, a * d2, d2, d2);
  return out;
}

Cmat partial_trace_second(const Cmat& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  Cmat out = Cmat::Zero(d1, d1);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d1; ++j)
      for (Eigen::Index b = 0; b < d2; ++b) out(i, j) += m(i * d2 + b, j * d2 + b);
  return out;
}

Operator::Operator(Cmat m, std::vector<Eigen::Index> f) : mat(std::move(m)), factors(std::move(f)) {
  if (mat.rows() != mat.cols()) throw std::invalid_argument("Operator: matrix must be square");
  Eigen::Index prod = 1;
  for (Eigen::Index d : factors) {
    if (d < 1) throw std::invalid_argument("Operator: factor dimensions must be positive");
    prod *= d;
  }
  if (prod != mat.rows()) throw std::invalid_argument("Operator: factor product != dimension");
}

DensityMatrix::DensityMatrix(Cmat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
  if (herm_residual(m_) > kHermTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
  if (std::abs(m_.trace().real() - 1.0) > kHermTol || std::abs(m_.trace().imag()) > kHermTol)
    throw std::invalid_argument("DensityMatrix: trace != 1 within 1e-10");
  auto es = eig_of(m_);
  if (es.eigenvalues().minCoeff() < -kHermTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond 1e-10");
}

CQState::CQState(Distribution w, std::vector<Cmat> cond)
    : weights(std::move(w)), conditionals(std::move(cond)) {
  if (weights.size() != conditionals.size())
    throw std::invalid_argument("CQState: weight/conditional count mismatch");
  for (const auto& c : conditionals) {
    DensityMatrix check(c);  // validates Hermiticity, positivity, trace
    if (c.rows() != conditionals.front().rows())
      throw std::invalid_argument("CQState: conditional dimensions differ");
  }
}

DensityMatrix CQState::to_density() const {
  const Eigen::Index na = static_cast<Eigen::Index>(weights.size());
  const Eigen::Index db = conditionals.front().rows();
  Cmat out = Cmat::Zero(na * db, na * db);
  for (Eigen::Index a = 0; a < na; ++a)
    out.block(a * db, a * db, db, db) = weights[static_cast<std::size_t>(a)] * conditionals[static_cast<std::size_t>(a)];
  return DensityMatrix(out);
}

DensityMatrix classical_embedding(const JointDistribution& j) {
  const Eigen::Index na = static_cast<Eigen::Index>(j.na());
  const Eigen::Index nb = static_cast<Eigen::Index>(j.nb());
  Cmat out = Cmat::Zero(na * nb, na * nb);
  for (Eigen::Index a = 0; a < na; ++a)
    for (Eigen::Index b = 0; b < nb; ++b)
      out(a * nb + b, a * nb + b) = j.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  return DensityMatrix(out);
}

double schatten_norm(const Cmat& m, Alpha p) {
  Eigen::JacobiSVD<Cmat> svd(m);
  const auto& sv = svd.singularValues();
  if (p.is_infinity()) return sv.size() ? sv.maxCoeff() : 0.0;
  if (p.is_one()) return sv.sum();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p.value());
  return std::pow(acc, 1.0 / p.value());
}

Cmat hermitian_power(const Cmat& m, double exponent) {
  auto es = eig_of(m);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(std::abs(ev.maxCoeff()), std::abs(ev.minCoeff()));
  const double floor = scale * kEigRelFloor;
  Eigen::VectorXd powered(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    // Below the relative floor the eigenvalue is treated as off-support: the
    // powered value is 0 even for negative exponents (pseudo-inverse style).
    powered(i) = (ev(i) <= floor || scale == 0.0) ? 0.0 : std::pow(ev(i), exponent);
  }
  return es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Normalized exp(H) for Hermitian H, shifted for overflow safety. Weights are
// floored at 1e-12: otherwise an eigenvalue can drop under the pseudo-inverse
// cutoff of hermitian_power, the inverse-power weight collapses to 0 instead
// of diverging, and a line search can step through the barrier and report a
// value below the norm.
Cmat exp_density(const Cmat& h) {
  auto es = eig_of(h);
  const auto& ev = es.eigenvalues();
  const double shift = ev.maxCoeff();
  Eigen::VectorXd w(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    w(i) = std::max(std::exp(ev(i) - shift), 1e-12);
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Hermitian matrix from d*d real parameters: diagonal then (re, im) pairs.
Cmat unpack_hermitian(const double* p, Eigen::Index d) {
  Cmat h = Cmat::Zero(d, d);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < d; ++i) h(i, i) = p[k++];
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double re = p[k++];
      const double im = p[k++];
      h(i, j) = Cplx(re, im);
      h(j, i) = Cplx(re, -im);
    }
  return h;
}

}  // namespace

MeasureResult vv_norm_1alpha(const Cmat& m, Eigen::Index d_outer, Eigen::Index d_inner,
                             Alpha alpha, const VvNormOptions& opts) {
  if (d_outer < 1 || d_inner < 1 || m.rows() != d_outer * d_inner || m.cols() != m.rows())
    throw std::invalid_argument("vv_norm_1alpha: dimension mismatch");
  if (m.rows() > 64) throw std::invalid_argument("vv_norm_1alpha: total dimension budget is 64");
  if (alpha.is_infinity() || alpha.value() > 4.0)
    throw std::invalid_argument("vv_norm_1alpha: alpha must be finite in [1, 4]");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("vv_norm_1alpha: tol must be positive");

  const double trace_norm = schatten_norm(m, Alpha(1.0));
  const double lower = std::pow(double(d_inner), -alpha.inv_conjugate()) * trace_norm;
  if (alpha.is_one()) return MeasureResult{trace_norm, {trace_norm, trace_norm}, 0, true};

  const double m_scale = m.cwiseAbs().maxCoeff();
  const bool psd = herm_residual(m) <= 1e-12 * (1.0 + m_scale) &&
                   eig_of(m).eigenvalues().minCoeff() >= -1e-12 * (1.0 + m_scale);

  const double expo = -0.5 * alpha.inv_conjugate();
  const Cmat eye_inner = identity(d_inner);
  const std::size_t per_var = static_cast<std::size_t>(d_outer * d_outer);
  const std::size_t n_params = per_var * (psd ? 1 : 2);

  auto eval = [&](const std::vector<double>& x) {
    Cmat hs = unpack_hermitian(x.data(), d_outer);
    Cmat ws = hermitian_power(exp_density(hs), expo);
    Cmat wt = psd ? ws : hermitian_power(exp_density(unpack_hermitian(x.data() + per_var, d_outer)), expo);
    return schatten_norm(kron(ws, eye_inner) * m * kron(wt, eye_inner), alpha);
  };

  double best = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  int total_iters = 0;
  const double h = 1e-5;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    RngStream rng(opts.seed, static_cast<std::uint64_t>(restart));
    std::vector<double> x(n_params, 0.0);
    if (restart > 0)
      for (auto& xi : x) xi = 0.5 * rng.gaussian();
    double f = eval(x);
    bool stationary = false;
    int stalls = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
      ++total_iters;
      std::vector<double> g(n_params);
      double gnorm2 = 0.0;
      std::vector<double> probe = x;
      for (std::size_t k = 0; k < n_params; ++k) {
        probe[k] = x[k] + h;
        const double fp = eval(probe);
        probe[k] = x[k] - h;
        const double fm = eval(probe);
        probe[k] = x[k];
        g[k] = (fp - fm) / (2.0 * h);
        gnorm2 += g[k] * g[k];
      }
      if (std::sqrt(gnorm2) <= 1e-6 * (1.0 + std::abs(f))) {
        stationary = true;
        break;
      }
      double step = 1.0;
      double fnew = f;
      bool moved = false;
      while (step > 1e-12) {
        std::vector<double> cand = x;
        for (std::size_t k = 0; k < n_params; ++k) cand[k] -= step * g[k];
        fnew = eval(cand);
        if (fnew <= f - 1e-4 * step * gnorm2) {
          x = std::move(cand);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        stationary = true;  // no descent within line-search resolution
        break;
      }
      if (f - fnew <= 0.01 * opts.tol * (1.0 + std::abs(f))) {
        if (++stalls >= 5) {
          stationary = true;
          f = fnew;
          break;
        }
      } else {
        stalls = 0;
      }
      f = fnew;
    }
    if (f < best) best = f;
    any_converged = any_converged || stationary;
  }
  return MeasureResult{best, {std::min(lower, best), best}, total_iters, any_converged};
}

MeasureResult vv_norm_12(const Cmat& m, Eigen::Index d_outer, Eigen::Index d_inner, double tol) {
  if (d_outer < 1 || d_inner < 1 || m.rows() != d_outer * d_inner || m.cols() != m.rows())
    throw std::invalid_argument("vv_norm_12: dimension mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("vv_norm_12: tol must be positive");
  const Cmat eye_inner = identity(d_inner);
  const double trace_norm = schatten_norm(m, Alpha(1.0));
  const double lower = trace_norm / std::sqrt(double(d_inner));
  if (trace_norm == 0.0) return MeasureResult{0.0, {0.0, 0.0}, 0, true};

  Cmat sigma = identity(d_outer) / double(d_outer);
  Cmat tau = sigma;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iters = 0;
  for (int it = 0; it < 500; ++it) {
    ++iters;
    // sigma block: minimize tr[sigma^{-1/2} K] with K = tr_inner[M w_tau M^dag].
    Cmat wt = hermitian_power(tau, -0.5);
    Cmat k_sig = partial_trace_second(m * kron(wt, eye_inner) * m.adjoint(), d_outer, d_inner);
    Cmat k_pow = hermitian_power((k_sig + k_sig.adjoint()) * 0.5, 2.0 / 3.0);
    double tr_pow = k_pow.trace().real();
    if (tr_pow <= 0.0) return MeasureResult{0.0, {0.0, 0.0}, iters, true};
    sigma = k_pow / tr_pow;
    // tau block, same closed form on the adjoint side.
    Cmat ws = hermitian_power(sigma, -0.5);
    Cmat k_tau = partial_trace_second(m.adjoint() * kron(ws, eye_inner) * m, d_outer, d_inner);
    Cmat k_tau_pow = hermitian_power((k_tau + k_tau.adjoint()) * 0.5, 2.0 / 3.0);
    double tr_tau = k_tau_pow.trace().real();
    if (tr_tau <= 0.0) return MeasureResult{0.0, {0.0, 0.0}, iters, true};
    tau = k_tau_pow / tr_tau;
    const double block_value = std::sqrt(std::pow(tr_tau, 1.5));
    if (std::abs(value - block_value) <= tol * std::max(1.0, block_value)) {
      value = block_value;
      converged = true;
      break;
    }
    value = block_value;
  }
  return MeasureResult{value, {std::min(lower, value), value}, iters, converged};
}

MeasureResult v2_w2_quantum(const DensityMatrix& rho, Eigen::Index d_a, Eigen::Index d_b,
                            QuantumMeasure which, double tol) {
  if (d_a < 1 || d_b < 1 || rho.dim() != d_a * d_b)
    throw std::invalid_argument("v2_w2_quantum: dimension mismatch");
  if (d_a > 8 || d_b > 8) throw std::invalid_argument("v2_w2_quantum: factor dimension budget is 8");
  const Cmat& r = rho.mat();
  const Cmat p = factor_swap(d_a, d_b);
  const Cmat rho_b = partial_trace_first(r, d_a, d_b);
  Cmat shifted;
  if (which == QuantumMeasure::W) {
    shifted = p * r * p.adjoint() - kron(rho_b, identity(d_a) / double(d_a));
  } else {
    const Cmat rho_a = partial_trace_second(r, d_a, d_b);
    const Cmat w = kron(hermitian_power(rho_a, -0.25), identity(d_b));
    const Cmat on_ab = w * r * w - kron(hermitian_power(rho_a, 0.5), rho_b);
    shifted = p * on_ab * p.adjoint();
  }
  return vv_norm_12(shifted, d_b, d_a, tol);
}

double w1_quantum(const DensityMatrix& rho, Eigen::Index d_a, Eigen::Index d_b) {
  if (d_a < 1 || d_b < 1 || rho.dim() != d_a * d_b)
    throw std::invalid_argument("w1_quantum: dimension mismatch");
  const Cmat p = factor_swap(d_a, d_b);
  const Cmat rho_b = partial_trace_first(rho.mat(), d_a, d_b);
  const Cmat shifted = p * rho.mat() * p.adjoint() - kron(rho_b, identity(d_a) / double(d_a));
  return schatten_norm(shifted, Alpha(1.0));
}

Cmat haar_unitary(RngStream& rng, Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
  Cmat z(d, d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      z(i, j) = Cplx(rng.gaussian() * inv_sqrt2, rng.gaussian() * inv_sqrt2);
  Eigen::HouseholderQR<Cmat> qr(z);
  Cmat q = qr.householderQ();
  Cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    Cplx rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= (mag > 0.0) ? rii / mag : Cplx(1.0, 0.0);
  }
  return q;
}

Cmat random_pure_state(RngStream& rng, Eigen::Index d) {
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Cplx(rng.gaussian(), rng.gaussian());
  v /= v.norm();
  return v * v.adjoint();
}

Cmat random_density_matrix(RngStream& rng, Eigen::Index d) {
  Cmat g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  Cmat w = g * g.adjoint();
  return w / w.trace().real();
}

HaarMomentReport haar_second_moment_check(const Cmat& m, Eigen::Index d, std::size_t trials,
                                          std::uint64_t seed) {
  if (d < 1 || m.rows() != d * d || m.cols() != d * d)
    throw std::invalid_argument("haar_second_moment_check: m must act on d x d");
  if (trials == 0) throw std::invalid_argument("haar_second_moment_check: trials must be positive");
  const Cmat f = swap_operator(d);
  const double tr_m = m.trace().real();
  const double tr_mf = (m * f).trace().real();
  const double dd = double(d);
  const double denom = dd * (dd * dd - 1.0);
  HaarMomentReport rep;
  rep.a = (dd * tr_m - tr_mf) / denom;
  rep.b = (dd * tr_mf - tr_m) / denom;
  rep.trials = trials;
  rep.bound = 5.0 / std::sqrt(double(trials));
  Cmat acc = Cmat::Zero(d * d, d * d);
  SeededRng root(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = root.stream(t);
    Cmat u = haar_unitary(rng, d);
    Cmat uu = kron(u, u);
    acc += uu * m * uu.adjoint();
  }
  acc /= double(trials);
  const Cmat closed = rep.a * Cmat::Identity(d * d, d * d) + rep.b * f;
  rep.frobenius_deviation = (acc - closed).norm();
  return rep;
}

std::vector<Cmat> kraus_identity(Eigen::Index d) {
  return {identity(d)};
}

std::vector<Cmat> kraus_partial_trace(Eigen::Index d_a0, Eigen::Index d_c) {
  if (d_a0 < 1 || d_c < 1) throw std::invalid_argument("kraus_partial_trace: bad dimensions");
  std::vector<Cmat> out;
  for (Eigen::Index c = 0; c < d_c; ++c) {
    Cmat k = Cmat::Zero(d_a0, d_a0 * d_c);
    for (Eigen::Index i = 0; i < d_a0; ++i) k(i, i * d_c + c) = 1.0;
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<Cmat> kraus_compression(const Cmat& isometry) {
  const Eigen::Index d_a = isometry.rows();
  const Eigen::Index d_a0 = isometry.cols();
  if (d_a0 < 1 || d_a < d_a0) throw std::invalid_argument("kraus_compression: need a tall isometry");
  const Cmat gram = isometry.adjoint() * isometry;
  if ((gram - identity(d_a0)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("kraus_compression: columns are not orthonormal");
  return {std::sqrt(double(d_a) / double(d_a0)) * isometry.adjoint()};
}

namespace {

void check_kraus(const std::vector<Cmat>& kraus, Eigen::Index d_a, Eigen::Index d_a0) {
  if (kraus.empty()) throw std::invalid_argument("map needs at least one Kraus operator");
  for (const auto& k : kraus)
    if (k.rows() != d_a0 || k.cols() != d_a)
      throw std::invalid_argument("Kraus operator has wrong shape");
}

Cmat apply_map(const std::vector<Cmat>& kraus, const Cmat& x) {
  Cmat out = Cmat::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

}  // namespace

double gamma_of_map(const std::vector<Cmat>& kraus, Eigen::Index d_a, Eigen::Index d_a0) {
  check_kraus(kraus, d_a, d_a0);
  const Cmat at_mixed = apply_map(kraus, identity(d_a) / double(d_a));
  if ((at_mixed - identity(d_a0) / double(d_a0)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("gamma_of_map: map does not send I/d_A to I/d_A0 within 1e-10");
  const Cmat f_a = swap_operator(d_a);
  Cmat twisted = Cmat::Zero(d_a0 * d_a0, d_a0 * d_a0);
  for (const auto& ki : kraus)
    for (const auto& kj : kraus) {
      const Cmat kk = kron(ki, kj);
      twisted += kk * f_a * kk.adjoint();
    }
  const Cplx val = (swap_operator(d_a0) * twisted).trace();
  if (std::abs(val.imag()) > 1e-9) throw std::runtime_error("gamma_of_map: non-real trace");
  return val.real();
}

QuantumDecouplingReport decoupling_mc(const DensityMatrix& rho, Eigen::Index d_a,
                                      Eigen::Index d_b, const std::vector<Cmat>& kraus,
                                      Alpha alpha, std::size_t trials, std::uint64_t seed) {
  if (d_a < 1 || d_b < 1 || rho.dim() != d_a * d_b)
    throw std::invalid_argument("decoupling_mc: dimension mismatch");
  if (d_a > 6 || d_b > 4) throw std::invalid_argument("decoupling_mc: budget is d_A <= 6, d_B <= 4");
  if (alpha.is_infinity() || (alpha.value() != 1.0 && alpha.value() != 2.0))
    throw std::invalid_argument("decoupling_mc: alpha must be 1 or 2");
  if (trials == 0) throw std::invalid_argument("decoupling_mc: trials must be positive");
  const Eigen::Index d_a0 = kraus.front().rows();
  check_kraus(kraus, d_a, d_a0);

  QuantumDecouplingReport rep;
  rep.alpha = alpha.value();
  rep.gamma = gamma_of_map(kraus, d_a, d_a0);
  const double contraction =
      std::max(0.0, (rep.gamma - double(d_a) / double(d_a0)) / (double(d_a) * double(d_a) - 1.0));
  const double inv_conj = alpha.inv_conjugate();
  const double factor =
      std::pow(2.0, 2.0 / alpha.value() - 1.0) * (alpha.is_one() ? 1.0 : std::pow(contraction, inv_conj));

  const bool order2 = alpha.value() == 2.0;
  rep.w_source = order2 ? v2_w2_quantum(rho, d_a, d_b, QuantumMeasure::W).value
                        : w1_quantum(rho, d_a, d_b);
  rep.w_bound = factor * rep.w_source;

  const Cmat rho_a = partial_trace_second(rho.mat(), d_a, d_b);
  const Cmat rho_b = partial_trace_first(rho.mat(), d_a, d_b);
  rep.v_applicable =
      (rho_a - identity(d_a) / double(d_a)).cwiseAbs().maxCoeff() <= 1e-10;
  if (rep.v_applicable) {
    if (order2) {
      rep.v_source = v2_w2_quantum(rho, d_a, d_b, QuantumMeasure::V).value;
    } else {
      rep.v_source = schatten_norm(rho.mat() - kron(rho_a, rho_b), Alpha(1.0));
    }
    rep.v_bound = factor * std::pow(double(d_a0) / double(d_a), inv_conj) * rep.v_source;
  }

  const Cmat eye_b = identity(d_b);
  const Cmat p_out = factor_swap(d_a0, d_b);
  std::vector<Cmat> kraus_b;
  for (const auto& k : kraus) kraus_b.push_back(kron(k, eye_b));

  std::vector<double> w_vals, v_vals;
  SeededRng root(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = root.stream(t);
    const Cmat u = kron(haar_unitary(rng, d_a), eye_b);
    const Cmat rotated = u * rho.mat() * u.adjoint();
    const Cmat out = apply_map(kraus_b, rotated);
    const Cmat out_swapped = p_out * out * p_out.adjoint();
    const Cmat shifted_w = out_swapped - kron(rho_b, identity(d_a0) / double(d_a0));
    const double w_val =
        order2 ? vv_norm_12(shifted_w, d_b, d_a0).value : schatten_norm(shifted_w, Alpha(1.0));
    w_vals.push_back(w_val);
    if (rep.v_applicable) {
      const Cmat out_a0 = partial_trace_second(out, d_a0, d_b);
      double v_val;
      if (order2) {
        const Cmat w = kron(hermitian_power(out_a0, -0.25), eye_b);
        const Cmat shifted_v =
            p_out * (w * out * w - kron(hermitian_power(out_a0, 0.5), rho_b)) * p_out.adjoint();
        v_val = vv_norm_12(shifted_v, d_b, d_a0).value;
      } else {
        v_val = schatten_norm(out - kron(out_a0, rho_b), Alpha(1.0));
      }
      v_vals.push_back(v_val);
    }
  }
  rep.w_stats = summarize_trials(w_vals, seed, false);
  if (rep.v_applicable) rep.v_stats = summarize_trials(v_vals, seed, false);
  const auto& lead = rep.v_applicable ? rep.v_stats.values : rep.w_stats.values;
  const double lead_bound = rep.v_applicable ? rep.v_bound : rep.w_bound;
  for (std::size_t t = 0; t < lead.size(); ++t)
    rep.records.push_back(TrialRecord{seed, t, alpha.value(), static_cast<std::size_t>(d_a0),
                                      lead[t], lead_bound, lead_bound - lead[t]});
  return rep;
}

}  // namespace vvcorr
