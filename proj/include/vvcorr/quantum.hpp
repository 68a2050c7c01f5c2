#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vvcorr/alpha.hpp"
#include "vvcorr/binning.hpp"
#include "vvcorr/distribution.hpp"
#include "vvcorr/measures.hpp"
#include "vvcorr/rng.hpp"

namespace vvcorr {

using Cmat = Eigen::MatrixXcd;

// ---- Small tensor-algebra helpers ----
Cmat kron(const Cmat& a, const Cmat& b);
// Swap operator F on C^d x C^d: F |i>|j> = |j>|i>; tr[F (M x N)] = tr[MN].
Cmat swap_operator(Eigen::Index d);
// Permutation that reorders C^{d1} x C^{d2} into C^{d2} x C^{d1}.
Cmat factor_swap(Eigen::Index d1, Eigen::Index d2);
// Partial trace of an operator on C^{d1} x C^{d2} over the first or second factor.
Cmat partial_trace_first(const Cmat& m, Eigen::Index d1, Eigen::Index d2);
Cmat partial_trace_second(const Cmat& m, Eigen::Index d1, Eigen::Index d2);

// Square operator with recorded tensor factorization.
struct Operator {
  Cmat mat;
  std::vector<Eigen::Index> factors;
  Operator(Cmat m, std::vector<Eigen::Index> f);
};

// Hermitian PSD trace-1 matrix; residuals above 1e-10 are rejected.
class DensityMatrix {
 public:
  explicit DensityMatrix(Cmat m);
  const Cmat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Cmat m_;
};

// Classical-quantum state sum_a p(a) |a><a| x rho_a.
struct CQState {
  Distribution weights;
  std::vector<Cmat> conditionals;  // one density matrix per classical symbol
  CQState(Distribution w, std::vector<Cmat> cond);
  DensityMatrix to_density() const;  // block-diagonal embedding on A x B
};

// Fully classical joint as a diagonal density matrix on A x B.
DensityMatrix classical_embedding(const JointDistribution& j);

// Schatten p-norm; p = infinity gives the operator norm.
double schatten_norm(const Cmat& m, Alpha p);

// Hermitian-function helpers (eigenvalues floored at a relative 1e-15).
Cmat hermitian_power(const Cmat& m, double exponent);

// ---- Vector-valued (1, alpha) norm ----
//
// M lives on B x A with the OUTER factor B carrying the 1-norm:
//   ||M||_(1,a) = inf_{sigma,tau on B} || (sigma^(-1/(2a')) x I) M (tau^(-1/(2a')) x I) ||_a.
// Minimized over sigma = exp(H)/tr(exp(H)) by gradient descent with random
// restarts; Hermitian PSD inputs use the single-variable sigma = tau path.
// The returned value is an upper bound (any feasible pair is); the
// certificate's lower bound is d_A^(-1/a') ||M||_1.
struct VvNormOptions {
  double tol = 1e-7;
  int restarts = 8;
  int max_iter = 400;
  std::uint64_t seed = 2026;
};
MeasureResult vv_norm_1alpha(const Cmat& m, Eigen::Index d_outer, Eigen::Index d_inner,
                             Alpha alpha, const VvNormOptions& opts = {});

// Exact-block-minimization solver for the (1,2)-norm: alternating closed-form
// updates sigma <- K^(2/3)/tr(K^(2/3)) of the jointly convex two-trace form.
MeasureResult vv_norm_12(const Cmat& m, Eigen::Index d_outer, Eigen::Index d_inner,
                         double tol = 1e-10);

// Order-2 correlation measures of a bipartite state on A x B:
//   V: || shifted, marginal-weighted (rho_AB - rho_A x rho_B) ||_(1,2) on B x A
//   W: || rho_BA - rho_B x I_A/d_A ||_(1,2)
enum class QuantumMeasure { V, W };
MeasureResult v2_w2_quantum(const DensityMatrix& rho, Eigen::Index d_a, Eigen::Index d_b,
                            QuantumMeasure which, double tol = 1e-10);
// Order-1 companion: W_1 is the plain trace norm of the same shifted operator.
double w1_quantum(const DensityMatrix& rho, Eigen::Index d_a, Eigen::Index d_b);

// ---- Haar sampling and moments ----
Cmat haar_unitary(RngStream& rng, Eigen::Index d);
Cmat random_pure_state(RngStream& rng, Eigen::Index d);     // rank-1 density
Cmat random_density_matrix(RngStream& rng, Eigen::Index d); // full-rank Wishart

// E_U[(U x U) M (U x U)^dag] = a I + b F with a, b solved from tr M, tr MF.
struct HaarMomentReport {
  double a = 0.0;
  double b = 0.0;
  double frobenius_deviation = 0.0;  // MC average vs closed form
  double bound = 0.0;                // 5 / sqrt(trials)
  std::size_t trials = 0;
};
HaarMomentReport haar_second_moment_check(const Cmat& m, Eigen::Index d, std::size_t trials,
                                          std::uint64_t seed);

// ---- Decoupling by Haar conjugation followed by a fixed CP map ----

// Kraus families for the maps used in the contracts.
std::vector<Cmat> kraus_identity(Eigen::Index d);
// A = A0 x C, trace out C.
std::vector<Cmat> kraus_partial_trace(Eigen::Index d_a0, Eigen::Index d_c);
// (d_A/d_A0) S^dag (.) S for an isometry S: C^{d_A0} -> C^{d_A}.
std::vector<Cmat> kraus_compression(const Cmat& isometry);

// gamma = tr[F_{A0 A0'} Phi x Phi (F_{A A'})]; requires Phi(I/d_A) = I/d_A0
// within 1e-10 (checked).
double gamma_of_map(const std::vector<Cmat>& kraus, Eigen::Index d_a, Eigen::Index d_a0);

// MC certification of E_U[W_a(A0|B)] <= 2^(2/a-1) ((gamma - d_A/d_A0)/(d_A^2-1))^(1/a') W_a(A|B)
// for a in {1, 2}; the V-version bound (extra (d_A0/d_A)^(1/a') factor) is
// reported when rho_A is maximally mixed.
struct QuantumDecouplingReport {
  double alpha = 2.0;
  double gamma = 0.0;
  double w_source = 0.0;
  double w_bound = 0.0;
  BinningTrialStats w_stats;
  bool v_applicable = false;
  double v_source = 0.0;
  double v_bound = 0.0;
  BinningTrialStats v_stats;
  std::vector<TrialRecord> records;
};
QuantumDecouplingReport decoupling_mc(const DensityMatrix& rho, Eigen::Index d_a,
                                      Eigen::Index d_b, const std::vector<Cmat>& kraus,
                                      Alpha alpha, std::size_t trials, std::uint64_t seed);

}  // namespace vvcorr
