#pragma once

#include <functional>
#include <vector>

#include "vvcorr/distribution.hpp"

namespace vvcorr {

// Euclidean projection onto the probability simplex (sort-based pivot rule).
std::vector<double> project_to_simplex(std::vector<double> v);

struct OptReport {
  std::vector<double> x;
  double value = 0.0;
  // Certified optimality gap for convex objectives: the Frank-Wolfe gap
  // g.x - min_vertex g, summed per simplex block. value - kkt_residual is a
  // lower bound on the optimum.
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;
using Gradient = std::function<std::vector<double>(const std::vector<double>&)>;

// Projected gradient descent with Armijo backtracking on one simplex
// (blocks == 1) or a product of `blocks` simplices of equal dimension,
// stacked contiguously. Stops when the Frank-Wolfe gap drops below tol.
// NaN from the objective or gradient is an input error. Iterates are kept
// strictly positive (floor 1e-12) so perspective-type objectives stay finite.
OptReport minimize_convex_on_simplex(const Objective& f, const Gradient& grad, std::size_t dim,
                                     double tol, int max_iter = 20000,
                                     const std::vector<double>* init = nullptr,
                                     std::size_t blocks = 1);

struct AlphaOptimum {
  double alpha = 1.0;
  double value = 0.0;
  int evaluations = 0;
};

// Maximize a continuous function of the order parameter on [lo, hi]: coarse
// 41-point grid scan followed by golden-section refinement around the best
// grid point, to `tol` accuracy in the argument.
AlphaOptimum maximize_over_alpha(const std::function<double(double)>& g, double lo = 1.0,
                                 double hi = 2.0, double tol = 1e-6);

struct ExchangeCheck {
  // max over alpha in [1,2] of (1/a')(H(A) - csiszar_mi - rate).
  double lhs = 0.0;
  double lhs_alpha = 1.0;
  // min over channels q(b|a) of D(q||p|p_A) + max(0, (H(A|B)_q - rate)/2),
  // the exchanged (min-max) order of the same program.
  double rhs = 0.0;
  std::vector<double> rhs_channel;  // row-major q(b|a) attaining rhs
};

// Certifies that the order of optimization can be exchanged: the alpha-route
// maximum and the channel-route minimum agree within 10*tol for any joint.
ExchangeCheck minimax_exchange_check(const JointDistribution& j, double rate, double tol);

}  // namespace vvcorr
