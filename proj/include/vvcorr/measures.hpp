#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vvcorr/alpha.hpp"
#include "vvcorr/distribution.hpp"

namespace vvcorr {

// Two-sided enclosure of an optimized quantity. `upper` is always the value
// achieved by a feasible point; `lower` comes from a matching dual bound, so
// the enclosure is valid regardless of how well the solver converged.
struct Certificate {
  double lower = 0.0;
  double upper = 0.0;
  double gap() const { return upper - lower; }
};

struct MeasureResult {
  double value = 0.0;
  Certificate cert;
  int iterations = 0;
  bool converged = true;
};

// Push the joint through a post-processing channel on one side.
JointDistribution postprocess_a(const JointDistribution& j, const Channel& ch);
JointDistribution postprocess_b(const JointDistribution& j, const Channel& ch);

// ---- Shannon quantities (bits) ----
double shannon_entropy(const Distribution& p);
double shannon_mi(const JointDistribution& j);
double conditional_entropy_a_given_b(const JointDistribution& j);

// ---- Vector-valued-norm correlation measures ----
//
// v_alpha(A;B) = sum_b ( sum_a p(a) |p(b|a) - p(b)|^alpha )^(1/alpha)
// w_alpha(A|B) = sum_b p(b) ( sum_a |p(a|b) - 1/|A||^alpha )^(1/alpha)
//
// Rows with p(a) = 0 contribute 0; columns with p(b) = 0 contribute 0.
// alpha = infinity takes the inner max over the support.
double v_alpha(const JointDistribution& j, Alpha alpha);
double w_alpha(const JointDistribution& j, Alpha alpha);
// v at infinite order: sum_b max_{a: p(a)>0} |p(b|a) - p(b)|.
double v_infinity(const JointDistribution& j);

// ---- Renyi information quantities (bits, order >= 1) ----
// Sibson mutual information; order 1 falls back to Shannon MI.
double sibson_mi(const JointDistribution& j, Alpha alpha);
// Conditional Renyi entropy H_alpha(A|B) = -a' log2 sum_b (sum_a p(a,b)^alpha)^(1/alpha).
double cond_renyi_entropy(const JointDistribution& j, Alpha alpha);
// H~_alpha(A|B) = -log2 sum_{a,b} p(b) p(a|b)^alpha (finite order only).
double hayashi_cond_entropy(const JointDistribution& j, Alpha alpha);
// Renyi divergence of order alpha in bits; requires finite alpha >= 1.
double renyi_divergence(const Distribution& p, const Distribution& q, Alpha alpha);

// Csiszar mutual information min_q sum_a p(a) D_alpha(p(.|a) || q) for order
// in (1, 2]. Solved by the damped Augustin fixed point with a projected
// gradient fallback; the certificate encloses the optimum through the dual
// representation max_{q_AB: q_A = p_A} ( I(A;B)_q - a' D(q_{B|A} || p_{B|A} | p_A) ),
// so cert.lower <= optimum <= cert.upper holds for any iterate.
MeasureResult csiszar_mi(const JointDistribution& j, Alpha alpha, double tol,
                         int max_iterations = 10000);

// ---- f-divergence based mutual information ----
//
// The admissible class: convex non-affine f with f(1) = 0 and concave 1/f''.
// f, f', f'' are supplied by the caller and spot-checked on a 100-point grid.
struct ConvexFunctionSpec {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  std::string name;
};

ConvexFunctionSpec kl_function();                  // t log2 t
ConvexFunctionSpec tsallis_function(double alpha); // (t^alpha - t)/(alpha - 1)

double f_divergence(const Distribution& p, const Distribution& q, const ConvexFunctionSpec& fs);

// I_f(A;B) = min_q [ sum_a p(a) D_f(p(.|a)||q) - D_f(p_B||q) ].
MeasureResult f_mutual_information(const JointDistribution& j, const ConvexFunctionSpec& fs,
                                   double tol);
// min_q D_f(p_AB || p_A x q): the centered variant without the -D_f(p_B||q) term.
MeasureResult f_mi_centered(const JointDistribution& j, const ConvexFunctionSpec& fs, double tol);
// D_f(p_AB || p_A x p_B): the plug-in variant.
double f_mi_plugin(const JointDistribution& j, const ConvexFunctionSpec& fs);

// Closed form for the Tsallis family (alpha > 1):
// I = (1/(alpha-1)) ( sum_b g(b)^(1/alpha) )^alpha with
// g(b) = sum_a p(a) p(b|a)^alpha - p(b)^alpha. sqrt at alpha = 2 equals v_alpha.
double tsallis_mi(const JointDistribution& j, double alpha);
// Optimal reference distribution of the closed form, q*(b) proportional to g(b)^(1/alpha).
Distribution tsallis_optimal_q(const JointDistribution& j, double alpha);

// Chi-square representation of the order-2 measure:
// v_2 = sum_b p(b) sqrt( sum_a p(a|b)^2 / p(a) - 1 ).
double chi_square_form_v2(const JointDistribution& j);

// Shannon leakage of q_A x ch against the constant bound 2 log2(e) * v_infinity
// computed under the reference input p_ref. Requires supp(q) within supp(p_ref).
struct SemanticSecurityGap {
  double mi_bits = 0.0;
  double bound = 0.0;
  double slack() const { return bound - mi_bits; }
};
SemanticSecurityGap semantic_security_gap(const Channel& ch, const Distribution& p_ref,
                                          const Distribution& q_actual);

}  // namespace vvcorr
