#pragma once

#include <cstdint>
#include <vector>

#include "vvcorr/alpha.hpp"
#include "vvcorr/binning.hpp"
#include "vvcorr/distribution.hpp"
#include "vvcorr/types.hpp"

namespace vvcorr {

// Exact per-symbol Sibson mutual information (1/n) I_a(A^n;B^n) when A^n is
// uniform on the type class and B^n comes out of the memoryless channel.
// Computed by grouping output sequences by type and enumerating joint count
// matrices, all in log space; no sampling is involved.
double block_sibson_mi(const TypeClassSpec& spec, const Channel& ch, Alpha alpha);

struct BlockMIRecord {
  int n = 1;
  double per_symbol_mi = 0.0;  // (1/n) I_a(A^n;B^n)
  double limit = 0.0;          // single-letter constrained-reference value
  double deviation = 0.0;      // |per_symbol_mi - limit|
};
// One record per block length, sharing the base type scaled to each n.
std::vector<BlockMIRecord> block_mi_ladder(const Distribution& base, const Channel& ch,
                                           Alpha alpha, const std::vector<int>& ns,
                                           double tol = 1e-8);

// Secrecy exponent of random regular binning at rate R:
//   E(a, R) = (1/a') (H(A) - I_a^c(A;B) - R),   a in (1, 2].
double binning_exponent(const JointDistribution& j, double rate, Alpha alpha,
                        double tol = 1e-8);

struct OptimizedExponent {
  double alpha_star = 1.0;
  double value = 0.0;
  int evaluations = 0;
};
// max over a in [1, 2] of binning_exponent (the order-1 endpoint contributes 0).
OptimizedExponent optimized_exponent(const JointDistribution& j, double rate, double tol);

// E(a, R) on a uniform alpha grid plus the optimized pair, for plotting.
struct ExponentCurve {
  double rate = 0.0;
  std::vector<double> alphas;
  std::vector<double> values;
  OptimizedExponent best;
};
ExponentCurve exponent_curve(const JointDistribution& j, double rate, std::size_t grid_points,
                             double tol);

// Finite-n certification of the pre-asymptotic decoupling chain
//   E_f[V_a(A0;B^n)] <= 2^(2/a-1) k^(-1/a') (2^((1/a') I_a(A^n;B^n)) + 1)
// with the block MI computed exactly; the expectation runs over regular
// k-to-1 binnings of the type class (exhaustive when feasible, else MC).
struct FiniteNBinningReport {
  int n = 1;
  std::size_t k = 1;
  double alpha = 2.0;
  double block_mi_total = 0.0;  // I_a(A^n;B^n), total bits
  double rhs = 0.0;
  BinningTrialStats v_stats;
  std::vector<TrialRecord> records;
};
FiniteNBinningReport finite_n_binning_certify(const TypeClassSpec& spec, const Channel& ch,
                                              std::size_t k, Alpha alpha, std::size_t trials,
                                              std::uint64_t seed);

// Wiretap secrecy exponent (1/a')(I(X;Y) - I_a^c(X;Z) - R), a in (1, 2].
double wiretap_exponent(const Distribution& px, const Channel& ch_y, const Channel& ch_z,
                        double rate, Alpha alpha, double tol = 1e-8);

// Resolvability exponent max over a in [1,2] of (1/a')(R' - I_a(A;B)) with
// Sibson MI, evaluated both in the alpha parameterization and through the
// change of variable 1/a' = lambda/2 (lambda in [0,1]); the two agree exactly.
struct ResolvabilityExponent {
  double value = 0.0;
  double alpha_star = 1.0;
  double lambda_value = 0.0;
  double lambda_star = 0.0;
};
ResolvabilityExponent resolvability_exponent_sibson(const JointDistribution& j, double r_prime,
                                                    double tol = 1e-6);

// Integer factorization |T_n(p_X)| = k1 * k2 * k3 with rates log2(ki)/n,
// subject to the decodability and secrecy constraints
//   R3 > H(X|Y)   and   R1 + R3 < H(X) - I_a^c(X;Z).
struct RateSplit {
  std::size_t k1 = 1, k2 = 1, k3 = 1;
  int n = 1;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double h_x_given_y = 0.0;
  double secrecy_budget = 0.0;  // H(X) - I_a^c(X;Z)
};
// Searches all factorizations and returns the admissible split with the
// largest message rate R1 (ties: larger k3). Throws a configuration error
// naming the nearest candidate when none is admissible.
RateSplit find_rate_split(const Distribution& px, const Channel& ch_y, const Channel& ch_z,
                          const TypeClassSpec& spec, Alpha alpha, double tol = 1e-8);

// Operational wiretap simulation on one type class: random bijections from
// the class onto (message, padding, public bin) triples; exact conditional
// leakage V_a(M;Z^n|U=u) averaged over u and exact ML decoding error of X
// from (U, Y^n) per trial.
struct WiretapSimReport {
  int n = 1;
  RateSplit split;
  double alpha = 2.0;
  double block_mi_z_total = 0.0;  // I_a(X^n;Z^n), total bits
  double leakage_bound = 0.0;     // 2^(2(2/a-1)) k2^(-1/a') (2^((1/a') I_a) + 1)
  BinningTrialStats leakage_stats;
  BinningTrialStats error_stats;
  // Fraction of trials where both leakage and error are at most 3x their
  // trial means (Markov + union bound guarantees > 1/3 in expectation).
  double joint_success_fraction = 0.0;
  std::vector<TrialRecord> records;
};
WiretapSimReport wiretap_minicode_sim(const Distribution& px, const Channel& ch_y,
                                      const Channel& ch_z, const TypeClassSpec& spec,
                                      const RateSplit& split, Alpha alpha, std::size_t trials,
                                      std::uint64_t seed);

}  // namespace vvcorr
