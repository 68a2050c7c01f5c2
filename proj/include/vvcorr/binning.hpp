#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vvcorr/alpha.hpp"
#include "vvcorr/distribution.hpp"
#include "vvcorr/rng.hpp"

namespace vvcorr {

// Surjective map from a source alphabet onto a bin alphabet with every bin
// holding exactly `regularity` preimages. Maps derived from linear hashes
// carry a tag but satisfy the same regularity invariant.
class BinningMap {
 public:
  BinningMap(std::vector<std::size_t> table, std::size_t bin_size, bool from_hash = false);

  static BinningMap identity(std::size_t n);
  static BinningMap constant(std::size_t n);

  std::size_t source_size() const { return table_.size(); }
  std::size_t bin_size() const { return bin_size_; }
  std::size_t regularity() const { return regularity_; }
  bool from_hash() const { return from_hash_; }
  std::size_t bin_of(std::size_t a) const { return table_[a]; }
  const std::vector<std::size_t>& table() const { return table_; }

 private:
  std::vector<std::size_t> table_;
  std::size_t bin_size_ = 0;
  std::size_t regularity_ = 0;
  bool from_hash_ = false;
};

// Uniformly random k-to-1 map: random permutation followed by integer
// division of the position by k.
BinningMap sample_regular_binning(RngStream& rng, std::size_t source_size, std::size_t k);

// Number of k-to-1 maps from n sources onto n/k labeled bins: n! / (k!)^(n/k).
double count_regular_binnings(std::size_t source_size, std::size_t k);

// Every k-to-1 map, in a fixed deterministic order. Throws if the count
// exceeds `limit`.
std::vector<BinningMap> enumerate_regular_binnings(std::size_t source_size, std::size_t k,
                                                   std::size_t limit = 100000);

// Uniformly random full-rank out_bits x k_bits matrix over GF(2), applied to
// the bit representation of the source index. The resulting map is exactly
// 2^(k_bits - out_bits)-regular (verified on construction).
BinningMap sample_linear_hash(RngStream& rng, std::size_t k_bits, std::size_t out_bits);

JointDistribution apply_binning(const JointDistribution& j, const BinningMap& f);
Distribution apply_binning(const Distribution& p, const BinningMap& f);

// One CSV row of a trial log.
struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  double alpha = 1.0;
  std::size_t k_or_ell = 0;
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;
};

struct BinningTrialStats {
  std::vector<double> values;
  double mean = 0.0;
  double stderror = 0.0;  // sample standard error of the mean; 0 on the exact path
  double min = 0.0;
  double max = 0.0;
  bool exact = false;  // true when computed by full enumeration of maps
  std::uint64_t seed = 0;
  std::size_t trials() const { return values.size(); }
};

BinningTrialStats summarize_trials(std::vector<double> values, std::uint64_t seed, bool exact);

// Decoupling by random regular binning:
//   E_f[W_a(A0|B)] <= 2^(2/a - 1) W_a(A|B)                      (any p_A)
//   E_f[V_a(A0;B)] <= 2^(2/a - 1) k^(-1/a') V_a(A;B)            (uniform p_A)
// The expectation is exact (full enumeration) whenever the number of k-to-1
// maps is at most 100000, and Monte-Carlo with `trials` samples otherwise.
struct DecouplingCheck {
  double alpha = 2.0;
  std::size_t k = 1;
  BinningTrialStats w_stats;
  double w_source = 0.0;
  double w_bound = 0.0;
  std::optional<BinningTrialStats> v_stats;  // present iff p_A is uniform
  double v_source = 0.0;
  double v_bound = 0.0;
  // max over trials of |V_a(A0;B) - bins^(1/a') W_a(A0|B)|, uniform p_A only
  double identity_max_dev = 0.0;
  std::vector<TrialRecord> records;
};
DecouplingCheck decoupling_bound_check(const JointDistribution& j, std::size_t k, Alpha alpha,
                                       std::size_t trials, std::uint64_t seed);

// Privacy amplification on k uniform bits, dropping `ell` of them per trial
// through a linear hash. Bounds checked:
//   V_a(A0;B)            <= 2^(2/a-1) 2^(-ell/a') V_a(A;B)        (mean + min)
//   ||p_{A0 B} - u x p_B||_1 <= 2^(-ell/a') (2^(I_a/a') + 1)
//   and at a = 2 the sharper 2^(-ell/2) 2^(I_2/2).
struct PrivacyAmpReport {
  std::size_t k_bits = 0;
  std::size_t ell = 0;
  double alpha = 2.0;
  double v_source = 0.0;
  double v_bound = 0.0;
  BinningTrialStats v_stats;
  BinningTrialStats trace_stats;
  double trace_bound_general = 0.0;
  double trace_bound_alpha2 = 0.0;  // NaN unless alpha == 2
  double min_v = 0.0;
  double identity_max_dev = 0.0;
  std::vector<TrialRecord> records;
};
PrivacyAmpReport privacy_amp_experiment(const JointDistribution& j, std::size_t ell, Alpha alpha,
                                        std::size_t trials, std::uint64_t seed);

// E_f[2^(-H~_a(A0|B))] against 2^(-H~_a(A|B)) + 1/|bins|^(a-1), over random
// (or exhaustively enumerated) k-to-1 maps.
struct HayashiComparison {
  double alpha = 2.0;
  std::size_t k = 1;
  BinningTrialStats lhs_stats;
  double rhs = 0.0;
  std::vector<TrialRecord> records;
};
HayashiComparison hayashi_comparison(const JointDistribution& j, std::size_t k, Alpha alpha,
                                     std::size_t trials, std::uint64_t seed);

// Exhaustive scan over single-bit-dropping maps of a uniform k-bit source;
// the best one satisfies I(A_S;B) <= ((k-1)/k) I(A;B).
struct ShearerResult {
  std::vector<std::size_t> best_subset;  // kept bit indices (bit 0 = least significant)
  std::size_t dropped_bit = 0;
  double best_mi = 0.0;
  double full_mi = 0.0;
  double bound = 0.0;
  std::vector<double> mi_by_dropped_bit;
};
ShearerResult shearer_search(const JointDistribution& j);

}  // namespace vvcorr
