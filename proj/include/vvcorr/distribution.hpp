#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vvcorr/rng.hpp"

namespace vvcorr {

// Probability vector: entries >= 0, total within 1e-12 of 1.
class Distribution {
 public:
  explicit Distribution(std::vector<double> p);

  static Distribution uniform(std::size_t n);
  static Distribution point_mass(std::size_t n, std::size_t at);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

 private:
  std::vector<double> p_;
};

// Row-stochastic matrix of conditional laws p(b|a); every row sums to 1
// within 1e-12.
class Channel {
 public:
  Channel(std::size_t na, std::size_t nb, std::vector<double> rows);

  static Channel identity(std::size_t n);
  // Symbol erasure: input passes with probability 1-eps, the last output
  // symbol (index na) is the erasure flag. Output alphabet has na+1 symbols.
  static Channel erasure(std::size_t na, double eps);
  static Channel binary_symmetric(double crossover);

  std::size_t na() const { return na_; }
  std::size_t nb() const { return nb_; }
  double at(std::size_t a, std::size_t b) const { return t_[a * nb_ + b]; }
  std::vector<double> row(std::size_t a) const;

 private:
  std::size_t na_, nb_;
  std::vector<double> t_;
};

// Conditional law extracted from a joint table. `degenerate` marks rows whose
// conditioning event has probability zero; such rows are reported uniform and
// every measure treats them as contributing zero.
struct ConditionalRow {
  std::vector<double> p;
  bool degenerate = false;
};

// Joint probability table over A x B, row-major; entries >= 0, total within
// 1e-12 of 1.
class JointDistribution {
 public:
  JointDistribution(std::size_t na, std::size_t nb, std::vector<double> table);

  static JointDistribution from_marginal_channel(const Distribution& pa, const Channel& ch);
  static JointDistribution product(const Distribution& pa, const Distribution& pb);

  std::size_t na() const { return na_; }
  std::size_t nb() const { return nb_; }
  double at(std::size_t a, std::size_t b) const { return t_[a * nb_ + b]; }
  const std::vector<double>& table() const { return t_; }

  Distribution marginal_a() const;
  Distribution marginal_b() const;
  ConditionalRow conditional_b_given_a(std::size_t a) const;
  ConditionalRow conditional_a_given_b(std::size_t b) const;
  // Channel view of p(b|a); zero-probability rows become uniform and are
  // flagged in `degenerate_rows`.
  Channel channel_b_given_a(std::vector<std::size_t>* degenerate_rows = nullptr) const;

  JointDistribution swapped() const;

 private:
  std::size_t na_, nb_;
  std::vector<double> t_;
};

// Text format: first line "<|A|> <|B|>", then |A| lines of |B| probabilities.
// Rejects negative entries, malformed numbers, and totals off by more than 1e-9.
JointDistribution parse_joint(std::istream& in);
JointDistribution parse_joint_string(const std::string& text);
JointDistribution load_joint(const std::string& path);
std::string format_joint(const JointDistribution& j);
void save_joint(const JointDistribution& j, const std::string& path);

// n-fold i.i.d. product of a joint, as a joint over A^n x B^n. Refuses to
// build tables with more than `max_cells` entries.
JointDistribution iid_extension(const JointDistribution& j, int n, std::size_t max_cells = 20000000);

// Dirichlet(concentration) joint with every entry floored at 1e-9 (smoothed
// and renormalized), so conditionals are well defined everywhere.
JointDistribution random_joint(RngStream& rng, std::size_t na, std::size_t nb,
                               double concentration = 1.0);
Channel random_channel(RngStream& rng, std::size_t na, std::size_t nb,
                       double concentration = 1.0);
Distribution random_distribution(RngStream& rng, std::size_t n, double concentration = 1.0);

}  // namespace vvcorr
