#pragma once

#include <cstdint>
#include <vector>

#include "vvcorr/distribution.hpp"

namespace vvcorr {

// Composition class of length-n sequences with prescribed symbol counts.
//
// counts[a] = n * base[a] must be a non-negative integer for n >= 2 (checked
// within 1e-9 and rounded); log2_size is the log-multinomial coefficient
// log2(n! / prod_a counts[a]!), evaluated in log space via lgamma.
//
// The degenerate n == 1 case stands for "one draw from base" (no composition
// constraint), so the implicit block source is the base distribution itself.
struct TypeClassSpec {
  Distribution base;
  int n = 1;
  std::vector<std::int64_t> counts;
  double log2_size = 0.0;

  static TypeClassSpec make(const Distribution& base, int n);
};

// log2(x!) via lgamma; exact to double rounding for the sizes used here.
double log2_factorial(double x);
// log2 of the multinomial coefficient n! / prod counts[i]!.
double log2_multinomial(std::int64_t n, const std::vector<std::int64_t>& counts);
// Binomial C(n, k) as a double (log-space internally).
double binomial(std::int64_t n, std::int64_t k);

// All count vectors (compositions) of n into `parts` non-negative parts, in
// lexicographic order. There are C(n + parts - 1, parts - 1) of them.
std::vector<std::vector<std::int64_t>> enumerate_compositions(int n, int parts);
double count_compositions(int n, int parts);

// Every type of block length n over the alphabet, one TypeClassSpec per
// composition, in the enumeration order of enumerate_compositions.
std::vector<TypeClassSpec> enumerate_types(std::size_t alphabet, int n);

// All sequences with the given symbol counts, each as a vector of symbol
// indices, in lexicographic order. Refuses to enumerate more than `limit`.
std::vector<std::vector<int>> enumerate_type_sequences(const std::vector<std::int64_t>& counts,
                                               std::size_t limit = 100000);

// Joint law of (A^n, B^n) where A^n is uniform on the composition class and
// B^n follows the memoryless channel: rows index the class sequences (in
// enumerate_type_sequences order), columns index B^n lexicographically.
// For n == 1 this is the ordinary joint base x channel.
JointDistribution type_class_uniform_joint(const TypeClassSpec& spec, const Channel& ch,
                                           std::size_t max_cells = 20000000);

}  // namespace vvcorr
