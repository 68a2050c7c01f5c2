#include "vvcorr/binning.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "vvcorr/measures.hpp"
#include "vvcorr/types.hpp"

namespace vvcorr {

namespace {

bool is_uniform(const Distribution& p, double tol = 1e-9) {
  const double u = 1.0 / static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p[i] - u) > tol) return false;
  }
  return true;
}

std::size_t checked_log2(std::size_t n, const char* op) {
  std::size_t k = 0, v = 1;
  while (v < n) {
    v <<= 1;
    ++k;
  }
  if (v != n) throw std::invalid_argument(std::string(op) + ": alphabet size must be a power of 2");
  return k;
}

}  // namespace

BinningMap::BinningMap(std::vector<std::size_t> table, std::size_t bin_size, bool from_hash)
    : table_(std::move(table)), bin_size_(bin_size), from_hash_(from_hash) {
  if (bin_size_ == 0 || table_.empty() || table_.size() % bin_size_ != 0) {
    throw std::invalid_argument("BinningMap: bin count must divide source size");
  }
  regularity_ = table_.size() / bin_size_;
  std::vector<std::size_t> counts(bin_size_, 0);
  for (std::size_t bin : table_) {
    if (bin >= bin_size_) throw std::invalid_argument("BinningMap: bin index out of range");
    ++counts[bin];
  }
  for (std::size_t c : counts) {
    if (c != regularity_) {
      throw std::invalid_argument("BinningMap: map is not regular");
    }
  }
}

BinningMap BinningMap::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  std::iota(t.begin(), t.end(), std::size_t{0});
  return BinningMap(std::move(t), n);
}

BinningMap BinningMap::constant(std::size_t n) {
  return BinningMap(std::vector<std::size_t>(n, 0), 1);
}

BinningMap sample_regular_binning(RngStream& rng, std::size_t source_size, std::size_t k) {
  if (k == 0 || source_size == 0 || source_size % k != 0) {
    throw std::invalid_argument("sample_regular_binning: k must divide the source size");
  }
  std::vector<std::size_t> perm(source_size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  rng.shuffle(perm);
  std::vector<std::size_t> table(source_size);
  for (std::size_t pos = 0; pos < source_size; ++pos) table[perm[pos]] = pos / k;
  return BinningMap(std::move(table), source_size / k);
}

double count_regular_binnings(std::size_t source_size, std::size_t k) {
  if (k == 0 || source_size == 0 || source_size % k != 0) {
    throw std::invalid_argument("count_regular_binnings: k must divide the source size");
  }
  const double bins = static_cast<double>(source_size / k);
  const double log2_count = log2_factorial(static_cast<double>(source_size)) -
                            bins * log2_factorial(static_cast<double>(k));
  return std::round(std::exp2(log2_count));
}

namespace {

void enumerate_binnings_rec(std::vector<std::size_t>& remaining, std::size_t bin,
                            std::size_t bins, std::size_t k, std::vector<std::size_t>& table,
                            std::vector<BinningMap>& out) {
  if (bin == bins) {
    out.emplace_back(table, bins);
    return;
  }
  // Choose the k-subset of `remaining` mapped to this bin; recurse on the rest.
  const std::size_t m = remaining.size();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    std::vector<std::size_t> rest;
    rest.reserve(m - k);
    std::size_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (next < k && idx[next] == i) {
        table[remaining[i]] = bin;
        ++next;
      } else {
        rest.push_back(remaining[i]);
      }
    }
    enumerate_binnings_rec(rest, bin + 1, bins, k, table, out);
    // Advance the combination lexicographically.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

std::vector<BinningMap> enumerate_regular_binnings(std::size_t source_size, std::size_t k,
                                                   std::size_t limit) {
  const double count = count_regular_binnings(source_size, k);
  if (count > static_cast<double>(limit)) {
    throw std::invalid_argument("enumerate_regular_binnings: map count exceeds limit");
  }
  std::vector<BinningMap> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> remaining(source_size);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> table(source_size, 0);
  enumerate_binnings_rec(remaining, 0, source_size / k, k, table, out);
  return out;
}

namespace {

int gf2_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (std::size_t col = 0; col < 32; ++col) {
    const std::uint32_t mask = 1u << col;
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r] & mask) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && (rows[r] & mask)) rows[r] ^= rows[rank];
    }
    ++rank;
    if (static_cast<std::size_t>(rank) == rows.size()) break;
  }
  return rank;
}

}  // namespace

BinningMap sample_linear_hash(RngStream& rng, std::size_t k_bits, std::size_t out_bits) {
  if (k_bits == 0 || k_bits > 20 || out_bits > k_bits) {
    throw std::invalid_argument("sample_linear_hash: need out_bits <= k_bits <= 20");
  }
  const std::size_t n = std::size_t{1} << k_bits;
  if (out_bits == 0) {
    return BinningMap(std::vector<std::size_t>(n, 0), 1, true);
  }
  const std::uint32_t row_mask = (k_bits == 32) ? ~0u : ((1u << k_bits) - 1u);
  std::vector<std::uint32_t> rows(out_bits);
  while (true) {  // rejection sampling; full-rank probability is at least 0.288
    for (auto& r : rows) r = static_cast<std::uint32_t>(rng.next_u64()) & row_mask;
    if (gf2_rank(rows) == static_cast<int>(out_bits)) break;
  }
  std::vector<std::size_t> table(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t bin = 0;
    for (std::size_t r = 0; r < out_bits; ++r) {
      bin |= static_cast<std::size_t>(std::popcount(rows[r] & static_cast<std::uint32_t>(a)) & 1)
             << r;
    }
    table[a] = bin;
  }
  return BinningMap(std::move(table), std::size_t{1} << out_bits, true);
}

JointDistribution apply_binning(const JointDistribution& j, const BinningMap& f) {
  if (f.source_size() != j.na()) {
    throw std::invalid_argument("apply_binning: source size must match |A|");
  }
  std::vector<double> table(f.bin_size() * j.nb(), 0.0);
  for (std::size_t a = 0; a < j.na(); ++a) {
    const std::size_t bin = f.bin_of(a);
    for (std::size_t b = 0; b < j.nb(); ++b) table[bin * j.nb() + b] += j.at(a, b);
  }
  return JointDistribution(f.bin_size(), j.nb(), std::move(table));
}

Distribution apply_binning(const Distribution& p, const BinningMap& f) {
  if (f.source_size() != p.size()) {
    throw std::invalid_argument("apply_binning: source size must match |A|");
  }
  std::vector<double> out(f.bin_size(), 0.0);
  for (std::size_t a = 0; a < p.size(); ++a) out[f.bin_of(a)] += p[a];
  return Distribution(std::move(out));
}

BinningTrialStats summarize_trials(std::vector<double> values, std::uint64_t seed, bool exact) {
  if (values.empty()) throw std::invalid_argument("summarize_trials: no values");
  BinningTrialStats s;
  s.seed = seed;
  s.exact = exact;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  if (!exact && values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    s.stderror = std::sqrt(var / static_cast<double>(values.size()));
  }
  s.values = std::move(values);
  return s;
}

namespace {

constexpr std::size_t kExhaustiveLimit = 100000;

// Visit each map's binned joint: exhaustive when the map count allows,
// sampled with per-trial split streams otherwise.
template <typename Fn>
void for_each_binned(const JointDistribution& j, std::size_t k, std::size_t trials,
                     std::uint64_t seed, bool* exact, Fn&& visit) {
  if (count_regular_binnings(j.na(), k) <= static_cast<double>(kExhaustiveLimit)) {
    *exact = true;
    for (const BinningMap& f : enumerate_regular_binnings(j.na(), k)) {
      visit(apply_binning(j, f));
    }
  } else {
    *exact = false;
    if (trials == 0) throw std::invalid_argument("binning experiment: trials must be positive");
    SeededRng root(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream stream = root.stream(t);
      visit(apply_binning(j, sample_regular_binning(stream, j.na(), k)));
    }
  }
}

double pow2(double x) { return std::exp2(x); }

}  // namespace

DecouplingCheck decoupling_bound_check(const JointDistribution& j, std::size_t k, Alpha alpha,
                                       std::size_t trials, std::uint64_t seed) {
  if (alpha.is_infinity() || alpha.value() < 1.0 || alpha.value() > 2.0) {
    throw std::invalid_argument("decoupling_bound_check: order must lie in [1, 2]");
  }
  if (k == 0 || j.na() % k != 0) {
    throw std::invalid_argument("decoupling_bound_check: k must divide |A|");
  }
  const double al = alpha.value();
  const double factor = pow2(2.0 / al - 1.0);
  const std::size_t bins = j.na() / k;
  const bool uniform_a = is_uniform(j.marginal_a());

  DecouplingCheck out;
  out.alpha = al;
  out.k = k;
  out.w_source = w_alpha(j, alpha);
  out.w_bound = factor * out.w_source;
  if (uniform_a) {
    out.v_source = v_alpha(j, alpha);
    out.v_bound = factor * pow2(-alpha.inv_conjugate() * std::log2(static_cast<double>(k))) *
                  out.v_source;
  }

  std::vector<double> w_values, v_values;
  bool exact = false;
  const double bin_scale = pow2(alpha.inv_conjugate() * std::log2(static_cast<double>(bins)));
  for_each_binned(j, k, trials, seed, &exact, [&](const JointDistribution& binned) {
    const double w = w_alpha(binned, alpha);
    w_values.push_back(w);
    if (uniform_a) {
      const double v = v_alpha(binned, alpha);
      v_values.push_back(v);
      out.identity_max_dev = std::max(out.identity_max_dev, std::abs(v - bin_scale * w));
    }
  });

  out.w_stats = summarize_trials(std::move(w_values), seed, exact);
  if (uniform_a) out.v_stats = summarize_trials(std::move(v_values), seed, exact);

  const BinningTrialStats& lead = uniform_a ? *out.v_stats : out.w_stats;
  const double lead_bound = uniform_a ? out.v_bound : out.w_bound;
  for (std::size_t t = 0; t < lead.values.size(); ++t) {
    out.records.push_back({seed, t, al, k, lead.values[t], lead_bound,
                           lead_bound - lead.values[t]});
  }
  return out;
}

PrivacyAmpReport privacy_amp_experiment(const JointDistribution& j, std::size_t ell, Alpha alpha,
                                        std::size_t trials, std::uint64_t seed) {
  if (alpha.is_infinity() || alpha.value() < 1.0 || alpha.value() > 2.0) {
    throw std::invalid_argument("privacy_amp_experiment: order must lie in [1, 2]");
  }
  const std::size_t k_bits = checked_log2(j.na(), "privacy_amp_experiment");
  if (k_bits > 12) {
    throw std::invalid_argument("privacy_amp_experiment: need at most 12 key bits");
  }
  if (ell > k_bits) {
    throw std::invalid_argument("privacy_amp_experiment: cannot drop more bits than the key has");
  }
  if (!is_uniform(j.marginal_a())) {
    throw std::invalid_argument("privacy_amp_experiment: key must be uniform");
  }
  if (trials == 0) throw std::invalid_argument("privacy_amp_experiment: trials must be positive");

  const double al = alpha.value();
  const double inv_conj = alpha.inv_conjugate();  // 1/a'
  PrivacyAmpReport out;
  out.k_bits = k_bits;
  out.ell = ell;
  out.alpha = al;
  out.v_source = v_alpha(j, alpha);
  out.v_bound = pow2(2.0 / al - 1.0) * pow2(-static_cast<double>(ell) * inv_conj) * out.v_source;

  const double i_alpha = sibson_mi(j, alpha);
  out.trace_bound_general =
      pow2(-static_cast<double>(ell) * inv_conj) * (pow2(inv_conj * i_alpha) + 1.0);
  out.trace_bound_alpha2 = (al == 2.0)
                               ? pow2(-static_cast<double>(ell) / 2.0) * pow2(0.5 * i_alpha)
                               : std::numeric_limits<double>::quiet_NaN();

  const std::size_t out_bits = k_bits - ell;
  const std::size_t bins = std::size_t{1} << out_bits;
  const double bin_scale = pow2(inv_conj * std::log2(static_cast<double>(bins)));
  const Distribution pb = j.marginal_b();

  std::vector<double> v_values, trace_values;
  v_values.reserve(trials);
  trace_values.reserve(trials);
  SeededRng root(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream stream = root.stream(t);
    const BinningMap f = sample_linear_hash(stream, k_bits, out_bits);
    const JointDistribution binned = apply_binning(j, f);
    const double v = v_alpha(binned, alpha);
    const double w = w_alpha(binned, alpha);
    out.identity_max_dev = std::max(out.identity_max_dev, std::abs(v - bin_scale * w));
    double trace = 0.0;
    for (std::size_t a0 = 0; a0 < bins; ++a0) {
      for (std::size_t b = 0; b < j.nb(); ++b) {
        trace += std::abs(binned.at(a0, b) - pb[b] / static_cast<double>(bins));
      }
    }
    v_values.push_back(v);
    trace_values.push_back(trace);
    out.records.push_back({seed, t, al, ell, v, out.v_bound, out.v_bound - v});
  }
  out.v_stats = summarize_trials(std::move(v_values), seed, false);
  out.trace_stats = summarize_trials(std::move(trace_values), seed, false);
  out.min_v = out.v_stats.min;
  return out;
}

HayashiComparison hayashi_comparison(const JointDistribution& j, std::size_t k, Alpha alpha,
                                     std::size_t trials, std::uint64_t seed) {
  if (alpha.is_infinity() || alpha.value() <= 1.0 || alpha.value() > 2.0) {
    throw std::invalid_argument("hayashi_comparison: order must lie in (1, 2]");
  }
  if (k == 0 || j.na() % k != 0) {
    throw std::invalid_argument("hayashi_comparison: k must divide |A|");
  }
  const double al = alpha.value();
  const std::size_t bins = j.na() / k;
  HayashiComparison out;
  out.alpha = al;
  out.k = k;
  out.rhs = pow2(-hayashi_cond_entropy(j, alpha)) +
            pow2(-(al - 1.0) * std::log2(static_cast<double>(bins)));

  bool exact = false;
  std::vector<double> values;
  for_each_binned(j, k, trials, seed, &exact, [&](const JointDistribution& binned) {
    values.push_back(pow2(-hayashi_cond_entropy(binned, alpha)));
  });
  out.lhs_stats = summarize_trials(std::move(values), seed, exact);
  for (std::size_t t = 0; t < out.lhs_stats.values.size(); ++t) {
    out.records.push_back({seed, t, al, k, out.lhs_stats.values[t], out.rhs,
                           out.rhs - out.lhs_stats.values[t]});
  }
  return out;
}

ShearerResult shearer_search(const JointDistribution& j) {
  const std::size_t k_bits = checked_log2(j.na(), "shearer_search");
  if (k_bits == 0 || k_bits > 12) {
    throw std::invalid_argument("shearer_search: need between 1 and 12 key bits");
  }
  if (!is_uniform(j.marginal_a())) {
    throw std::invalid_argument("shearer_search: key must be uniform");
  }
  ShearerResult out;
  out.full_mi = shannon_mi(j);
  out.bound = (static_cast<double>(k_bits) - 1.0) / static_cast<double>(k_bits) * out.full_mi;
  out.best_mi = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < k_bits; ++d) {
    std::vector<std::size_t> table(j.na());
    const std::size_t low_mask = (std::size_t{1} << d) - 1;
    for (std::size_t a = 0; a < j.na(); ++a) {
      table[a] = ((a >> (d + 1)) << d) | (a & low_mask);
    }
    const BinningMap drop(std::move(table), j.na() / 2);
    const double mi = shannon_mi(apply_binning(j, drop));
    out.mi_by_dropped_bit.push_back(mi);
    if (mi < out.best_mi) {
      out.best_mi = mi;
      out.dropped_bit = d;
    }
  }
  out.best_subset.clear();
  for (std::size_t i = 0; i < k_bits; ++i) {
    if (i != out.dropped_bit) out.best_subset.push_back(i);
  }
  return out;
}

}  // namespace vvcorr
