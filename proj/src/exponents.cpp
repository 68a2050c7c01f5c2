#include "vvcorr/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vvcorr/measures.hpp"
#include "vvcorr/simplex_opt.hpp"

namespace vvcorr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_sum_exp2(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp2(x - m);
  return m + std::log2(acc);
}

void require_secrecy_order(const Alpha& alpha, const char* op) {
  if (alpha.is_infinity() || alpha.value() <= 1.0 || alpha.value() > 2.0) {
    throw std::invalid_argument(std::string(op) + ": order must lie in (1, 2]");
  }
}

// Accumulate, over joint count matrices N with the given row sums and column
// sums, the per-matrix weight
//   sum_ab ( -log2(N_ab!) + al * N_ab * log2 p(b|a) )
// by row-wise recursion with column-remainder pruning.
void count_matrices_rec(const std::vector<std::int64_t>& row_sums,
                        const std::vector<std::vector<double>>& log2p, std::size_t a,
                        std::vector<std::int64_t>& col_rem, double acc, double al,
                        std::vector<double>& terms) {
  const std::size_t na = row_sums.size(), nb = col_rem.size();
  if (a + 1 == na) {
    // Final row forced to the column remainders.
    double term = acc;
    for (std::size_t b = 0; b < nb; ++b) {
      const std::int64_t cnt = col_rem[b];
      if (cnt == 0) continue;
      if (log2p[a][b] == kNegInf) return;
      term += -log2_factorial(static_cast<double>(cnt)) +
              al * static_cast<double>(cnt) * log2p[a][b];
    }
    terms.push_back(term);
    return;
  }
  // Enumerate this row's composition within the column remainders.
  std::vector<std::int64_t> row(nb, 0);
  const std::int64_t budget = row_sums[a];
  // Recursive composition with pruning via explicit stack over cells.
  std::function<void(std::size_t, std::int64_t, double)> cell =
      [&](std::size_t b, std::int64_t left, double row_acc) {
        if (b + 1 == nb) {
          if (left > col_rem[b]) return;
          double add = 0.0;
          if (left > 0) {
            if (log2p[a][b] == kNegInf) return;
            add = -log2_factorial(static_cast<double>(left)) +
                  al * static_cast<double>(left) * log2p[a][b];
          }
          col_rem[b] -= left;
          count_matrices_rec(row_sums, log2p, a + 1, col_rem, row_acc + add, al, terms);
          col_rem[b] += left;
          return;
        }
        const std::int64_t top = std::min(left, col_rem[b]);
        for (std::int64_t c = 0; c <= top; ++c) {
          double add = 0.0;
          if (c > 0) {
            if (log2p[a][b] == kNegInf) break;
            add = -log2_factorial(static_cast<double>(c)) +
                  al * static_cast<double>(c) * log2p[a][b];
          }
          col_rem[b] -= c;
          cell(b + 1, left - c, row_acc + add);
          col_rem[b] += c;
        }
      };
  cell(0, budget, acc);
}

}  // namespace

double block_sibson_mi(const TypeClassSpec& spec, const Channel& ch, Alpha alpha) {
  if (alpha.is_infinity() || alpha.value() <= 1.0) {
    throw std::invalid_argument("block_sibson_mi: order must be finite and exceed 1");
  }
  if (ch.na() != spec.base.size()) {
    throw std::invalid_argument("block_sibson_mi: channel input size mismatch");
  }
  if (spec.n == 1) {
    return sibson_mi(JointDistribution::from_marginal_channel(spec.base, ch), alpha);
  }
  const std::size_t na = ch.na(), nb = ch.nb();
  if (na > 4 || nb > 4 || spec.n > 40) {
    throw std::invalid_argument("block_sibson_mi: enumeration budget exceeded");
  }
  const double al = alpha.value();
  std::vector<std::vector<double>> log2p(na, std::vector<double>(nb, kNegInf));
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (ch.at(a, b) > 0.0) log2p[a][b] = std::log2(ch.at(a, b));
    }
  }

  std::vector<double> outer;
  for (auto& m : enumerate_compositions(spec.n, static_cast<int>(nb))) {
    double const_m = 0.0;  // sum_b log2(m_b!)
    for (std::int64_t mb : m) const_m += log2_factorial(static_cast<double>(mb));
    std::vector<double> terms;
    std::vector<std::int64_t> col_rem = m;
    count_matrices_rec(spec.counts, log2p, 0, col_rem, 0.0, al, terms);
    const double log2_s = const_m + log2_sum_exp2(terms);
    if (log2_s == kNegInf) continue;
    outer.push_back(log2_multinomial(spec.n, m) + (log2_s - spec.log2_size) / al);
  }
  const double total = alpha.conjugate() * log2_sum_exp2(outer);
  return total / static_cast<double>(spec.n);
}

std::vector<BlockMIRecord> block_mi_ladder(const Distribution& base, const Channel& ch,
                                           Alpha alpha, const std::vector<int>& ns,
                                           double tol) {
  const double limit =
      csiszar_mi(JointDistribution::from_marginal_channel(base, ch), alpha, tol).value;
  std::vector<BlockMIRecord> out;
  for (int n : ns) {
    const TypeClassSpec spec = TypeClassSpec::make(base, n);
    BlockMIRecord rec;
    rec.n = n;
    rec.per_symbol_mi = block_sibson_mi(spec, ch, alpha);
    rec.limit = limit;
    rec.deviation = std::abs(rec.per_symbol_mi - limit);
    out.push_back(rec);
  }
  return out;
}

double binning_exponent(const JointDistribution& j, double rate, Alpha alpha, double tol) {
  require_secrecy_order(alpha, "binning_exponent");
  const double h = shannon_entropy(j.marginal_a());
  const double ic = csiszar_mi(j, alpha, tol).value;
  return alpha.inv_conjugate() * (h - ic - rate);
}

namespace {

// E(a, R) extended continuously to a = 1 where the 1/a' factor vanishes.
double exponent_at(const JointDistribution& j, double rate, double al, double tol) {
  if (al <= 1.0 + 1e-12) return 0.0;
  return binning_exponent(j, rate, Alpha(al), tol);
}

}  // namespace

OptimizedExponent optimized_exponent(const JointDistribution& j, double rate, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("optimized_exponent: tolerance must be positive");
  const double inner_tol = std::min(tol * 1e-2, 1e-8);
  const AlphaOptimum opt = maximize_over_alpha(
      [&](double al) { return exponent_at(j, rate, al, inner_tol); }, 1.0, 2.0, tol);
  return {opt.alpha, opt.value, opt.evaluations};
}

ExponentCurve exponent_curve(const JointDistribution& j, double rate, std::size_t grid_points,
                             double tol) {
  if (grid_points < 2) throw std::invalid_argument("exponent_curve: need at least 2 grid points");
  ExponentCurve curve;
  curve.rate = rate;
  const double inner_tol = std::min(tol * 1e-2, 1e-8);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double al = 1.0 + static_cast<double>(i) / static_cast<double>(grid_points - 1);
    curve.alphas.push_back(al);
    curve.values.push_back(exponent_at(j, rate, al, inner_tol));
  }
  curve.best = optimized_exponent(j, rate, tol);
  return curve;
}

FiniteNBinningReport finite_n_binning_certify(const TypeClassSpec& spec, const Channel& ch,
                                              std::size_t k, Alpha alpha, std::size_t trials,
                                              std::uint64_t seed) {
  require_secrecy_order(alpha, "finite_n_binning_certify");
  const double class_size = std::round(std::exp2(spec.log2_size));
  if (spec.n > 1 && class_size > 1e4) {
    throw std::invalid_argument("finite_n_binning_certify: type class larger than 10^4");
  }
  const JointDistribution joint = type_class_uniform_joint(spec, ch);
  if (k == 0 || joint.na() % k != 0) {
    throw std::invalid_argument("finite_n_binning_certify: k must divide the class size");
  }

  FiniteNBinningReport out;
  out.n = spec.n;
  out.k = k;
  out.alpha = alpha.value();
  out.block_mi_total = static_cast<double>(spec.n) * block_sibson_mi(spec, ch, alpha);
  const double inv_conj = alpha.inv_conjugate();
  out.rhs = std::exp2(2.0 / alpha.value() - 1.0) *
            std::exp2(-inv_conj * std::log2(static_cast<double>(k))) *
            (std::exp2(inv_conj * out.block_mi_total) + 1.0);

  std::vector<double> values;
  bool exact = false;
  if (count_regular_binnings(joint.na(), k) <= 1e5) {
    exact = true;
    for (const BinningMap& f : enumerate_regular_binnings(joint.na(), k)) {
      values.push_back(v_alpha(apply_binning(joint, f), alpha));
    }
  } else {
    if (trials == 0) {
      throw std::invalid_argument("finite_n_binning_certify: trials must be positive");
    }
    SeededRng root(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream stream = root.stream(t);
      values.push_back(
          v_alpha(apply_binning(joint, sample_regular_binning(stream, joint.na(), k)), alpha));
    }
  }
  out.v_stats = summarize_trials(std::move(values), seed, exact);
  for (std::size_t t = 0; t < out.v_stats.values.size(); ++t) {
    out.records.push_back({seed, t, out.alpha, k, out.v_stats.values[t], out.rhs,
                           out.rhs - out.v_stats.values[t]});
  }
  return out;
}

double wiretap_exponent(const Distribution& px, const Channel& ch_y, const Channel& ch_z,
                        double rate, Alpha alpha, double tol) {
  require_secrecy_order(alpha, "wiretap_exponent");
  if (ch_y.na() != px.size() || ch_z.na() != px.size()) {
    throw std::invalid_argument("wiretap_exponent: channel input size mismatch");
  }
  const double mi_y = shannon_mi(JointDistribution::from_marginal_channel(px, ch_y));
  const double ic_z =
      csiszar_mi(JointDistribution::from_marginal_channel(px, ch_z), alpha, tol).value;
  return alpha.inv_conjugate() * (mi_y - ic_z - rate);
}

ResolvabilityExponent resolvability_exponent_sibson(const JointDistribution& j, double r_prime,
                                                    double tol) {
  if (r_prime < 0.0) {
    throw std::invalid_argument("resolvability_exponent_sibson: rate must be non-negative");
  }
  const auto by_alpha = [&](double al) {
    if (al <= 1.0 + 1e-12) return 0.0;
    const Alpha a(al);
    return a.inv_conjugate() * (r_prime - sibson_mi(j, a));
  };
  // 1/a' = lambda/2 maps lambda in [0,1] onto a in [1,2] via a = 2/(2-lambda).
  const auto by_lambda = [&](double lam) {
    if (lam <= 1e-12) return 0.0;
    const Alpha a(2.0 / (2.0 - lam));
    return 0.5 * lam * (r_prime - sibson_mi(j, a));
  };
  const AlphaOptimum oa = maximize_over_alpha(by_alpha, 1.0, 2.0, tol);
  const AlphaOptimum ol = maximize_over_alpha(by_lambda, 0.0, 1.0, tol);
  ResolvabilityExponent out;
  out.value = oa.value;
  out.alpha_star = oa.alpha;
  out.lambda_value = ol.value;
  out.lambda_star = ol.alpha;
  return out;
}

namespace {

std::size_t exact_class_size(const TypeClassSpec& spec) {
  const double size = std::round(std::exp2(spec.log2_size));
  if (spec.n == 1) return spec.base.size();
  if (size > 1e4) {
    throw std::invalid_argument("rate split: type class larger than 10^4");
  }
  return static_cast<std::size_t>(size);
}

}  // namespace

RateSplit find_rate_split(const Distribution& px, const Channel& ch_y, const Channel& ch_z,
                          const TypeClassSpec& spec, Alpha alpha, double tol) {
  require_secrecy_order(alpha, "find_rate_split");
  const std::size_t total = exact_class_size(spec);
  const double n = static_cast<double>(spec.n);
  const double h_xy = conditional_entropy_a_given_b(
      JointDistribution::from_marginal_channel(px, ch_y));
  const double budget =
      shannon_entropy(px) -
      csiszar_mi(JointDistribution::from_marginal_channel(px, ch_z), alpha, tol).value;

  RateSplit best;
  bool found = false;
  RateSplit nearest;
  double nearest_violation = std::numeric_limits<double>::infinity();
  for (std::size_t k1 = 1; k1 <= total; ++k1) {
    if (total % k1 != 0) continue;
    const std::size_t rest = total / k1;
    for (std::size_t k3 = 1; k3 <= rest; ++k3) {
      if (rest % k3 != 0) continue;
      RateSplit cand;
      cand.k1 = k1;
      cand.k2 = rest / k3;
      cand.k3 = k3;
      cand.n = spec.n;
      cand.r1 = std::log2(static_cast<double>(k1)) / n;
      cand.r2 = std::log2(static_cast<double>(cand.k2)) / n;
      cand.r3 = std::log2(static_cast<double>(k3)) / n;
      cand.h_x_given_y = h_xy;
      cand.secrecy_budget = budget;
      const double decode_gap = cand.r3 - h_xy;           // must be > 0
      const double secrecy_gap = budget - cand.r1 - cand.r3;  // must be > 0
      if (decode_gap > 0.0 && secrecy_gap > 0.0) {
        if (!found || cand.r1 > best.r1 + 1e-15 ||
            (std::abs(cand.r1 - best.r1) <= 1e-15 && cand.k3 > best.k3)) {
          best = cand;
          found = true;
        }
      } else {
        const double violation = std::max(0.0, -decode_gap) + std::max(0.0, -secrecy_gap);
        if (violation < nearest_violation) {
          nearest_violation = violation;
          nearest = cand;
        }
      }
    }
  }
  if (!found) {
    throw std::invalid_argument(
        "find_rate_split: no admissible factorization of " + std::to_string(total) +
        "; nearest candidate k1=" + std::to_string(nearest.k1) +
        " k2=" + std::to_string(nearest.k2) + " k3=" + std::to_string(nearest.k3) +
        " violates the constraints by " + std::to_string(nearest_violation) +
        " bits/symbol (need r3 > " + std::to_string(h_xy) + " and r1 + r3 < " +
        std::to_string(budget) + ")");
  }
  return best;
}

WiretapSimReport wiretap_minicode_sim(const Distribution& px, const Channel& ch_y,
                                      const Channel& ch_z, const TypeClassSpec& spec,
                                      const RateSplit& split, Alpha alpha, std::size_t trials,
                                      std::uint64_t seed) {
  require_secrecy_order(alpha, "wiretap_minicode_sim");
  if (spec.n < 1 || spec.n > 8) {
    throw std::invalid_argument("wiretap_minicode_sim: block length must be in [1, 8]");
  }
  if (ch_y.na() != px.size() || ch_z.na() != px.size() || spec.base.size() != px.size()) {
    throw std::invalid_argument("wiretap_minicode_sim: alphabet mismatch");
  }
  if (trials == 0) throw std::invalid_argument("wiretap_minicode_sim: trials must be positive");
  const std::size_t total = exact_class_size(spec);
  if (split.k1 * split.k2 * split.k3 != total || split.n != spec.n) {
    throw std::invalid_argument("wiretap_minicode_sim: split does not factor the type class");
  }

  // Sequences of the class and their exact channel likelihood tables.
  std::vector<std::vector<int>> seqs;
  if (spec.n == 1) {
    for (std::size_t a = 0; a < px.size(); ++a) seqs.push_back({static_cast<int>(a)});
  } else {
    seqs = enumerate_type_sequences(spec.counts);
  }
  const std::size_t ny = [&] {
    std::size_t v = 1;
    for (int i = 0; i < spec.n; ++i) v *= ch_y.nb();
    return v;
  }();
  const std::size_t nz = [&] {
    std::size_t v = 1;
    for (int i = 0; i < spec.n; ++i) v *= ch_z.nb();
    return v;
  }();
  if (total * (ny + nz) > 20000000) {
    throw std::invalid_argument("wiretap_minicode_sim: likelihood tables exceed budget");
  }
  const auto likelihoods = [&](const Channel& ch, std::size_t nout) {
    std::vector<std::vector<double>> like(total, std::vector<double>(nout, 1.0));
    for (std::size_t x = 0; x < total; ++x) {
      for (std::size_t yn = 0; yn < nout; ++yn) {
        std::size_t rem = yn;
        double p = 1.0;
        // Position 0 is the most significant digit of the output index.
        for (int i = spec.n - 1; i >= 0; --i) {
          const std::size_t sym = rem % ch.nb();
          rem /= ch.nb();
          p *= ch.at(static_cast<std::size_t>(seqs[x][i]), sym);
        }
        like[x][yn] = p;
      }
    }
    return like;
  };
  const auto like_y = likelihoods(ch_y, ny);
  const auto like_z = likelihoods(ch_z, nz);

  WiretapSimReport out;
  out.n = spec.n;
  out.split = split;
  out.alpha = alpha.value();
  out.block_mi_z_total = static_cast<double>(spec.n) * block_sibson_mi(spec, ch_z, alpha);
  const double inv_conj = alpha.inv_conjugate();
  out.leakage_bound = std::exp2(2.0 * (2.0 / alpha.value() - 1.0)) *
                      std::exp2(-inv_conj * std::log2(static_cast<double>(split.k2))) *
                      (std::exp2(inv_conj * out.block_mi_z_total) + 1.0);

  const std::size_t k1 = split.k1, k2 = split.k2, k3 = split.k3;
  std::vector<double> leak_values, err_values;
  SeededRng root(seed);
  std::vector<std::size_t> perm(total);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream stream = root.stream(t);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    stream.shuffle(perm);
    // Bijection x -> (m, g, u) via the shuffled position.
    std::vector<std::size_t> msg(total), pub(total);
    std::vector<std::vector<std::size_t>> groups(k3);
    for (std::size_t x = 0; x < total; ++x) {
      const std::size_t pos = perm[x];
      msg[x] = pos % k1;
      pub[x] = pos / (k1 * k2);
      groups[pub[x]].push_back(x);
    }

    // Exact ML decoding error of X from (U, Y^n): uniform X over the class.
    double err = 0.0;
    for (std::size_t u = 0; u < k3; ++u) {
      for (std::size_t yn = 0; yn < ny; ++yn) {
        std::size_t winner = groups[u][0];
        for (std::size_t x : groups[u]) {
          if (like_y[x][yn] > like_y[winner][yn]) winner = x;
        }
        for (std::size_t x : groups[u]) {
          if (x != winner) err += like_y[x][yn];
        }
      }
    }
    err /= static_cast<double>(total);

    // Exact V_a(M;Z^n|U=u), averaged over the uniform public index.
    double leak = 0.0;
    for (std::size_t u = 0; u < k3; ++u) {
      std::vector<double> table(k1 * nz, 0.0);
      const double w = 1.0 / static_cast<double>(k1 * k2);
      for (std::size_t x : groups[u]) {
        for (std::size_t zn = 0; zn < nz; ++zn) {
          table[msg[x] * nz + zn] += w * like_z[x][zn];
        }
      }
      leak += v_alpha(JointDistribution(k1, nz, std::move(table)), alpha);
    }
    leak /= static_cast<double>(k3);

    err_values.push_back(err);
    leak_values.push_back(leak);
    out.records.push_back({seed, t, out.alpha, k2, leak, out.leakage_bound,
                           out.leakage_bound - leak});
  }
  out.leakage_stats = summarize_trials(std::move(leak_values), seed, false);
  out.error_stats = summarize_trials(std::move(err_values), seed, false);

  std::size_t joint_ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const bool leak_ok = out.leakage_stats.values[t] <= 3.0 * out.leakage_stats.mean + 1e-15;
    const bool err_ok = out.error_stats.values[t] <= 3.0 * out.error_stats.mean + 1e-15;
    if (leak_ok && err_ok) ++joint_ok;
  }
  out.joint_success_fraction = static_cast<double>(joint_ok) / static_cast<double>(trials);
  return out;
}

}  // namespace vvcorr
