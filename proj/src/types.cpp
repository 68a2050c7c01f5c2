#include "vvcorr/types.hpp"

#include <cmath>
#include <stdexcept>

namespace vvcorr {

double log2_factorial(double x) { return std::lgamma(x + 1.0) / std::log(2.0); }

double log2_multinomial(std::int64_t n, const std::vector<std::int64_t>& counts) {
  double v = log2_factorial(static_cast<double>(n));
  std::int64_t total = 0;
  for (std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("log2_multinomial: negative count");
    v -= log2_factorial(static_cast<double>(c));
    total += c;
  }
  if (total != n) throw std::invalid_argument("log2_multinomial: counts must sum to n");
  return v;
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp2(log2_factorial(static_cast<double>(n)) -
                   log2_factorial(static_cast<double>(k)) -
                   log2_factorial(static_cast<double>(n - k)));
}

TypeClassSpec TypeClassSpec::make(const Distribution& base, int n) {
  if (n < 1) throw std::invalid_argument("TypeClassSpec: n must be >= 1");
  TypeClassSpec spec{base, n, {}, 0.0};
  if (n == 1) {
    // One draw from base: no composition constraint, a single "class" member
    // per symbol; size bookkeeping is not meaningful and stays at 0.
    spec.counts.assign(base.size(), 0);
    spec.log2_size = 0.0;
    return spec;
  }
  spec.counts.resize(base.size());
  std::int64_t total = 0;
  for (std::size_t a = 0; a < base.size(); ++a) {
    double exact = base[a] * static_cast<double>(n);
    std::int64_t rounded = std::llround(exact);
    if (std::abs(exact - static_cast<double>(rounded)) > 1e-9) {
      throw std::invalid_argument("TypeClassSpec: n * base[a] must be an integer");
    }
    spec.counts[a] = rounded;
    total += rounded;
  }
  if (total != n) throw std::invalid_argument("TypeClassSpec: counts must sum to n");
  spec.log2_size = log2_multinomial(n, spec.counts);
  return spec;
}

namespace {

void compositions_rec(int remaining, int part, int parts, std::vector<std::int64_t>& cur,
                      std::vector<std::vector<std::int64_t>>& out) {
  if (part + 1 == parts) {
    cur[part] = remaining;
    out.push_back(cur);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    cur[part] = c;
    compositions_rec(remaining - c, part + 1, parts, cur, out);
  }
}

void sequences_rec(std::vector<std::int64_t>& counts, std::vector<int>& cur, std::size_t pos,
                   std::vector<std::vector<int>>& out, std::size_t limit) {
  if (pos == cur.size()) {
    if (out.size() >= limit) {
      throw std::invalid_argument("enumerate_type_sequences: class larger than limit");
    }
    out.push_back(cur);
    return;
  }
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] == 0) continue;
    --counts[a];
    cur[pos] = static_cast<int>(a);
    sequences_rec(counts, cur, pos + 1, out, limit);
    ++counts[a];
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> enumerate_compositions(int n, int parts) {
  if (n < 0 || parts < 1) throw std::invalid_argument("enumerate_compositions: bad arguments");
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur(parts, 0);
  compositions_rec(n, 0, parts, cur, out);
  return out;
}

double count_compositions(int n, int parts) {
  return binomial(static_cast<std::int64_t>(n) + parts - 1, parts - 1);
}

std::vector<TypeClassSpec> enumerate_types(std::size_t alphabet, int n) {
  if (alphabet == 0 || n < 1) throw std::invalid_argument("enumerate_types: bad arguments");
  std::vector<TypeClassSpec> out;
  for (auto& counts : enumerate_compositions(n, static_cast<int>(alphabet))) {
    std::vector<double> probs(alphabet);
    for (std::size_t a = 0; a < alphabet; ++a) {
      probs[a] = static_cast<double>(counts[a]) / static_cast<double>(n);
    }
    // Built directly (not via make) so counts stay explicit even at n == 1.
    TypeClassSpec spec{Distribution(std::move(probs)), n, counts,
                       log2_multinomial(n, counts)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<std::vector<int>> enumerate_type_sequences(const std::vector<std::int64_t>& counts,
                                               std::size_t limit) {
  std::int64_t n = 0;
  for (std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("enumerate_type_sequences: negative count");
    n += c;
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> work = counts;
  sequences_rec(work, cur, 0, out, limit);
  return out;
}

JointDistribution type_class_uniform_joint(const TypeClassSpec& spec, const Channel& ch,
                                           std::size_t max_cells) {
  if (spec.base.size() != ch.na()) {
    throw std::invalid_argument("type_class_uniform_joint: base/channel size mismatch");
  }
  if (spec.n == 1) {
    return JointDistribution::from_marginal_channel(spec.base, ch);
  }
  std::vector<std::vector<int>> seqs = enumerate_type_sequences(spec.counts, max_cells);
  std::size_t cols = 1;
  for (int i = 0; i < spec.n; ++i) {
    if (cols > max_cells / ch.nb()) {
      throw std::invalid_argument("type_class_uniform_joint: table exceeds memory budget");
    }
    cols *= ch.nb();
  }
  if (seqs.size() > max_cells / cols) {
    throw std::invalid_argument("type_class_uniform_joint: table exceeds memory budget");
  }
  const double row_weight = 1.0 / static_cast<double>(seqs.size());
  std::vector<double> t(seqs.size() * cols);
  for (std::size_t r = 0; r < seqs.size(); ++r) {
    for (std::size_t bn = 0; bn < cols; ++bn) {
      double v = row_weight;
      std::size_t rest = bn;
      // Column index decodes to symbols with position 0 as the most
      // significant digit, matching lexicographic order of B^n.
      for (int i = spec.n - 1; i >= 0; --i) {
        v *= ch.at(static_cast<std::size_t>(seqs[r][static_cast<std::size_t>(i)]),
                   rest % ch.nb());
        rest /= ch.nb();
      }
      t[r * cols + bn] = v;
    }
  }
  double total = 0.0;
  for (double x : t) total += x;
  for (auto& x : t) x /= total;
  return JointDistribution(seqs.size(), cols, std::move(t));
}

}  // namespace vvcorr
