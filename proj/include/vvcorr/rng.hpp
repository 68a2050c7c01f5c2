#pragma once

#include <cstdint>
#include <vector>

namespace vvcorr {

// Counter-based splittable randomness.
//
// A stream is keyed by (master_seed, stream_index) and produces an identical
// draw sequence on every platform, run, and thread count: the generator is
// SplitMix64 (a pure function of an advancing counter), and all distribution
// transforms below are written out explicitly instead of delegating to the
// implementation-defined <random> distributions.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  // Uniform integer in [0, n), unbiased (rejection sampling); n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);

  // Standard normal via the Box-Muller transform (no state beyond the counter).
  double gaussian();

  // Gamma(shape, 1) via Marsaglia-Tsang; shape must be > 0.
  double gamma(double shape);

  // Dirichlet(concentration, ..., concentration) on n coordinates.
  std::vector<double> dirichlet(std::size_t n, double concentration);

  // Fisher-Yates shuffle driven by uniform_below.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Factory handing out independent streams for a master seed. Trial i of an
// experiment uses stream(i), so results do not depend on scheduling order.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t master_seed) : master_(master_seed) {}
  RngStream stream(std::uint64_t index) const { return RngStream(master_, index); }
  std::uint64_t master() const { return master_; }

 private:
  std::uint64_t master_;
};

}  // namespace vvcorr
