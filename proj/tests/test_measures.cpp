#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vvcorr/measures.hpp"
#include "vvcorr/rng.hpp"

using namespace vvcorr;

namespace {

JointDistribution uniform_identity(std::size_t n) {
  std::vector<double> t(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) t[i * n + i] = 1.0 / static_cast<double>(n);
  return JointDistribution(n, n, t);
}

JointDistribution uniform_erasure(std::size_t d, double eps) {
  return JointDistribution::from_marginal_channel(Distribution::uniform(d),
                                                  Channel::erasure(d, eps));
}

constexpr double kLog2E = 1.4426950408889634;

}  // namespace

TEST_CASE("shannon quantities") {
  CHECK(shannon_entropy(Distribution::uniform(8)) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(shannon_entropy(Distribution::point_mass(4, 2)) == doctest::Approx(0.0));
  CHECK(shannon_mi(uniform_identity(2)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(shannon_mi(JointDistribution::product(Distribution::uniform(3),
                                              Distribution({0.2, 0.8}))) ==
        doctest::Approx(0.0).epsilon(1e-13));
  CHECK(conditional_entropy_a_given_b(uniform_identity(4)) == doctest::Approx(0.0));
  JointDistribution ind = JointDistribution::product(Distribution({0.3, 0.7}),
                                                     Distribution::uniform(2));
  CHECK(conditional_entropy_a_given_b(ind) ==
        doctest::Approx(shannon_entropy(Distribution({0.3, 0.7}))).epsilon(1e-12));
}

TEST_CASE("identity channel on uniform binary input") {
  JointDistribution j = uniform_identity(2);
  CHECK(v_alpha(j, Alpha(2)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(w_alpha(j, Alpha(2)) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-13));
  CHECK(v_infinity(j) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v_alpha(j, Alpha::infinity()) == doctest::Approx(1.0).epsilon(1e-13));
  for (double a : {1.5, 2.0, 3.0}) {
    CHECK(sibson_mi(j, Alpha(a)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(sibson_mi(j, Alpha(1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cond_renyi_entropy(j, Alpha(2)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hayashi_cond_entropy(j, Alpha(2)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("independent pair with uniform A") {
  JointDistribution j = JointDistribution::product(Distribution::uniform(4),
                                                   Distribution({0.1, 0.6, 0.3}));
  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(w_alpha(j, Alpha(a)) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(v_alpha(j, Alpha(a)) == doctest::Approx(0.0).epsilon(1e-13));
  }
  CHECK(cond_renyi_entropy(j, Alpha(2)) == doctest::Approx(2.0).epsilon(1e-12));
  // -log2 sum_b p(b) sum_a p(a|b)^alpha = (alpha - 1) log2 |A|.
  for (double a : {1.5, 2.0, 3.0}) {
    CHECK(hayashi_cond_entropy(j, Alpha(a)) ==
          doctest::Approx((a - 1.0) * 2.0).epsilon(1e-12));
  }
}

TEST_CASE("erasure closed forms") {
  for (double eps : {0.1, 0.5, 0.9}) {
    for (int d : {2, 4, 8}) {
      JointDistribution j = uniform_erasure(d, eps);
      for (double a : {1.2, 1.5, 2.0}) {
        CHECK(w_alpha(j, Alpha(a)) ==
              doctest::Approx(oracles::erasure_w(eps, d, a)).epsilon(1e-13));
        CHECK(v_alpha(j, Alpha(a)) ==
              doctest::Approx(oracles::erasure_v(eps, d, a)).epsilon(1e-13));
      }
      CHECK(v_infinity(j) == doctest::Approx(oracles::erasure_v_inf(eps, d)).epsilon(1e-13));
    }
  }
  // (eps = 1/2, d = 2, alpha = 2) pinned by hand.
  JointDistribution half = uniform_erasure(2, 0.5);
  CHECK(v_alpha(half, Alpha(2)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w_alpha(half, Alpha(2)) == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(v_infinity(half) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("measures agree with direct-definition references on random joints") {
  SeededRng root(77);
  for (std::uint64_t t = 0; t < 300; ++t) {
    RngStream r = root.stream(t);
    const std::size_t na = 2 + r.uniform_below(4);
    const std::size_t nb = 2 + r.uniform_below(4);
    JointDistribution j = random_joint(r, na, nb);
    for (double a : {1.0, 1.3, 2.0, 2.7, 4.0}) {
      CHECK(v_alpha(j, Alpha(a)) == doctest::Approx(oracles::v_alpha(j, a)).epsilon(1e-12));
      CHECK(w_alpha(j, Alpha(a)) == doctest::Approx(oracles::w_alpha(j, a)).epsilon(1e-12));
    }
    CHECK(v_infinity(j) == doctest::Approx(oracles::v_infinity(j)).epsilon(1e-12));
    CHECK(shannon_mi(j) == doctest::Approx(oracles::shannon_mi(j)).epsilon(1e-12));
    for (double a : {1.3, 2.0, 3.0}) {
      CHECK(sibson_mi(j, Alpha(a)) == doctest::Approx(oracles::sibson_mi(j, a)).epsilon(1e-12));
      CHECK(cond_renyi_entropy(j, Alpha(a)) ==
            doctest::Approx(oracles::cond_renyi_entropy(j, a)).epsilon(1e-12));
      CHECK(hayashi_cond_entropy(j, Alpha(a)) ==
            doctest::Approx(oracles::hayashi_cond_entropy(j, a)).epsilon(1e-12));
    }
    CHECK(chi_square_form_v2(j) == doctest::Approx(v_alpha(j, Alpha(2))).epsilon(1e-11));
  }
}

TEST_CASE("uniform input ties v to w") {
  SeededRng root(78);
  for (std::uint64_t t = 0; t < 100; ++t) {
    RngStream r = root.stream(t);
    const std::size_t na = 2 + r.uniform_below(3);
    const std::size_t nb = 2 + r.uniform_below(3);
    JointDistribution j =
        JointDistribution::from_marginal_channel(Distribution::uniform(na),
                                                 random_channel(r, na, nb));
    for (double a : {1.0, 1.5, 2.0, 3.0}) {
      Alpha al(a);
      const double scale = std::pow(static_cast<double>(na), al.inv_conjugate());
      CHECK(v_alpha(j, al) == doctest::Approx(scale * w_alpha(j, al)).epsilon(1e-12));
    }
  }
}

TEST_CASE("renyi divergence") {
  Distribution p({0.3, 0.7});
  Distribution q({0.6, 0.4});
  CHECK(renyi_divergence(p, p, Alpha(2)) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(renyi_divergence(p, q, Alpha(1)) ==
        doctest::Approx(oracles::kl_divergence(p.probs(), q.probs())).epsilon(1e-12));
  CHECK(renyi_divergence(p, q, Alpha(2)) ==
        doctest::Approx(std::log2(0.09 / 0.6 + 0.49 / 0.4)).epsilon(1e-12));
  CHECK_THROWS_AS(renyi_divergence(p, Distribution::uniform(3), Alpha(2)),
                  std::invalid_argument);
}

TEST_CASE("csiszar mutual information returns H(A) when B copies A") {
  for (double a : {1.25, 1.5, 2.0}) {
    MeasureResult r = csiszar_mi(uniform_identity(2), Alpha(a), 1e-8);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.cert.gap() <= 1e-8);
    CHECK(r.cert.lower <= r.value + 1e-12);
    CHECK(r.value <= r.cert.upper + 1e-12);
  }
  JointDistribution skew(2, 2, {0.3, 0.0, 0.0, 0.7});
  const double h = shannon_entropy(Distribution({0.3, 0.7}));
  for (double a : {1.25, 2.0}) {
    MeasureResult r = csiszar_mi(skew, Alpha(a), 1e-8);
    CHECK(r.value == doctest::Approx(h).epsilon(1e-6));
  }
}

TEST_CASE("csiszar mutual information matches dense reference grids") {
  SeededRng root(79);
  for (std::uint64_t t = 0; t < 12; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 2 + r.uniform_below(2), 2);
    for (double a : {1.3, 1.7, 2.0}) {
      MeasureResult res = csiszar_mi(j, Alpha(a), 1e-9);
      const double grid = oracles::csiszar_grid_binary_b(j, a);
      CHECK(res.value <= grid + 1e-8);
      CHECK(res.value >= grid - 1e-6);
    }
  }
  JointDistribution er = uniform_erasure(2, 0.5);
  MeasureResult res = csiszar_mi(er, Alpha(2), 1e-9);
  const double grid = oracles::csiszar_grid_ternary_b(er, 2.0);
  CHECK(res.value <= grid + 1e-8);
  CHECK(res.value >= grid - 1e-5);
}

TEST_CASE("csiszar preconditions") {
  JointDistribution j = uniform_identity(2);
  CHECK_THROWS_AS(csiszar_mi(j, Alpha(1), 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(csiszar_mi(j, Alpha(2.5), 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(csiszar_mi(j, Alpha(2), -1.0), std::invalid_argument);
}

TEST_CASE("csiszar certificates stay enclosing on random channels") {
  SeededRng root(80);
  for (std::uint64_t t = 0; t < 30; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 2 + r.uniform_below(3), 2 + r.uniform_below(3));
    for (double a : {1.25, 1.5, 2.0}) {
      MeasureResult res = csiszar_mi(j, Alpha(a), 1e-7);
      CHECK(res.converged);
      CHECK(res.cert.gap() <= 1e-7);
      CHECK(res.cert.lower <= res.cert.upper);
      CHECK(res.value >= -1e-12);
    }
  }
}

TEST_CASE("tsallis closed form") {
  // Erasure at eps = 1/2 on binary input: (1/(a-1)) (sum_b sqrt(g))^2 = 1/4.
  CHECK(tsallis_mi(uniform_erasure(2, 0.5), 2.0) == doctest::Approx(0.25).epsilon(1e-13));

  SeededRng root(81);
  for (std::uint64_t t = 0; t < 200; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 2 + r.uniform_below(5), 2 + r.uniform_below(5));
    CHECK(std::sqrt(tsallis_mi(j, 2.0)) ==
          doctest::Approx(v_alpha(j, Alpha(2))).epsilon(1e-11));
  }

  // The closed form solves the same program as the dense binary-B grid.
  for (std::uint64_t t = 0; t < 8; ++t) {
    RngStream r = root.stream(1000 + t);
    JointDistribution j = random_joint(r, 3, 2);
    for (double a : {1.5, 2.0, 2.5}) {
      CHECK(tsallis_mi(j, a) ==
            doctest::Approx(oracles::tsallis_grid_binary_b(j, a)).epsilon(5e-5));
    }
  }
}

TEST_CASE("tsallis optimal reference is proportional to g^(1/alpha)") {
  SeededRng root(82);
  RngStream r = root.stream(0);
  JointDistribution j = random_joint(r, 3, 4);
  const double a = 2.0;
  Distribution q = tsallis_optimal_q(j, a);
  const auto pa = oracles::marginal_a(j);
  const auto pb = oracles::marginal_b(j);
  std::vector<double> g(j.nb(), 0.0);
  double norm = 0.0;
  for (std::size_t b = 0; b < j.nb(); ++b) {
    for (std::size_t a_i = 0; a_i < j.na(); ++a_i) {
      g[b] += pa[a_i] * std::pow(j.at(a_i, b) / pa[a_i], a);
    }
    g[b] -= std::pow(pb[b], a);
    g[b] = std::pow(std::max(g[b], 0.0), 1.0 / a);
    norm += g[b];
  }
  for (std::size_t b = 0; b < j.nb(); ++b) {
    CHECK(q[b] == doctest::Approx(g[b] / norm).epsilon(1e-10));
  }
}

TEST_CASE("f-divergence building blocks") {
  Distribution p({0.3, 0.7});
  Distribution q({0.6, 0.4});
  CHECK(f_divergence(p, q, kl_function()) ==
        doctest::Approx(oracles::kl_divergence(p.probs(), q.probs())).epsilon(1e-12));
  // Tsallis f at alpha 2: sum_b q (t^2 - t) = chi-square distance.
  double chi = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double t = p[i] / q[i];
    chi += q[i] * (t * t - t);
  }
  CHECK(f_divergence(p, q, tsallis_function(2.0)) == doctest::Approx(chi).epsilon(1e-12));
  CHECK(f_divergence(p, p, kl_function()) == doctest::Approx(0.0).epsilon(1e-13));

  // The optimizing routines spot-check the function class; f(1) != 0 is rejected.
  ConvexFunctionSpec bad;
  bad.f = [](double t) { return t * t; };
  bad.df = [](double t) { return 2 * t; };
  bad.d2f = [](double) { return 2.0; };
  bad.name = "square";
  JointDistribution j = JointDistribution::product(p, q);
  CHECK_THROWS_AS(f_mutual_information(j, bad, 1e-8), std::invalid_argument);
}

TEST_CASE("f mutual information with the KL function is Shannon MI") {
  SeededRng root(83);
  for (std::uint64_t t = 0; t < 10; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 3, 3);
    MeasureResult res = f_mutual_information(j, kl_function(), 1e-8);
    CHECK(res.value == doctest::Approx(shannon_mi(j)).epsilon(1e-6));
  }
}

TEST_CASE("f mutual information for the tsallis family matches the closed form") {
  SeededRng root(84);
  for (std::uint64_t t = 0; t < 10; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 3, 2 + r.uniform_below(2));
    for (double a : {1.5, 2.0}) {
      MeasureResult res = f_mutual_information(j, tsallis_function(a), 1e-8);
      CHECK(std::abs(res.value - tsallis_mi(j, a)) <= 1e-6);
    }
  }
}

TEST_CASE("f mutual information ordering: subtracted <= centered <= plugin") {
  SeededRng root(85);
  for (std::uint64_t t = 0; t < 20; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 3, 3);
    ConvexFunctionSpec fs = tsallis_function(1.0 + 0.3 * (1 + t % 3));  // 1.3, 1.6, 1.9
    MeasureResult full = f_mutual_information(j, fs, 1e-8);
    MeasureResult centered = f_mi_centered(j, fs, 1e-8);
    const double plugin = f_mi_plugin(j, fs);
    // Compare through the certificates so solver gaps cannot flip the order.
    CHECK(full.cert.lower <= centered.cert.upper + 1e-9);
    CHECK(centered.cert.lower <= plugin + 1e-9);
  }
}

TEST_CASE("monotonicity in the order parameter") {
  SeededRng root(86);
  const std::vector<double> grid = {1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0};
  for (std::uint64_t t = 0; t < 400; ++t) {
    RngStream r = root.stream(t);
    const std::size_t na = 2 + r.uniform_below(4);
    JointDistribution j = random_joint(r, na, 2 + r.uniform_below(4));
    double prev_v = -1.0, prev_w = -1.0;
    for (double a : grid) {
      Alpha al(a);
      const double v = v_alpha(j, al);
      const double w = std::pow(static_cast<double>(na), al.inv_conjugate()) * w_alpha(j, al);
      CHECK(v >= prev_v - 1e-12);
      CHECK(w >= prev_w - 1e-12);
      prev_v = v;
      prev_w = w;
    }
    // The order-infinity value closes both ladders from above.
    CHECK(v_infinity(j) >= prev_v - 1e-12);
  }
}

TEST_CASE("sandwich bounds between correlation measures and renyi quantities") {
  SeededRng root(87);
  for (std::uint64_t t = 0; t < 400; ++t) {
    RngStream r = root.stream(t);
    const std::size_t na = 2 + r.uniform_below(4);
    JointDistribution j = random_joint(r, na, 2 + r.uniform_below(4));
    for (double a : {1.25, 1.5, 2.0}) {
      Alpha al(a);
      const double v = v_alpha(j, al);
      const double core = std::exp2(sibson_mi(j, al) * al.inv_conjugate());
      CHECK(v >= core - 1.0 - 1e-9);
      CHECK(v <= core + 1.0 + 1e-9);
      const double w = w_alpha(j, al);
      const double core_w = std::exp2(-cond_renyi_entropy(j, al) * al.inv_conjugate());
      const double shift = std::pow(static_cast<double>(na), -al.inv_conjugate());
      CHECK(w >= core_w - shift - 1e-9);
      CHECK(w <= core_w + shift + 1e-9);
    }
    // Sharper order-2 form: 2^(I_2/2) >= V_2 >= 2^(I_2/2) - 1.
    const double core2 = std::exp2(0.5 * sibson_mi(j, Alpha(2)));
    const double v2 = v_alpha(j, Alpha(2));
    CHECK(v2 <= core2 + 1e-9);
    CHECK(v2 >= core2 - 1.0 - 1e-9);
  }
}

TEST_CASE("data processing under channels on either side") {
  SeededRng root(88);
  for (std::uint64_t t = 0; t < 200; ++t) {
    RngStream r = root.stream(t);
    const std::size_t na = 2 + r.uniform_below(3);
    const std::size_t nb = 2 + r.uniform_below(3);
    JointDistribution j = random_joint(r, na, nb);
    Channel cha = random_channel(r, na, 2 + r.uniform_below(3));
    Channel chb = random_channel(r, nb, 2 + r.uniform_below(3));
    JointDistribution ja = postprocess_a(j, cha);
    JointDistribution jb = postprocess_b(j, chb);
    JointDistribution jab = postprocess_b(ja, chb);
    for (double a : {1.0, 1.5, 2.0, 3.0}) {
      Alpha al(a);
      const double v = v_alpha(j, al);
      CHECK(v_alpha(ja, al) <= v + 1e-12);
      CHECK(v_alpha(jb, al) <= v + 1e-12);
      CHECK(v_alpha(jab, al) <= v + 1e-12);
      CHECK(w_alpha(jb, al) <= w_alpha(j, al) + 1e-12);
    }
    CHECK(v_infinity(jb) <= v_infinity(j) + 1e-12);
  }
}

TEST_CASE("postprocessing with identity channels is a no-op") {
  JointDistribution j(2, 3, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1});
  JointDistribution ja = postprocess_a(j, Channel::identity(2));
  JointDistribution jb = postprocess_b(j, Channel::identity(3));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      CHECK(ja.at(a, b) == doctest::Approx(j.at(a, b)).epsilon(1e-14));
      CHECK(jb.at(a, b) == doctest::Approx(j.at(a, b)).epsilon(1e-14));
    }
}

TEST_CASE("f-divergence mutual information contracts along a markov chain") {
  SeededRng root(89);
  for (std::uint64_t t = 0; t < 25; ++t) {
    RngStream r = root.stream(t);
    JointDistribution j = random_joint(r, 3, 3);
    Channel cha = random_channel(r, 3, 3);
    Channel chb = random_channel(r, 3, 3);
    JointDistribution contracted = postprocess_b(postprocess_a(j, cha), chb);
    ConvexFunctionSpec fs = tsallis_function(1.7);
    MeasureResult inner = f_mutual_information(j, fs, 1e-8);
    MeasureResult outer = f_mutual_information(contracted, fs, 1e-8);
    CHECK(outer.cert.lower <= inner.cert.upper + 1e-9);
  }
}

TEST_CASE("conditioning inequalities for uniform independent side information") {
  SeededRng root(90);
  for (std::uint64_t t = 0; t < 60; ++t) {
    RngStream r = root.stream(t);
    const std::size_t da = 2 + r.uniform_below(2);
    const std::size_t dc = 2 + r.uniform_below(2);
    const std::size_t nb = 2 + r.uniform_below(3);
    // p(a, c, b) = (1 / (da dc)) p(b | a, c) with random rows.
    Channel rows = random_channel(r, da * dc, nb);
    std::vector<double> tab(da * dc * nb);
    for (std::size_t ac = 0; ac < da * dc; ++ac)
      for (std::size_t b = 0; b < nb; ++b)
        tab[ac * nb + b] = rows.at(ac, b) / static_cast<double>(da * dc);
    JointDistribution j_acb(da * dc, nb, tab);

    // V(A;B|C) = sum_c p(c) V(A;B | C=c); rows of the slice joint are a.
    auto v_cond = [&](Alpha al) {
      double s = 0.0;
      for (std::size_t c = 0; c < dc; ++c) {
        std::vector<double> slice(da * nb);
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t b = 0; b < nb; ++b)
            slice[a * nb + b] = rows.at(a * dc + c, b) / static_cast<double>(da);
        s += v_alpha(JointDistribution(da, nb, slice), al) / static_cast<double>(dc);
      }
      return s;
    };
    // V(C;B) from the (c, b) marginal.
    std::vector<double> cb(dc * nb, 0.0);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t c = 0; c < dc; ++c)
        for (std::size_t b = 0; b < nb; ++b)
          cb[c * nb + b] += tab[(a * dc + c) * nb + b];
    JointDistribution j_cb(dc, nb, cb);

    for (double a : {1.0, 1.5, 2.0}) {
      Alpha al(a);
      const double joint_v = v_alpha(j_acb, al);
      const double cond_v = v_cond(al);
      CHECK(cond_v <= std::exp2(2.0 / a - 1.0) * joint_v + 1e-12);
      CHECK(joint_v <= std::pow(static_cast<double>(dc), al.inv_conjugate()) * cond_v +
                           v_alpha(j_cb, al) + 1e-12);
    }
    // The chaining bound for joint_v holds at orders above 2 as well.
    Alpha three(3);
    CHECK(v_alpha(j_acb, three) <=
          std::pow(static_cast<double>(dc), three.inv_conjugate()) * v_cond(three) +
              v_alpha(j_cb, three) + 1e-12);
  }
}

TEST_CASE("conditioning chain bound boundary instances") {
  // B copies C, A independent: V(AC;B) = V(C;B) = 1 and the conditional term is 0,
  // so the chain bound holds with equality.
  std::vector<double> copy_tab(8, 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c) copy_tab[(a * 2 + c) * 2 + c] = 0.25;
  JointDistribution j_copy(4, 2, copy_tab);
  CHECK(v_alpha(j_copy, Alpha(2)) == doctest::Approx(1.0).epsilon(1e-13));

  // B = A xor C: V(AC;B) = 1 while V(C;B) = 0, so the conditional term must carry
  // the full weight; the d_C^(1/alpha') scale is what makes the bound hold.
  std::vector<double> xor_tab(8, 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c) xor_tab[(a * 2 + c) * 2 + (a ^ c)] = 0.25;
  JointDistribution j_xor(4, 2, xor_tab);
  std::vector<double> cb(4, 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c) cb[c * 2 + (a ^ c)] += 0.25;
  JointDistribution j_xor_cb(2, 2, cb);
  Alpha two(2);
  CHECK(v_alpha(j_xor, two) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v_alpha(j_xor_cb, two) == doctest::Approx(0.0).epsilon(1e-13));
  // Conditional V given C = c is the uniform identity value 1 for each c.
  const double cond = 1.0;
  CHECK(v_alpha(j_xor, two) <= std::pow(2.0, two.inv_conjugate()) * cond +
                                   v_alpha(j_xor_cb, two) + 1e-12);
}

TEST_CASE("w triangle inequality across a split of the conditioned side") {
  SeededRng root(91);
  for (std::uint64_t t = 0; t < 60; ++t) {
    RngStream r = root.stream(t);
    const std::size_t da = 2 + r.uniform_below(2);
    const std::size_t dc = 2 + r.uniform_below(2);
    const std::size_t nb = 2 + r.uniform_below(2);
    // Fully random p(a, c, b), no uniformity assumptions.
    RngStream rr = root.stream(10000 + t);
    std::vector<double> flat = rr.dirichlet(da * dc * nb, 1.0);
    // Rows (a, c), columns b.
    JointDistribution j_ac_b(da * dc, nb, flat);
    // Rows a, columns (b, c).
    std::vector<double> abc(da * nb * dc);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t c = 0; c < dc; ++c)
        for (std::size_t b = 0; b < nb; ++b)
          abc[a * (nb * dc) + b * dc + c] = flat[(a * dc + c) * nb + b];
    JointDistribution j_a_bc(da, nb * dc, abc);
    // Rows c, columns b.
    std::vector<double> cb(dc * nb, 0.0);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t c = 0; c < dc; ++c)
        for (std::size_t b = 0; b < nb; ++b) cb[c * nb + b] += flat[(a * dc + c) * nb + b];
    JointDistribution j_c_b(dc, nb, cb);

    for (double a : {1.0, 1.5, 2.0, 3.0}) {
      Alpha al(a);
      CHECK(w_alpha(j_ac_b, al) <=
            w_alpha(j_a_bc, al) +
                std::pow(static_cast<double>(da), -al.inv_conjugate()) * w_alpha(j_c_b, al) +
                1e-12);
    }
  }
}

TEST_CASE("semantic security bound") {
  // Noiseless binary channel: leakage 1 bit, bound 2 log2(e).
  SemanticSecurityGap g = semantic_security_gap(Channel::identity(2),
                                                Distribution::uniform(2),
                                                Distribution::uniform(2));
  CHECK(g.mi_bits == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.bound == doctest::Approx(2.0 * kLog2E).epsilon(1e-12));
  CHECK(g.slack() > 0.0);

  // Arbitrary input laws keep the bound valid.
  SemanticSecurityGap skew = semantic_security_gap(Channel::identity(2),
                                                   Distribution::uniform(2),
                                                   Distribution({0.9, 0.1}));
  CHECK(skew.mi_bits == doctest::Approx(shannon_entropy(Distribution({0.9, 0.1}))).epsilon(1e-12));
  CHECK(skew.bound == doctest::Approx(2.0 * kLog2E).epsilon(1e-12));

  SeededRng root(92);
  for (std::uint64_t t = 0; t < 200; ++t) {
    RngStream r = root.stream(t);
    const std::size_t na = 2 + r.uniform_below(3);
    const std::size_t nb = 2 + r.uniform_below(3);
    Channel ch = random_channel(r, na, nb);
    Distribution p_ref = random_distribution(r, na);
    Distribution q = random_distribution(r, na);
    SemanticSecurityGap gap = semantic_security_gap(ch, p_ref, q);
    CHECK(gap.slack() >= -1e-12);
  }

  // The actual input law must live inside the reference support.
  CHECK_THROWS_AS(semantic_security_gap(Channel::identity(2), Distribution::point_mass(2, 0),
                                        Distribution::uniform(2)),
                  std::invalid_argument);
}
