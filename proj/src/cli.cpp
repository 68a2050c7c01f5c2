#include "vvcorr/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "vvcorr/binning.hpp"
#include "vvcorr/distribution.hpp"
#include "vvcorr/exponents.hpp"
#include "vvcorr/io.hpp"
#include "vvcorr/measures.hpp"
#include "vvcorr/quantum.hpp"
#include "vvcorr/simplex_opt.hpp"
#include "vvcorr/types.hpp"

namespace vvcorr {

namespace {

constexpr double kSlackEps = 1e-12;      // absolute fudge on exact comparisons
constexpr double kDualityTol = 1e-3;     // exchanged min-max agreement alarm

struct Outcome {
  ReportBuilder report;
  bool violated = false;
};

JointDistribution load_or_throw(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("--dist is required");
  return load_joint(path);
}

double alpha_field(const Alpha& a) {
  return a.is_infinity() ? std::numeric_limits<double>::infinity() : a.value();
}

void add_stats(ReportBuilder& rb, const std::string& prefix, const BinningTrialStats& s) {
  rb.add(prefix + "_mean", s.mean);
  rb.add(prefix + "_stderr", s.stderror);
  rb.add(prefix + "_min", s.min);
  rb.add(prefix + "_max", s.max);
}

// Alarm rule shared by the Monte-Carlo experiments: the sampled mean may not
// exceed the bound beyond three standard errors (exactly, on the exact path).
bool mean_violates(const BinningTrialStats& s, double bound) {
  const double slack = s.exact ? kSlackEps * (1.0 + std::abs(bound)) : 3.0 * s.stderror + kSlackEps;
  return s.mean > bound + slack;
}

Outcome run_measure(const RunConfig& cfg) {
  JointDistribution j = load_or_throw(cfg.dist_path);
  const Alpha a = parse_alpha(cfg.alpha_text);
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("measure"));
  rb.add("quantity", cfg.quantity);
  rb.add("alpha", alpha_field(a));
  rb.add("dist", cfg.dist_path);
  const std::string& q = cfg.quantity;
  if (q == "v_alpha") {
    rb.add("value", v_alpha(j, a));
  } else if (q == "w_alpha") {
    rb.add("value", w_alpha(j, a));
  } else if (q == "v_infinity") {
    rb.add("value", v_infinity(j));
  } else if (q == "shannon_mi") {
    rb.add("value", shannon_mi(j));
  } else if (q == "sibson_mi") {
    rb.add("value", sibson_mi(j, a));
  } else if (q == "cond_renyi_entropy") {
    rb.add("value", cond_renyi_entropy(j, a));
  } else if (q == "hayashi_cond_entropy") {
    rb.add("value", hayashi_cond_entropy(j, a));
  } else if (q == "chi_square_form_v2") {
    rb.add("value", chi_square_form_v2(j));
  } else if (q == "tsallis_mi") {
    if (a.is_infinity()) throw std::invalid_argument("tsallis_mi needs finite alpha");
    rb.add("value", tsallis_mi(j, a.value()));
  } else if (q == "csiszar_mi") {
    MeasureResult r = csiszar_mi(j, a, cfg.tol);
    rb.add("value", r.value);
    rb.add("lower", r.cert.lower);
    rb.add("upper", r.cert.upper);
    rb.add("gap", r.cert.gap());
    rb.add_count("iterations", static_cast<std::uint64_t>(r.iterations));
    rb.add_flag("converged", r.converged);
  } else if (q == "f_mutual_information") {
    if (a.is_infinity()) throw std::invalid_argument("f_mutual_information needs finite alpha");
    ConvexFunctionSpec fs = a.is_one() ? kl_function() : tsallis_function(a.value());
    rb.add("f", fs.name);
    MeasureResult r = f_mutual_information(j, fs, cfg.tol);
    rb.add("value", r.value);
    rb.add("lower", r.cert.lower);
    rb.add("upper", r.cert.upper);
    rb.add_count("iterations", static_cast<std::uint64_t>(r.iterations));
    rb.add_flag("converged", r.converged);
  } else if (q == "semantic_security_gap") {
    Channel ch = j.channel_b_given_a();
    SemanticSecurityGap g = semantic_security_gap(ch, j.marginal_a(), Distribution::uniform(j.na()));
    rb.add("lhs", g.mi_bits);
    rb.add("rhs", g.bound);
    rb.add("slack", g.slack());
    oc.violated = g.slack() < -kSlackEps;
  } else {
    throw std::invalid_argument(
        "unknown quantity '" + q +
        "' (expected one of v_alpha w_alpha v_infinity shannon_mi sibson_mi cond_renyi_entropy "
        "hayashi_cond_entropy chi_square_form_v2 tsallis_mi csiszar_mi f_mutual_information "
        "semantic_security_gap)");
  }
  return oc;
}

Outcome run_binning(const RunConfig& cfg) {
  JointDistribution j = load_or_throw(cfg.dist_path);
  const Alpha a = parse_alpha(cfg.alpha_text);
  DecouplingCheck chk = decoupling_bound_check(j, cfg.k, a, cfg.trials, cfg.seed);
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("binning"));
  rb.add("alpha", chk.alpha);
  rb.add_count("k", chk.k);
  rb.add_count("seed", cfg.seed);
  rb.add_flag("exact", chk.w_stats.exact);
  rb.add_count("trials", chk.w_stats.trials());
  rb.add("w_source", chk.w_source);
  rb.add("w_bound", chk.w_bound);
  add_stats(rb, "w", chk.w_stats);
  if (chk.v_stats) {
    rb.add("v_source", chk.v_source);
    rb.add("v_bound", chk.v_bound);
    add_stats(rb, "v", *chk.v_stats);
    rb.add("identity_max_dev", chk.identity_max_dev);
    oc.violated = mean_violates(*chk.v_stats, chk.v_bound);
  }
  oc.violated = oc.violated || mean_violates(chk.w_stats, chk.w_bound);
  rb.set_records(chk.records);
  return oc;
}

Outcome run_privacy_amp(const RunConfig& cfg) {
  JointDistribution j = load_or_throw(cfg.dist_path);
  const Alpha a = parse_alpha(cfg.alpha_text);
  PrivacyAmpReport rep = privacy_amp_experiment(j, cfg.ell, a, cfg.trials, cfg.seed);
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("privacy-amp"));
  rb.add("alpha", rep.alpha);
  rb.add_count("k_bits", rep.k_bits);
  rb.add_count("ell", rep.ell);
  rb.add_count("seed", cfg.seed);
  rb.add_count("trials", rep.v_stats.trials());
  rb.add("v_source", rep.v_source);
  rb.add("v_bound", rep.v_bound);
  add_stats(rb, "v", rep.v_stats);
  rb.add("min_v", rep.min_v);
  rb.add("trace_bound_general", rep.trace_bound_general);
  if (!std::isnan(rep.trace_bound_alpha2)) rb.add("trace_bound_alpha2", rep.trace_bound_alpha2);
  add_stats(rb, "trace", rep.trace_stats);
  rb.add("identity_max_dev", rep.identity_max_dev);
  oc.violated = mean_violates(rep.v_stats, rep.v_bound) ||
                mean_violates(rep.trace_stats, rep.trace_bound_general);
  rb.set_records(rep.records);
  return oc;
}

Outcome run_exponent(const RunConfig& cfg) {
  JointDistribution j = load_or_throw(cfg.dist_path);
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("exponent"));
  rb.add("rate", cfg.rate);
  const Alpha a = parse_alpha(cfg.alpha_text);
  rb.add("alpha", alpha_field(a));
  rb.add("exponent_at_alpha", binning_exponent(j, cfg.rate, a, cfg.tol));
  OptimizedExponent best = optimized_exponent(j, cfg.rate, cfg.tol);
  rb.add("alpha_star", best.alpha_star);
  rb.add("exponent_star", best.value);
  rb.add_count("evaluations", static_cast<std::uint64_t>(best.evaluations));
  if (cfg.duality) {
    ExchangeCheck ex = minimax_exchange_check(j, cfg.rate, cfg.tol);
    rb.add("duality_lhs", ex.lhs);
    rb.add("duality_lhs_alpha", ex.lhs_alpha);
    rb.add("duality_rhs", ex.rhs);
    rb.add("duality_gap", std::abs(ex.lhs - ex.rhs));
    oc.violated = std::abs(ex.lhs - ex.rhs) > kDualityTol;
  }
  if (cfg.grid > 0) {
    ExponentCurve curve = exponent_curve(j, cfg.rate, cfg.grid, cfg.tol);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < curve.alphas.size(); ++i)
      rows.push_back({fmt_double(curve.alphas[i]), fmt_double(curve.values[i])});
    rb.set_table({"alpha", "exponent"}, std::move(rows));
  }
  return oc;
}

Outcome run_block_mi(const RunConfig& cfg) {
  JointDistribution j = load_or_throw(cfg.dist_path);
  const Alpha a = parse_alpha(cfg.alpha_text);
  Distribution base = j.marginal_a();
  Channel ch = j.channel_b_given_a();
  std::vector<BlockMIRecord> ladder = block_mi_ladder(base, ch, a, {cfg.n}, cfg.tol);
  const BlockMIRecord& r = ladder.front();
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("block-mi"));
  rb.add("alpha", alpha_field(a));
  rb.add_count("n", static_cast<std::uint64_t>(r.n));
  rb.add("per_symbol_mi", r.per_symbol_mi);
  rb.add("total_mi", r.per_symbol_mi * r.n);
  rb.add("limit", r.limit);
  rb.add("deviation", r.deviation);
  return oc;
}

Outcome run_wiretap(const RunConfig& cfg, bool simulate) {
  JointDistribution jy = load_or_throw(cfg.dist_path);
  if (cfg.dist_z_path.empty()) throw std::invalid_argument("--dist-z is required");
  JointDistribution jz = load_joint(cfg.dist_z_path);
  if (jy.na() != jz.na()) throw std::invalid_argument("--dist and --dist-z disagree on |X|");
  Distribution px = jy.marginal_a();
  Distribution px_z = jz.marginal_a();
  for (std::size_t x = 0; x < px.size(); ++x)
    if (std::abs(px[x] - px_z[x]) > 1e-9)
      throw std::invalid_argument("--dist and --dist-z have different X marginals");
  Channel ch_y = jy.channel_b_given_a();
  Channel ch_z = jz.channel_b_given_a();
  const Alpha a = parse_alpha(cfg.alpha_text);
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("wiretap"));
  rb.add("alpha", alpha_field(a));
  rb.add("rate", cfg.rate);
  rb.add("exponent", wiretap_exponent(px, ch_y, ch_z, cfg.rate, a, cfg.tol));
  if (simulate) {
    TypeClassSpec spec = TypeClassSpec::make(px, cfg.n);
    RateSplit split = find_rate_split(px, ch_y, ch_z, spec, a, cfg.tol);
    WiretapSimReport rep = wiretap_minicode_sim(px, ch_y, ch_z, spec, split, a, cfg.trials, cfg.seed);
    rb.add_count("n", static_cast<std::uint64_t>(rep.n));
    rb.add_count("k1", split.k1);
    rb.add_count("k2", split.k2);
    rb.add_count("k3", split.k3);
    rb.add("r1", split.r1);
    rb.add("r2", split.r2);
    rb.add("r3", split.r3);
    rb.add("h_x_given_y", split.h_x_given_y);
    rb.add("secrecy_budget", split.secrecy_budget);
    rb.add("block_mi_z_total", rep.block_mi_z_total);
    rb.add_count("seed", cfg.seed);
    rb.add_count("trials", rep.leakage_stats.trials());
    rb.add("leakage_bound", rep.leakage_bound);
    add_stats(rb, "leakage", rep.leakage_stats);
    add_stats(rb, "error", rep.error_stats);
    rb.add("joint_success_fraction", rep.joint_success_fraction);
    oc.violated = mean_violates(rep.leakage_stats, rep.leakage_bound) ||
                  rep.joint_success_fraction <= 1.0 / 3.0;
    rb.set_records(rep.records);
  }
  return oc;
}

Outcome run_quantum_check(const RunConfig& cfg) {
  const Alpha a = parse_alpha(cfg.alpha_text);
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("quantum-check"));
  rb.add("alpha", alpha_field(a));
  rb.add_count("seed", cfg.seed);
  rb.add_count("trials", cfg.trials);

  // benchmark gammas of the three reference maps
  const double g_id = gamma_of_map(kraus_identity(4), 4, 4);
  const double g_pt = gamma_of_map(kraus_partial_trace(2, 2), 4, 2);
  Cmat iso = Cmat::Zero(4, 2);
  iso(0, 0) = 1.0;
  iso(1, 1) = 1.0;
  const double g_cp = gamma_of_map(kraus_compression(iso), 4, 2);
  rb.add("gamma_identity", g_id);
  rb.add("gamma_partial_trace", g_pt);
  rb.add("gamma_compression", g_cp);
  bool gamma_ok = std::abs(g_id - 16.0) <= 1e-10 && std::abs(g_pt - 8.0) <= 1e-10 &&
                  std::abs(g_cp - 16.0) <= 1e-10;

  // Haar second moment on a seeded random Hermitian input
  RngStream mom_rng(cfg.seed, 424242);
  Cmat m = random_density_matrix(mom_rng, 4) * 4.0;
  HaarMomentReport mom = haar_second_moment_check(m, 2, cfg.trials, cfg.seed + 101);
  rb.add("haar_deviation", mom.frobenius_deviation);
  rb.add("haar_bound", mom.bound);

  // two-qubit system, one qubit traced out, seeded random pure state
  RngStream state_rng(cfg.seed, 999999937);
  DensityMatrix rho(random_pure_state(state_rng, 8));
  QuantumDecouplingReport rep = decoupling_mc(rho, 4, 2, kraus_partial_trace(2, 2), a,
                                              cfg.trials, cfg.seed);
  rb.add("gamma", rep.gamma);
  rb.add("w_source", rep.w_source);
  rb.add("w_bound", rep.w_bound);
  add_stats(rb, "w", rep.w_stats);
  rb.add_flag("v_applicable", rep.v_applicable);
  if (rep.v_applicable) {
    rb.add("v_source", rep.v_source);
    rb.add("v_bound", rep.v_bound);
    add_stats(rb, "v", rep.v_stats);
  }
  oc.violated = !gamma_ok || mom.frobenius_deviation > mom.bound ||
                mean_violates(rep.w_stats, rep.w_bound) ||
                (rep.v_applicable && mean_violates(rep.v_stats, rep.v_bound));
  rb.set_records(rep.records);
  return oc;
}

Outcome run_selftest(const RunConfig& cfg) {
  Outcome oc;
  ReportBuilder& rb = oc.report;
  rb.add("subcommand", std::string("selftest"));
  rb.add_count("seed", cfg.seed);
  int failures = 0;
  std::uint64_t checks = 0;
  auto record = [&](const std::string& name, bool ok) {
    rb.add_flag(name, ok);
    ++checks;
    if (!ok) ++failures;
  };

  bool erasure_ok = true;
  for (double eps : {0.1, 0.5, 0.9})
    for (std::size_t na : {std::size_t{2}, std::size_t{4}, std::size_t{8}})
      for (double al : {1.2, 1.5, 2.0}) {
        JointDistribution j = JointDistribution::from_marginal_channel(Distribution::uniform(na),
                                                                      Channel::erasure(na, eps));
        const double da = double(na);
        const double w_expect =
            (1.0 - eps) *
            std::pow(std::pow(1.0 - 1.0 / da, al) + (da - 1.0) / std::pow(da, al), 1.0 / al);
        const double v_expect = std::pow(da, 1.0 - 1.0 / al) * w_expect;
        erasure_ok = erasure_ok && std::abs(w_alpha(j, Alpha(al)) - w_expect) <= 1e-12 &&
                     std::abs(v_alpha(j, Alpha(al)) - v_expect) <= 1e-12;
      }
  record("erasure_closed_forms", erasure_ok);

  SeededRng root(cfg.seed);
  bool ts_ok = true;
  for (std::uint64_t t = 0; t < 200; ++t) {
    RngStream rng = root.stream(t);
    const std::size_t na = 2 + rng.uniform_below(5);
    const std::size_t nb = 2 + rng.uniform_below(5);
    JointDistribution j = random_joint(rng, na, nb, 1.0);
    ts_ok = ts_ok && std::abs(std::sqrt(tsallis_mi(j, 2.0)) - v_alpha(j, Alpha(2.0))) <= 1e-10;
  }
  record("tsallis_chi_square_identity", ts_ok);

  bool sandwich_ok = true;
  for (std::uint64_t t = 0; t < 500 && sandwich_ok; ++t) {
    RngStream rng = root.stream(1000 + t);
    const std::size_t na = 2 + rng.uniform_below(4);
    const std::size_t nb = 2 + rng.uniform_below(4);
    JointDistribution j = random_joint(rng, na, nb, 1.0);
    JointDistribution ju =
        JointDistribution::from_marginal_channel(Distribution::uniform(na), random_channel(rng, na, nb, 1.0));
    double prev_v = -1.0, prev_w = -1.0;
    for (double al : {1.1, 1.4, 2.0, 3.0}) {
      Alpha a(al);
      const double v = v_alpha(j, a);
      const double core = std::pow(2.0, sibson_mi(j, a) * a.inv_conjugate());
      sandwich_ok = sandwich_ok && v >= core - 1.0 - 1e-9 && v <= core + 1.0 + 1e-9;
      const double scaled_w = std::pow(double(na), a.inv_conjugate()) * w_alpha(j, a);
      sandwich_ok = sandwich_ok && v >= prev_v - 1e-9 && scaled_w >= prev_w - 1e-9;
      prev_v = v;
      prev_w = scaled_w;
      const double vu = v_alpha(ju, a);
      const double wu_scaled = std::pow(double(na), a.inv_conjugate()) * w_alpha(ju, a);
      sandwich_ok = sandwich_ok && std::abs(vu - wu_scaled) <= 1e-9;
    }
  }
  record("sandwich_and_monotonicity", sandwich_ok);

  bool dpi_ok = true;
  for (std::uint64_t t = 0; t < 100 && dpi_ok; ++t) {
    RngStream rng = root.stream(2000 + t);
    const std::size_t na = 2 + rng.uniform_below(3);
    const std::size_t nb = 2 + rng.uniform_below(3);
    JointDistribution j = random_joint(rng, na, nb, 1.0);
    Channel post_b = random_channel(rng, nb, 2 + rng.uniform_below(3), 1.0);
    Channel post_a = random_channel(rng, na, 2 + rng.uniform_below(3), 1.0);
    for (double al : {1.5, 2.0}) {
      Alpha a(al);
      dpi_ok = dpi_ok && v_alpha(postprocess_b(j, post_b), a) <= v_alpha(j, a) + 1e-9 &&
               v_alpha(postprocess_a(j, post_a), a) <= v_alpha(j, a) + 1e-9 &&
               w_alpha(postprocess_b(j, post_b), a) <= w_alpha(j, a) + 1e-9;
    }
  }
  record("data_processing", dpi_ok);

  bool csiszar_ok = true;
  {
    JointDistribution eq =
        JointDistribution::from_marginal_channel(Distribution::uniform(2), Channel::identity(2));
    MeasureResult r = csiszar_mi(eq, Alpha(2.0), 1e-8);
    csiszar_ok = std::abs(r.value - 1.0) <= 1e-6 && r.cert.gap() <= 1e-6;
    for (std::uint64_t t = 0; t < 20 && csiszar_ok; ++t) {
      RngStream rng = root.stream(3000 + t);
      JointDistribution j = random_joint(rng, 2 + rng.uniform_below(3), 2 + rng.uniform_below(3), 1.0);
      MeasureResult rr = csiszar_mi(j, Alpha(1.5), 1e-8);
      csiszar_ok = rr.cert.gap() <= 1e-6;
    }
  }
  record("csiszar_certificates", csiszar_ok);

  {
    JointDistribution eq =
        JointDistribution::from_marginal_channel(Distribution::uniform(4), Channel::identity(4));
    HayashiComparison hc = hayashi_comparison(eq, 2, Alpha(2.0), 10, cfg.seed);
    record("hayashi_binning", hc.lhs_stats.exact && !mean_violates(hc.lhs_stats, hc.rhs));
    DecouplingCheck chk = decoupling_bound_check(eq, 2, Alpha(2.0), 10, cfg.seed);
    bool dec_ok = chk.w_stats.exact && chk.v_stats.has_value() &&
                  std::abs(chk.v_stats->mean - 1.0) <= 1e-9 &&
                  chk.v_stats->mean <= chk.v_bound + kSlackEps && chk.identity_max_dev <= 1e-9;
    record("exact_decoupling", dec_ok);
  }

  rb.add_count("checks", checks);
  rb.add_count("failures", static_cast<std::uint64_t>(failures));
  oc.violated = failures > 0;
  return oc;
}

void emit(const RunConfig& cfg, const ReportBuilder& rb) {
  const std::string text = rb.render(parse_format(cfg.format_text));
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open --out path '" + cfg.out_path + "'");
  f << text;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_path, "write the report to this file instead of stdout");
  sub->add_option("--format", cfg.format_text, "csv or json")->default_str("csv");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"correlation-measure and binning-exponent lab"};
  app.require_subcommand(1);

  CLI::App* measure = app.add_subcommand("measure", "evaluate one quantity on a joint file");
  measure->add_option("--quantity", cfg.quantity, "which measure to compute")->required();
  measure->add_option("--alpha", cfg.alpha_text, "Renyi order (decimal or 'inf')");
  measure->add_option("--dist", cfg.dist_path, "joint distribution file")->required();
  measure->add_option("--tol", cfg.tol, "optimizer tolerance");
  add_common(measure, cfg);

  CLI::App* binning = app.add_subcommand("binning", "random regular binning decoupling check");
  binning->add_option("--dist", cfg.dist_path, "joint distribution file")->required();
  binning->add_option("--k", cfg.k, "bin size (k-to-1)");
  binning->add_option("--alpha", cfg.alpha_text, "Renyi order in [1,2]");
  binning->add_option("--trials", cfg.trials, "Monte-Carlo trials");
  binning->add_option("--seed", cfg.seed, "master seed");
  add_common(binning, cfg);

  CLI::App* pamp = app.add_subcommand("privacy-amp", "linear-hash privacy amplification experiment");
  pamp->add_option("--dist", cfg.dist_path, "joint distribution file, uniform A on {0,1}^k")->required();
  pamp->add_option("--ell", cfg.ell, "bits dropped by the hash");
  pamp->add_option("--alpha", cfg.alpha_text, "Renyi order in [1,2]");
  pamp->add_option("--trials", cfg.trials, "Monte-Carlo trials");
  pamp->add_option("--seed", cfg.seed, "master seed");
  add_common(pamp, cfg);

  CLI::App* expo = app.add_subcommand("exponent", "secrecy exponent of regular binning");
  expo->add_option("--dist", cfg.dist_path, "joint distribution file")->required();
  expo->add_option("--rate", cfg.rate, "binning rate R")->required();
  expo->add_option("--alpha", cfg.alpha_text, "Renyi order in (1,2]");
  expo->add_option("--tol", cfg.tol, "optimizer tolerance");
  expo->add_option("--grid", cfg.grid, "emit the exponent curve on this many alpha points");
  expo->add_flag("--duality", cfg.duality, "also certify the exchanged min-max form");
  add_common(expo, cfg);

  CLI::App* block = app.add_subcommand("block-mi", "exact block Sibson MI over a type class");
  block->add_option("--dist", cfg.dist_path, "joint distribution file")->required();
  block->add_option("--n", cfg.n, "block length (n * p_A must be integral)");
  block->add_option("--alpha", cfg.alpha_text, "Renyi order, finite > 1");
  block->add_option("--tol", cfg.tol, "reference-value tolerance");
  add_common(block, cfg);

  CLI::App* wt = app.add_subcommand("wiretap", "wiretap exponent and minicode simulation");
  wt->add_option("--dist", cfg.dist_path, "joint X-Y distribution file")->required();
  wt->add_option("--dist-z", cfg.dist_z_path, "joint X-Z distribution file")->required();
  wt->add_option("--rate", cfg.rate, "secrecy rate R");
  wt->add_option("--alpha", cfg.alpha_text, "Renyi order in (1,2]");
  CLI::Option* wt_n = wt->add_option("--n", cfg.n, "block length; enables the simulation");
  wt->add_option("--trials", cfg.trials, "simulation trials");
  wt->add_option("--seed", cfg.seed, "master seed");
  wt->add_option("--tol", cfg.tol, "optimizer tolerance");
  add_common(wt, cfg);

  CLI::App* qc = app.add_subcommand("quantum-check", "Haar decoupling on the two-qubit instance");
  qc->add_option("--alpha", cfg.alpha_text, "1 or 2");
  qc->add_option("--trials", cfg.trials, "Monte-Carlo trials");
  qc->add_option("--seed", cfg.seed, "master seed");
  add_common(qc, cfg);

  CLI::App* st = app.add_subcommand("selftest", "run the condensed property suite");
  st->add_option("--seed", cfg.seed, "master seed");
  add_common(st, cfg);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome oc;
    if (measure->parsed()) {
      oc = run_measure(cfg);
    } else if (binning->parsed()) {
      oc = run_binning(cfg);
    } else if (pamp->parsed()) {
      oc = run_privacy_amp(cfg);
    } else if (expo->parsed()) {
      oc = run_exponent(cfg);
    } else if (block->parsed()) {
      oc = run_block_mi(cfg);
    } else if (wt->parsed()) {
      oc = run_wiretap(cfg, wt_n->count() > 0);
    } else if (qc->parsed()) {
      oc = run_quantum_check(cfg);
    } else if (st->parsed()) {
      oc = run_selftest(cfg);
    } else {
      throw std::invalid_argument("no subcommand selected");
    }
    emit(cfg, oc.report);
    if (oc.violated) {
      std::cerr << "contract violation: a certified bound was breached beyond tolerance\n";
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace vvcorr
