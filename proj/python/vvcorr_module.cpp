// Python bindings for the classical measures, experiments, and exponents.
// Joint tables and channels cross the boundary as nested lists of rows;
// experiment reports come back as plain dicts so callers stay free of any
// binding-generated types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vvcorr/binning.hpp"
#include "vvcorr/distribution.hpp"
#include "vvcorr/exponents.hpp"
#include "vvcorr/measures.hpp"
#include "vvcorr/quantum.hpp"
#include "vvcorr/simplex_opt.hpp"

namespace py = pybind11;
using namespace vvcorr;

namespace {

using Rows = std::vector<std::vector<double>>;

std::vector<double> flatten(const Rows& rows, std::size_t* na, std::size_t* nb) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("table must have at least one row and column");
  *na = rows.size();
  *nb = rows.front().size();
  std::vector<double> flat;
  flat.reserve(*na * *nb);
  for (const auto& r : rows) {
    if (r.size() != *nb) throw std::invalid_argument("table rows must have equal length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

JointDistribution make_joint(const Rows& rows) {
  std::size_t na = 0, nb = 0;
  std::vector<double> flat = flatten(rows, &na, &nb);
  return JointDistribution(na, nb, flat);
}

Channel make_channel(const Rows& rows) {
  std::size_t na = 0, nb = 0;
  std::vector<double> flat = flatten(rows, &na, &nb);
  return Channel(na, nb, flat);
}

py::dict stats_dict(const BinningTrialStats& s) {
  py::dict d;
  d["mean"] = s.mean;
  d["stderror"] = s.stderror;
  d["min"] = s.min;
  d["max"] = s.max;
  d["exact"] = s.exact;
  d["trials"] = s.trials();
  return d;
}

py::dict result_dict(const MeasureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["lower"] = r.cert.lower;
  d["upper"] = r.cert.upper;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vvcorr, m) {
  m.doc() = "Vector-valued-norm correlation measures and binning experiments";

  m.def(
      "v_alpha",
      [](const Rows& joint, double alpha) { return v_alpha(make_joint(joint), Alpha(alpha)); },
      py::arg("joint"), py::arg("alpha"),
      "Unnormalized order-alpha correlation measure of a joint table.");
  m.def(
      "w_alpha",
      [](const Rows& joint, double alpha) { return w_alpha(make_joint(joint), Alpha(alpha)); },
      py::arg("joint"), py::arg("alpha"),
      "Conditional-style order-alpha correlation measure of a joint table.");
  m.def(
      "v_infinity", [](const Rows& joint) { return v_infinity(make_joint(joint)); },
      py::arg("joint"), "Order-infinity limit of the correlation measure.");
  m.def(
      "shannon_mi", [](const Rows& joint) { return shannon_mi(make_joint(joint)); },
      py::arg("joint"), "Shannon mutual information in bits.");
  m.def(
      "sibson_mi",
      [](const Rows& joint, double alpha) { return sibson_mi(make_joint(joint), Alpha(alpha)); },
      py::arg("joint"), py::arg("alpha"), "Sibson mutual information of order alpha, in bits.");
  m.def(
      "cond_renyi_entropy",
      [](const Rows& joint, double alpha) {
        return cond_renyi_entropy(make_joint(joint), Alpha(alpha));
      },
      py::arg("joint"), py::arg("alpha"), "Arimoto conditional Renyi entropy, in bits.");
  m.def(
      "hayashi_cond_entropy",
      [](const Rows& joint, double alpha) {
        return hayashi_cond_entropy(make_joint(joint), Alpha(alpha));
      },
      py::arg("joint"), py::arg("alpha"), "Hayashi conditional Renyi entropy, in bits.");
  m.def(
      "tsallis_mi",
      [](const Rows& joint, double alpha) { return tsallis_mi(make_joint(joint), alpha); },
      py::arg("joint"), py::arg("alpha"), "Closed-form Tsallis-style mutual information.");
  m.def(
      "chi_square_form_v2",
      [](const Rows& joint) { return chi_square_form_v2(make_joint(joint)); }, py::arg("joint"),
      "Chi-square representation of the order-2 measure.");
  m.def(
      "csiszar_mi",
      [](const Rows& joint, double alpha, double tol) {
        return result_dict(csiszar_mi(make_joint(joint), Alpha(alpha), tol));
      },
      py::arg("joint"), py::arg("alpha"), py::arg("tol") = 1e-8,
      "Certified Csiszar mutual information: value with a lower/upper enclosure.");
  m.def(
      "semantic_security_gap",
      [](const Rows& channel, const std::vector<double>& p_ref, const std::vector<double>& q) {
        SemanticSecurityGap g =
            semantic_security_gap(make_channel(channel), Distribution(p_ref), Distribution(q));
        py::dict d;
        d["mi_bits"] = g.mi_bits;
        d["bound"] = g.bound;
        d["slack"] = g.slack();
        return d;
      },
      py::arg("channel"), py::arg("p_ref"), py::arg("q"),
      "Shannon leakage of q through the channel against the uniform-norm bound under p_ref.");

  m.def(
      "binning_check",
      [](const Rows& joint, std::size_t k, double alpha, std::size_t trials, std::uint64_t seed) {
        DecouplingCheck c = decoupling_bound_check(make_joint(joint), k, Alpha(alpha), trials, seed);
        py::dict d;
        d["alpha"] = c.alpha;
        d["k"] = c.k;
        d["w_stats"] = stats_dict(c.w_stats);
        d["w_source"] = c.w_source;
        d["w_bound"] = c.w_bound;
        if (c.v_stats.has_value()) {
          d["v_stats"] = stats_dict(*c.v_stats);
          d["v_source"] = c.v_source;
          d["v_bound"] = c.v_bound;
          d["identity_max_dev"] = c.identity_max_dev;
        }
        return d;
      },
      py::arg("joint"), py::arg("k"), py::arg("alpha"), py::arg("trials") = 200,
      py::arg("seed") = 1,
      "Random k-to-1 binning decoupling check: trial statistics against certified bounds.");
  m.def(
      "privacy_amp",
      [](const Rows& joint, std::size_t ell, double alpha, std::size_t trials,
         std::uint64_t seed) {
        PrivacyAmpReport r = privacy_amp_experiment(make_joint(joint), ell, Alpha(alpha), trials, seed);
        py::dict d;
        d["k_bits"] = r.k_bits;
        d["ell"] = r.ell;
        d["alpha"] = r.alpha;
        d["v_source"] = r.v_source;
        d["v_bound"] = r.v_bound;
        d["v_stats"] = stats_dict(r.v_stats);
        d["trace_stats"] = stats_dict(r.trace_stats);
        d["trace_bound_general"] = r.trace_bound_general;
        d["trace_bound_alpha2"] = r.trace_bound_alpha2;
        d["min_v"] = r.min_v;
        return d;
      },
      py::arg("joint"), py::arg("ell"), py::arg("alpha") = 2.0, py::arg("trials") = 200,
      py::arg("seed") = 1,
      "Linear-hash privacy amplification on a uniform bit source: trial statistics and bounds.");
  m.def(
      "hayashi_check",
      [](const Rows& joint, std::size_t k, double alpha, std::size_t trials, std::uint64_t seed) {
        HayashiComparison h = hayashi_comparison(make_joint(joint), k, Alpha(alpha), trials, seed);
        py::dict d;
        d["alpha"] = h.alpha;
        d["k"] = h.k;
        d["lhs_stats"] = stats_dict(h.lhs_stats);
        d["rhs"] = h.rhs;
        return d;
      },
      py::arg("joint"), py::arg("k"), py::arg("alpha") = 2.0, py::arg("trials") = 200,
      py::arg("seed") = 1,
      "Binned conditional-collision mean against its additive-penalty bound.");

  m.def(
      "binning_exponent",
      [](const Rows& joint, double rate, double alpha, double tol) {
        return binning_exponent(make_joint(joint), rate, Alpha(alpha), tol);
      },
      py::arg("joint"), py::arg("rate"), py::arg("alpha"), py::arg("tol") = 1e-8,
      "Secrecy exponent of random regular binning at the given rate and order.");
  m.def(
      "optimized_exponent",
      [](const Rows& joint, double rate, double tol) {
        OptimizedExponent e = optimized_exponent(make_joint(joint), rate, tol);
        py::dict d;
        d["alpha_star"] = e.alpha_star;
        d["value"] = e.value;
        d["evaluations"] = e.evaluations;
        return d;
      },
      py::arg("joint"), py::arg("rate"), py::arg("tol") = 1e-6,
      "Exponent maximized over the order parameter on [1, 2].");
  m.def(
      "exponent_duality",
      [](const Rows& joint, double rate, double tol) {
        ExchangeCheck c = minimax_exchange_check(make_joint(joint), rate, tol);
        py::dict d;
        d["lhs"] = c.lhs;
        d["lhs_alpha"] = c.lhs_alpha;
        d["rhs"] = c.rhs;
        d["gap"] = std::abs(c.lhs - c.rhs);
        return d;
      },
      py::arg("joint"), py::arg("rate"), py::arg("tol") = 1e-4,
      "Order-side maximum against the exchanged channel-side minimum.");
  m.def(
      "block_mi",
      [](const std::vector<double>& base, const Rows& channel, double alpha,
         const std::vector<int>& ns, double tol) {
        std::vector<BlockMIRecord> recs =
            block_mi_ladder(Distribution(base), make_channel(channel), Alpha(alpha), ns, tol);
        py::list out;
        for (const BlockMIRecord& r : recs) {
          py::dict d;
          d["n"] = r.n;
          d["per_symbol_mi"] = r.per_symbol_mi;
          d["limit"] = r.limit;
          d["deviation"] = r.deviation;
          out.append(d);
        }
        return out;
      },
      py::arg("base"), py::arg("channel"), py::arg("alpha"), py::arg("ns"),
      py::arg("tol") = 1e-8,
      "Exact per-symbol block mutual information over type-class inputs, one record per n.");

  m.def(
      "gamma_identity", [](int d) { return gamma_of_map(kraus_identity(d), d, d); },
      py::arg("d"), "Swap-pairing constant of the identity map.");
  m.def(
      "gamma_partial_trace",
      [](int d_a0, int d_c) {
        return gamma_of_map(kraus_partial_trace(d_a0, d_c), d_a0 * d_c, d_a0);
      },
      py::arg("d_a0"), py::arg("d_c"), "Swap-pairing constant of tracing out a tensor factor.");
}
