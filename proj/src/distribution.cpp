#include "vvcorr/distribution.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vvcorr {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kParseSumTol = 1e-9;
constexpr double kEntryFloor = 1e-9;

void check_probability_vector(const std::vector<double>& p, double sum_tol, const char* what) {
  if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  double total = 0.0;
  for (double x : p) {
    if (std::isnan(x) || x < 0.0) {
      throw std::invalid_argument(std::string(what) + ": entries must be >= 0");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > sum_tol) {
    throw std::invalid_argument(std::string(what) + ": entries must sum to 1");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> p) : p_(std::move(p)) {
  check_probability_vector(p_, kSumTol, "Distribution");
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Distribution::uniform: n must be > 0");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw std::invalid_argument("Distribution::point_mass: index out of range");
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return Distribution(std::move(p));
}

Channel::Channel(std::size_t na, std::size_t nb, std::vector<double> rows)
    : na_(na), nb_(nb), t_(std::move(rows)) {
  if (na_ == 0 || nb_ == 0 || t_.size() != na_ * nb_) {
    throw std::invalid_argument("Channel: bad shape");
  }
  for (std::size_t a = 0; a < na_; ++a) {
    std::vector<double> row(t_.begin() + a * nb_, t_.begin() + (a + 1) * nb_);
    check_probability_vector(row, kSumTol, "Channel row");
  }
}

Channel Channel::identity(std::size_t n) {
  std::vector<double> t(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) t[i * n + i] = 1.0;
  return Channel(n, n, std::move(t));
}

Channel Channel::erasure(std::size_t na, double eps) {
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("erasure: eps must be in [0,1]");
  std::vector<double> t(na * (na + 1), 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    t[a * (na + 1) + a] = 1.0 - eps;
    t[a * (na + 1) + na] = eps;
  }
  return Channel(na, na + 1, std::move(t));
}

Channel Channel::binary_symmetric(double crossover) {
  if (crossover < 0.0 || crossover > 1.0) {
    throw std::invalid_argument("binary_symmetric: crossover must be in [0,1]");
  }
  return Channel(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

std::vector<double> Channel::row(std::size_t a) const {
  return std::vector<double>(t_.begin() + a * nb_, t_.begin() + (a + 1) * nb_);
}

JointDistribution::JointDistribution(std::size_t na, std::size_t nb, std::vector<double> table)
    : na_(na), nb_(nb), t_(std::move(table)) {
  if (na_ == 0 || nb_ == 0 || t_.size() != na_ * nb_) {
    throw std::invalid_argument("JointDistribution: bad shape");
  }
  check_probability_vector(t_, kSumTol, "JointDistribution");
}

JointDistribution JointDistribution::from_marginal_channel(const Distribution& pa,
                                                           const Channel& ch) {
  if (pa.size() != ch.na()) {
    throw std::invalid_argument("from_marginal_channel: marginal/channel size mismatch");
  }
  std::vector<double> t(pa.size() * ch.nb());
  for (std::size_t a = 0; a < pa.size(); ++a) {
    for (std::size_t b = 0; b < ch.nb(); ++b) {
      t[a * ch.nb() + b] = pa[a] * ch.at(a, b);
    }
  }
  return JointDistribution(pa.size(), ch.nb(), std::move(t));
}

JointDistribution JointDistribution::product(const Distribution& pa, const Distribution& pb) {
  std::vector<double> t(pa.size() * pb.size());
  for (std::size_t a = 0; a < pa.size(); ++a) {
    for (std::size_t b = 0; b < pb.size(); ++b) {
      t[a * pb.size() + b] = pa[a] * pb[b];
    }
  }
  return JointDistribution(pa.size(), pb.size(), std::move(t));
}

Distribution JointDistribution::marginal_a() const {
  std::vector<double> p(na_, 0.0);
  for (std::size_t a = 0; a < na_; ++a) {
    for (std::size_t b = 0; b < nb_; ++b) p[a] += t_[a * nb_ + b];
  }
  // Tiny negative rounding cannot occur (entries >= 0); renormalize drift.
  double total = 0.0;
  for (double x : p) total += x;
  for (auto& x : p) x /= total;
  return Distribution(std::move(p));
}

Distribution JointDistribution::marginal_b() const {
  std::vector<double> p(nb_, 0.0);
  for (std::size_t a = 0; a < na_; ++a) {
    for (std::size_t b = 0; b < nb_; ++b) p[b] += t_[a * nb_ + b];
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (auto& x : p) x /= total;
  return Distribution(std::move(p));
}

ConditionalRow JointDistribution::conditional_b_given_a(std::size_t a) const {
  double pa = 0.0;
  for (std::size_t b = 0; b < nb_; ++b) pa += t_[a * nb_ + b];
  ConditionalRow row;
  row.p.resize(nb_);
  if (pa <= 0.0) {
    row.degenerate = true;
    for (auto& x : row.p) x = 1.0 / static_cast<double>(nb_);
    return row;
  }
  for (std::size_t b = 0; b < nb_; ++b) row.p[b] = t_[a * nb_ + b] / pa;
  return row;
}

ConditionalRow JointDistribution::conditional_a_given_b(std::size_t b) const {
  double pb = 0.0;
  for (std::size_t a = 0; a < na_; ++a) pb += t_[a * nb_ + b];
  ConditionalRow row;
  row.p.resize(na_);
  if (pb <= 0.0) {
    row.degenerate = true;
    for (auto& x : row.p) x = 1.0 / static_cast<double>(na_);
    return row;
  }
  for (std::size_t a = 0; a < na_; ++a) row.p[a] = t_[a * nb_ + b] / pb;
  return row;
}

Channel JointDistribution::channel_b_given_a(std::vector<std::size_t>* degenerate_rows) const {
  std::vector<double> rows(na_ * nb_);
  for (std::size_t a = 0; a < na_; ++a) {
    ConditionalRow row = conditional_b_given_a(a);
    if (row.degenerate && degenerate_rows != nullptr) degenerate_rows->push_back(a);
    for (std::size_t b = 0; b < nb_; ++b) rows[a * nb_ + b] = row.p[b];
  }
  return Channel(na_, nb_, std::move(rows));
}

JointDistribution JointDistribution::swapped() const {
  std::vector<double> t(nb_ * na_);
  for (std::size_t a = 0; a < na_; ++a) {
    for (std::size_t b = 0; b < nb_; ++b) t[b * na_ + a] = t_[a * nb_ + b];
  }
  return JointDistribution(nb_, na_, std::move(t));
}

JointDistribution parse_joint(std::istream& in) {
  std::size_t na = 0, nb = 0;
  if (!(in >> na >> nb) || na == 0 || nb == 0) {
    throw std::invalid_argument("parse_joint: bad header line");
  }
  std::vector<double> t(na * nb);
  double total = 0.0;
  for (std::size_t i = 0; i < na * nb; ++i) {
    if (!(in >> t[i])) throw std::invalid_argument("parse_joint: malformed entry");
    if (std::isnan(t[i]) || t[i] < 0.0) {
      throw std::invalid_argument("parse_joint: entries must be >= 0");
    }
    total += t[i];
  }
  if (std::abs(total - 1.0) > kParseSumTol) {
    throw std::invalid_argument("parse_joint: entries must sum to 1 within 1e-9");
  }
  // Absorb parse-tolerance drift so downstream invariants hold exactly.
  for (auto& x : t) x /= total;
  return JointDistribution(na, nb, std::move(t));
}

JointDistribution parse_joint_string(const std::string& text) {
  std::istringstream in(text);
  return parse_joint(in);
}

JointDistribution load_joint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_joint: cannot open " + path);
  return parse_joint(in);
}

std::string format_joint(const JointDistribution& j) {
  std::ostringstream out;
  out.precision(17);
  out << j.na() << " " << j.nb() << "\n";
  for (std::size_t a = 0; a < j.na(); ++a) {
    for (std::size_t b = 0; b < j.nb(); ++b) {
      out << j.at(a, b) << (b + 1 == j.nb() ? "\n" : " ");
    }
  }
  return out.str();
}

void save_joint(const JointDistribution& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_joint: cannot open " + path);
  out << format_joint(j);
}

JointDistribution iid_extension(const JointDistribution& j, int n, std::size_t max_cells) {
  if (n < 1) throw std::invalid_argument("iid_extension: n must be >= 1");
  std::size_t na = 1, nb = 1;
  for (int i = 0; i < n; ++i) {
    if (na > max_cells / j.na() || nb > max_cells / j.nb()) {
      throw std::invalid_argument("iid_extension: table exceeds memory budget");
    }
    na *= j.na();
    nb *= j.nb();
  }
  if (na > max_cells / nb) {
    throw std::invalid_argument("iid_extension: table exceeds memory budget");
  }
  std::vector<double> t(na * nb);
  for (std::size_t an = 0; an < na; ++an) {
    for (std::size_t bn = 0; bn < nb; ++bn) {
      double v = 1.0;
      std::size_t ar = an, br = bn;
      for (int i = 0; i < n; ++i) {
        v *= j.at(ar % j.na(), br % j.nb());
        ar /= j.na();
        br /= j.nb();
      }
      t[an * nb + bn] = v;
    }
  }
  // Renormalize accumulated rounding drift.
  double total = 0.0;
  for (double x : t) total += x;
  for (auto& x : t) x /= total;
  return JointDistribution(na, nb, std::move(t));
}

JointDistribution random_joint(RngStream& rng, std::size_t na, std::size_t nb,
                               double concentration) {
  std::vector<double> t = rng.dirichlet(na * nb, concentration);
  double total = 0.0;
  for (auto& x : t) {
    x += 2.0 * kEntryFloor;
    total += x;
  }
  for (auto& x : t) x /= total;
  return JointDistribution(na, nb, std::move(t));
}

Channel random_channel(RngStream& rng, std::size_t na, std::size_t nb, double concentration) {
  std::vector<double> rows(na * nb);
  for (std::size_t a = 0; a < na; ++a) {
    std::vector<double> row = rng.dirichlet(nb, concentration);
    double total = 0.0;
    for (auto& x : row) {
      x += 2.0 * kEntryFloor;
      total += x;
    }
    for (std::size_t b = 0; b < nb; ++b) rows[a * nb + b] = row[b] / total;
  }
  return Channel(na, nb, std::move(rows));
}

Distribution random_distribution(RngStream& rng, std::size_t n, double concentration) {
  std::vector<double> p = rng.dirichlet(n, concentration);
  double total = 0.0;
  for (auto& x : p) {
    x += 2.0 * kEntryFloor;
    total += x;
  }
  for (auto& x : p) x /= total;
  return Distribution(std::move(p));
}

}  // namespace vvcorr
