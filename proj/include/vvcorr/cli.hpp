#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vvcorr {

// Parsed command-line configuration; validated against the target
// operation's preconditions before anything runs.
struct RunConfig {
  std::string subcommand;
  std::string quantity;
  std::string dist_path;
  std::string dist_z_path;   // wiretap eavesdropper joint
  std::string alpha_text = "2";
  double rate = 0.0;
  int n = 8;
  std::size_t k = 2;
  std::size_t ell = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::size_t grid = 0;      // exponent curve resolution; 0 = optimum only
  bool duality = false;      // exponent: also run the exchanged min-max check
  std::string out_path;      // empty = standard output
  std::string format_text = "csv";
};

// Runs one subcommand. Exit codes: 0 success; 1 contract violation (a bound
// empirically breached beyond tolerance, the lab's alarm condition); 2
// configuration error with a one-line diagnostic on standard error.
int run(const std::vector<std::string>& args);

}  // namespace vvcorr
