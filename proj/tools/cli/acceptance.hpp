#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace linfproj::acceptance {

struct Options {
  std::uint64_t seed = 0;
  /// Negative control: compare the centring norms against a perturbed
  /// constant so that criterion 1 must fail.
  bool corrupt_centring_constant = false;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_ms = 0;
  double limit_ms = 0;  // a criterion slower than this fails
};

/// Runs the eleven acceptance criteria in order. Exceptions inside a
/// criterion are caught and reported as failures.
std::vector<Outcome> run_all(const Options& options = {});

/// "PASS [3] kernel-of-sum constants (12.3 ms): <detail>"
std::string format_line(const Outcome& o);

}  // namespace linfproj::acceptance
