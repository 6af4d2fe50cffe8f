#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gflat/parallel.hpp"

namespace gflat {

struct SuiteCheck {
  std::string label;
  bool passed = false;
  double observed = 0.0;
  double bound = 0.0;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<SuiteCheck> checks;

  // observed must stay <= bound.
  void require_at_most(std::string label, double observed, double bound);
  // observed must stay >= bound.
  void require_at_least(std::string label, double observed, double bound);
  void require(std::string label, bool ok, double observed = 0.0, double bound = 0.0);
  double worst_margin() const;  // max of observed - bound over <= checks
};

// The verification suites; the acceptance harness runs all of them at
// pinned parameters, and the CLI exposes them by name.
SuiteResult suite_remark_formulas(std::uint64_t seed);
SuiteResult suite_example11_regression(std::uint64_t seed, Exec exec = Exec::parallel);
SuiteResult suite_euclid_identity(int trials, std::uint64_t seed);
SuiteResult suite_lemma(std::uint64_t seed);
SuiteResult suite_decay_profiles(std::uint64_t seed, Exec exec = Exec::parallel);
SuiteResult suite_falsification(int random_fields, std::uint64_t seed,
                                Exec exec = Exec::parallel);
SuiteResult suite_fd_oracle(std::uint64_t seed);
SuiteResult suite_grid_parity(std::uint64_t seed);

}  // namespace gflat
