#pragma once

#include <cstdint>

namespace mirrorlab {

// Knobs for the see-saw product-state optimizer. Defaults reproduce every
// pinned number in the test suite from seed 0.
struct OptimizerConfig {
  int restarts = 64;           // random Haar product starts on top of the deterministic seeds
  int max_sweeps = 500;        // see-saw sweeps per start
  double converge_tol = 1e-12; // value change that counts as converged...
  int converge_streak = 3;     // ...when sustained this many sweeps
  double tol = 1e-7;           // block-positivity margin
  std::uint64_t seed = 0;
  bool parallel = true;
  bool include_history = false;
};

}  // namespace mirrorlab
