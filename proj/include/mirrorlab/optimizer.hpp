#pragma once

#include <optional>

#include "mirrorlab/families.hpp"
#include "mirrorlab/optimizer_config.hpp"

namespace mirrorlab {

enum class ExtremumMode { Inf, Sup };

// Bilinear optimization of <psi (x) phi| Q |psi (x) phi> over normalized
// product vectors: alternate exact eigenvector updates on the two factors
// (see-saw), multistarted from the computational product basis, from
// Schmidt-factorized extremal eigenvectors of Q, and from Haar-random
// products. The value sequence of each run is monotone; the returned value
// is attained by the returned vector, so it is a certified one-sided bound
// (an upper bound on the infimum, a lower bound on the supremum).
struct OptimizationResult {
  double value = 0.0;
  ProductVector extremal;
  int restarts_used = 0;
  int iterations = 0;  // sweeps of the winning run
  bool converged = false;
  // best two locally-converged basins differ by more than 1e-6
  bool uncertainty_flag = false;
  std::vector<double> history;  // winning run, when cfg.include_history
};

OptimizationResult product_extrema(const BipartiteOperator& q, ExtremumMode mode,
                                   const OptimizerConfig& cfg = {});

struct BlockPositivity {
  bool positive = false;
  double inf_value = 0.0;
  std::optional<ProductVector> violation;
};
BlockPositivity is_block_positive(const BipartiteOperator& w, double tol = 1e-7,
                                  const OptimizerConfig& cfg = {});

// W_M = mu 1 - W with mu the product-state supremum of W; requires W
// block-positive and re-certifies the mirror.
struct MirrorResult {
  double mu = 0.0;
  BipartiteOperator mirrored;
  ProductVector attaining;
  bool uncertainty_flag = false;
  bool converged = false;
};
MirrorResult mirror(const WitnessRecord& w, const OptimizerConfig& cfg = {});
MirrorResult mirror(const BipartiteOperator& w, const OptimizerConfig& cfg = {});

// Separability window (0, mu): 0 <= tr(W sigma_sep) <= mu for separable
// sigma. Validated by Monte-Carlo containment in the tests.
std::pair<double, double> separability_window(const WitnessRecord& w,
                                              const OptimizerConfig& cfg = {});

// Collect product zeros of a block-positive W with inf value 0 by repeated
// inf-mode see-saw plus deflation restarts; report the rank of their span.
// Full rank certifies optimality (sufficient criterion); anything less is
// inconclusive.
struct SpanningResult {
  int rank = 0;
  bool spanning = false;
  std::vector<ProductVector> zeros;
};
SpanningResult spanning_property(const WitnessRecord& w, const OptimizerConfig& cfg = {},
                                 double zero_tol = 1e-7);
SpanningResult spanning_property(const BipartiteOperator& w, const OptimizerConfig& cfg = {},
                                 double zero_tol = 1e-7);

}  // namespace mirrorlab
