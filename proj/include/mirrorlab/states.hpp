#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "mirrorlab/bipartite.hpp"

namespace mirrorlab {

struct StateSample {
  BipartiteOperator rho;
  std::string family;
  std::map<std::string, double> params;
  bool normalized = true;  // unit trace when set
  std::optional<bool> ppt;
  std::optional<double> realignment;
};

// The C^4 (x) C^4 family (unnormalized, PPT for every x > 0)
//   rho_x = sum_i [3|ii><ii| + x|i,i+1><i,i+1| + |i,i+2><i,i+2| + (1/x)|i,i+3><i,i+3|]
//         - sum_{i!=j} |ii><jj|.
StateSample rho_x_c4(double x);

// Ha-Kye detector family on C^3 (x) C^3 (unnormalized): circulant core on
// span{|00>,|11>,|22>} with diagonal t and off-diagonal phases
// +/- e^{i theta} (kind 'x' uses +, kind 'y' uses -), unit weights on every
// |i,j> (i != j) level. rho is PPT iff the 3x3 core is PSD, i.e.
//   t >= 1  and  t^3 +/- 2cos(3 theta) - 3t >= 0.
StateSample hakye_rho(char kind, double t, double theta);

// Smallest t >= 1 satisfying the closed-form PPT predicate above.
double hakye_ppt_threshold(char kind, double theta);

// Bell-diagonal (magic simplex) state sum c_kl P_kl for c on the simplex.
StateSample bell_diagonal_state(const std::array<double, 9>& c);

// Draw flat-simplex Bell-diagonal states until n PPT samples are collected
// (deterministic per-draw streams derived from seed); each sample carries its
// realignment norm.
std::vector<StateSample> sample_ppt_bell_diagonal(int n, std::uint64_t seed);

// Wishart-style random density matrix, rejection-filtered to PPT; nullopt
// when the budget is exhausted.
std::optional<StateSample> random_ppt_state(int dim_a, int dim_b, std::uint64_t seed,
                                            int budget = 20000);

// Pinching onto the Bell basis: sum_kl P_kl rho P_kl. Fixes exactly the
// Bell-diagonal states.
BipartiteOperator weyl_pinching(const BipartiteOperator& rho);

}  // namespace mirrorlab
