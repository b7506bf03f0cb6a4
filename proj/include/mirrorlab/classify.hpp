#pragma once

#include <optional>
#include <variant>

#include "mirrorlab/families.hpp"
#include "mirrorlab/optimizer.hpp"

namespace mirrorlab {

enum class Verdict {
  NotBlockPositive,
  PositiveSemidefinite,
  DecomposableEW,
  NonDecomposableEW,
  BlockPositiveUndetermined,
};

const char* verdict_name(Verdict v);

struct SpectrumCertificate {
  std::vector<double> eigenvalues;  // ascending
};

// W = A + B^Gamma with A, B >= -tol on the spectrum.
struct DecompositionCertificate {
  ComplexMatrix a;
  ComplexMatrix b;
  double reconstruction_error = 0.0;
  double min_eig_a = 0.0;
  double min_eig_b = 0.0;
  int iterations = 0;
};

// PPT state with tr(W rho) < 0.
struct DetectorCertificate {
  BipartiteOperator state;  // unit trace
  double pairing = 0.0;
  std::string strategy;
};

struct ViolationCertificate {
  ProductVector vec;
  double value = 0.0;
};

using Certificate = std::variant<std::monostate, SpectrumCertificate, DecompositionCertificate,
                                 DetectorCertificate, ViolationCertificate>;

struct Classification {
  Verdict verdict = Verdict::BlockPositiveUndetermined;
  Certificate certificate;
};

bool is_psd(const ComplexMatrix& op, double tol = 1e-9);
bool is_psd(const BipartiteOperator& op, double tol = 1e-9);

// PPT: both rho and rho^Gamma have spectrum >= -tol.
bool is_ppt(const BipartiteOperator& rho, double tol = 1e-9);

// Alternating-projection search for W = A + B^Gamma with A, B >= 0, between
// the affine set {A + B^Gamma = W} and the PSD cone in each factor.
// Phase 1 is plain Dykstra-corrected projection (provably convergent); its
// stall heuristic aborts when the residual is far above tol and has stopped
// decreasing. Phase 2 re-attacks surviving cases with Douglas-Rachford
// splitting, which handles the boundary-touching mirrors (singular 2x2
// minors) that plain Dykstra approaches only at an O(1) rate per thousand
// iterations. Either phase returns only a fully re-validated certificate.
struct DecomposeConfig {
  int max_iter = 40000;       // phase 1 budget
  double tol = 1e-8;
  int stall_window = 2500;
  double stall_ratio = 0.9;   // abort if residual(k) > stall_ratio * residual(k - window)
  double stall_margin = 1e3;  // ...while still above stall_margin * tol
  int dr_max_iter = 30000;    // phase 2 budget; 0 disables the fallback
  int dr_check_every = 200;
};
std::optional<DecompositionCertificate> decompose_dnd(const BipartiteOperator& w,
                                                      const DecomposeConfig& cfg = {});

// The closed-form mirror decompositions: for each supported family/parameter
// the target operator M (the family's mirrored operator) together with PSD
// A, B such that M = A + B^Gamma.
struct ExplicitDecomposition {
  BipartiteOperator target;
  ComplexMatrix a;
  ComplexMatrix b;
};
// family in {"abc-phi", "abcd-class2", "abcd-class1-opt", "tau"}; params:
//   abc-phi: {"phi"} with phi in [0, 2pi/3] u [4pi/3, 2pi)
//   abcd-class2: {"theta"} with theta in (0, pi/2)
//   abcd-class1-opt: {"theta"} with theta in [0, pi] \ {pi/2}
//   tau: {"n","k"} with k = 1, n >= 4, or k = n-2, n >= 5 odd
ExplicitDecomposition explicit_mirror_decomposition(const std::string& family,
                                                    const std::map<std::string, double>& params);

struct DetectorConfig {
  bool parametric = true;
  bool random = true;
  bool descent = true;
  int random_budget = 2000;
  int descent_starts = 4;
  int descent_iters = 220;
  int projection_iters = 60;
  int bell_samples = 1200;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

// Search for a PPT state rho with tr(w rho) < -tol, in order: the parametric
// detector families, random PPT states, then projected-gradient descent of
// tr(w rho) over the PPT set. Absence is a value, not an error.
std::optional<DetectorCertificate> find_ppt_detector(const BipartiteOperator& w,
                                                     const DetectorConfig& cfg = {});

struct ClassifyConfig {
  OptimizerConfig optimizer;
  DecomposeConfig decompose;
  DetectorConfig detector;
  double psd_tol = 1e-9;
  double block_tol = 1e-7;
};

// Pipeline: block-positivity -> PSD -> Dykstra decomposition -> detector
// search -> BlockPositiveUndetermined. Decomposition failure is evidence,
// never proof; only a detector certificate escalates to NonDecomposableEW.
Classification classify_witness(const BipartiteOperator& w, const ClassifyConfig& cfg = {});
Classification classify_witness(const WitnessRecord& w, const ClassifyConfig& cfg = {});

// Re-validate a certificate against the operator it claims to describe.
bool certificate_valid(const BipartiteOperator& w, const Classification& c, double tol = 1e-7);

}  // namespace mirrorlab
