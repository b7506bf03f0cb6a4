#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "mirrorlab/bipartite.hpp"
#include "mirrorlab/maps.hpp"
#include "mirrorlab/optimizer_config.hpp"

namespace mirrorlab {

// A constructed witness: the operator plus enough metadata to rebuild it.
struct WitnessRecord {
  BipartiteOperator op;
  std::string family;
  std::map<std::string, double> params;
  std::string provenance;  // constructor id, e.g. "registry:abc-phi"
};

// ---------------------------------------------------------------------------
// Diagonal-plus-core operators on C^n (x) C^n. Most families below are
// instances of
//   sum_i sum_l coeffs[l] |i,i+l><i,i+l|  -  sum_{i!=j} |ii><jj|   (indices mod n)
// ---------------------------------------------------------------------------
ComplexMatrix circulant_witness_matrix(const std::vector<double>& level_coeffs);

// W = 1 (x) 1 - n P+_n, the witness of the reduction map R_n.
WitnessRecord reduction_witness(int n);

// W = |v><v|^Gamma for an entangled |v>; throws on product input.
WitnessRecord vector_witness(const CVec& v, int dim_a, int dim_b);

// Weyl operator on C^3: W_kl |i> = w^{k(i-l)} |i-l>, w = exp(2 pi i/3),
// and the Bell-basis projector P_kl onto (W_kl (x) 1)|Omega_00>.
ComplexMatrix weyl_operator(int k, int l, int n = 3);
BipartiteOperator bell_projector(int k, int l);

// W_gamma = 3 B_gamma^Gamma with
// B_gamma = (1-gamma)/2 (P_10 + P_20) + gamma P_11, for gamma in (0,1).
WitnessRecord gamma_witness(double gamma);

// ---------------------------------------------------------------------------
// The C^3 (x) C^3 family
//   W[a,b,c] = sum_i [a|ii><ii| + b|i,i+1><i,i+1| + c|i,i+2><i,i+2|]
//            - sum_{i!=j} |ii><jj|
// with a,b,c >= 0, a+b+c >= 2 and, when a <= 1, bc >= (1-a)^2.
// ---------------------------------------------------------------------------
WitnessRecord w_abc(double a, double b, double c);

struct AbcParams {
  double a, b, c;
};
// One-parameter slice a+b+c = 2, a^2+b^2+c^2 = 2:
//   a = 2/3 (1+cos phi), b,c = 1/3 (2 - cos phi -/+ sqrt3 sin phi).
// Under this convention W(pi/3) = W[1,0,1] and W(5pi/3) = W[1,1,0].
AbcParams abc_phi_params(double phi);
WitnessRecord w_abc_phi(double phi);

// Product-state supremum along the phi slice:
//   4/3 on [0, 2pi/3] u [4pi/3, 2pi),  c(phi) on [2pi/3, pi],  b(phi) on [pi, 4pi/3].
// Continuous at the breakpoints; the value at phi = pi is b(pi) = c(pi) = 1.
double expected_mu_abc(double phi);

// ---------------------------------------------------------------------------
// The C^4 (x) C^4 family W[a,b,c,d] (same diagonal-plus-core layout) with
//   a+b+c+d = a^2+b^2+c^2+d^2 = 3, ac+bd = 1, (a+c)(b+d) = 2,
// split into class I (a+c = 2, b+d = 1) and class II (a+c = 1, b+d = 2).
// ---------------------------------------------------------------------------
WitnessRecord w_abcd(double a, double b, double c, double d);

struct AbcdParams {
  double a, b, c, d;
};
AbcdParams class1_params(double theta);  // a = (2-sin t)/2, b = (1+cos t)/2, c = 2-a, d = 1-b
AbcdParams class2_params(double theta);  // a = (1+cos t)/2, b = (2-sin t)/2, c = 1-a, d = 2-b
WitnessRecord class1_theta(double theta);
WitnessRecord class2_theta(double theta);

// Optimized class I: W_I(theta) - 2P with P the projector onto
// (1/2) sum_j (-1)^j |jj>.
WitnessRecord optimized_class1(double theta);

// Product-state supremum for class II: 3/2 on (0, pi/2], d(theta) = 2 - b on
// [pi/2, pi); both branches give 3/2 at pi/2.
double expected_mu_class2(double theta);

// Choi matrix of the Breuer-Hall map R_2n(X) - U X^T U+ for an antisymmetric
// unitary U (defaults to block-diagonal copies of [[0,1],[-1,0]]).
WitnessRecord breuer_hall_witness(const ComplexMatrix& u);
WitnessRecord breuer_hall_witness(int d);

// Choi matrix of tau_{n,k}; tau_{n,n-1} is the reduction map and tau_{3,1}
// reproduces W[1,1,0].
WitnessRecord tau_witness(int n, int k);

// Product-state suprema reported for the tau family; defined for k = 1 and
// k = n-2 (nullopt elsewhere).
std::optional<double> expected_mu_tau(int n, int k);

// ---------------------------------------------------------------------------
// Ha-Kye family W[a,b,c;theta]: diagonal levels (a,b,c) plus the phased core
//   <ii| W |i+1,i+1> = -e^{i theta},  <ii| W |i+2,i+2> = -e^{-i theta}.
// Block-positive iff a+b+c >= p_theta and (a <= 1 implies bc >= (1-a)^2),
// where p_theta = max_k 2 cos(theta + 2 pi k/3).
// ---------------------------------------------------------------------------
WitnessRecord hakye_witness(double a, double b, double c, double theta);
double p_theta(double theta);
// class (C1) boundary point: a = 2 - p_theta, b = c = p_theta - 1
WitnessRecord hakye_class1(double theta);
// class (C2): a = 1 and {b = p_theta - 1, c = 0} or {b = 0, c = p_theta - 1}
enum class HaKyeBranch { BZero, CZero };
WitnessRecord hakye_class2(double theta, HaKyeBranch branch = HaKyeBranch::CZero);

// ---------------------------------------------------------------------------
// Unextendible product bases
// ---------------------------------------------------------------------------
// The five-vector Tiles basis in C^3 (x) C^3.
std::vector<ProductVector> tiles_upb();

// W = sum_k |a_k b_k><a_k b_k| - eps_minus 1; the vectors must be pairwise
// orthogonal. eps_minus comes from the optimizer (or the caller).
WitnessRecord upb_witness(const std::vector<ProductVector>& vectors, double eps_minus);
// eps_plus = 1: the mirror is the projector onto the orthocomplement of the span.
BipartiteOperator upb_mirror(const std::vector<ProductVector>& vectors);

// Edge-style witness W = P + Q^Gamma - eps_minus 1 from PSD P, Q; eps_minus
// and eps_plus are supplied by the see-saw optimizer.
struct EdgeWitnessPair {
  WitnessRecord witness;
  BipartiteOperator mirror;
  double eps_minus;
  double eps_plus;
};
EdgeWitnessPair edge_witness(const BipartiteOperator& p, const BipartiteOperator& q,
                             const OptimizerConfig& cfg = {});

// Structural physical approximation X = p 1 + W with p = -lambda_min(W) > 0.
struct SpaResult {
  double p;
  BipartiteOperator x;
};
SpaResult spa(const WitnessRecord& w);
SpaResult spa(const BipartiteOperator& w);

}  // namespace mirrorlab
