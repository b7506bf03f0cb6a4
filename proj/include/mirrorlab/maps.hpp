#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "mirrorlab/bipartite.hpp"

namespace mirrorlab {

// A linear map B(C^dimIn) -> B(C^dimOut) given by its action on matrices.
struct PositiveMapSpec {
  int dim_in = 0;
  int dim_out = 0;
  std::string name;
  std::function<ComplexMatrix(const ComplexMatrix&)> action;
};

// Choi matrix  W = sum_{ij} |i><j| (x) action(|i><j|), an operator on
// C^dimIn (x) C^dimOut. Hermitian whenever the map preserves Hermiticity.
BipartiteOperator choi_matrix(const PositiveMapSpec& map);

// Checks action(alpha X + beta Y) == alpha action(X) + beta action(Y) on
// random Hermitian combinations; returns the worst max-norm defect.
double linearity_defect(const PositiveMapSpec& map, int trials = 8, std::uint64_t seed = 0);

PositiveMapSpec identity_map(int n);
PositiveMapSpec reduction_map(int n);              // R_n(X) = 1 tr X - X
PositiveMapSpec diagonal_projection_map(int n);    // eps(X) = sum <i|X|i> |i><i|
PositiveMapSpec tau_map(int n, int k);             // (n-k) eps(X) + sum_i eps(S^i X S^i+) - X
PositiveMapSpec breuer_hall_map(const ComplexMatrix& u);         // R_2n(X) - U X^T U+
PositiveMapSpec breuer_hall_mirror_map(const ComplexMatrix& u);  // X + U X^T U+

// Canonical antisymmetric unitary: block-diagonal copies of [[0,1],[-1,0]].
ComplexMatrix canonical_antisymmetric_unitary(int d);

}  // namespace mirrorlab
