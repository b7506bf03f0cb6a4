#pragma once

#include "mirrorlab/matrix.hpp"

namespace mirrorlab {

// Tensor product. Dimensions multiply; refuses results beyond 2^16 per side.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns, vectors.col(k) <-> values[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. Deterministic, no external dependency; intended for the small
// dimensions (d <= 64) this library works at.
// Throws std::invalid_argument if the input is not Hermitian within hermTol.
EigResult hermitian_eigs(const ComplexMatrix& m, double herm_tol = 1e-10);

// Eigenvalues only (same solver, skips accumulating vectors).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double herm_tol = 1e-10);

double min_eigenvalue(const ComplexMatrix& m, double herm_tol = 1e-10);
double max_eigenvalue(const ComplexMatrix& m, double herm_tol = 1e-10);

struct SvdResult {
  std::vector<double> singular;  // non-increasing
  ComplexMatrix left;            // rows x k
  ComplexMatrix right;           // cols x k,  M = sum_k s_k |left_k><right_k|
};

// Economy SVD via the eigendecomposition of M^dagger M (k = min(rows, cols)).
SvdResult svd(const ComplexMatrix& m);

// Singular values only, non-increasing.
std::vector<double> singular_values(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

// Clip negative eigenvalues to zero: the Frobenius projection onto the PSD cone.
ComplexMatrix psd_projection(const ComplexMatrix& m);

// Rank of the Gram matrix of a family of vectors at the given eigenvalue cut.
int gram_rank(const std::vector<CVec>& vectors, double tol = 1e-7);

CVec column(const ComplexMatrix& m, int j);

}  // namespace mirrorlab
