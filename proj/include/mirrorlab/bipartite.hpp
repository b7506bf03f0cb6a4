#pragma once

#include "mirrorlab/linalg.hpp"
#include "mirrorlab/matrix.hpp"

namespace mirrorlab {

enum class Subsystem { A, B };

// A square operator on C^dA (x) C^dB with the basis ordering |i>|j> -> i*dB + j.
// The hermitian flag is computed at construction (max-norm defect <= 1e-12).
struct BipartiteOperator {
  ComplexMatrix mat;
  int dA = 0;
  int dB = 0;
  bool hermitian = false;

  BipartiteOperator() = default;
  BipartiteOperator(ComplexMatrix m, int dim_a, int dim_b);

  int dim() const { return dA * dB; }

  static BipartiteOperator identity(int dim_a, int dim_b);
};

// Normalized product vector |psi> (x) |phi>.
struct ProductVector {
  CVec psi;
  CVec phi;

  ProductVector() = default;
  ProductVector(CVec a, CVec b);  // normalizes; throws on zero factors

  CVec joint() const { return vec_kron(psi, phi); }
};

struct SchmidtData {
  std::vector<double> coefficients;  // non-increasing, >= 0
  ComplexMatrix left_vectors;        // dA x k, orthonormal columns
  ComplexMatrix right_vectors;       // dB x k, orthonormal columns
};

BipartiteOperator partial_transpose(const BipartiteOperator& op, Subsystem sys = Subsystem::B);
ComplexMatrix partial_trace(const BipartiteOperator& op, Subsystem traced_out);

// Schmidt decomposition of v in C^dA (x) C^dB:
//   v = sum_k s_k |e_k> (x) |f_k>,   s_0 >= s_1 >= ... >= 0.
SchmidtData schmidt(const CVec& v, int dim_a, int dim_b);

// Trace norm of the realigned matrix R[(i,k),(j,l)] = rho[(i,j),(k,l)].
// A value > 1 certifies entanglement (CCNR). Requires a Hermitian unit-trace
// input (trace within 1e-9).
double realignment_norm(const BipartiteOperator& rho);

ComplexMatrix realign(const BipartiteOperator& rho);

// tr(w * rho); both Hermitian, so the result is real (checked within 1e-10
// relative to scale).
double trace_pairing(const BipartiteOperator& w, const BipartiteOperator& rho);

// <psi (x) phi | op | psi (x) phi>
double product_expectation(const BipartiteOperator& op, const ProductVector& v);

// Contraction over one factor at a fixed vector on the other:
//   M(phi)_{ij} = <i (x) phi| op |j (x) phi>   (contract B)
//   N(psi)_{kl} = <psi (x) k| op |psi (x) l>   (contract A)
ComplexMatrix contract_b(const BipartiteOperator& op, const CVec& phi);
ComplexMatrix contract_a(const BipartiteOperator& op, const CVec& psi);

CVec basis_ket(int i, int d);
BipartiteOperator max_entangled_projector(int n);  // P+_n
BipartiteOperator flip_operator(int n);            // F = sum |i><j| (x) |j><i|

}  // namespace mirrorlab
