#include "mirrorlab/bipartite.hpp"

#include <cmath>

namespace mirrorlab {

BipartiteOperator::BipartiteOperator(ComplexMatrix m, int dim_a, int dim_b)
    : mat(std::move(m)), dA(dim_a), dB(dim_b) {
  if (dA <= 0 || dB <= 0) throw std::invalid_argument("factor dimensions must be positive");
  if (!mat.square() || mat.rows() != dA * dB)
    throw std::invalid_argument("operator side must equal dA*dB");
  if (!mat.all_finite()) throw std::invalid_argument("operator entries must be finite");
  hermitian = mat.hermiticity_defect() <= 1e-12;
}

BipartiteOperator BipartiteOperator::identity(int dim_a, int dim_b) {
  return BipartiteOperator(ComplexMatrix::identity(dim_a * dim_b), dim_a, dim_b);
}

ProductVector::ProductVector(CVec a, CVec b) : psi(std::move(a)), phi(std::move(b)) {
  psi = vec_normalized(psi);
  phi = vec_normalized(phi);
}

BipartiteOperator partial_transpose(const BipartiteOperator& op, Subsystem sys) {
  const int dA = op.dA, dB = op.dB;
  ComplexMatrix out(op.dim(), op.dim());
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j)
      for (int k = 0; k < dA; ++k)
        for (int l = 0; l < dB; ++l) {
          cplx z = op.mat(i * dB + j, k * dB + l);
          if (z == cplx{}) continue;
          if (sys == Subsystem::B)
            out(i * dB + l, k * dB + j) = z;
          else
            out(k * dB + j, i * dB + l) = z;
        }
  return BipartiteOperator(std::move(out), dA, dB);
}

ComplexMatrix partial_trace(const BipartiteOperator& op, Subsystem traced_out) {
  const int dA = op.dA, dB = op.dB;
  if (traced_out == Subsystem::B) {
    ComplexMatrix out(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int k = 0; k < dA; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < dB; ++j) s += op.mat(i * dB + j, k * dB + j);
        out(i, k) = s;
      }
    return out;
  }
  ComplexMatrix out(dB, dB);
  for (int j = 0; j < dB; ++j)
    for (int l = 0; l < dB; ++l) {
      cplx s = 0.0;
      for (int i = 0; i < dA; ++i) s += op.mat(i * dB + j, i * dB + l);
      out(j, l) = s;
    }
  return out;
}

SchmidtData schmidt(const CVec& v, int dim_a, int dim_b) {
  if (static_cast<int>(v.size()) != dim_a * dim_b)
    throw std::invalid_argument("schmidt: vector length must be dA*dB");
  if (vec_norm(v) == 0.0) throw std::invalid_argument("schmidt: zero vector");
  ComplexMatrix m(dim_a, dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j) m(i, j) = v[i * dim_b + j];
  SvdResult s = svd(m);
  SchmidtData out;
  out.coefficients = s.singular;
  out.left_vectors = s.left;
  // v = sum s_k e_k (x) f_k with f_k = conj(right_k): M_{ij} = sum s u_{ik} conj(v_{jk})
  out.right_vectors = s.right.conjugate();
  return out;
}

ComplexMatrix realign(const BipartiteOperator& rho) {
  const int dA = rho.dA, dB = rho.dB;
  ComplexMatrix r(dA * dA, dB * dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j)
      for (int k = 0; k < dA; ++k)
        for (int l = 0; l < dB; ++l) r(i * dA + k, j * dB + l) = rho.mat(i * dB + j, k * dB + l);
  return r;
}

double realignment_norm(const BipartiteOperator& rho) {
  if (!rho.hermitian) throw std::invalid_argument("realignment_norm: state must be Hermitian");
  if (std::abs(rho.mat.trace() - cplx{1.0}) > 1e-9)
    throw std::invalid_argument("realignment_norm: state must have unit trace");
  return trace_norm(realign(rho));
}

double trace_pairing(const BipartiteOperator& w, const BipartiteOperator& rho) {
  if (w.dim() != rho.dim() || w.dA != rho.dA || w.dB != rho.dB)
    throw std::invalid_argument("trace_pairing: dimension mismatch");
  if (!w.hermitian || !rho.hermitian)
    throw std::invalid_argument("trace_pairing: both operators must be Hermitian");
  cplx t = 0.0;
  const int d = w.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t += w.mat(i, j) * rho.mat(j, i);
  return t.real();
}

double product_expectation(const BipartiteOperator& op, const ProductVector& v) {
  CVec joint = v.joint();
  CVec mv = op.mat.apply(joint);
  return vec_dot(joint, mv).real();
}

ComplexMatrix contract_b(const BipartiteOperator& op, const CVec& phi) {
  const int dA = op.dA, dB = op.dB;
  ComplexMatrix m(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dA; ++k) {
      cplx s = 0.0;
      for (int j = 0; j < dB; ++j) {
        cplx cj = std::conj(phi[j]);
        if (cj == cplx{}) continue;
        const cplx* row = &op.mat.entries()[static_cast<std::size_t>(i * dB + j) * op.dim()];
        cplx inner = 0.0;
        for (int l = 0; l < dB; ++l) inner += row[k * dB + l] * phi[l];
        s += cj * inner;
      }
      m(i, k) = s;
    }
  return m;
}

ComplexMatrix contract_a(const BipartiteOperator& op, const CVec& psi) {
  const int dA = op.dA, dB = op.dB;
  ComplexMatrix m(dB, dB);
  for (int j = 0; j < dB; ++j)
    for (int l = 0; l < dB; ++l) {
      cplx s = 0.0;
      for (int i = 0; i < dA; ++i) {
        cplx ci = std::conj(psi[i]);
        if (ci == cplx{}) continue;
        const cplx* row = &op.mat.entries()[static_cast<std::size_t>(i * dB + j) * op.dim()];
        for (int k = 0; k < dA; ++k) s += ci * row[k * dB + l] * psi[k];
      }
      m(j, l) = s;
    }
  return m;
}

CVec basis_ket(int i, int d) {
  CVec v(d, cplx{0.0});
  v.at(i) = 1.0;
  return v;
}

BipartiteOperator max_entangled_projector(int n) {
  ComplexMatrix m(n * n, n * n);
  const double w = 1.0 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i * n + i, j * n + j) = w;
  return BipartiteOperator(std::move(m), n, n);
}

BipartiteOperator flip_operator(int n) {
  ComplexMatrix m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i * n + j, j * n + i) = 1.0;
  return BipartiteOperator(std::move(m), n, n);
}

}  // namespace mirrorlab
