#include "mirrorlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mirrorlab {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  long long rr = static_cast<long long>(a.rows()) * b.rows();
  long long cc = static_cast<long long>(a.cols()) * b.cols();
  if (rr > (1 << 16) || cc > (1 << 16)) throw std::invalid_argument("kron result too large");
  ComplexMatrix out(static_cast<int>(rr), static_cast<int>(cc));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

// One cyclic Jacobi pass; returns the number of rotations applied.
// Zeroes a(p,q) with the unitary J = D(phase) * G(c, s) acting on columns p, q.
int jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v, double threshold) {
  const int n = a.rows();
  int rotations = 0;
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      cplx apq = a(p, q);
      double mag = std::abs(apq);
      if (mag <= threshold) continue;
      ++rotations;
      cplx phase = apq / mag;
      double app = a(p, p).real();
      double aqq = a(q, q).real();
      double tau = (aqq - app) / (2.0 * mag);
      double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
      double c = 1.0 / std::sqrt(1.0 + t * t);
      double s = t * c;
      // Column p of J: (c, -s*conj(phase)); column q: (s, c*conj(phase)).
      cplx jp_q = -s * std::conj(phase);
      cplx jq_q = c * std::conj(phase);
      // A <- J^dagger A J applied as column then row updates.
      for (int i = 0; i < n; ++i) {
        cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip + jp_q * aiq;
        a(i, q) = s * aip + jq_q * aiq;
      }
      for (int j = 0; j < n; ++j) {
        cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj + std::conj(jp_q) * aqj;
        a(q, j) = s * apj + std::conj(jq_q) * aqj;
      }
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      a(p, p) = a(p, p).real();
      a(q, q) = a(q, q).real();
      if (v) {
        for (int i = 0; i < n; ++i) {
          cplx vip = (*v)(i, p), viq = (*v)(i, q);
          (*v)(i, p) = c * vip + jp_q * viq;
          (*v)(i, q) = s * vip + jq_q * viq;
        }
      }
    }
  }
  return rotations;
}

EigResult jacobi_eigs(const ComplexMatrix& m, bool want_vectors, double herm_tol) {
  if (!m.square()) throw std::invalid_argument("hermitian_eigs: matrix not square");
  if (m.hermiticity_defect() > herm_tol)
    throw std::invalid_argument("hermitian_eigs: matrix not Hermitian within tolerance");
  const int n = m.rows();
  ComplexMatrix a = m;
  // symmetrize away the sub-tolerance defect so rotations see an exact Hermitian matrix
  for (int i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix vecs;
  ComplexMatrix* vp = nullptr;
  if (want_vectors) {
    vecs = ComplexMatrix::identity(n);
    vp = &vecs;
  }
  const double scale = std::max(a.max_abs(), 1e-300);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * scale * n) break;
    if (jacobi_sweep(a, vp, 1e-16 * scale) == 0) break;
  }
  EigResult out;
  out.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
  for (int k = 0; k < n; ++k) out.values[k] = diag[order[k]];
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) out.vectors(i, k) = vecs(i, order[k]);
  }
  return out;
}

}  // namespace

EigResult hermitian_eigs(const ComplexMatrix& m, double herm_tol) {
  return jacobi_eigs(m, true, herm_tol);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double herm_tol) {
  return jacobi_eigs(m, false, herm_tol).values;
}

double min_eigenvalue(const ComplexMatrix& m, double herm_tol) {
  return hermitian_eigenvalues(m, herm_tol).front();
}

double max_eigenvalue(const ComplexMatrix& m, double herm_tol) {
  return hermitian_eigenvalues(m, herm_tol).back();
}

SvdResult svd(const ComplexMatrix& m) {
  const int rows = m.rows(), cols = m.cols();
  const int k = std::min(rows, cols);
  ComplexMatrix h = m.adjoint() * m;  // cols x cols, PSD
  EigResult eig = hermitian_eigs(h, 1e-8 * std::max(1.0, h.max_abs()));
  SvdResult out;
  out.singular.resize(k);
  out.left = ComplexMatrix(rows, k);
  out.right = ComplexMatrix(cols, k);
  // take the k largest eigenvalues, descending
  for (int j = 0; j < k; ++j) {
    int src = cols - 1 - j;
    double lam = std::max(eig.values[src], 0.0);
    double s = std::sqrt(lam);
    out.singular[j] = s;
    for (int i = 0; i < cols; ++i) out.right(i, j) = eig.vectors(i, src);
  }
  const double cutoff = (out.singular.empty() ? 0.0 : out.singular[0]) * 1e-13 + 1e-300;
  for (int j = 0; j < k; ++j) {
    CVec vj = column(out.right, j);
    CVec uj = m.apply(vj);
    double nu = vec_norm(uj);
    if (out.singular[j] > cutoff && nu > 0.0) {
      for (int i = 0; i < rows; ++i) out.left(i, j) = uj[i] / nu;
    } else {
      // null direction: complete with any unit vector orthogonal to earlier columns
      for (int basis = 0; basis < rows; ++basis) {
        CVec cand(rows, cplx{0.0});
        cand[basis] = 1.0;
        for (int jj = 0; jj < j; ++jj) {
          CVec prev = column(out.left, jj);
          cplx ov = vec_dot(prev, cand);
          for (int i = 0; i < rows; ++i) cand[i] -= ov * prev[i];
        }
        double nn = vec_norm(cand);
        if (nn > 1e-6) {
          for (int i = 0; i < rows; ++i) out.left(i, j) = cand[i] / nn;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  ComplexMatrix h = (m.rows() <= m.cols()) ? m * m.adjoint() : m.adjoint() * m;
  std::vector<double> lam = hermitian_eigenvalues(h, 1e-8 * std::max(1.0, h.max_abs()));
  // eigenvalue dust below the relative noise floor would inflate the trace
  // norm through the square root; flush it to zero
  const double floor = lam.back() * 1e-14;
  std::vector<double> s(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    double l = lam[lam.size() - 1 - i];
    s[i] = l > floor ? std::sqrt(l) : 0.0;
  }
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  auto s = singular_values(m);
  double t = 0.0;
  for (double x : s) t += x;
  return t;
}

ComplexMatrix psd_projection(const ComplexMatrix& m) {
  EigResult eig = hermitian_eigs(m, 1e-6 * std::max(1.0, m.max_abs()));
  const int n = m.rows();
  ComplexMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    double lam = eig.values[k];
    if (lam <= 0.0) continue;
    for (int i = 0; i < n; ++i) {
      cplx vik = eig.vectors(i, k);
      if (vik == cplx{}) continue;
      cplx w = lam * vik;
      for (int j = 0; j < n; ++j) out(i, j) += w * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

int gram_rank(const std::vector<CVec>& vectors, double tol) {
  if (vectors.empty()) return 0;
  const int n = static_cast<int>(vectors.size());
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = vec_dot(vectors[i], vectors[j]);
  auto lam = hermitian_eigenvalues(g, 1e-8 * std::max(1.0, g.max_abs()));
  int rank = 0;
  for (double l : lam)
    if (l > tol) ++rank;
  return rank;
}

CVec column(const ComplexMatrix& m, int j) {
  CVec v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

}  // namespace mirrorlab
