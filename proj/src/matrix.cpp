#include "mirrorlab/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mirrorlab {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  ComplexMatrix out = *this;
  out += other;
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  ComplexMatrix out = *this;
  out -= other;
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix shape mismatch in +");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix shape mismatch in -");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  ComplexMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      cplx aik = (*this)(i, k);
      if (aik == cplx{}) continue;
      const cplx* brow = &other.entries_[static_cast<std::size_t>(k) * other.cols_];
      cplx* orow = &out.entries_[static_cast<std::size_t>(i) * other.cols_];
      for (int j = 0; j < other.cols_; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::scaled(cplx factor) const {
  ComplexMatrix out = *this;
  for (auto& z : out.entries_) z *= factor;
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw std::invalid_argument("trace of non-square matrix");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  if (!square()) return 1.0 / 0.0;
  double m = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

CVec ComplexMatrix::apply(const CVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix/vector mismatch");
  CVec out(rows_);
  for (int i = 0; i < rows_; ++i) {
    cplx s = 0.0;
    const cplx* row = &entries_[static_cast<std::size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

double vec_norm(const CVec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

cplx vec_dot(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

CVec vec_normalized(const CVec& v) {
  double n = vec_norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  CVec out = v;
  for (auto& z : out) z /= n;
  return out;
}

CVec vec_kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  std::size_t k = 0;
  for (const auto& x : a)
    for (const auto& y : b) out[k++] = x * y;
  return out;
}

ComplexMatrix outer(const CVec& a, const CVec& b) {
  ComplexMatrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = a[i] * std::conj(b[j]);
  return m;
}

}  // namespace mirrorlab
