#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace mirrorlab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense complex matrix, row-major, value semantics. All operations return
// fresh values; nothing in the library mutates a matrix it did not create.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dims must be positive");
  }

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<cplx>& entries() const { return entries_; }
  std::vector<cplx>& entries() { return entries_; }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);

  ComplexMatrix scaled(cplx factor) const;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  // max-norm Hermiticity defect ||M - M^dagger||_max
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return square() && hermiticity_defect() <= tol; }

  bool all_finite() const;

  CVec apply(const CVec& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> entries_;
};

inline ComplexMatrix operator*(double s, const ComplexMatrix& m) { return m.scaled(s); }
inline ComplexMatrix operator*(cplx s, const ComplexMatrix& m) { return m.scaled(s); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// vector helpers
double vec_norm(const CVec& v);
cplx vec_dot(const CVec& a, const CVec& b);  // <a|b>, conjugate-linear in a
CVec vec_normalized(const CVec& v);
CVec vec_kron(const CVec& a, const CVec& b);
ComplexMatrix outer(const CVec& a, const CVec& b);  // |a><b|

}  // namespace mirrorlab
