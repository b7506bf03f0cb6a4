#include "mirrorlab/maps.hpp"

#include <cmath>

#include "mirrorlab/rng.hpp"

namespace mirrorlab {

BipartiteOperator choi_matrix(const PositiveMapSpec& map) {
  if (map.dim_in <= 0 || map.dim_out <= 0 || !map.action)
    throw std::invalid_argument("choi_matrix: malformed map spec");
  const int n = map.dim_in, m = map.dim_out;
  ComplexMatrix w(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ComplexMatrix unit(n, n);
      unit(i, j) = 1.0;
      ComplexMatrix img = map.action(unit);
      if (img.rows() != m || img.cols() != m)
        throw std::invalid_argument("choi_matrix: action output has wrong shape");
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) w(i * m + k, j * m + l) = img(k, l);
    }
  return BipartiteOperator(std::move(w), n, m);
}

double linearity_defect(const PositiveMapSpec& map, int trials, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x11a9));
  const int n = map.dim_in;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix x(n, n), y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        x(i, j) = rng.complex_gaussian();
        y(i, j) = rng.complex_gaussian();
      }
    cplx alpha = rng.complex_gaussian();
    cplx beta = rng.complex_gaussian();
    ComplexMatrix lhs = map.action(x.scaled(alpha) + y.scaled(beta));
    ComplexMatrix rhs = map.action(x).scaled(alpha) + map.action(y).scaled(beta);
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return worst;
}

PositiveMapSpec identity_map(int n) {
  return {n, n, "identity", [](const ComplexMatrix& x) { return x; }};
}

PositiveMapSpec reduction_map(int n) {
  return {n, n, "reduction", [n](const ComplexMatrix& x) {
            ComplexMatrix out = ComplexMatrix::identity(n).scaled(x.trace());
            out -= x;
            return out;
          }};
}

PositiveMapSpec diagonal_projection_map(int n) {
  return {n, n, "diagonal-projection", [n](const ComplexMatrix& x) {
            ComplexMatrix out(n, n);
            for (int i = 0; i < n; ++i) out(i, i) = x(i, i);
            return out;
          }};
}

PositiveMapSpec tau_map(int n, int k) {
  if (n < 2 || k < 0 || k > n - 1) throw std::invalid_argument("tau_map: need n >= 2, 0 <= k <= n-1");
  return {n, n, "tau(" + std::to_string(n) + "," + std::to_string(k) + ")",
          [n, k](const ComplexMatrix& x) {
            ComplexMatrix out(n, n);
            for (int i = 0; i < n; ++i) out(i, i) = static_cast<double>(n - k) * x(i, i);
            // eps(S^l X S^l+)(j,j) = X(j-l, j-l)
            for (int l = 1; l <= k; ++l)
              for (int j = 0; j < n; ++j) out(j, j) += x(((j - l) % n + n) % n, ((j - l) % n + n) % n);
            out -= x;
            return out;
          }};
}

namespace {
void require_antisymmetric_unitary(const ComplexMatrix& u) {
  if (!u.square() || u.rows() % 2 != 0 || u.rows() < 4)
    throw std::invalid_argument("breuer_hall: U must act on even dimension >= 4");
  ComplexMatrix uu = u * u.adjoint();
  if (max_abs_diff(uu, ComplexMatrix::identity(u.rows())) > 1e-10)
    throw std::invalid_argument("breuer_hall: U must be unitary");
  if (max_abs_diff(u.transpose(), u.scaled(-1.0)) > 1e-10)
    throw std::invalid_argument("breuer_hall: U must be antisymmetric");
}
}  // namespace

PositiveMapSpec breuer_hall_map(const ComplexMatrix& u) {
  require_antisymmetric_unitary(u);
  const int n = u.rows();
  return {n, n, "breuer-hall", [u, n](const ComplexMatrix& x) {
            ComplexMatrix out = ComplexMatrix::identity(n).scaled(x.trace());
            out -= x;
            out -= u * x.transpose() * u.adjoint();
            return out;
          }};
}

PositiveMapSpec breuer_hall_mirror_map(const ComplexMatrix& u) {
  require_antisymmetric_unitary(u);
  const int n = u.rows();
  return {n, n, "breuer-hall-mirror", [u](const ComplexMatrix& x) {
            return x + u * x.transpose() * u.adjoint();
          }};
}

ComplexMatrix canonical_antisymmetric_unitary(int d) {
  if (d % 2 != 0) throw std::invalid_argument("antisymmetric unitary needs even dimension");
  ComplexMatrix u(d, d);
  for (int b = 0; b < d / 2; ++b) {
    u(2 * b, 2 * b + 1) = 1.0;
    u(2 * b + 1, 2 * b) = -1.0;
  }
  return u;
}

}  // namespace mirrorlab
