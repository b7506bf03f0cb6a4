#include "mirrorlab/states.hpp"

#include <cmath>

#include "mirrorlab/families.hpp"
#include "mirrorlab/linalg.hpp"
#include "mirrorlab/rng.hpp"

namespace mirrorlab {

StateSample rho_x_c4(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("rho_x_c4: x > 0 required");
  ComplexMatrix m(16, 16);
  for (int i = 0; i < 4; ++i) {
    m(i * 4 + i, i * 4 + i) = 3.0;
    m(i * 4 + (i + 1) % 4, i * 4 + (i + 1) % 4) = x;
    m(i * 4 + (i + 2) % 4, i * 4 + (i + 2) % 4) = 1.0;
    m(i * 4 + (i + 3) % 4, i * 4 + (i + 3) % 4) = 1.0 / x;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) m(i * 4 + i, j * 4 + j) = -1.0;
  StateSample s;
  s.rho = BipartiteOperator(std::move(m), 4, 4);
  s.family = "rho-x-c4";
  s.params = {{"x", x}};
  s.normalized = false;
  s.ppt = true;  // holds for every x > 0; re-validated in the tests
  return s;
}

StateSample hakye_rho(char kind, double t, double theta) {
  if (kind != 'x' && kind != 'y') throw std::invalid_argument("hakye_rho: kind is 'x' or 'y'");
  if (!(t > 0.0)) throw std::invalid_argument("hakye_rho: t > 0 required");
  ComplexMatrix m(9, 9);
  for (int i = 0; i < 9; ++i) m(i, i) = 1.0;
  for (int i = 0; i < 3; ++i) m(i * 3 + i, i * 3 + i) = t;
  cplx e = std::polar(1.0, theta);
  if (kind == 'y') e = -e;
  for (int i = 0; i < 3; ++i) {
    int p0 = i * 3 + i;
    int p1 = ((i + 1) % 3) * 4;  // diagonal position of |i+1,i+1> in row-major 3x3
    int p2 = ((i + 2) % 3) * 4;
    m(p0, p1) = e;
    m(p1, p0) = std::conj(e);
    m(p0, p2) = std::conj(e);
    m(p2, p0) = e;
  }
  StateSample s;
  s.rho = BipartiteOperator(std::move(m), 3, 3);
  s.family = kind == 'x' ? "hakye-rho-x" : "hakye-rho-y";
  s.params = {{"t", t}, {"theta", theta}};
  s.normalized = false;
  double q = (kind == 'x' ? 2.0 : -2.0) * std::cos(3.0 * theta);
  s.ppt = t >= 1.0 && t * t * t + q - 3.0 * t >= -1e-12;
  return s;
}

double hakye_ppt_threshold(char kind, double theta) {
  if (kind != 'x' && kind != 'y')
    throw std::invalid_argument("hakye_ppt_threshold: kind is 'x' or 'y'");
  double q = (kind == 'x' ? 2.0 : -2.0) * std::cos(3.0 * theta);
  // f(t) = t^3 - 3t + q is nondecreasing on t >= 1 with f(1) = q - 2 <= 0;
  // bisect for the unique root.
  auto f = [&](double t) { return t * t * t - 3.0 * t + q; };
  if (f(1.0) >= 0.0) return 1.0;
  double lo = 1.0, hi = 2.0;
  while (f(hi) < 0.0) hi += 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

StateSample bell_diagonal_state(const std::array<double, 9>& c) {
  double sum = 0.0;
  for (double x : c) {
    if (x < -1e-12) throw std::invalid_argument("bell_diagonal_state: weights must be >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("bell_diagonal_state: weights must sum to 1");
  ComplexMatrix m(9, 9);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      double w = c[k * 3 + l];
      if (w == 0.0) continue;
      m += bell_projector(k, l).mat.scaled(w);
    }
  StateSample s;
  s.rho = BipartiteOperator(std::move(m), 3, 3);
  s.family = "bell-diagonal";
  for (int i = 0; i < 9; ++i) s.params["c" + std::to_string(i)] = c[i];
  s.normalized = true;
  return s;
}

std::vector<StateSample> sample_ppt_bell_diagonal(int n, std::uint64_t seed) {
  std::vector<StateSample> out;
  out.reserve(n);
  std::uint64_t draw = 0;
  while (static_cast<int>(out.size()) < n) {
    Rng rng(derive_seed(seed, 0xbe11d1a6ull + draw));
    ++draw;
    auto w = rng.dirichlet_uniform(9);
    std::array<double, 9> c{};
    for (int i = 0; i < 9; ++i) c[i] = w[i];
    StateSample s = bell_diagonal_state(c);
    BipartiteOperator gamma = partial_transpose(s.rho, Subsystem::B);
    if (min_eigenvalue(gamma.mat, 1e-8) < -1e-12) continue;
    s.ppt = true;
    s.realignment = realignment_norm(s.rho);
    s.params["draw"] = static_cast<double>(draw - 1);
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<StateSample> random_ppt_state(int dim_a, int dim_b, std::uint64_t seed, int budget) {
  if (dim_a < 2 || dim_b < 2) throw std::invalid_argument("random_ppt_state: dims >= 2 required");
  const int d = dim_a * dim_b;
  for (int attempt = 0; attempt < budget; ++attempt) {
    Rng rng(derive_seed(seed, 0x7157a7e0ull + attempt));
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    ComplexMatrix rho = g * g.adjoint();
    rho = rho.scaled(1.0 / rho.trace().real());
    BipartiteOperator op(std::move(rho), dim_a, dim_b);
    if (min_eigenvalue(partial_transpose(op, Subsystem::B).mat, 1e-8) < -1e-12) continue;
    StateSample s;
    s.rho = std::move(op);
    s.family = "wishart-ppt";
    s.params = {{"dA", double(dim_a)}, {"dB", double(dim_b)}, {"attempt", double(attempt)}};
    s.normalized = true;
    s.ppt = true;
    return s;
  }
  return std::nullopt;
}

BipartiteOperator weyl_pinching(const BipartiteOperator& rho) {
  if (rho.dA != 3 || rho.dB != 3) throw std::invalid_argument("weyl_pinching: needs C^3 (x) C^3");
  ComplexMatrix out(9, 9);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const ComplexMatrix& p = bell_projector(k, l).mat;
      out += p * rho.mat * p;
    }
  return BipartiteOperator(std::move(out), 3, 3);
}

}  // namespace mirrorlab
