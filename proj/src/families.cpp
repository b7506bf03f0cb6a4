#include "mirrorlab/families.hpp"

#include <cmath>

#include "mirrorlab/optimizer.hpp"

namespace mirrorlab {

namespace {
constexpr double kAdmissibilitySlack = 1e-12;

WitnessRecord make_record(ComplexMatrix m, int dA, int dB, std::string family,
                          std::map<std::string, double> params) {
  BipartiteOperator op(std::move(m), dA, dB);
  if (!op.hermitian) throw std::logic_error("constructed witness is not Hermitian: " + family);
  return WitnessRecord{std::move(op), family, std::move(params), "families:" + family};
}
}  // namespace

ComplexMatrix circulant_witness_matrix(const std::vector<double>& level_coeffs) {
  const int n = static_cast<int>(level_coeffs.size());
  ComplexMatrix w(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      int idx = i * n + (i + l) % n;
      w(idx, idx) += level_coeffs[l];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) w(i * n + i, j * n + j) -= 1.0;
  return w;
}

WitnessRecord reduction_witness(int n) {
  if (n < 2) throw std::invalid_argument("reduction_witness: n >= 2 required");
  ComplexMatrix w = ComplexMatrix::identity(n * n);
  w -= max_entangled_projector(n).mat.scaled(static_cast<double>(n));
  return make_record(std::move(w), n, n, "reduction", {{"n", static_cast<double>(n)}});
}

WitnessRecord vector_witness(const CVec& v, int dim_a, int dim_b) {
  CVec u = vec_normalized(v);
  SchmidtData sd = schmidt(u, dim_a, dim_b);
  if (sd.coefficients.size() < 2 || sd.coefficients[1] <= 1e-10)
    throw std::invalid_argument("vector_witness: vector must be entangled (Schmidt rank >= 2)");
  BipartiteOperator proj(outer(u, u), dim_a, dim_b);
  BipartiteOperator w = partial_transpose(proj, Subsystem::B);
  WitnessRecord rec{w, "vector", {{"dA", double(dim_a)}, {"dB", double(dim_b)},
                                  {"s0sq", sd.coefficients[0] * sd.coefficients[0]}},
                    "families:vector"};
  return rec;
}

ComplexMatrix weyl_operator(int k, int l, int n) {
  if (k < 0 || k >= n || l < 0 || l >= n) throw std::invalid_argument("weyl: indices out of range");
  ComplexMatrix w(n, n);
  for (int i = 0; i < n; ++i) {
    int e = ((k * (i - l)) % n + n) % n;
    w(((i - l) % n + n) % n, i) = std::polar(1.0, 2.0 * M_PI * e / n);
  }
  return w;
}

BipartiteOperator bell_projector(int k, int l) {
  const int n = 3;
  ComplexMatrix wk = weyl_operator(k, l, n);
  CVec omega(n * n, cplx{0.0});
  for (int i = 0; i < n; ++i) {
    // (W_kl (x) 1) |ii> = (W_kl|i>) (x) |i>
    for (int r = 0; r < n; ++r) omega[r * n + i] += wk(r, i) / std::sqrt(double(n));
  }
  return BipartiteOperator(outer(omega, omega), n, n);
}

WitnessRecord gamma_witness(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma_witness: gamma in (0,1)");
  ComplexMatrix b = bell_projector(1, 0).mat.scaled((1.0 - gamma) / 2.0);
  b += bell_projector(2, 0).mat.scaled((1.0 - gamma) / 2.0);
  b += bell_projector(1, 1).mat.scaled(gamma);
  BipartiteOperator bg(std::move(b), 3, 3);
  ComplexMatrix w = partial_transpose(bg, Subsystem::B).mat.scaled(3.0);
  return make_record(std::move(w), 3, 3, "gamma", {{"gamma", gamma}});
}

WitnessRecord w_abc(double a, double b, double c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("w_abc: coefficients must be >= 0");
  if (a + b + c < 2.0 - kAdmissibilitySlack)
    throw std::invalid_argument("w_abc: a+b+c >= 2 required");
  if (a <= 1.0 && b * c < (1.0 - a) * (1.0 - a) - kAdmissibilitySlack)
    throw std::invalid_argument("w_abc: bc >= (1-a)^2 required when a <= 1");
  return make_record(circulant_witness_matrix({a, b, c}), 3, 3, "abc",
                     {{"a", a}, {"b", b}, {"c", c}});
}

AbcParams abc_phi_params(double phi) {
  double a = 2.0 / 3.0 * (1.0 + std::cos(phi));
  double b = (2.0 - std::cos(phi) - std::sqrt(3.0) * std::sin(phi)) / 3.0;
  double c = (2.0 - std::cos(phi) + std::sqrt(3.0) * std::sin(phi)) / 3.0;
  return {a, b, c};
}

WitnessRecord w_abc_phi(double phi) {
  if (!(phi >= 0.0 && phi < 2.0 * M_PI)) throw std::invalid_argument("w_abc_phi: phi in [0, 2pi)");
  AbcParams p = abc_phi_params(phi);
  // the slice sits exactly on the admissibility boundary; clamp the rounding dust
  WitnessRecord rec = make_record(circulant_witness_matrix({p.a, p.b, p.c}), 3, 3, "abc-phi",
                                  {{"phi", phi}, {"a", p.a}, {"b", p.b}, {"c", p.c}});
  return rec;
}

double expected_mu_abc(double phi) {
  AbcParams p = abc_phi_params(phi);
  if (phi <= 2.0 * M_PI / 3.0 || phi >= 4.0 * M_PI / 3.0) return 4.0 / 3.0;
  if (phi <= M_PI) return p.c;
  return p.b;
}

namespace {
void check_abcd_constraints(double a, double b, double c, double d) {
  if (a < 0 || b < 0 || c < 0 || d < 0)
    throw std::invalid_argument("w_abcd: coefficients must be >= 0");
  const double tol = 1e-10;
  if (std::abs(a + b + c + d - 3.0) > tol ||
      std::abs(a * a + b * b + c * c + d * d - 3.0) > tol ||
      std::abs(a * c + b * d - 1.0) > tol || std::abs((a + c) * (b + d) - 2.0) > tol)
    throw std::invalid_argument("w_abcd: parameters violate the family constraints");
}
}  // namespace

WitnessRecord w_abcd(double a, double b, double c, double d) {
  check_abcd_constraints(a, b, c, d);
  bool class1 = std::abs(a + c - 2.0) < 1e-8;
  return make_record(circulant_witness_matrix({a, b, c, d}), 4, 4, "abcd",
                     {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"class", class1 ? 1.0 : 2.0}});
}

AbcdParams class1_params(double theta) {
  double a = 0.5 * (2.0 - std::sin(theta));
  double b = 0.5 * (1.0 + std::cos(theta));
  return {a, b, 2.0 - a, 1.0 - b};
}

AbcdParams class2_params(double theta) {
  double a = 0.5 * (1.0 + std::cos(theta));
  double b = 0.5 * (2.0 - std::sin(theta));
  return {a, b, 1.0 - a, 2.0 - b};
}

WitnessRecord class1_theta(double theta) {
  if (!(theta >= 0.0 && theta <= M_PI)) throw std::invalid_argument("class1_theta: theta in [0,pi]");
  AbcdParams p = class1_params(theta);
  WitnessRecord rec = make_record(circulant_witness_matrix({p.a, p.b, p.c, p.d}), 4, 4,
                                  "abcd-class1", {{"theta", theta},
                                                  {"a", p.a},
                                                  {"b", p.b},
                                                  {"c", p.c},
                                                  {"d", p.d}});
  return rec;
}

WitnessRecord class2_theta(double theta) {
  if (!(theta >= 0.0 && theta <= M_PI)) throw std::invalid_argument("class2_theta: theta in [0,pi]");
  AbcdParams p = class2_params(theta);
  return make_record(circulant_witness_matrix({p.a, p.b, p.c, p.d}), 4, 4, "abcd-class2",
                     {{"theta", theta}, {"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}});
}

WitnessRecord optimized_class1(double theta) {
  AbcdParams p = class1_params(theta);
  ComplexMatrix w = circulant_witness_matrix({p.a, p.b, p.c, p.d});
  CVec psi(16, cplx{0.0});
  for (int j = 0; j < 4; ++j) psi[j * 4 + j] = (j % 2 == 0 ? 0.5 : -0.5);
  w -= outer(psi, psi).scaled(2.0);
  return make_record(std::move(w), 4, 4, "abcd-class1-opt",
                     {{"theta", theta}, {"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}});
}

double expected_mu_class2(double theta) {
  if (!(theta > 0.0 && theta < M_PI))
    throw std::invalid_argument("expected_mu_class2: theta in (0,pi)");
  if (theta <= M_PI / 2.0) return 1.5;
  return 2.0 - class2_params(theta).b;  // d(theta) = 1 + sin(theta)/2
}

WitnessRecord breuer_hall_witness(const ComplexMatrix& u) {
  BipartiteOperator w = choi_matrix(breuer_hall_map(u));
  return WitnessRecord{w, "breuer-hall", {{"d", double(u.rows())}}, "families:breuer-hall"};
}

WitnessRecord breuer_hall_witness(int d) {
  return breuer_hall_witness(canonical_antisymmetric_unitary(d));
}

WitnessRecord tau_witness(int n, int k) {
  if (n < 2 || k < 0 || k > n - 1)
    throw std::invalid_argument("tau_witness: need n >= 2 and 0 <= k <= n-1");
  std::vector<double> coeffs(n, 0.0);
  coeffs[0] = double(n - k - 1);
  for (int l = 1; l <= k; ++l) coeffs[l] = 1.0;
  return make_record(circulant_witness_matrix(coeffs), n, n, "tau",
                     {{"n", double(n)}, {"k", double(k)}});
}

std::optional<double> expected_mu_tau(int n, int k) {
  if (k == 1) return n == 3 ? 4.0 / 3.0 : double(n - 2);
  if (k == n - 2) return n == 3 ? 4.0 / 3.0 : 1.5;
  return std::nullopt;
}

double p_theta(double theta) {
  double best = -2.0;
  for (int k = -1; k <= 1; ++k) best = std::max(best, 2.0 * std::cos(theta + k * 2.0 * M_PI / 3.0));
  return best;
}

WitnessRecord hakye_witness(double a, double b, double c, double theta) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("hakye_witness: coefficients >= 0");
  if (!(theta >= -M_PI && theta <= M_PI))
    throw std::invalid_argument("hakye_witness: theta in [-pi, pi]");
  double p = p_theta(theta);
  if (a + b + c < p - 1e-9)
    throw std::invalid_argument("hakye_witness: a+b+c >= p_theta required");
  if (a <= 1.0 && b * c < (1.0 - a) * (1.0 - a) - 1e-9)
    throw std::invalid_argument("hakye_witness: bc >= (1-a)^2 required when a <= 1");
  ComplexMatrix w(9, 9);
  const int diag_a[3] = {0, 4, 8}, diag_b[3] = {1, 5, 6}, diag_c[3] = {2, 3, 7};
  for (int t = 0; t < 3; ++t) {
    w(diag_a[t], diag_a[t]) = a;
    w(diag_b[t], diag_b[t]) = b;
    w(diag_c[t], diag_c[t]) = c;
  }
  cplx e = std::polar(1.0, theta);
  // <ii|W|i+1,i+1> = -e^{i theta}, cyclically
  for (int i = 0; i < 3; ++i) {
    int p0 = i * 3 + i;
    int p1 = ((i + 1) % 3) * 3 + (i + 1) % 3;
    int p2 = ((i + 2) % 3) * 3 + (i + 2) % 3;
    w(p0, p1) = -e;
    w(p1, p0) = -std::conj(e);
    w(p0, p2) = -std::conj(e);
    w(p2, p0) = -e;
  }
  return make_record(std::move(w), 3, 3, "hakye",
                     {{"a", a}, {"b", b}, {"c", c}, {"theta", theta}, {"p_theta", p}});
}

WitnessRecord hakye_class1(double theta) {
  double p = p_theta(theta);
  if (!(p >= 4.0 / 3.0 - 1e-12 && p < 1.0 + 1.0 / std::sqrt(2.0)))
    throw std::invalid_argument("hakye_class1: need 4/3 <= p_theta < 1 + 1/sqrt(2)");
  WitnessRecord rec = hakye_witness(2.0 - p, p - 1.0, p - 1.0, theta);
  rec.family = "hakye-c1";
  return rec;
}

WitnessRecord hakye_class2(double theta, HaKyeBranch branch) {
  double p = p_theta(theta);
  if (!(p >= 1.0 + 1.0 / std::sqrt(2.0) - 1e-12 && p < 2.0))
    throw std::invalid_argument("hakye_class2: need 1 + 1/sqrt(2) <= p_theta < 2");
  double b = branch == HaKyeBranch::CZero ? p - 1.0 : 0.0;
  double c = branch == HaKyeBranch::CZero ? 0.0 : p - 1.0;
  WitnessRecord rec = hakye_witness(1.0, b, c, theta);
  rec.family = "hakye-c2";
  return rec;
}

std::vector<ProductVector> tiles_upb() {
  auto k = [](int i) { return basis_ket(i, 3); };
  auto minus = [&](int i, int j) {
    CVec v = k(i);
    for (int t = 0; t < 3; ++t) v[t] -= k(j)[t];
    return v;
  };
  CVec uniform = {1.0, 1.0, 1.0};
  std::vector<ProductVector> out;
  out.emplace_back(k(0), minus(0, 1));
  out.emplace_back(k(2), minus(1, 2));
  out.emplace_back(minus(0, 1), k(2));
  out.emplace_back(minus(1, 2), k(0));
  out.emplace_back(uniform, uniform);
  return out;
}

namespace {
BipartiteOperator upb_projector(const std::vector<ProductVector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("upb: empty vector set");
  const int dA = static_cast<int>(vectors[0].psi.size());
  const int dB = static_cast<int>(vectors[0].phi.size());
  std::vector<CVec> joints;
  for (const auto& v : vectors) joints.push_back(v.joint());
  for (std::size_t i = 0; i < joints.size(); ++i)
    for (std::size_t j = i + 1; j < joints.size(); ++j)
      if (std::abs(vec_dot(joints[i], joints[j])) > 1e-10)
        throw std::invalid_argument("upb: vectors must be pairwise orthogonal");
  ComplexMatrix q(dA * dB, dA * dB);
  for (const auto& v : joints) q += outer(v, v);
  return BipartiteOperator(std::move(q), dA, dB);
}
}  // namespace

WitnessRecord upb_witness(const std::vector<ProductVector>& vectors, double eps_minus) {
  BipartiteOperator q = upb_projector(vectors);
  ComplexMatrix w = q.mat;
  w -= ComplexMatrix::identity(q.dim()).scaled(eps_minus);
  return make_record(std::move(w), q.dA, q.dB, "upb",
                     {{"eps_minus", eps_minus}, {"k", double(vectors.size())}});
}

BipartiteOperator upb_mirror(const std::vector<ProductVector>& vectors) {
  BipartiteOperator q = upb_projector(vectors);
  ComplexMatrix m = ComplexMatrix::identity(q.dim());
  m -= q.mat;
  return BipartiteOperator(std::move(m), q.dA, q.dB);
}

EdgeWitnessPair edge_witness(const BipartiteOperator& p, const BipartiteOperator& q,
                             const OptimizerConfig& cfg) {
  if (p.dA != q.dA || p.dB != q.dB) throw std::invalid_argument("edge_witness: dim mismatch");
  if (min_eigenvalue(p.mat, 1e-9) < -1e-9 || min_eigenvalue(q.mat, 1e-9) < -1e-9)
    throw std::invalid_argument("edge_witness: P and Q must be PSD");
  if (p.mat.max_abs() < 1e-14 && q.mat.max_abs() < 1e-14)
    throw std::invalid_argument("edge_witness: P and Q cannot both vanish");
  ComplexMatrix s = p.mat + partial_transpose(q, Subsystem::B).mat;
  BipartiteOperator sop(s, p.dA, p.dB);
  double eps_minus = product_extrema(sop, ExtremumMode::Inf, cfg).value;
  double eps_plus = product_extrema(sop, ExtremumMode::Sup, cfg).value;
  ComplexMatrix w = s;
  w -= ComplexMatrix::identity(sop.dim()).scaled(eps_minus);
  EdgeWitnessPair out{
      WitnessRecord{BipartiteOperator(std::move(w), p.dA, p.dB), "edge",
                    {{"eps_minus", eps_minus}, {"eps_plus", eps_plus}}, "families:edge"},
      BipartiteOperator(ComplexMatrix::identity(sop.dim()).scaled(eps_plus) - s, p.dA, p.dB),
      eps_minus, eps_plus};
  return out;
}

SpaResult spa(const BipartiteOperator& w) {
  if (!w.hermitian) throw std::invalid_argument("spa: witness must be Hermitian");
  double lmin = min_eigenvalue(w.mat);
  if (lmin >= -1e-12) throw std::invalid_argument("spa: operator is already PSD");
  double p = -lmin;
  ComplexMatrix x = ComplexMatrix::identity(w.dim()).scaled(p);
  x += w.mat;
  return {p, BipartiteOperator(std::move(x), w.dA, w.dB)};
}

SpaResult spa(const WitnessRecord& w) { return spa(w.op); }

}  // namespace mirrorlab
