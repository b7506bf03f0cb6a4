#include <doctest.h>

#include <cmath>

#include "mirrorlab/families.hpp"
#include "mirrorlab/linalg.hpp"
#include "mirrorlab/optimizer.hpp"
#include "mirrorlab/rng.hpp"

using namespace mirrorlab;

namespace {
const double kPi = M_PI;

ComplexMatrix explicit_gamma_matrix(double g) {
  cplx w = std::polar(1.0, 2.0 * kPi / 3.0);
  cplx ws = std::conj(w);
  double h = (1.0 - g) / 2.0;
  ComplexMatrix m(9, 9);
  m(0, 0) = 1 - g;
  m(0, 7) = g * w;
  m(1, 1) = g;
  m(1, 3) = -h;
  m(2, 4) = g * ws;
  m(2, 6) = -h;
  m(3, 1) = -h;
  m(3, 8) = g * ws;
  m(4, 2) = g * w;
  m(4, 4) = 1 - g;
  m(5, 5) = g;
  m(5, 7) = -h;
  m(6, 2) = -h;
  m(6, 6) = g;
  m(7, 0) = g * ws;
  m(7, 5) = -h;
  m(8, 3) = g * w;
  m(8, 8) = 1 - g;
  return m;
}
}  // namespace

TEST_CASE("reduction witness structure and spectrum") {
  WitnessRecord w = reduction_witness(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(w.op.mat(i * 3 + i, j * 3 + j) == cplx(i == j ? 0.0 : -1.0));
      if (i != j) CHECK(w.op.mat(i * 3 + j, i * 3 + j) == cplx(1.0));
    }
  auto vals = hermitian_eigenvalues(reduction_witness(2).op.mat);
  CHECK(vals[0] == doctest::Approx(-1.0));
  CHECK(vals[1] == doctest::Approx(1.0));
  CHECK(vals[3] == doctest::Approx(1.0));
  CHECK_THROWS_AS(reduction_witness(1), std::invalid_argument);
}

TEST_CASE("choi matrices of the canonical maps") {
  CHECK(max_abs_diff(choi_matrix(identity_map(3)).mat, max_entangled_projector(3).mat.scaled(3.0)) <
        1e-14);
  CHECK(max_abs_diff(choi_matrix(reduction_map(3)).mat, reduction_witness(3).op.mat) < 1e-12);
  CHECK(max_abs_diff(choi_matrix(tau_map(3, 1)).mat, w_abc(1, 1, 0).op.mat) < 1e-12);
  for (const auto& spec : {identity_map(3), reduction_map(4), diagonal_projection_map(3),
                           tau_map(5, 2), breuer_hall_map(canonical_antisymmetric_unitary(4))})
    CHECK(linearity_defect(spec) < 1e-10);

  // a nonlinear action is flagged by the linearity probe
  PositiveMapSpec square{3, 3, "square", [](const ComplexMatrix& x) { return x * x; }};
  CHECK(linearity_defect(square) > 1e-3);
}

TEST_CASE("weyl operators and the bell basis") {
  CHECK(max_abs_diff(weyl_operator(0, 0), ComplexMatrix::identity(3)) == 0.0);
  CHECK(max_abs_diff(bell_projector(0, 0).mat, max_entangled_projector(3).mat) < 1e-14);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      for (int k2 = 0; k2 < 3; ++k2)
        for (int l2 = 0; l2 < 3; ++l2) {
          double overlap = trace_pairing(bell_projector(k, l), bell_projector(k2, l2));
          CHECK(overlap == doctest::Approx(k == k2 && l == l2 ? 1.0 : 0.0).epsilon(1e-11));
        }
  CHECK_THROWS_AS(weyl_operator(3, 0), std::invalid_argument);
}

TEST_CASE("gamma witness matches its explicit matrix") {
  for (double g : {0.5, 0.8}) {
    WitnessRecord w = gamma_witness(g);
    CHECK(max_abs_diff(w.op.mat, explicit_gamma_matrix(g)) < 1e-12);
  }
  // W^Gamma = 3 B_gamma is PSD for every gamma
  for (double g : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    BipartiteOperator bg = partial_transpose(gamma_witness(g).op, Subsystem::B);
    CHECK(min_eigenvalue(bg.mat) > -1e-12);
  }
  CHECK_THROWS_AS(gamma_witness(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_witness(1.0), std::invalid_argument);
}

TEST_CASE("abc family admissibility") {
  CHECK_NOTHROW(w_abc(1, 1, 0));
  CHECK_NOTHROW(w_abc(2, 1, 1));
  CHECK_THROWS_AS(w_abc(0.5, 0.1, 0.1), std::invalid_argument);   // a+b+c < 2
  CHECK_THROWS_AS(w_abc(0.5, 2.0, 0.05), std::invalid_argument);  // bc < (1-a)^2
  CHECK_THROWS_AS(w_abc(-1, 2, 2), std::invalid_argument);
}

TEST_CASE("abc phi slice") {
  for (int i = 0; i < 40; ++i) {
    double phi = 2.0 * kPi * i / 40.0;
    AbcParams p = abc_phi_params(phi);
    CHECK(p.a + p.b + p.c == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.a * p.a + p.b * p.b + p.c * p.c == doctest::Approx(2.0).epsilon(1e-12));
    WitnessRecord w = w_abc_phi(phi);
    CHECK(w.op.mat.trace().real() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(trace_pairing(w.op, w.op) == doctest::Approx(12.0).epsilon(1e-12));
  }
  CHECK(max_abs_diff(w_abc_phi(kPi).op.mat, reduction_witness(3).op.mat) < 1e-12);
  // with this parametrization phi = pi/3 lands on the Choi point with b = 0
  CHECK(max_abs_diff(w_abc_phi(kPi / 3.0).op.mat, w_abc(1, 0, 1).op.mat) < 1e-12);
  CHECK(max_abs_diff(w_abc_phi(5.0 * kPi / 3.0).op.mat, w_abc(1, 1, 0).op.mat) < 1e-12);
}

TEST_CASE("expected mu along the phi slice") {
  CHECK(expected_mu_abc(kPi / 3.0) == doctest::Approx(4.0 / 3.0));
  // both branches meet at b(pi) = c(pi) = 1, the reduction-map value
  CHECK(expected_mu_abc(kPi) == doctest::Approx(1.0));
  CHECK(expected_mu_abc(5.0 * kPi / 6.0) == doctest::Approx((2.0 + std::sqrt(3.0)) / 3.0));
  for (double bp : {2.0 * kPi / 3.0, kPi, 4.0 * kPi / 3.0}) {
    CHECK(std::abs(expected_mu_abc(bp - 1e-9) - expected_mu_abc(bp + 1e-9)) < 1e-8);
  }
}

TEST_CASE("abcd classes") {
  WitnessRecord w0 = class1_theta(0.0);
  CHECK(max_abs_diff(w0.op.mat, circulant_witness_matrix({1, 1, 1, 0})) < 1e-12);
  CHECK(max_abs_diff(class1_theta(kPi).op.mat, circulant_witness_matrix({1, 0, 1, 1})) < 1e-12);
  CHECK(max_abs_diff(class2_theta(kPi).op.mat, circulant_witness_matrix({0, 1, 1, 1})) < 1e-12);
  // W[0,1,1,1] is the C^4 reduction witness
  CHECK(max_abs_diff(class2_theta(kPi).op.mat, reduction_witness(4).op.mat) < 1e-12);
  for (double th : {0.2, 1.0, 2.0, 3.0}) {
    WitnessRecord w = class2_theta(th);
    CHECK(w.op.mat.trace().real() == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(trace_pairing(w.op, w.op) == doctest::Approx(24.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(w_abcd(1, 1, 1, 1), std::invalid_argument);
  CHECK_NOTHROW(w_abcd(1, 1, 1, 0));
}

TEST_CASE("expected mu for class II") {
  CHECK(expected_mu_class2(kPi / 4.0) == doctest::Approx(1.5));
  CHECK(expected_mu_class2(kPi / 2.0 - 1e-12) == doctest::Approx(1.5));
  CHECK(expected_mu_class2(kPi / 2.0 + 1e-12) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(expected_mu_class2(5.0 * kPi / 6.0) == doctest::Approx(1.25));
}

TEST_CASE("optimized class I subtracts the alternating-sign projector") {
  WitnessRecord w = optimized_class1(0.0);
  // <00|W~|00> = a - 2/4 = 1/2, <00|W~|11> = -1 + 2/4 = -1/2
  CHECK(w.op.mat(0, 0) == cplx(0.5));
  CHECK(w.op.mat(0, 5) == cplx(-0.5));
  CHECK(w.op.mat(0, 10) == cplx(-1.5));
}

TEST_CASE("breuer-hall witness and its mirror map") {
  ComplexMatrix u = canonical_antisymmetric_unitary(4);
  WitnessRecord w = breuer_hall_witness(u);
  CHECK(w.op.hermitian);
  // choi(mirror) = 1 (x) 1 - choi(Phi_BH)
  BipartiteOperator mirror_choi = choi_matrix(breuer_hall_mirror_map(u));
  ComplexMatrix expect = ComplexMatrix::identity(16) - w.op.mat;
  CHECK(max_abs_diff(mirror_choi.mat, expect) < 1e-12);
  // the mirror splits into Choi(id) >= 0 plus a part PSD after partial transpose
  ComplexMatrix choi_id = max_entangled_projector(4).mat.scaled(4.0);
  BipartiteOperator co_cp(mirror_choi.mat - choi_id, 4, 4);
  CHECK(min_eigenvalue(choi_id) > -1e-12);
  CHECK(min_eigenvalue(partial_transpose(co_cp, Subsystem::B).mat) > -1e-10);

  CHECK_THROWS_AS(breuer_hall_witness(ComplexMatrix::identity(4)), std::invalid_argument);
  CHECK_THROWS_AS(canonical_antisymmetric_unitary(5), std::invalid_argument);
}

TEST_CASE("tau family") {
  for (int n : {3, 4, 5})
    CHECK(max_abs_diff(tau_witness(n, n - 1).op.mat, reduction_witness(n).op.mat) < 1e-12);
  CHECK(*expected_mu_tau(3, 1) == doctest::Approx(4.0 / 3.0));
  CHECK(*expected_mu_tau(4, 1) == doctest::Approx(2.0));
  CHECK(*expected_mu_tau(5, 1) == doctest::Approx(3.0));
  CHECK(*expected_mu_tau(5, 3) == doctest::Approx(1.5));
  CHECK(!expected_mu_tau(5, 2).has_value());
  CHECK_THROWS_AS(tau_witness(3, 3), std::invalid_argument);
}

TEST_CASE("hakye witness layout and classes") {
  double th = std::acos(2.0 / 3.0);
  CHECK(p_theta(0.0) == doctest::Approx(2.0));
  CHECK(p_theta(th) == doctest::Approx(4.0 / 3.0));
  WitnessRecord w = hakye_class1(th);
  CHECK(w.params.at("a") == doctest::Approx(2.0 / 3.0));
  CHECK(w.params.at("b") == doctest::Approx(1.0 / 3.0));
  CHECK(w.params.at("c") == doctest::Approx(1.0 / 3.0));
  cplx e = std::polar(1.0, th);
  CHECK(std::abs(w.op.mat(0, 4) - (-e)) < 1e-14);
  CHECK(std::abs(w.op.mat(0, 8) - (-std::conj(e))) < 1e-14);
  CHECK(std::abs(w.op.mat(4, 8) - (-e)) < 1e-14);

  double p2 = 1.0 + 1.0 / std::sqrt(2.0);
  double th2 = std::acos(p2 / 2.0);
  WitnessRecord w2 = hakye_class2(th2, HaKyeBranch::CZero);
  CHECK(w2.params.at("a") == doctest::Approx(1.0));
  CHECK(w2.params.at("b") == doctest::Approx(p2 - 1.0));
  CHECK(w2.params.at("c") == doctest::Approx(0.0));
  WitnessRecord w2b = hakye_class2(th2, HaKyeBranch::BZero);
  CHECK(w2b.params.at("c") == doctest::Approx(p2 - 1.0));

  CHECK_THROWS_AS(hakye_witness(0.1, 0.1, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hakye_class1(0.0), std::invalid_argument);  // p_theta = 2 out of class range
}

TEST_CASE("tiles UPB: orthogonality, unextendibility, mirror projector") {
  auto tiles = tiles_upb();
  REQUIRE(tiles.size() == 5);
  std::vector<CVec> joints;
  for (const auto& v : tiles) joints.push_back(v.joint());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) CHECK(std::abs(vec_dot(joints[i], joints[j])) < 1e-14);

  // see-saw bound on eps_- = inf over products of <Q>
  ComplexMatrix q(9, 9);
  for (const auto& j : joints) q += outer(j, j);
  BipartiteOperator qop(q, 3, 3);
  double eps = product_extrema(qop, ExtremumMode::Inf).value;
  CHECK(eps > 0.01);  // strictly positive: no product vector escapes the span

  // independent oracle: coarse grid over product vectors plus refinement;
  // the minimum of sum_k |<z_k|psi phi>|^2 is sigma_3(U(psi))^2 minimized
  // over psi, where U(psi)_{kj} = sum_i conj(z_k[i,j]) psi_i
  auto sigma3sq = [&](const CVec& psi) {
    ComplexMatrix u(5, 3);
    for (int k = 0; k < 5; ++k)
      for (int j = 0; j < 3; ++j) {
        cplx s = 0.0;
        for (int i = 0; i < 3; ++i) s += std::conj(joints[k][i * 3 + j]) * psi[i];
        u(k, j) = s;
      }
    return min_eigenvalue(u.adjoint() * u);
  };
  auto param = [](double a1, double a2, double d1, double d2) {
    CVec psi(3);
    psi[0] = std::cos(a1);
    psi[1] = std::sin(a1) * std::cos(a2) * std::polar(1.0, d1);
    psi[2] = std::sin(a1) * std::sin(a2) * std::polar(1.0, d2);
    return psi;
  };
  double best = 1e9;
  double ba1 = 0, ba2 = 0, bd1 = 0, bd2 = 0;
  const int na = 9, nd = 8;
  for (int i1 = 0; i1 <= na; ++i1)
    for (int i2 = 0; i2 <= na; ++i2)
      for (int j1 = 0; j1 < nd; ++j1)
        for (int j2 = 0; j2 < nd; ++j2) {
          double a1 = kPi / 2.0 * i1 / na, a2 = kPi / 2.0 * i2 / na;
          double d1 = 2.0 * kPi * j1 / nd, d2 = 2.0 * kPi * j2 / nd;
          double v = sigma3sq(param(a1, a2, d1, d2));
          if (v < best) {
            best = v;
            ba1 = a1, ba2 = a2, bd1 = d1, bd2 = d2;
          }
        }
  // local refinement around the best grid point
  double step = kPi / 2.0 / na;
  for (int round = 0; round < 40; ++round) {
    bool improved = false;
    for (int dim = 0; dim < 4; ++dim)
      for (double sgn : {-1.0, 1.0}) {
        double a1 = ba1 + (dim == 0) * sgn * step, a2 = ba2 + (dim == 1) * sgn * step;
        double d1 = bd1 + (dim == 2) * sgn * step, d2 = bd2 + (dim == 3) * sgn * step;
        double v = sigma3sq(param(a1, a2, d1, d2));
        if (v < best) {
          best = v;
          ba1 = a1, ba2 = a2, bd1 = d1, bd2 = d2;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  CHECK(best > 0.01);                              // unextendible
  CHECK(best == doctest::Approx(eps).epsilon(0.02));  // grid oracle agrees with see-saw

  // the mirror is the rank-4 projector onto the orthocomplement
  BipartiteOperator mirror = upb_mirror(tiles);
  auto vals = hermitian_eigenvalues(mirror.mat);
  int rank = 0;
  for (double v : vals) {
    CHECK(std::min(std::abs(v), std::abs(v - 1.0)) < 1e-12);
    if (v > 0.5) ++rank;
  }
  CHECK(rank == 4);
  // normalized, it is a PPT state
  BipartiteOperator rho(mirror.mat.scaled(0.25), 3, 3);
  CHECK(min_eigenvalue(partial_transpose(rho, Subsystem::B).mat) > -1e-12);

  // tr(W W_M) = -eps_- tr(W_M) < 0
  WitnessRecord w = upb_witness(tiles, eps);
  double lhs = trace_pairing(w.op, mirror);
  CHECK(lhs == doctest::Approx(-eps * mirror.mat.trace().real()).epsilon(1e-9));
  CHECK(lhs < 0.0);

  // non-orthogonal input is rejected
  std::vector<ProductVector> bad = {tiles[0], tiles[0]};
  CHECK_THROWS_AS(upb_witness(bad, 0.1), std::invalid_argument);
}

TEST_CASE("edge witness from P = 0, Q = P+_2 is half the flip") {
  BipartiteOperator zero(ComplexMatrix::zero(4, 4), 2, 2);
  EdgeWitnessPair pair = edge_witness(zero, max_entangled_projector(2));
  CHECK(std::abs(pair.eps_minus) < 1e-9);
  CHECK(max_abs_diff(pair.witness.op.mat, flip_operator(2).mat.scaled(0.5)) < 1e-8);
  // witness + mirror = (eps_+ - eps_-) 1
  ComplexMatrix sum = pair.witness.op.mat + pair.mirror.mat;
  ComplexMatrix expect = ComplexMatrix::identity(4).scaled(pair.eps_plus - pair.eps_minus);
  CHECK(max_abs_diff(sum, expect) < 1e-12);
  CHECK_THROWS_AS(edge_witness(zero, zero), std::invalid_argument);
}

TEST_CASE("spa") {
  SpaResult s = spa(reduction_witness(3));
  CHECK(s.p == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(min_eigenvalue(s.x.mat)) < 1e-9);

  // spa of the gamma witness is PPT
  SpaResult g = spa(gamma_witness(0.9));
  CHECK(min_eigenvalue(g.x.mat) > -1e-9);
  CHECK(min_eigenvalue(partial_transpose(g.x, Subsystem::B).mat) > -1e-9);

  // spa of an extremal decomposable witness is separable; at 2 (x) 2 that is
  // exactly the PPT property
  CVec bell(4, cplx{0.0});
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  SpaResult v = spa(vector_witness(bell, 2, 2));
  CHECK(v.p == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(min_eigenvalue(partial_transpose(v.x, Subsystem::B).mat) > -1e-9);

  CHECK_THROWS_AS(spa(max_entangled_projector(3)), std::invalid_argument);
}

TEST_CASE("vector witness") {
  CVec bell(4, cplx{0.0});
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  WitnessRecord w = vector_witness(bell, 2, 2);
  CHECK(max_abs_diff(w.op.mat, flip_operator(2).mat.scaled(0.5)) < 1e-12);

  CVec tilted(4, cplx{0.0});
  tilted[0] = std::sqrt(0.8);
  tilted[3] = std::sqrt(0.2);
  WitnessRecord wt = vector_witness(tilted, 2, 2);
  CHECK(max_eigenvalue(wt.op.mat) == doctest::Approx(0.8).epsilon(1e-10));

  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    CVec v(9);
    for (auto& z : v) z = rng.complex_gaussian();
    WitnessRecord r = vector_witness(v, 3, 3);
    SchmidtData sd = schmidt(vec_normalized(v), 3, 3);
    CHECK(max_eigenvalue(r.op.mat) ==
          doctest::Approx(sd.coefficients[0] * sd.coefficients[0]).epsilon(1e-9));
  }

  CVec prod(4, cplx{0.0});
  prod[1] = 1.0;
  CHECK_THROWS_AS(vector_witness(prod, 2, 2), std::invalid_argument);
}
