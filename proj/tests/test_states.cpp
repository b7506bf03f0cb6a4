#include <doctest.h>

#include <cmath>

#include "mirrorlab/classify.hpp"
#include "mirrorlab/states.hpp"
#include "mirrorlab/rng.hpp"

using namespace mirrorlab;

namespace {
const double kPi = M_PI;
}

TEST_CASE("rho_x stays PPT across half a dozen decades") {
  for (int i = 0; i < 50; ++i) {
    double x = std::pow(10.0, -2.0 + 4.0 * i / 49.0);  // log-spaced in (0.01, 100)
    StateSample s = rho_x_c4(x);
    CHECK(is_ppt(s.rho, 1e-9));
  }
  CHECK_THROWS_AS(rho_x_c4(0.0), std::invalid_argument);
}

TEST_CASE("rho_x pairing against the C^4 mirror companion") {
  ComplexMatrix m = ComplexMatrix::identity(16).scaled(4.0 / 3.0);
  m -= circulant_witness_matrix({1, 1, 1, 0});
  BipartiteOperator wm(std::move(m), 4, 4);
  auto expect = [](double x) { return 4.0 / (3.0 * x) * (x * x - 5.0 * x + 4.0); };
  for (double x : {1.0, 2.0, 5.0}) {
    CHECK(trace_pairing(wm, rho_x_c4(x).rho) == doctest::Approx(expect(x)).epsilon(1e-10));
  }
  CHECK(expect(1.0) == doctest::Approx(0.0));
  CHECK(expect(2.0) == doctest::Approx(-4.0 / 3.0));
  CHECK(expect(5.0) == doctest::Approx(16.0 / 15.0));
}

TEST_CASE("hakye rho: closed-form PPT predicate agrees with the numerics") {
  for (int it = 0; it < 50; ++it)
    for (int jt = 0; jt < 50; ++jt) {
      double t = 0.5 + 2.0 * it / 49.0;
      double theta = -kPi + 2.0 * kPi * jt / 49.0;
      for (char kind : {'x', 'y'}) {
        StateSample s = hakye_rho(kind, t, theta);
        bool numeric = is_ppt(s.rho, 1e-9);
        // skip razor-edge cases where the predicate sits at zero
        double q = (kind == 'x' ? 2.0 : -2.0) * std::cos(3.0 * theta);
        double f = t * t * t - 3.0 * t + q;
        if (std::abs(f) < 1e-9 || std::abs(t - 1.0) < 1e-9) continue;
        CHECK(*s.ppt == numeric);
      }
    }
}

TEST_CASE("hakye thresholds hit the reference pair at cos(theta) = 3/4") {
  double theta_star = std::acos(0.75);
  CHECK(hakye_ppt_threshold('x', theta_star) == doctest::Approx(1.896).epsilon(1e-3));
  CHECK(hakye_ppt_threshold('y', theta_star) == doctest::Approx(1.5).epsilon(1e-9));
  // at the class-C1 angle p_theta = 4/3 the same predicates give a different,
  // still-nonempty detection window (see docs/table notes)
  double theta1 = std::acos(2.0 / 3.0);
  CHECK(hakye_ppt_threshold('x', theta1) == doctest::Approx(1.95766).epsilon(1e-4));
  CHECK(hakye_ppt_threshold('y', theta1) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(hakye_ppt_threshold('x', theta1) < 2.0);  // the witness still detects [thr, 2)
}

TEST_CASE("hakye trace identity 2(x-2) and the 0.5185 mirror bound") {
  // the identity is phase-cancelling: it holds at every admissible theta
  // (p_theta = 4/3 on the orbit +/- arccos(2/3) mod 2pi/3) with the state
  // built at the same theta
  double t0 = std::acos(2.0 / 3.0);
  for (double theta : {t0, -t0, t0 - 2.0 * kPi / 3.0}) {
    WitnessRecord wt = hakye_witness(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, theta);
    for (double x : {1.0, 1.896, 2.0, 3.5}) {
      StateSample s = hakye_rho('x', x, theta);
      CHECK(trace_pairing(wt.op, s.rho) == doctest::Approx(2.0 * (x - 2.0)).epsilon(1e-10));
    }
  }
  // mirror bound: tr((mu 1 - W) rho_y) at y = 3/2 equals 0.5185 for mu = 1.097
  double mu = 1.0969981;
  WitnessRecord w = hakye_class1(std::acos(2.0 / 3.0));
  ComplexMatrix mm = ComplexMatrix::identity(9).scaled(mu);
  mm -= w.op.mat;
  BipartiteOperator wm(std::move(mm), 3, 3);
  StateSample ry = hakye_rho('y', 1.5, std::acos(2.0 / 3.0));
  double bound = trace_pairing(wm, ry.rho);
  CHECK(bound == doctest::Approx(0.5185).epsilon(2e-4));
  // and it grows with y, so the family never detects the mirror
  StateSample ry2 = hakye_rho('y', 2.5, std::acos(2.0 / 3.0));
  CHECK(trace_pairing(wm, ry2.rho) > bound);
}

TEST_CASE("bell diagonal states") {
  std::array<double, 9> uniform{};
  uniform.fill(1.0 / 9.0);
  StateSample mixed = bell_diagonal_state(uniform);
  CHECK(max_abs_diff(mixed.rho.mat, ComplexMatrix::identity(9).scaled(1.0 / 9.0)) < 1e-12);
  CHECK(is_ppt(mixed.rho, 1e-10));
  CHECK(realignment_norm(mixed.rho) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  std::array<double, 9> pure{};
  pure[0] = 1.0;
  StateSample bell = bell_diagonal_state(pure);
  CHECK(!is_ppt(bell.rho, 1e-10));

  std::array<double, 9> bad{};
  bad.fill(0.2);
  CHECK_THROWS_AS(bell_diagonal_state(bad), std::invalid_argument);
}

TEST_CASE("bell diagonal states are fixed by the weyl pinching") {
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    auto w = rng.dirichlet_uniform(9);
    std::array<double, 9> c{};
    for (int i = 0; i < 9; ++i) c[i] = w[i];
    StateSample s = bell_diagonal_state(c);
    CHECK(max_abs_diff(weyl_pinching(s.rho).mat, s.rho.mat) < 1e-10);
  }
  // a generic state is *not* fixed (the pinching strips coherences)
  Rng rng2(4);
  CVec v = rng2.haar_unit_vector(9);
  CVec u = rng2.haar_unit_vector(9);
  ComplexMatrix generic = outer(v, v).scaled(0.6) + outer(u, u).scaled(0.4);
  BipartiteOperator g(generic, 3, 3);
  CHECK(max_abs_diff(weyl_pinching(g).mat, g.mat) > 1e-3);
}

TEST_CASE("ppt bell diagonal sampler is deterministic and annotated") {
  auto a = sample_ppt_bell_diagonal(300, 0);
  auto b = sample_ppt_bell_diagonal(300, 0);
  REQUIRE(a.size() == 300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(max_abs_diff(a[i].rho.mat, b[i].rho.mat) == 0.0);
    CHECK(is_ppt(a[i].rho, 1e-9));
    REQUIRE(a[i].realignment.has_value());
  }
  // bound-entangled candidates: some PPT members break the realignment bound;
  // the exact count at this seed is a regression fixture
  int over = 0;
  for (const auto& s : a)
    if (*s.realignment > 1.0 + 1e-9) ++over;
  CHECK(over == 41);
}

TEST_CASE("random ppt states") {
  auto s = random_ppt_state(2, 2, 0);
  REQUIRE(s.has_value());
  CHECK(is_ppt(s->rho, 1e-9));
  CHECK(s->rho.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  auto again = random_ppt_state(2, 2, 0);
  CHECK(max_abs_diff(s->rho.mat, again->rho.mat) == 0.0);

  // negative control: at 2 (x) 2, PPT = separable, so the flip witness can
  // never detect a sampled state
  BipartiteOperator f2(flip_operator(2).mat.scaled(0.5), 2, 2);
  for (int i = 0; i < 50; ++i) {
    auto r = random_ppt_state(2, 2, derive_seed(0, i));
    REQUIRE(r.has_value());
    CHECK(trace_pairing(f2, r->rho) >= -1e-10);
  }

  auto s33 = random_ppt_state(3, 3, 0, 50000);
  REQUIRE(s33.has_value());
  CHECK(is_ppt(s33->rho, 1e-9));

  // exhausted budget is a value, not an error (PPT draws at 4 (x) 4 are far
  // too rare for ten attempts)
  CHECK(!random_ppt_state(4, 4, 0, 10).has_value());
}
