#include <doctest.h>

#include <cmath>

#include "mirrorlab/optimizer.hpp"
#include "mirrorlab/linalg.hpp"
#include "mirrorlab/rng.hpp"

using namespace mirrorlab;

namespace {
const double kPi = M_PI;

OptimizerConfig quick() {
  OptimizerConfig cfg;
  cfg.restarts = 24;
  return cfg;
}
}  // namespace

TEST_CASE("product extrema pinned values") {
  for (int n : {2, 3, 4}) {
    OptimizationResult r = product_extrema(max_entangled_projector(n), ExtremumMode::Sup, quick());
    CHECK(r.value == doctest::Approx(1.0 / n).epsilon(1e-9));
    CHECK(r.converged);
  }
  OptimizationResult inf = product_extrema(BipartiteOperator::identity(3, 3), ExtremumMode::Inf, quick());
  CHECK(inf.value == doctest::Approx(1.0).epsilon(1e-12));

  OptimizationResult choi = product_extrema(w_abc_phi(kPi / 3.0).op, ExtremumMode::Sup, quick());
  CHECK(choi.value == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("see-saw history is monotone and value is attained") {
  OptimizerConfig cfg = quick();
  cfg.include_history = true;
  Rng rng(2);
  ComplexMatrix m(9, 9);
  for (int i = 0; i < 9; ++i) {
    m(i, i) = rng.gaussian();
    for (int j = i + 1; j < 9; ++j) {
      cplx z = rng.complex_gaussian();
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  BipartiteOperator q(m, 3, 3);
  for (ExtremumMode mode : {ExtremumMode::Sup, ExtremumMode::Inf}) {
    OptimizationResult r = product_extrema(q, mode, cfg);
    REQUIRE(!r.history.empty());
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      if (mode == ExtremumMode::Sup)
        CHECK(r.history[i] >= r.history[i - 1] - 1e-11);
      else
        CHECK(r.history[i] <= r.history[i - 1] + 1e-11);
    }
    CHECK(product_expectation(q, r.extremal) == doctest::Approx(r.value).epsilon(1e-10));
  }
}

TEST_CASE("sup is sandwiched between the product basis and the top eigenvalue") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix m(9, 9);
    for (int i = 0; i < 9; ++i) {
      m(i, i) = rng.gaussian();
      for (int j = i + 1; j < 9; ++j) {
        cplx z = rng.complex_gaussian();
        m(i, j) = z;
        m(j, i) = std::conj(z);
      }
    }
    BipartiteOperator q(m, 3, 3);
    double sup = product_extrema(q, ExtremumMode::Sup, quick()).value;
    double basis_best = -1e300;
    for (int i = 0; i < 9; ++i) basis_best = std::max(basis_best, m(i, i).real());
    CHECK(sup >= basis_best - 1e-10);
    CHECK(sup <= max_eigenvalue(m) + 1e-9);
  }
}

TEST_CASE("product extrema are invariant under partial transposition") {
  for (const auto& w : {w_abc_phi(2.2), gamma_witness(0.8)}) {
    BipartiteOperator wg = partial_transpose(w.op, Subsystem::B);
    for (ExtremumMode mode : {ExtremumMode::Sup, ExtremumMode::Inf}) {
      double v1 = product_extrema(w.op, mode, quick()).value;
      double v2 = product_extrema(wg, mode, quick()).value;
      CHECK(v1 == doctest::Approx(v2).epsilon(2e-6));
    }
  }
}

TEST_CASE("PSD operators are block-positive") {
  Rng rng(7);
  for (int t = 0; t < 8; ++t) {
    ComplexMatrix g(9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) g(i, j) = rng.complex_gaussian();
    BipartiteOperator psd(g * g.adjoint(), 3, 3);
    BlockPositivity bp = is_block_positive(psd, 1e-9, quick());
    CHECK(bp.positive);
  }
}

TEST_CASE("block positivity verdicts") {
  CHECK(is_block_positive(w_abc(1, 1, 0).op, 1e-7, quick()).positive);
  BlockPositivity neg =
      is_block_positive(BipartiteOperator(max_entangled_projector(3).mat.scaled(-1.0), 3, 3),
                        1e-7, quick());
  CHECK(!neg.positive);
  REQUIRE(neg.violation.has_value());
  CHECK(product_expectation(BipartiteOperator(max_entangled_projector(3).mat.scaled(-1.0), 3, 3),
                            *neg.violation) < 0.0);
  BlockPositivity red = is_block_positive(reduction_witness(3).op, 1e-7, quick());
  CHECK(red.positive);
  CHECK(std::abs(red.inf_value) < 1e-9);
}

TEST_CASE("mirror of the reduction witness is n P+") {
  for (int n : {2, 3, 4}) {
    MirrorResult m = mirror(reduction_witness(n), quick());
    CHECK(m.mu == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_abs_diff(m.mirrored.mat, max_entangled_projector(n).mat.scaled(double(n))) < 1e-8);
  }
}

TEST_CASE("mirror rejects non-block-positive input") {
  BipartiteOperator neg(max_entangled_projector(3).mat.scaled(-1.0), 3, 3);
  CHECK_THROWS_AS(mirror(neg, quick()), std::invalid_argument);
}

TEST_CASE("breuer-hall witness is block-positive with inf value 0") {
  BlockPositivity bp = is_block_positive(breuer_hall_witness(4).op, 1e-7, quick());
  CHECK(bp.positive);
  CHECK(bp.inf_value >= -1e-7);
  CHECK(std::abs(bp.inf_value) < 1e-9);  // the infimum is attained at zero
}

TEST_CASE("mirror pinned mu values") {
  CHECK(mirror(gamma_witness(0.8), quick()).mu == doctest::Approx(0.9).epsilon(1e-6));
  // W[1,1,1,0] = choi(tau_{4,2}): the product supremum is 3/2, matching the
  // tau-family value mu_{4,2}; a 4/3 shift would not be block-positive
  MirrorResult m = mirror(class1_theta(0.0), quick());
  CHECK(m.mu == doctest::Approx(1.5).epsilon(1e-6));
  ComplexMatrix sum = m.mirrored.mat + class1_theta(0.0).op.mat;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(16).scaled(m.mu)) < 1e-12);

  MirrorResult hk = mirror(hakye_class1(std::acos(2.0 / 3.0)), quick());
  CHECK(hk.mu == doctest::Approx(1.097).epsilon(1e-3));
}

TEST_CASE("trace identity tr(W_M W) = 6 (mu - 2) on the phi slice") {
  for (double phi : {0.4, kPi / 3.0, 2.6, kPi, 4.9}) {
    WitnessRecord w = w_abc_phi(phi);
    MirrorResult m = mirror(w, quick());
    double lhs = trace_pairing(m.mirrored, w.op);
    CHECK(lhs == doctest::Approx(6.0 * (m.mu - 2.0)).epsilon(1e-9));
    CHECK(lhs < 0.0);
  }
}

TEST_CASE("separability window") {
  WitnessRecord red = reduction_witness(3);
  auto [lo, hi] = separability_window(red, quick());
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
  Rng rng(11);
  for (int t = 0; t < 10000; ++t) {
    ProductVector pv(rng.haar_unit_vector(3), rng.haar_unit_vector(3));
    double v = product_expectation(red.op, pv);
    CHECK(v >= lo - 1e-9);
    CHECK(v <= hi + 1e-9);
  }
  auto [lo2, hi2] = separability_window(w_abc_phi(kPi / 3.0), quick());
  CHECK(lo2 == 0.0);
  CHECK(hi2 == doctest::Approx(4.0 / 3.0).epsilon(1e-6));

  // the identity is trivially block-positive with window (0, 1), attained by
  // every product state
  WitnessRecord id{BipartiteOperator::identity(2, 2), "identity", {}, "test"};
  auto [lo3, hi3] = separability_window(id, quick());
  CHECK(lo3 == 0.0);
  CHECK(hi3 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spanning property") {
  SpanningResult red = spanning_property(reduction_witness(3), quick());
  CHECK(red.rank == 9);
  CHECK(red.spanning);

  SpanningResult choi = spanning_property(w_abc(1, 1, 0), quick());
  CHECK(choi.rank < 9);
  CHECK(!choi.spanning);

  CVec bell(4, cplx{0.0});
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  SpanningResult f2 = spanning_property(vector_witness(bell, 2, 2), quick());
  CHECK(f2.rank == 4);
  CHECK(f2.spanning);
}
