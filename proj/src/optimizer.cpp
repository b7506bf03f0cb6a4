#include "mirrorlab/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "mirrorlab/parallel.hpp"
#include "mirrorlab/rng.hpp"

namespace mirrorlab {

namespace {

// Extremal eigenvector of a (numerically) Hermitian contraction. Within a
// degenerate extremal eigenspace, picks the direction closest to `prev` so
// the see-saw cannot cycle between equivalent optimizers.
CVec extremal_vector(const ComplexMatrix& herm, ExtremumMode mode, const CVec& prev,
                     double* eigenvalue) {
  EigResult eig = hermitian_eigs(herm, 1e-8 * std::max(1.0, herm.max_abs()));
  const int n = herm.rows();
  const int ext = (mode == ExtremumMode::Sup) ? n - 1 : 0;
  const double lam = eig.values[ext];
  if (eigenvalue) *eigenvalue = lam;
  const double deg_tol = 1e-10 * (1.0 + std::abs(lam));
  int lo = ext, hi = ext;
  if (mode == ExtremumMode::Sup) {
    while (lo > 0 && eig.values[lo - 1] >= lam - deg_tol) --lo;
  } else {
    while (hi < n - 1 && eig.values[hi + 1] <= lam + deg_tol) ++hi;
  }
  if (lo == hi || prev.empty()) return column(eig.vectors, ext);
  CVec proj(n, cplx{0.0});
  for (int k = lo; k <= hi; ++k) {
    CVec vk = column(eig.vectors, k);
    cplx ov = vec_dot(vk, prev);
    for (int i = 0; i < n; ++i) proj[i] += ov * vk[i];
  }
  double norm = vec_norm(proj);
  if (norm < 1e-8) return column(eig.vectors, ext);
  for (auto& z : proj) z /= norm;
  return proj;
}

struct RunOutcome {
  double value = 0.0;
  ProductVector pair;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> history;
};

RunOutcome seesaw_run(const BipartiteOperator& q, const ProductVector& start, ExtremumMode mode,
                      const OptimizerConfig& cfg) {
  RunOutcome out;
  CVec psi = start.psi, phi = start.phi;
  double prev_value = 0.0;
  bool have_prev = false;
  int streak = 0;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    psi = extremal_vector(contract_b(q, phi), mode, psi, nullptr);
    double value = 0.0;
    phi = extremal_vector(contract_a(q, psi), mode, phi, &value);
    out.sweeps = sweep + 1;
    if (cfg.include_history) out.history.push_back(value);
    if (have_prev && std::abs(value - prev_value) < cfg.converge_tol) {
      if (++streak >= cfg.converge_streak) {
        out.converged = true;
        prev_value = value;
        break;
      }
    } else {
      streak = 0;
    }
    prev_value = value;
    have_prev = true;
  }
  out.pair = ProductVector(psi, phi);
  out.value = product_expectation(q, out.pair);
  return out;
}

void canonicalize_phase(CVec& v) {
  int arg = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      arg = static_cast<int>(i);
    }
  if (best == 0.0) return;
  cplx rot = std::conj(v[arg]) / best;
  for (auto& z : v) z *= rot;
}

std::vector<ProductVector> deterministic_starts(const BipartiteOperator& q) {
  std::vector<ProductVector> starts;
  for (int i = 0; i < q.dA; ++i)
    for (int j = 0; j < q.dB; ++j) starts.emplace_back(basis_ket(i, q.dA), basis_ket(j, q.dB));
  EigResult eig = hermitian_eigs(q.mat, 1e-8 * std::max(1.0, q.mat.max_abs()));
  for (int which : {0, q.dim() - 1}) {
    SchmidtData sd = schmidt(column(eig.vectors, which), q.dA, q.dB);
    starts.emplace_back(column(sd.left_vectors, 0), column(sd.right_vectors, 0));
  }
  return starts;
}

OptimizationResult run_multistart(const BipartiteOperator& q, ExtremumMode mode,
                                  const OptimizerConfig& cfg,
                                  const std::vector<ProductVector>& extra_starts) {
  if (!q.hermitian) throw std::invalid_argument("product_extrema: operator must be Hermitian");
  std::vector<ProductVector> starts = deterministic_starts(q);
  for (const auto& s : extra_starts) starts.push_back(s);
  const int fixed = static_cast<int>(starts.size());
  const int total = fixed + cfg.restarts;
  std::function<RunOutcome(int)> job = [&](int idx) -> RunOutcome {
    if (idx < fixed) return seesaw_run(q, starts[idx], mode, cfg);
    Rng rng(derive_seed(cfg.seed, 0x5ee5a300ull + static_cast<std::uint64_t>(idx - fixed)));
    ProductVector start(rng.haar_unit_vector(q.dA), rng.haar_unit_vector(q.dB));
    return seesaw_run(q, start, mode, cfg);
  };
  std::vector<RunOutcome> runs = parallel_map<RunOutcome>(total, job, cfg.parallel);

  const double sign = (mode == ExtremumMode::Sup) ? 1.0 : -1.0;
  int best = 0;
  for (int i = 1; i < total; ++i)
    if (sign * runs[i].value > sign * runs[best].value) best = i;

  double second = 0.0;
  bool have_second = false;
  for (int i = 0; i < total; ++i) {
    if (i == best || !runs[i].converged) continue;
    if (!have_second || sign * runs[i].value > sign * second) {
      second = runs[i].value;
      have_second = true;
    }
  }

  OptimizationResult out;
  out.value = runs[best].value;
  out.extremal = runs[best].pair;
  canonicalize_phase(out.extremal.psi);
  canonicalize_phase(out.extremal.phi);
  out.restarts_used = total;
  out.iterations = runs[best].sweeps;
  out.converged = runs[best].converged;
  out.history = std::move(runs[best].history);
  out.uncertainty_flag =
      runs[best].converged && have_second && std::abs(runs[best].value - second) > 1e-6;
  return out;
}

}  // namespace

OptimizationResult product_extrema(const BipartiteOperator& q, ExtremumMode mode,
                                   const OptimizerConfig& cfg) {
  return run_multistart(q, mode, cfg, {});
}

BlockPositivity is_block_positive(const BipartiteOperator& w, double tol,
                                  const OptimizerConfig& cfg) {
  OptimizationResult inf = product_extrema(w, ExtremumMode::Inf, cfg);
  BlockPositivity out;
  out.inf_value = inf.value;
  out.positive = inf.value >= -tol;
  if (!out.positive) out.violation = inf.extremal;
  return out;
}

MirrorResult mirror(const BipartiteOperator& w, const OptimizerConfig& cfg) {
  BlockPositivity bp = is_block_positive(w, cfg.tol, cfg);
  if (!bp.positive)
    throw std::invalid_argument("mirror: witness is not block-positive (inf = " +
                                std::to_string(bp.inf_value) + ")");
  OptimizationResult sup = product_extrema(w, ExtremumMode::Sup, cfg);
  MirrorResult out;
  out.mu = sup.value;
  ComplexMatrix m = ComplexMatrix::identity(w.dim()).scaled(out.mu);
  m -= w.mat;
  out.mirrored = BipartiteOperator(std::move(m), w.dA, w.dB);
  out.attaining = sup.extremal;
  out.uncertainty_flag = sup.uncertainty_flag;
  out.converged = sup.converged;
  BlockPositivity recert = is_block_positive(out.mirrored, cfg.tol, cfg);
  if (!recert.positive)
    throw std::logic_error("mirror: mirrored operator failed block-positivity re-certification");
  return out;
}

MirrorResult mirror(const WitnessRecord& w, const OptimizerConfig& cfg) { return mirror(w.op, cfg); }

std::pair<double, double> separability_window(const WitnessRecord& w, const OptimizerConfig& cfg) {
  MirrorResult m = mirror(w, cfg);
  return {0.0, m.mu};
}

SpanningResult spanning_property(const BipartiteOperator& w, const OptimizerConfig& cfg,
                                 double zero_tol) {
  OptimizationResult inf = product_extrema(w, ExtremumMode::Inf, cfg);
  if (inf.value < -zero_tol)
    throw std::invalid_argument("spanning_property: operator has negative product expectation");
  SpanningResult out;
  if (inf.value > zero_tol) return out;  // no product zeros at all

  const int dim = w.dim();
  std::vector<CVec> basis_joints;
  auto try_add = [&](const ProductVector& pv) {
    if (std::abs(product_expectation(w, pv)) > zero_tol) return false;
    std::vector<CVec> trial = basis_joints;
    trial.push_back(pv.joint());
    int r = gram_rank(trial, 1e-7);
    if (r > out.rank) {
      out.rank = r;
      out.zeros.push_back(pv);
      basis_joints = std::move(trial);
      return true;
    }
    return false;
  };

  auto spectrum = hermitian_eigenvalues(w.mat);
  const double penalty = 2.0 * (spectrum.back() - spectrum.front()) + 1.0;

  const int rounds = 8;
  int stale = 0;
  for (int round = 0; round < rounds && out.rank < dim && stale < 2; ++round) {
    BipartiteOperator target = w;
    if (!basis_joints.empty()) {
      ComplexMatrix deflated = w.mat;
      for (const auto& z : out.zeros) {
        CVec j = z.joint();
        deflated += outer(j, j).scaled(penalty);
      }
      target = BipartiteOperator(std::move(deflated), w.dA, w.dB);
    }
    const int starts = std::max(8, cfg.restarts / (round == 0 ? 1 : 4));
    OptimizerConfig local = cfg;
    local.include_history = false;
    std::function<ProductVector(int)> job = [&](int idx) -> ProductVector {
      Rng rng(derive_seed(cfg.seed, 0xdef1a7e0ull + 100000ull * round + idx));
      ProductVector start(rng.haar_unit_vector(w.dA), rng.haar_unit_vector(w.dB));
      return seesaw_run(target, start, ExtremumMode::Inf, local).pair;
    };
    auto candidates = parallel_map<ProductVector>(starts, job, cfg.parallel);
    int before = out.rank;
    // deterministic seeds help on highly symmetric witnesses
    if (round == 0)
      for (const auto& s : deterministic_starts(w))
        try_add(seesaw_run(w, s, ExtremumMode::Inf, local).pair);
    for (const auto& c : candidates) try_add(c);
    stale = (out.rank == before) ? stale + 1 : 0;
  }
  out.spanning = out.rank == dim;
  return out;
}

SpanningResult spanning_property(const WitnessRecord& w, const OptimizerConfig& cfg,
                                 double zero_tol) {
  return spanning_property(w.op, cfg, zero_tol);
}

}  // namespace mirrorlab
