#include "mirrorlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "mirrorlab/rng.hpp"
#include "mirrorlab/states.hpp"

namespace mirrorlab {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotBlockPositive: return "NotBlockPositive";
    case Verdict::PositiveSemidefinite: return "PositiveSemidefinite";
    case Verdict::DecomposableEW: return "DecomposableEW";
    case Verdict::NonDecomposableEW: return "NonDecomposableEW";
    case Verdict::BlockPositiveUndetermined: return "BlockPositiveUndetermined";
  }
  return "?";
}

bool is_psd(const ComplexMatrix& op, double tol) { return min_eigenvalue(op) >= -tol; }
bool is_psd(const BipartiteOperator& op, double tol) { return is_psd(op.mat, tol); }

bool is_ppt(const BipartiteOperator& rho, double tol) {
  if (!rho.hermitian) throw std::invalid_argument("is_ppt: state must be Hermitian");
  if (min_eigenvalue(rho.mat) < -tol) return false;
  return min_eigenvalue(partial_transpose(rho, Subsystem::B).mat) >= -tol;
}

// ---------------------------------------------------------------------------
// Dykstra decomposition search
// ---------------------------------------------------------------------------

namespace {

ComplexMatrix pt_b(const ComplexMatrix& m, int dA, int dB) {
  return partial_transpose(BipartiteOperator(m, dA, dB), Subsystem::B).mat;
}

DecompositionCertificate make_decomposition_cert(const ComplexMatrix& a, const ComplexMatrix& b,
                                                 double res, int iterations) {
  DecompositionCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.reconstruction_error = res;
  cert.min_eig_a = min_eigenvalue(a, 1e-6);
  cert.min_eig_b = min_eigenvalue(b, 1e-6);
  cert.iterations = iterations;
  return cert;
}

std::optional<DecompositionCertificate> dykstra_phase(const BipartiteOperator& w,
                                                      const DecomposeConfig& cfg) {
  const int d = w.dim();
  ComplexMatrix a = w.mat.scaled(0.5);
  ComplexMatrix b = pt_b(w.mat, w.dA, w.dB).scaled(0.5);
  ComplexMatrix corr_a = ComplexMatrix::zero(d, d);
  ComplexMatrix corr_b = ComplexMatrix::zero(d, d);
  std::deque<double> trail;
  for (int it = 0; it < cfg.max_iter; ++it) {
    // affine projection: shift both by half the residual (B-half transposed back)
    ComplexMatrix residual = w.mat - a - pt_b(b, w.dA, w.dB);
    ComplexMatrix a1 = a + residual.scaled(0.5);
    ComplexMatrix b1 = b + pt_b(residual.scaled(0.5), w.dA, w.dB);
    // Dykstra-corrected projection onto the PSD cones
    ComplexMatrix ya = a1 + corr_a;
    ComplexMatrix yb = b1 + corr_b;
    a = psd_projection(ya);
    b = psd_projection(yb);
    corr_a = ya - a;
    corr_b = yb - b;

    double res = max_abs_diff(w.mat, a + pt_b(b, w.dA, w.dB));
    if (res <= cfg.tol) return make_decomposition_cert(a, b, res, it + 1);
    trail.push_back(res);
    if (static_cast<int>(trail.size()) > cfg.stall_window) {
      double old = trail.front();
      trail.pop_front();
      if (res > cfg.stall_ratio * old && res > cfg.stall_margin * cfg.tol) return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<DecompositionCertificate> douglas_rachford_phase(const BipartiteOperator& w,
                                                               const DecomposeConfig& cfg) {
  const int dA = w.dA, dB = w.dB;
  auto proj_affine = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = w.mat - a - pt_b(b, dA, dB);
    return std::make_pair(a + r.scaled(0.5), b + pt_b(r.scaled(0.5), dA, dB));
  };
  ComplexMatrix za = w.mat.scaled(0.5);
  ComplexMatrix zb = pt_b(w.mat, dA, dB).scaled(0.5);
  std::deque<double> trail;
  for (int it = 0; it < cfg.dr_max_iter; ++it) {
    auto [pa, pb] = proj_affine(za, zb);
    ComplexMatrix ra = psd_projection(pa.scaled(2.0) - za);
    ComplexMatrix rb = psd_projection(pb.scaled(2.0) - zb);
    za += ra - pa;
    zb += rb - pb;
    if ((it + 1) % cfg.dr_check_every != 0) continue;
    // candidate: cone-project the shadow point, re-center on the affine set,
    // clip once more, then measure the honest residual of the returned pair
    auto [ca, cb] = proj_affine(psd_projection(za), psd_projection(zb));
    ComplexMatrix a2 = psd_projection(ca);
    ComplexMatrix b2 = psd_projection(cb);
    double res = max_abs_diff(w.mat, a2 + pt_b(b2, dA, dB));
    if (res <= cfg.tol) return make_decomposition_cert(a2, b2, res, cfg.max_iter + it + 1);
    trail.push_back(res);
    if (static_cast<int>(trail.size()) > 12) {
      double old = trail.front();
      trail.pop_front();
      if (res > cfg.stall_ratio * old && res > cfg.stall_margin * cfg.tol) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DecompositionCertificate> decompose_dnd(const BipartiteOperator& w,
                                                      const DecomposeConfig& cfg) {
  if (!w.hermitian) throw std::invalid_argument("decompose_dnd: operator must be Hermitian");
  if (auto cert = dykstra_phase(w, cfg)) return cert;
  if (cfg.dr_max_iter > 0) return douglas_rachford_phase(w, cfg);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closed-form mirror decompositions
// ---------------------------------------------------------------------------

namespace {

ComplexMatrix level_diagonal(int n, const std::vector<double>& coeff_by_level) {
  ComplexMatrix m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      double c = coeff_by_level[l];
      if (c == 0.0) continue;
      int idx = i * n + (i + l) % n;
      m(idx, idx) += c;
    }
  return m;
}

// sum over i != j of coef(i, j) |ij><ji|
ComplexMatrix flip_part(int n, const std::function<double(int, int)>& coef) {
  ComplexMatrix m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i * n + j, j * n + i) = coef(i, j);
    }
  return m;
}

double param_at(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("explicit_mirror_decomposition: missing parameter " + key);
  return it->second;
}

BipartiteOperator mirror_of(const WitnessRecord& w, double mu) {
  ComplexMatrix m = ComplexMatrix::identity(w.op.dim()).scaled(mu);
  m -= w.op.mat;
  return BipartiteOperator(std::move(m), w.op.dA, w.op.dB);
}

}  // namespace

ExplicitDecomposition explicit_mirror_decomposition(const std::string& family,
                                                    const std::map<std::string, double>& params) {
  ExplicitDecomposition out;
  if (family == "abc-phi") {
    double phi = param_at(params, "phi");
    bool valid = (phi >= 0.0 && phi <= 2.0 * M_PI / 3.0 + 1e-12) ||
                 (phi >= 4.0 * M_PI / 3.0 - 1e-12 && phi < 2.0 * M_PI);
    if (!valid)
      throw std::invalid_argument("abc-phi decomposition valid on [0,2pi/3] u [4pi/3,2pi) only");
    AbcParams p = abc_phi_params(phi);
    out.target = mirror_of(w_abc_phi(phi), 4.0 / 3.0);
    out.a = max_entangled_projector(3).mat.scaled(3.0 * (4.0 / 3.0 - p.a));
    out.b = level_diagonal(3, {0.0, 4.0 / 3.0 - p.b, 4.0 / 3.0 - p.c}) +
            flip_part(3, [&](int, int) { return p.a - 1.0 / 3.0; });
    return out;
  }
  if (family == "abcd-class2") {
    double theta = param_at(params, "theta");
    if (!(theta > 0.0 && theta < M_PI / 2.0))
      throw std::invalid_argument("abcd-class2 decomposition valid on (0, pi/2) only");
    AbcdParams p = class2_params(theta);
    out.target = mirror_of(class2_theta(theta), 1.5);
    out.a = max_entangled_projector(4).mat.scaled(4.0 * (1.5 - p.a));
    out.b = level_diagonal(4, {0.0, 1.5 - p.b, 1.5 - p.c, 1.5 - p.d}) +
            flip_part(4, [&](int, int) { return p.a - 0.5; });
    return out;
  }
  if (family == "abcd-class1-opt") {
    double theta = param_at(params, "theta");
    if (!(theta >= 0.0 && theta <= M_PI) || std::abs(theta - M_PI / 2.0) < 1e-12)
      throw std::invalid_argument("abcd-class1-opt decomposition valid on [0,pi] \\ {pi/2}");
    AbcdParams p = class1_params(theta);
    out.target = mirror_of(optimized_class1(theta), 1.5);
    out.a = max_entangled_projector(4).mat.scaled(4.0 * (2.0 - p.a));
    out.b = level_diagonal(4, {0.0, 1.5 - p.b, 1.5 - p.c, 1.5 - p.d}) +
            flip_part(4, [&](int i, int j) {
              return ((i - j + 4) % 4 == 2) ? p.a - 0.5 : p.a - 1.5;
            });
    return out;
  }
  if (family == "tau") {
    int n = static_cast<int>(param_at(params, "n"));
    int k = static_cast<int>(param_at(params, "k"));
    if (k == 1 && n >= 4) {
      out.target = mirror_of(tau_witness(n, 1), double(n - 2));
      out.a = ComplexMatrix::zero(n * n, n * n);
      std::vector<double> levels(n, double(n - 2));
      levels[0] = 0.0;
      levels[1] = double(n - 3);
      out.b = level_diagonal(n, levels) + flip_part(n, [](int, int) { return 1.0; });
      return out;
    }
    if (k == n - 2 && n >= 5 && n % 2 == 1) {
      out.target = mirror_of(tau_witness(n, k), 1.5);
      out.a = max_entangled_projector(n).mat.scaled(0.5 * n);
      std::vector<double> levels(n, 0.5);
      levels[0] = 0.0;
      levels[n - 1] = 1.5;
      out.b = level_diagonal(n, levels) + flip_part(n, [](int, int) { return 0.5; });
      return out;
    }
    throw std::invalid_argument("tau decomposition defined for k=1, n>=4 or k=n-2, odd n>=5");
  }
  throw std::invalid_argument("explicit_mirror_decomposition: unknown family " + family);
}

// ---------------------------------------------------------------------------
// PPT detector search
// ---------------------------------------------------------------------------

namespace {

BipartiteOperator trace_normalized(const BipartiteOperator& op) {
  double tr = op.mat.trace().real();
  if (tr <= 0.0) throw std::invalid_argument("state trace must be positive");
  return BipartiteOperator(op.mat.scaled(1.0 / tr), op.dA, op.dB);
}

std::optional<DetectorCertificate> accept_detector(const BipartiteOperator& w,
                                                   const BipartiteOperator& rho_raw,
                                                   const std::string& strategy, double tol) {
  BipartiteOperator rho = trace_normalized(rho_raw);
  double pairing = trace_pairing(w, rho);
  if (pairing >= -std::max(tol, 1e-8)) return std::nullopt;
  if (!is_ppt(rho, 1e-9)) return std::nullopt;
  return DetectorCertificate{rho, pairing, strategy};
}

// circulant-diagonal PPT family on C^n (x) C^n: core with diagonal x and +1
// off levels |ii><jj|, level weights alpha_l with alpha_l * alpha_{n-l} = 1
void circulant_candidates(int n, const std::function<bool(const BipartiteOperator&)>& visit) {
  static const double kPair[] = {0.02, 0.1, 0.4, 1.0, 2.5, 10.0, 50.0};
  static const double kCore[] = {1.0, 1.5, 2.5};
  const int pairs = (n - 1) / 2;
  std::vector<int> choice(pairs, 0);
  const int options = static_cast<int>(sizeof(kPair) / sizeof(double));
  for (;;) {
    for (double x : kCore) {
      std::vector<double> levels(n, 1.0);
      levels[0] = x;
      for (int p = 0; p < pairs; ++p) {
        levels[p + 1] = kPair[choice[p]];
        levels[n - 1 - p] = 1.0 / kPair[choice[p]];
      }
      ComplexMatrix m(n * n, n * n);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          int idx = i * n + (i + l) % n;
          m(idx, idx) = levels[l];
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) m(i * n + i, j * n + j) = 1.0;
      if (visit(BipartiteOperator(std::move(m), n, n))) return;
    }
    int p = 0;
    while (p < pairs && ++choice[p] == options) choice[p++] = 0;
    if (p == pairs) return;
  }
}

std::optional<DetectorCertificate> parametric_search(const BipartiteOperator& w,
                                                     const DetectorConfig& cfg) {
  std::optional<DetectorCertificate> found;
  if (w.dA != w.dB) return found;
  const int n = w.dA;

  if (n == 4) {
    for (double x : {2.0, 1.5, 2.5, 3.0, 3.5, 1.2, 3.9, 1.05, 0.5, 6.0}) {
      found = accept_detector(w, rho_x_c4(x).rho, "parametric:rho-x-c4", cfg.tol);
      if (found) return found;
    }
  }
  circulant_candidates(n, [&](const BipartiteOperator& rho) {
    found = accept_detector(w, rho, "parametric:circulant", cfg.tol);
    return found.has_value();
  });
  if (found) return found;
  if (n == 3) {
    for (char kind : {'x', 'y'}) {
      for (int kt = 0; kt <= 24; ++kt) {
        double theta = -M_PI + kt * (M_PI / 12.0);
        double thr = hakye_ppt_threshold(kind, theta);
        for (double t : {thr + 1e-6, thr * 1.05, thr * 1.3, thr * 2.0, thr * 4.0}) {
          StateSample s = hakye_rho(kind, t, theta);
          found = accept_detector(w, s.rho, std::string("parametric:hakye-rho-") + kind, cfg.tol);
          if (found) return found;
        }
      }
    }
    auto bells = sample_ppt_bell_diagonal(cfg.bell_samples, cfg.seed);
    for (const auto& s : bells) {
      found = accept_detector(w, s.rho, "parametric:bell-diagonal", cfg.tol);
      if (found) return found;
    }
  }
  return found;
}

std::optional<DetectorCertificate> random_search(const BipartiteOperator& w,
                                                 const DetectorConfig& cfg) {
  const int d = w.dim();
  for (int attempt = 0; attempt < cfg.random_budget; ++attempt) {
    Rng rng(derive_seed(cfg.seed, 0x715a23c0ull + attempt));
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    ComplexMatrix rho = g * g.adjoint();
    BipartiteOperator op(rho.scaled(1.0 / rho.trace().real()), w.dA, w.dB);
    if (min_eigenvalue(partial_transpose(op, Subsystem::B).mat, 1e-8) < -1e-12) continue;
    auto found = accept_detector(w, op, "random:wishart", cfg.tol);
    if (found) return found;
  }
  return std::nullopt;
}

// cyclic projection onto {rho >= 0} n {rho^Gamma >= 0} n {tr rho = 1}
BipartiteOperator project_ppt(BipartiteOperator rho, int iters) {
  const int d = rho.dim();
  for (int it = 0; it < iters; ++it) {
    ComplexMatrix m = psd_projection(rho.mat);
    BipartiteOperator g = partial_transpose(BipartiteOperator(m, rho.dA, rho.dB), Subsystem::B);
    ComplexMatrix mg = psd_projection(g.mat);
    m = partial_transpose(BipartiteOperator(mg, rho.dA, rho.dB), Subsystem::B).mat;
    double tr = m.trace().real();
    ComplexMatrix shift = ComplexMatrix::identity(d).scaled((1.0 - tr) / d);
    rho = BipartiteOperator(m + shift, rho.dA, rho.dB);
  }
  return rho;
}

std::optional<DetectorCertificate> polish_candidate(const BipartiteOperator& w,
                                                    BipartiteOperator rho,
                                                    const std::string& strategy, double tol) {
  rho = project_ppt(std::move(rho), 200);
  const int d = rho.dim();
  for (double lambda : {0.0, 1e-9, 1e-7, 1e-5, 1e-3}) {
    ComplexMatrix mixed = rho.mat.scaled(1.0 - lambda);
    mixed += ComplexMatrix::identity(d).scaled(lambda / d);
    auto cand = accept_detector(w, BipartiteOperator(mixed, rho.dA, rho.dB), strategy, tol);
    if (cand) return cand;
  }
  return std::nullopt;
}

std::optional<DetectorCertificate> descent_search(const BipartiteOperator& w,
                                                  const DetectorConfig& cfg) {
  const int d = w.dim();
  const double scale = std::max(w.mat.max_abs(), 1e-12);
  for (int start = 0; start < cfg.descent_starts; ++start) {
    BipartiteOperator rho = BipartiteOperator::identity(w.dA, w.dB);
    rho = BipartiteOperator(rho.mat.scaled(1.0 / d), w.dA, w.dB);
    if (start > 0) {
      Rng rng(derive_seed(cfg.seed, 0xdecc0000ull + start));
      ComplexMatrix g(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
      ComplexMatrix wish = g * g.adjoint();
      wish = wish.scaled(1.0 / wish.trace().real());
      // smallest mix toward 1/d that clears the partial-transpose cone
      BipartiteOperator op(wish, w.dA, w.dB);
      double m = min_eigenvalue(partial_transpose(op, Subsystem::B).mat, 1e-8);
      double lambda = m < 0.0 ? 1.05 * (-m) / (1.0 / d - m) : 0.0;
      ComplexMatrix mixed = wish.scaled(1.0 - lambda);
      mixed += ComplexMatrix::identity(d).scaled(lambda / d);
      rho = BipartiteOperator(std::move(mixed), w.dA, w.dB);
    }
    for (int it = 0; it < cfg.descent_iters; ++it) {
      double eta = 0.25 / scale / (1.0 + it / 60.0);
      ComplexMatrix stepped = rho.mat - w.mat.scaled(eta);
      rho = project_ppt(BipartiteOperator(std::move(stepped), w.dA, w.dB), cfg.projection_iters);
      if (it % 25 == 24) {
        double pairing = trace_pairing(w, trace_normalized(rho));
        if (pairing < -50.0 * cfg.tol) {
          auto cand = polish_candidate(w, rho, "descent:projected-gradient", cfg.tol);
          if (cand) return cand;
        }
      }
    }
    auto cand = polish_candidate(w, rho, "descent:projected-gradient", cfg.tol);
    if (cand) return cand;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DetectorCertificate> find_ppt_detector(const BipartiteOperator& w,
                                                     const DetectorConfig& cfg) {
  if (!w.hermitian) throw std::invalid_argument("find_ppt_detector: operator must be Hermitian");
  if (cfg.parametric) {
    auto found = parametric_search(w, cfg);
    if (found) return found;
  }
  if (cfg.random) {
    auto found = random_search(w, cfg);
    if (found) return found;
  }
  if (cfg.descent) {
    auto found = descent_search(w, cfg);
    if (found) return found;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

Classification classify_witness(const BipartiteOperator& w, const ClassifyConfig& cfg) {
  Classification out;
  BlockPositivity bp = is_block_positive(w, cfg.block_tol, cfg.optimizer);
  if (!bp.positive) {
    out.verdict = Verdict::NotBlockPositive;
    out.certificate = ViolationCertificate{*bp.violation, bp.inf_value};
    return out;
  }
  auto spectrum = hermitian_eigenvalues(w.mat);
  if (spectrum.front() >= -cfg.psd_tol) {
    out.verdict = Verdict::PositiveSemidefinite;
    out.certificate = SpectrumCertificate{spectrum};
    return out;
  }
  if (auto dec = decompose_dnd(w, cfg.decompose)) {
    out.verdict = Verdict::DecomposableEW;
    out.certificate = *dec;
    return out;
  }
  DetectorConfig det = cfg.detector;
  det.seed = cfg.optimizer.seed;
  if (auto hit = find_ppt_detector(w, det)) {
    out.verdict = Verdict::NonDecomposableEW;
    out.certificate = *hit;
    return out;
  }
  out.verdict = Verdict::BlockPositiveUndetermined;
  return out;
}

Classification classify_witness(const WitnessRecord& w, const ClassifyConfig& cfg) {
  return classify_witness(w.op, cfg);
}

bool certificate_valid(const BipartiteOperator& w, const Classification& c, double tol) {
  switch (c.verdict) {
    case Verdict::PositiveSemidefinite:
      return min_eigenvalue(w.mat) >= -tol;
    case Verdict::DecomposableEW: {
      const auto* cert = std::get_if<DecompositionCertificate>(&c.certificate);
      if (!cert) return false;
      BipartiteOperator b(cert->b, w.dA, w.dB);
      double res = max_abs_diff(w.mat, cert->a + partial_transpose(b, Subsystem::B).mat);
      return res <= tol && min_eigenvalue(cert->a, 1e-6) >= -tol &&
             min_eigenvalue(cert->b, 1e-6) >= -tol;
    }
    case Verdict::NonDecomposableEW: {
      const auto* cert = std::get_if<DetectorCertificate>(&c.certificate);
      if (!cert) return false;
      return is_ppt(cert->state, 1e-9) && trace_pairing(w, cert->state) <= -1e-8;
    }
    case Verdict::NotBlockPositive: {
      const auto* cert = std::get_if<ViolationCertificate>(&c.certificate);
      if (!cert) return false;
      return product_expectation(w, cert->vec) < 0.0;
    }
    case Verdict::BlockPositiveUndetermined:
      return true;
  }
  return false;
}

}  // namespace mirrorlab
