#include "mirrorlab/registry.hpp"

#include <cmath>

#include "mirrorlab/classify.hpp"
#include "mirrorlab/optimizer.hpp"

namespace mirrorlab {

namespace {

double get_or(const std::map<std::string, double>& m, const std::string& k, double fallback) {
  auto it = m.find(k);
  return it == m.end() ? fallback : it->second;
}

double require(const std::map<std::string, double>& m, const std::string& k) {
  auto it = m.find(k);
  if (it == m.end()) throw std::invalid_argument("missing family parameter: " + k);
  return it->second;
}

CVec default_vector_state() {
  CVec v(9, cplx{0.0});
  v[0] = std::sqrt(0.6);
  v[4] = std::sqrt(0.3);
  v[8] = std::sqrt(0.1);
  return v;
}

}  // namespace

std::vector<std::string> family_ids() {
  return {"reduction",   "vector",      "gamma",           "abc",      "abc-phi",
          "abcd-class1", "abcd-class2", "abcd-class1-opt", "breuer-hall",
          "tau",         "hakye",       "hakye-c1",        "hakye-c2", "upb-tiles",
          "edge"};
}

WitnessRecord make_family(const FamilyRequest& req, const OptimizerConfig& cfg) {
  const auto& p = req.params;
  if (req.id == "reduction") return reduction_witness(int(get_or(p, "n", 3)));
  if (req.id == "vector") {
    // canonical entangled vector; callers with a concrete vector use
    // vector_witness directly
    return vector_witness(default_vector_state(), 3, 3);
  }
  if (req.id == "gamma") return gamma_witness(require(p, "gamma"));
  if (req.id == "abc") return w_abc(require(p, "a"), require(p, "b"), require(p, "c"));
  if (req.id == "abc-phi") return w_abc_phi(require(p, "phi"));
  if (req.id == "abcd-class1") return class1_theta(require(p, "theta"));
  if (req.id == "abcd-class2") return class2_theta(require(p, "theta"));
  if (req.id == "abcd-class1-opt") return optimized_class1(require(p, "theta"));
  if (req.id == "breuer-hall") return breuer_hall_witness(int(get_or(p, "d", 4)));
  if (req.id == "tau") return tau_witness(int(require(p, "n")), int(require(p, "k")));
  if (req.id == "hakye")
    return hakye_witness(require(p, "a"), require(p, "b"), require(p, "c"), require(p, "theta"));
  if (req.id == "hakye-c1") {
    // default theta puts p_theta at 4/3
    double theta = get_or(p, "theta", std::acos(2.0 / 3.0));
    return hakye_class1(theta);
  }
  if (req.id == "hakye-c2") {
    double theta = get_or(p, "theta", std::acos((1.0 + 1.0 / std::sqrt(2.0)) / 2.0));
    HaKyeBranch branch = get_or(p, "bzero", 0.0) != 0.0 ? HaKyeBranch::BZero : HaKyeBranch::CZero;
    return hakye_class2(theta, branch);
  }
  if (req.id == "upb-tiles") {
    auto tiles = tiles_upb();
    double eps = get_or(p, "eps_minus", -1.0);
    if (eps < 0.0) {
      ComplexMatrix q(9, 9);
      for (const auto& v : tiles) {
        CVec j = v.joint();
        q += outer(j, j);
      }
      eps = product_extrema(BipartiteOperator(std::move(q), 3, 3), ExtremumMode::Inf, cfg).value;
    }
    WitnessRecord rec = upb_witness(tiles, eps);
    rec.family = "upb-tiles";
    return rec;
  }
  if (req.id == "edge") {
    // default instance: P = Q = projector onto the Tiles span; its witness
    // detects the Tiles bound-entangled state
    auto tiles = tiles_upb();
    ComplexMatrix q(9, 9);
    for (const auto& v : tiles) {
      CVec j = v.joint();
      q += outer(j, j);
    }
    BipartiteOperator proj(q, 3, 3);
    EdgeWitnessPair pair = edge_witness(proj, proj, cfg);
    return pair.witness;
  }
  throw std::invalid_argument("unknown family id: " + req.id);
}

std::optional<double> expected_mu(const FamilyRequest& req) {
  const auto& p = req.params;
  if (req.id == "reduction") return 1.0;
  if (req.id == "abc-phi") return expected_mu_abc(require(p, "phi"));
  if (req.id == "abcd-class2") {
    double theta = require(p, "theta");
    if (theta > 0.0 && theta < M_PI) return expected_mu_class2(theta);
    return std::nullopt;
  }
  if (req.id == "gamma") {
    double g = require(p, "gamma");
    if (g >= 0.7) return (g + 1.0) / 2.0;  // no closed form is claimed below 0.7
    return std::nullopt;
  }
  if (req.id == "tau") return expected_mu_tau(int(require(p, "n")), int(require(p, "k")));
  if (req.id == "breuer-hall") return 1.0;
  if (req.id == "upb-tiles") {
    auto it = p.find("eps_minus");
    if (it != p.end() && it->second >= 0.0) return 1.0 - it->second;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::string> sweep_parameter(const std::string& id) {
  if (id == "abc-phi") return "phi";
  if (id == "abcd-class1" || id == "abcd-class2" || id == "abcd-class1-opt") return "theta";
  if (id == "gamma") return "gamma";
  if (id == "hakye-c1" || id == "hakye-c2") return "theta";
  return std::nullopt;
}

std::vector<FamilyRequest> registry_defaults() {
  return {
      {"reduction", {{"n", 3}}},
      {"vector", {}},
      {"gamma", {{"gamma", 0.8}}},
      {"abc", {{"a", 1}, {"b", 1}, {"c", 0}}},
      {"abc-phi", {{"phi", M_PI / 2}}},
      {"abcd-class1", {{"theta", 0.0}}},
      {"abcd-class2", {{"theta", 2.0}}},
      {"abcd-class1-opt", {{"theta", 0.8}}},
      {"breuer-hall", {{"d", 4}}},
      {"tau", {{"n", 4}, {"k", 1}}},
      {"hakye-c1", {}},
      {"hakye-c2", {}},
      {"upb-tiles", {}},
      {"edge", {}},
  };
}

}  // namespace mirrorlab
