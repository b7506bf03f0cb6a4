#include "mirrorlab/json_io.hpp"

#include <fstream>

namespace mirrorlab {

json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const auto& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument("matrix json: entries.length != rows*cols");
  ComplexMatrix m(rows, cols);
  for (int k = 0; k < rows * cols; ++k) {
    const auto& e = entries[k];
    m.entries()[k] = cplx(e.at(0).get<double>(), e.at(1).get<double>());
  }
  if (!m.all_finite()) throw std::invalid_argument("matrix json: non-finite entry");
  return m;
}

json to_json(const BipartiteOperator& op) {
  json j = to_json(op.mat);
  j["dA"] = op.dA;
  j["dB"] = op.dB;
  return j;
}

BipartiteOperator bipartite_from_json(const json& j) {
  return BipartiteOperator(matrix_from_json(j), j.at("dA").get<int>(), j.at("dB").get<int>());
}

json to_json(const WitnessRecord& w) {
  return json{{"family", w.family},
              {"params", w.params},
              {"provenance", w.provenance},
              {"op", to_json(w.op)}};
}

WitnessRecord witness_from_json(const json& j) {
  WitnessRecord w;
  w.op = bipartite_from_json(j.at("op"));
  w.family = j.value("family", "unknown");
  w.provenance = j.value("provenance", "file");
  if (j.contains("params"))
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
      w.params[it.key()] = it.value().get<double>();
  return w;
}

json to_json(const StateSample& s) {
  json j{{"family", s.family}, {"params", s.params}, {"normalized", s.normalized},
         {"rho", to_json(s.rho)}};
  if (s.ppt) j["ppt"] = *s.ppt;
  if (s.realignment) j["realignment"] = *s.realignment;
  return j;
}

StateSample state_from_json(const json& j) {
  StateSample s;
  s.rho = bipartite_from_json(j.at("rho"));
  s.family = j.value("family", "unknown");
  s.normalized = j.value("normalized", true);
  if (j.contains("params"))
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
      s.params[it.key()] = it.value().get<double>();
  if (j.contains("ppt")) s.ppt = j.at("ppt").get<bool>();
  if (j.contains("realignment")) s.realignment = j.at("realignment").get<double>();
  return s;
}

namespace {
json certificate_to_json(const Certificate& c) {
  if (const auto* spec = std::get_if<SpectrumCertificate>(&c))
    return json{{"kind", "spectrum"}, {"eigenvalues", spec->eigenvalues}};
  if (const auto* dec = std::get_if<DecompositionCertificate>(&c))
    return json{{"kind", "decomposition"},
                {"a", to_json(dec->a)},
                {"b", to_json(dec->b)},
                {"reconstruction_error", dec->reconstruction_error},
                {"min_eig_a", dec->min_eig_a},
                {"min_eig_b", dec->min_eig_b},
                {"iterations", dec->iterations}};
  if (const auto* det = std::get_if<DetectorCertificate>(&c))
    return json{{"kind", "detector"},
                {"state", to_json(det->state)},
                {"pairing", det->pairing},
                {"strategy", det->strategy}};
  if (const auto* v = std::get_if<ViolationCertificate>(&c)) {
    json psi = json::array(), phi = json::array();
    for (const auto& z : v->vec.psi) psi.push_back({z.real(), z.imag()});
    for (const auto& z : v->vec.phi) phi.push_back({z.real(), z.imag()});
    return json{{"kind", "violation"}, {"psi", psi}, {"phi", phi}, {"value", v->value}};
  }
  return json{{"kind", "none"}};
}
}  // namespace

json to_json(const Classification& c) {
  return json{{"verdict", verdict_name(c.verdict)}, {"certificate", certificate_to_json(c.certificate)}};
}

void write_corpus(const std::string& path, const std::vector<StateSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& s : samples) out << to_json(s).dump() << '\n';
}

std::vector<StateSample> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<StateSample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(state_from_json(json::parse(line)));
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mirrorlab
