#pragma once

#include <string>

#include <json.hpp>

#include "mirrorlab/classify.hpp"
#include "mirrorlab/families.hpp"
#include "mirrorlab/states.hpp"

namespace mirrorlab {

using json = nlohmann::json;

// Matrix schema: {"rows":n,"cols":m,"entries":[[re,im],...]} row-major;
// bipartite operators add "dA","dB".
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json to_json(const BipartiteOperator& op);
BipartiteOperator bipartite_from_json(const json& j);

json to_json(const WitnessRecord& w);
WitnessRecord witness_from_json(const json& j);

json to_json(const StateSample& s);
StateSample state_from_json(const json& j);

json to_json(const Classification& c);

// JSON-lines corpus files, one StateSample per line.
void write_corpus(const std::string& path, const std::vector<StateSample>& samples);
std::vector<StateSample> read_corpus(const std::string& path);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace mirrorlab
