#include "mirrorlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mirrorlab {

std::string format_double(double x) {
  char buf[40];
  // round-trip exact and readable: try increasing precision until it parses back
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) return buf;
  }
  return buf;
}

namespace {
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}
}  // namespace

std::string to_csv(const ExperimentReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(r.columns[i]);
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json_string(const ExperimentReport& r) {
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  nlohmann::json j{{"experiment", r.id},
                   {"inputs", std::move(inputs)},
                   {"columns", r.columns},
                   {"rows", std::move(rows)},
                   {"wall_clock_seconds", r.wall_clock_seconds},
                   {"toolchain", r.toolchain},
                   {"exit_code", r.exit_code}};
  return j.dump(2) + "\n";
}

std::string toolchain_fingerprint() {
#if defined(__VERSION__)
  return std::string("cxx20 ") + __VERSION__;
#else
  return "cxx20 unknown-compiler";
#endif
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace mirrorlab
