#pragma once

#include <optional>

#include "mirrorlab/classify.hpp"
#include "mirrorlab/registry.hpp"
#include "mirrorlab/report.hpp"
#include "mirrorlab/states.hpp"

namespace mirrorlab {

// Exit codes shared by the CLI: 0 ok, 1 usage error, 2 fixture mismatch,
// 3 numerical non-convergence.
enum ExitCode : int { kOk = 0, kUsage = 1, kFixtureMismatch = 2, kNonConvergence = 3 };

struct CommandContext {
  OptimizerConfig optimizer;
  ClassifyConfig classify;
  std::optional<std::string> out_path;
  std::string format = "csv";  // csv | json
};

// Witness input: a JSON file (matrix schema) or a registry family.
struct WitnessSource {
  std::optional<std::string> file;
  std::optional<FamilyRequest> family;
};
std::pair<BipartiteOperator, std::string> resolve_witness(const WitnessSource& src,
                                                          const CommandContext& ctx);

// Corpus input: a JSON-lines file or a built-in generator
// ("bell-ppt" | "wishart-ppt").
struct CorpusSource {
  std::optional<std::string> file;
  std::optional<std::string> generator;
  int n = 1000;
  int dA = 3, dB = 3;
  std::uint64_t seed = 0;
};
std::vector<StateSample> resolve_corpus(const CorpusSource& src);

struct SweepGrid {
  double from = 0.0;
  double to = 1.0;
  int points = 0;
  bool exclusive_end = false;
  double at(int i) const;
};

ExperimentReport cmd_family(const FamilyRequest& req, const CommandContext& ctx);
ExperimentReport cmd_mirror(const FamilyRequest& req, const CommandContext& ctx);
ExperimentReport cmd_classify(const WitnessSource& src, const CommandContext& ctx);
ExperimentReport cmd_detect(const WitnessSource& src, const CommandContext& ctx);
ExperimentReport cmd_sweep(const std::string& family_id, const std::string& param,
                           const SweepGrid& grid, bool with_verdicts, const CommandContext& ctx);
ExperimentReport cmd_table1(const CommandContext& ctx);
ExperimentReport cmd_screen(const WitnessSource& witness, const CorpusSource& corpus,
                            const CommandContext& ctx);
ExperimentReport cmd_spa(const FamilyRequest& req, const CommandContext& ctx);

// Serialize per ctx.format and write to ctx.out_path or stdout.
void emit_report(const ExperimentReport& report, const CommandContext& ctx);

// Short labels used in tables: PO / D / ND / U / NBP.
std::string verdict_label(Verdict v);

}  // namespace mirrorlab
