// mirrorlab: witness families, mirrored operators, and classification
// reports from the command line. Emits CSV or JSON; see README for the
// subcommand catalog.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "mirrorlab/commands.hpp"

namespace {

using namespace mirrorlab;

struct ParamFlags {
  double phi = std::nan("");
  double theta = std::nan("");
  double gamma = std::nan("");
  double a = std::nan(""), b = std::nan(""), c = std::nan(""), d = std::nan("");
  double x = std::nan(""), y = std::nan("");
  int n = -1, k = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--phi", phi, "family angle phi (radians)");
    cmd->add_option("--theta", theta, "family angle theta (radians)");
    cmd->add_option("--gamma", gamma, "gamma family parameter");
    cmd->add_option("--a", a, "diagonal coefficient a");
    cmd->add_option("--b", b, "diagonal coefficient b");
    cmd->add_option("--c", c, "diagonal coefficient c");
    cmd->add_option("--d", d, "diagonal coefficient d (C^4 family)");
    cmd->add_option("--x", x, "state family parameter x");
    cmd->add_option("--y", y, "state family parameter y");
    cmd->add_option("--n", n, "dimension parameter n");
    cmd->add_option("--k", k, "tau family index k");
  }

  std::map<std::string, double> collect() const {
    std::map<std::string, double> out;
    auto put = [&](const char* key, double v) {
      if (!std::isnan(v)) out[key] = v;
    };
    put("phi", phi);
    put("theta", theta);
    put("gamma", gamma);
    put("a", a);
    put("b", b);
    put("c", c);
    put("d", d);
    put("x", x);
    put("y", y);
    if (n >= 0) out["n"] = n;
    if (k >= 0) out["k"] = k;
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mirrorlab: entanglement-witness mirroring and classification"};
  app.require_subcommand(1);

  CommandContext ctx;
  if (const char* env = std::getenv("MIRRORLAB_SEED")) ctx.optimizer.seed = std::strtoull(env, nullptr, 10);
  std::string out_path, format = "csv";
  app.add_option("--seed", ctx.optimizer.seed, "master RNG seed (env MIRRORLAB_SEED)");
  app.add_option("--restarts", ctx.optimizer.restarts, "see-saw random restarts");
  app.add_option("--max-sweeps", ctx.optimizer.max_sweeps, "see-saw sweep cap per start");
  app.add_option("--tol", ctx.optimizer.tol, "block-positivity tolerance");
  app.add_option("--out", out_path, "write the report to this path");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  std::string family_id, witness_file, corpus_file, corpus_gen, sweep_param = "phi";
  ParamFlags params;
  SweepGrid grid;
  bool with_verdicts = false;
  CorpusSource corpus;

  auto* fam = app.add_subcommand("family", "construct a witness family and emit it");
  fam->add_option("--family", family_id, "registry id")->required();
  params.attach(fam);

  auto* mir = app.add_subcommand("mirror", "mirror a witness and classify the pair");
  mir->add_option("--family", family_id, "registry id")->required();
  params.attach(mir);

  auto* cls = app.add_subcommand("classify", "classify a witness");
  cls->add_option("--family", family_id, "registry id");
  cls->add_option("--witness", witness_file, "witness JSON file");
  params.attach(cls);

  auto* det = app.add_subcommand("detect", "search for a PPT detector state");
  det->add_option("--family", family_id, "registry id");
  det->add_option("--witness", witness_file, "witness JSON file");
  params.attach(det);

  auto* swp = app.add_subcommand("sweep", "sweep a family parameter, reporting mu");
  swp->add_option("--family", family_id, "registry id")->required();
  swp->add_option("--param", sweep_param, "parameter to sweep");
  swp->add_option("--from", grid.from, "grid start")->required();
  swp->add_option("--to", grid.to, "grid end")->required();
  swp->add_option("--points", grid.points, "number of grid points")->required();
  swp->add_flag("--exclusive-end", grid.exclusive_end, "exclude the grid end point");
  swp->add_flag("--verdicts", with_verdicts, "classify W and W_M at every point (slow)");

  auto* tab = app.add_subcommand("table1", "reproduce the C^3 x C^3 phi-family table");

  auto* scr = app.add_subcommand("screen", "pair a witness against a state corpus");
  scr->add_option("--family", family_id, "registry id of the witness");
  scr->add_option("--witness", witness_file, "witness JSON file");
  scr->add_option("--corpus", corpus_file, "JSON-lines corpus file");
  scr->add_option("--corpus-generator", corpus_gen, "bell-ppt | wishart-ppt");
  scr->add_option("--corpus-n", corpus.n, "generator sample count");
  scr->add_option("--corpus-seed", corpus.seed, "generator seed");
  params.attach(scr);

  auto* spa_cmd = app.add_subcommand("spa", "structural physical approximation of a family");
  spa_cmd->add_option("--family", family_id, "registry id")->required();
  params.attach(spa_cmd);

  for (CLI::App* sub : {fam, mir, cls, det, swp, tab, scr, spa_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (!out_path.empty()) ctx.out_path = out_path;
  ctx.format = format;
  ctx.classify.optimizer = ctx.optimizer;
  ctx.classify.detector.seed = ctx.optimizer.seed;

  try {
    ExperimentReport report;
    FamilyRequest req{family_id, params.collect()};
    WitnessSource wsrc;
    if (!witness_file.empty()) wsrc.file = witness_file;
    else if (!family_id.empty()) wsrc.family = req;

    if (fam->parsed()) report = cmd_family(req, ctx);
    else if (mir->parsed()) report = cmd_mirror(req, ctx);
    else if (cls->parsed()) report = cmd_classify(wsrc, ctx);
    else if (det->parsed()) report = cmd_detect(wsrc, ctx);
    else if (swp->parsed()) report = cmd_sweep(family_id, sweep_param, grid, with_verdicts, ctx);
    else if (tab->parsed()) report = cmd_table1(ctx);
    else if (scr->parsed()) {
      if (!corpus_file.empty()) corpus.file = corpus_file;
      else if (!corpus_gen.empty()) corpus.generator = corpus_gen;
      report = cmd_screen(wsrc, corpus, ctx);
    } else if (spa_cmd->parsed()) report = cmd_spa(req, ctx);

    emit_report(report, ctx);
    return report.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
