#include "realtopo/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "realtopo/dsl.hpp"
#include "realtopo/report.hpp"

namespace realtopo {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_expression(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw UsageError("cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

Rational rational_arg(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational: " + text);
  }
}

void emit(std::ostream& out, const Json& j, const std::string& path = "") {
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of GCC and CCC subsets of the real line", "realtopo"};
  app.require_subcommand(1);

  std::string expr, jsonPath;
  auto* analyze_cmd = app.add_subcommand("analyze", "Verdicts, witness, closure and corollary checks as JSON");
  analyze_cmd->add_option("expr", expr, "Expression or @file")->required();
  analyze_cmd->add_option("--json", jsonPath, "Also write the report here");

  std::string kind;
  auto* witness_cmd = app.add_subcommand("witness", "Emit one witness");
  witness_cmd->add_option("expr", expr, "Expression or @file")->required();
  witness_cmd->add_option("--kind", kind, "gcc, non-gcc or ccc")
      ->required()
      ->check(CLI::IsMember({"gcc", "non-gcc", "ccc"}));

  std::string evalArg, preimageArg, cantorArg;
  auto* surj_cmd = app.add_subcommand("surjection", "Evaluate the surjection A x R -> X");
  surj_cmd->add_option("expr", expr, "Expression or @file")->required();
  auto* eval_opt = surj_cmd->add_option("--eval", evalArg, "a,y");
  auto* pre_opt = surj_cmd->add_option("--preimage", preimageArg, "target t");
  auto* cantor_opt = surj_cmd->add_option("--cantor", cantorArg, "bit string");
  eval_opt->excludes(pre_opt)->excludes(cantor_opt);
  pre_opt->excludes(cantor_opt);

  std::string fixtureName, rule = "collision-free", check = "all";
  std::int64_t bound = 50, closureUpTo = 1000;
  auto* fixture_cmd = app.add_subcommand("fixture", "The planar GCC-not-CCC fixture");
  fixture_cmd->add_option("name", fixtureName)->required()->check(CLI::IsMember({"planar"}));
  fixture_cmd->add_option("--rule", rule)->check(CLI::IsMember({"literal", "collision-free"}));
  fixture_cmd->add_option("--check", check)->check(CLI::IsMember({"all"}));
  fixture_cmd->add_option("--bound", bound, "Enumeration bound")->check(CLI::PositiveNumber);
  fixture_cmd->add_option("--closure-up-to", closureUpTo, "Check x_n in closure(A_n) for n up to this");

  FuzzSpec spec;
  FuzzRunOptions fuzzOptions;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded property battery");
  fuzz_cmd->add_option("--seed", spec.seed);
  fuzz_cmd->add_option("--trials", spec.trials)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_flag("--mutate", fuzzOptions.mutate, "Swap in a broken sequence decider");
  fuzz_cmd->add_option("--threads", fuzzOptions.threads);
  fuzz_cmd->add_flag("--deciders-only", fuzzOptions.battery.decidersOnly);
  fuzz_cmd->add_option("--json", jsonPath, "Also write the summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      emit(out, analyze(read_expression(expr)), jsonPath);
      return kExitOk;
    }
    if (witness_cmd->parsed()) {
      WitnessKind k = kind == "gcc" ? WitnessKind::Gcc : kind == "ccc" ? WitnessKind::Ccc : WitnessKind::NonGcc;
      emit(out, witness_report(read_expression(expr), k));
      return kExitOk;
    }
    if (surj_cmd->parsed()) {
      const std::string text = read_expression(expr);
      if (!evalArg.empty()) {
        auto comma = evalArg.find(',');
        if (comma == std::string::npos) throw UsageError("--eval expects a,y");
        emit(out, surjection_eval(text, rational_arg(evalArg.substr(0, comma)), rational_arg(evalArg.substr(comma + 1))));
      } else if (!preimageArg.empty()) {
        emit(out, surjection_preimage(text, rational_arg(preimageArg)));
      } else if (cantor_opt->count() > 0) {
        if (cantorArg.find_first_not_of("01") != std::string::npos) throw UsageError("--cantor expects bits");
        emit(out, surjection_cantor(text, cantorArg));
      } else {
        throw UsageError("surjection needs --eval, --preimage or --cantor");
      }
      return kExitOk;
    }
    if (fixture_cmd->parsed()) {
      PlanarConfig cfg{rule == "literal" ? HeightRule::PaperLiteral : HeightRule::CollisionFree, bound};
      try {
        Json j = planar_report(cfg, closureUpTo);
        emit(out, j);
        return j["closureChecks"]["failures"] == 0 ? kExitOk : kExitFailure;
      } catch (const UnsupportedConfig& e) {
        Json j;
        j["rule"] = to_string(cfg.heightRule);
        j["error"] = e.what();
        Json list = Json::array();
        for (const auto& c : e.collisions()) list.push_back({{"n", c.n}, {"k", c.k}, {"m", c.m}});
        j["collisions"] = list;
        emit(out, j);
        return kExitFailure;
      }
    }
    if (fuzz_cmd->parsed()) {
      FuzzSummary s = fuzz_run(spec, fuzzOptions);
      emit(out, fuzz_json(spec, s), jsonPath);
      return s.failed == 0 ? kExitOk : kExitFailure;
    }
  } catch (const ParseError& e) {
    err << "parse error " << e.what() << "\n";
    return kExitParse;
  } catch (const Unnormalizable& e) {
    err << "unnormalizable: " << e.what() << "\n";
    return kExitUnnormalizable;
  } catch (const InvalidSchema& e) {
    err << "invalid schema: " << e.what() << "\n";
    return kExitUnnormalizable;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const VerdictFailure& e) {
    err << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace realtopo
