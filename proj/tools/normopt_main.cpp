// Command-line surface: load operator specs, run the solver/diagnoser/
// verification suites, emit JSON (or CSV trace) reports.
//
// Exit codes: 0 ok/attains, 2 usage error, 3 does_not_attain,
// 4 inconclusive, 5 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normopt/attainment.hpp"
#include "normopt/norm_solver.hpp"
#include "normopt/report.hpp"
#include "normopt/spec_io.hpp"
#include "normopt/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDoesNotAttain = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitVerifyFailure = 5;

struct CommonFlags {
  double p = 0;  // 0: take the value from the spec file
  double q = 0;
  std::string ladder;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int restarts = 8;
  int window = 32;
  double tau = 1e-3;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_solver = true) {
  cmd->add_option("--p", f.p, "source exponent (default: from the spec file)");
  cmd->add_option("--q", f.q, "target exponent (default: from the spec file)");
  if (with_solver) {
    cmd->add_option("--ladder", f.ladder,
                    "comma-separated section sizes, e.g. 2,4,8,16");
    cmd->add_option("--tol", f.tol, "solver tolerance");
    cmd->add_option("--restarts", f.restarts, "random restarts per section");
  }
  cmd->add_option("--seed", f.seed, "generator seed (echoed in the report)");
  cmd->add_option("--window", f.window, "weak-null proxy window");
  cmd->add_option("--tau", f.tau, "weak-null proxy threshold");
  cmd->add_option("--out", f.out, "write the report here instead of stdout");
  cmd->add_option("--format", f.format, "json or csv (csv: trace rows only)")
      ->check(CLI::IsMember({"json", "csv"}));
}

normopt::SolverConfig solver_config(const CommonFlags& f) {
  normopt::SolverConfig cfg;
  cfg.tol = f.tol;
  cfg.seed = f.seed;
  cfg.restarts = f.restarts;
  if (!f.ladder.empty()) {
    cfg.ladder.clear();
    std::stringstream ss(f.ladder);
    std::string item;
    while (std::getline(ss, item, ',')) {
      cfg.ladder.push_back(std::stoul(item));
    }
  }
  cfg.validate();
  return cfg;
}

normopt::OperatorSpec load_spec(const std::string& path,
                                const CommonFlags& f) {
  normopt::OperatorSpec spec = normopt::load_spec_file(path);
  double p = f.p > 0 ? f.p : spec.source_p().value();
  double q = f.q > 0 ? f.q : spec.target_q().value();
  spec.override_exponents(normopt::Exponent(p), normopt::Exponent(q));
  return spec;
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(f.out);
  if (!out) throw std::runtime_error("cannot write to " + f.out);
  out << text << "\n";
}

int cmd_norm(const std::string& spec_path, const CommonFlags& f) {
  normopt::OperatorSpec spec = load_spec(spec_path, f);
  normopt::SolverConfig cfg = solver_config(f);
  normopt::LadderResult ladder = normopt::ladder_norm(spec, cfg);

  normopt::MaximizingTrace trace;
  trace.p = spec.source_p();
  trace.q = spec.target_q();
  for (const auto& e : ladder.sections) {
    trace.steps.push_back({e.section, e.certificate, e.value});
  }

  if (f.format == "csv") {
    emit(f, normopt::trace_to_csv(trace));
    return kExitOk;
  }
  normopt::Json results;
  results["estimate"] = normopt::estimate_to_json(ladder.overall);
  normopt::Json sections = normopt::Json::array();
  for (const auto& e : ladder.sections) {
    sections.push_back(normopt::estimate_to_json(e));
  }
  results["sections"] = std::move(sections);
  emit(f, normopt::make_run_report("norm", &spec, cfg, results).dump(2));
  return kExitOk;
}

int cmd_diagnose(const std::string& spec_path, const CommonFlags& f) {
  normopt::OperatorSpec spec = load_spec(spec_path, f);
  normopt::DiagnoseConfig cfg;
  cfg.solver = solver_config(f);
  cfg.window = f.window;
  cfg.tau = f.tau;

  normopt::DiagnoseOutcome outcome;
  try {
    outcome = normopt::diagnose_with_trace(spec, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (f.format == "csv") {
    emit(f, normopt::trace_to_csv(outcome.trace));
  } else {
    normopt::Json results;
    results["report"] = normopt::attainment_to_json(outcome.report);
    results["trace"] = normopt::trace_to_json(outcome.trace);
    emit(f, normopt::make_run_report("diagnose", &spec, cfg.solver, results)
                .dump(2));
  }
  switch (outcome.report.verdict) {
    case normopt::Verdict::Attains:
      return kExitOk;
    case normopt::Verdict::DoesNotAttain:
      return kExitDoesNotAttain;
    case normopt::Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

int cmd_verify(const std::string& suite, const CommonFlags& f) {
  std::vector<normopt::SuiteResult> results;
  try {
    results = normopt::run_suites(suite, f.seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  bool all_pass = true;
  normopt::Json suites = normopt::Json::array();
  for (const auto& suite_result : results) {
    normopt::Json checks = normopt::Json::array();
    for (const auto& c : suite_result.checks) {
      all_pass = all_pass && c.pass;
      std::printf("[%s] %-55s %s (%s)\n", suite_result.suite.c_str(),
                  c.name.c_str(), c.pass ? "PASS" : "FAIL", c.detail.c_str());
      checks.push_back({{"name", c.name},
                        {"pass", c.pass},
                        {"detail", c.detail}});
    }
    suites.push_back(
        {{"suite", suite_result.suite}, {"checks", std::move(checks)}});
  }
  if (!f.out.empty()) {
    normopt::SolverConfig cfg;
    cfg.seed = f.seed;
    normopt::Json results_json;
    results_json["suites"] = std::move(suites);
    results_json["all_pass"] = all_pass;
    std::ofstream out(f.out);
    out << normopt::make_run_report("verify", nullptr, cfg, results_json)
               .dump(2)
        << "\n";
  }
  return all_pass ? kExitOk : kExitVerifyFailure;
}

int cmd_demo_p1(const CommonFlags& f) {
  // The l_1 edge case: the diagonal n/(n+1) paired with the canonical basis
  // certificates. In l_1 coordinatewise smallness does not witness weak
  // nullity (weak and norm convergence of sequences coincide there), so no
  // verdict is issued; the trace below shows every rung value n/(n+1) < 1
  // while the certificates march rightward.
  normopt::OperatorSpec spec =
      normopt::op_novo1(normopt::Exponent(1), normopt::Exponent(1));
  normopt::SolverConfig cfg = solver_config(f);
  normopt::MaximizingTrace trace =
      normopt::build_maximizing_sequence(spec, cfg, f.tau);

  std::printf("source exponent p = 1: proxy-based verdicts are disabled\n");
  std::printf("%-10s %-18s %s\n", "section", "value", "certificate");
  double sup = 0;
  for (const auto& s : trace.steps) {
    sup = std::max(sup, s.value);
    std::printf("%-10zu %-18.12f e_%zu\n", s.section, s.value,
                s.certificate.leading_nonzero());
  }
  std::printf("sup over sections %.12f < 1: maximizing without attaining\n",
              sup);

  normopt::Json results;
  results["trace"] = normopt::trace_to_json(trace);
  results["proxy_applicable"] = false;
  results["note"] =
      "p = 1: weak and norm convergence of sequences coincide in l_1, so "
      "the coordinatewise proxy cannot certify weak nullity; no verdict";
  if (!f.out.empty() || f.format == "csv") {
    if (f.format == "csv") {
      emit(f, normopt::trace_to_csv(trace));
    } else {
      emit(f,
           normopt::make_run_report("demo-p1", &spec, cfg, results).dump(2));
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator norms on sequence-space sections: estimation, "
               "attainment diagnosis, invariant verification"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string spec_path, suite;

  CLI::App* norm = app.add_subcommand("norm", "ladder norm estimate");
  norm->add_option("spec", spec_path, "operator spec JSON file")->required();
  add_common(norm, flags);

  CLI::App* diag =
      app.add_subcommand("diagnose", "attainment verdict (exit code 0/3/4)");
  diag->add_option("spec", spec_path, "operator spec JSON file")->required();
  add_common(diag, flags);

  CLI::App* verify =
      app.add_subcommand("verify", "run a named invariant suite");
  verify->add_option("suite", suite,
                     "scalar|splitting|precompact|monotone|blocks|"
                     "lineability|all")
      ->required();
  add_common(verify, flags, false);

  CLI::App* demo = app.add_subcommand(
      "demo-p1", "show the p = 1 canonical-basis phenomenon (no verdict)");
  add_common(demo, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (norm->parsed()) return cmd_norm(spec_path, flags);
    if (diag->parsed()) return cmd_diagnose(spec_path, flags);
    if (verify->parsed()) return cmd_verify(suite, flags);
    if (demo->parsed()) return cmd_demo_p1(flags);
  } catch (const normopt::SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return kExitUsage;
}
