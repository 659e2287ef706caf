// bellgap: construct Bell functionals / nonlocal games, compute class values
// with certificates, and run the verification suites.
//
// Exit codes: 0 success, 1 failed checks, 2 usage/validation error,
// 3 resource budget exceeded.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellgap/errors.hpp"
#include "bellgap/games.hpp"
#include "bellgap/json_io.hpp"
#include "bellgap/solvers.hpp"
#include "bellgap/valuation.hpp"
#include "bellgap/verify.hpp"

namespace {

using namespace bellgap;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    io::write_text_file(path, text);
  }
}

// ---- make-game ---------------------------------------------------------------

struct MakeGameArgs {
  std::string name;
  std::string out;
  std::vector<std::string> in;  // input GameFiles for tensor / hat / tilde
  int l = 2;
  double eta = -1.0;
  int inputs = 4;
};

BellFunctional build_game(const MakeGameArgs& args) {
  auto input_file = [&](std::size_t count) -> const std::vector<std::string>& {
    if (args.in.size() != count) {
      throw DomainError("make-game " + args.name + " needs exactly " +
                        std::to_string(count) + " --in file(s)");
    }
    return args.in;
  };
  if (args.name == "chsh") return games::chsh_game();
  if (args.name == "kv") {
    games::KVParams params;
    params.l = args.l;
    params.eta = args.eta;
    return games::khot_vishnoi(params);
  }
  if (args.name == "hadamard-cor") {
    return games::hadamard_correlation_functional(args.inputs);
  }
  if (args.name == "tensor") {
    const auto& in = input_file(2);
    return games::tensor_product(io::load_game(in[0]), io::load_game(in[1]));
  }
  if (args.name == "hat") {
    return games::hat_construction(io::load_game(input_file(1)[0]));
  }
  if (args.name == "tilde") {
    return games::tilde_construction(io::load_game(input_file(1)[0]));
  }
  throw DomainError("unknown game '" + args.name +
                    "'; expected chsh, kv, hadamard-cor, tensor, hat, or tilde");
}

// ---- value -------------------------------------------------------------------

struct ValueArgs {
  std::string file;
  std::string class_name;
  std::string report_path;
  std::string certificate_path;
  solvers::SolveOptions solve;
  int seeds = 20;
  std::vector<int> dims;
};

void run_value(const ValueArgs& args) {
  const BellFunctional g = io::load_game(args.file);
  const solvers::ValueClass cls = solvers::value_class_from_string(args.class_name);

  QuantumLowerOptions quantum;
  quantum.seesaw.seeds = args.seeds;
  quantum.seesaw.dims = args.dims;
  quantum.seesaw.threads = args.solve.threads;

  const auto start = std::chrono::steady_clock::now();
  const solvers::ValueReport report = compute_value(g, cls, args.solve, quantum);
  const double seconds = seconds_since(start);

  std::printf("%.17g\n", report.value);
  if (!args.report_path.empty()) {
    io::write_text_file(args.report_path,
                        io::value_report_to_json(report, seconds));
  }
  if (!args.certificate_path.empty()) {
    io::write_text_file(args.certificate_path,
                        io::certificate_to_json(report.certificate));
  }
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string out;
  verify::SuiteOptions options;
};

int run_verify(const VerifyArgs& args) {
  const std::vector<verify::CheckResult> checks =
      verify::run_suite(args.suite, args.options);
  int passed = 0;
  for (const verify::CheckResult& c : checks) {
    std::printf("[%s] %s: %.10g %s %.10g (tol %g)\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.lhs, c.cmp.c_str(), c.rhs, c.tol);
    passed += c.pass ? 1 : 0;
  }
  std::printf("suite %s: %d/%zu checks passed\n", args.suite.c_str(), passed,
              checks.size());
  if (!args.out.empty()) {
    io::write_text_file(args.out, io::checks_to_json(args.suite, checks));
  }
  return verify::all_pass(checks) ? 0 : 1;
}

// ---- report ------------------------------------------------------------------

struct ReportArgs {
  std::string file;
  std::string out;
  solvers::SolveOptions solve;
  int seeds = 20;
  std::vector<int> dims;
};

// Computes every class that applies to the functional's kind, skipping the
// ones this build cannot treat (recorded with the reason), plus the LV
// ratios formed from the computed values.
void run_report(const ReportArgs& args) {
  const BellFunctional g = io::load_game(args.file);
  const bool correlation = g.kind() == FunctionalKind::kCorrelation;
  const bool tripartite = g.scenario().parties() == 3;

  QuantumLowerOptions quantum;
  quantum.seesaw.seeds = args.seeds;
  quantum.seesaw.dims = args.dims;
  quantum.seesaw.threads = args.solve.threads;

  std::vector<solvers::ValueClass> classes;
  if (correlation) {
    classes = {solvers::ValueClass::kLocalCor, solvers::ValueClass::kBilocalCor,
               solvers::ValueClass::kNsCor, solvers::ValueClass::kQuantumLower};
  } else {
    classes = {solvers::ValueClass::kLocal, solvers::ValueClass::kNs,
               solvers::ValueClass::kQuantumLower};
    if (tripartite) {
      classes.insert(classes.begin() + 1, solvers::ValueClass::kBilocalGeneral);
      classes.insert(classes.begin() + 2, solvers::ValueClass::kBilocalNs);
    }
  }

  nlohmann::json values = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  std::vector<std::optional<solvers::ValueReport>> computed(classes.size());
  const auto total_start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    try {
      computed[i] = compute_value(g, classes[i], args.solve, quantum);
    } catch (const UnsupportedError& e) {
      skipped.push_back({{"class", to_string(classes[i])}, {"reason", e.what()}});
      continue;
    }
    values.push_back(nlohmann::json::parse(
        io::value_report_to_json(*computed[i], seconds_since(start))));
  }

  auto find = [&](solvers::ValueClass cls) -> const solvers::ValueReport* {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i] == cls && computed[i]) return &*computed[i];
    }
    return nullptr;
  };

  // Ratio pairs worth recording: widest class over local, and the quantum
  // lower bound over the tightest bilocal figure available.
  std::vector<std::pair<solvers::ValueClass, solvers::ValueClass>> pairs;
  if (correlation) {
    pairs.emplace_back(solvers::ValueClass::kNsCor, solvers::ValueClass::kLocalCor);
    pairs.emplace_back(solvers::ValueClass::kBilocalCor,
                       solvers::ValueClass::kLocalCor);
    pairs.emplace_back(solvers::ValueClass::kQuantumLower,
                       tripartite ? solvers::ValueClass::kBilocalCor
                                  : solvers::ValueClass::kLocalCor);
  } else {
    pairs.emplace_back(solvers::ValueClass::kNs, solvers::ValueClass::kLocal);
    if (tripartite) {
      pairs.emplace_back(solvers::ValueClass::kBilocalGeneral,
                         solvers::ValueClass::kLocal);
      pairs.emplace_back(solvers::ValueClass::kQuantumLower,
                         solvers::ValueClass::kBilocalGeneral);
    } else {
      pairs.emplace_back(solvers::ValueClass::kQuantumLower,
                         solvers::ValueClass::kLocal);
    }
  }
  nlohmann::json ratios = nlohmann::json::array();
  for (const auto& [num_cls, den_cls] : pairs) {
    const solvers::ValueReport* num = find(num_cls);
    const solvers::ValueReport* den = find(den_cls);
    if (!num || !den) continue;
    const solvers::LVReport lv = solvers::lv_ratio(*num, *den);
    ratios.push_back({{"numerator", num->class_label},
                      {"denominator", den->class_label},
                      {"ratio", lv.ratio}});
  }

  nlohmann::json doc;
  doc["functional"] =
      g.meta().count("name") ? g.meta().at("name") : std::string();
  doc["kind"] = to_string(g.kind());
  doc["values"] = std::move(values);
  doc["skipped"] = std::move(skipped);
  doc["lv"] = std::move(ratios);
  doc["seconds"] = seconds_since(total_start);
  emit(doc.dump(2) + "\n", args.out);
}

void add_solve_flags(CLI::App* cmd, solvers::SolveOptions* solve) {
  cmd->add_option("--budget", solve->budget,
                  "enumeration / LP size cap (default 1e8)")
      ->envname("BELLGAP_BUDGET");
  cmd->add_option("--threads", solve->threads,
                  "solver threads, 0 = hardware (output is thread-invariant)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bellgap: Bell functionals and nonlocal games — construction, class "
      "values (local / bilocal / non-signalling / quantum bounds), "
      "certificates, and verification suites"};
  app.require_subcommand(1);

  MakeGameArgs make_args;
  CLI::App* make = app.add_subcommand(
      "make-game", "construct a GameFile (chsh, kv, hadamard-cor, tensor, hat, tilde)");
  make->add_option("name", make_args.name, "game family")->required();
  make->add_option("-o,--out", make_args.out, "output path (default stdout)");
  make->add_option("--in", make_args.in,
                   "input GameFile(s) for tensor (two) / hat / tilde (one)");
  make->add_option("--l", make_args.l, "kv: code parameter l, n = 2^l (default 2)");
  make->add_option("--eta", make_args.eta,
                   "kv: noise rate (default max(0, 1/2 - 1/l))");
  make->add_option("--inputs", make_args.inputs,
                   "hadamard-cor: inputs per party (default 4)");

  ValueArgs value_args;
  CLI::App* value = app.add_subcommand("value", "compute one class value");
  value->add_option("file", value_args.file, "GameFile to evaluate")->required();
  value
      ->add_option("--class", value_args.class_name,
                   "local | bilocal-general | bilocal-ns | ns | quantum-lower | "
                   "local-cor | bilocal-cor | ns-cor")
      ->required();
  value->add_option("--report", value_args.report_path,
                    "write the ValueReport fragment here");
  value->add_option("--certificate", value_args.certificate_path,
                    "write the certificate here");
  value->add_option("--seeds", value_args.seeds,
                    "see-saw restarts for quantum-lower (default 20)");
  value->add_option("--dims", value_args.dims,
                    "see-saw local dimensions, comma separated")
      ->delimiter(',');
  add_solve_flags(value, &value_args.solve);

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify",
      "run a verification suite: lemma1 | prop-bilocal-cor | prop-lv | thm2 | "
      "lemmas-dk | all");
  verify_cmd->add_option("suite", verify_args.suite, "suite name")->required();
  verify_cmd->add_option("-o,--out", verify_args.out, "write the ReportFile here");
  verify_cmd->add_option("--seed", verify_args.options.rng_seed,
                         "RNG seed for randomized checks");
  verify_cmd->add_option("--seesaw-seeds", verify_args.options.seesaw_seeds,
                         "see-saw restarts inside suites (default 8)");
  add_solve_flags(verify_cmd, &verify_args.options.solve);

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand(
      "report", "compute every applicable class value plus LV ratios");
  report->add_option("file", report_args.file, "GameFile to analyse")->required();
  report->add_option("-o,--out", report_args.out, "output path (default stdout)");
  report->add_option("--seeds", report_args.seeds,
                     "see-saw restarts for quantum-lower (default 20)");
  report->add_option("--dims", report_args.dims,
                     "see-saw local dimensions, comma separated")
      ->delimiter(',');
  add_solve_flags(report, &report_args.solve);

  int exit_code = 0;
  make->callback([&] { emit(io::game_to_json(build_game(make_args)), make_args.out); });
  value->callback([&] { run_value(value_args); });
  verify_cmd->callback([&] { exit_code = run_verify(verify_args); });
  report->callback([&] { run_report(report_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits clean; bad usage exits 2
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "error: %s\nbound: %s\n", e.what(), e.bound().c_str());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
