#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellgap/solvers.hpp"

namespace bellgap::verify {

// One recorded inequality or equality: pass == (cmp applied to lhs, rhs
// within tol). Reports keep lhs/rhs so every flag is recomputable.
struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string cmp;  // "<=", ">=", or "~" (|lhs - rhs| <= tol)
  double tol = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

CheckResult make_check(std::string name, double lhs, std::string cmp,
                       double rhs, double tol, double seconds = 0.0);

struct SuiteOptions {
  solvers::SolveOptions solve;
  std::uint64_t rng_seed = 20240901;
  int seesaw_seeds = 8;
};

// Named suites behind `verify <suite>`.
std::vector<CheckResult> suite_lemma1(const SuiteOptions& options = {});
std::vector<CheckResult> suite_prop_bilocal_cor(const SuiteOptions& options = {});
std::vector<CheckResult> suite_prop_lv(const SuiteOptions& options = {});
std::vector<CheckResult> suite_thm2(const SuiteOptions& options = {});
std::vector<CheckResult> suite_lemmas_dk(const SuiteOptions& options = {});

// Dispatch by name in {lemma1, prop-bilocal-cor, prop-lv, thm2, lemmas-dk,
// all}; unknown names throw DomainError.
std::vector<CheckResult> run_suite(const std::string& name,
                                   const SuiteOptions& options = {});

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace bellgap::verify
