#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "binfty/algebra.hpp"
#include "binfty/io.hpp"
#include "binfty/probes.hpp"
#include "binfty/report.hpp"

namespace binfty {

struct RunConfig {
  Cutoffs cut;
  long samples = 200;
  long budget = 20000;  // largest probe product enumerated exhaustively
  std::uint64_t seed = 1;
  std::pair<int, int> degrees{0, 2};
  std::filesystem::path catalog;

  ProbePlan plan(int max_len) const {
    ProbePlan p;
    p.max_len = max_len;
    p.samples = samples;
    p.exhaustive_budget = budget;
    p.seed = seed;
    return p;
  }
};

struct Catalog {
  std::vector<AlgebraPresentation> algebras;
  std::vector<AlgebraMorphism> morphisms;

  const AlgebraPresentation& algebra(const std::string& name) const;
  const AlgebraMorphism& morphism(const std::string& name) const;
};

// Every *.json under dir, in file-name order.
Catalog load_catalog(const std::filesystem::path& dir);

// Checks behind the single-object commands. Domain errors are recorded as
// failed checks; ids are prefixed with `prefix`.
void hochschild_checks(Report& r, const AlgebraPresentation& A, const RunConfig& cfg, const std::string& prefix = "");
void diagram_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix = "");
void tau_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix = "");
void mc_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix = "");
void extend_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix = "");
void cobar_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix = "");
void cohomology_compare_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg,
                               const std::string& prefix = "");

// Property suites over the catalog, in the order `proptest --suite all` runs them.
const std::vector<std::string>& suite_names();
void run_suite(Report& r, const std::string& name, const Catalog& cat, const RunConfig& cfg);

struct CommandResult {
  Report report;
  int exit_code = 0;
};

// Exit codes: 0 all checks pass, 1 a check failed, 2 input or usage error.
CommandResult run_command(const std::string& cmd, const std::vector<std::string>& files, const std::string& suite,
                          const RunConfig& cfg);

const std::vector<std::string>& command_names();

}  // namespace binfty
