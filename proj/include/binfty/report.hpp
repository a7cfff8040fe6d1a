#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace binfty {

struct Witness {
  std::string inputs;
  std::string lhs;
  std::string rhs;
  std::string diff;
};

// Outcome of one checker run. `tag` names the identity being exercised.
struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string id_, std::string tag_) : id(std::move(id_)), tag(std::move(tag_)) {}

  std::string id;
  std::string tag;
  bool passed = true;
  long probes = 0;
  long skipped_unsafe = 0;
  std::string modulus;
  std::vector<std::pair<std::string, std::string>> info;
  std::optional<Witness> witness;

  void fail(Witness w) {
    if (passed) witness = std::move(w);
    passed = false;
  }
  void note(std::string k, std::string v) { info.emplace_back(std::move(k), std::move(v)); }
};

struct Cutoffs {
  int arity = 4;       // N
  int weight = 3;      // P
  int filtration = 3;  // F
};

struct Report {
  std::string suite;
  Cutoffs cutoffs;
  unsigned long seed = 1;
  long samples = 0;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<CheckResult> checks;
  std::optional<std::string> error;  // input or usage error, exit code 2

  bool passed() const {
    if (error) return false;
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void note(std::string k, std::string v) { info.emplace_back(std::move(k), std::move(v)); }
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void add(const std::vector<CheckResult>& cs) {
    for (const auto& c : cs) checks.push_back(c);
  }
};

}  // namespace binfty
