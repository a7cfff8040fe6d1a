#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "binfty/io.hpp"

namespace testing_support {

using namespace binfty;

inline std::filesystem::path catalog_path(const std::string& file) {
  return std::filesystem::path(BINFTY_CATALOG_DIR) / file;
}

inline AlgebraPresentation catalog_algebra(const std::string& name) { return load_algebra(catalog_path(name + ".json")); }
inline AlgebraMorphism catalog_morphism(const std::string& name) { return load_morphism(catalog_path(name + ".json")); }

// Ungraded algebra from a table of (left, right) -> output basis index with
// coefficient 1; no validation.
inline AlgebraPresentation table_algebra(const std::string& name, const std::vector<std::string>& basis,
                                         const std::vector<std::array<int, 3>>& products) {
  auto s = std::make_shared<GradedSpace>(name);
  for (const auto& b : basis) s->add(b, 0);
  AlgebraPresentation A;
  A.name = name;
  A.space = s;
  for (const auto& [l, r, o] : products) A.mult[{l, r}] = Vec(o);
  return A;
}

// x*x = 1, 1*x = x, 1*1 = 1, x*1 = 0: ((x*x)*x = x but x*(x*x) = 0.
inline AlgebraPresentation non_associative() {
  return table_algebra("nonassoc", {"1", "x"}, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}});
}

inline ProbePlan plan(int max_len, long samples = 200, std::uint64_t seed = 1) {
  ProbePlan p;
  p.max_len = max_len;
  p.samples = samples;
  p.exhaustive_budget = 20000;
  p.seed = seed;
  return p;
}

inline bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

inline std::string failures(const std::vector<CheckResult>& rs) {
  std::string out;
  for (const auto& r : rs)
    if (!r.passed) out += r.id + (r.witness ? " at " + r.witness->inputs + ": " + r.witness->diff : "") + "\n";
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, int span = 3) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 3);
  return make_rational(num(rng), den(rng));
}

}  // namespace testing_support
