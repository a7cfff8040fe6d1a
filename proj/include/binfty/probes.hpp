#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "binfty/tensor.hpp"

namespace binfty {

// Which basis tuples a checker evaluates. Lengths whose full product fits in
// the budget are enumerated exhaustively; longer ones are sampled.
struct ProbePlan {
  int max_len = 3;
  long exhaustive_budget = 250000;
  long samples = 2000;
  std::uint64_t seed = 1;
};

class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed) : eng_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<Word> all_tuples(const std::vector<int>& pool, int len) {
  std::vector<Word> out{Word{}};
  for (int l = 0; l < len; ++l) {
    std::vector<Word> next;
    next.reserve(out.size() * pool.size());
    for (const Word& w : out)
      for (int i : pool) {
        Word x = w;
        x.push_back(i);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

// Tuples of the given length over the union of the strata; sampling picks a
// stratum uniformly per position so that small summands are not drowned out.
inline std::vector<Word> probe_tuples(const std::vector<std::vector<int>>& strata, int len, const ProbePlan& plan,
                                      ProbeRng& rng) {
  std::vector<int> pool;
  for (const auto& s : strata) pool.insert(pool.end(), s.begin(), s.end());
  if (pool.empty() || len <= 0) return {};
  double total = 1;
  for (int l = 0; l < len; ++l) total *= static_cast<double>(pool.size());
  if (total <= static_cast<double>(plan.exhaustive_budget)) return all_tuples(pool, len);
  std::vector<const std::vector<int>*> nonempty;
  for (const auto& s : strata)
    if (!s.empty()) nonempty.push_back(&s);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(plan.samples));
  for (long s = 0; s < plan.samples; ++s) {
    Word w;
    for (int l = 0; l < len; ++l) {
      const auto& st = *nonempty[rng.below(nonempty.size())];
      w.push_back(st[rng.below(st.size())]);
    }
    out.push_back(std::move(w));
  }
  return out;
}

inline std::vector<int> full_pool(const GradedSpace& s) {
  std::vector<int> p(static_cast<std::size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

}  // namespace binfty
