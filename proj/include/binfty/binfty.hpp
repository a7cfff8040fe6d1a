#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "binfty/koszul.hpp"
#include "binfty/tensor.hpp"

namespace binfty {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : w) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Families {b_{m,n}} (degree 0) and {d_m} (degree 1) on a carrier B, read as
// the structure of s^-1 B. b_{0,1} = b_{1,0} = Id and the remaining b_{0,m},
// b_{m,0} vanish; these are handled here and never stored.
//
// `op_bound` is the largest total arity for which the families are
// meaningful; checks that would need more are reported as unsound.
class BInfty {
 public:
  using BFn = std::function<Vec(int m, int n, const Word& args)>;
  using DFn = std::function<Vec(int m, const Word& args)>;

  BInfty(std::string name, SpacePtr carrier, int op_bound, BFn b, DFn d)
      : name_(std::move(name)), carrier_(std::move(carrier)), op_bound_(op_bound), b_(std::move(b)), d_(std::move(d)) {}

  const std::string& name() const { return name_; }
  const GradedSpace& carrier() const { return *carrier_; }
  SpacePtr carrier_ptr() const { return carrier_; }
  int op_bound() const { return op_bound_; }

  Vec b(int m, int n, const Word& args) const {
    if (m + n == 1) return Vec(args.at(0));
    if (m == 0 || n == 0) return {};
    Word key = args;
    key.push_back(m);
    auto it = bcache_.find(key);
    if (it != bcache_.end()) return it->second;
    Vec v = b_ ? b_(m, n, args) : Vec{};
    if (bcache_.size() >= kCacheLimit) bcache_.clear();
    bcache_.emplace(std::move(key), v);
    return v;
  }

  Vec d(int m, const Word& args) const {
    if (m < 1) return {};
    auto it = dcache_.find(args);
    if (it != dcache_.end()) return it->second;
    Vec v = d_ ? d_(m, args) : Vec{};
    if (dcache_.size() >= kCacheLimit) dcache_.clear();
    dcache_.emplace(args, v);
    return v;
  }

  const BFn& raw_b() const { return b_; }
  const DFn& raw_d() const { return d_; }

  // Probe tuples on which the truncated families are known to be exact;
  // checkers count the others as unsound skips. No predicate means all.
  using Safety = std::function<bool(const Word&)>;
  void set_safety(Safety s) { safe_ = std::move(s); }
  const Safety& safety() const { return safe_; }
  bool safe(const Word& w) const { return !safe_ || safe_(w); }

 private:
  static constexpr std::size_t kCacheLimit = 1u << 20;

  std::string name_;
  SpacePtr carrier_;
  int op_bound_;
  BFn b_;
  DFn d_;
  Safety safe_;
  mutable std::unordered_map<Word, Vec, WordHash> bcache_;
  mutable std::unordered_map<Word, Vec, WordHash> dcache_;
};

using BInftyPtr = std::shared_ptr<const BInfty>;

inline int word_degree(const BInfty& B, const Word& w) { return degree_of_word(B.carrier(), w); }

// b_{m,n} extended linearly over a sum of words of length m + n.
inline Vec apply_b(const BInfty& B, int m, const Tensor& inputs) {
  Vec out;
  for (const auto& [w, c] : inputs) out.add(B.b(m, static_cast<int>(w.size()) - m, w), c);
  return out;
}

inline Vec apply_d(const BInfty& B, const Tensor& inputs) {
  Vec out;
  for (const auto& [w, c] : inputs) out.add(B.d(static_cast<int>(w.size()), w), c);
  return out;
}

inline Vec eval_b(const BInfty& B, int m, int n, const std::vector<Vec>& args) {
  Vec out;
  for_each_term(args, [&](const Word& w, const Rational& c) { out.add(B.b(m, n, w), c); });
  return out;
}

inline Vec eval_d(const BInfty& B, const std::vector<Vec>& args) {
  Vec out;
  const int m = static_cast<int>(args.size());
  for_each_term(args, [&](const Word& w, const Rational& c) { out.add(B.d(m, w), c); });
  return out;
}

namespace detail {

// Enumerates the block decompositions T of (u; v). Block q takes i_q letters
// of u and j_q of v with i_q + j_q >= 1; the sign is that of the shuffle
// u_1..u_m v_1..v_n -> (u-block_1 v-block_1)(u-block_2 v-block_2)...
inline void brace_blocks(const BInfty& B, const Word& u, const Word& v, int p_fixed, std::size_t iu, std::size_t iv,
                         int blocks, long u_rest_deg, const Tensor& acc, Tensor& out) {
  if (acc.is_zero()) return;
  if (iu == u.size() && iv == v.size()) {
    if (p_fixed < 0 || blocks == p_fixed) out += acc;
    return;
  }
  if (p_fixed >= 0) {
    const long left = static_cast<long>(u.size() - iu + v.size() - iv);
    if (blocks >= p_fixed || left < p_fixed - blocks) return;
  }
  const GradedSpace& S = B.carrier();
  for (std::size_t i = 0; iu + i <= u.size(); ++i) {
    long u_block_deg = 0;
    for (std::size_t t = iu; t < iu + i; ++t) u_block_deg += S.degree(u[t]);
    for (std::size_t j = 0; iv + j <= v.size(); ++j) {
      if (i + j == 0) continue;
      Word args = concat(slice(u, iu, iu + i), slice(v, iv, iv + j));
      long v_block_deg = 0;
      for (std::size_t t = iv; t < iv + j; ++t) v_block_deg += S.degree(v[t]);
      Vec val = B.b(static_cast<int>(i), static_cast<int>(j), args);
      if (val.is_zero()) continue;
      const long rest = u_rest_deg - u_block_deg;
      Tensor next = append_vec(acc, val);
      next *= koszul_pair(v_block_deg, rest);
      brace_blocks(B, u, v, p_fixed, iu + i, iv + j, blocks + 1, rest, next, out);
    }
  }
}

}  // namespace detail

// b_p(u; v), a sum of weight-p words.
inline Tensor composite_brace(const BInfty& B, const Word& u, const Word& v, int p) {
  Tensor out;
  if (p < 1 || static_cast<int>(u.size() + v.size()) < p) return out;
  Tensor start;
  start.add(Word{}, 1);
  detail::brace_blocks(B, u, v, p, 0, 0, 0, degree_of_word(B.carrier(), u), start, out);
  return out;
}

// Sum over p of b_p(u; v): the product of the associated Hopf algebra.
inline Tensor star(const BInfty& B, const Word& u, const Word& v) {
  Tensor out;
  Tensor start;
  start.add(Word{}, 1);
  detail::brace_blocks(B, u, v, -1, 0, 0, 0, degree_of_word(B.carrier(), u), start, out);
  return out;
}

inline Tensor star(const BInfty& B, const Tensor& x, const Tensor& y) {
  Tensor out;
  for (const auto& [u, c] : x)
    for (const auto& [v, e] : y) out.add(star(B, u, v), c * e);
  return out;
}

// Coderivation lift of d_p evaluated on a word.
inline Tensor d_hat(const BInfty& B, int p, const Word& w) {
  Tensor out;
  const GradedSpace& S = B.carrier();
  const std::size_t n = w.size();
  if (p < 1 || static_cast<std::size_t>(p) > n) return out;
  long prefix = 0;
  for (std::size_t i = 0; i + static_cast<std::size_t>(p) <= n; ++i) {
    Vec val = B.d(p, slice(w, i, i + static_cast<std::size_t>(p)));
    if (!val.is_zero()) {
      Tensor left;
      left.add(slice(w, 0, i), 1);
      Tensor mid = append_vec(left, val);
      Tensor right;
      right.add(slice(w, i + static_cast<std::size_t>(p), n), 1);
      out.add(tensor_product(mid, right), koszul_pair(1, prefix));
    }
    prefix += S.degree(w[i]);
  }
  return out;
}

inline Tensor d_hat_all(const BInfty& B, const Word& w) {
  Tensor out;
  for (int p = 1; p <= static_cast<int>(w.size()); ++p) out += d_hat(B, p, w);
  return out;
}

inline Tensor d_hat_all(const BInfty& B, const Tensor& t) {
  Tensor out;
  for (const auto& [w, c] : t) out.add(d_hat_all(B, w), c);
  return out;
}

// The opposite structure: b^op_{m,n}(u; v) = (-1)^{|u||v|} b_{n,m}(v; u).
// Right actions of B are left actions of B^op.
inline BInftyPtr opposite(const BInftyPtr& B) {
  auto b = [B](int m, int n, const Word& args) {
    Word u = slice(args, 0, static_cast<std::size_t>(m));
    Word v = slice(args, static_cast<std::size_t>(m), args.size());
    Vec r = B->b(n, m, concat(v, u));
    r *= koszul_pair(word_degree(*B, u), word_degree(*B, v));
    return r;
  };
  auto d = [B](int m, const Word& args) { return B->d(m, args); };
  return std::make_shared<BInfty>(B->name() + "^op", B->carrier_ptr(), B->op_bound(), b, d);
}

}  // namespace binfty
