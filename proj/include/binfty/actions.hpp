#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "binfty/binfty.hpp"
#include "binfty/verify.hpp"

namespace binfty {

enum class Side { left, right };
enum class ActionKind { module, algebra, coalgebra, bb };

using Coproduct = LinComb<std::pair<int, int>>;

// What an action acts on: a finite graded space with optional differential,
// product (algebra targets), reduced coproduct (coalgebra targets), or a whole
// B-infinity structure (bb targets). Products that leave the finite basis are
// dropped by the target itself.
struct Target {
  std::string name;
  SpacePtr space;
  std::function<Vec(int)> diff;
  std::function<Vec(int, int)> mult;
  std::function<Coproduct(int)> coprod;
  // false when the concatenation of two basis words falls outside a truncation
  std::function<bool(int, int)> joinable;
  BInftyPtr binfty;

  Vec d(int x) const { return diff ? diff(x) : Vec{}; }
  Vec d(const Vec& v) const {
    Vec out;
    for (const auto& [i, c] : v) out.add(d(i), c);
    return out;
  }
  Vec m(const Vec& a, const Vec& b) const {
    Vec out;
    if (!mult) return out;
    for (const auto& [i, c] : a)
      for (const auto& [j, e] : b) out.add(mult(i, j), c * e);
    return out;
  }
  Coproduct delta(const Vec& v) const {
    Coproduct out;
    if (!coprod) return out;
    for (const auto& [i, c] : v) out.add(coprod(i), c);
    return out;
  }
};

using TargetPtr = std::shared_ptr<const Target>;

// beta(bs, x) is beta_{|bs|+1}(b_1, .., b_k, x) for a left action and
// beta'_{|bs|+1}(x, b_1, .., b_k) for a right one. beta(empty, x) = x.
class ActionData {
 public:
  using Fn = std::function<Vec(const Word& bs, int x)>;

  ActionData(std::string name, Side side, ActionKind kind, BInftyPtr actor, TargetPtr target, int max_len, Fn beta)
      : name_(std::move(name)),
        side_(side),
        kind_(kind),
        actor_(std::move(actor)),
        target_(std::move(target)),
        max_len_(max_len),
        beta_(std::move(beta)),
        cache_(std::make_shared<std::map<std::pair<Word, int>, Vec>>()) {}

  const std::string& name() const { return name_; }
  Side side() const { return side_; }
  ActionKind kind() const { return kind_; }
  const BInftyPtr& actor() const { return actor_; }
  const TargetPtr& target() const { return target_; }
  // Largest number of actor arguments the family is defined for.
  int max_len() const { return max_len_; }

  Vec apply(const Word& bs, int x) const {
    if (bs.empty()) return Vec(x);
    if (static_cast<int>(bs.size()) > max_len_) return {};
    auto key = std::make_pair(bs, x);
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
    Vec v = beta_ ? beta_(bs, x) : Vec{};
    cache_->emplace(std::move(key), v);
    return v;
  }
  Vec apply(const Word& bs, const Vec& x) const {
    Vec out;
    for (const auto& [i, c] : x) out.add(apply(bs, i), c);
    return out;
  }
  Vec apply(const Tensor& bss, const Vec& x) const {
    Vec out;
    for (const auto& [bs, c] : bss) out.add(apply(bs, x), c);
    return out;
  }

 private:
  std::string name_;
  Side side_;
  ActionKind kind_;
  BInftyPtr actor_;
  TargetPtr target_;
  int max_len_;
  Fn beta_;
  std::shared_ptr<std::map<std::pair<Word, int>, Vec>> cache_;
};

inline ActionData trivial_action(std::string name, Side side, ActionKind kind, BInftyPtr actor, TargetPtr target,
                                 int max_len) {
  return ActionData(std::move(name), side, kind, std::move(actor), std::move(target), max_len, nullptr);
}

// A right action of B read as a left action of B^op:
// beta^L(bs, x) = (-1)^{|x| |bs|} beta'(x, bs).
inline ActionData left_form(const ActionData& a) {
  if (a.side() == Side::left) return a;
  auto actor = a.actor();
  auto target = a.target();
  ActionData src = a;
  auto fn = [src, actor, target](const Word& bs, int x) {
    Vec v = src.apply(bs, x);
    v *= koszul_pair(word_degree(*actor, bs), target->space->degree(x));
    return v;
  };
  return ActionData(a.name() + "^L", Side::left, a.kind(), opposite(actor), target, a.max_len(), fn);
}

// Extension of an action on single letters to words of the target carrier:
// the actor word is cut into consecutive, possibly empty, groups, one per
// letter, and each group passes the letters to its left.
inline Tensor act_on_word(const ActionData& a, const Word& bs, const Word& xs, const GradedSpace& letters) {
  const GradedSpace& A = a.actor()->carrier();
  Tensor out;
  const std::size_t n = xs.size();
  std::function<void(std::size_t, std::size_t, long, long, Tensor)> go = [&](std::size_t i, std::size_t used, long prefix,
                                                                          long e, Tensor acc) {
    if (acc.is_zero()) return;
    if (i == n) {
      if (used == bs.size()) out.add(acc, koszul_pair(1, e));
      return;
    }
    const std::size_t from = (i + 1 == n) ? bs.size() : used;
    for (std::size_t end = from; end <= bs.size(); ++end) {
      Word g = slice(bs, used, end);
      Vec img = a.apply(g, xs[i]);
      if (img.is_zero()) continue;
      const long gdeg = degree_of_word(A, g);
      go(i + 1, end, prefix + letters.degree(xs[i]), e + gdeg * prefix, append_vec(acc, img));
    }
  };
  Tensor start;
  start.add(Word{}, 1);
  go(0, 0, 0, 0, start);
  return out;
}

struct ActionCheckOptions {
  // Negative control: evaluate the product rule without its Koszul sign.
  bool drop_algebra_sign = false;
};

namespace detail {

struct ActionProbe {
  Word bs;
  int x;
};

// Actor words of the given length paired with target basis elements;
// exhaustive within budget, else sampled.
inline std::vector<ActionProbe> action_probes(const std::vector<std::vector<int>>& actor_strata,
                                              const std::vector<int>& targets, int len, const ProbePlan& plan,
                                              ProbeRng& rng) {
  std::vector<ActionProbe> out;
  if (targets.empty()) return out;
  std::vector<int> pool;
  for (const auto& s : actor_strata) pool.insert(pool.end(), s.begin(), s.end());
  double total = static_cast<double>(targets.size());
  for (int l = 0; l < len; ++l) total *= static_cast<double>(pool.size());
  if (total <= static_cast<double>(plan.exhaustive_budget)) {
    for (const Word& w : len == 0 ? std::vector<Word>{Word{}} : all_tuples(pool, len))
      for (int x : targets) out.push_back({w, x});
    return out;
  }
  std::vector<const std::vector<int>*> nonempty;
  for (const auto& s : actor_strata)
    if (!s.empty()) nonempty.push_back(&s);
  for (long s = 0; s < plan.samples; ++s) {
    Word w;
    for (int l = 0; l < len; ++l) {
      const auto& st = *nonempty[rng.below(nonempty.size())];
      w.push_back(st[rng.below(st.size())]);
    }
    out.push_back({w, targets[rng.below(targets.size())]});
  }
  return out;
}

inline std::string action_inputs(const GradedSpace& A, const Word& bs,
                                 const std::vector<std::size_t>& cuts, const std::string& x) {
  return witness_inputs(A, bs, cuts) + " ; " + x;
}

}  // namespace detail

struct ActionProbeSet {
  std::vector<std::vector<int>> actor_strata;
  std::vector<int> targets;
  ProbePlan plan;
};

inline ActionProbeSet default_action_probes(const ActionData& a, const ProbePlan& plan) {
  return ActionProbeSet{{full_pool(a.actor()->carrier())}, full_pool(*a.target()->space), plan};
}

namespace detail {

inline void for_action_probes(const ActionProbeSet& ps, int min_len, int bound, CheckResult& r,
                              const std::function<void(const Word&, int)>& body) {
  ProbeRng rng(ps.plan.seed);
  for (int len = min_len; len + 1 <= ps.plan.max_len; ++len) {
    auto probes = action_probes(ps.actor_strata, ps.targets, len, ps.plan, rng);
    if (len + 1 > bound) {
      r.skipped_unsafe += static_cast<long>(probes.size());
      continue;
    }
    for (const auto& p : probes) {
      ++r.probes;
      body(p.bs, p.x);
    }
  }
}

}  // namespace detail

// Runs the equations for the action's kind on its left form.
inline std::vector<CheckResult> verify_action(const ActionData& input, const ActionProbeSet& ps,
                                              const ActionCheckOptions& opt = {}) {
  const ActionData a = left_form(input);
  const BInfty& B = *a.actor();
  const Target& T = *a.target();
  const GradedSpace& A = B.carrier();
  const GradedSpace& X = *T.space;
  const int bound = std::min(B.op_bound(), a.max_len() + 1);
  std::vector<CheckResult> out;

  CheckResult ass(input.name() + ".assoc", "AssAction");
  detail::for_action_probes(ps, 2, bound, ass, [&](const Word& bs, int x) {
    for (std::size_t cut = 1; cut < bs.size(); ++cut) {
      Word u = slice(bs, 0, cut), v = slice(bs, cut, bs.size());
      Vec lhs = a.apply(star(B, u, v), Vec(x));
      Vec rhs = a.apply(u, a.apply(v, x));
      if (lhs != rhs) {
        ass.fail(detail::make_witness(X, detail::action_inputs(A, bs, {cut}, X.name(x)), lhs, rhs));
        return;
      }
    }
  });
  out.push_back(ass);

  CheckResult leib(input.name() + ".leibniz", "LeibnitzAction");
  detail::for_action_probes(ps, 1, bound, leib, [&](const Word& u, int x) {
    if (T.binfty) return;  // bb targets are handled below with the full d-family
    Vec lhs = T.d(a.apply(u, x));
    Vec rhs = a.apply(d_hat_all(B, u), Vec(x));
    rhs.add(a.apply(u, T.d(x)), koszul_pair(1, word_degree(B, u)));
    if (lhs != rhs) leib.fail(detail::make_witness(X, detail::action_inputs(A, u, {}, X.name(x)), lhs, rhs));
  });
  if (!T.binfty) out.push_back(leib);

  if (a.kind() == ActionKind::algebra) {
    CheckResult alg(input.name() + ".algebra", "AlgebraAction");
    ProbeRng rng(ps.plan.seed + 1);
    std::map<int, std::vector<int>> partners;
    for (int len = 1; len + 1 <= ps.plan.max_len; ++len) {
      auto probes = detail::action_probes(ps.actor_strata, ps.targets, len, ps.plan, rng);
      if (len + 1 > bound) {
        alg.skipped_unsafe += static_cast<long>(probes.size());
        continue;
      }
      std::size_t k = 0;
      for (const auto& p : probes) {
        if (!alg.passed) break;
        // second factor among those whose product with x survives the cut
        auto& ys = partners[p.x];
        if (ys.empty())
          for (int y : ps.targets)
            if (!T.m(Vec(p.x), Vec(y)).is_zero()) ys.push_back(y);
        const auto& pool = ys.empty() ? ps.targets : ys;
        const int a2 = pool[(k++ * 7919u) % pool.size()];
        ++alg.probes;
        Vec lhs = a.apply(p.bs, T.m(Vec(p.x), Vec(a2)));
        Vec rhs;
        for (std::size_t cut = 0; cut <= p.bs.size(); ++cut) {
          Word u1 = slice(p.bs, 0, cut), u2 = slice(p.bs, cut, p.bs.size());
          const int s = opt.drop_algebra_sign ? 1 : koszul_pair(word_degree(B, u2), X.degree(p.x));
          rhs.add(T.m(a.apply(u1, p.x), a.apply(u2, a2)), s);
        }
        if (lhs != rhs)
          alg.fail(detail::make_witness(X, detail::action_inputs(A, p.bs, {}, X.name(p.x) + " * " + X.name(a2)), lhs,
                                        rhs));
      }
    }
    out.push_back(alg);
  }

  if (a.kind() == ActionKind::coalgebra) {
    CheckResult co(input.name() + ".coalgebra", "CoalgebraAction");
    auto fmt = [&](const Coproduct& c) {
      if (c.is_zero()) return std::string("0");
      std::string s;
      for (const auto& [pr, q] : c) s += (s.empty() ? "" : " + ") + ("(" + to_string(q) + ")*" + X.name(pr.first) + "|" + X.name(pr.second));
      return s;
    };
    detail::for_action_probes(ps, 1, bound, co, [&](const Word& u, int x) {
      Coproduct lhs = T.delta(a.apply(u, x));
      Coproduct rhs;
      for (const auto& [pr, q] : T.coprod ? T.coprod(x) : Coproduct{})
        for (std::size_t cut = 0; cut <= u.size(); ++cut) {
          Word u1 = slice(u, 0, cut), u2 = slice(u, cut, u.size());
          Vec l = a.apply(u1, pr.first), r = a.apply(u2, pr.second);
          const Rational s = q * koszul_pair(word_degree(B, u2), X.degree(pr.first));
          for (const auto& [i, c] : l)
            for (const auto& [j, e] : r)
              if (!T.joinable || T.joinable(i, j)) rhs.add({i, j}, s * c * e);
        }
      if (lhs != rhs) {
        Witness w{detail::action_inputs(A, u, {}, X.name(x)), fmt(lhs), fmt(rhs), fmt(lhs - rhs)};
        co.fail(w);
      }
    });
    out.push_back(co);
  }

  if (T.binfty) {
    const BInfty& Bp = *T.binfty;
    const int bbound = std::min(bound, Bp.op_bound());
    CheckResult bl(input.name() + ".bb-leibniz", "LeibnitzAction");
    CheckResult bp(input.name() + ".bb-product", "BBAction");
    ProbeRng rng(ps.plan.seed + 2);
    const std::vector<std::vector<int>> tstrata{ps.targets};
    for (int len = 0; len + 2 <= ps.plan.max_len; ++len) {
      auto probes = detail::action_probes(ps.actor_strata, ps.targets, len, ps.plan, rng);
      for (int tl = 1; len + tl + 1 <= ps.plan.max_len; ++tl) {
        std::size_t k = 0;
        for (const auto& p : probes) {
          Word xs{p.x};
          for (int t = 1; t < tl; ++t) xs.push_back(ps.targets[(k * 31u + static_cast<std::size_t>(t) * 7u) % ps.targets.size()]);
          ++k;
          if (len + tl > bbound) {
            ++bl.skipped_unsafe;
            continue;
          }
          if (len >= 1 && bl.passed) {
            ++bl.probes;
            const int n = static_cast<int>(xs.size());
            Vec lhs = apply_d(Bp, act_on_word(a, p.bs, xs, X));
            Vec rhs;
            if (n == 1) rhs = a.apply(d_hat_all(B, p.bs), Vec(p.x));
            rhs.add(a.apply(p.bs, Bp.d(n, xs)), koszul_pair(1, word_degree(B, p.bs)));
            if (lhs != rhs)
              bl.fail(detail::make_witness(X, detail::action_inputs(A, p.bs, {}, format_word(X, xs)), lhs, rhs));
          }
          if (tl >= 2 && len >= 1 && bp.passed) {
            for (int cut = 1; cut < tl; ++cut) {
              ++bp.probes;
              Word x1 = slice(xs, 0, static_cast<std::size_t>(cut)), x2 = slice(xs, static_cast<std::size_t>(cut), xs.size());
              Vec lhs = a.apply(p.bs, Bp.b(cut, tl - cut, xs));
              Vec rhs;
              for (std::size_t c2 = 0; c2 <= p.bs.size(); ++c2) {
                Word u1 = slice(p.bs, 0, c2), u2 = slice(p.bs, c2, p.bs.size());
                const int s = koszul_pair(word_degree(B, u2), degree_of_word(X, x1));
                Tensor l = act_on_word(a, u1, x1, X), r = act_on_word(a, u2, x2, X);
                for (const auto& [w1, c] : l)
                  for (const auto& [w2, e] : r)
                    rhs.add(Bp.b(static_cast<int>(w1.size()), static_cast<int>(w2.size()), concat(w1, w2)), s * c * e);
              }
              if (lhs != rhs) {
                bp.fail(detail::make_witness(X, detail::action_inputs(A, p.bs, {}, witness_inputs(X, xs, {static_cast<std::size_t>(cut)})),
                                             lhs, rhs));
                break;
              }
            }
          }
        }
      }
    }
    out.push_back(bl);
    out.push_back(bp);
  }
  return out;
}

// Target spaces whose basis is a set of words over a letter space, keyed by
// the word itself.
inline SpacePtr word_space(const GradedSpace& letters, const std::vector<Word>& words, int degree_shift_per_letter,
                           const std::string& label, const std::string& prefix = "") {
  auto s = std::make_shared<GradedSpace>(label);
  for (const Word& w : words) {
    std::string name = prefix + "[";
    for (std::size_t i = 0; i < w.size(); ++i) name += (i ? "|" : "") + letters.name(w[i]);
    s->add(name + "]", degree_of_word(letters, w) + degree_shift_per_letter * static_cast<int>(w.size()), w);
  }
  return s;
}

inline std::vector<Word> words_up_to(const GradedSpace& letters, int max_weight,
                                     const std::function<int(int)>& filt = nullptr, int max_filt = 0) {
  std::vector<Word> out;
  std::vector<std::pair<Word, int>> layer{{Word{}, 0}};
  for (int w = 1; w <= max_weight; ++w) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [p, f] : layer)
      for (int i = 0; i < letters.dim(); ++i) {
        const int nf = f + (filt ? filt(i) : 0);
        if (filt && nf > max_filt) continue;
        Word x = p;
        x.push_back(i);
        next.emplace_back(x, nf);
      }
    for (const auto& pr : next) out.push_back(pr.first);
    layer = std::move(next);
  }
  return out;
}

// Cofree coalgebra T^c(W) on the given words (a subcoalgebra when the word set
// is closed under deconcatenation), with the coderivation of the optional
// differential datum e on W.
inline TargetPtr tensor_coalgebra_target(SpacePtr W, const std::vector<Word>& words, const std::string& label,
                                         std::function<Tensor(const Word&)> coderivation = nullptr) {
  auto S = word_space(*W, words, 0, label);
  auto t = std::make_shared<Target>();
  t->name = label;
  t->space = S;
  t->coprod = [S](int x) {
    Coproduct c;
    for (const auto& [l, r] : deconcatenate(S->key(x))) {
      auto i = S->find(l), j = S->find(r);
      if (i && j) c.add({*i, *j}, 1);
    }
    return c;
  };
  t->joinable = [S](int i, int j) { return S->find(concat(S->key(i), S->key(j))).has_value(); };
  if (coderivation)
    t->diff = [S, coderivation](int x) {
      Vec out;
      for (const auto& [w, c] : coderivation(S->key(x)))
        if (auto i = S->find(w)) out.add(*i, c);
      return out;
    };
  return t;
}

// Free algebra T(W) on the given words, products outside the set dropped.
inline TargetPtr tensor_algebra_target(SpacePtr W, const std::vector<Word>& words, const std::string& label,
                                       std::function<Tensor(const Word&)> derivation = nullptr) {
  auto S = word_space(*W, words, 0, label);
  auto t = std::make_shared<Target>();
  t->name = label;
  t->space = S;
  t->mult = [S](int x, int y) {
    auto i = S->find(concat(S->key(x), S->key(y)));
    return i ? Vec(*i) : Vec{};
  };
  if (derivation)
    t->diff = [S, derivation](int x) {
      Vec out;
      for (const auto& [w, c] : derivation(S->key(x)))
        if (auto i = S->find(w)) out.add(*i, c);
      return out;
    };
  return t;
}

inline Vec tensor_to_vec(const GradedSpace& S, const Tensor& t) {
  Vec out;
  for (const auto& [w, c] : t)
    if (auto i = S.find(w)) out.add(*i, c);
  return out;
}

// Left commuting with right: beta(bs, beta'(x, cs)) = beta'(beta(bs, x), cs).
inline CheckResult check_commutation(const ActionData& left, const ActionData& right, const ActionProbeSet& lps,
                                     const std::vector<std::vector<int>>& right_strata) {
  CheckResult r(left.name() + "|" + right.name() + ".commute", "Commutation");
  const GradedSpace& X = *left.target()->space;
  const int bound = std::min(left.max_len(), right.max_len());
  ProbeRng rng(lps.plan.seed + 3);
  for (int l1 = 1; l1 + 1 <= lps.plan.max_len; ++l1) {
    auto probes = detail::action_probes(lps.actor_strata, lps.targets, l1, lps.plan, rng);
    for (int l2 = 1; l1 + l2 + 1 <= lps.plan.max_len; ++l2) {
      std::size_t k = 0;
      for (const auto& p : probes) {
        if (!r.passed) return r;
        if (l1 > bound || l2 > bound) {
          ++r.skipped_unsafe;
          continue;
        }
        Word cs;
        std::vector<int> pool;
        for (const auto& s : right_strata) pool.insert(pool.end(), s.begin(), s.end());
        if (pool.empty()) return r;
        for (int t = 0; t < l2; ++t) cs.push_back(pool[(k * 13u + static_cast<std::size_t>(t) * 5u + rng.below(pool.size())) % pool.size()]);
        ++k;
        ++r.probes;
        Vec lhs = left.apply(p.bs, right.apply(cs, p.x));
        Vec mid = left.apply(p.bs, p.x);
        Vec rhs = right.apply(cs, mid);
        if (lhs != rhs)
          r.fail(detail::make_witness(X, witness_inputs(left.actor()->carrier(), p.bs, {}) + " ; " + X.name(p.x) + " ; " +
                                             witness_inputs(right.actor()->carrier(), cs, {}),
                                      lhs, rhs));
      }
    }
  }
  return r;
}

}  // namespace binfty
