#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binfty/koszul.hpp"
#include "binfty/multimap.hpp"

namespace binfty {

// Truncated Hom(+_{m} src^(x)m, tgt). Basis element key: {out, in_1, .., in_m},
// the cochain sending the basis word (in_1..in_m) to out and every other word
// to 0. Degree = deg(out) - sum deg(in_i).
struct HomSpace {
  SpacePtr space;
  SpacePtr src;
  SpacePtr tgt;
  int min_arity = 1;
  int max_arity = 1;

  static int arity_of(const Key& k) { return static_cast<int>(k.size()) - 1; }
};

inline std::string hom_basis_name(const GradedSpace& src, const GradedSpace& tgt, const Key& k) {
  std::string n = tgt.name(k[0]) + "<-(";
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (i > 1) n += ",";
    n += src.name(k[i]);
  }
  return n + ")";
}

inline HomSpace make_hom_space(SpacePtr src, SpacePtr tgt, int min_arity, int max_arity, const std::string& label) {
  auto s = std::make_shared<GradedSpace>(label);
  std::vector<Word> words{Word{}};
  for (int m = 0; m <= max_arity; ++m) {
    if (m > 0) {
      std::vector<Word> next;
      for (const Word& w : words)
        for (int i = 0; i < src->dim(); ++i) {
          Word x = w;
          x.push_back(i);
          next.push_back(std::move(x));
        }
      words = std::move(next);
    }
    if (m < min_arity) continue;
    for (const Word& w : words)
      for (int o = 0; o < tgt->dim(); ++o) {
        Key k{o};
        k.insert(k.end(), w.begin(), w.end());
        s->add(hom_basis_name(*src, *tgt, k), tgt->degree(o) - degree_of_word(*src, w), k);
      }
  }
  return HomSpace{s, std::move(src), std::move(tgt), min_arity, max_arity};
}

// Composite head o (slot_1 (x) .. (x) slot_k) of basis cochains. A null slot is
// the identity on the corresponding head input. Inserted cochains map words of
// `src` into `mid`; the head's inputs live in `mid` (identity slots require
// mid == src). Returns the Koszul sign and the key of the composite, or
// nullopt when some inserted output does not match the head input.
inline std::optional<std::pair<int, Key>> compose_keys(const Key& head, const std::vector<const Key*>& slots,
                                                       const GradedSpace& src, const GradedSpace& mid) {
  Key out{head[0]};
  long prefix = 0;
  long e = 0;
  for (std::size_t j = 0; j + 1 < head.size(); ++j) {
    const int h = head[j + 1];
    const Key* g = j < slots.size() ? slots[j] : nullptr;
    if (!g) {
      out.push_back(h);
      prefix += src.degree(h);
      continue;
    }
    if ((*g)[0] != h) return std::nullopt;
    long in_deg = 0;
    for (std::size_t t = 1; t < g->size(); ++t) in_deg += src.degree((*g)[t]);
    const long gdeg = mid.degree(h) - in_deg;
    e += gdeg * prefix;
    out.insert(out.end(), g->begin() + 1, g->end());
    prefix += in_deg;
  }
  return std::make_pair((e % 2 == 0) ? 1 : -1, out);
}

// Splits a vector of the Hom carrier into one MultiMap per arity.
inline std::map<int, MultiMap> to_multimaps(const HomSpace& h, const Vec& v) {
  std::map<int, MultiMap> out;
  for (const auto& [i, c] : v) {
    const Key& k = h.space->key(i);
    const int m = HomSpace::arity_of(k);
    const int deg = h.space->degree(i);
    auto it = out.find(m);
    if (it == out.end()) it = out.emplace(m, MultiMap(m, deg, h.src, h.tgt)).first;
    if (it->second.degree != deg) throw Error(ErrorKind::NotHomogeneous, "mixed degrees within one arity");
    Vec img = it->second.apply(Word(k.begin() + 1, k.end()));
    img.add(k[0], c);
    it->second.set(Word(k.begin() + 1, k.end()), img);
  }
  return out;
}

inline Vec from_multimap(const HomSpace& h, const MultiMap& f) {
  Vec out;
  for (const auto& [in, img] : f.table)
    for (const auto& [o, c] : img) {
      Key k{o};
      k.insert(k.end(), in.begin(), in.end());
      auto idx = h.space->find(k);
      if (idx) out.add(*idx, c);
    }
  return out;
}

}  // namespace binfty
