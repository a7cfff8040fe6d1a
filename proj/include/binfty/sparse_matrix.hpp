#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "binfty/rational.hpp"

namespace binfty {

using SparseRow = std::map<std::size_t, Rational>;

class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows = 0, std::size_t cols = 0) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (v == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }

  void add(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (v == 0) return;
    auto [it, fresh] = entries_.try_emplace({r, c}, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  Rational get(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const { return entries_; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.entries_[{rc.second, rc.first}] = v;
    return t;
  }

  std::vector<SparseRow> row_maps() const {
    std::vector<SparseRow> out(rows_);
    for (const auto& [rc, v] : entries_) out[rc.first][rc.second] = v;
    return out;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix index");
  }

  std::size_t rows_, cols_;
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

struct Echelon {
  std::vector<SparseRow> rows;        // reduced rows, pivot entry 1
  std::vector<std::size_t> pivots;    // pivot column of each row, increasing
};

// Reduced row echelon form; pivot search runs over columns in index order,
// so the result depends only on the row space, not on insertion order.
inline Echelon rref(std::vector<SparseRow> rows, std::size_t cols) {
  Echelon e;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t best = rows.size();
    std::size_t best_len = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      auto it = rows[r].find(c);
      if (it == rows[r].end()) continue;
      if (best == rows.size() || rows[r].size() < best_len) {
        best = r;
        best_len = rows[r].size();
      }
    }
    if (best == rows.size()) continue;
    used[best] = true;
    SparseRow piv = std::move(rows[best]);
    rows[best].clear();
    Rational s = inverse(piv.at(c));
    for (auto& [k, v] : piv) v *= s;
    auto eliminate = [&](SparseRow& row) {
      auto it = row.find(c);
      if (it == row.end()) return;
      Rational f = it->second;
      for (const auto& [k, v] : piv) {
        auto [jt, fresh] = row.try_emplace(k, -f * v);
        if (!fresh) {
          jt->second -= f * v;
          if (jt->second == 0) row.erase(jt);
        }
      }
    };
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!used[r]) eliminate(rows[r]);
    for (auto& done : e.rows) eliminate(done);
    e.rows.push_back(std::move(piv));
    e.pivots.push_back(c);
  }
  return e;
}

struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseRow> kernel_basis;  // column-index -> value, rows in reduced echelon form
};

inline RankKernel rank_kernel(const SparseMatrix& m) {
  Echelon e = rref(m.row_maps(), m.cols());
  RankKernel out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      auto it = e.rows[i].find(f);
      if (it != e.rows[i].end()) v[e.pivots[i]] = -it->second;
    }
    out.kernel_basis.push_back(std::move(v));
  }
  out.kernel_basis = rref(std::move(out.kernel_basis), m.cols()).rows;
  return out;
}

inline std::size_t rank(const SparseMatrix& m) { return rref(m.row_maps(), m.cols()).pivots.size(); }

inline std::size_t rank_of_rows(const std::vector<SparseRow>& rows, std::size_t cols) {
  return rref(rows, cols).pivots.size();
}

// Tests whether v lies in the span of the given rows.
inline bool in_row_span(const std::vector<SparseRow>& rows, const SparseRow& v, std::size_t cols) {
  if (v.empty()) return true;
  std::size_t r0 = rank_of_rows(rows, cols);
  auto ext = rows;
  ext.push_back(v);
  return rank_of_rows(ext, cols) == r0;
}

inline SparseRow mat_vec(const SparseMatrix& m, const SparseRow& v) {
  SparseRow out;
  for (const auto& [rc, a] : m.entries()) {
    auto it = v.find(rc.second);
    if (it == v.end()) continue;
    auto [jt, fresh] = out.try_emplace(rc.first, a * it->second);
    if (!fresh) {
      jt->second += a * it->second;
      if (jt->second == 0) out.erase(jt);
    }
  }
  return out;
}

}  // namespace binfty
