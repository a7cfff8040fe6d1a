#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "binfty/errors.hpp"
#include "binfty/lincomb.hpp"

namespace binfty {

// Structured label of a basis element. Plain spaces use {index}; derived
// spaces (Hom-spaces, tensor words, direct sums) encode their structure here.
using Key = std::vector<int>;

// Finite basis with integer degrees. Construction order fixes the global
// lexicographic order on basis tuples.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::string label) : label_(std::move(label)) {}

  int add(const std::string& name, int degree, Key key = {}) {
    int idx = static_cast<int>(names_.size());
    if (key.empty()) key = {idx};
    if (by_name_.count(name)) throw Error(ErrorKind::InvalidInput, "duplicate basis name '" + name + "'");
    if (by_key_.count(key)) throw Error(ErrorKind::InvalidInput, "duplicate basis key for '" + name + "'");
    names_.push_back(name);
    degrees_.push_back(degree);
    keys_.push_back(key);
    by_name_.emplace(name, idx);
    by_key_.emplace(std::move(key), idx);
    return idx;
  }

  int dim() const { return static_cast<int>(names_.size()); }
  int degree(int i) const { return degrees_.at(i); }
  const std::string& name(int i) const { return names_.at(i); }
  const Key& key(int i) const { return keys_.at(i); }
  const std::string& label() const { return label_; }

  std::optional<int> find(const Key& k) const {
    auto it = by_key_.find(k);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_name(const std::string& n) const {
    auto it = by_name_.find(n);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  int index_of(const std::string& n) const {
    auto i = find_name(n);
    if (!i) throw Error(ErrorKind::InvalidInput, "unknown basis element '" + n + "' in " + label_);
    return *i;
  }

  int min_degree() const {
    int m = 0;
    for (std::size_t i = 0; i < degrees_.size(); ++i) m = (i == 0 || degrees_[i] < m) ? degrees_[i] : m;
    return m;
  }
  int max_degree() const {
    int m = 0;
    for (std::size_t i = 0; i < degrees_.size(); ++i) m = (i == 0 || degrees_[i] > m) ? degrees_[i] : m;
    return m;
  }

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::vector<Key> keys_;
  std::unordered_map<std::string, int> by_name_;
  std::map<Key, int> by_key_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// Vectors are sparse combinations of basis indices of some GradedSpace.
using Vec = LinComb<int>;

inline int degree_of_word(const GradedSpace& s, const std::vector<int>& w) {
  int d = 0;
  for (int i : w) d += s.degree(i);
  return d;
}

// Degree of a vector if homogeneous; nullopt for zero or mixed.
inline std::optional<int> homogeneous_degree(const GradedSpace& s, const Vec& v) {
  std::optional<int> d;
  for (const auto& [i, c] : v) {
    if (!d) d = s.degree(i);
    else if (*d != s.degree(i)) return std::nullopt;
  }
  return d;
}

inline std::string format_vec(const GradedSpace& s, const Vec& v) {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) out += " + ";
    first = false;
    out += "(" + to_string(c) + ")*" + s.name(i);
  }
  return out;
}

}  // namespace binfty
