#pragma once

#include <vector>

#include "binfty/errors.hpp"

namespace binfty {

// Sign of reordering elements of the given degrees so that position i of the
// result holds the element originally at perm[i] (0-based).
inline int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm) {
  const int n = static_cast<int>(degrees.size());
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorKind::InvalidPermutation, "length mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw Error(ErrorKind::InvalidPermutation, "not a bijection");
    seen[p] = true;
  }
  long e = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) e += static_cast<long>(degrees[perm[i]]) * degrees[perm[j]];
  return (e % 2 == 0) ? 1 : -1;
}

// Parity helper: (-1)^(a*b).
inline int koszul_pair(long a, long b) { return ((a * b) % 2 == 0) ? 1 : -1; }

}  // namespace binfty
