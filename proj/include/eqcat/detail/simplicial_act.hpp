#pragma once

// theta^* x for a monotone theta : [b] -> [n], via faces removing the missed
// vertices (top down) followed by degeneracies repeating values.

#include <span>
#include <vector>

#include "eqcat/error.hpp"
#include "eqcat/structure.hpp"

namespace eqcat::detail {

template <class Face, class Degen>
Index simplicial_act(int n, Index x, std::span<const int> theta, Face face, Degen degen) {
  if (theta.empty()) throw InvalidInput("act: empty operator");
  const int b = static_cast<int>(theta.size()) - 1;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    if (theta[p] < 0 || theta[p] > n || (p > 0 && theta[p] < theta[p - 1])) {
      throw InvalidInput("act: operator is not a monotone map into [n]");
    }
  }
  std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
  for (int v : theta) hit[v] = 1;
  int level = n;
  for (int j = n; j >= 0; --j) {
    if (!hit[j]) x = face(level--, j, x);
  }
  std::vector<int> rank(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 0, r = 0; j <= n; ++j) {
    rank[j] = r;
    if (hit[j]) ++r;
  }
  for (int p = 0; p < b; ++p) {
    if (rank[theta[p]] == rank[theta[p + 1]]) x = degen(level++, p, x);
  }
  return x;
}

}  // namespace eqcat::detail
