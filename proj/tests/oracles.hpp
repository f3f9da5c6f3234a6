#pragma once

// Independent reference computations and random generators for tests.

#include <cstddef>
#include <cmath>
#include <random>
#include <vector>

#include "eqcat/presheaf.hpp"
#include "eqcat/simpset.hpp"

namespace oracle {

inline std::size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of composable n-strings, counted through hom-set sizes.
inline std::size_t composable_strings(const eqcat::FiniteCategory& c, int n) {
  if (n == 0) return c.objects;
  std::vector<std::size_t> ways(c.objects, 1);  // strings ending at each object
  for (int step = 0; step < n; ++step) {
    std::vector<std::size_t> next(c.objects, 0);
    for (std::size_t f = 0; f < c.morphism_count(); ++f) next[c.tgt[f]] += ways[c.src[f]];
    ways = next;
  }
  std::size_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

inline eqcat::FiniteCategory random_poset(std::mt19937& rng, int max_objects = 4) {
  const int n = std::uniform_int_distribution<int>(1, max_objects)(rng);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    leq[i][i] = true;
    for (int j = i + 1; j < n; ++j) leq[i][j] = rng() % 2 == 0;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
      }
    }
  }
  return eqcat::FiniteCategory::poset(leq);
}

inline eqcat::FiniteCategory random_free_dag(std::mt19937& rng, int max_objects = 4) {
  const int n = std::uniform_int_distribution<int>(1, max_objects)(rng);
  std::vector<std::pair<eqcat::Index, eqcat::Index>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng() % 3 == 0) edges.emplace_back(i, j);
    }
  }
  return eqcat::FiniteCategory::free_on_dag(n, edges);
}

inline eqcat::FiniteCategory cyclic_group_category(int order) {
  std::vector<std::vector<eqcat::Index>> mul(order, std::vector<eqcat::Index>(order));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) mul[a][b] = (a + b) % order;
  }
  return eqcat::FiniteCategory::monoid(mul, 0);
}

inline eqcat::FiniteCategory random_category(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0:
      return random_poset(rng);
    case 1:
      return random_free_dag(rng);
    case 2:
      return cyclic_group_category(1 + static_cast<int>(rng() % 3));
    default:
      return eqcat::FiniteCategory::disjoint_union(random_poset(rng, 2), cyclic_group_category(2));
  }
}

}  // namespace oracle

namespace oracle {

/// Random subcomplex of Delta[n]: a random face-closed family of vertex sets.
inline eqcat::TruncSSet random_subcomplex(std::mt19937& rng, int n, int trunc) {
  const unsigned full = (1u << (n + 1)) - 1;
  std::vector<char> in(full + 1, 0);
  for (unsigned m = 1; m <= full; ++m) {
    if (__builtin_popcount(m) == 1 || rng() % 2 == 0) in[m] = 1;
  }
  // close downward, keeping only sets all of whose facets survive
  for (unsigned m = full; m >= 1; --m) {
    if (!in[m] || __builtin_popcount(m) == 1) continue;
    for (int v = 0; v <= n; ++v) {
      if ((m >> v & 1) && !in[m & ~(1u << v)]) in[m] = 0;
    }
  }
  for (unsigned m = 1; m <= full; ++m) {
    for (unsigned sub = (m - 1) & m; sub; sub = (sub - 1) & m) {
      if (in[m] && !in[sub]) in[m] = 0;
    }
  }
  std::vector<std::vector<char>> keep(trunc + 1);
  for (int k = 0; k <= trunc; ++k) {
    for (const auto& s : eqcat::monotone_sequences(k, n)) {
      unsigned m = 0;
      for (int v : s) m |= 1u << v;
      keep[k].push_back(in[m]);
    }
  }
  return eqcat::TruncSSet(eqcat::subpresheaf(eqcat::standard_simplex(n, trunc).presheaf(), keep).object);
}

/// Rank over the rationals by fraction-free elimination on long double copies.
inline std::size_t rational_rank(std::vector<std::vector<long double>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && std::abs(m[p][c]) < 1e-9) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || std::abs(m[r][c]) < 1e-9) continue;
      const long double q = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= q * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
