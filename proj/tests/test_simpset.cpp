#include "doctest.h"

#include <random>

#include "eqcat/error.hpp"
#include "eqcat/simpset.hpp"
#include "oracles.hpp"

using namespace eqcat;

TEST_CASE("standard simplex and boundary sizes match binomial counts") {
  for (int n = 0; n <= 3; ++n) {
    auto d = standard_simplex(n, 3);
    auto b = boundary(n, 3);
    for (int k = 0; k <= 3; ++k) {
      CHECK(d.size(k) == oracle::binom(n + k + 1, k + 1));
      CHECK(b.size(k) == oracle::binom(n + k + 1, k + 1) - oracle::binom(k, n));
    }
  }
}

TEST_CASE("horn misses exactly the top simplex and the k-th face") {
  for (int n = 2; n <= 3; ++n) {
    for (int k = 0; k <= n; ++k) {
      auto h = horn(n, k, n);
      auto b = boundary(n, n);
      CHECK(b.size(n - 1) == h.size(n - 1) + 1);
      auto full = standard_simplex(n, n);
      std::size_t nondeg = 0;
      for (Index x = 0; x < h.size(n - 1); ++x) nondeg += !h.is_degenerate(n - 1, x);
      CHECK(nondeg == static_cast<std::size_t>(n));
      CHECK(is_valid(horn_inclusion(n, k, n)));
      CHECK(full.size(n) == h.size(n) + 1 + n);  // top simplex and degeneracies of face k
    }
  }
}

TEST_CASE("walking isomorphism nerve has 2^(n+1) simplices") {
  auto e = walking_iso_nerve(4);
  for (int n = 0; n <= 4; ++n) CHECK(e.size(n) == (std::size_t{1} << (n + 1)));
}

TEST_CASE("nerve levels count composable strings") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    auto c = oracle::random_category(rng);
    auto x = nerve(c, 3);
    for (int n = 0; n <= 3; ++n) CHECK(x.size(n) == oracle::composable_strings(c, n));
  }
}

TEST_CASE("act agrees with single faces and degeneracies") {
  auto e = walking_iso_nerve(3);
  for (int n = 1; n <= 3; ++n) {
    for (Index x = 0; x < e.size(n); ++x) {
      for (int i = 0; i <= n; ++i) {
        std::vector<int> theta;
        for (int j = 0; j <= n; ++j) {
          if (j != i) theta.push_back(j);
        }
        CHECK(e.act(n, x, theta) == e.face(n, i, x));
      }
    }
  }
  for (int n = 0; n < 3; ++n) {
    for (Index x = 0; x < e.size(n); ++x) {
      for (int i = 0; i <= n; ++i) {
        std::vector<int> theta;
        for (int j = 0; j <= n; ++j) {
          theta.push_back(j);
          if (j == i) theta.push_back(j);
        }
        CHECK(e.act(n, x, theta) == e.degen(n, i, x));
      }
    }
  }
}

TEST_CASE("Yoneda: maps out of a simplex are its simplices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = nerve(oracle::random_category(rng), 2);
    for (int n = 0; n <= 2; ++n) {
      CHECK(hom_set(standard_simplex(n, 2), x).size() == x.size(n));
      for (Index s = 0; s < x.size(n); ++s) CHECK(is_valid(yoneda_map(x, n, s)));
    }
  }
}

TEST_CASE("nerves of categories fill inner horns; boundaries do not") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(is_quasicategory(nerve(oracle::random_category(rng), 3), 3).passes());
  }
  CHECK(is_quasicategory(standard_simplex(2, 3), 3).passes());
  auto b = boundary(2, 2);
  auto r = is_quasicategory(b, 2);
  CHECK_FALSE(r.passes());
  CHECK(r.failures.size() == 1);
  CHECK(r.failures[0].k == 1);
}

TEST_CASE("components of a disjoint union") {
  auto a = FiniteCategory::disjoint_union(FiniteCategory::ordinal(2), FiniteCategory::walking_isomorphism());
  auto c = pi0(nerve(a, 1));
  CHECK(c.count == 2);
  CHECK_FALSE(c.no_edges);
  auto d = pi0(nerve(a, 0));
  CHECK(d.count == 5);
  CHECK(d.no_edges);
}

TEST_CASE("category isomorphism via 2-truncated nerves") {
  auto a = FiniteCategory::free_on_dag(3, {{0, 1}, {1, 2}});
  auto b = FiniteCategory::ordinal(2);
  CHECK(categories_isomorphic(a, b));
  auto c = FiniteCategory::free_on_dag(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(categories_isomorphic(c, b));
}

TEST_CASE("gluing two edges end to start gives an unfillable spine") {
  auto pt = standard_simplex(0, 2);
  auto d1 = standard_simplex(1, 2);
  SSetMap f{pt, d1, yoneda_map(d1, 0, 1).components};
  SSetMap g{pt, d1, yoneda_map(d1, 0, 0).components};
  auto p = pushout(f, g);
  CHECK(p.object.size(0) == 3);
  CHECK(p.object.size(1) == 5);
  CHECK(is_quasicategory(p.object, 2).failures.size() == 1);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(FiniteCategory::free_on_dag(2, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(horn(2, 3, 2), InvalidInput);
  auto e = walking_iso_nerve(1);
  const int bad[] = {1, 0};
  CHECK_THROWS_AS(e.act(1, 0, bad), InvalidInput);
}
