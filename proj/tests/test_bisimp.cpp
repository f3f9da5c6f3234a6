#include "doctest.h"

#include <random>

#include "eqcat/bisimp.hpp"
#include "eqcat/error.hpp"
#include "oracles.hpp"

using namespace eqcat;

namespace {

TruncBiSSet random_space(std::mt19937& rng, int trunc) {
  auto k = oracle::random_subcomplex(rng, 1 + static_cast<int>(rng() % 2), trunc);
  auto c = nerve(oracle::random_poset(rng, 2), trunc);
  return product(transpose(c), const_space(k));
}

SegalPrecategory random_precategory(std::mt19937& rng, int trunc) {
  if (rng() % 2) return SegalPrecategory(transpose(nerve(oracle::random_category(rng), trunc)));
  return reduce(random_space(rng, trunc)).object;
}

}  // namespace

TEST_CASE("constant and transposed spaces") {
  CHECK(const_space(standard_simplex(0, 2)) == TruncBiSSet::point(2));
  CHECK(transpose(standard_simplex(0, 2)) == TruncBiSSet::point(2));
  auto t = transpose(standard_simplex(1, 2));
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) CHECK(t.size(m, n) == static_cast<std::size_t>(m + 2));
  }
  auto et = transpose(walking_iso_nerve(3));
  for (int m = 0; m <= 3; ++m) CHECK(et.size(m, 1) == (std::size_t{1} << (m + 1)));
  CHECK(is_valid(transpose_vertices(standard_simplex(2, 2))));
}

TEST_CASE("Segal maps of transposed nerves are isomorphisms") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    auto w = transpose(nerve(oracle::random_category(rng), 3));
    for (int k = 2; k <= 3; ++k) {
      auto r = segal_check(w, k);
      CHECK(r.isomorphism);
      CHECK(r.pi0_bijective);
      CHECK(r.homology_agrees);
    }
  }
  auto pt = segal_check(transpose(standard_simplex(0, 2)), 2);
  CHECK(pt.isomorphism);
  auto bad = segal_check(transpose(horn(2, 1, 2)), 2);
  CHECK_FALSE(bad.isomorphism);
  CHECK_FALSE(bad.notes.empty());
}

TEST_CASE("completeness evidence") {
  auto poset = completeness_evidence(transpose(nerve(FiniteCategory::ordinal(1), 2)));
  CHECK(poset.label == "EVIDENCE");
  CHECK(poset.pi0_bijective);
  auto pt = completeness_evidence(TruncBiSSet::point(2));
  CHECK(pt.isomorphism);
  auto group = completeness_evidence(transpose(nerve(oracle::cyclic_group_category(2), 3)));
  CHECK_FALSE(group.pi0_bijective);
  CHECK(pi0(group.level_zero).count == 1);
}

TEST_CASE("reduction of precategories and constant spaces") {
  std::mt19937 rng(4);
  auto x = SegalPrecategory(transpose(nerve(oracle::random_category(rng), 2)));
  CHECK(is_isomorphic(reduce(x.space()).object.space(), x.space()).has_value());
  auto k = oracle::random_subcomplex(rng, 3, 2);
  auto r = reduce(const_space(k));
  CHECK(is_isomorphic(r.object.space(), const_space(discrete(pi0(k).count, 2))).has_value());
}

TEST_CASE("reduction: universal property and idempotence") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_space(rng, 2);
    auto y = random_precategory(rng, 2);
    auto r = reduce(x);
    auto via = hom_set(r.object.space(), y.space());
    auto direct = hom_set(x, y.space());
    CHECK(via.size() == direct.size());
    for (const auto& f : direct) {
      auto g = reduce_extend(r, BiMap{x, y.space(), f});
      CHECK(maps_equal(compose(g.components, r.unit.components), f));
    }
    auto rr = reduce(r.object.space());
    CHECK(is_isomorphic(rr.object.space(), r.object.space()).has_value());
  }
}

TEST_CASE("Reedy generators") {
  auto g00 = reedy_generator(0, 0, 2);
  CHECK(g00.source.presheaf().total_size() == 0);
  CHECK(g00.target == TruncBiSSet::point(2));
  auto g10 = reedy_generator(1, 0, 2);
  CHECK(g10.source.size(0, 0) == 2);
  CHECK(g10.target.size(0, 1) == 3);
  auto g11 = reedy_generator(1, 1, 2);
  CHECK(is_valid(g11));
  CHECK(is_injective(g11.components));
  auto d = standard_simplex(1, 2);
  auto b = boundary(1, 2);
  for (int a = 0; a <= 2; ++a) {
    for (int c = 0; c <= 2; ++c) {
      // horizontal a carries Delta[n]^t, vertical c carries Delta[m]
      CHECK(g11.source.size(a, c) == b.size(c) * d.size(a) + d.size(c) * b.size(a) - b.size(c) * b.size(a));
    }
  }
}

TEST_CASE("P and Q constructions") {
  for (int n = 0; n <= 2; ++n) {
    CHECK(build_P(0, n, 2).space().presheaf().total_size() == 0);
    CHECK(is_valid(i_mn(1, n, 2)));
  }
  CHECK(is_isomorphic(build_P(1, 0, 2).space(), transpose(standard_simplex(0, 2))).has_value());
  for (int n = 1; n <= 2; ++n) {
    // two copies of Delta[n]^t glued along their vertices
    auto p = build_P(1, n, 2).space();
    auto t = transpose(standard_simplex(n, 2));
    for (int a = 0; a <= 2; ++a) CHECK(p.size(a, 0) == 2 * t.size(a, 0) - static_cast<std::size_t>(n + 1));
    CHECK_FALSE(is_isomorphic(p, t).has_value());
  }
  for (int n = 0; n <= 2; ++n) {
    auto gen = projective_generator(2, n, 2);
    CHECK(is_isomorphic(build_P(2, n, 2).space(), reduce(gen.source).object.space()).has_value());
    CHECK(is_isomorphic(build_Q(2, n, 2).space(), reduce(gen.target).object.space()).has_value());
  }
}

TEST_CASE("comparison functors on transposes and constants") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    auto k = (trial % 2) ? nerve(oracle::random_category(rng), 3) : oracle::random_subcomplex(rng, 3, 3);
    CHECK(diagonal(transpose(k)) == k);
    CHECK(is_isomorphic(total(transpose(k)), k).has_value());
    auto p = p_star(const_space(k));
    CHECK(p == discrete(k.size(0), 3));
  }
  auto x = random_space(rng, 2);
  CHECK(total(x).size(0) == x.size(0, 0));
  CHECK(diagonal(x).size(2) == x.size(2, 2));
}

TEST_CASE("j_star agrees with p_star on precategories") {
  std::mt19937 rng(2);
  auto x = random_precategory(rng, 2);
  CHECK(j_star(x) == p_star(x.space()));
}

TEST_CASE("tensor, cotensor and mapping space adjunctions") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    auto x = random_precategory(rng, 1);
    auto y = random_precategory(rng, 1);
    auto k = oracle::random_subcomplex(rng, 1, 1);
    const auto a = hom_set(tensor(x, k).space(), y.space()).size();
    const auto b = hom_set(k, mapping_space(x.space(), y.space()).space).size();
    const auto c = hom_set(x.space(), cotensor(y, k).space()).size();
    CHECK(a == b);
    CHECK(b == c);
  }
  auto x = random_precategory(rng, 2);
  CHECK(is_isomorphic(tensor(x, standard_simplex(0, 2)).space(), x.space()).has_value());
}

TEST_CASE("homotopy category of a transposed nerve is the category") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    auto c = oracle::random_category(rng);
    auto x = SegalPrecategory(transpose(nerve(c, 3)));
    CHECK(categories_isomorphic(ho_category(x), c));
    for (Index a = 0; a < c.objects; ++a) {
      for (Index b = 0; b < c.objects; ++b) CHECK(precat_mapping_space(x, a, b).size(0) == c.hom(a, b).size());
    }
  }
  auto spine = SegalPrecategory(transpose(horn(2, 1, 2)));
  CHECK_THROWS_AS(ho_category(spine), SegalFailure);
}
