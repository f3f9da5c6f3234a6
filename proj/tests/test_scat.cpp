#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "eqcat/error.hpp"
#include "eqcat/homology.hpp"
#include "eqcat/scat.hpp"
#include "oracles.hpp"

using namespace eqcat;

namespace {

/// Functors between finite categories by exhaustive assignment.
std::size_t brute_functor_count(const FiniteCategory& c, const FiniteCategory& d) {
  std::size_t count = 0;
  std::vector<Index> obj(c.objects, 0), mor(c.morphism_count(), 0);
  std::function<void(std::size_t)> assign_morphisms = [&](std::size_t f) {
    if (f == c.morphism_count()) {
      for (Index x = 0; x < c.objects; ++x) {
        if (mor[c.identity[x]] != d.identity[obj[x]]) return;
      }
      for (Index g = 0; g < c.morphism_count(); ++g) {
        for (Index h = 0; h < c.morphism_count(); ++h) {
          const Index gh = c.compose(g, h);
          if (gh != kNone && mor[gh] != d.compose(mor[g], mor[h])) return;
        }
      }
      ++count;
      return;
    }
    for (Index m : d.hom(obj[c.src[f]], obj[c.tgt[f]])) {
      mor[f] = m;
      assign_morphisms(f + 1);
    }
  };
  std::function<void(std::size_t)> assign_objects = [&](std::size_t x) {
    if (x == c.objects) return assign_morphisms(0);
    for (Index y = 0; y < d.objects; ++y) {
      obj[x] = y;
      assign_objects(x + 1);
    }
  };
  assign_objects(0);
  return count;
}

CellAttachment zero_cell(const SCategory& c, Index a, Index b) {
  const auto bd = boundary(0, c.trunc);
  return {a, b, SSetMap{bd, c.map(a, b), PresheafMap(static_cast<std::size_t>(c.trunc) + 1)}};
}

}  // namespace

TEST_CASE("discrete simplicial categories recover their categories") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    auto c = oracle::random_category(rng);
    auto s = SCategory::from_category(c, 2);
    CHECK(categories_isomorphic(pi0_category(s), c));
    CHECK(is_isomorphic(simplicial_nerve(s), transpose(nerve(c, 2))).has_value());
  }
  auto u = UK(standard_simplex(1, 2));
  CHECK(pi0_category(u).morphism_count() == 3);
  auto ub = UK(boundary(1, 2));
  CHECK(pi0_category(ub).morphism_count() == 4);
  CHECK(pi0_category(ub).hom(0, 1).size() == 2);
}

TEST_CASE("simplicial nerve sizes and coproducts") {
  auto n = simplicial_nerve(UK(standard_simplex(0, 2)));
  for (int k = 0; k <= 2; ++k) CHECK(n.size(1, k) == 3);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 4; ++trial) {
    auto a = SCategory::from_category(oracle::random_category(rng), 2);
    auto b = UK(oracle::random_subcomplex(rng, 2, 2));
    auto lhs = simplicial_nerve(coproduct(a, b));
    auto rhs = coproduct(std::vector<TruncBiSSet>{simplicial_nerve(a), simplicial_nerve(b)}).object;
    CHECK(is_isomorphic(lhs, rhs).has_value());
  }
}

TEST_CASE("functor search matches exhaustive enumeration") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = oracle::random_category(rng);
    auto d = oracle::random_category(rng);
    auto homs = sfunctor_homs(SCategory::from_category(c, 1), SCategory::from_category(d, 1));
    CHECK(homs.size() == brute_functor_count(c, d));
    for (const auto& f : homs) CHECK(is_valid(f));
    // the nerve is fully faithful
    CHECK(hom_set(nerve(c, 2), nerve(d, 2)).size() == homs.size());
  }
}

TEST_CASE("functors between U-categories are simplicial maps") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    auto k = oracle::random_subcomplex(rng, 2, 2);
    auto l = oracle::random_subcomplex(rng, 2, 2);
    const auto homs = sfunctor_homs(UK(k), UK(l));
    std::size_t preserving_ends = 0;
    for (const auto& f : homs) preserving_ends += f.object_map == std::vector<Index>{0, 1};
    CHECK(preserving_ends == hom_set(k, l).size());
    for (const auto& f : hom_set(k, l)) CHECK(is_valid(U_map(SSetMap{k, l, f})));
  }
}

TEST_CASE("Dwyer-Kan evidence") {
  auto id = identity(UK(standard_simplex(2, 2)));
  auto ev = dk_equivalence_evidence(id);
  CHECK(ev.label == "EVIDENCE");
  CHECK(ev.all_positive());
  CHECK(is_isomorphism(id));
  auto horn_in = U_map(horn_inclusion(2, 1, 2));
  auto hev = dk_equivalence_evidence(horn_in);
  CHECK(hev.all_positive());
  CHECK_FALSE(is_isomorphism(horn_in));
  auto bd_in = U_map(boundary_inclusion(2, 2));
  CHECK_FALSE(dk_equivalence_evidence(bd_in).all_positive());
  auto point = yoneda_map(boundary(1, 2), 0, 0);
  auto pev = dk_equivalence_evidence(U_map(point));
  CHECK_FALSE(pev.pi0_fully_faithful);
  CHECK(pev.pi0_essentially_surjective);
}

TEST_CASE("attaching objects and free morphisms") {
  auto base = SCategory::from_category(FiniteCategory::discrete(2), 2);
  auto more = attach_objects(base, 1);
  CHECK(more.result.objects == 3);
  CHECK(is_valid(more.from_base));

  std::mt19937 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    auto cat = oracle::random_free_dag(rng, 4);
    auto c = SCategory::from_category(cat, 1);
    const Index a = static_cast<Index>(rng() % c.objects);
    Index b = static_cast<Index>(rng() % c.objects);
    // a cell from a to b needs no base path from b back to a
    if (!cat.hom(b, a).empty()) continue;
    auto r = attach_cells(c, 0, {zero_cell(c, a, b)}, 4);
    CHECK(is_valid(r.from_base));
    CHECK(is_valid(r.from_cells[0]));
    for (Index u = 0; u < c.objects; ++u) {
      for (Index v = 0; v < c.objects; ++v) {
        const std::size_t expected = cat.hom(u, v).size() + cat.hom(u, a).size() * cat.hom(b, v).size();
        for (int k = 0; k <= 1; ++k) CHECK(r.result.map(u, v).size(k) == expected);
      }
    }
  }

  auto three = SCategory::from_category(FiniteCategory::discrete(3), 2);
  auto chain = attach_cells(three, 0, {zero_cell(three, 0, 1), zero_cell(three, 1, 2)}, 2);
  CHECK(chain.result.map(0, 2).size(0) == 1);
  CHECK(chain.longest_word == 2);
  CHECK_THROWS_AS(attach_cells(three, 0, {zero_cell(three, 0, 1), zero_cell(three, 1, 2)}, 1), BudgetExceeded);
  CHECK_THROWS_AS(attach_cells(three, 0, {zero_cell(three, 0, 0)}, 10), BudgetExceeded);
  CHECK_THROWS_AS(attach_cells(three, 0, {zero_cell(three, 0, 1), zero_cell(three, 1, 0)}, 10), BudgetExceeded);
}

TEST_CASE("attaching a one-cell between parallel morphisms") {
  auto c = SCategory::from_category(FiniteCategory::free_on_dag(2, {{0, 1}, {0, 1}}), 2);
  const auto bd = boundary(1, 2);
  SSetMap phi{bd, c.map(0, 1), PresheafMap(3)};
  for (int k = 0; k <= 2; ++k) {
    for (Index s = 0; s < bd.size(k); ++s) phi.components[k].push_back(bd.vertex(k, s, 0));
  }
  REQUIRE(is_valid(phi));
  auto r = attach_cells(c, 1, {{0, 1, phi}}, 2);
  for (int k = 0; k <= 2; ++k) CHECK(r.result.map(0, 1).size(k) == static_cast<std::size_t>(2 + k));
  CHECK(pi0(r.result.map(0, 1)).count == 1);
  CHECK(homology(r.result.map(0, 1), 1).groups[1].betti == 0);
  CHECK(is_valid(r.from_cells[0]));
  CHECK(pi0_category(r.result).hom(0, 1).size() == 1);
}

TEST_CASE("cube resolutions") {
  for (int k = 0; k <= 3; ++k) {
    auto res = resolution(k, 2);
    for (int n = 0; n <= 2; ++n) {
      const auto expected = static_cast<std::size_t>(std::pow(n + 2, std::max(k - 1, 0)));
      CHECK(res.map(0, static_cast<Index>(k)).size(n) == expected);
    }
  }
  for (int b = 1; b <= 3; ++b) {
    for (int skip = 0; skip <= b; ++skip) {
      std::vector<int> coface;
      for (int v = 0; v <= b; ++v) {
        if (v != skip) coface.push_back(v);
      }
      CHECK(is_valid(resolution_map(coface, b, 2)));
    }
  }
}

TEST_CASE("coherent nerve") {
  auto hc = coherent_nerve(UK(standard_simplex(0, 1)), 1);
  CHECK(hc.size(0) == 2);
  CHECK(hc.size(1) == 3);
  std::mt19937 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    auto cat = oracle::random_category(rng);
    auto hn = coherent_nerve(SCategory::from_category(cat, 2), 3);
    CHECK(is_isomorphic(hn, nerve(cat, 3)).has_value());
  }
  auto loop = coherent_nerve(UK(boundary(1, 2)), 2);
  CHECK(loop.size(1) == 4);
}
