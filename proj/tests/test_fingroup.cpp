#include "doctest.h"

#include <functional>

#include "eqcat/error.hpp"
#include "eqcat/fingroup.hpp"

using namespace eqcat;

namespace {

// Every subset closed under the product (finite, so also under inverses).
std::vector<std::vector<Index>> brute_force_subgroups(const FiniteGroup& g) {
  std::vector<std::vector<Index>> out;
  for (unsigned mask = 1; mask < (1u << g.order()); ++mask) {
    if (!(mask >> g.id() & 1)) continue;
    bool closed = true;
    for (Index a = 0; a < g.order() && closed; ++a) {
      for (Index b = 0; b < g.order() && closed; ++b) {
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> g.mul(a, b) & 1)) closed = false;
      }
    }
    if (!closed) continue;
    std::vector<Index> m;
    for (Index a = 0; a < g.order(); ++a) {
      if (mask >> a & 1) m.push_back(a);
    }
    out.push_back(m);
  }
  return out;
}

// All functions between the point sets that are equivariant.
std::size_t brute_force_equivariant_maps(const GSet& a, const GSet& b) {
  std::size_t count = 0;
  std::vector<Index> f(a.size, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size) {
      count += is_equivariant(a, b, f);
      return;
    }
    for (Index y = 0; y < b.size; ++y) {
      f[i] = y;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("group factories satisfy the axioms") {
  CHECK(FiniteGroup::trivial().order() == 1);
  CHECK(FiniteGroup::cyclic(4).order() == 4);
  CHECK(FiniteGroup::symmetric(3).order() == 6);
  CHECK(FiniteGroup::dihedral(4).order() == 8);
  CHECK_THROWS_AS(FiniteGroup({"a", "b"}, {{0, 0}, {0, 0}}, 0), InvalidInput);
}

TEST_CASE("subgroup enumeration matches brute-force closure") {
  CHECK(subgroups(FiniteGroup::trivial()).size() == 1);
  CHECK(subgroups(FiniteGroup::cyclic(2)).size() == 2);
  for (const auto& g : {FiniteGroup::symmetric(3), FiniteGroup::cyclic(4), FiniteGroup::dihedral(4)}) {
    auto subs = subgroups(g);
    auto brute = brute_force_subgroups(g);
    REQUIRE(subs.size() == brute.size());
    for (const auto& h : subs) CHECK(std::find(brute.begin(), brute.end(), h.members) != brute.end());
    CHECK(std::is_sorted(subs.begin(), subs.end()));
    CHECK(subs.front().is_trivial());
    CHECK(subs.back().order() == g.order());
    for (const auto& h : subs) {
      for (Index a = 0; a < g.order(); ++a) {
        CHECK(std::find(subs.begin(), subs.end(), conjugate(g, h, a)) != subs.end());
      }
    }
  }
  auto s3 = subgroups(FiniteGroup::symmetric(3));
  std::vector<std::size_t> orders;
  for (const auto& h : s3) orders.push_back(h.order());
  CHECK(orders == std::vector<std::size_t>{1, 2, 2, 2, 3, 6});
}

TEST_CASE("coset G-sets are transitive with the right size") {
  auto g = FiniteGroup::symmetric(3);
  for (const auto& h : subgroups(g)) {
    auto c = coset_gset(g, h);
    c.gset.validate();
    CHECK(c.gset.size == g.order() / h.order());
    std::vector<char> seen(c.gset.size, 0);
    for (Index a = 0; a < g.order(); ++a) seen[c.gset.act(a, 0)] = 1;
    CHECK(std::count(seen.begin(), seen.end(), 1) == static_cast<long>(c.gset.size));
  }
  CHECK_THROWS_AS(coset_gset(g, Subgroup{{0, 1, 2}}), InvalidInput);
}

TEST_CASE("fixed points of coset spaces") {
  auto g = FiniteGroup::symmetric(3);
  auto subs = subgroups(g);
  const auto& rot = subs[4];  // order 3, normal
  CHECK(fixed_points_gset(coset_gset(g, rot).gset, rot).size() == 2);
  for (const auto& k : subs) {
    CHECK(fixed_points_gset(coset_gset(g, subs.back()).gset, k).size() == 1);
    if (!k.is_trivial()) CHECK(fixed_points_gset(coset_gset(g, subs.front()).gset, k).empty());
  }
}

TEST_CASE("orbit category of Z/2") {
  auto oc = orbit_category(FiniteGroup::cyclic(2));
  REQUIRE(oc.objects.size() == 2);
  CHECK(oc.hom(0, 0).size() == 2);
  CHECK(oc.hom(0, 1).size() == 1);
  CHECK(oc.hom(1, 0).size() == 0);
  CHECK(oc.hom(1, 1).size() == 1);
}

TEST_CASE("orbit category homs match fixed points and brute force") {
  auto g = FiniteGroup::symmetric(3);
  auto oc = orbit_category(g);
  const std::size_t n = oc.objects.size();
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(oc.hom(h, k).size() == fixed_points_gset(oc.orbits[k].gset, oc.objects[h]).size());
      CHECK(oc.hom(h, k).size() == brute_force_equivariant_maps(oc.orbits[h].gset, oc.orbits[k].gset));
    }
  }
  CHECK(oc.hom(0, 0).size() == g.order());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (Index f = 0; f < oc.hom(a, b).size(); ++f) {
          for (Index s = 0; s < oc.hom(b, c).size(); ++s) CHECK(oc.compose(a, b, c, s, f) < oc.hom(a, c).size());
        }
      }
    }
    const Index id = oc.identity(a);
    REQUIRE(id < oc.hom(a, a).size());
    for (std::size_t b = 0; b < n; ++b) {
      for (Index f = 0; f < oc.hom(a, b).size(); ++f) CHECK(oc.compose(a, a, b, f, id) == f);
    }
  }
}
