#include "doctest.h"

#include <random>

#include "eqcat/equivariant.hpp"
#include "eqcat/error.hpp"
#include "eqcat/homology.hpp"
#include "oracles.hpp"

using namespace eqcat;

namespace {

/// A G-set given as a disjoint union of orbits, with the orbit stabilizers.
struct OrbitSum {
  GSet gset;
  std::vector<Subgroup> stabilizers;
};

OrbitSum random_gset(std::mt19937& rng, const FiniteGroup& g) {
  const auto subs = subgroups(g);
  OrbitSum out{GSet{g, 0, {}}, {}};
  auto& s = out.gset;
  std::vector<GSet> parts;
  const int count = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < count; ++i) {
    out.stabilizers.push_back(subs[rng() % subs.size()]);
    parts.push_back(coset_gset(g, out.stabilizers.back()).gset);
  }
  for (const auto& p : parts) s.size += p.size;
  s.action.assign(g.order() * s.size, 0);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (Index e = 0; e < g.order(); ++e) {
      for (Index x = 0; x < p.size; ++x) s.action[e * s.size + offset + x] = static_cast<Index>(offset + p.act(e, x));
    }
    offset += p.size;
  }
  s.validate();
  return out;
}

struct RandomGSSet {
  GObject<TruncSSet> object;
  std::vector<Subgroup> stabilizers;
  TruncSSet fibre;
};

RandomGSSet random_orbit_sum(std::mt19937& rng, const FiniteGroup& g, int trunc) {
  auto s = random_gset(rng, g);
  auto a = oracle::random_subcomplex(rng, 1 + static_cast<int>(rng() % 2), trunc);
  return {tensor_set(s.gset, a), s.stabilizers, a};
}

GObject<TruncSSet> random_gsset(std::mt19937& rng, const FiniteGroup& g, int trunc) {
  return random_orbit_sum(rng, g, trunc).object;
}

/// Equivariant maps out of a sum of orbits G/H_i (x) A: one map A -> Y^{H_i} per orbit.
std::size_t orbit_formula_count(const RandomGSSet& x, const GObject<TruncSSet>& y) {
  std::size_t count = 1;
  for (const auto& h : x.stabilizers) count *= hom_set(x.fibre, fixed_points(y, h).object).size();
  return count;
}

/// Equivariant maps by filtering all maps.
std::size_t brute_equivariant_count(const GObject<TruncSSet>& x, const GObject<TruncSSet>& y) {
  std::size_t count = 0;
  for (const auto& f : hom_set(x.value, y.value)) {
    bool ok = true;
    for (Index e = 0; e < x.group.order() && ok; ++e) {
      ok = compose(y.action[e].components, f) == compose(f, x.action[e].components);
    }
    count += ok;
  }
  return count;
}

std::size_t total_vertices(const TruncSSet& x) { return x.size(0); }

/// Z/2 swapping the two objects of the walking isomorphism.
GObject<TruncSSet> swapped_iso(int trunc) {
  const auto e = walking_iso_nerve(trunc);
  const auto g = FiniteGroup::cyclic(2);
  GObject<TruncSSet> x{g, e, {}};
  for (const auto& f : hom_set(e, e)) {
    if (f[0][0] == 1 && is_bijective(e.presheaf(), e.presheaf(), f)) {
      x.action = {identity(e), SSetMap{e, e, f}};
    }
  }
  REQUIRE(x.action.size() == 2);
  validate(x);
  return x;
}

}  // namespace

TEST_CASE("fixed points of orbit tensors") {
  const auto z2 = FiniteGroup::cyclic(2);
  auto x = tensor_orbit(z2, trivial_subgroup(z2), standard_simplex(1, 2));
  validate(x);
  CHECK(fixed_points(x, whole_group(z2)).object.size(0) == 0);
  CHECK(fixed_points(x, trivial_subgroup(z2)).object == x.value);
  auto t = trivial_action(z2, boundary(2, 2));
  CHECK(fixed_points(t, whole_group(z2)).object == t.value);

  const auto s3 = FiniteGroup::symmetric(3);
  const auto h = generated_subgroup(s3, {1});
  REQUIRE(h.order() == 2);
  auto y = tensor_orbit(s3, h, boundary(1, 2));
  validate(y);
  CHECK(y.value.size(0) == 6);
  std::set<Index> orbit;
  for (Index e = 0; e < s3.order(); ++e) orbit.insert(y.action[e].components[0][0]);
  CHECK(orbit.size() == 3);
  auto full = tensor_orbit(s3, whole_group(s3), boundary(1, 2));
  CHECK(full.value == boundary(1, 2));
}

TEST_CASE("orbit tensor adjunction against brute force") {
  std::mt19937 rng(41);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)};
  int nonzero = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const auto& g = groups[trial % 3];
    const auto subs = subgroups(g);
    const auto h = subs[rng() % subs.size()];
    const auto a = oracle::random_subcomplex(rng, 1, 1);
    const auto b = random_gsset(rng, g, 1);
    const auto r = check_adjunction(h, a, b);
    CHECK(r.passes());
    CHECK(r.left_count == brute_equivariant_count(tensor_orbit(g, h, a), b));
    nonzero += r.left_count > 0;
  }
  CHECK(nonzero > 0);
  // A = point: both sides are the fixed vertices
  const auto z2 = FiniteGroup::cyclic(2);
  auto b = trivial_action(z2, boundary(2, 2));
  auto r = check_adjunction(whole_group(z2), standard_simplex(0, 2), b);
  CHECK(r.right_count == 3);
  CHECK(r.passes());
}

TEST_CASE("adjunction for simplicial categories") {
  const auto z2 = FiniteGroup::cyclic(2);
  auto b = tensor_orbit(z2, trivial_subgroup(z2), UK(standard_simplex(1, 1)));
  validate(b);
  for (const auto& h : subgroups(z2)) {
    auto r = check_adjunction(h, UK(standard_simplex(0, 1)), b);
    CHECK(r.passes());
  }
  auto fixed = fixed_points(b, whole_group(z2));
  CHECK(fixed.object.objects == 0);
}

TEST_CASE("cellularity (3) over the subgroup lattice of S3") {
  const auto s3 = FiniteGroup::symmetric(3);
  std::mt19937 rng(43);
  for (const auto& h : subgroups(s3)) {
    for (const auto& k : subgroups(s3)) {
      CHECK(check_cellularity_3(s3, h, k, standard_simplex(1, 2)).verdict);
      CHECK(check_cellularity_3(s3, h, k, transpose(standard_simplex(1, 2))).verdict);
      CHECK(check_cellularity_3(s3, h, k, UK(oracle::random_subcomplex(rng, 1, 1))).verdict);
      auto a = oracle::random_subcomplex(rng, 2, 2);
      auto fixed = fixed_points(tensor_orbit(s3, h, a), k).object;
      const auto fc = fixed_points_gset(coset_gset(s3, h).gset, k).size();
      CHECK(fixed.size(0) == fc * a.size(0));
    }
  }
}

TEST_CASE("cellularity (1) on finite chains") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto s = coset_gset(z2, trivial_subgroup(z2)).gset;
  std::vector<GMap<TruncSSet>> chain;
  const auto h1 = horn_inclusion(2, 1, 2);
  const auto b = boundary_inclusion(2, 2);
  // V[2,1] -> dDelta[2] -> Delta[2], tensored with the free orbit
  auto step1 = tensor_set_map<TruncSSet>(s, SSetMap{h1.source, b.source, hom_set(h1.source, b.source).front()});
  for (const auto& f : hom_set(h1.source, b.source)) {
    if (is_injective(f)) step1 = tensor_set_map<TruncSSet>(s, SSetMap{h1.source, b.source, f});
  }
  chain.push_back(step1);
  chain.push_back(tensor_set_map<TruncSSet>(s, b));
  for (const auto& h : subgroups(z2)) CHECK(check_cellularity_1(h, chain).verdict);
  auto trivial_chain = std::vector<GMap<TruncSSet>>{
      GMap<TruncSSet>{trivial_action(z2, b.source), trivial_action(z2, b.target), b}};
  auto r = check_cellularity_1(whole_group(z2), trivial_chain);
  CHECK(r.verdict);
  CHECK(r.evidence.find("FINITE-APPROXIMATION") != std::string::npos);
}

TEST_CASE("cellularity (2) for simplicial sets") {
  std::mt19937 rng(47);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)};
  for (int trial = 0; trial < 6; ++trial) {
    const auto& g = groups[trial % 2];
    const auto subs = subgroups(g);
    const auto k = subs[rng() % subs.size()];
    const auto x = random_gsset(rng, g, 2);
    const int n = 1 + static_cast<int>(rng() % 2);
    const auto gen = boundary_inclusion(n, 2);
    const auto xk = fixed_points(x, k);
    const auto maps = hom_set(gen.source, xk.object);
    if (maps.empty()) continue;
    const SSetMap attach = compose(xk.inclusion, SSetMap{gen.source, xk.object, maps[rng() % maps.size()]});
    for (const auto& h : subs) CHECK(check_cellularity_2<TruncSSet>(k, h, gen, x, attach).verdict);
  }
}

TEST_CASE("cellularity (2) for simplicial categories") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto base = tensor_orbit(z2, trivial_subgroup(z2), SCategory::from_category(FiniteCategory::ordinal(1), 2));
  validate(base);
  for (const auto& k : subgroups(z2)) {
    for (const auto& h : subgroups(z2)) {
      auto r = check_cellularity_2_objects(k, h, base);
      CHECK(r.verdict);
    }
  }
  // the free orbit adjoins two swapped objects; only the trivial subgroup sees them
  auto r = check_cellularity_2_objects(trivial_subgroup(z2), whole_group(z2), base);
  CHECK(r.evidence.rfind("0 of 2", 0) == 0);

  const auto& c = base.value;
  for (int n = 0; n <= 1; ++n) {
    const auto bd = boundary(n, 2);
    SSetMap phi{bd, c.map(0, 1), PresheafMap(3)};
    for (int lvl = 0; lvl <= 2; ++lvl) phi.components[lvl].assign(bd.size(lvl), 0);
    REQUIRE(is_valid(phi));
    for (const auto& h : subgroups(z2)) {
      CHECK(check_cellularity_2_cell(trivial_subgroup(z2), h, base, n, {0, 1, phi}, 6).verdict);
    }
  }
  const auto s3 = FiniteGroup::symmetric(3);
  const auto point = trivial_action(s3, SCategory::from_category(FiniteCategory::discrete(2), 2));
  for (const auto& k : subgroups(s3)) {
    for (const auto& h : subgroups(s3)) {
      CHECK(check_cellularity_2_objects(k, h, point).verdict);
      const auto bd = boundary(0, 2);
      CHECK(check_cellularity_2_cell(k, h, point, 0, {0, 1, SSetMap{bd, point.value.map(0, 1), PresheafMap(3)}}, 6)
                .verdict);
    }
  }
}

TEST_CASE("cellularity (2) for Segal precategories") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto x = trivial_action(z2, transpose(nerve(FiniteCategory::ordinal(2), 2)));
  const auto gen = reedy_generator(1, 1, 2);
  const auto ar = reduce(gen.source).object.space();
  const auto maps = hom_set(ar, x.value);
  REQUIRE(!maps.empty());
  for (const auto& k : subgroups(z2)) {
    for (const auto& h : subgroups(z2)) {
      auto r = check_cellularity_2_segal(k, h, gen, x, BiMap{ar, x.value, maps.back()});
      CHECK(r.left_square);
      CHECK(r.outer_rectangle);
      CHECK(r.fixed.verdict);
    }
  }
}

TEST_CASE("G-weak equivalence evidence") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto all = all_subgroups_family(z2);
  auto x = tensor_orbit(z2, trivial_subgroup(z2), boundary(2, 2));
  auto id = GMap<TruncSSet>{x, x, identity(x.value)};
  CHECK(g_weak_equivalence_evidence(id, all).all_positive());

  // two circles swapped against two circles fixed
  auto fixed_circles = trivial_action(z2, copies(boundary(2, 2), 2));
  CHECK(fixed_points(x, whole_group(z2)).object.size(0) == 0);
  auto h1 = homology(fixed_points(fixed_circles, whole_group(z2)).object, 1);
  CHECK(h1.groups[1].betti == 2);

  // contractible free Z/2-space to a point: underlying but not G-equivalence
  auto e = swapped_iso(3);
  auto pt = trivial_action(z2, standard_simplex(0, 3));
  GMap<TruncSSet> f{e, pt, SSetMap{e.value, pt.value, hom_set(e.value, pt.value).front()}};
  REQUIRE(is_valid(f));
  auto ev = g_weak_equivalence_evidence(f, all);
  CHECK_FALSE(ev.all_positive());
  CHECK(ev.label == "EVIDENCE");
  auto underlying = g_weak_equivalence_evidence(f, SubgroupFamily{{trivial_subgroup(z2)}});
  CHECK(underlying.all_positive());
}

TEST_CASE("Elmendorf restriction and Kan extension") {
  std::mt19937 rng(53);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)};
  int nonzero = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto& g = groups[trial % 2];
    const auto xs = random_orbit_sum(rng, g, 1);
    const auto& x = xs.object;
    const auto y = random_gsset(rng, g, 1);
    const auto f = fixed_point_diagram(y);
    const auto back = elmendorf_restrict(f);
    CHECK(back.value == y.value);
    const auto lan = elmendorf_lan(x);
    const std::size_t e = lan.orbits.object_of(trivial_subgroup(g));
    for (std::size_t h = 0; h < lan.values.size(); ++h) {
      if (h != e) CHECK(total_vertices(lan.values[h]) == 0);
    }
    const auto r = check_elmendorf_adjunction(x, f);
    CHECK(r.passes());
    CHECK(r.right_count == orbit_formula_count(xs, back));
    nonzero += r.right_count > 0;
  }
  CHECK(nonzero > 0);
  const auto z4 = FiniteGroup::cyclic(4);
  const auto free_point = tensor_orbit(z4, trivial_subgroup(z4), standard_simplex(0, 1));
  const auto r = check_elmendorf_adjunction(free_point, fixed_point_diagram(trivial_action(z4, boundary(2, 1))));
  CHECK(r.passes());
  CHECK(r.left_count == 3);
}
