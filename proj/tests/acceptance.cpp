// Acceptance run: one PASS/FAIL line per criterion.
//
// The exit status counts failing criteria that are not listed in
// kKnownDeviations; a known deviation still prints FAIL with its evidence.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "eqcat/equivariant.hpp"
#include "eqcat/error.hpp"
#include "eqcat/homology.hpp"
#include "eqcat/suite.hpp"
#include "oracles.hpp"

using namespace eqcat;

namespace {

/// Criterion 8 includes the literal identification P[1,n] = Delta[n]^t,
/// which does not hold for the pushout as defined once n >= 1.
const std::set<int> kKnownDeviations{8};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;  // success summary
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (std::find(failures.begin(), failures.end(), what) == failures.end()) failures.push_back(what);
  }
  std::string text() const {
    if (pass) return detail.str();
    std::string out;
    for (const auto& f : failures) out += (out.empty() ? "" : "; ") + f;
    return out;
  }
};

// ---------------------------------------------------------------- oracles

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

/// Y^H as the subcomplex of simplices fixed by every element of H.
TruncSSet fixed_subcomplex(const GObject<TruncSSet>& y, const Subgroup& h) {
  std::vector<std::vector<char>> keep(static_cast<std::size_t>(y.value.trunc()) + 1);
  for (int k = 0; k <= y.value.trunc(); ++k) {
    for (Index s = 0; s < y.value.size(k); ++s) {
      bool fixed = true;
      for (Index a : h.members) fixed = fixed && y.action[a].components[k][s] == s;
      keep[k].push_back(fixed);
    }
  }
  return TruncSSet(subpresheaf(y.value.presheaf(), keep).object);
}

/// Equivariant maps out of a sum of orbits G/H_i (x) A: one map A -> Y^{H_i} per orbit.
std::size_t orbit_formula_count(const std::vector<Subgroup>& stabilizers, const TruncSSet& a,
                                const GObject<TruncSSet>& y) {
  std::size_t count = 1;
  for (const auto& h : stabilizers) count *= count_homs(a.presheaf(), fixed_subcomplex(y, h).presheaf());
  return count;
}

/// Brute force is only affordable when the underlying hom-set is small.
constexpr std::size_t kBruteLimit = 20000;

/// |(G/K)^H| from group elements: cosets gK with g^-1 H g inside K.
std::size_t fixed_coset_count(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  std::size_t elements = 0;
  for (Index x = 0; x < g.order(); ++x) {
    Index inv = 0;
    while (g.mul(x, inv) != g.id()) ++inv;
    bool ok = true;
    for (Index a : h.members) ok = ok && k.contains(g.mul(inv, g.mul(a, x)));
    elements += ok;
  }
  return elements / k.order();
}

GSet orbit_sum(const FiniteGroup& g, const std::vector<Subgroup>& stabilizers) {
  GSet s{g, 0, {}};
  std::vector<GSet> parts;
  for (const auto& h : stabilizers) {
    parts.push_back(coset_gset(g, h).gset);
    s.size += parts.back().size;
  }
  s.action.assign(g.order() * s.size, 0);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (Index e = 0; e < g.order(); ++e) {
      for (Index x = 0; x < p.size; ++x) s.action[e * s.size + offset + x] = static_cast<Index>(offset + p.act(e, x));
    }
    offset += p.size;
  }
  return s;
}

std::vector<Subgroup> random_stabilizers(std::mt19937& rng, const FiniteGroup& g) {
  const auto subs = subgroups(g);
  std::vector<Subgroup> out;
  const int count = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < count; ++i) out.push_back(subs[rng() % subs.size()]);
  return out;
}

TruncBiSSet random_space(std::mt19937& rng, int trunc) {
  auto k = oracle::random_subcomplex(rng, 1 + static_cast<int>(rng() % 2), trunc);
  auto c = nerve(oracle::random_poset(rng, 2), trunc);
  return product(transpose(c), const_space(k));
}

SegalPrecategory random_precategory(std::mt19937& rng, int trunc) {
  if (rng() % 2) return SegalPrecategory(transpose(nerve(oracle::random_category(rng), trunc)));
  return reduce(random_space(rng, trunc)).object;
}

// ---------------------------------------------------------------- criteria

void homology_oracle(Outcome& o) {
  for (int n = 2; n <= 4; ++n) {
    const auto h = homology(boundary(n, n), n);
    for (const auto& grp : h.groups) {
      if (!grp.reliable) continue;
      const std::size_t want = (grp.degree == 0 || grp.degree == n - 1) ? 1 : 0;
      o.require(grp.betti == want && grp.torsion.empty(),
                "dDelta[" + std::to_string(n) + "] H_" + std::to_string(grp.degree) + " = " + grp.to_string());
    }
    o.require(h.groups[n - 1].reliable, "top sphere degree not reliable");
  }
  const auto z3 = homology(nerve(oracle::cyclic_group_category(3), 4), 4);
  o.require(z3.groups[1].reliable && z3.groups[1].betti == 0 && z3.groups[1].torsion.size() == 1 &&
                z3.groups[1].torsion[0] == 3,
            "nerve of Z/3: H_1 = " + z3.groups[1].to_string());
  if (o.pass) o.detail << "spheres dDelta[2..4] and H_1(B Z/3) = " << z3.groups[1].to_string();
}

void quasicategory_detector(Outcome& o) {
  std::mt19937 rng(101);
  std::size_t horns = 0;
  for (int i = 0; i < 10; ++i) {
    const auto r = is_quasicategory(nerve(oracle::random_category(rng), 4), 4);
    horns += r.horns_checked;
    o.require(r.passes(), "a nerve fails an inner horn");
  }
  for (const auto& [name, x] : {std::pair{std::string("V[2,1]"), horn(2, 1, 2)},
                                std::pair{std::string("dDelta[2]"), boundary(2, 2)}}) {
    const auto r = is_quasicategory(x, 2);
    o.require(!r.passes() && r.failures.front().n == 2 && r.failures.front().k == 1 &&
                  is_valid(SSetMap{horn(2, 1, 2), x, r.failures.front().horn_map}),
              name + " has no explicit unfillable horn");
  }
  if (o.pass) o.detail << "10 nerves, " << horns << " inner horn maps filled; V[2,1] and dDelta[2] fail at V[2,1]";
}

void segal_checker(Outcome& o) {
  std::mt19937 rng(103);
  for (int i = 0; i < 10; ++i) {
    const auto w = transpose(nerve(oracle::random_category(rng), 4));
    for (int k = 2; k <= 4; ++k) o.require(segal_check(w, k).isomorphism, "transposed nerve Segal map k=" + std::to_string(k));
  }
  const auto bad = segal_check(transpose(boundary(2, 2)), 2);
  o.require(!bad.isomorphism, "dDelta[2]^t passes at k=2");
  if (o.pass) o.detail << "10 transposed nerves are Segal up to k=4; dDelta[2]^t fails at k=2";
}

void orbit_adjunction(Outcome& o) {
  std::mt19937 rng(107);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)};
  std::size_t nonzero = 0, brute = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& g = groups[i % 3];
    const auto subs = subgroups(g);
    const auto h = subs[rng() % subs.size()];
    const auto a = oracle::random_subcomplex(rng, 1, 1);
    const auto b = tensor_set(orbit_sum(g, random_stabilizers(rng, g)), oracle::random_subcomplex(rng, 1, 1));
    const auto r = check_adjunction(h, a, b);
    const auto expected = orbit_formula_count({h}, a, b);
    o.require(r.passes() && r.left_count == expected,
              "instance " + std::to_string(i) + ": left " + std::to_string(r.left_count) + ", right " +
                  std::to_string(r.right_count) + ", oracle " + std::to_string(expected));
    const auto x = tensor_orbit(g, h, a);
    bool affordable = false;
    try {
      affordable = count_homs(x.value.presheaf(), b.value.presheaf(), SearchOptions{200000}) <= kBruteLimit;
    } catch (const BudgetExceeded&) {
    }
    if (affordable) {
      ++brute;
      o.require(brute_equivariant_count(x, b) == r.left_count, "instance " + std::to_string(i) + ": brute force");
    }
    nonzero += expected > 0;
  }
  o.require(nonzero > 0, "all hom-sets empty");
  if (o.pass) {
    o.detail << "100 instances over Z/2, Z/4, S3 match the orbit formula (" << nonzero << " nonempty, " << brute
             << " also by brute force)";
  }
}

void cellularity_3(Outcome& o) {
  std::mt19937 rng(109);
  const auto s3 = FiniteGroup::symmetric(3);
  const auto subs = subgroups(s3);
  std::size_t checks = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = oracle::random_subcomplex(rng, 2, 2);
    const auto cat = UK(oracle::random_subcomplex(rng, 1, 1));
    for (const auto& h : subs) {
      for (const auto& k : subs) {
        const auto fc = fixed_coset_count(s3, k, h);
        o.require(check_cellularity_3(s3, h, k, a).verdict, "simplicial sets");
        o.require(check_cellularity_3(s3, h, k, transpose(a)).verdict, "bisimplicial sets");
        o.require(check_cellularity_3(s3, h, k, cat).verdict, "simplicial categories");
        const auto fixed = fixed_points(tensor_orbit(s3, h, a), k).object;
        for (int lvl = 0; lvl <= 2; ++lvl) o.require(fixed.size(lvl) == fc * a.size(lvl), "fixed simplex count");
        o.require(fixed_points(tensor_orbit(s3, h, cat), k).object.objects == fc * cat.objects, "fixed object count");
        checks += 3;
      }
    }
  }
  if (o.pass) o.detail << checks << " canonical maps over 36 subgroup pairs are levelwise bijections";
}

void cellularity_2_scat(Outcome& o) {
  std::size_t cells = 0;
  for (const char* g : {"Z/2", "S3"}) {
    auto cfg = parse_suite_config(io::parse(std::string(R"({"model": "sc", "trunc": 2, "budget": 6, "group": ")") +
                                            g + "\"}"));
    for (const auto& c : run_check_suite(cfg).cells) {
      if (c.report.condition != "cellularity-2") continue;
      ++cells;
      o.require(c.report.verdict, std::string(g) + " " + c.key);
    }
  }
  if (o.pass) o.detail << cells << " pushout cells (objects, UdDelta[n] -> UDelta[n], n <= 2) at budget 6";
}

void cellularity_2_segal(Outcome& o) {
  std::size_t cells = 0;
  for (const char* model : {"secat_c", "secat_f"}) {
    auto cfg = parse_suite_config(io::parse(std::string(R"({"group": "Z/2", "trunc": 2, "model": ")") + model + "\"}"));
    for (const auto& c : run_check_suite(cfg).cells) {
      if (c.report.condition != "cellularity-2") continue;
      ++cells;
      o.require(c.report.verdict, std::string(model) + " " + c.key + ": " + c.report.evidence);
    }
  }
  if (o.pass) o.detail << cells << " rectangle replays over Z/2 with m, n <= 2";
}

void reduction(Outcome& o) {
  std::mt19937 rng(113);
  for (int i = 0; i < 20; ++i) {
    const auto x = random_space(rng, 2);
    const auto y = random_precategory(rng, 2);
    const auto r = reduce(x);
    o.require(hom_set(r.object.space(), y.space()).size() == hom_set(x, y.space()).size(), "universal property");
    o.require(is_isomorphic(reduce(r.object.space()).object.space(), r.object.space()).has_value(), "idempotence");
  }
  for (int m = 2; m <= 3; ++m) {
    for (int n = 0; n <= 2; ++n) {
      const auto gen = projective_generator(m, n, 3);
      o.require(is_isomorphic(build_P(m, n, 3).space(), reduce(gen.source).object.space()).has_value(),
                "P[" + std::to_string(m) + "," + std::to_string(n) + "] != (dDelta[m] x Delta[n]^t)_r");
    }
  }
  std::string literal;
  for (int n = 0; n <= 2; ++n) {
    if (!is_isomorphic(build_P(1, n, 2).space(), transpose(standard_simplex(n, 2))).has_value()) {
      literal += (literal.empty() ? "" : ", ") + std::to_string(n);
    }
  }
  o.require(literal.empty(), "P[1,n] is not isomorphic to Delta[n]^t for n = " + literal +
                                 " (the pushout glues two copies of Delta[n]^t along their vertices only); "
                                 "universal property, idempotence and P[m,n] for m = 2,3 hold");
  if (o.pass) o.detail << "20 pairs, idempotence, P[1,n] and P[m,n] for m = 2,3";
}

void comparison_functors(Outcome& o) {
  std::mt19937 rng(127);
  for (int i = 0; i < 10; ++i) {
    const auto k = (i % 2) ? nerve(oracle::random_category(rng), 3) : oracle::random_subcomplex(rng, 3, 3);
    o.require(diagonal(transpose(k)) == k, "diagonal of a transpose");
    o.require(is_isomorphic(total(transpose(k)), k).has_value(), "total of a transpose");
    o.require(p_star(const_space(k)) == discrete(k.size(0), 3), "p_star of a constant space");
  }
  if (o.pass) o.detail << "10 corpus objects";
}

void sm6_triangle(Outcome& o) {
  std::mt19937 rng(131);
  std::size_t nonzero = 0;
  for (int i = 0; i < 20; ++i) {
    const auto x = random_precategory(rng, 1);
    const auto y = random_precategory(rng, 1);
    const auto k = oracle::random_subcomplex(rng, 1, 1);
    const auto a = hom_set(tensor(x, k).space(), y.space()).size();
    const auto b = hom_set(k, mapping_space(x.space(), y.space()).space).size();
    const auto c = hom_set(x.space(), cotensor(y, k).space()).size();
    o.require(a == b && b == c, "triple " + std::to_string(i) + ": " + std::to_string(a) + ", " +
                                    std::to_string(b) + ", " + std::to_string(c));
    nonzero += a > 0;
  }
  if (o.pass) o.detail << "20 triples agree (" << nonzero << " nonempty)";
}

void elmendorf(Outcome& o) {
  std::mt19937 rng(137);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)};
  std::size_t nonzero = 0;
  for (int i = 0; i < 10; ++i) {
    const auto& g = groups[i % 2];
    const auto stab = random_stabilizers(rng, g);
    const auto a = oracle::random_subcomplex(rng, 1, 1);
    const auto x = tensor_set(orbit_sum(g, stab), a);
    const auto y = tensor_set(orbit_sum(g, random_stabilizers(rng, g)), oracle::random_subcomplex(rng, 1, 1));
    const auto r = check_elmendorf_adjunction(x, fixed_point_diagram(y));
    o.require(r.passes(), "instance " + std::to_string(i) + ": " + r.notes);
    o.require(r.right_count == orbit_formula_count(stab, a, y), "instance " + std::to_string(i) + " count");
    nonzero += r.right_count > 0;
  }
  if (o.pass) o.detail << "10 instances over Z/2 and Z/4, triangles hold (" << nonzero << " nonempty)";
}

void coherent_nerve_criterion(Outcome& o) {
  std::mt19937 rng(139);
  for (int i = 0; i < 5; ++i) {
    const auto cat = oracle::random_category(rng);
    o.require(is_isomorphic(coherent_nerve(SCategory::from_category(cat, 2), 3), nerve(cat, 3)).has_value(),
              "discrete simplicial category");
  }
  const auto point = coherent_nerve(UK(standard_simplex(0, 1)), 1);
  o.require(point.size(1) == 3, "N(U Delta[0])_1 has " + std::to_string(point.size(1)) + " elements");
  if (o.pass) o.detail << "5 discrete categories to level 3; |N(U Delta[0])_1| = 3";
}

void orbit_category_criterion(Outcome& o) {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto oc = orbit_category(s3);
  std::size_t pairs = 0;
  for (std::size_t h = 0; h < oc.objects.size(); ++h) {
    for (std::size_t k = 0; k < oc.objects.size(); ++k) {
      o.require(oc.hom(h, k).size() == fixed_coset_count(s3, oc.objects[h], oc.objects[k]), "hom count");
      ++pairs;
    }
  }
  if (o.pass) o.detail << pairs << " ordered pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"homology oracle", homology_oracle},
      {"quasi-category detector", quasicategory_detector},
      {"Segal checker", segal_checker},
      {"orbit tensor adjunction", orbit_adjunction},
      {"cellularity (3)", cellularity_3},
      {"cellularity (2), simplicial categories", cellularity_2_scat},
      {"cellularity (2), Segal precategories", cellularity_2_segal},
      {"reduction and P/Q identifications", reduction},
      {"diagonal, total and row 0", comparison_functors},
      {"tensor, mapping space and cotensor", sm6_triangle},
      {"orbit diagram adjunction", elmendorf},
      {"coherent nerve", coherent_nerve_criterion},
      {"orbit category", orbit_category_criterion},
  };
  int unexpected = 0, passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << ": " << o.text();
    std::cout.precision(2);
    std::cout << std::fixed << " [" << secs << " s]";
    if (!o.pass && kKnownDeviations.count(id)) std::cout << " (known deviation)";
    std::cout << std::endl;
    passed += o.pass;
    if (!o.pass && !kKnownDeviations.count(id)) ++unexpected;
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass, " << unexpected << " unexpected failure(s)\n";
  return unexpected == 0 ? 0 : 1;
}
