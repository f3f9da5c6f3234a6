#include "eqcat/fingroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "eqcat/error.hpp"

namespace eqcat {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<Index>> mul, Index id)
    : names_(std::move(names)), mul_(std::move(mul)), id_(id) {
  const std::size_t n = mul_.size();
  if (n == 0) throw InvalidInput("group: no elements");
  if (names_.size() != n) throw InvalidInput("group: names and table disagree in size");
  if (std::set<std::string>(names_.begin(), names_.end()).size() != n) throw InvalidInput("group: duplicate names");
  if (id_ >= n) throw InvalidInput("group: identity out of range");
  for (const auto& row : mul_) {
    if (row.size() != n) throw InvalidInput("group: table is not square");
    for (Index v : row) {
      if (v >= n) throw InvalidInput("group: product out of range");
    }
  }
  for (Index a = 0; a < n; ++a) {
    if (mul_[id_][a] != a || mul_[a][id_] != a) throw InvalidInput("group: identity law fails");
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw InvalidInput("group: not associative");
      }
    }
  }
  inv_.assign(n, kNone);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (mul_[a][b] == id_ && mul_[b][a] == id_) inv_[a] = b;
    }
    if (inv_[a] == kNone) throw InvalidInput("group: element without inverse");
  }
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {{0}}, 0); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic: order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<Index>> mul(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "e" : "r" + std::to_string(a));
    for (Index b = 0; b < n; ++b) mul[a][b] = static_cast<Index>((a + b) % n);
  }
  return FiniteGroup(names, mul, 0);
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw InvalidInput("symmetric: supported for 1..5 letters");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<Index>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::string> names;
  std::vector<std::vector<Index>> mul(perms.size(), std::vector<Index>(perms.size()));
  for (Index a = 0; a < perms.size(); ++a) {
    std::string s;
    for (int v : perms[a]) s += std::to_string(v + 1);
    names.push_back(s);
    for (Index b = 0; b < perms.size(); ++b) {
      // (a*b)(x) = a(b(x))
      std::vector<int> q(n);
      for (std::size_t x = 0; x < n; ++x) q[x] = perms[a][perms[b][x]];
      mul[a][b] = index_of(q);
    }
  }
  return FiniteGroup(names, mul, 0);
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n < 1) throw InvalidInput("dihedral: n must be positive");
  // element (f, k) = s^f r^k stored as f * n + k
  const std::size_t order = 2 * n;
  std::vector<std::string> names;
  std::vector<std::vector<Index>> mul(order, std::vector<Index>(order));
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t fa = a / n, ka = a % n;
    names.push_back(std::string(fa ? "s" : "") + (ka || !fa ? "r" + std::to_string(ka) : ""));
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t fb = b / n, kb = b % n;
      // r^ka s^fb = s^fb r^(+-ka)
      const std::size_t k = ((fb ? n - ka : ka) + kb) % n;
      mul[a][b] = static_cast<Index>(((fa + fb) % 2) * n + k);
    }
  }
  names[0] = "e";
  return FiniteGroup(names, mul, 0);
}

bool Subgroup::contains(Index g) const { return std::binary_search(members.begin(), members.end(), g); }

bool Subgroup::operator<(const Subgroup& o) const {
  if (members.size() != o.members.size()) return members.size() < o.members.size();
  return members < o.members;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h{members};
  if (members.empty() || members.back() >= g.order()) throw InvalidInput("invalid subgroup: element out of range");
  if (!h.contains(g.id())) throw InvalidInput("invalid subgroup: missing identity");
  for (Index a : members) {
    if (!h.contains(g.inv(a))) throw InvalidInput("invalid subgroup: not closed under inverses");
    for (Index b : members) {
      if (!h.contains(g.mul(a, b))) throw InvalidInput("invalid subgroup: not closed under products");
    }
  }
  return h;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Index>& generators) {
  std::set<Index> members{g.id()};
  std::vector<Index> frontier{g.id()};
  while (!frontier.empty()) {
    const Index a = frontier.back();
    frontier.pop_back();
    for (Index s : generators) {
      if (s >= g.order()) throw InvalidInput("generator out of range");
      const Index b = g.mul(a, s);
      if (members.insert(b).second) frontier.push_back(b);
    }
  }
  return Subgroup{{members.begin(), members.end()}};
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup{{g.id()}}; }

Subgroup whole_group(const FiniteGroup& g) {
  Subgroup h;
  h.members.resize(g.order());
  std::iota(h.members.begin(), h.members.end(), Index{0});
  return h;
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Index by) {
  std::vector<Index> out;
  for (Index a : h.members) out.push_back(g.mul(g.mul(by, a), g.inv(by)));
  std::sort(out.begin(), out.end());
  return Subgroup{out};
}

bool is_subgroup_of(const Subgroup& small, const Subgroup& big) {
  return std::includes(big.members.begin(), big.members.end(), small.members.begin(), small.members.end());
}

std::vector<Subgroup> subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found{trivial_subgroup(g)};
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  while (!frontier.empty()) {
    const Subgroup h = frontier.back();
    frontier.pop_back();
    for (Index a = 0; a < g.order(); ++a) {
      if (h.contains(a)) continue;
      auto gens = h.members;
      gens.push_back(a);
      Subgroup bigger = generated_subgroup(g, gens);
      if (found.insert(bigger).second) frontier.push_back(bigger);
    }
  }
  return {found.begin(), found.end()};
}

void GSet::validate() const {
  if (action.size() != group.order() * size) throw InvalidInput("G-set: action table has the wrong size");
  for (Index x = 0; x < size; ++x) {
    if (act(group.id(), x) != x) throw InvalidInput("G-set: identity does not act trivially");
    for (Index a = 0; a < group.order(); ++a) {
      if (act(a, x) >= size) throw InvalidInput("G-set: action out of range");
      for (Index b = 0; b < group.order(); ++b) {
        if (act(a, act(b, x)) != act(group.mul(a, b), x)) throw InvalidInput("G-set: action is not associative");
      }
    }
  }
}

CosetSpace coset_gset(const FiniteGroup& g, const Subgroup& h) {
  CosetSpace out;
  out.subgroup = make_subgroup(g, h.members);
  out.coset_of.assign(g.order(), kNone);
  for (Index a = 0; a < g.order(); ++a) {
    if (out.coset_of[a] != kNone) continue;
    const Index c = static_cast<Index>(out.representative.size());
    out.representative.push_back(a);
    for (Index m : out.subgroup.members) out.coset_of[g.mul(a, m)] = c;
  }
  out.gset.group = g;
  out.gset.size = out.representative.size();
  out.gset.action.resize(g.order() * out.gset.size);
  for (Index a = 0; a < g.order(); ++a) {
    for (Index c = 0; c < out.gset.size; ++c) {
      out.gset.action[a * out.gset.size + c] = out.coset_of[g.mul(a, out.representative[c])];
    }
  }
  return out;
}

std::vector<Index> fixed_points_gset(const GSet& x, const Subgroup& k) {
  std::vector<Index> out;
  for (Index p = 0; p < x.size; ++p) {
    bool fixed = true;
    for (Index a : k.members) fixed = fixed && x.act(a, p) == p;
    if (fixed) out.push_back(p);
  }
  return out;
}

bool is_equivariant(const GSet& a, const GSet& b, const std::vector<Index>& f) {
  if (f.size() != a.size) return false;
  for (Index x = 0; x < a.size; ++x) {
    if (f[x] >= b.size) return false;
    for (Index g = 0; g < a.group.order(); ++g) {
      if (f[a.act(g, x)] != b.act(g, f[x])) return false;
    }
  }
  return true;
}

std::size_t OrbitCategory::object_of(const Subgroup& h) const {
  auto it = std::find(objects.begin(), objects.end(), h);
  if (it == objects.end()) throw InvalidInput("orbit category: unknown subgroup");
  return static_cast<std::size_t>(it - objects.begin());
}

Index OrbitCategory::map_for(std::size_t h, std::size_t k, Index u) const {
  const auto& src = orbits[h];
  const auto& dst = orbits[k];
  std::vector<Index> f(src.gset.size);
  for (Index c = 0; c < f.size(); ++c) f[c] = dst.coset_of[group.mul(src.representative[c], u)];
  // well defined iff every representative choice agrees
  for (Index a = 0; a < group.order(); ++a) {
    if (dst.coset_of[group.mul(a, u)] != f[src.coset_of[a]]) return kNone;
  }
  const auto& maps = hom(h, k);
  auto it = std::find(maps.begin(), maps.end(), f);
  return it == maps.end() ? kNone : static_cast<Index>(it - maps.begin());
}

Index OrbitCategory::compose(std::size_t a, std::size_t b, std::size_t c, Index second, Index first) const {
  const auto& f = hom(a, b)[first];
  const auto& g = hom(b, c)[second];
  std::vector<Index> gf(f.size());
  for (Index x = 0; x < f.size(); ++x) gf[x] = g[f[x]];
  const auto& maps = hom(a, c);
  return static_cast<Index>(std::find(maps.begin(), maps.end(), gf) - maps.begin());
}

Index OrbitCategory::identity(std::size_t a) const {
  std::vector<Index> id(orbits[a].gset.size);
  std::iota(id.begin(), id.end(), Index{0});
  const auto& maps = hom(a, a);
  return static_cast<Index>(std::find(maps.begin(), maps.end(), id) - maps.begin());
}

OrbitCategory orbit_category(const FiniteGroup& g) {
  OrbitCategory oc;
  oc.group = g;
  oc.objects = subgroups(g);
  for (const auto& h : oc.objects) oc.orbits.push_back(coset_gset(g, h));
  const std::size_t n = oc.objects.size();
  oc.homs.resize(n * n);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& src = oc.orbits[h].gset;
      const auto& dst = oc.orbits[k].gset;
      // an equivariant map is determined by the image of the base coset
      std::set<std::vector<Index>> maps;
      for (Index target = 0; target < dst.size; ++target) {
        std::vector<Index> f(src.size, kNone);
        bool ok = true;
        for (Index a = 0; a < g.order() && ok; ++a) {
          const Index x = src.act(a, 0);
          const Index y = dst.act(a, target);
          if (f[x] == kNone) f[x] = y;
          ok = f[x] == y;
        }
        if (ok && is_equivariant(src, dst, f)) maps.insert(f);
      }
      oc.homs[h * n + k] = {maps.begin(), maps.end()};
    }
  }
  return oc;
}

bool SubgroupFamily::contains_trivial() const {
  return std::any_of(members.begin(), members.end(), [](const Subgroup& h) { return h.is_trivial(); });
}

SubgroupFamily all_subgroups_family(const FiniteGroup& g) { return {subgroups(g)}; }

}  // namespace eqcat
