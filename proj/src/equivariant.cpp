#include "eqcat/equivariant.hpp"

#include <algorithm>
#include <set>
#include <type_traits>

#include "eqcat/error.hpp"
#include "eqcat/homology.hpp"

namespace eqcat {

namespace {

template <class T>
constexpr bool kCat = std::is_same_v<T, SCategory>;

template <class T>
MapOf<T> arrow(const T& s, const T& t, PresheafMap c) {
  return MapOf<T>{s, t, std::move(c)};
}

template <class T>
bool valid_map(const MapOf<T>& m) {
  return is_valid(m);
}

template <class T>
bool same_map(const MapOf<T>& a, const MapOf<T>& b) {
  if constexpr (kCat<T>) {
    return a.object_map == b.object_map && a.maps == b.maps;
  } else {
    return a.components == b.components;
  }
}

template <class T>
bool is_iso(const MapOf<T>& m) {
  if constexpr (kCat<T>) {
    return is_valid(m) && is_isomorphism(m);
  } else {
    return is_valid(m) && is_bijective(m.source.presheaf(), m.target.presheaf(), m.components);
  }
}

template <class T>
const T& source_of(const MapOf<T>& m) {
  return m.source;
}
template <class T>
const T& target_of(const MapOf<T>& m) {
  return m.target;
}

template <class T>
std::vector<Index> key(const MapOf<T>& m) {
  std::vector<Index> out;
  if constexpr (kCat<T>) {
    out = m.object_map;
    for (const auto& pm : m.maps) {
      for (const auto& level : pm) out.insert(out.end(), level.begin(), level.end());
    }
  } else {
    for (const auto& level : m.components) out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

template <class T>
std::vector<MapOf<T>> plain_homs(const T& a, const T& b, SearchOptions opts) {
  if constexpr (kCat<T>) {
    return sfunctor_homs(a, b, opts);
  } else {
    std::vector<MapOf<T>> out;
    for (auto& c : hom_set(a.presheaf(), b.presheaf(), opts)) out.push_back(arrow(a, b, std::move(c)));
    return out;
  }
}

PresheafMap empty_components(std::size_t levels) { return PresheafMap(levels); }

/// Per-pair inverse of an injective functor's components.
struct FunctorInverse {
  std::vector<Index> objects;
  std::vector<PresheafMap> maps;  // indexed by target pair
};

FunctorInverse invert_inclusion(const SFunctor& inc) {
  const auto& t = inc.target;
  FunctorInverse inv;
  inv.objects.assign(t.objects, kNone);
  for (Index x = 0; x < inc.object_map.size(); ++x) inv.objects[inc.object_map[x]] = x;
  inv.maps.resize(t.objects * t.objects);
  for (Index x = 0; x < t.objects; ++x) {
    for (Index y = 0; y < t.objects; ++y) {
      auto& pm = inv.maps[t.pair(x, y)];
      pm.resize(static_cast<std::size_t>(t.trunc) + 1);
      for (int n = 0; n <= t.trunc; ++n) pm[n].assign(t.map(x, y).size(n), kNone);
    }
  }
  const auto& s = inc.source;
  for (Index x = 0; x < s.objects; ++x) {
    for (Index y = 0; y < s.objects; ++y) {
      auto& pm = inv.maps[t.pair(inc.object_map[x], inc.object_map[y])];
      const auto& comps = inc.maps[s.pair(x, y)];
      for (int n = 0; n <= s.trunc; ++n) {
        for (Index e = 0; e < comps[n].size(); ++e) pm[n][comps[n][e]] = e;
      }
    }
  }
  return inv;
}

PresheafMap invert_injection(const PresheafMap& inc, const Presheaf& target) {
  PresheafMap inv(inc.size());
  for (std::size_t o = 0; o < inc.size(); ++o) {
    inv[o].assign(target.size(o), kNone);
    for (Index x = 0; x < inc[o].size(); ++x) inv[o][inc[o][x]] = x;
  }
  return inv;
}

/// m followed by the inverse of the fixed-point inclusion; throws if m leaves the fixed part.
template <class T>
MapOf<T> corestrict(const MapOf<T>& m, const Fixed<T>& fx) {
  if constexpr (kCat<T>) {
    const auto inv = invert_inclusion(fx.inclusion);
    SFunctor out{m.source, fx.object, {}, {}};
    for (Index v : m.object_map) {
      if (inv.objects[v] == kNone) throw InvalidInput("map does not land in the fixed points");
      out.object_map.push_back(inv.objects[v]);
    }
    const auto& s = m.source;
    for (Index x = 0; x < s.objects; ++x) {
      for (Index y = 0; y < s.objects; ++y) {
        const auto& to = inv.maps[m.target.pair(m.object_map[x], m.object_map[y])];
        PresheafMap pm = m.maps[s.pair(x, y)];
        for (std::size_t n = 0; n < pm.size(); ++n) {
          for (auto& e : pm[n]) {
            e = to[n][e];
            if (e == kNone) throw InvalidInput("map does not land in the fixed points");
          }
        }
        out.maps.push_back(std::move(pm));
      }
    }
    return out;
  } else {
    const auto inv = invert_injection(fx.inclusion.components, m.target.presheaf());
    PresheafMap out = m.components;
    for (std::size_t o = 0; o < out.size(); ++o) {
      for (auto& e : out[o]) {
        e = inv[o][e];
        if (e == kNone) throw InvalidInput("map does not land in the fixed points");
      }
    }
    return arrow(m.source, fx.object, std::move(out));
  }
}

// ---------------------------------------------------------------- copies

Cocone presheaf_copies(const Presheaf& a, std::size_t count) {
  if (count == 0) return Cocone{initial(a.shape_ptr()), {}};
  return coproduct(std::vector<Presheaf>(count, a));
}

SCategory scat_copies(const SCategory& a, std::size_t count) {
  const std::size_t na = a.objects, n = na * count;
  std::vector<TruncSSet> maps;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      maps.push_back(x / na == y / na ? a.map(x % na, y % na) : TruncSSet::empty(a.trunc));
    }
  }
  std::vector<Index> units;
  for (Index x = 0; x < n; ++x) units.push_back(a.units[x % na]);
  return make_scategory(a.trunc, n, std::move(maps), std::move(units),
                        [&](Index x, Index y, Index z, int lvl, Index g, Index f) {
                          return a.compose(x % na, y % na, z % na, lvl, g, f);
                        });
}

/// Inclusion of copy c into the coproduct of `count` copies.
template <class T>
MapOf<T> copy_leg(const T& a, const T& all, std::size_t count, std::size_t c) {
  if constexpr (kCat<T>) {
    SFunctor f{a, all, {}, {}};
    for (Index x = 0; x < a.objects; ++x) f.object_map.push_back(static_cast<Index>(c * a.objects + x));
    for (const auto& m : a.maps) f.maps.push_back(identity_map(m.presheaf()));
    return f;
  } else {
    return arrow(a, all, presheaf_copies(a.presheaf(), count).legs[c]);
  }
}

/// The map out of `count` copies of a given copywise.
template <class T>
MapOf<T> copair(const T& a, const T& all, const std::vector<MapOf<T>>& per_copy, const T& target) {
  const std::size_t count = per_copy.size();
  if constexpr (kCat<T>) {
    const std::size_t na = a.objects;
    SFunctor f{all, target, std::vector<Index>(all.objects), {}};
    for (Index x = 0; x < all.objects; ++x) f.object_map[x] = per_copy[x / na].object_map[x % na];
    for (Index x = 0; x < all.objects; ++x) {
      for (Index y = 0; y < all.objects; ++y) {
        if (x / na == y / na) {
          f.maps.push_back(per_copy[x / na].maps[a.pair(x % na, y % na)]);
        } else {
          f.maps.push_back(empty_components(static_cast<std::size_t>(a.trunc) + 1));
        }
      }
    }
    return f;
  } else {
    const auto cp = presheaf_copies(a.presheaf(), count);
    PresheafMap out(cp.object.sizes().size());
    for (std::size_t o = 0; o < out.size(); ++o) out[o].assign(cp.object.size(o), kNone);
    for (std::size_t c = 0; c < count; ++c) {
      for (std::size_t o = 0; o < out.size(); ++o) {
        for (Index x = 0; x < a.presheaf().size(o); ++x) out[o][cp.legs[c][o][x]] = per_copy[c].components[o][x];
      }
    }
    return arrow(all, target, std::move(out));
  }
}

template <class T>
T make_copies(const T& a, std::size_t count) {
  if constexpr (kCat<T>) {
    return scat_copies(a, count);
  } else {
    return T(presheaf_copies(a.presheaf(), count).object);
  }
}

std::vector<Index> fixed_cosets(const GSet& s, const Subgroup& h) { return fixed_points_gset(s, h); }

}  // namespace

// ---------------------------------------------------------------- G-objects

template <class T>
void validate(const GObject<T>& x) {
  const auto& g = x.group;
  if (x.action.size() != g.order()) throw InvalidInput("G-object: one automorphism per group element required");
  for (const auto& a : x.action) {
    if (!(source_of<T>(a) == x.value) || !(target_of<T>(a) == x.value) || !is_iso<T>(a)) {
      throw InvalidInput("G-object: action is not by automorphisms");
    }
  }
  if (!same_map<T>(x.action[g.id()], identity(x.value))) throw InvalidInput("G-object: identity acts nontrivially");
  for (Index a = 0; a < g.order(); ++a) {
    for (Index b = 0; b < g.order(); ++b) {
      if (!same_map<T>(compose(x.action[a], x.action[b]), x.action[g.mul(a, b)])) {
        throw InvalidInput("G-object: action is not multiplicative");
      }
    }
  }
}

template <class T>
bool is_valid(const GMap<T>& f) {
  if (!(f.source.group == f.target.group) || !(source_of<T>(f.map) == f.source.value) ||
      !(target_of<T>(f.map) == f.target.value) || !valid_map<T>(f.map)) {
    return false;
  }
  for (Index g = 0; g < f.source.group.order(); ++g) {
    if (!same_map<T>(compose(f.target.action[g], f.map), compose(f.map, f.source.action[g]))) return false;
  }
  return true;
}

template <class T>
GObject<T> trivial_action(const FiniteGroup& g, const T& a) {
  GObject<T> x{g, a, std::vector<MapOf<T>>(g.order(), identity(a))};
  return x;
}

template <class T>
Fixed<T> fixed_points(const GObject<T>& x, const Subgroup& h) {
  if constexpr (kCat<T>) {
    const auto& c = x.value;
    std::vector<Index> objs;
    for (Index o = 0; o < c.objects; ++o) {
      bool fixed = true;
      for (Index e : h.members) fixed = fixed && x.action[e].object_map[o] == o;
      if (fixed) objs.push_back(o);
    }
    const std::size_t n = objs.size();
    std::vector<TruncSSet> maps;
    std::vector<PresheafMap> incl, inv;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const auto& space = c.map(objs[i], objs[j]);
        const std::size_t p = c.pair(objs[i], objs[j]);
        std::vector<std::vector<char>> keep(static_cast<std::size_t>(c.trunc) + 1);
        for (int lvl = 0; lvl <= c.trunc; ++lvl) {
          for (Index e = 0; e < space.size(lvl); ++e) {
            bool fixed = true;
            for (Index g : h.members) fixed = fixed && x.action[g].maps[p][lvl][e] == e;
            keep[lvl].push_back(fixed);
          }
        }
        auto sub = subpresheaf(space.presheaf(), keep);
        maps.emplace_back(sub.object);
        inv.push_back(invert_injection(sub.legs[0], space.presheaf()));
        incl.push_back(std::move(sub.legs[0]));
      }
    }
    std::vector<Index> units;
    for (Index i = 0; i < n; ++i) units.push_back(inv[i * n + i][0][c.units[objs[i]]]);
    auto fixed = make_scategory(c.trunc, n, std::move(maps), std::move(units),
                                [&](Index i, Index j, Index k, int lvl, Index g, Index f) {
                                  const Index v = c.compose(objs[i], objs[j], objs[k], lvl, incl[j * n + k][lvl][g],
                                                            incl[i * n + j][lvl][f]);
                                  return inv[i * n + k][lvl][v];
                                });
    SFunctor inc{fixed, c, objs, incl};
    return {fixed, inc};
  } else {
    const auto& p = x.value.presheaf();
    std::vector<std::vector<char>> keep(p.sizes().size());
    for (std::size_t o = 0; o < keep.size(); ++o) {
      for (Index e = 0; e < p.size(o); ++e) {
        bool fixed = true;
        for (Index g : h.members) fixed = fixed && x.action[g].components[o][e] == e;
        keep[o].push_back(fixed);
      }
    }
    auto sub = subpresheaf(p, keep);
    T obj(sub.object);
    return {obj, arrow(obj, x.value, std::move(sub.legs[0]))};
  }
}

template <class T>
MapOf<T> fixed_map(const GMap<T>& f, const Subgroup& h) {
  const auto s = fixed_points(f.source, h);
  const auto t = fixed_points(f.target, h);
  return corestrict<T>(compose(f.map, s.inclusion), t);
}

template <class T>
T copies(const T& a, std::size_t count) {
  return make_copies(a, count);
}

template <class T>
GObject<T> tensor_set(const GSet& s, const T& a) {
  GObject<T> out{s.group, make_copies(a, s.size), {}};
  for (Index g = 0; g < s.group.order(); ++g) {
    std::vector<MapOf<T>> per_copy;
    for (Index c = 0; c < s.size; ++c) per_copy.push_back(copy_leg(a, out.value, s.size, s.act(g, c)));
    out.action.push_back(copair(a, out.value, per_copy, out.value));
  }
  return out;
}

template <class T>
GObject<T> tensor_orbit(const FiniteGroup& g, const Subgroup& h, const T& a) {
  return tensor_set(coset_gset(g, h).gset, a);
}

template <class T>
GMap<T> tensor_set_map(const GSet& s, const MapOf<T>& f) {
  auto src = tensor_set(s, source_of<T>(f));
  auto dst = tensor_set(s, target_of<T>(f));
  std::vector<MapOf<T>> per_copy;
  for (Index c = 0; c < s.size; ++c) per_copy.push_back(compose(copy_leg(target_of<T>(f), dst.value, s.size, c), f));
  auto m = copair(source_of<T>(f), src.value, per_copy, dst.value);
  return {std::move(src), std::move(dst), std::move(m)};
}

template <class T>
GMap<T> extend_from_orbit(const Subgroup& k, const T& a, const GObject<T>& x, const MapOf<T>& on_base_copy) {
  for (Index e : k.members) {
    if (!same_map<T>(compose(x.action[e], on_base_copy), on_base_copy)) {
      throw InvalidInput("attaching map does not land in the fixed points of the stabilizer");
    }
  }
  const auto cosets = coset_gset(x.group, k);
  auto src = tensor_set(cosets.gset, a);
  std::vector<MapOf<T>> per_copy;
  for (Index c : cosets.representative) per_copy.push_back(compose(x.action[c], on_base_copy));
  auto m = copair(a, src.value, per_copy, x.value);
  return {std::move(src), x, std::move(m)};
}

template <class T>
std::vector<MapOf<T>> equivariant_homs(const GObject<T>& x, const GObject<T>& y, SearchOptions opts) {
  if (!(x.group == y.group)) throw InvalidInput("equivariant maps need a common group");
  if constexpr (kCat<T>) {
    SCatActions actions{x.action, y.action};
    return sfunctor_homs(x.value, y.value, opts, &actions);
  } else {
    const auto& px = x.value.presheaf();
    const auto& py = y.value.presheaf();
    require_same_shape(px, py, "equivariant_homs");
    FinStructure sx = px.structure(), sy = py.structure();
    for (Index g = 0; g < x.group.order(); ++g) {
      for (std::size_t o = 0; o < px.sizes().size(); ++o) {
        sx.unary.push_back({o, o, x.action[g].components[o]});
        sy.unary.push_back({o, o, y.action[g].components[o]});
      }
    }
    HomProblem p = same_signature(sx, sy);
    p.budget = opts.budget;
    std::vector<MapOf<T>> out;
    for (auto& m : all_homs(p)) out.push_back(arrow(x.value, y.value, std::move(m)));
    return out;
  }
}

// ---------------------------------------------------------------- adjunction

template <class T>
AdjunctionReport check_adjunction(const Subgroup& h, const T& a, const GObject<T>& b, SearchOptions opts) {
  const auto& g = b.group;
  const auto tensor = tensor_orbit(g, h, a);
  const std::size_t count = g.order() / h.order();
  const auto fixed = fixed_points(b, h);
  const auto left = equivariant_homs(tensor, b, opts);
  const auto right = plain_homs(a, fixed.object, opts);
  AdjunctionReport r;
  r.left_count = left.size();
  r.right_count = right.size();
  std::set<std::vector<Index>> right_keys, images;
  for (const auto& m : right) right_keys.insert(key<T>(m));
  const auto leg = copy_leg(a, tensor.value, count, 0);
  r.well_defined = true;
  for (const auto& phi : left) {
    try {
      auto img = key<T>(corestrict<T>(compose(phi, leg), fixed));
      r.well_defined = r.well_defined && right_keys.count(img) > 0;
      images.insert(std::move(img));
    } catch (const InvalidInput&) {
      r.well_defined = false;
    }
  }
  r.injective = images.size() == left.size();
  r.surjective = r.well_defined && images.size() == right_keys.size();
  return r;
}

// ---------------------------------------------------------------- cellularity

namespace {

std::string subgroup_text(const FiniteGroup& g, const Subgroup& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.members.size(); ++i) s += (i ? "," : "") + g.name(h.members[i]);
  return s + "}";
}

CheckReport report(const std::string& condition, const std::string& generator, const Subgroup& h,
                   const Subgroup& k, bool verdict, std::string evidence) {
  return {condition, generator, h, k, verdict, std::move(evidence)};
}

/// Pushout of presheaf-carrier G-maps with the induced action.
template <class T>
struct GPushout {
  GObject<T> object;
  MapOf<T> from_b;
  MapOf<T> from_c;
};

template <class T>
GPushout<T> g_pushout(const GMap<T>& f, const GMap<T>& g) {
  const auto& a = f.source.value.presheaf();
  const auto po = pushout(a, f.target.value.presheaf(), g.target.value.presheaf(), f.map.components,
                          g.map.components);
  T obj(po.object);
  GPushout<T> out{{f.source.group, obj, {}}, arrow(f.target.value, obj, po.legs[0]),
                  arrow(g.target.value, obj, po.legs[1])};
  for (Index e = 0; e < f.source.group.order(); ++e) {
    auto m = induced_from_cocone(po, {compose(po.legs[0], f.target.action[e].components),
                                      compose(po.legs[1], g.target.action[e].components)},
                                 po.object);
    out.object.action.push_back(arrow(obj, obj, std::move(m)));
  }
  return out;
}

/// Reduction of a bisimplicial G-object, with the induced action.
GObject<TruncBiSSet> g_reduce(const GObject<TruncBiSSet>& x, BiMap* unit) {
  const auto r = reduce(x.value);
  GObject<TruncBiSSet> out{x.group, r.object.space(), {}};
  for (const auto& a : x.action) out.action.push_back(reduce_extend(r, compose(r.unit, a)));
  if (unit) *unit = r.unit;
  return out;
}

/// Pushout in Segal precategories: reduction of the pushout of spaces.
struct SegalPushout {
  TruncBiSSet object;
  BiMap from_b;
  BiMap from_c;
  Reduction reduction;
};

SegalPushout segal_pushout(const BiMap& f, const BiMap& g) {
  const auto po = pushout(f, g);
  auto r = reduce(po.object);
  return {r.object.space(), compose(r.unit, BiMap{f.target, po.object, po.legs[0]}),
          compose(r.unit, BiMap{g.target, po.object, po.legs[1]}), r};
}

/// (G/K)^H copies of gen and the attaching map restricted to them, landing in X^H.
template <class T>
struct FixedDiagram {
  MapOf<T> gen;     // copies of A -> copies of B
  MapOf<T> attach;  // copies of A -> X^H
  std::vector<Index> cosets;
};

template <class T>
FixedDiagram<T> fixed_diagram(const GSet& s, const Subgroup& h, const MapOf<T>& gen, const GMap<T>& attach,
                              const Fixed<T>& xh) {
  const auto& a = source_of<T>(gen);
  const auto& b = target_of<T>(gen);
  FixedDiagram<T> d;
  d.cosets = fixed_cosets(s, h);
  const std::size_t nf = d.cosets.size();
  const T fa = make_copies(a, nf), fb = make_copies(b, nf);
  std::vector<MapOf<T>> gens, atts;
  const T& all_a = attach.source.value;
  for (std::size_t j = 0; j < nf; ++j) {
    gens.push_back(compose(copy_leg(b, fb, nf, j), gen));
    atts.push_back(corestrict<T>(compose(attach.map, copy_leg(a, all_a, s.size, d.cosets[j])), xh));
  }
  d.gen = copair(a, fa, gens, fb);
  d.attach = copair(a, fa, atts, xh.object);
  return d;
}

/// The map (G/K)^H copies of B -> Y induced by a map out of G/K (x) B.
template <class T>
MapOf<T> restrict_to_fixed_copies(const T& b, const GSet& s, const std::vector<Index>& cosets,
                                  const MapOf<T>& from_all) {
  const T fb = make_copies(b, cosets.size());
  std::vector<MapOf<T>> per;
  for (Index c : cosets) per.push_back(compose(from_all, copy_leg(b, source_of<T>(from_all), s.size, c)));
  return copair(b, fb, per, target_of<T>(from_all));
}

std::string bijection_text(bool ok) { return ok ? "canonical map is a levelwise bijection" : "canonical map is not bijective"; }

}  // namespace

template <class T>
CheckReport check_cellularity_3(const FiniteGroup& g, const Subgroup& h, const Subgroup& k, const T& a) {
  const auto cosets = coset_gset(g, h);
  const auto fc = fixed_cosets(cosets.gset, k);
  const T left = make_copies(a, fc.size());
  const auto tensor = tensor_set(cosets.gset, a);
  const auto fixed = fixed_points(tensor, k);
  bool ok = false;
  std::string why;
  try {
    std::vector<MapOf<T>> per;
    for (Index c : fc) per.push_back(corestrict<T>(copy_leg(a, tensor.value, cosets.gset.size, c), fixed));
    ok = is_iso<T>(copair(a, left, per, fixed.object));
    why = bijection_text(ok);
  } catch (const InvalidInput& e) {
    why = e.what();
  }
  return report("cellularity-3", "orbit tensor", h, k, ok,
                std::to_string(fc.size()) + " fixed cosets of " + subgroup_text(g, h) + " under " +
                    subgroup_text(g, k) + "; " + why);
}

template <class T>
CheckReport check_cellularity_1(const Subgroup& h, const std::vector<GMap<T>>& chain) {
  if constexpr (kCat<T>) {
    throw InvalidInput("chain colimits are provided for simplicial carriers only");
  } else {
    if (chain.empty()) throw InvalidInput("cellularity-1: empty chain");
    const auto& g = chain.front().source.group;
    std::vector<Presheaf> objects{chain.front().source.value.presheaf()};
    std::vector<PresheafMap> maps;
    std::vector<Presheaf> fixed_objects;
    std::vector<PresheafMap> fixed_maps;
    std::vector<Fixed<T>> fixed{fixed_points(chain.front().source, h)};
    fixed_objects.push_back(fixed.back().object.presheaf());
    for (const auto& f : chain) {
      if (!is_valid(f)) throw InvalidInput("cellularity-1: chain map is not equivariant");
      objects.push_back(f.target.value.presheaf());
      maps.push_back(f.map.components);
      fixed.push_back(fixed_points(f.target, h));
      fixed_objects.push_back(fixed.back().object.presheaf());
      fixed_maps.push_back(fixed_map(f, h).components);
    }
    const auto colim = chain_colimit(objects, maps);
    T obj(colim.object);
    GObject<T> gcolim{g, obj, {}};
    for (Index e = 0; e < g.order(); ++e) {
      std::vector<PresheafMap> legs;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& act = i == 0 ? chain.front().source.action[e] : chain[i - 1].target.action[e];
        legs.push_back(compose(colim.legs[i], act.components));
      }
      gcolim.action.push_back(arrow(obj, obj, induced_from_cocone(colim, legs, colim.object)));
    }
    const auto colim_fixed = fixed_points(gcolim, h);
    const auto fixed_colim = chain_colimit(fixed_objects, fixed_maps);
    bool ok = false;
    std::string why;
    try {
      std::vector<PresheafMap> legs;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        auto to_colim = arrow(fixed[i].object, obj, compose(colim.legs[i], fixed[i].inclusion.components));
        legs.push_back(corestrict<T>(to_colim, colim_fixed).components);
      }
      auto m = induced_from_cocone(fixed_colim, legs, colim_fixed.object.presheaf());
      ok = is_bijective(fixed_colim.object, colim_fixed.object.presheaf(), m);
      why = bijection_text(ok);
    } catch (const InvalidInput& e) {
      why = e.what();
    }
    return report("cellularity-1", "chain of length " + std::to_string(chain.size()), h, h, ok,
                  why + "; FINITE-APPROXIMATION: only finite chains are tested");
  }
}

template <class T>
CheckReport check_cellularity_2(const Subgroup& k, const Subgroup& h, const MapOf<T>& gen, const GObject<T>& x,
                                const MapOf<T>& attach) {
  if constexpr (kCat<T>) {
    throw InvalidInput("use the simplicial-category cellularity checks");
  } else {
    const auto cosets = coset_gset(x.group, k);
    const auto& s = cosets.gset;
    const auto t = tensor_set_map<T>(s, gen);
    const auto a = extend_from_orbit(k, source_of<T>(gen), x, attach);
    const auto p = g_pushout(t, a);
    const auto ph = fixed_points(p.object, h);
    const auto xh = fixed_points(x, h);
    const auto d = fixed_diagram<T>(s, h, gen, a, xh);
    const auto q = pushout(d.gen, d.attach);
    bool ok = false;
    std::string why;
    try {
      auto from_b = corestrict<T>(restrict_to_fixed_copies<T>(target_of<T>(gen), s, d.cosets, p.from_b), ph);
      auto from_x = corestrict<T>(compose(p.from_c, xh.inclusion), ph);
      Cocone qc{q.object.presheaf(), q.legs};
      auto m = induced_from_cocone(qc, {from_b.components, from_x.components}, ph.object.presheaf());
      ok = is_bijective(q.object.presheaf(), ph.object.presheaf(), m);
      why = bijection_text(ok);
    } catch (const InvalidInput& e) {
      why = e.what();
    }
    return report("cellularity-2", "boundary generator", h, k, ok,
                  std::to_string(d.cosets.size()) + " fixed cells; " + why);
  }
}

CheckReport check_cellularity_2_objects(const Subgroup& k, const Subgroup& h, const GObject<SCategory>& x) {
  const auto cosets = coset_gset(x.group, k);
  const auto& s = cosets.gset;
  const auto& c = x.value;
  const auto p = attach_objects(c, s.size);
  const auto& pr = p.result;
  const std::size_t levels = static_cast<std::size_t>(c.trunc) + 1;
  auto extend = [&](const SCategory& src, const std::vector<Index>& objs, const std::vector<PresheafMap>& base_maps,
                    std::size_t base_objects, const SCategory& dst) {
    SFunctor f{src, dst, objs, {}};
    for (Index u = 0; u < src.objects; ++u) {
      for (Index v = 0; v < src.objects; ++v) {
        if (u < base_objects && v < base_objects) {
          f.maps.push_back(base_maps[u * base_objects + v]);
        } else if (u == v) {
          f.maps.push_back(identity_map(src.map(u, u).presheaf()));
        } else {
          f.maps.push_back(empty_components(levels));
        }
      }
    }
    return f;
  };
  GObject<SCategory> gp{x.group, pr, {}};
  for (Index e = 0; e < x.group.order(); ++e) {
    std::vector<Index> objs = x.action[e].object_map;
    for (Index i = 0; i < s.size; ++i) objs.push_back(static_cast<Index>(c.objects + s.act(e, i)));
    gp.action.push_back(extend(pr, objs, x.action[e].maps, c.objects, pr));
  }
  validate(gp);
  const auto ph = fixed_points(gp, h);
  const auto xh = fixed_points(x, h);
  const auto fc = fixed_cosets(s, h);
  const auto q = attach_objects(xh.object, fc.size());
  std::vector<Index> objs = xh.inclusion.object_map;
  for (Index i : fc) objs.push_back(static_cast<Index>(c.objects + i));
  bool ok = false;
  std::string why;
  try {
    auto f = extend(q.result, objs, xh.inclusion.maps, xh.object.objects, pr);
    ok = is_valid(f) && is_isomorphism(corestrict<SCategory>(f, ph));
    why = bijection_text(ok);
  } catch (const InvalidInput& e) {
    why = e.what();
  }
  return report("cellularity-2", "adjoin object", h, k, ok,
                std::to_string(fc.size()) + " of " + std::to_string(s.size) + " new objects fixed; " + why);
}

CheckReport check_cellularity_2_cell(const Subgroup& k, const Subgroup& h, const GObject<SCategory>& x, int n,
                                     const CellAttachment& cell, std::size_t budget) {
  const auto& c = x.value;
  for (Index e : k.members) {
    const auto& act = x.action[e];
    if (act.object_map[cell.source] != cell.source || act.object_map[cell.target] != cell.target ||
        !(compose(act.on_maps(cell.source, cell.target), cell.boundary).components == cell.boundary.components)) {
      throw InvalidInput("attached cell is not fixed by the stabilizer");
    }
  }
  const auto cosets = coset_gset(x.group, k);
  const auto& s = cosets.gset;
  std::vector<CellAttachment> cells;
  for (Index rep : cosets.representative) {
    const auto& act = x.action[rep];
    cells.push_back({act.object_map[cell.source], act.object_map[cell.target],
                     compose(act.on_maps(cell.source, cell.target), cell.boundary)});
  }
  const auto p = attach_cells(c, n, cells, budget);
  GObject<SCategory> gp{x.group, p.result, {}};
  for (Index e = 0; e < x.group.order(); ++e) {
    std::vector<Index> perm;
    for (Index i = 0; i < s.size; ++i) perm.push_back(s.act(e, i));
    gp.action.push_back(attach_functor(p, p, x.action[e], perm));
  }
  validate(gp);
  const auto ph = fixed_points(gp, h);
  const auto xh = fixed_points(x, h);
  const auto fc = fixed_cosets(s, h);
  const auto inv = invert_inclusion(xh.inclusion);
  std::vector<CellAttachment> fixed_cells;
  for (Index i : fc) {
    const auto& cl = cells[i];
    const Index a = inv.objects[cl.source], b = inv.objects[cl.target];
    if (a == kNone || b == kNone) throw Error("fixed cell has endpoints outside the fixed points");
    PresheafMap comps = cl.boundary.components;
    for (std::size_t lvl = 0; lvl < comps.size(); ++lvl) {
      for (auto& e : comps[lvl]) e = inv.maps[c.pair(cl.source, cl.target)][lvl][e];
    }
    fixed_cells.push_back({a, b, SSetMap{cl.boundary.source, xh.object.map(a, b), comps}});
  }
  const auto q = attach_cells(xh.object, n, fixed_cells, budget);
  bool ok = false;
  std::string why;
  try {
    auto f = attach_functor(q, p, xh.inclusion, fc);
    ok = is_isomorphism(corestrict<SCategory>(f, ph));
    why = bijection_text(ok);
  } catch (const InvalidInput& e) {
    why = e.what();
  }
  return report("cellularity-2", "U(boundary of Delta[" + std::to_string(n) + "]) -> U(Delta[" + std::to_string(n) + "])",
                h, k, ok, std::to_string(fc.size()) + " of " + std::to_string(s.size) + " cells fixed; " + why);
}

SegalCellularityReport check_cellularity_2_segal(const Subgroup& k, const Subgroup& h, const BiMap& gen,
                                                 const GObject<TruncBiSSet>& x, const BiMap& attach) {
  if (!is_segal_precategory(x.value)) throw InvalidInput("cellularity-2: target is not a Segal precategory");
  SegalCellularityReport r;
  const auto ra = reduce(gen.source);
  const auto rb = reduce(gen.target);
  const BiMap gen_r = reduce_extend(ra, compose(rb.unit, gen));
  const TruncBiSSet& ar = gen_r.source;
  const TruncBiSSet& br = gen_r.target;
  if (!(attach.source == ar)) throw InvalidInput("cellularity-2: attaching map must start at the reduced source");

  // left square: B u_A A_r, reduced, against B_r
  {
    const auto sq = segal_pushout(gen, ra.unit);
    try {
      const auto po = pushout(gen, ra.unit);
      Cocone cc{po.object.presheaf(), po.legs};
      auto m = induced_from_cocone(cc, {rb.unit.components, gen_r.components}, br.presheaf());
      const auto to_br = reduce_extend(sq.reduction, BiMap{po.object, br, m});
      r.left_square = is_bijective(sq.object.presheaf(), br.presheaf(), to_br.components);
    } catch (const InvalidInput&) {
      r.left_square = false;
    }
  }

  const auto cosets = coset_gset(x.group, k);
  const auto& s = cosets.gset;
  const auto t_r = tensor_set_map<TruncBiSSet>(s, gen_r);
  const auto a_r = extend_from_orbit(k, ar, x, attach);

  // outer rectangle against the right square, on the underlying objects
  {
    const auto t = tensor_set_map<TruncBiSSet>(s, gen);
    const auto units = tensor_set_map<TruncBiSSet>(s, ra.unit);
    const auto outer = segal_pushout(t.map, compose(a_r.map, units.map));
    const auto right = segal_pushout(t_r.map, a_r.map);
    try {
      const auto bunits = tensor_set_map<TruncBiSSet>(s, rb.unit);
      const auto po = pushout(t.map, compose(a_r.map, units.map));
      Cocone cc{po.object.presheaf(), po.legs};
      auto m = induced_from_cocone(cc, {compose(right.from_b, bunits.map).components, right.from_c.components},
                                   right.object.presheaf());
      const auto cmp = reduce_extend(outer.reduction, BiMap{po.object, right.object, m});
      r.outer_rectangle = is_bijective(outer.object.presheaf(), right.object.presheaf(), cmp.components);
    } catch (const InvalidInput&) {
      r.outer_rectangle = false;
    }
  }

  // fixed points of the equivariant pushout against the pushout of fixed points
  const auto p = g_pushout(t_r, a_r);
  BiMap unit;
  const auto pr = g_reduce(p.object, &unit);
  const auto ph = fixed_points(pr, h);
  const auto xh = fixed_points(x, h);
  const auto d = fixed_diagram<TruncBiSSet>(s, h, gen_r, a_r, xh);
  const auto q = segal_pushout(d.gen, d.attach);
  bool ok = false;
  std::string why;
  try {
    const auto qpo = pushout(d.gen, d.attach);
    auto from_b = corestrict<TruncBiSSet>(restrict_to_fixed_copies<TruncBiSSet>(br, s, d.cosets, compose(unit, p.from_b)), ph);
    auto from_x = corestrict<TruncBiSSet>(compose(compose(unit, p.from_c), xh.inclusion), ph);
    Cocone cc{qpo.object.presheaf(), qpo.legs};
    auto m = induced_from_cocone(cc, {from_b.components, from_x.components}, ph.object.presheaf());
    const auto cmp = reduce_extend(q.reduction, BiMap{qpo.object, ph.object, m});
    ok = is_bijective(q.object.presheaf(), ph.object.presheaf(), cmp.components);
    why = bijection_text(ok);
  } catch (const InvalidInput& e) {
    why = e.what();
  }
  r.fixed = report("cellularity-2", "reduced generator", h, k, ok,
                   std::to_string(d.cosets.size()) + " fixed cells; " + why);
  return r;
}

// ---------------------------------------------------------------- weak equivalences

bool GEvidence::all_positive() const {
  for (const auto& e : per_subgroup) {
    if (!e.pi0_bijective || !e.homology_agrees) return false;
  }
  return true;
}

namespace {

FixedEvidence sset_evidence(const SSetMap& f) {
  FixedEvidence e;
  e.isomorphism = is_bijective(f.source.presheaf(), f.target.presheaf(), f.components);
  const auto s = pi0(f.source);
  const auto t = pi0(f.target);
  const auto m = pi0_map(f);
  std::set<Index> hit(m.begin(), m.end());
  e.pi0_bijective = s.count == t.count && hit.size() == t.count;
  e.homology_agrees = true;
  if (f.source.trunc() >= 1) {
    e.homology_agrees =
        homology(f.source, f.source.trunc() - 1).groups == homology(f.target, f.target.trunc() - 1).groups;
  }
  return e;
}

}  // namespace

template <class T>
GEvidence g_weak_equivalence_evidence(const GMap<T>& f, const SubgroupFamily& family) {
  if (!is_valid(f)) throw InvalidInput("weak equivalence evidence: map is not equivariant");
  GEvidence out;
  for (const auto& h : family.members) {
    const auto m = fixed_map(f, h);
    FixedEvidence e;
    if constexpr (kCat<T>) {
      const auto dk = dk_equivalence_evidence(m);
      e.isomorphism = is_isomorphism(m);
      e.pi0_bijective = dk.pi0_fully_faithful && dk.pi0_essentially_surjective;
      e.homology_agrees = true;
      for (const auto& p : dk.pairs) e.homology_agrees = e.homology_agrees && p.homology_agrees;
    } else if constexpr (std::is_same_v<T, TruncBiSSet>) {
      e.isomorphism = e.pi0_bijective = e.homology_agrees = true;
      for (int lvl = 0; lvl <= m.source.trunc(); ++lvl) {
        const auto se = sset_evidence(slice_map(m, lvl));
        e.isomorphism = e.isomorphism && se.isomorphism;
        e.pi0_bijective = e.pi0_bijective && se.pi0_bijective;
        e.homology_agrees = e.homology_agrees && se.homology_agrees;
      }
    } else {
      e = sset_evidence(m);
    }
    e.h = h;
    out.per_subgroup.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- orbit diagrams

namespace {

Index point_map(const OrbitCategory& o, std::size_t h, std::size_t k, Index w) {
  for (Index u = 0; u < o.group.order(); ++u) {
    if (o.map_for(h, k, u) == w) return u;
  }
  throw Error("orbit map without a representing element");
}

std::size_t trivial_object(const OrbitCategory& o) { return o.object_of(trivial_subgroup(o.group)); }

template <class T>
FinStructure diagram_structure(const OrbitDiagram<T>& f) {
  FinStructure s;
  const std::size_t n = f.values.size();
  const std::size_t objs = f.values.front().presheaf().sizes().size();
  for (std::size_t h = 0; h < n; ++h) {
    const auto ps = f.values[h].presheaf().structure();
    for (std::size_t o = 0; o < objs; ++o) {
      s.add_sort(ps.sort_sizes[o]);
      s.rank.push_back(ps.rank[o]);
    }
    for (const auto& u : ps.unary) s.unary.push_back({h * objs + u.src, h * objs + u.dst, u.table});
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      for (Index w = 0; w < f.orbits.hom(h, k).size(); ++w) {
        for (std::size_t o = 0; o < objs; ++o) s.unary.push_back({k * objs + o, h * objs + o, f.on(h, k, w)[o]});
      }
    }
  }
  return s;
}

/// Pointwise left Kan extension with the data needed for units and counits.
template <class T>
struct LanData {
  OrbitDiagram<T> diagram;
  std::vector<Cocone> copies;    // per orbit: |hom(h, e)| copies of X
  std::vector<PresheafMap> classes;  // per orbit: copies -> value
};

template <class T>
LanData<T> lan_data(const GObject<T>& x) {
  LanData<T> out;
  auto& d = out.diagram;
  d.orbits = orbit_category(x.group);
  const auto& o = d.orbits;
  const std::size_t n = o.objects.size();
  const std::size_t e = trivial_object(o);
  const auto& px = x.value.presheaf();
  const std::size_t objs = px.sizes().size();
  for (std::size_t h = 0; h < n; ++h) {
    const std::size_t maps_to_e = o.hom(h, e).size();
    auto cp = presheaf_copies(px, maps_to_e);
    std::vector<std::vector<std::pair<Index, Index>>> pairs(objs);
    for (Index v = 0; v < maps_to_e; ++v) {
      for (Index g = 0; g < x.group.order(); ++g) {
        const Index moved = o.compose(h, e, e, o.map_for(e, e, g), v);
        for (std::size_t ob = 0; ob < objs; ++ob) {
          for (Index el = 0; el < px.size(ob); ++el) {
            pairs[ob].emplace_back(cp.legs[moved][ob][el], cp.legs[v][ob][x.action[g].components[ob][el]]);
          }
        }
      }
    }
    auto q = quotient(cp.object, pairs);
    d.values.emplace_back(q.object);
    out.classes.push_back(q.legs[0]);
    out.copies.push_back(std::move(cp));
  }
  d.maps.resize(n * n);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      for (Index w = 0; w < o.hom(h, k).size(); ++w) {
        PresheafMap m(objs);
        for (std::size_t ob = 0; ob < objs; ++ob) m[ob].assign(d.values[k].presheaf().size(ob), kNone);
        for (Index v = 0; v < o.hom(k, e).size(); ++v) {
          const Index vw = o.compose(h, k, e, v, w);
          for (std::size_t ob = 0; ob < objs; ++ob) {
            for (Index el = 0; el < px.size(ob); ++el) {
              m[ob][out.classes[k][ob][out.copies[k].legs[v][ob][el]]] =
                  out.classes[h][ob][out.copies[h].legs[vw][ob][el]];
            }
          }
        }
        d.maps[h * n + k].push_back(std::move(m));
      }
    }
  }
  validate(d);
  return out;
}

}  // namespace

template <class T>
void validate(const OrbitDiagram<T>& f) {
  const auto& o = f.orbits;
  const std::size_t n = o.objects.size();
  if (f.values.size() != n || f.maps.size() != n * n) throw InvalidInput("orbit diagram: wrong number of values");
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      if (f.maps[h * n + k].size() != o.hom(h, k).size()) throw InvalidInput("orbit diagram: missing maps");
      for (const auto& m : f.maps[h * n + k]) {
        if (!is_valid_map(f.values[k].presheaf(), f.values[h].presheaf(), m)) {
          throw InvalidInput("orbit diagram: structure map is not a map");
        }
      }
    }
    if (!maps_equal(f.on(h, h, o.identity(h)), identity_map(f.values[h].presheaf()))) {
      throw InvalidInput("orbit diagram: identities are not preserved");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (Index w1 = 0; w1 < o.hom(a, b).size(); ++w1) {
          for (Index w2 = 0; w2 < o.hom(b, c).size(); ++w2) {
            if (!maps_equal(f.on(a, c, o.compose(a, b, c, w2, w1)), compose(f.on(a, b, w1), f.on(b, c, w2)))) {
              throw InvalidInput("orbit diagram: composition is not preserved");
            }
          }
        }
      }
    }
  }
}

template <class T>
OrbitDiagram<T> fixed_point_diagram(const GObject<T>& y) {
  OrbitDiagram<T> d;
  d.orbits = orbit_category(y.group);
  const auto& o = d.orbits;
  const std::size_t n = o.objects.size();
  std::vector<Fixed<T>> fixed;
  for (const auto& h : o.objects) {
    fixed.push_back(fixed_points(y, h));
    d.values.push_back(fixed.back().object);
  }
  d.maps.resize(n * n);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      for (Index w = 0; w < o.hom(h, k).size(); ++w) {
        const Index u = point_map(o, h, k, w);
        const auto m = compose(y.action[u], fixed[k].inclusion);
        d.maps[h * n + k].push_back(corestrict<T>(m, fixed[h]).components);
      }
    }
  }
  validate(d);
  return d;
}

template <class T>
GObject<T> elmendorf_restrict(const OrbitDiagram<T>& f) {
  const auto& o = f.orbits;
  const std::size_t e = trivial_object(o);
  GObject<T> out{o.group, f.values[e], {}};
  for (Index g = 0; g < o.group.order(); ++g) out.action.push_back(arrow(out.value, out.value, f.on(e, e, o.map_for(e, e, g))));
  validate(out);
  return out;
}

template <class T>
OrbitDiagram<T> elmendorf_lan(const GObject<T>& x) {
  return lan_data(x).diagram;
}

template <class T>
std::vector<std::vector<PresheafMap>> diagram_homs(const OrbitDiagram<T>& a, const OrbitDiagram<T>& b,
                                                   SearchOptions opts) {
  if (!(a.orbits.group == b.orbits.group)) throw InvalidInput("diagram maps need a common group");
  const auto sa = diagram_structure(a);
  const auto sb = diagram_structure(b);
  HomProblem p = same_signature(sa, sb);
  p.budget = opts.budget;
  const std::size_t n = a.values.size();
  const std::size_t objs = a.values.front().presheaf().sizes().size();
  std::vector<std::vector<PresheafMap>> out;
  for (const auto& m : all_homs(p)) {
    std::vector<PresheafMap> comps;
    for (std::size_t h = 0; h < n; ++h) comps.emplace_back(m.begin() + h * objs, m.begin() + (h + 1) * objs);
    out.push_back(std::move(comps));
  }
  return out;
}

template <class T>
ElmendorfReport check_elmendorf_adjunction(const GObject<T>& x, const OrbitDiagram<T>& f, SearchOptions opts) {
  validate(x);
  validate(f);
  ElmendorfReport r;
  r.notes = "strict pointwise Kan extension; derived functors are not computed";
  const auto lan = lan_data(x);
  const auto& o = f.orbits;
  const std::size_t e = trivial_object(o);
  const std::size_t n = o.objects.size();
  const auto& px = x.value.presheaf();
  const std::size_t objs = px.sizes().size();
  const Index id_e = o.identity(e);
  auto unit_of = [&](const LanData<T>& l, const Presheaf& src) {
    PresheafMap m(objs);
    for (std::size_t ob = 0; ob < objs; ++ob) {
      for (Index el = 0; el < src.size(ob); ++el) m[ob].push_back(l.classes[e][ob][l.copies[e].legs[id_e][ob][el]]);
    }
    return m;
  };
  const PresheafMap unit = unit_of(lan, px);
  const auto restricted = elmendorf_restrict(f);
  const auto left = diagram_homs(lan.diagram, f, opts);
  const auto right = equivariant_homs(x, restricted, opts);
  r.left_count = left.size();
  r.right_count = right.size();
  std::set<std::vector<Index>> right_keys, images;
  for (const auto& m : right) right_keys.insert(key<T>(m));
  bool landed = true;
  for (const auto& phi : left) {
    auto img = key<T>(arrow(x.value, restricted.value, compose(phi[e], unit)));
    landed = landed && right_keys.count(img) > 0;
    images.insert(std::move(img));
  }
  r.bijection = landed && images.size() == left.size() && images.size() == right_keys.size();

  // counit at F: i_* i^* F -> F, [(v, y)] |-> F(v)(y)
  const auto lan_f = lan_data(restricted);
  std::vector<PresheafMap> counit(n);
  for (std::size_t h = 0; h < n; ++h) {
    counit[h].resize(objs);
    for (std::size_t ob = 0; ob < objs; ++ob) counit[h][ob].assign(lan_f.diagram.values[h].presheaf().size(ob), kNone);
    for (Index v = 0; v < o.hom(h, e).size(); ++v) {
      for (std::size_t ob = 0; ob < objs; ++ob) {
        for (Index el = 0; el < f.values[e].presheaf().size(ob); ++el) {
          counit[h][ob][lan_f.classes[h][ob][lan_f.copies[h].legs[v][ob][el]]] = f.on(h, e, v)[ob][el];
        }
      }
    }
  }
  const PresheafMap unit_f = unit_of(lan_f, f.values[e].presheaf());
  r.unit_triangle = maps_equal(compose(counit[e], unit_f), identity_map(f.values[e].presheaf()));

  // (counit at i_* X) o (i_* unit) = id
  const auto restricted_lan = elmendorf_restrict(lan.diagram);
  const auto lan2 = lan_data(restricted_lan);
  r.counit_triangle = true;
  for (std::size_t h = 0; h < n; ++h) {
    const auto& value = lan.diagram.values[h].presheaf();
    PresheafMap lan_unit(objs), back(objs);
    for (std::size_t ob = 0; ob < objs; ++ob) {
      lan_unit[ob].assign(value.size(ob), kNone);
      back[ob].assign(lan2.diagram.values[h].presheaf().size(ob), kNone);
    }
    for (Index v = 0; v < o.hom(h, e).size(); ++v) {
      for (std::size_t ob = 0; ob < objs; ++ob) {
        for (Index el = 0; el < px.size(ob); ++el) {
          lan_unit[ob][lan.classes[h][ob][lan.copies[h].legs[v][ob][el]]] =
              lan2.classes[h][ob][lan2.copies[h].legs[v][ob][unit[ob][el]]];
        }
        for (Index el = 0; el < restricted_lan.value.presheaf().size(ob); ++el) {
          back[ob][lan2.classes[h][ob][lan2.copies[h].legs[v][ob][el]]] = lan.diagram.on(h, e, v)[ob][el];
        }
      }
    }
    r.counit_triangle = r.counit_triangle && maps_equal(compose(back, lan_unit), identity_map(value));
  }
  return r;
}

// ---------------------------------------------------------------- instantiations

#define EQCAT_ALL_CARRIERS(T)                                                                                   \
  template void validate<T>(const GObject<T>&);                                                                 \
  template bool is_valid<T>(const GMap<T>&);                                                                    \
  template GObject<T> trivial_action<T>(const FiniteGroup&, const T&);                                          \
  template Fixed<T> fixed_points<T>(const GObject<T>&, const Subgroup&);                                        \
  template MapOf<T> fixed_map<T>(const GMap<T>&, const Subgroup&);                                              \
  template T copies<T>(const T&, std::size_t);                                                                  \
  template GObject<T> tensor_set<T>(const GSet&, const T&);                                                     \
  template GObject<T> tensor_orbit<T>(const FiniteGroup&, const Subgroup&, const T&);                           \
  template GMap<T> tensor_set_map<T>(const GSet&, const MapOf<T>&);                                             \
  template GMap<T> extend_from_orbit<T>(const Subgroup&, const T&, const GObject<T>&, const MapOf<T>&);         \
  template std::vector<MapOf<T>> equivariant_homs<T>(const GObject<T>&, const GObject<T>&, SearchOptions);      \
  template AdjunctionReport check_adjunction<T>(const Subgroup&, const T&, const GObject<T>&, SearchOptions);   \
  template CheckReport check_cellularity_3<T>(const FiniteGroup&, const Subgroup&, const Subgroup&, const T&);  \
  template GEvidence g_weak_equivalence_evidence<T>(const GMap<T>&, const SubgroupFamily&);

#define EQCAT_PRESHEAF_CARRIERS(T)                                                                              \
  template CheckReport check_cellularity_1<T>(const Subgroup&, const std::vector<GMap<T>>&);                    \
  template CheckReport check_cellularity_2<T>(const Subgroup&, const Subgroup&, const MapOf<T>&,                \
                                              const GObject<T>&, const MapOf<T>&);                              \
  template void validate<T>(const OrbitDiagram<T>&);                                                            \
  template OrbitDiagram<T> fixed_point_diagram<T>(const GObject<T>&);                                           \
  template GObject<T> elmendorf_restrict<T>(const OrbitDiagram<T>&);                                            \
  template OrbitDiagram<T> elmendorf_lan<T>(const GObject<T>&);                                                 \
  template std::vector<std::vector<PresheafMap>> diagram_homs<T>(const OrbitDiagram<T>&, const OrbitDiagram<T>&, \
                                                                 SearchOptions);                                \
  template ElmendorfReport check_elmendorf_adjunction<T>(const GObject<T>&, const OrbitDiagram<T>&, SearchOptions);

EQCAT_ALL_CARRIERS(TruncSSet)
EQCAT_ALL_CARRIERS(TruncBiSSet)
EQCAT_ALL_CARRIERS(SCategory)
EQCAT_PRESHEAF_CARRIERS(TruncSSet)
EQCAT_PRESHEAF_CARRIERS(TruncBiSSet)

}  // namespace eqcat
