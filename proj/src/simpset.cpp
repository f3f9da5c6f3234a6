#include "eqcat/simpset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "eqcat/detail/keyed_builder.hpp"
#include "eqcat/detail/simplicial_act.hpp"
#include "eqcat/error.hpp"

namespace eqcat {

using detail::KeyIndex;

// ---------------------------------------------------------------- TruncSSet

TruncSSet::TruncSSet() : data_(Shape::simplicial(0)) {}

TruncSSet::TruncSSet(Presheaf p) : data_(std::move(p)) {
  if (data_.shape().kind() != ShapeKind::Simplicial) throw InvalidInput("expected a simplicial-shaped presheaf");
  data_.validate();
}

TruncSSet TruncSSet::empty(int trunc) { return TruncSSet(initial(Shape::simplicial(trunc))); }

TruncSSet TruncSSet::point(int trunc) { return TruncSSet(terminal(Shape::simplicial(trunc))); }

bool TruncSSet::is_degenerate(int n, Index x) const {
  for (int i = 0; i < n; ++i) {
    if (degen(n - 1, i, face(n, i, x)) == x) return true;
  }
  return false;
}

Index TruncSSet::act(int n, Index x, std::span<const int> theta) const {
  if (static_cast<int>(theta.size()) - 1 > trunc() || n > trunc()) {
    throw InvalidInput("act: operator leaves the truncation");
  }
  return detail::simplicial_act(
      n, x, theta, [this](int l, int i, Index y) { return face(l, i, y); },
      [this](int l, int i, Index y) { return degen(l, i, y); });
}

Index TruncSSet::vertex(int n, Index x, int k) const {
  const int theta[] = {k};
  return act(n, x, theta);
}

bool is_valid(const SSetMap& f) { return is_valid_map(f.source.presheaf(), f.target.presheaf(), f.components); }

SSetMap compose(const SSetMap& second, const SSetMap& first) {
  if (!(first.target == second.source)) throw InvalidInput("compose: maps are not composable");
  return {first.source, second.target, compose(second.components, first.components)};
}

SSetMap identity(const TruncSSet& x) { return {x, x, identity_map(x.presheaf())}; }

// ---------------------------------------------------------------- FiniteCategory

std::vector<Index> FiniteCategory::hom(Index x, Index y) const {
  std::vector<Index> out;
  for (Index f = 0; f < src.size(); ++f) {
    if (src[f] == x && tgt[f] == y) out.push_back(f);
  }
  return out;
}

bool FiniteCategory::is_isomorphism(Index f) const {
  for (Index g = 0; g < src.size(); ++g) {
    if (src[g] != tgt[f] || tgt[g] != src[f]) continue;
    if (compose(g, f) == identity[src[f]] && compose(f, g) == identity[tgt[f]]) return true;
  }
  return false;
}

void FiniteCategory::validate() const {
  const std::size_t m = src.size();
  if (tgt.size() != m || identity.size() != objects || comp.size() != m * m) {
    throw InvalidInput("finite category: table sizes are inconsistent");
  }
  for (Index f = 0; f < m; ++f) {
    if (src[f] >= objects || tgt[f] >= objects) throw InvalidInput("finite category: endpoint out of range");
  }
  for (Index x = 0; x < objects; ++x) {
    const Index i = identity[x];
    if (i >= m || src[i] != x || tgt[i] != x) throw InvalidInput("finite category: bad identity");
  }
  for (Index g = 0; g < m; ++g) {
    for (Index f = 0; f < m; ++f) {
      const Index h = compose(g, f);
      if (tgt[f] != src[g]) {
        if (h != kNone) throw InvalidInput("finite category: composite defined on a non-composable pair");
        continue;
      }
      if (h >= m || src[h] != src[f] || tgt[h] != tgt[g]) throw InvalidInput("finite category: bad composite");
    }
  }
  for (Index f = 0; f < m; ++f) {
    if (compose(identity[tgt[f]], f) != f || compose(f, identity[src[f]]) != f) {
      throw InvalidInput("finite category: identity law fails");
    }
  }
  for (Index f = 0; f < m; ++f) {
    for (Index g = 0; g < m; ++g) {
      if (src[g] != tgt[f]) continue;
      for (Index h = 0; h < m; ++h) {
        if (src[h] != tgt[g]) continue;
        if (compose(h, compose(g, f)) != compose(compose(h, g), f)) {
          throw InvalidInput("finite category: composition is not associative");
        }
      }
    }
  }
}

namespace {

FiniteCategory finish(FiniteCategory c, const std::function<Index(Index, Index)>& comp) {
  const std::size_t m = c.src.size();
  c.comp.assign(m * m, kNone);
  for (Index g = 0; g < m; ++g) {
    for (Index f = 0; f < m; ++f) {
      if (c.tgt[f] == c.src[g]) c.comp[static_cast<std::size_t>(g) * m + f] = comp(g, f);
    }
  }
  c.validate();
  return c;
}

}  // namespace

FiniteCategory FiniteCategory::discrete(std::size_t objects) {
  FiniteCategory c;
  c.objects = objects;
  for (Index x = 0; x < objects; ++x) {
    c.src.push_back(x);
    c.tgt.push_back(x);
    c.identity.push_back(x);
  }
  return finish(std::move(c), [](Index g, Index) { return g; });
}


FiniteCategory FiniteCategory::poset(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  FiniteCategory c;
  c.objects = n;
  c.identity.assign(n, kNone);
  std::vector<std::vector<Index>> arrow(n, std::vector<Index>(n, kNone));
  for (Index i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw InvalidInput("poset: relation matrix is not square");
    for (Index j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      arrow[i][j] = static_cast<Index>(c.src.size());
      c.src.push_back(i);
      c.tgt.push_back(j);
    }
    if (arrow[i][i] == kNone) throw InvalidInput("poset: relation is not reflexive");
    c.identity[i] = arrow[i][i];
  }
  const std::vector<Index> src = c.src;
  const std::vector<Index> tgt = c.tgt;
  return finish(std::move(c), [&](Index g, Index f) {
    const Index h = arrow[src[f]][tgt[g]];
    if (h == kNone) throw InvalidInput("poset: relation is not transitive");
    return h;
  });
}

FiniteCategory FiniteCategory::ordinal(int n) {
  if (n < 0) throw InvalidInput("ordinal: negative size");
  std::vector<std::vector<bool>> leq(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) leq[i][j] = true;
  }
  return poset(leq);
}

FiniteCategory FiniteCategory::monoid(const std::vector<std::vector<Index>>& mul, Index unit) {
  const std::size_t m = mul.size();
  if (unit >= m) throw InvalidInput("monoid: unit out of range");
  FiniteCategory c;
  c.objects = 1;
  c.src.assign(m, 0);
  c.tgt.assign(m, 0);
  c.identity = {unit};
  for (const auto& row : mul) {
    if (row.size() != m) throw InvalidInput("monoid: multiplication table is not square");
    for (Index v : row) {
      if (v >= m) throw InvalidInput("monoid: product out of range");
    }
  }
  return finish(std::move(c), [&](Index g, Index f) { return mul[g][f]; });
}

FiniteCategory FiniteCategory::walking_isomorphism() {
  // morphisms: id_0, id_1, a : 0 -> 1, b : 1 -> 0
  FiniteCategory c;
  c.objects = 2;
  c.src = {0, 1, 0, 1};
  c.tgt = {0, 1, 1, 0};
  c.identity = {0, 1};
  return finish(std::move(c), [](Index g, Index f) -> Index {
    if (g <= 1) return f;
    if (f <= 1) return g;
    return g == 2 ? 1 : 0;  // a o b = id_1, b o a = id_0
  });
}

FiniteCategory FiniteCategory::free_on_dag(std::size_t objects,
                                           const std::vector<std::pair<Index, Index>>& edges) {
  for (const auto& [a, b] : edges) {
    if (a >= objects || b >= objects) throw InvalidInput("free_on_dag: edge endpoint out of range");
  }
  // paths are edge sequences; the empty path at x is the identity
  std::vector<std::vector<Index>> paths;
  std::vector<Index> src, tgt;
  for (Index x = 0; x < objects; ++x) {
    paths.push_back({});
    src.push_back(x);
    tgt.push_back(x);
  }
  std::size_t frontier = 0;
  for (std::size_t len = 1; frontier < paths.size(); ++len) {
    if (len > objects) throw InvalidInput("free_on_dag: graph has a directed cycle");
    const std::size_t end = paths.size();
    for (std::size_t p = frontier; p < end; ++p) {
      for (Index e = 0; e < edges.size(); ++e) {
        if (edges[e].first != tgt[p]) continue;
        auto path = paths[p];
        path.push_back(e);
        paths.push_back(std::move(path));
        src.push_back(src[p]);
        tgt.push_back(edges[e].second);
      }
    }
    frontier = end;
  }
  std::map<std::pair<Index, std::vector<Index>>, Index> lookup;
  for (Index p = 0; p < paths.size(); ++p) lookup[{src[p], paths[p]}] = p;
  FiniteCategory c;
  c.objects = objects;
  c.src = src;
  c.tgt = tgt;
  for (Index x = 0; x < objects; ++x) c.identity.push_back(x);
  return finish(std::move(c), [&](Index g, Index f) {
    auto path = paths[f];
    path.insert(path.end(), paths[g].begin(), paths[g].end());
    return lookup.at({src[f], path});
  });
}

FiniteCategory FiniteCategory::disjoint_union(const FiniteCategory& a, const FiniteCategory& b) {
  const Index oa = static_cast<Index>(a.objects);
  const Index ma = static_cast<Index>(a.morphism_count());
  FiniteCategory c;
  c.objects = a.objects + b.objects;
  c.src = a.src;
  c.tgt = a.tgt;
  for (Index f = 0; f < b.morphism_count(); ++f) {
    c.src.push_back(b.src[f] + oa);
    c.tgt.push_back(b.tgt[f] + oa);
  }
  c.identity = a.identity;
  for (Index i : b.identity) c.identity.push_back(i + ma);
  return finish(std::move(c), [&](Index g, Index f) {
    if (g < ma) return a.compose(g, f);
    return b.compose(g - ma, f - ma) + ma;
  });
}

// Functors between finite categories are exactly maps of their 2-truncated nerves.
bool categories_isomorphic(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.objects != b.objects || a.morphism_count() != b.morphism_count()) return false;
  return find_isomorphism(nerve(a, 2).presheaf(), nerve(b, 2).presheaf()).has_value();
}

// ---------------------------------------------------------------- standard objects

std::vector<std::vector<int>> monotone_sequences(int k, int n) {
  std::vector<std::vector<int>> out;
  if (k < 0 || n < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(k) + 1, 0);
  while (true) {
    out.push_back(cur);
    int p = k;
    while (p >= 0 && cur[p] == n) --p;
    if (p < 0) break;
    ++cur[p];
    for (int q = p + 1; q <= k; ++q) cur[q] = cur[p];
  }
  return out;
}

namespace {

using Seq = std::vector<int>;

unsigned vertex_mask(const Seq& s) {
  unsigned m = 0;
  for (int v : s) m |= 1u << v;
  return m;
}

KeyIndex<Seq> simplex_keys(int n, int trunc, const std::function<bool(unsigned)>& keep) {
  KeyIndex<Seq> idx(static_cast<std::size_t>(trunc) + 1);
  for (int k = 0; k <= trunc; ++k) {
    for (auto& s : monotone_sequences(k, n)) {
      if (keep(vertex_mask(s))) idx.add(k, s);
    }
  }
  return idx;
}

TruncSSet simplex_like(int n, int trunc, const std::function<bool(unsigned)>& keep) {
  if (n < 0 || trunc < 0 || n > 30) throw InvalidInput("simplex: bad dimension");
  auto shape = Shape::simplicial(trunc);
  auto idx = simplex_keys(n, trunc, keep);
  auto ops = detail::decode_simplicial_ops(*shape);
  return TruncSSet(detail::build_presheaf(shape, idx, [&](std::size_t op, const Seq& s) {
    return ops[op].face ? detail::face_seq(s, ops[op].i) : detail::degen_seq(s, ops[op].i);
  }));
}

SSetMap simplex_inclusion(int n, int trunc, const std::function<bool(unsigned)>& keep) {
  auto full = standard_simplex(n, trunc);
  auto sub = simplex_like(n, trunc, keep);
  auto all = simplex_keys(n, trunc, [](unsigned) { return true; });
  auto part = simplex_keys(n, trunc, keep);
  PresheafMap comp(static_cast<std::size_t>(trunc) + 1);
  for (int k = 0; k <= trunc; ++k) {
    for (const auto& s : part.keys(k)) comp[k].push_back(all.find(k, s));
  }
  return {sub, full, comp};
}

unsigned full_mask(int n) { return (n >= 31) ? ~0u : ((1u << (n + 1)) - 1); }

}  // namespace

TruncSSet standard_simplex(int n, int trunc) {
  return simplex_like(n, trunc, [](unsigned) { return true; });
}

TruncSSet boundary(int n, int trunc) {
  const unsigned full = full_mask(n);
  return simplex_like(n, trunc, [full](unsigned m) { return m != full; });
}

TruncSSet horn(int n, int k, int trunc) {
  if (k < 0 || k > n) throw InvalidInput("horn: k out of range");
  const unsigned full = full_mask(n);
  return simplex_like(n, trunc, [full, k](unsigned m) { return (m | (1u << k)) != full; });
}

SSetMap boundary_inclusion(int n, int trunc) {
  const unsigned full = full_mask(n);
  return simplex_inclusion(n, trunc, [full](unsigned m) { return m != full; });
}

SSetMap horn_inclusion(int n, int k, int trunc) {
  if (k < 0 || k > n) throw InvalidInput("horn: k out of range");
  const unsigned full = full_mask(n);
  return simplex_inclusion(n, trunc, [full, k](unsigned m) { return (m | (1u << k)) != full; });
}

TruncSSet nerve(const FiniteCategory& c, int trunc) {
  c.validate();
  if (trunc < 0) throw InvalidInput("nerve: negative truncation");
  using Str = std::vector<Index>;
  auto shape = Shape::simplicial(trunc);
  KeyIndex<Str> idx(static_cast<std::size_t>(trunc) + 1);
  for (Index x = 0; x < c.objects; ++x) idx.add(0, {x});
  if (trunc >= 1) {
    for (Index f = 0; f < c.morphism_count(); ++f) idx.add(1, {f});
  }
  for (int n = 2; n <= trunc; ++n) {
    for (const auto& s : idx.keys(n - 1)) {
      for (Index f = 0; f < c.morphism_count(); ++f) {
        if (c.src[f] != c.tgt[s.back()]) continue;
        auto t = s;
        t.push_back(f);
        idx.add(n, t);
      }
    }
  }
  auto ops = detail::decode_simplicial_ops(*shape);
  return TruncSSet(detail::build_presheaf(shape, idx, [&](std::size_t op, const Str& s) -> Str {
    const auto [face, n, i] = ops[op];
    if (face) {
      if (n == 1) return {i == 0 ? c.tgt[s[0]] : c.src[s[0]]};
      Str t = s;
      if (i == 0) {
        t.erase(t.begin());
      } else if (i == n) {
        t.pop_back();
      } else {
        t[i - 1] = c.compose(s[i], s[i - 1]);
        t.erase(t.begin() + i);
      }
      return t;
    }
    if (n == 0) return {c.identity[s[0]]};
    const Index v = (i == 0) ? c.src[s[0]] : c.tgt[s[i - 1]];
    Str t = s;
    t.insert(t.begin() + i, c.identity[v]);
    return t;
  }));
}

TruncSSet walking_iso_nerve(int trunc) { return nerve(FiniteCategory::walking_isomorphism(), trunc); }

TruncSSet discrete(std::size_t points, int trunc) {
  auto shape = Shape::simplicial(trunc);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(trunc) + 1, points);
  std::vector<Index> id(points);
  std::iota(id.begin(), id.end(), Index{0});
  std::vector<std::vector<Index>> tables(shape->ops().size(), id);
  return TruncSSet(Presheaf(shape, sizes, tables));
}

SSetMap yoneda_map(const TruncSSet& x, int n, Index simplex) {
  if (n > x.trunc() || simplex >= x.size(n)) throw InvalidInput("yoneda_map: no such simplex");
  auto delta = standard_simplex(n, x.trunc());
  PresheafMap comp(static_cast<std::size_t>(x.trunc()) + 1);
  for (int k = 0; k <= x.trunc(); ++k) {
    for (const auto& s : monotone_sequences(k, n)) comp[k].push_back(x.act(n, simplex, s));
  }
  return {delta, x, comp};
}

// ---------------------------------------------------------------- (co)limits

namespace {

SSetCocone wrap(Cocone c) { return {TruncSSet(std::move(c.object)), std::move(c.legs)}; }

void require_valid(const SSetMap& f, const char* what) {
  if (!is_valid(f)) throw InvalidInput(std::string(what) + ": invalid map");
}

}  // namespace

TruncSSet product(const TruncSSet& x, const TruncSSet& y) {
  return TruncSSet(product(x.presheaf(), y.presheaf()).object);
}

SSetCocone coproduct(const std::vector<TruncSSet>& parts) {
  std::vector<Presheaf> ps;
  for (const auto& p : parts) ps.push_back(p.presheaf());
  return wrap(coproduct(ps));
}

SSetCocone pushout(const SSetMap& f, const SSetMap& g) {
  require_valid(f, "pushout");
  require_valid(g, "pushout");
  if (!(f.source == g.source)) throw InvalidInput("pushout: maps do not share a source");
  return wrap(pushout(f.source.presheaf(), f.target.presheaf(), g.target.presheaf(), f.components, g.components));
}

SSetCocone coequalizer(const SSetMap& f, const SSetMap& g) {
  require_valid(f, "coequalizer");
  require_valid(g, "coequalizer");
  if (!(f.source == g.source) || !(f.target == g.target)) throw InvalidInput("coequalizer: maps are not parallel");
  return wrap(coequalizer(f.source.presheaf(), f.target.presheaf(), f.components, g.components));
}

TruncSSet pullback(const SSetMap& f, const SSetMap& g) {
  require_valid(f, "pullback");
  require_valid(g, "pullback");
  if (!(f.target == g.target)) throw InvalidInput("pullback: maps do not share a target");
  return TruncSSet(
      pullback(f.source.presheaf(), g.source.presheaf(), f.target.presheaf(), f.components, g.components).object);
}

TruncSSet equalizer(const SSetMap& f, const SSetMap& g) {
  require_valid(f, "equalizer");
  require_valid(g, "equalizer");
  if (!(f.source == g.source) || !(f.target == g.target)) throw InvalidInput("equalizer: maps are not parallel");
  return TruncSSet(equalizer(f.source.presheaf(), f.target.presheaf(), f.components, g.components).object);
}

SSetCocone chain_colimit(const std::vector<SSetMap>& chain) {
  if (chain.empty()) throw InvalidInput("chain_colimit: empty chain");
  std::vector<Presheaf> objects{chain.front().source.presheaf()};
  std::vector<PresheafMap> maps;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    require_valid(chain[i], "chain_colimit");
    if (i > 0 && !(chain[i - 1].target == chain[i].source)) throw InvalidInput("chain_colimit: chain is broken");
    objects.push_back(chain[i].target.presheaf());
    maps.push_back(chain[i].components);
  }
  return wrap(chain_colimit(objects, maps));
}

std::vector<PresheafMap> hom_set(const TruncSSet& x, const TruncSSet& y, SearchOptions opts) {
  return hom_set(x.presheaf(), y.presheaf(), opts);
}

std::optional<SSetMap> is_isomorphic(const TruncSSet& x, const TruncSSet& y, SearchOptions opts) {
  auto iso = find_isomorphism(x.presheaf(), y.presheaf(), opts);
  if (!iso) return std::nullopt;
  return SSetMap{x, y, *iso};
}

// ---------------------------------------------------------------- inner horns

QuasiCategoryReport is_quasicategory(const TruncSSet& x, int max_dim, SearchOptions opts) {
  if (max_dim > x.trunc()) throw InvalidInput("is_quasicategory: dimension exceeds the truncation");
  QuasiCategoryReport report;
  report.max_dim = max_dim;
  for (int n = 2; n <= max_dim; ++n) {
    auto all = simplex_keys(n, n - 1, [](unsigned) { return true; });
    for (int k = 1; k < n; ++k) {
      auto incl = horn_inclusion(n, k, x.trunc());
      // position of each codimension-one face of the top simplex inside the horn
      std::vector<Index> face_in_horn(n + 1, kNone);
      for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        Seq top(n + 1);
        std::iota(top.begin(), top.end(), 0);
        const Index in_delta = all.find(n - 1, detail::face_seq(top, i));
        const auto& c = incl.components[n - 1];
        face_in_horn[i] = static_cast<Index>(std::find(c.begin(), c.end(), in_delta) - c.begin());
      }
      for (auto& h : hom_set(incl.source, x, opts)) {
        ++report.horns_checked;
        bool filled = false;
        for (Index s = 0; s < x.size(n) && !filled; ++s) {
          filled = true;
          for (int i = 0; i <= n && filled; ++i) {
            if (i != k && x.face(n, i, s) != h[n - 1][face_in_horn[i]]) filled = false;
          }
        }
        if (!filled) report.failures.push_back({n, k, std::move(h)});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------- components

Components pi0(const TruncSSet& x) {
  const std::size_t v = x.size(0);
  std::vector<Index> parent(v);
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> root = [&](Index a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
  Components out;
  out.no_edges = x.trunc() == 0;
  if (!out.no_edges) {
    for (Index e = 0; e < x.size(1); ++e) {
      const Index a = root(x.face(1, 0, e));
      const Index b = root(x.face(1, 1, e));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  out.component_of.assign(v, kNone);
  std::vector<Index> label(v, kNone);
  for (Index a = 0; a < v; ++a) {
    const Index r = root(a);
    if (label[r] == kNone) label[r] = static_cast<Index>(out.count++);
    out.component_of[a] = label[r];
  }
  return out;
}

std::vector<Index> pi0_map(const SSetMap& f) {
  const auto s = pi0(f.source);
  const auto t = pi0(f.target);
  std::vector<Index> out(s.count, kNone);
  for (Index v = 0; v < f.source.size(0); ++v) out[s.component_of[v]] = t.component_of[f.components[0][v]];
  return out;
}

}  // namespace eqcat
