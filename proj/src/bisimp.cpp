#include "eqcat/bisimp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "eqcat/detail/keyed_builder.hpp"
#include "eqcat/detail/simplicial_act.hpp"
#include "eqcat/error.hpp"
#include "eqcat/homology.hpp"

namespace eqcat {

using detail::BisimplicialOp;
using detail::KeyIndex;

namespace {

using Tuple = std::vector<Index>;

/// Builds a bisimplicial set from sizes per cell and an operator function.
template <class Size, class Op>
TruncBiSSet build_bi(int trunc, Size size, Op op) {
  auto shape = Shape::bisimplicial(trunc);
  auto ops = detail::decode_bisimplicial_ops(*shape);
  std::vector<std::size_t> sizes(shape->object_count());
  for (int m = 0; m <= trunc; ++m) {
    for (int n = 0; n <= trunc; ++n) sizes[shape->cell(m, n)] = size(m, n);
  }
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::size_t count = sizes[shape->ops()[k].src];
    tables[k].resize(count);
    for (Index x = 0; x < count; ++x) tables[k][x] = op(ops[k], x);
  }
  return TruncBiSSet(Presheaf(shape, std::move(sizes), std::move(tables)));
}

template <class Size, class Op>
TruncSSet build_simplicial(int trunc, Size size, Op op) {
  auto shape = Shape::simplicial(trunc);
  auto ops = detail::decode_simplicial_ops(*shape);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) sizes[n] = size(n);
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::size_t count = sizes[shape->ops()[k].src];
    tables[k].resize(count);
    for (Index x = 0; x < count; ++x) tables[k][x] = op(ops[k], x);
  }
  return TruncSSet(Presheaf(shape, std::move(sizes), std::move(tables)));
}

std::vector<int> zeros(int length) { return std::vector<int>(static_cast<std::size_t>(length), 0); }

void require_valid(const BiMap& f, const char* what) {
  if (!is_valid(f)) throw InvalidInput(std::string(what) + ": invalid map");
}

BiCocone wrap(Cocone c) { return {TruncBiSSet(std::move(c.object)), std::move(c.legs)}; }

/// delta_i : Delta[m-1] -> Delta[m] and sigma_i : Delta[m+1] -> Delta[m].
SSetMap coface(int m, int i, int trunc) {
  auto top = monotone_sequences(m - 1, m);
  std::vector<int> seq;
  for (int j = 0; j <= m; ++j) {
    if (j != i) seq.push_back(j);
  }
  const auto idx = static_cast<Index>(std::find(top.begin(), top.end(), seq) - top.begin());
  return yoneda_map(standard_simplex(m, trunc), m - 1, idx);
}

SSetMap codegeneracy(int m, int i, int trunc) {
  auto top = monotone_sequences(m + 1, m);
  std::vector<int> seq;
  for (int j = 0; j <= m; ++j) {
    seq.push_back(j);
    if (j == i) seq.push_back(j);
  }
  const auto idx = static_cast<Index>(std::find(top.begin(), top.end(), seq) - top.begin());
  return yoneda_map(standard_simplex(m, trunc), m + 1, idx);
}

Tuple flatten(const PresheafMap& f) {
  Tuple out;
  for (const auto& c : f) out.insert(out.end(), c.begin(), c.end());
  return out;
}

PresheafMap unflatten(const Tuple& t, const std::vector<std::size_t>& sizes) {
  PresheafMap out(sizes.size());
  std::size_t at = 0;
  for (std::size_t o = 0; o < sizes.size(); ++o) {
    out[o].assign(t.begin() + static_cast<long>(at), t.begin() + static_cast<long>(at + sizes[o]));
    at += sizes[o];
  }
  return out;
}

bool homology_agrees(const TruncSSet& a, const TruncSSet& b) {
  if (a.trunc() < 1) return true;
  auto ha = homology(a, a.trunc() - 1);
  auto hb = homology(b, b.trunc() - 1);
  return ha.groups == hb.groups;
}

bool pi0_bijective(const SSetMap& f) {
  auto s = pi0(f.source);
  auto t = pi0(f.target);
  if (s.count != t.count) return false;
  auto m = pi0_map(f);
  std::vector<char> hit(t.count, 0);
  for (Index c : m) hit[c] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace

// ---------------------------------------------------------------- TruncBiSSet

TruncBiSSet::TruncBiSSet() : data_(Shape::bisimplicial(0)) {}

TruncBiSSet::TruncBiSSet(Presheaf p) : data_(std::move(p)) {
  if (data_.shape().kind() != ShapeKind::Bisimplicial) throw InvalidInput("expected a bisimplicial-shaped presheaf");
  data_.validate();
}

TruncBiSSet TruncBiSSet::empty(int trunc) { return TruncBiSSet(initial(Shape::bisimplicial(trunc))); }

TruncBiSSet TruncBiSSet::point(int trunc) { return TruncBiSSet(terminal(Shape::bisimplicial(trunc))); }

Index TruncBiSSet::hact(int m, int n, Index x, std::span<const int> theta) const {
  if (static_cast<int>(theta.size()) - 1 > trunc()) throw InvalidInput("act: operator leaves the truncation");
  return detail::simplicial_act(
      m, x, theta, [&](int l, int i, Index y) { return hface(l, n, i, y); },
      [&](int l, int i, Index y) { return hdegen(l, n, i, y); });
}

Index TruncBiSSet::vact(int m, int n, Index x, std::span<const int> theta) const {
  if (static_cast<int>(theta.size()) - 1 > trunc()) throw InvalidInput("act: operator leaves the truncation");
  return detail::simplicial_act(
      n, x, theta, [&](int l, int i, Index y) { return vface(m, l, i, y); },
      [&](int l, int i, Index y) { return vdegen(m, l, i, y); });
}

TruncSSet TruncBiSSet::slice(int m) const {
  return build_simplicial(
      trunc(), [&](int n) { return size(m, n); },
      [&](const detail::SimplicialOp& op, Index x) {
        return op.face ? vface(m, op.level, op.i, x) : vdegen(m, op.level, op.i, x);
      });
}

TruncSSet TruncBiSSet::row(int n) const {
  return build_simplicial(
      trunc(), [&](int m) { return size(m, n); },
      [&](const detail::SimplicialOp& op, Index x) {
        return op.face ? hface(op.level, n, op.i, x) : hdegen(op.level, n, op.i, x);
      });
}

bool is_valid(const BiMap& f) { return is_valid_map(f.source.presheaf(), f.target.presheaf(), f.components); }

BiMap compose(const BiMap& second, const BiMap& first) {
  if (!(first.target == second.source)) throw InvalidInput("compose: maps are not composable");
  return {first.source, second.target, compose(second.components, first.components)};
}

BiMap identity(const TruncBiSSet& x) { return {x, x, identity_map(x.presheaf())}; }

SSetMap slice_map(const BiMap& f, int m) {
  const auto& shape = f.source.presheaf().shape();
  PresheafMap comps(static_cast<std::size_t>(shape.trunc()) + 1);
  for (int n = 0; n <= shape.trunc(); ++n) comps[n] = f.components[shape.cell(m, n)];
  return {f.source.slice(m), f.target.slice(m), comps};
}

TruncBiSSet product(const TruncBiSSet& x, const TruncBiSSet& y) {
  return TruncBiSSet(product(x.presheaf(), y.presheaf()).object);
}

BiMap product(const BiMap& f, const BiMap& g) {
  return {product(f.source, g.source), product(f.target, g.target),
          product_map(f.components, g.components, g.target.presheaf().sizes())};
}

BiCocone coproduct(const std::vector<TruncBiSSet>& parts) {
  std::vector<Presheaf> ps;
  for (const auto& p : parts) ps.push_back(p.presheaf());
  return wrap(coproduct(ps));
}

BiCocone pushout(const BiMap& f, const BiMap& g) {
  require_valid(f, "pushout");
  require_valid(g, "pushout");
  if (!(f.source == g.source)) throw InvalidInput("pushout: maps do not share a source");
  return wrap(pushout(f.source.presheaf(), f.target.presheaf(), g.target.presheaf(), f.components, g.components));
}

std::vector<PresheafMap> hom_set(const TruncBiSSet& x, const TruncBiSSet& y, SearchOptions opts) {
  return hom_set(x.presheaf(), y.presheaf(), opts);
}

std::optional<BiMap> is_isomorphic(const TruncBiSSet& x, const TruncBiSSet& y, SearchOptions opts) {
  auto iso = find_isomorphism(x.presheaf(), y.presheaf(), opts);
  if (!iso) return std::nullopt;
  return BiMap{x, y, *iso};
}

// ---------------------------------------------------------------- constant and transposed

TruncBiSSet const_space(const TruncSSet& k) {
  return build_bi(
      k.trunc(), [&](int, int n) { return k.size(n); },
      [&](const BisimplicialOp& op, Index x) -> Index {
        if (op.horizontal) return x;
        return op.face ? k.face(op.n, op.i, x) : k.degen(op.n, op.i, x);
      });
}

TruncBiSSet transpose(const TruncSSet& k) {
  return build_bi(
      k.trunc(), [&](int m, int) { return k.size(m); },
      [&](const BisimplicialOp& op, Index x) -> Index {
        if (!op.horizontal) return x;
        return op.face ? k.face(op.m, op.i, x) : k.degen(op.m, op.i, x);
      });
}

BiMap const_map(const SSetMap& f) {
  auto src = const_space(f.source);
  const auto& shape = src.presheaf().shape();
  PresheafMap comps(shape.object_count());
  for (std::size_t o = 0; o < comps.size(); ++o) comps[o] = f.components[shape.col(o)];
  return {src, const_space(f.target), comps};
}

BiMap transpose_map(const SSetMap& f) {
  auto src = transpose(f.source);
  const auto& shape = src.presheaf().shape();
  PresheafMap comps(shape.object_count());
  for (std::size_t o = 0; o < comps.size(); ++o) comps[o] = f.components[shape.row(o)];
  return {src, transpose(f.target), comps};
}

BiMap transpose_vertices(const TruncSSet& k) {
  const int trunc = k.trunc();
  auto src = const_space(discrete(k.size(0), trunc));
  auto dst = transpose(k);
  const auto& shape = src.presheaf().shape();
  PresheafMap comps(shape.object_count());
  for (std::size_t o = 0; o < comps.size(); ++o) {
    const auto ones = zeros(shape.row(o) + 1);
    for (Index v = 0; v < k.size(0); ++v) comps[o].push_back(k.act(0, v, ones));
  }
  return {src, dst, comps};
}

// ---------------------------------------------------------------- Segal maps

namespace {

KeyIndex<Tuple> fiber_product_keys(const TruncBiSSet& w, int k) {
  if (w.trunc() < 1) throw InvalidInput("Segal map: needs horizontal level 1");
  if (k < 1) throw InvalidInput("Segal map: k must be positive");
  KeyIndex<Tuple> idx(static_cast<std::size_t>(w.trunc()) + 1);
  for (int n = 0; n <= w.trunc(); ++n) {
    Tuple cur;
    std::function<void()> rec = [&] {
      if (static_cast<int>(cur.size()) == k) {
        idx.add(n, cur);
        return;
      }
      for (Index a = 0; a < w.size(1, n); ++a) {
        if (!cur.empty() && w.hface(1, n, 0, cur.back()) != w.hface(1, n, 1, a)) continue;
        cur.push_back(a);
        rec();
        cur.pop_back();
      }
    };
    rec();
  }
  return idx;
}

TruncSSet fiber_product_from(const TruncBiSSet& w, const KeyIndex<Tuple>& idx) {
  auto shape = Shape::simplicial(w.trunc());
  auto ops = detail::decode_simplicial_ops(*shape);
  return TruncSSet(detail::build_presheaf(shape, idx, [&](std::size_t op, const Tuple& t) {
    Tuple out(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      out[j] = ops[op].face ? w.vface(1, ops[op].level, ops[op].i, t[j]) : w.vdegen(1, ops[op].level, ops[op].i, t[j]);
    }
    return out;
  }));
}

}  // namespace

TruncSSet segal_fiber_product(const TruncBiSSet& w, int k) { return fiber_product_from(w, fiber_product_keys(w, k)); }

SSetMap segal_map(const TruncBiSSet& w, int k) {
  if (k > w.trunc()) throw InvalidInput("Segal map: k exceeds the truncation");
  auto idx = fiber_product_keys(w, k);
  auto target = fiber_product_from(w, idx);
  PresheafMap comps(static_cast<std::size_t>(w.trunc()) + 1);
  for (int n = 0; n <= w.trunc(); ++n) {
    for (Index x = 0; x < w.size(k, n); ++x) {
      Tuple t;
      for (int i = 1; i <= k; ++i) {
        const int edge[] = {i - 1, i};
        t.push_back(w.hact(k, n, x, edge));
      }
      comps[n].push_back(idx.find(n, t));
    }
  }
  return {w.slice(k), target, comps};
}

SegalReport segal_check(const TruncBiSSet& w, int k) {
  if (k < 2 || k > w.trunc()) throw InvalidInput("segal_check: need 2 <= k <= trunc");
  SegalReport r;
  r.k = k;
  auto f = segal_map(w, k);
  r.isomorphism = is_bijective(f.source.presheaf(), f.target.presheaf(), f.components);
  r.pi0_bijective = pi0_bijective(f);
  r.homology_agrees = homology_agrees(f.source, f.target);
  if (!r.isomorphism) {
    for (int n = 0; n <= w.trunc(); ++n) {
      if (f.source.size(n) != f.target.size(n)) {
        r.notes.push_back("vertical level " + std::to_string(n) + ": " + std::to_string(f.source.size(n)) +
                          " simplices vs " + std::to_string(f.target.size(n)) + " in the fiber product");
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- mapping spaces

MappingSpace mapping_space(const TruncBiSSet& x, const TruncBiSSet& y, SearchOptions opts) {
  const int trunc = x.trunc();
  if (y.trunc() != trunc) throw InvalidInput("mapping_space: truncation mismatch");
  MappingSpace out;
  KeyIndex<Tuple> idx(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::size_t>> sizes;
  for (int m = 0; m <= trunc; ++m) {
    auto cyl = product(x, const_space(standard_simplex(m, trunc)));
    sizes.push_back(cyl.presheaf().sizes());
    out.points.push_back(hom_set(cyl, y, opts));
    for (const auto& f : out.points.back()) idx.add(m, flatten(f));
  }
  auto shape = Shape::simplicial(trunc);
  auto ops = detail::decode_simplicial_ops(*shape);
  // precomposition with id x const(theta)
  std::vector<PresheafMap> pre(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = ops[k];
    const int m = op.level;
    const SSetMap theta = op.face ? coface(m, op.i, trunc) : codegeneracy(m, op.i, trunc);
    pre[k] = product_map(identity_map(x.presheaf()), const_map(theta).components,
                         const_space(theta.target).presheaf().sizes());
  }
  out.space = TruncSSet(detail::build_presheaf(shape, idx, [&](std::size_t k, const Tuple& t) {
    const int m = ops[k].level;
    return flatten(compose(unflatten(t, sizes[m]), pre[k]));
  }));
  return out;
}

CompletenessEvidence completeness_evidence(const TruncBiSSet& w, SearchOptions opts) {
  const int trunc = w.trunc();
  CompletenessEvidence ev;
  auto et = transpose(walking_iso_nerve(trunc));
  auto ms = mapping_space(et, w, opts);
  ev.level_zero = w.slice(0);
  ev.mapping_space = ms.space;
  std::vector<std::map<Tuple, Index>> lookup(static_cast<std::size_t>(trunc) + 1);
  for (int j = 0; j <= trunc; ++j) {
    for (Index e = 0; e < ms.points[j].size(); ++e) lookup[j][flatten(ms.points[j][e])] = e;
  }
  const auto& shape = et.presheaf().shape();
  PresheafMap comps(static_cast<std::size_t>(trunc) + 1);
  for (int j = 0; j <= trunc; ++j) {
    for (Index v = 0; v < w.size(0, j); ++v) {
      // (e, tau) |-> horizontal degeneracy of tau^* v
      PresheafMap f(shape.object_count());
      for (int a = 0; a <= trunc; ++a) {
        for (int b = 0; b <= trunc; ++b) {
          const auto seqs = monotone_sequences(b, j);
          const auto flat = zeros(a + 1);
          for (Index e = 0; e < et.size(a, b); ++e) {
            for (const auto& tau : seqs) f[shape.cell(a, b)].push_back(w.hact(0, b, w.vact(0, j, v, tau), flat));
          }
        }
      }
      comps[j].push_back(lookup[j].at(flatten(f)));
    }
  }
  ev.comparison = {ev.level_zero, ev.mapping_space, comps};
  if (!is_valid(ev.comparison)) throw Error("completeness: comparison map is not simplicial");
  ev.isomorphism = is_bijective(ev.level_zero.presheaf(), ev.mapping_space.presheaf(), comps);
  ev.pi0_bijective = pi0_bijective(ev.comparison);
  ev.homology_agrees = homology_agrees(ev.level_zero, ev.mapping_space);
  return ev;
}

// ---------------------------------------------------------------- precategories and reduction

bool is_segal_precategory(const TruncBiSSet& x) {
  for (int n = 0; n < x.trunc(); ++n) {
    if (x.size(0, n) != x.size(0, n + 1)) return false;
    for (int i = 0; i <= n; ++i) {
      std::vector<char> hit(x.size(0, n + 1), 0);
      for (Index v = 0; v < x.size(0, n); ++v) hit[x.vdegen(0, n, i, v)] = 1;
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
    }
  }
  return true;
}

SegalPrecategory::SegalPrecategory(TruncBiSSet x) : space_(std::move(x)) {
  if (!is_segal_precategory(space_)) throw InvalidInput("not a Segal precategory: the space of objects is not discrete");
}

Reduction reduce(const TruncBiSSet& x) {
  const int trunc = x.trunc();
  auto w0 = x.slice(0);
  auto comps = pi0(w0);
  auto a = const_space(w0);
  auto d = const_space(discrete(comps.count, trunc));
  const auto& shape = a.presheaf().shape();
  PresheafMap into_x(shape.object_count()), into_d(shape.object_count());
  for (std::size_t o = 0; o < shape.object_count(); ++o) {
    const int m = shape.row(o), n = shape.col(o);
    const auto flat = zeros(m + 1);
    for (Index y = 0; y < w0.size(n); ++y) {
      into_x[o].push_back(x.hact(0, n, y, flat));
      into_d[o].push_back(comps.component_of[w0.vertex(n, y, 0)]);
    }
  }
  auto po = pushout(BiMap{a, x, into_x}, BiMap{a, d, into_d});
  return {SegalPrecategory(po.object), BiMap{x, po.object, po.legs[0]}};
}

BiMap reduce_extend(const Reduction& r, const BiMap& f) {
  if (!(f.source == r.unit.source)) throw InvalidInput("reduce_extend: map does not start at the reduced object");
  Cocone c{r.object.space().presheaf(), {r.unit.components}};
  return {r.object.space(), f.target, induced_from_cocone(c, {f.components}, f.target.presheaf())};
}

// ---------------------------------------------------------------- generators

BiMap projective_generator(int m, int n, int trunc) {
  auto bm = const_map(boundary_inclusion(m, trunc));
  return product(bm, identity(transpose(standard_simplex(n, trunc))));
}

BiMap reedy_generator(int m, int n, int trunc) {
  auto bm = const_map(boundary_inclusion(m, trunc));
  auto bn = transpose_map(boundary_inclusion(n, trunc));
  auto left = product(identity(bm.source), bn);    // dxd -> d x Delta[n]^t
  auto right = product(bm, identity(bn.source));   // dxd -> Delta[m] x d
  auto u = pushout(left, right);
  auto to_full_left = product(bm, identity(bn.target));
  auto to_full_right = product(identity(bm.target), bn);
  Cocone c{u.object.presheaf(), u.legs};
  auto target = to_full_left.target;
  return {u.object, target,
          induced_from_cocone(c, {to_full_left.components, to_full_right.components}, target.presheaf())};
}

namespace {

/// Pushout of Delta[n]^t_0 <- K x Delta[n]^t_0 -> K x Delta[n]^t.
BiCocone collapse_vertices(const TruncSSet& k, int n, int trunc) {
  auto v = transpose_vertices(standard_simplex(n, trunc));
  auto ck = const_space(k);
  auto prod = product(ck.presheaf(), v.source.presheaf());
  BiMap proj{TruncBiSSet(prod.object), v.source, prod.legs[1]};
  BiMap incl = product(identity(ck), v);
  return pushout(incl, proj);
}

}  // namespace

PQGenerator pq_generator(int m, int n, int trunc) {
  if (m < 0 || n < 0 || m > trunc || n > trunc) throw InvalidInput("generator indices out of range");
  auto gen = projective_generator(m, n, trunc);
  auto q = collapse_vertices(standard_simplex(m, trunc), n, trunc);
  BiMap to_q{gen.target, q.object, q.legs[0]};
  if (m == 0) {
    auto empty = TruncBiSSet::empty(trunc);
    PresheafMap none(empty.presheaf().shape().object_count());
    return {BiMap{empty, q.object, none}, BiMap{gen.source, empty, none}, to_q};
  }
  auto p = collapse_vertices(boundary(m, trunc), n, trunc);
  BiMap to_p{gen.source, p.object, p.legs[0]};
  Cocone c{p.object.presheaf(), p.legs};
  auto through = compose(to_q, gen);
  auto i = induced_from_cocone(c, {through.components, q.legs[1]}, q.object.presheaf());
  return {BiMap{p.object, q.object, i}, to_p, to_q};
}

SegalPrecategory build_P(int m, int n, int trunc) { return SegalPrecategory(pq_generator(m, n, trunc).i.source); }

SegalPrecategory build_Q(int m, int n, int trunc) { return SegalPrecategory(pq_generator(m, n, trunc).i.target); }

BiMap i_mn(int m, int n, int trunc) { return pq_generator(m, n, trunc).i; }

// ---------------------------------------------------------------- comparison functors

TruncSSet p_star(const TruncBiSSet& w) { return w.row(0); }

TruncSSet j_star(const SegalPrecategory& x) { return x.space().row(0); }

TruncSSet diagonal(const TruncBiSSet& x) {
  return build_simplicial(
      x.trunc(), [&](int n) { return x.size(n, n); },
      [&](const detail::SimplicialOp& op, Index s) {
        const int n = op.level, i = op.i;
        if (op.face) return x.vface(n - 1, n, i, x.hface(n, n, i, s));
        return x.vdegen(n + 1, n, i, x.hdegen(n, n, i, s));
      });
}

TruncSSet total(const TruncBiSSet& x) {
  const int trunc = x.trunc();
  KeyIndex<Tuple> idx(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    Tuple cur;
    std::function<void()> rec = [&] {
      const int i = static_cast<int>(cur.size());
      if (i == n + 1) {
        idx.add(n, cur);
        return;
      }
      for (Index a = 0; a < x.size(i, n - i); ++a) {
        if (i > 0 && x.vface(i - 1, n - i + 1, 0, cur.back()) != x.hface(i, n - i, i, a)) continue;
        cur.push_back(a);
        rec();
        cur.pop_back();
      }
    };
    rec();
  }
  auto shape = Shape::simplicial(trunc);
  auto ops = detail::decode_simplicial_ops(*shape);
  return TruncSSet(detail::build_presheaf(shape, idx, [&](std::size_t k, const Tuple& t) {
    const int n = ops[k].level, j = ops[k].i;
    Tuple out;
    if (ops[k].face) {
      for (int i = 0; i < j; ++i) out.push_back(x.vface(i, n - i, j - i, t[i]));
      for (int i = j + 1; i <= n; ++i) out.push_back(x.hface(i, n - i, j, t[i]));
    } else {
      for (int i = 0; i <= j; ++i) out.push_back(x.vdegen(i, n - i, j - i, t[i]));
      for (int i = j; i <= n; ++i) out.push_back(x.hdegen(i, n - i, j, t[i]));
    }
    return out;
  }));
}

// ---------------------------------------------------------------- tensor and cotensor

SegalPrecategory tensor(const SegalPrecategory& x, const TruncSSet& k) {
  return reduce(product(x.space(), const_space(k))).object;
}

SegalPrecategory cotensor(const SegalPrecategory& y, const TruncSSet& k, SearchOptions opts) {
  const int trunc = y.trunc();
  if (k.trunc() != trunc) throw InvalidInput("cotensor: truncation mismatch");
  const auto& space = y.space();
  std::vector<TruncSSet> slices;
  for (int m = 0; m <= trunc; ++m) slices.push_back(space.slice(m));
  std::vector<std::vector<std::size_t>> cyl_sizes;
  for (int n = 0; n <= trunc; ++n) cyl_sizes.push_back(product(k, standard_simplex(n, trunc)).presheaf().sizes());
  auto bishape = Shape::bisimplicial(trunc);
  KeyIndex<Tuple> idx(bishape->object_count());
  for (int m = 0; m <= trunc; ++m) {
    for (int n = 0; n <= trunc; ++n) {
      for (const auto& f : hom_set(product(k, standard_simplex(n, trunc)), slices[m], opts)) {
        idx.add(bishape->cell(m, n), flatten(f));
      }
    }
  }
  auto ops = detail::decode_bisimplicial_ops(*bishape);
  std::map<std::pair<int, std::pair<bool, int>>, PresheafMap> pre;  // (n, (face, i)) -> id x theta
  auto precomp = [&](int n, bool face, int i) -> const PresheafMap& {
    auto key = std::make_pair(n, std::make_pair(face, i));
    auto it = pre.find(key);
    if (it != pre.end()) return it->second;
    const SSetMap theta = face ? coface(n, i, trunc) : codegeneracy(n, i, trunc);
    return pre[key] = product_map(identity_map(k.presheaf()), theta.components, theta.target.presheaf().sizes());
  };
  auto result = detail::build_presheaf(bishape, idx, [&](std::size_t op_index, const Tuple& t) {
    const auto& op = ops[op_index];
    auto f = unflatten(t, cyl_sizes[op.n]);
    if (!op.horizontal) return flatten(compose(f, precomp(op.n, op.face, op.i)));
    for (int l = 0; l <= trunc; ++l) {
      for (auto& v : f[l]) v = op.face ? space.hface(op.m, l, op.i, v) : space.hdegen(op.m, l, op.i, v);
    }
    return flatten(f);
  });
  return SegalPrecategory(TruncBiSSet(std::move(result)));
}

// ---------------------------------------------------------------- mapping spaces and Ho

TruncSSet precat_mapping_space(const SegalPrecategory& x, Index source, Index target) {
  const auto& w = x.space();
  if (w.trunc() < 1) throw InvalidInput("mapping space: needs horizontal level 1");
  if (source >= w.size(0, 0) || target >= w.size(0, 0)) throw InvalidInput("mapping space: no such object");
  auto slice = w.slice(1);
  std::vector<std::vector<char>> keep(static_cast<std::size_t>(w.trunc()) + 1);
  for (int n = 0; n <= w.trunc(); ++n) {
    const auto flat = zeros(n + 1);
    const Index s = w.vact(0, 0, source, flat);
    const Index t = w.vact(0, 0, target, flat);
    for (Index z = 0; z < w.size(1, n); ++z) keep[n].push_back(w.hface(1, n, 1, z) == s && w.hface(1, n, 0, z) == t);
  }
  return TruncSSet(subpresheaf(slice.presheaf(), keep).object);
}

FiniteCategory ho_category(const SegalPrecategory& x) {
  const auto& w = x.space();
  if (w.trunc() < 2) throw InvalidInput("ho_category: needs truncation at least 2");
  for (int k = 2; k <= std::min(3, w.trunc()); ++k) {
    if (!segal_check(w, k).pi0_bijective) {
      throw SegalFailure("Segal map at k=" + std::to_string(k) + " is not a bijection on components");
    }
  }
  auto c1 = pi0(w.slice(1));
  // one morphism per component of W_1, ordered by (source, target, first vertex)
  std::vector<Index> first(c1.count, kNone);
  for (Index f = 0; f < w.size(1, 0); ++f) {
    if (first[c1.component_of[f]] == kNone) first[c1.component_of[f]] = f;
  }
  std::vector<Index> order(c1.count);
  std::iota(order.begin(), order.end(), Index{0});
  auto src_of = [&](Index f) { return w.hface(1, 0, 1, f); };
  auto tgt_of = [&](Index f) { return w.hface(1, 0, 0, f); };
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::make_tuple(src_of(first[a]), tgt_of(first[a]), first[a]) <
           std::make_tuple(src_of(first[b]), tgt_of(first[b]), first[b]);
  });
  std::vector<Index> morphism_of_component(c1.count);
  for (Index i = 0; i < order.size(); ++i) morphism_of_component[order[i]] = i;
  auto morphism = [&](Index f) { return morphism_of_component[c1.component_of[f]]; };

  FiniteCategory c;
  c.objects = w.size(0, 0);
  for (Index comp : order) {
    c.src.push_back(src_of(first[comp]));
    c.tgt.push_back(tgt_of(first[comp]));
  }
  for (Index v = 0; v < c.objects; ++v) c.identity.push_back(morphism(w.hdegen(0, 0, 0, v)));
  const std::size_t mcount = c.src.size();
  c.comp.assign(mcount * mcount, kNone);
  for (Index t = 0; t < w.size(2, 0); ++t) {
    const Index f = morphism(w.hface(2, 0, 2, t));
    const Index g = morphism(w.hface(2, 0, 0, t));
    const Index h = morphism(w.hface(2, 0, 1, t));
    Index& slot = c.comp[static_cast<std::size_t>(g) * mcount + f];
    if (slot != kNone && slot != h) throw SegalFailure("composition depends on the chosen section");
    slot = h;
  }
  for (Index g = 0; g < mcount; ++g) {
    for (Index f = 0; f < mcount; ++f) {
      if (c.tgt[f] == c.src[g] && c.comp[static_cast<std::size_t>(g) * mcount + f] == kNone) {
        throw SegalFailure("a composable pair has no composite");
      }
    }
  }
  try {
    c.validate();
  } catch (const InvalidInput& e) {
    throw SegalFailure(std::string("homotopy category: ") + e.what());
  }
  return c;
}

}  // namespace eqcat
