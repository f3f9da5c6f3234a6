#include "eqcat/scat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "eqcat/detail/keyed_builder.hpp"
#include "eqcat/error.hpp"
#include "eqcat/homology.hpp"

namespace eqcat {

using detail::KeyIndex;

namespace {

using Word = std::vector<Index>;

std::vector<int> zeros(int length) { return std::vector<int>(static_cast<std::size_t>(length), 0); }

}  // namespace

// ---------------------------------------------------------------- SCategory

Index SCategory::compose(Index x, Index y, Index z, int n, Index g, Index f) const {
  return comp[pair(x, y) * objects + z][n][static_cast<std::size_t>(g) * map(x, y).size(n) + f];
}

Index SCategory::unit(Index x, int n) const {
  const auto flat = zeros(n + 1);
  return map(x, x).act(0, units[x], flat);
}

void SCategory::validate() const {
  const std::size_t pairs = objects * objects;
  if (maps.size() != pairs || units.size() != objects || comp.size() != pairs * objects) {
    throw InvalidInput("simplicial category: table sizes are inconsistent");
  }
  for (const auto& m : maps) {
    if (m.trunc() != trunc) throw InvalidInput("simplicial category: mapping spaces differ in truncation");
  }
  for (Index x = 0; x < objects; ++x) {
    if (units[x] >= map(x, x).size(0)) throw InvalidInput("simplicial category: unit out of range");
  }
  for (Index x = 0; x < objects; ++x) {
    for (Index y = 0; y < objects; ++y) {
      for (Index z = 0; z < objects; ++z) {
        const auto& levels = comp[pair(x, y) * objects + z];
        if (levels.size() != static_cast<std::size_t>(trunc) + 1) throw InvalidInput("simplicial category: bad composition");
        const auto& f_space = map(x, y);
        const auto& g_space = map(y, z);
        const auto& h_space = map(x, z);
        for (int n = 0; n <= trunc; ++n) {
          if (levels[n].size() != f_space.size(n) * g_space.size(n)) {
            throw InvalidInput("simplicial category: composition table has the wrong size");
          }
          for (Index v : levels[n]) {
            if (v >= h_space.size(n)) throw InvalidInput("simplicial category: composite out of range");
          }
        }
        for (int n = 0; n <= trunc; ++n) {
          for (Index g = 0; g < g_space.size(n); ++g) {
            for (Index f = 0; f < f_space.size(n); ++f) {
              const Index h = compose(x, y, z, n, g, f);
              for (int i = 0; n > 0 && i <= n; ++i) {
                if (h_space.face(n, i, h) !=
                    compose(x, y, z, n - 1, g_space.face(n, i, g), f_space.face(n, i, f))) {
                  throw InvalidInput("simplicial category: composition does not commute with faces");
                }
              }
              for (int i = 0; n < trunc && i <= n; ++i) {
                if (h_space.degen(n, i, h) !=
                    compose(x, y, z, n + 1, g_space.degen(n, i, g), f_space.degen(n, i, f))) {
                  throw InvalidInput("simplicial category: composition does not commute with degeneracies");
                }
              }
            }
          }
        }
      }
    }
  }
  for (int n = 0; n <= trunc; ++n) {
    for (Index x = 0; x < objects; ++x) {
      for (Index y = 0; y < objects; ++y) {
        for (Index f = 0; f < map(x, y).size(n); ++f) {
          if (compose(x, y, y, n, unit(y, n), f) != f || compose(x, x, y, n, f, unit(x, n)) != f) {
            throw InvalidInput("simplicial category: unit law fails");
          }
        }
      }
    }
    for (Index w = 0; w < objects; ++w) {
      for (Index x = 0; x < objects; ++x) {
        for (Index y = 0; y < objects; ++y) {
          for (Index z = 0; z < objects; ++z) {
            for (Index f = 0; f < map(w, x).size(n); ++f) {
              for (Index g = 0; g < map(x, y).size(n); ++g) {
                const Index gf = compose(w, x, y, n, g, f);
                for (Index h = 0; h < map(y, z).size(n); ++h) {
                  if (compose(w, y, z, n, h, gf) != compose(w, x, z, n, compose(x, y, z, n, h, g), f)) {
                    throw InvalidInput("simplicial category: composition is not associative");
                  }
                }
              }
            }
          }
        }
      }
    }
  }
}

bool SCategory::operator==(const SCategory& o) const {
  return trunc == o.trunc && objects == o.objects && maps == o.maps && comp == o.comp && units == o.units;
}

SCategory SCategory::empty(int trunc) {
  SCategory c;
  c.trunc = trunc;
  return c;
}

SCategory SCategory::from_category(const FiniteCategory& c, int trunc) {
  c.validate();
  const std::size_t obj = c.objects;
  std::vector<std::vector<Index>> homs(obj * obj);
  std::vector<Index> position(c.morphism_count());
  for (Index x = 0; x < obj; ++x) {
    for (Index y = 0; y < obj; ++y) {
      homs[x * obj + y] = c.hom(x, y);
      for (Index i = 0; i < homs[x * obj + y].size(); ++i) position[homs[x * obj + y][i]] = i;
    }
  }
  std::vector<TruncSSet> maps;
  for (const auto& h : homs) maps.push_back(discrete(h.size(), trunc));
  std::vector<Index> units;
  for (Index x = 0; x < obj; ++x) units.push_back(position[c.identity[x]]);
  return make_scategory(trunc, obj, std::move(maps), std::move(units), [&](Index x, Index y, Index z, int, Index g, Index f) {
    return position[c.compose(homs[y * obj + z][g], homs[x * obj + y][f])];
  });
}

// ---------------------------------------------------------------- functors

SSetMap SFunctor::on_maps(Index x, Index y) const {
  return {source.map(x, y), target.map(object_map[x], object_map[y]), maps[source.pair(x, y)]};
}

bool is_valid(const SFunctor& f) {
  const auto& c = f.source;
  const auto& d = f.target;
  if (c.trunc != d.trunc || f.object_map.size() != c.objects || f.maps.size() != c.objects * c.objects) return false;
  for (Index v : f.object_map) {
    if (v >= d.objects) return false;
  }
  for (Index x = 0; x < c.objects; ++x) {
    for (Index y = 0; y < c.objects; ++y) {
      if (!is_valid(f.on_maps(x, y))) return false;
    }
    if (f.maps[c.pair(x, x)][0][c.units[x]] != d.units[f.object_map[x]]) return false;
  }
  const auto& fo = f.object_map;
  for (Index x = 0; x < c.objects; ++x) {
    for (Index y = 0; y < c.objects; ++y) {
      for (Index z = 0; z < c.objects; ++z) {
        for (int n = 0; n <= c.trunc; ++n) {
          for (Index g = 0; g < c.map(y, z).size(n); ++g) {
            for (Index h = 0; h < c.map(x, y).size(n); ++h) {
              const Index lhs = f.maps[c.pair(x, z)][n][c.compose(x, y, z, n, g, h)];
              const Index rhs = d.compose(fo[x], fo[y], fo[z], n, f.maps[c.pair(y, z)][n][g], f.maps[c.pair(x, y)][n][h]);
              if (lhs != rhs) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

SFunctor compose(const SFunctor& second, const SFunctor& first) {
  if (!(first.target == second.source)) throw InvalidInput("compose: functors are not composable");
  SFunctor out{first.source, second.target, {}, {}};
  for (Index v : first.object_map) out.object_map.push_back(second.object_map[v]);
  const auto& c = first.source;
  for (Index x = 0; x < c.objects; ++x) {
    for (Index y = 0; y < c.objects; ++y) {
      out.maps.push_back(compose(second.maps[second.source.pair(first.object_map[x], first.object_map[y])],
                                 first.maps[c.pair(x, y)]));
    }
  }
  return out;
}

SFunctor identity(const SCategory& c) {
  SFunctor out{c, c, std::vector<Index>(c.objects), {}};
  std::iota(out.object_map.begin(), out.object_map.end(), Index{0});
  for (const auto& m : c.maps) out.maps.push_back(identity_map(m.presheaf()));
  return out;
}

bool is_isomorphism(const SFunctor& f) {
  if (f.source.objects != f.target.objects) return false;
  std::vector<char> hit(f.target.objects, 0);
  for (Index v : f.object_map) hit[v] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
  for (Index x = 0; x < f.source.objects; ++x) {
    for (Index y = 0; y < f.source.objects; ++y) {
      const auto m = f.on_maps(x, y);
      if (!is_bijective(m.source.presheaf(), m.target.presheaf(), m.components)) return false;
    }
  }
  return true;
}

namespace {

/// Sorts (pair, level); unary ops (pair, shape op); binary ops (triple, level);
/// constants per object; then optional action ops (element, pair, level).
struct SCatSignature {
  FinStructure structure;
  std::size_t levels = 0;
  std::size_t shape_ops = 0;
  std::size_t pairs = 0;
  std::size_t objects = 0;

  std::size_t sort(std::size_t pair, int n) const { return pair * levels + n; }
  std::size_t unary(std::size_t pair, std::size_t op) const { return pair * shape_ops + op; }
  std::size_t binary(std::size_t triple, int n) const { return triple * levels + n; }
  std::size_t action(std::size_t g, std::size_t pair, int n) const {
    return pairs * shape_ops + (g * pairs + pair) * levels + n;
  }
};

SCatSignature signature(const SCategory& c, const std::vector<SFunctor>* action) {
  SCatSignature s;
  s.levels = static_cast<std::size_t>(c.trunc) + 1;
  s.objects = c.objects;
  s.pairs = c.objects * c.objects;
  auto shape = Shape::simplicial(c.trunc);
  s.shape_ops = shape->ops().size();
  auto& st = s.structure;
  st.rank.resize(s.pairs * s.levels);
  for (std::size_t p = 0; p < s.pairs; ++p) {
    const auto& m = c.maps[p];
    auto nd = m.presheaf().nondegenerate_mask();
    for (int n = 0; n <= c.trunc; ++n) {
      st.add_sort(m.size(n));
      auto& r = st.rank[s.sort(p, n)];
      for (Index x = 0; x < m.size(n); ++x) r.push_back((nd[n][x] ? 0 : 1000) + (c.trunc - n));
    }
  }
  for (std::size_t p = 0; p < s.pairs; ++p) {
    const auto& m = c.maps[p].presheaf();
    for (std::size_t k = 0; k < s.shape_ops; ++k) {
      const auto& op = shape->ops()[k];
      st.unary.push_back({s.sort(p, static_cast<int>(op.src)), s.sort(p, static_cast<int>(op.dst)), m.table(k)});
    }
  }
  for (Index x = 0; x < c.objects; ++x) {
    for (Index y = 0; y < c.objects; ++y) {
      for (Index z = 0; z < c.objects; ++z) {
        for (int n = 0; n <= c.trunc; ++n) {
          // binary tables are indexed lhs * |rhs| + rhs with lhs = g, rhs = f
          st.binary.push_back({s.sort(c.pair(y, z), n), s.sort(c.pair(x, y), n), s.sort(c.pair(x, z), n),
                               c.comp[c.pair(x, y) * c.objects + z][n]});
        }
      }
    }
  }
  for (Index x = 0; x < c.objects; ++x) st.constants.push_back({s.sort(c.pair(x, x), 0), c.units[x]});
  if (action) {
    for (const auto& g : *action) {
      for (Index x = 0; x < c.objects; ++x) {
        for (Index y = 0; y < c.objects; ++y) {
          const std::size_t p = c.pair(x, y);
          const std::size_t q = c.pair(g.object_map[x], g.object_map[y]);
          for (int n = 0; n <= c.trunc; ++n) st.unary.push_back({s.sort(p, n), s.sort(q, n), g.maps[p][n]});
        }
      }
    }
  }
  return s;
}

}  // namespace

std::vector<SFunctor> sfunctor_homs(const SCategory& c, const SCategory& d, SearchOptions opts,
                                    const SCatActions* equivariant) {
  if (c.trunc != d.trunc) throw InvalidInput("functor search: truncation mismatch");
  if (equivariant && equivariant->on_source.size() != equivariant->on_target.size()) {
    throw InvalidInput("functor search: actions of different groups");
  }
  const auto src = signature(c, equivariant ? &equivariant->on_source : nullptr);
  const auto dst = signature(d, equivariant ? &equivariant->on_target : nullptr);
  std::vector<SFunctor> out;
  if (c.objects > 0 && d.objects == 0) return out;
  std::vector<Index> obj(c.objects, 0);
  std::size_t spent = 0;
  auto inhabited = [](const SCategory& k, Index x, Index y) { return k.map(x, y).size(0) > 0; };
  // objects are assigned in order; a partial map is pruned as soon as an
  // assigned pair breaks equivariance or sends an inhabited mapping space to an empty one
  auto consistent = [&](Index x) {
    for (Index y = 0; y <= x; ++y) {
      if (inhabited(c, x, y) && !inhabited(d, obj[x], obj[y])) return false;
      if (inhabited(c, y, x) && !inhabited(d, obj[y], obj[x])) return false;
    }
    if (equivariant) {
      for (std::size_t g = 0; g < equivariant->on_source.size(); ++g) {
        for (Index y = 0; y <= x; ++y) {
          const Index gy = equivariant->on_source[g].object_map[y];
          if (gy <= x && obj[gy] != equivariant->on_target[g].object_map[obj[y]]) return false;
        }
      }
    }
    return true;
  };
  auto solve = [&] {
    HomProblem p;
    p.source = &src.structure;
    p.target = &dst.structure;
    p.budget = opts.budget > spent ? opts.budget - spent : 0;
    p.sort_map.resize(src.structure.sort_sizes.size());
    p.unary_map.resize(src.structure.unary.size());
    p.binary_map.resize(src.structure.binary.size());
    p.constant_map.resize(src.structure.constants.size());
    for (Index x = 0; x < c.objects; ++x) {
      for (Index y = 0; y < c.objects; ++y) {
        const std::size_t sp = c.pair(x, y), tp = d.pair(obj[x], obj[y]);
        for (int n = 0; n <= c.trunc; ++n) p.sort_map[src.sort(sp, n)] = dst.sort(tp, n);
        for (std::size_t k = 0; k < src.shape_ops; ++k) p.unary_map[src.unary(sp, k)] = dst.unary(tp, k);
        if (equivariant) {
          for (std::size_t g = 0; g < equivariant->on_source.size(); ++g) {
            for (int n = 0; n <= c.trunc; ++n) p.unary_map[src.action(g, sp, n)] = dst.action(g, tp, n);
          }
        }
        for (Index z = 0; z < c.objects; ++z) {
          const std::size_t st = c.pair(x, y) * c.objects + z;
          const std::size_t dt = d.pair(obj[x], obj[y]) * d.objects + obj[z];
          for (int n = 0; n <= c.trunc; ++n) p.binary_map[src.binary(st, n)] = dst.binary(dt, n);
        }
      }
      p.constant_map[x] = obj[x];
    }
    spent += enumerate_homs(p, [&](const StructureMap& m) {
      SFunctor f{c, d, obj, {}};
      for (std::size_t pr = 0; pr < src.pairs; ++pr) {
        PresheafMap comps;
        for (int n = 0; n <= c.trunc; ++n) comps.push_back(m[src.sort(pr, n)]);
        f.maps.push_back(std::move(comps));
      }
      out.push_back(std::move(f));
      return true;
    });
  };
  std::function<void(Index)> assign = [&](Index x) {
    if (x == c.objects) {
      solve();
      return;
    }
    for (Index v = 0; v < d.objects; ++v) {
      obj[x] = v;
      if (consistent(x)) assign(x + 1);
    }
  };
  assign(0);
  return out;
}

// ---------------------------------------------------------------- constructions

SCategory coproduct(const SCategory& a, const SCategory& b) {
  if (a.trunc != b.trunc) throw InvalidInput("coproduct: truncation mismatch");
  const std::size_t na = a.objects, n = a.objects + b.objects;
  std::vector<TruncSSet> maps;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (x < na && y < na) {
        maps.push_back(a.map(x, y));
      } else if (x >= na && y >= na) {
        maps.push_back(b.map(x - na, y - na));
      } else {
        maps.push_back(TruncSSet::empty(a.trunc));
      }
    }
  }
  std::vector<Index> units = a.units;
  units.insert(units.end(), b.units.begin(), b.units.end());
  return make_scategory(a.trunc, n, std::move(maps), std::move(units),
                        [&](Index x, Index y, Index z, int lvl, Index g, Index f) {
                          if (x < na) return a.compose(x, y, z, lvl, g, f);
                          const auto s = static_cast<Index>(na);
                          return b.compose(x - s, y - s, z - s, lvl, g, f);
                        });
}

FiniteCategory pi0_category(const SCategory& c) {
  FiniteCategory out;
  out.objects = c.objects;
  std::vector<Components> comps;
  std::vector<Index> offset;
  for (Index x = 0; x < c.objects; ++x) {
    for (Index y = 0; y < c.objects; ++y) {
      comps.push_back(pi0(c.map(x, y)));
      offset.push_back(static_cast<Index>(out.src.size()));
      for (std::size_t k = 0; k < comps.back().count; ++k) {
        out.src.push_back(x);
        out.tgt.push_back(y);
      }
    }
  }
  auto morphism = [&](Index x, Index y, Index v) { return offset[c.pair(x, y)] + comps[c.pair(x, y)].component_of[v]; };
  for (Index x = 0; x < c.objects; ++x) out.identity.push_back(morphism(x, x, c.units[x]));
  const std::size_t m = out.src.size();
  out.comp.assign(m * m, kNone);
  for (Index x = 0; x < c.objects; ++x) {
    for (Index y = 0; y < c.objects; ++y) {
      for (Index z = 0; z < c.objects; ++z) {
        for (Index g = 0; g < c.map(y, z).size(0); ++g) {
          for (Index f = 0; f < c.map(x, y).size(0); ++f) {
            const Index h = morphism(x, z, c.compose(x, y, z, 0, g, f));
            Index& slot = out.comp[static_cast<std::size_t>(morphism(y, z, g)) * m + morphism(x, y, f)];
            if (slot != kNone && slot != h) throw Error("component category: composition is not well defined");
            slot = h;
          }
        }
      }
    }
  }
  out.validate();
  return out;
}

SCategory UK(const TruncSSet& k) {
  const int trunc = k.trunc();
  std::vector<TruncSSet> maps{TruncSSet::point(trunc), k, TruncSSet::empty(trunc), TruncSSet::point(trunc)};
  return make_scategory(trunc, 2, std::move(maps), {0, 0},
                        [](Index x, Index y, Index, int, Index g, Index f) { return x == y ? g : f; });
}

SFunctor U_map(const SSetMap& f) {
  auto src = UK(f.source);
  auto dst = UK(f.target);
  SFunctor out{src, dst, {0, 1}, {}};
  out.maps = {identity_map(src.maps[0].presheaf()), f.components, identity_map(src.maps[2].presheaf()),
              identity_map(src.maps[3].presheaf())};
  if (!is_valid(out)) throw InvalidInput("U_map: invalid simplicial map");
  return out;
}

TruncBiSSet simplicial_nerve(const SCategory& c) {
  const int trunc = c.trunc;
  auto shape = Shape::bisimplicial(trunc);
  KeyIndex<Word> idx(shape->object_count());
  // key: objects x_0..x_m then simplices f_1..f_m
  for (int n = 0; n <= trunc; ++n) {
    std::vector<Word> strings;
    for (Index x = 0; x < c.objects; ++x) strings.push_back({x});
    for (int m = 0; m <= trunc; ++m) {
      if (m > 0) {
        std::vector<Word> next;
        for (const auto& s : strings) {
          const Index last = s[static_cast<std::size_t>(m) - 1];
          for (Index y = 0; y < c.objects; ++y) {
            for (Index f = 0; f < c.map(last, y).size(n); ++f) {
              Word t(s.begin(), s.begin() + m);
              t.push_back(y);
              t.insert(t.end(), s.begin() + m, s.end());
              t.push_back(f);
              next.push_back(std::move(t));
            }
          }
        }
        strings = std::move(next);
      }
      for (const auto& s : strings) idx.add(shape->cell(m, n), s);
    }
  }
  auto ops = detail::decode_bisimplicial_ops(*shape);
  return TruncBiSSet(detail::build_presheaf(shape, idx, [&](std::size_t k, const Word& key) {
    const auto& op = ops[k];
    const int m = op.m, n = op.n, i = op.i;
    Word objs(key.begin(), key.begin() + m + 1);
    Word arrows(key.begin() + m + 1, key.end());
    if (op.horizontal && op.face) {
      if (i == 0) {
        arrows.erase(arrows.begin());
      } else if (i == m) {
        arrows.pop_back();
      } else {
        arrows[i - 1] = c.compose(objs[i - 1], objs[i], objs[i + 1], n, arrows[i], arrows[i - 1]);
        arrows.erase(arrows.begin() + i);
      }
      objs.erase(objs.begin() + i);
    } else if (op.horizontal) {
      arrows.insert(arrows.begin() + i, c.unit(objs[i], n));
      objs.insert(objs.begin() + i, objs[i]);
    } else {
      for (std::size_t j = 0; j < arrows.size(); ++j) {
        const auto& space = c.map(objs[j], objs[j + 1]);
        arrows[j] = op.face ? space.face(n, i, arrows[j]) : space.degen(n, i, arrows[j]);
      }
    }
    objs.insert(objs.end(), arrows.begin(), arrows.end());
    return objs;
  }));
}

bool DKEvidence::all_positive() const {
  for (const auto& p : pairs) {
    if (!p.pi0_bijective || !p.homology_agrees) return false;
  }
  return pi0_fully_faithful && pi0_essentially_surjective;
}

DKEvidence dk_equivalence_evidence(const SFunctor& f) {
  if (!is_valid(f)) throw InvalidInput("dk_equivalence_evidence: invalid functor");
  DKEvidence ev;
  ev.pi0_fully_faithful = true;
  for (Index x = 0; x < f.source.objects; ++x) {
    for (Index y = 0; y < f.source.objects; ++y) {
      const auto m = f.on_maps(x, y);
      PairEvidence p;
      p.x = x;
      p.y = y;
      p.isomorphism = is_bijective(m.source.presheaf(), m.target.presheaf(), m.components);
      const auto s = pi0(m.source);
      const auto t = pi0(m.target);
      const auto induced = pi0_map(m);
      std::vector<char> hit(t.count, 0);
      for (Index v : induced) hit[v] = 1;
      p.pi0_bijective = s.count == t.count && std::find(hit.begin(), hit.end(), 0) == hit.end();
      p.homology_agrees = true;
      if (m.source.trunc() >= 1) {
        p.homology_agrees = homology(m.source, m.source.trunc() - 1).groups ==
                            homology(m.target, m.target.trunc() - 1).groups;
      }
      ev.pi0_fully_faithful = ev.pi0_fully_faithful && p.pi0_bijective;
      ev.pairs.push_back(p);
    }
  }
  const auto target = pi0_category(f.target);
  ev.pi0_essentially_surjective = true;
  for (Index d = 0; d < f.target.objects; ++d) {
    bool reached = false;
    for (Index x = 0; x < f.source.objects && !reached; ++x) {
      for (Index g : target.hom(f.object_map[x], d)) reached = reached || target.is_isomorphism(g);
    }
    ev.pi0_essentially_surjective = ev.pi0_essentially_surjective && reached;
  }
  return ev;
}

// ---------------------------------------------------------------- cell attachment

AttachResult attach_objects(const SCategory& c, std::size_t count) {
  AttachResult r;
  r.base = c;
  r.result = coproduct(c, SCategory::from_category(FiniteCategory::discrete(count), c.trunc));
  r.from_base = SFunctor{c, r.result, std::vector<Index>(c.objects), {}};
  std::iota(r.from_base.object_map.begin(), r.from_base.object_map.end(), Index{0});
  for (const auto& m : c.maps) r.from_base.maps.push_back(identity_map(m.presheaf()));
  r.words.resize(r.result.objects * r.result.objects);
  for (std::size_t p = 0; p < r.words.size(); ++p) {
    const auto& space = r.result.maps[p];
    for (int k = 0; k <= c.trunc; ++k) {
      r.words[p].emplace_back();
      for (Index e = 0; e < space.size(k); ++e) r.words[p].back().push_back({e});
    }
  }
  return r;
}

AttachResult attach_cells(const SCategory& c, int n, const std::vector<CellAttachment>& cells, std::size_t budget) {
  const int trunc = c.trunc;
  if (n < 0 || n > trunc) throw InvalidInput("attach_cells: cell dimension out of range");
  const auto bd = boundary(n, trunc);
  const auto simplex = standard_simplex(n, trunc);
  const auto incl = boundary_inclusion(n, trunc);
  for (const auto& cell : cells) {
    if (cell.source >= c.objects || cell.target >= c.objects) throw InvalidInput("attach_cells: endpoint out of range");
    if (!(cell.boundary.source == bd) || !(cell.boundary.target == c.map(cell.source, cell.target)) ||
        !is_valid(cell.boundary)) {
      throw InvalidInput("attach_cells: boundary is not a map into the mapping space");
    }
  }
  // cells chain through base morphisms b_i -> a_j; a cycle makes composites unbounded
  const std::size_t nc = cells.size();
  std::vector<std::vector<std::size_t>> next(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      if (c.map(cells[i].target, cells[j].source).size(0) > 0) next[i].push_back(j);
    }
  }
  std::vector<int> state(nc, 0);
  std::vector<std::size_t> longest(nc, 1);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    state[i] = 1;
    for (std::size_t j : next[i]) {
      if (state[j] == 1) throw BudgetExceeded("attach_cells: composites through the attached cells are unbounded");
      if (state[j] == 0) visit(j);
      longest[i] = std::max(longest[i], longest[j] + 1);
    }
    state[i] = 2;
  };
  for (std::size_t i = 0; i < nc; ++i) {
    if (state[i] == 0) visit(i);
  }
  AttachResult r;
  r.base = c;
  r.dimension = n;
  r.cells = cells;
  r.longest_word = nc ? *std::max_element(longest.begin(), longest.end()) : 0;
  if (r.longest_word > budget) {
    throw BudgetExceeded("attach_cells: composites need " + std::to_string(r.longest_word) + " cells, budget is " +
                         std::to_string(budget));
  }
  // interior simplices of Delta[n] and the boundary index of the others
  std::vector<std::vector<Index>> boundary_index(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<Index>> interior(static_cast<std::size_t>(trunc) + 1);
  for (int k = 0; k <= trunc; ++k) {
    boundary_index[k].assign(simplex.size(k), kNone);
    for (Index b = 0; b < bd.size(k); ++b) boundary_index[k][incl.components[k][b]] = b;
    for (Index s = 0; s < simplex.size(k); ++s) {
      if (boundary_index[k][s] == kNone) interior[k].push_back(s);
    }
  }
  const std::size_t obj = c.objects;
  std::vector<KeyIndex<Word>> idx(obj * obj, KeyIndex<Word>(static_cast<std::size_t>(trunc) + 1));
  for (Index u = 0; u < obj; ++u) {
    for (int k = 0; k <= trunc; ++k) {
      Word w;
      std::function<void(Index)> extend = [&](Index at) {
        for (Index v = 0; v < obj; ++v) {
          for (Index e = 0; e < c.map(at, v).size(k); ++e) {
            w.push_back(e);
            idx[c.pair(u, v)].add(k, w);
            w.pop_back();
          }
        }
        for (Index j = 0; j < nc; ++j) {
          const auto& cell = cells[j];
          for (Index e = 0; e < c.map(at, cell.source).size(k); ++e) {
            for (Index s : interior[k]) {
              w.insert(w.end(), {e, j, s});
              extend(cell.target);
              w.resize(w.size() - 3);
            }
          }
        }
      };
      extend(u);
    }
  }
  // the object where each base letter of a word starts
  auto letter_source = [&](Index u, const Word& w, std::size_t pos) {
    return pos == 0 ? u : cells[w[pos - 2]].target;
  };
  auto letter_target = [&](Index v, const Word& w, std::size_t pos) {
    return pos + 1 == w.size() ? v : cells[w[pos + 1]].source;
  };
  auto face_word = [&](Index u, Index v, int k, int i, const Word& w) {
    Word out;
    Index acc_src = u;
    Index acc = c.map(u, letter_target(v, w, 0)).face(k, i, w[0]);
    for (std::size_t pos = 1; pos + 2 < w.size() + 1 && pos < w.size(); pos += 3) {
      const Index j = w[pos];
      const auto& cell = cells[j];
      const Index s = simplex.face(k, i, w[pos + 1]);
      const Index next_target = letter_target(v, w, pos + 2);
      const Index next = c.map(cell.target, next_target).face(k, i, w[pos + 2]);
      if (boundary_index[k - 1][s] == kNone) {
        out.insert(out.end(), {acc, j, s});
        acc_src = cell.target;
        acc = next;
      } else {
        const Index phi = cell.boundary.components[k - 1][boundary_index[k - 1][s]];
        acc = c.compose(acc_src, cell.source, cell.target, k - 1, phi, acc);
        acc = c.compose(acc_src, cell.target, next_target, k - 1, next, acc);
      }
    }
    out.push_back(acc);
    return out;
  };
  auto degen_word = [&](Index u, Index v, int k, int i, const Word& w) {
    Word out(w);
    for (std::size_t pos = 0; pos < w.size(); pos += 3) {
      out[pos] = c.map(letter_source(u, w, pos), letter_target(v, w, pos)).degen(k, i, w[pos]);
      if (pos + 1 < w.size()) out[pos + 2] = simplex.degen(k, i, w[pos + 2]);
    }
    return out;
  };
  auto shape = Shape::simplicial(trunc);
  auto ops = detail::decode_simplicial_ops(*shape);
  std::vector<TruncSSet> maps;
  for (Index u = 0; u < obj; ++u) {
    for (Index v = 0; v < obj; ++v) {
      maps.emplace_back(detail::build_presheaf(shape, idx[c.pair(u, v)], [&](std::size_t op, const Word& w) {
        return ops[op].face ? face_word(u, v, ops[op].level, ops[op].i, w)
                            : degen_word(u, v, ops[op].level, ops[op].i, w);
      }));
    }
  }
  std::vector<Index> units;
  for (Index x = 0; x < obj; ++x) units.push_back(idx[c.pair(x, x)].find(0, Word{c.units[x]}));
  r.result = make_scategory(trunc, obj, maps, units, [&](Index x, Index y, Index z, int k, Index g, Index f) {
    const Word& wf = idx[c.pair(x, y)].keys(k)[f];
    const Word& wg = idx[c.pair(y, z)].keys(k)[g];
    Word w(wf.begin(), wf.end() - 1);
    const Index mid_src = letter_source(x, wf, wf.size() - 1);
    const Index mid_tgt = letter_target(z, wg, 0);
    w.push_back(c.compose(mid_src, y, mid_tgt, k, wg[0], wf.back()));
    w.insert(w.end(), wg.begin() + 1, wg.end());
    return idx[c.pair(x, z)].find(k, w);
  });
  r.words.resize(obj * obj);
  for (std::size_t p = 0; p < obj * obj; ++p) {
    for (int k = 0; k <= trunc; ++k) r.words[p].push_back(idx[p].keys(k));
  }
  r.from_base = SFunctor{c, r.result, std::vector<Index>(obj), {}};
  std::iota(r.from_base.object_map.begin(), r.from_base.object_map.end(), Index{0});
  for (Index x = 0; x < obj; ++x) {
    for (Index y = 0; y < obj; ++y) {
      PresheafMap comps(static_cast<std::size_t>(trunc) + 1);
      for (int k = 0; k <= trunc; ++k) {
        for (Index e = 0; e < c.map(x, y).size(k); ++e) comps[k].push_back(idx[c.pair(x, y)].find(k, Word{e}));
      }
      r.from_base.maps.push_back(std::move(comps));
    }
  }
  const auto u_simplex = UK(simplex);
  for (Index j = 0; j < nc; ++j) {
    const auto& cell = cells[j];
    SFunctor f{u_simplex, r.result, {cell.source, cell.target}, {}};
    PresheafMap ends_a(static_cast<std::size_t>(trunc) + 1), ends_b(ends_a.size()), arrow(ends_a.size()),
        none(ends_a.size());
    for (int k = 0; k <= trunc; ++k) {
      ends_a[k].push_back(idx[c.pair(cell.source, cell.source)].find(k, Word{c.unit(cell.source, k)}));
      ends_b[k].push_back(idx[c.pair(cell.target, cell.target)].find(k, Word{c.unit(cell.target, k)}));
      for (Index s = 0; s < simplex.size(k); ++s) {
        Word w;
        if (boundary_index[k][s] == kNone) {
          w = {c.unit(cell.source, k), j, s, c.unit(cell.target, k)};
        } else {
          w = {cell.boundary.components[k][boundary_index[k][s]]};
        }
        arrow[k].push_back(idx[c.pair(cell.source, cell.target)].find(k, w));
      }
    }
    f.maps = {ends_a, arrow, none, ends_b};
    if (!is_valid(f)) throw Error("attach_cells: cell functor is not simplicial");
    r.from_cells.push_back(std::move(f));
  }
  return r;
}

SFunctor attach_functor(const AttachResult& from, const AttachResult& to, const SFunctor& on_base,
                        const std::vector<Index>& on_cells) {
  const auto& c = from.base;
  const auto& d = to.base;
  if (!(on_base.source == c) || !(on_base.target == d) || on_cells.size() != from.cells.size()) {
    throw InvalidInput("attach_functor: base functor or cell map does not match");
  }
  const int trunc = c.trunc;
  std::vector<std::vector<std::map<Word, Index>>> lookup(to.words.size());
  for (std::size_t p = 0; p < to.words.size(); ++p) {
    for (const auto& level : to.words[p]) {
      lookup[p].emplace_back();
      for (Index e = 0; e < level.size(); ++e) lookup[p].back().emplace(level[e], e);
    }
  }
  const auto& fo = on_base.object_map;
  SFunctor out{from.result, to.result, fo, {}};
  for (Index u = 0; u < c.objects; ++u) {
    for (Index v = 0; v < c.objects; ++v) {
      PresheafMap comps(static_cast<std::size_t>(trunc) + 1);
      for (int k = 0; k <= trunc; ++k) {
        for (const Word& w : from.words[c.pair(u, v)][k]) {
          Word img(w);
          for (std::size_t pos = 0; pos < w.size(); pos += 3) {
            const Index s = pos == 0 ? u : from.cells[w[pos - 2]].target;
            const Index t = pos + 1 == w.size() ? v : from.cells[w[pos + 1]].source;
            img[pos] = on_base.maps[c.pair(s, t)][k][w[pos]];
            if (pos + 1 < w.size()) img[pos + 1] = on_cells[w[pos + 1]];
          }
          auto it = lookup[d.pair(fo[u], fo[v])][k].find(img);
          if (it == lookup[d.pair(fo[u], fo[v])][k].end()) {
            throw InvalidInput("attach_functor: cells are not sent to compatible cells");
          }
          comps[k].push_back(it->second);
        }
      }
      out.maps.push_back(std::move(comps));
    }
  }
  if (!is_valid(out)) throw InvalidInput("attach_functor: induced functor is not simplicial");
  return out;
}

// ---------------------------------------------------------------- coherent nerve

namespace {

/// Chains of subsets (bitmasks) per pair (i, j), i <= j.
std::vector<KeyIndex<Word>> resolution_keys(int k, int trunc) {
  const std::size_t obj = static_cast<std::size_t>(k) + 1;
  std::vector<KeyIndex<Word>> idx(obj * obj, KeyIndex<Word>(static_cast<std::size_t>(trunc) + 1));
  for (int i = 0; i <= k; ++i) {
    for (int j = i; j <= k; ++j) {
      std::vector<Index> subsets;
      const Index ends = (1u << i) | (1u << j);
      for (Index s = 0; s < (1u << (k + 1)); ++s) {
        const bool inside = (s >> i) << i == s && (j == 31 || s >> (j + 1) == 0);
        if (inside && (s & ends) == ends) subsets.push_back(s);
      }
      for (int n = 0; n <= trunc; ++n) {
        Word chain;
        std::function<void()> rec = [&] {
          if (static_cast<int>(chain.size()) == n + 1) {
            idx[i * obj + j].add(n, chain);
            return;
          }
          for (Index s : subsets) {
            if (!chain.empty() && (chain.back() & s) != chain.back()) continue;
            chain.push_back(s);
            rec();
            chain.pop_back();
          }
        };
        rec();
      }
    }
  }
  return idx;
}

Index image_mask(Index s, const std::vector<int>& theta) {
  Index out = 0;
  for (std::size_t v = 0; v < theta.size(); ++v) {
    if (s >> v & 1) out |= 1u << theta[v];
  }
  return out;
}

}  // namespace

SCategory resolution(int k, int trunc) {
  if (k < 0 || k > 20) throw InvalidInput("resolution: bad dimension");
  auto idx = resolution_keys(k, trunc);
  auto shape = Shape::simplicial(trunc);
  auto ops = detail::decode_simplicial_ops(*shape);
  const std::size_t obj = static_cast<std::size_t>(k) + 1;
  std::vector<TruncSSet> maps;
  for (std::size_t p = 0; p < obj * obj; ++p) {
    maps.emplace_back(detail::build_presheaf(shape, idx[p], [&](std::size_t op, const Word& chain) {
      Word out(chain);
      if (ops[op].face) {
        out.erase(out.begin() + ops[op].i);
      } else {
        out.insert(out.begin() + ops[op].i, chain[ops[op].i]);
      }
      return out;
    }));
  }
  std::vector<Index> units;
  for (Index x = 0; x < obj; ++x) units.push_back(idx[x * obj + x].find(0, Word{1u << x}));
  return make_scategory(trunc, obj, std::move(maps), std::move(units),
                        [&](Index x, Index y, Index z, int n, Index g, Index f) {
                          Word h = idx[x * obj + y].keys(n)[f];
                          const Word& gw = idx[y * obj + z].keys(n)[g];
                          for (std::size_t p = 0; p < h.size(); ++p) h[p] |= gw[p];
                          return idx[x * obj + z].find(n, h);
                        });
}

SFunctor resolution_map(const std::vector<int>& theta, int b, int trunc) {
  const int a = static_cast<int>(theta.size()) - 1;
  auto src = resolution(a, trunc);
  auto dst = resolution(b, trunc);
  auto src_keys = resolution_keys(a, trunc);
  auto dst_keys = resolution_keys(b, trunc);
  SFunctor f{src, dst, {}, {}};
  for (int v : theta) f.object_map.push_back(static_cast<Index>(v));
  const std::size_t so = src.objects, dobj = dst.objects;
  for (Index x = 0; x < so; ++x) {
    for (Index y = 0; y < so; ++y) {
      PresheafMap comps(static_cast<std::size_t>(trunc) + 1);
      for (int n = 0; n <= trunc; ++n) {
        for (const auto& chain : src_keys[x * so + y].keys(n)) {
          Word img;
          for (Index s : chain) img.push_back(image_mask(s, theta));
          comps[n].push_back(dst_keys[f.object_map[x] * dobj + f.object_map[y]].find(n, img));
        }
      }
      f.maps.push_back(std::move(comps));
    }
  }
  return f;
}

TruncSSet coherent_nerve(const SCategory& c, int up_to, SearchOptions opts) {
  if (up_to < 0 || up_to - 1 > c.trunc) throw InvalidInput("coherent_nerve: needs up_to - 1 <= truncation");
  const int trunc = c.trunc;
  std::vector<std::vector<SFunctor>> simplices;
  KeyIndex<Word> idx(static_cast<std::size_t>(up_to) + 1);
  auto key_of = [](const SFunctor& f) {
    Word key = f.object_map;
    for (const auto& m : f.maps) {
      for (const auto& level : m) key.insert(key.end(), level.begin(), level.end());
    }
    return key;
  };
  for (int k = 0; k <= up_to; ++k) {
    simplices.push_back(sfunctor_homs(resolution(k, trunc), c, opts));
    for (const auto& f : simplices.back()) idx.add(k, key_of(f));
  }
  auto shape = Shape::simplicial(up_to);
  auto ops = detail::decode_simplicial_ops(*shape);
  std::vector<SFunctor> precompose;
  for (const auto& op : ops) {
    std::vector<int> theta;
    const int k = op.level;
    if (op.face) {
      for (int v = 0; v <= k; ++v) {
        if (v != op.i) theta.push_back(v);
      }
    } else {
      for (int v = 0; v <= k; ++v) {
        theta.push_back(v);
        if (v == op.i) theta.push_back(v);
      }
    }
    precompose.push_back(resolution_map(theta, k, trunc));
  }
  return TruncSSet(detail::build_presheaf(shape, idx, [&](std::size_t op, const Word& key) {
    const int k = ops[op].level;
    const auto& f = simplices[k][idx.find(k, key)];
    return key_of(compose(f, precompose[op]));
  }));
}

}  // namespace eqcat
