#pragma once

// Finite simplicial categories with truncated mapping spaces.

#include <optional>
#include <string>
#include <vector>

#include "eqcat/bisimp.hpp"
#include "eqcat/simpset.hpp"

namespace eqcat {

struct SCategory {
  int trunc = 0;
  std::size_t objects = 0;
  std::vector<TruncSSet> maps;  // maps[x * objects + y] = Map(x, y)
  // comp[(x * objects + y) * objects + z][n][g * |Map(x,y)_n| + f] = g o f
  std::vector<std::vector<std::vector<Index>>> comp;
  std::vector<Index> units;  // units[x] in Map(x, x)_0

  std::size_t pair(Index x, Index y) const { return static_cast<std::size_t>(x) * objects + y; }
  const TruncSSet& map(Index x, Index y) const { return maps[pair(x, y)]; }
  Index compose(Index x, Index y, Index z, int n, Index g, Index f) const;
  /// The unit of x as a degenerate n-simplex.
  Index unit(Index x, int n) const;
  /// Throws InvalidInput unless composition is simplicial, associative and unital.
  void validate() const;
  bool operator==(const SCategory& o) const;

  static SCategory empty(int trunc);
  /// Every mapping space is the discrete hom-set.
  static SCategory from_category(const FiniteCategory& c, int trunc);
};

/// Builds an SCategory from mapping spaces, a composition function and units; validates.
template <class Comp>
SCategory make_scategory(int trunc, std::size_t objects, std::vector<TruncSSet> maps, std::vector<Index> units,
                         Comp comp_fn);

struct SFunctor {
  SCategory source;
  SCategory target;
  std::vector<Index> object_map;
  std::vector<PresheafMap> maps;  // per source pair

  SSetMap on_maps(Index x, Index y) const;
};

bool is_valid(const SFunctor& f);
SFunctor compose(const SFunctor& second, const SFunctor& first);
SFunctor identity(const SCategory& c);
bool is_isomorphism(const SFunctor& f);

/// Group elements acting on source and target; restricts searches to equivariant functors.
struct SCatActions {
  std::vector<SFunctor> on_source;
  std::vector<SFunctor> on_target;
};

std::vector<SFunctor> sfunctor_homs(const SCategory& c, const SCategory& d, SearchOptions opts = {},
                                    const SCatActions* equivariant = nullptr);

SCategory coproduct(const SCategory& a, const SCategory& b);
FiniteCategory pi0_category(const SCategory& c);
/// Two objects 0 -> 1 with Map(0, 1) = K.
SCategory UK(const TruncSSet& k);
/// The simplicial functor U(f) : UK -> UL.
SFunctor U_map(const SSetMap& f);
/// Composable m-strings of n-simplices.
TruncBiSSet simplicial_nerve(const SCategory& c);

struct PairEvidence {
  Index x = 0;
  Index y = 0;
  bool isomorphism = false;
  bool pi0_bijective = false;
  bool homology_agrees = false;
};

struct DKEvidence {
  std::string label = "EVIDENCE";
  std::vector<PairEvidence> pairs;
  bool pi0_fully_faithful = false;
  bool pi0_essentially_surjective = false;
  bool all_positive() const;
};

DKEvidence dk_equivalence_evidence(const SFunctor& f);

// --- cell attachment ---

/// One cell U(dDelta[n]) -> C: endpoints and the boundary on Map(source, target).
struct CellAttachment {
  Index source = 0;
  Index target = 0;
  SSetMap boundary;  // dDelta[n] -> Map(source, target)
};

struct AttachResult {
  SCategory result;
  SFunctor from_base;
  /// Per cell, U(Delta[n]) -> result.
  std::vector<SFunctor> from_cells;
  /// words[pair][k][e]: normal form of element e of the mapping space at level k:
  /// base simplex, then (cell, interior simplex, base simplex) repeated.
  std::vector<std::vector<std::vector<std::vector<Index>>>> words;
  std::size_t longest_word = 0;  // cells in the longest composite
  SCategory base;
  int dimension = 0;
  std::vector<CellAttachment> cells;
};

/// Adjoins `count` disjoint objects.
AttachResult attach_objects(const SCategory& c, std::size_t count);
/// Pushout along a coproduct of copies of U(dDelta[n]) -> U(Delta[n]). Throws
/// BudgetExceeded if composites through the cells are unbounded or longer than
/// `budget` cells.
AttachResult attach_cells(const SCategory& c, int n, const std::vector<CellAttachment>& cells,
                          std::size_t budget);

/// Functor between two cell attachments induced by a functor of the bases that
/// sends cell j to cell on_cells[j] compatibly with the boundaries.
SFunctor attach_functor(const AttachResult& from, const AttachResult& to, const SFunctor& on_base,
                        const std::vector<Index>& on_cells);

// --- coherent nerve ---

/// The cube-poset resolution of [k]: Map(i, j) is the nerve of subsets of
/// {i..j} containing both ends, composition by union.
SCategory resolution(int k, int trunc);
/// Image of a monotone map [a] -> [b] on resolutions.
SFunctor resolution_map(const std::vector<int>& theta, int b, int trunc);
/// Levels 0..up_to of simplicial functors C_*[k] -> C. Needs up_to - 1 <= C.trunc.
TruncSSet coherent_nerve(const SCategory& c, int up_to, SearchOptions opts = {});

// ---------------------------------------------------------------- template

template <class Comp>
SCategory make_scategory(int trunc, std::size_t objects, std::vector<TruncSSet> maps, std::vector<Index> units,
                         Comp comp_fn) {
  SCategory c;
  c.trunc = trunc;
  c.objects = objects;
  c.maps = std::move(maps);
  c.units = std::move(units);
  c.comp.resize(objects * objects * objects);
  for (Index x = 0; x < objects; ++x) {
    for (Index y = 0; y < objects; ++y) {
      for (Index z = 0; z < objects; ++z) {
        auto& levels = c.comp[(c.pair(x, y)) * objects + z];
        levels.resize(static_cast<std::size_t>(trunc) + 1);
        for (int n = 0; n <= trunc; ++n) {
          const std::size_t nf = c.map(x, y).size(n), ng = c.map(y, z).size(n);
          levels[n].resize(ng * nf);
          for (Index g = 0; g < ng; ++g) {
            for (Index f = 0; f < nf; ++f) levels[n][g * nf + f] = comp_fn(x, y, z, n, g, f);
          }
        }
      }
    }
  }
  c.validate();
  return c;
}

}  // namespace eqcat
