#pragma once

// Finite N-truncated simplicial sets, finite categories and their nerves,
// horn-filling tests, components, and the standard small objects.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eqcat/presheaf.hpp"

namespace eqcat {

class TruncSSet {
 public:
  /// Empty simplicial set truncated at 0.
  TruncSSet();
  /// Wraps a simplicial-shaped presheaf; validates the simplicial identities.
  explicit TruncSSet(Presheaf p);

  static TruncSSet empty(int trunc);
  static TruncSSet point(int trunc);

  int trunc() const { return data_.shape().trunc(); }
  std::size_t size(int n) const { return data_.size(static_cast<std::size_t>(n)); }
  Index face(int n, int i, Index x) const { return data_.apply(data_.shape().face_op(n, i), x); }
  Index degen(int n, int i, Index x) const { return data_.apply(data_.shape().degen_op(n, i), x); }
  bool is_degenerate(int n, Index x) const;

  /// theta^*(x) for x in X_n and a monotone theta : [b] -> [n] given by its values.
  Index act(int n, Index x, std::span<const int> theta) const;
  /// Vertex k of an n-simplex.
  Index vertex(int n, Index x, int k) const;

  const Presheaf& presheaf() const { return data_; }
  bool operator==(const TruncSSet& other) const { return data_ == other.data_; }

 private:
  Presheaf data_;
};

template <class T>
struct Arrow {
  T source;
  T target;
  PresheafMap components;
};

using SSetMap = Arrow<TruncSSet>;

bool is_valid(const SSetMap& f);
SSetMap compose(const SSetMap& second, const SSetMap& first);
SSetMap identity(const TruncSSet& x);

/// Finite category with a total composition table on composable pairs.
struct FiniteCategory {
  std::size_t objects = 0;
  std::vector<Index> src;       // per morphism
  std::vector<Index> tgt;       // per morphism
  std::vector<Index> identity;  // per object
  std::vector<Index> comp;      // comp[g * M + f] = g o f, kNone if tgt f != src g

  std::size_t morphism_count() const { return src.size(); }
  Index compose(Index g, Index f) const { return comp[static_cast<std::size_t>(g) * src.size() + f]; }
  std::vector<Index> hom(Index x, Index y) const;
  bool is_isomorphism(Index f) const;
  void validate() const;

  static FiniteCategory discrete(std::size_t objects);
  /// Poset on objects 0..n-1; leq[i][j] true iff i <= j.
  static FiniteCategory poset(const std::vector<std::vector<bool>>& leq);
  /// Linear order [n] = 0 -> 1 -> ... -> n.
  static FiniteCategory ordinal(int n);
  /// One-object category from a monoid multiplication table with unit.
  static FiniteCategory monoid(const std::vector<std::vector<Index>>& mul, Index unit);
  /// Two objects and a single isomorphism between them.
  static FiniteCategory walking_isomorphism();
  /// Free category on a finite acyclic directed multigraph.
  static FiniteCategory free_on_dag(std::size_t objects, const std::vector<std::pair<Index, Index>>& edges);
  static FiniteCategory disjoint_union(const FiniteCategory& a, const FiniteCategory& b);
};

bool categories_isomorphic(const FiniteCategory& a, const FiniteCategory& b);

// --- standard objects ---

/// Monotone maps [k] -> [n] in the canonical (lexicographic) order used for Delta[n]_k.
std::vector<std::vector<int>> monotone_sequences(int k, int n);

TruncSSet standard_simplex(int n, int trunc);
TruncSSet boundary(int n, int trunc);
TruncSSet horn(int n, int k, int trunc);
/// Inclusions into Delta[n].
SSetMap boundary_inclusion(int n, int trunc);
SSetMap horn_inclusion(int n, int k, int trunc);
/// Nerve of a finite category: level n is the set of composable n-strings.
TruncSSet nerve(const FiniteCategory& c, int trunc);
/// Nerve of the walking isomorphism.
TruncSSet walking_iso_nerve(int trunc);
/// Discrete simplicial set on a finite set.
TruncSSet discrete(std::size_t points, int trunc);
/// Delta[n] -> X classifying an n-simplex (Yoneda).
SSetMap yoneda_map(const TruncSSet& x, int n, Index simplex);

// --- limits and colimits ---

struct SSetCocone {
  TruncSSet object;
  std::vector<PresheafMap> legs;
};

TruncSSet product(const TruncSSet& x, const TruncSSet& y);
SSetCocone coproduct(const std::vector<TruncSSet>& parts);
/// Pushout of f : A -> B and g : A -> C (same source).
SSetCocone pushout(const SSetMap& f, const SSetMap& g);
SSetCocone coequalizer(const SSetMap& f, const SSetMap& g);
TruncSSet pullback(const SSetMap& f, const SSetMap& g);
TruncSSet equalizer(const SSetMap& f, const SSetMap& g);
SSetCocone chain_colimit(const std::vector<SSetMap>& chain);

// --- hom-sets ---

std::vector<PresheafMap> hom_set(const TruncSSet& x, const TruncSSet& y, SearchOptions opts = {});
std::optional<SSetMap> is_isomorphic(const TruncSSet& x, const TruncSSet& y, SearchOptions opts = {});

// --- inner horns ---

struct HornFailure {
  int n = 0;
  int k = 0;
  PresheafMap horn_map;  // the unfillable map V[n,k] -> X
};

struct QuasiCategoryReport {
  int max_dim = 0;
  std::size_t horns_checked = 0;
  std::vector<HornFailure> failures;
  bool passes() const { return failures.empty(); }
};

QuasiCategoryReport is_quasicategory(const TruncSSet& x, int max_dim, SearchOptions opts = {});

// --- components ---

struct Components {
  std::vector<Index> component_of;  // per vertex
  std::size_t count = 0;
  bool no_edges = false;  // trunc == 0: vertices are not quotiented
};

Components pi0(const TruncSSet& x);
/// Induced function on components of a map.
std::vector<Index> pi0_map(const SSetMap& f);

}  // namespace eqcat
