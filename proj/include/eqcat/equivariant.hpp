#pragma once

// Objects with a finite group action in three carrier categories: truncated
// simplicial sets, truncated bisimplicial sets and simplicial categories.
// Fixed points, orbit tensors, the orbit/fixed-point adjunction, cellularity
// checks and the orbit-diagram comparison.

#include <string>
#include <vector>

#include "eqcat/bisimp.hpp"
#include "eqcat/fingroup.hpp"
#include "eqcat/scat.hpp"
#include "eqcat/simpset.hpp"

namespace eqcat {

template <class T>
struct CarrierMap;
template <>
struct CarrierMap<TruncSSet> {
  using type = SSetMap;
};
template <>
struct CarrierMap<TruncBiSSet> {
  using type = BiMap;
};
template <>
struct CarrierMap<SCategory> {
  using type = SFunctor;
};
template <class T>
using MapOf = typename CarrierMap<T>::type;

template <class T>
struct GObject {
  FiniteGroup group;
  T value;
  std::vector<MapOf<T>> action;  // per group element, an automorphism of value
};

template <class T>
struct GMap {
  GObject<T> source;
  GObject<T> target;
  MapOf<T> map;
};

template <class T>
struct Fixed {
  T object;
  MapOf<T> inclusion;
};

/// Throws InvalidInput unless the action is a homomorphism into automorphisms.
template <class T>
void validate(const GObject<T>& x);
template <class T>
bool is_valid(const GMap<T>& f);

template <class T>
GObject<T> trivial_action(const FiniteGroup& g, const T& a);
template <class T>
Fixed<T> fixed_points(const GObject<T>& x, const Subgroup& h);
/// The restriction X^H -> Y^H.
template <class T>
MapOf<T> fixed_map(const GMap<T>& f, const Subgroup& h);

/// Coproduct of `count` copies, copy c occupying a contiguous block.
template <class T>
T copies(const T& a, std::size_t count);
/// S (x) A: one copy of A per point of S, permuted by the action on S.
template <class T>
GObject<T> tensor_set(const GSet& s, const T& a);
template <class T>
GObject<T> tensor_orbit(const FiniteGroup& g, const Subgroup& h, const T& a);
/// Copywise f on |S| copies, as an equivariant map S (x) A -> S (x) B.
template <class T>
GMap<T> tensor_set_map(const GSet& s, const MapOf<T>& f);
/// The equivariant map G/K (x) A -> X whose restriction to the copy at K is
/// `on_base_copy`; requires that restriction to land in X^K.
template <class T>
GMap<T> extend_from_orbit(const Subgroup& k, const T& a, const GObject<T>& x, const MapOf<T>& on_base_copy);

template <class T>
std::vector<MapOf<T>> equivariant_homs(const GObject<T>& x, const GObject<T>& y, SearchOptions opts = {});

// --- reports ---

struct CheckReport {
  std::string condition;
  std::string generator;
  Subgroup h;
  Subgroup k;
  bool verdict = false;
  std::string evidence;
};

struct AdjunctionReport {
  std::size_t left_count = 0;   // equivariant maps G/H (x) A -> B
  std::size_t right_count = 0;  // maps A -> B^H
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  bool passes() const { return well_defined && injective && surjective && left_count == right_count; }
};

template <class T>
AdjunctionReport check_adjunction(const Subgroup& h, const T& a, const GObject<T>& b, SearchOptions opts = {});

/// (G/H)^K (x) A -> (G/H (x) A)^K is a bijection.
template <class T>
CheckReport check_cellularity_3(const FiniteGroup& g, const Subgroup& h, const Subgroup& k, const T& a);

/// Fixed points of a finite chain colimit against the colimit of fixed points.
template <class T>
CheckReport check_cellularity_1(const Subgroup& h, const std::vector<GMap<T>>& chain);

/// Presheaf carriers: pushout along G/K (x) gen, with the attaching map given on the copy at K.
template <class T>
CheckReport check_cellularity_2(const Subgroup& k, const Subgroup& h, const MapOf<T>& gen, const GObject<T>& x,
                                const MapOf<T>& attach);

/// Simplicial categories, generator "adjoin an object".
CheckReport check_cellularity_2_objects(const Subgroup& k, const Subgroup& h, const GObject<SCategory>& x);
/// Simplicial categories, generator U(dDelta[n]) -> U(Delta[n]); `cell` is the
/// cell attached at the copy of K and must be K-fixed.
CheckReport check_cellularity_2_cell(const Subgroup& k, const Subgroup& h, const GObject<SCategory>& x, int n,
                                     const CellAttachment& cell, std::size_t budget);

/// Segal precategories: the generator is the reduction of `gen` : A -> B. The
/// attaching map A_r -> X is given on the copy at K.
struct SegalCellularityReport {
  CheckReport fixed;       // fixed points of the pushout against the fixed pushout
  bool left_square = false;      // (B u_A A_r)_r -> B_r is a bijection
  bool outer_rectangle = false;  // (B u_A X)_r -> (B_r u_{A_r} X)_r is a bijection
  bool passes() const { return fixed.verdict && left_square && outer_rectangle; }
};

SegalCellularityReport check_cellularity_2_segal(const Subgroup& k, const Subgroup& h, const BiMap& gen,
                                                 const GObject<TruncBiSSet>& x, const BiMap& attach);

// --- weak equivalences ---

struct FixedEvidence {
  Subgroup h;
  bool isomorphism = false;
  bool pi0_bijective = false;
  bool homology_agrees = false;
};

struct GEvidence {
  std::string label = "EVIDENCE";
  std::vector<FixedEvidence> per_subgroup;
  bool all_positive() const;
};

template <class T>
GEvidence g_weak_equivalence_evidence(const GMap<T>& f, const SubgroupFamily& family);

// --- orbit diagrams ---

/// Contravariant functor on the orbit category: maps[h * n + k][u] : values[k] -> values[h]
/// for the u-th equivariant map G/H -> G/K.
template <class T>
struct OrbitDiagram {
  OrbitCategory orbits;
  std::vector<T> values;
  std::vector<std::vector<PresheafMap>> maps;

  const PresheafMap& on(std::size_t h, std::size_t k, Index u) const { return maps[h * values.size() + k][u]; }
};

template <class T>
void validate(const OrbitDiagram<T>& f);
/// H |-> Y^H with the maps induced by the group action.
template <class T>
OrbitDiagram<T> fixed_point_diagram(const GObject<T>& y);
/// Value at G/{e}, with g acting by the map induced from x |-> xg.
template <class T>
GObject<T> elmendorf_restrict(const OrbitDiagram<T>& f);
/// Strict pointwise left Kan extension along G -> O_G^op.
template <class T>
OrbitDiagram<T> elmendorf_lan(const GObject<T>& x);

template <class T>
std::vector<std::vector<PresheafMap>> diagram_homs(const OrbitDiagram<T>& a, const OrbitDiagram<T>& b,
                                                   SearchOptions opts = {});

struct ElmendorfReport {
  std::size_t left_count = 0;   // maps i_* X -> F
  std::size_t right_count = 0;  // equivariant maps X -> i^* F
  bool bijection = false;
  bool unit_triangle = false;    // (i^* counit) o (unit i^*) = id
  bool counit_triangle = false;  // (counit i_*) o (i_* unit) = id
  std::string notes;
  bool passes() const { return bijection && unit_triangle && counit_triangle && left_count == right_count; }
};

template <class T>
ElmendorfReport check_elmendorf_adjunction(const GObject<T>& x, const OrbitDiagram<T>& f, SearchOptions opts = {});

}  // namespace eqcat
