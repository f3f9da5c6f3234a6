#pragma once

// Finite N-truncated bisimplicial sets (simplicial spaces). X_{m,n}: m is the
// horizontal (diagram) index and n the vertical one, so the simplicial set
// W_m is the vertical slice at horizontal level m.

#include <optional>
#include <string>
#include <vector>

#include "eqcat/simpset.hpp"

namespace eqcat {

class TruncBiSSet {
 public:
  TruncBiSSet();
  explicit TruncBiSSet(Presheaf p);

  static TruncBiSSet empty(int trunc);
  static TruncBiSSet point(int trunc);

  int trunc() const { return data_.shape().trunc(); }
  std::size_t size(int m, int n) const { return data_.size(data_.shape().cell(m, n)); }
  Index hface(int m, int n, int i, Index x) const { return data_.apply(data_.shape().hface_op(m, n, i), x); }
  Index vface(int m, int n, int i, Index x) const { return data_.apply(data_.shape().vface_op(m, n, i), x); }
  Index hdegen(int m, int n, int i, Index x) const { return data_.apply(data_.shape().hdegen_op(m, n, i), x); }
  Index vdegen(int m, int n, int i, Index x) const { return data_.apply(data_.shape().vdegen_op(m, n, i), x); }
  Index hact(int m, int n, Index x, std::span<const int> theta) const;
  Index vact(int m, int n, Index x, std::span<const int> theta) const;

  /// The simplicial set W_m (vertical structure at horizontal level m).
  TruncSSet slice(int m) const;
  /// Horizontal simplicial set at vertical level n.
  TruncSSet row(int n) const;

  const Presheaf& presheaf() const { return data_; }
  bool operator==(const TruncBiSSet& o) const { return data_ == o.data_; }

 private:
  Presheaf data_;
};

using BiMap = Arrow<TruncBiSSet>;

bool is_valid(const BiMap& f);
BiMap compose(const BiMap& second, const BiMap& first);
BiMap identity(const TruncBiSSet& x);
/// Component of a map at a vertical slice.
SSetMap slice_map(const BiMap& f, int m);

struct BiCocone {
  TruncBiSSet object;
  std::vector<PresheafMap> legs;
};

TruncBiSSet product(const TruncBiSSet& x, const TruncBiSSet& y);
BiMap product(const BiMap& f, const BiMap& g);
BiCocone coproduct(const std::vector<TruncBiSSet>& parts);
/// Pushout of f : A -> B and g : A -> C; legs[0] : B -> P, legs[1] : C -> P.
BiCocone pushout(const BiMap& f, const BiMap& g);
std::vector<PresheafMap> hom_set(const TruncBiSSet& x, const TruncBiSSet& y, SearchOptions opts = {});
std::optional<BiMap> is_isomorphic(const TruncBiSSet& x, const TruncBiSSet& y, SearchOptions opts = {});

// --- constant and transposed spaces ---

/// Every slice is K.
TruncBiSSet const_space(const TruncSSet& k);
/// Slice m is the discrete set K_m.
TruncBiSSet transpose(const TruncSSet& k);
BiMap const_map(const SSetMap& f);
BiMap transpose_map(const SSetMap& f);
/// K^t_0: the constant space on the discrete vertex set of K, with its inclusion into K^t.
BiMap transpose_vertices(const TruncSSet& k);

// --- Segal maps ---

/// k-fold fiber product of W_1 over W_0, n-simplices are tuples (a_1..a_k)
/// with hd_0 a_i = hd_1 a_{i+1}.
TruncSSet segal_fiber_product(const TruncBiSSet& w, int k);
/// W_k -> fiber product through the spine edges.
SSetMap segal_map(const TruncBiSSet& w, int k);

struct SegalReport {
  int k = 0;
  bool isomorphism = false;
  bool pi0_bijective = false;
  bool homology_agrees = false;  // in reliable degrees
  std::vector<std::string> notes;
};

SegalReport segal_check(const TruncBiSSet& w, int k);

// --- mapping spaces and completeness ---

struct MappingSpace {
  TruncSSet space;
  /// points[m][e]: element e of level m as a map X x const Delta[m] -> Y
  std::vector<std::vector<PresheafMap>> points;
};

/// Map(X, Y)_m = hom(X x const Delta[m], Y).
MappingSpace mapping_space(const TruncBiSSet& x, const TruncBiSSet& y, SearchOptions opts = {});

struct CompletenessEvidence {
  std::string label = "EVIDENCE";
  TruncSSet level_zero;
  TruncSSet mapping_space;
  SSetMap comparison;  // W_0 -> Map(E^t, W)
  bool pi0_bijective = false;
  bool homology_agrees = false;
  bool isomorphism = false;
};

CompletenessEvidence completeness_evidence(const TruncBiSSet& w, SearchOptions opts = {});

// --- Segal precategories and reduction ---

bool is_segal_precategory(const TruncBiSSet& x);

class SegalPrecategory {
 public:
  /// Throws InvalidInput unless W_0 is discrete.
  explicit SegalPrecategory(TruncBiSSet x);
  const TruncBiSSet& space() const { return space_; }
  int trunc() const { return space_.trunc(); }
  std::size_t objects() const { return space_.size(0, 0); }
  bool operator==(const SegalPrecategory& o) const { return space_ == o.space_; }

 private:
  TruncBiSSet space_;
};

struct Reduction {
  SegalPrecategory object;
  BiMap unit;  // X -> X_r
};

/// Collapses each component of the space W_0 to a point.
Reduction reduce(const TruncBiSSet& x);

/// Maps out of a Segal precategory into it by the universal property: the
/// unique g : X_r -> Y with g o unit = f.
BiMap reduce_extend(const Reduction& r, const BiMap& f);

// --- generating cofibrations ---

/// dDelta[m] x Delta[n]^t  u  Delta[m] x dDelta[n]^t  ->  Delta[m] x Delta[n]^t.
BiMap reedy_generator(int m, int n, int trunc);
/// dDelta[m] x Delta[n]^t -> Delta[m] x Delta[n]^t.
BiMap projective_generator(int m, int n, int trunc);

struct PQGenerator {
  BiMap i;      // P_{m,n} -> Q_{m,n}
  BiMap to_p;   // dDelta[m] x Delta[n]^t -> P_{m,n}
  BiMap to_q;   // Delta[m] x Delta[n]^t -> Q_{m,n}
};

SegalPrecategory build_P(int m, int n, int trunc);
SegalPrecategory build_Q(int m, int n, int trunc);
BiMap i_mn(int m, int n, int trunc);
PQGenerator pq_generator(int m, int n, int trunc);

// --- comparison functors ---

/// Level m is (X_m)_0.
TruncSSet p_star(const TruncBiSSet& w);
TruncSSet j_star(const SegalPrecategory& x);
/// Level n is X_{n,n}.
TruncSSet diagonal(const TruncBiSSet& x);
/// Artin-Mazur codiagonal.
TruncSSet total(const TruncBiSSet& x);

// --- tensor and cotensor ---

/// (X x const K)_r.
SegalPrecategory tensor(const SegalPrecategory& x, const TruncSSet& k);
/// (Y^K)_{m,n} = hom(K x Delta[n], Y_m).
SegalPrecategory cotensor(const SegalPrecategory& y, const TruncSSet& k, SearchOptions opts = {});

// --- mapping spaces of precategories ---

/// Fiber of (hd_1, hd_0) : X_1 -> X_0 x X_0 over the objects (x, y).
TruncSSet precat_mapping_space(const SegalPrecategory& x, Index source, Index target);

/// Objects X_{0,0}; morphisms pi0 of the mapping spaces listed by (source, target).
FiniteCategory ho_category(const SegalPrecategory& x);

}  // namespace eqcat
