#pragma once

// Finite presheaves on a truncated indexing category presented by generating
// operators and relations. Truncated simplicial and bisimplicial sets are the
// two shapes in use; all (co)limits, hom enumeration and isomorphism search
// are written once here against the generic presentation.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqcat/structure.hpp"

namespace eqcat {

enum class ShapeKind { Simplicial, Bisimplicial };

class Shape {
 public:
  struct Op {
    std::size_t src = 0;  // object whose elements the operator acts on
    std::size_t dst = 0;
    bool raises = false;  // degeneracy-type operator (increases total degree)
  };
  // A relation says op path `lhs` equals op path `rhs` on elements of `object`.
  // Paths are applied first-to-last; an empty path is the identity.
  struct Relation {
    std::size_t object = 0;
    std::vector<std::size_t> lhs;
    std::vector<std::size_t> rhs;
  };

  static std::shared_ptr<const Shape> simplicial(int trunc);
  static std::shared_ptr<const Shape> bisimplicial(int trunc);

  ShapeKind kind() const { return kind_; }
  int trunc() const { return trunc_; }
  std::size_t object_count() const { return degree_.size(); }
  int degree(std::size_t object) const { return degree_[object]; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::vector<Relation>& relations() const { return relations_; }

  // Simplicial shape: object n is level n.
  std::size_t face_op(int n, int i) const;   // d_i : X_n -> X_{n-1}
  std::size_t degen_op(int n, int i) const;  // s_i : X_n -> X_{n+1}

  // Bisimplicial shape: object (m, n); m horizontal, n vertical.
  std::size_t cell(int m, int n) const { return static_cast<std::size_t>(m) * (trunc_ + 1) + n; }
  int row(std::size_t object) const { return static_cast<int>(object) / (trunc_ + 1); }
  int col(std::size_t object) const { return static_cast<int>(object) % (trunc_ + 1); }
  std::size_t hface_op(int m, int n, int i) const;
  std::size_t vface_op(int m, int n, int i) const;
  std::size_t hdegen_op(int m, int n, int i) const;
  std::size_t vdegen_op(int m, int n, int i) const;

  bool same_as(const Shape& other) const { return kind_ == other.kind_ && trunc_ == other.trunc_; }

 private:
  Shape(ShapeKind kind, int trunc) : kind_(kind), trunc_(trunc) {}
  void build_simplicial();
  void build_bisimplicial();
  std::size_t lookup(const std::vector<std::size_t>& table, std::size_t key) const;

  ShapeKind kind_;
  int trunc_;
  std::vector<int> degree_;
  std::vector<Op> ops_;
  std::vector<Relation> relations_;
  // Dense lookup tables from operator coordinates to op index.
  std::vector<std::size_t> face_, degen_, hface_, vface_, hdegen_, vdegen_;
};

using ShapePtr = std::shared_ptr<const Shape>;

/// Components of a natural transformation, one index table per shape object.
using PresheafMap = std::vector<std::vector<Index>>;

class Presheaf {
 public:
  Presheaf() = default;
  /// Empty presheaf of the given shape.
  explicit Presheaf(ShapePtr shape);
  Presheaf(ShapePtr shape, std::vector<std::size_t> sizes, std::vector<std::vector<Index>> tables);

  const Shape& shape() const { return *shape_; }
  const ShapePtr& shape_ptr() const { return shape_; }
  std::size_t size(std::size_t object) const { return sizes_[object]; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  Index apply(std::size_t op, Index x) const { return tables_[op][x]; }
  const std::vector<Index>& table(std::size_t op) const { return tables_[op]; }
  const std::vector<std::vector<Index>>& tables() const { return tables_; }
  std::size_t total_size() const;

  /// Throws InvalidInput if tables are out of range or a relation fails.
  void validate() const;
  /// Elements not in the image of any degeneracy-type operator.
  std::vector<std::vector<char>> nondegenerate_mask() const;

  FinStructure structure() const;

  bool operator==(const Presheaf& other) const;

 private:
  ShapePtr shape_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Index>> tables_;
};

void require_same_shape(const Presheaf& a, const Presheaf& b, const char* what);

// --- maps ---

PresheafMap identity_map(const Presheaf& x);
PresheafMap compose(const PresheafMap& second, const PresheafMap& first);
bool is_valid_map(const Presheaf& src, const Presheaf& dst, const PresheafMap& f);
bool is_injective(const PresheafMap& f);
bool is_bijective(const Presheaf& src, const Presheaf& dst, const PresheafMap& f);
/// Inverse of a bijective map.
PresheafMap invert(const Presheaf& dst, const PresheafMap& f);
bool maps_equal(const PresheafMap& f, const PresheafMap& g);

// --- hom-sets ---

struct SearchOptions {
  std::size_t budget = 50'000'000;
};

std::vector<PresheafMap> hom_set(const Presheaf& x, const Presheaf& y, SearchOptions opts = {});
std::size_t count_homs(const Presheaf& x, const Presheaf& y, SearchOptions opts = {});
/// A levelwise bijective natural transformation, if one exists.
std::optional<PresheafMap> find_isomorphism(const Presheaf& x, const Presheaf& y, SearchOptions opts = {});

// --- limits and colimits (levelwise) ---

struct Cocone {
  Presheaf object;
  std::vector<PresheafMap> legs;  // one per input object
};

struct Cone {
  Presheaf object;
  std::vector<PresheafMap> legs;
};

Presheaf initial(ShapePtr shape);
Presheaf terminal(ShapePtr shape);
Cocone coproduct(const std::vector<Presheaf>& parts);
Cone product(const Presheaf& a, const Presheaf& b);
/// f x g into the product whose second factor has the given sizes.
PresheafMap product_map(const PresheafMap& f, const PresheafMap& g, const std::vector<std::size_t>& second_sizes);

/// Pushout of b <-f- a -g-> c. legs[0]: b -> P, legs[1]: c -> P.
Cocone pushout(const Presheaf& a, const Presheaf& b, const Presheaf& c, const PresheafMap& f,
               const PresheafMap& g);
/// Coequalizer of f, g : a -> b. legs[0]: b -> Q.
Cocone coequalizer(const Presheaf& a, const Presheaf& b, const PresheafMap& f, const PresheafMap& g);
/// Pullback of b -f-> d <-g- c. legs[0]: P -> b, legs[1]: P -> c.
Cone pullback(const Presheaf& b, const Presheaf& c, const Presheaf& d, const PresheafMap& f,
              const PresheafMap& g);
/// Equalizer of f, g : a -> b. legs[0]: E -> a.
Cone equalizer(const Presheaf& a, const Presheaf& b, const PresheafMap& f, const PresheafMap& g);
/// Colimit of a finite chain X_0 -> X_1 -> ... ; legs[i]: X_i -> colim.
Cocone chain_colimit(const std::vector<Presheaf>& objects, const std::vector<PresheafMap>& maps);

/// Quotient by the congruence generated by the given identified pairs, per object.
Cocone quotient(const Presheaf& x, const std::vector<std::vector<std::pair<Index, Index>>>& pairs);
/// Subpresheaf on the kept elements (must be closed under all operators).
/// legs[0] of the result is the inclusion.
Cone subpresheaf(const Presheaf& x, const std::vector<std::vector<char>>& keep);
/// Map out of a cocone vertex induced by maps out of each input that agree on the diagram.
PresheafMap induced_from_cocone(const Cocone& cocone, const std::vector<PresheafMap>& maps,
                                const Presheaf& target);

}  // namespace eqcat
