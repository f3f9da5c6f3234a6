#pragma once

// Finite groups by multiplication table, subgroups, coset G-sets and the
// orbit category.

#include <string>
#include <vector>

#include "eqcat/structure.hpp"

namespace eqcat {

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}
  /// mul[a][b] = a*b. Validates the group axioms.
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<Index>> mul, Index id);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  /// Symmetric group on n letters, elements as permutations in lexicographic order.
  static FiniteGroup symmetric(std::size_t n);
  static FiniteGroup dihedral(std::size_t n);  // order 2n

  std::size_t order() const { return mul_.size(); }
  Index mul(Index a, Index b) const { return mul_[a][b]; }
  Index id() const { return id_; }
  Index inv(Index a) const { return inv_[a]; }
  const std::string& name(Index a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<Index>>& table() const { return mul_; }
  bool operator==(const FiniteGroup& o) const { return mul_ == o.mul_ && id_ == o.id_ && names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Index>> mul_;
  std::vector<Index> inv_;
  Index id_ = 0;
};

/// Members are kept sorted.
struct Subgroup {
  std::vector<Index> members;
  std::size_t order() const { return members.size(); }
  bool contains(Index g) const;
  bool is_trivial() const { return members.size() == 1; }
  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool operator<(const Subgroup& o) const;  // by order, then members
};

/// Throws InvalidInput unless the members form a subgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<Index> members);
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Index>& generators);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Index by);
bool is_subgroup_of(const Subgroup& small, const Subgroup& big);

/// All subgroups in canonical order.
std::vector<Subgroup> subgroups(const FiniteGroup& g);

struct GSet {
  FiniteGroup group;
  std::size_t size = 0;
  std::vector<Index> action;  // action[g * size + x] = g.x
  Index act(Index g, Index x) const { return action[static_cast<std::size_t>(g) * size + x]; }
  void validate() const;
};

struct CosetSpace {
  GSet gset;
  Subgroup subgroup;
  std::vector<Index> representative;  // smallest element of each coset
  std::vector<Index> coset_of;        // per group element
};

/// Left cosets gH ordered by their smallest element; H itself is coset 0.
CosetSpace coset_gset(const FiniteGroup& g, const Subgroup& h);
std::vector<Index> fixed_points_gset(const GSet& x, const Subgroup& k);
bool is_equivariant(const GSet& a, const GSet& b, const std::vector<Index>& f);

/// Objects G/H for every subgroup H, in canonical subgroup order.
struct OrbitCategory {
  FiniteGroup group;
  std::vector<Subgroup> objects;
  std::vector<CosetSpace> orbits;
  // homs[h * objects + k]: equivariant maps G/H -> G/K as point maps
  std::vector<std::vector<std::vector<Index>>> homs;

  const std::vector<std::vector<Index>>& hom(std::size_t h, std::size_t k) const {
    return homs[h * objects.size() + k];
  }
  std::size_t object_of(const Subgroup& h) const;
  /// Index of second o first in hom(a, c), first in hom(a, b), second in hom(b, c).
  Index compose(std::size_t a, std::size_t b, std::size_t c, Index second, Index first) const;
  Index identity(std::size_t a) const;
  /// The map gH -> g u K (requires H <= u K u^-1); kNone if not well defined.
  Index map_for(std::size_t h, std::size_t k, Index u) const;
};

OrbitCategory orbit_category(const FiniteGroup& g);

struct SubgroupFamily {
  std::vector<Subgroup> members;
  bool contains_trivial() const;
};

SubgroupFamily all_subgroups_family(const FiniteGroup& g);

}  // namespace eqcat
