#pragma once

// Finite many-sorted algebras and an exhaustive homomorphism search over them.
//
// Every hom-set in the toolkit (maps of truncated presheaves, equivariant maps,
// simplicial functors, natural transformations of orbit diagrams) is phrased as
// a search for a sort-respecting function that commutes with a list of unary
// operations, total binary operations and constants.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace eqcat {

using Index = std::uint32_t;
inline constexpr Index kNone = std::numeric_limits<Index>::max();

struct FinStructure {
  struct Unary {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<Index> table;  // size == sort_sizes[src]
  };
  struct Binary {
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    std::size_t dst = 0;
    std::vector<Index> table;  // table[l * sort_sizes[rhs] + r]
  };
  struct Constant {
    std::size_t sort = 0;
    Index value = 0;
  };

  std::vector<std::size_t> sort_sizes;
  std::vector<Unary> unary;
  std::vector<Binary> binary;
  std::vector<Constant> constants;
  // Search order hint: lower rank is assigned first. Empty means sort order.
  std::vector<std::vector<int>> rank;

  std::size_t add_sort(std::size_t size) {
    sort_sizes.push_back(size);
    return sort_sizes.size() - 1;
  }
};

/// Per-sort assignment; assignment[s][e] is the image of element e of sort s.
using StructureMap = std::vector<std::vector<Index>>;

struct HomProblem {
  const FinStructure* source = nullptr;
  const FinStructure* target = nullptr;
  std::vector<std::size_t> sort_map;
  std::vector<std::size_t> unary_map;
  std::vector<std::size_t> binary_map;
  std::vector<std::size_t> constant_map;
  bool injective = false;
  // Node budget for the backtracking search; exceeding it throws BudgetExceeded.
  std::size_t budget = 50'000'000;
};

/// Problem where source and target share a signature op-for-op.
HomProblem same_signature(const FinStructure& source, const FinStructure& target);

/// Calls `visit` for every homomorphism; stop early by returning false.
/// Returns the number of homomorphisms visited.
std::size_t enumerate_homs(const HomProblem& problem,
                           const std::function<bool(const StructureMap&)>& visit);

std::vector<StructureMap> all_homs(const HomProblem& problem);
std::size_t count_homs(const HomProblem& problem);

/// Checks that `map` is a homomorphism for `problem` (no search).
bool is_hom(const HomProblem& problem, const StructureMap& map);

}  // namespace eqcat
