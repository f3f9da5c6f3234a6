#pragma once

// Integral simplicial homology through Smith normal form.

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <string>
#include <vector>

#include "eqcat/simpset.hpp"

namespace eqcat {

using BigInt = boost::multiprecision::cpp_int;
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> data;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);
  BigInt& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
};

struct HomologyGroup {
  int degree = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
  bool reliable = true;         // false at the truncation level: no boundaries from above
  std::string to_string() const;
  bool operator==(const HomologyGroup& o) const {
    return degree == o.degree && betti == o.betti && torsion == o.torsion && reliable == o.reliable;
  }
};

struct HomologyResult {
  std::vector<HomologyGroup> groups;  // degrees 0..up_to
};

/// Nonzero diagonal of the Smith normal form, each dividing the next.
std::vector<BigInt> invariant_factors(IntMatrix m);

/// Simplices spanning chains in degree n: nondegenerate ones when normalized.
std::vector<Index> chain_basis(const TruncSSet& x, int n, bool normalized);
/// Boundary C_n -> C_{n-1} (rows indexed by the degree n-1 basis).
IntMatrix boundary_matrix(const TruncSSet& x, int n, bool normalized);
/// Induced chain map in degree n (rows indexed by the target basis).
IntMatrix chain_map_matrix(const SSetMap& f, int n, bool normalized);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

HomologyResult homology(const TruncSSet& x, int up_to, bool normalized = true);

}  // namespace eqcat
