#include "eqcat/homology.hpp"

#include <algorithm>
#include <sstream>

#include "eqcat/error.hpp"

namespace eqcat {

std::string HomologyGroup::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (betti > 0) {
    out << "Z";
    if (betti > 1) out << "^" << betti;
    first = false;
  }
  for (const auto& t : torsion) {
    out << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init)
    : rows(init.size()), cols(init.size() ? init.begin()->size() : 0) {
  for (const auto& row : init) {
    if (row.size() != cols) throw InvalidInput("matrix rows differ in length");
    for (long v : row) data.emplace_back(v);
  }
}

std::vector<BigInt> invariant_factors(IntMatrix a) {
  const std::size_t rows = a.rows;
  const std::size_t cols = a.cols;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols; ++k) std::swap(a.at(i, k), a.at(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows; ++k) std::swap(a.at(k, i), a.at(k, j));
  };
  std::vector<BigInt> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a.at(i, j) != 0 && (pr == rows || abs(a.at(i, j)) < abs(a.at(pr, pc)))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) return out;
      swap_rows(t, pr);
      swap_cols(t, pc);
      const BigInt pivot = a.at(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a.at(i, t) == 0) continue;
        const BigInt q = a.at(i, t) / pivot;
        for (std::size_t j = t; j < cols; ++j) a.at(i, j) -= q * a.at(t, j);
        if (a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a.at(t, j) == 0) continue;
        const BigInt q = a.at(t, j) / pivot;
        for (std::size_t i = t; i < rows; ++i) a.at(i, j) -= q * a.at(i, t);
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a.at(i, j) % pivot != 0) {
            for (std::size_t k = t; k < cols; ++k) a.at(t, k) += a.at(i, k);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    out.push_back(abs(a.at(t, t)));
  }
  return out;
}

std::vector<Index> chain_basis(const TruncSSet& x, int n, bool normalized) {
  std::vector<Index> out;
  if (n < 0 || n > x.trunc()) return out;
  for (Index s = 0; s < x.size(n); ++s) {
    if (!normalized || !x.is_degenerate(n, s)) out.push_back(s);
  }
  return out;
}

namespace {

std::vector<Index> position_of(const TruncSSet& x, int n, const std::vector<Index>& basis) {
  std::vector<Index> pos(n >= 0 && n <= x.trunc() ? x.size(n) : 0, kNone);
  for (Index i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
  return pos;
}

}  // namespace

IntMatrix boundary_matrix(const TruncSSet& x, int n, bool normalized) {
  const auto cols = chain_basis(x, n, normalized);
  const auto rows = chain_basis(x, n - 1, normalized);
  IntMatrix m(rows.size(), cols.size());
  if (n < 1) return m;
  const auto pos = position_of(x, n - 1, rows);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int i = 0; i <= n; ++i) {
      const Index r = pos[x.face(n, i, cols[c])];
      if (r != kNone) m.at(r, c) += (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

IntMatrix chain_map_matrix(const SSetMap& f, int n, bool normalized) {
  const auto cols = chain_basis(f.source, n, normalized);
  const auto rows = chain_basis(f.target, n, normalized);
  IntMatrix m(rows.size(), cols.size());
  const auto pos = position_of(f.target, n, rows);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Index r = pos[f.components[n][cols[c]]];
    if (r != kNone) m.at(r, c) += 1;
  }
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw InvalidInput("multiply: dimension mismatch");
  IntMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return out;
}

HomologyResult homology(const TruncSSet& x, int up_to, bool normalized) {
  if (up_to < 0 || up_to > x.trunc()) throw InvalidInput("homology: degree out of range");
  std::vector<std::size_t> dims;
  std::vector<std::vector<BigInt>> factors;  // factors[n]: of the boundary out of degree n
  for (int n = 0; n <= std::min(up_to + 1, x.trunc()); ++n) {
    dims.push_back(chain_basis(x, n, normalized).size());
    factors.push_back(n == 0 ? std::vector<BigInt>{} : invariant_factors(boundary_matrix(x, n, normalized)));
  }
  HomologyResult out;
  for (int n = 0; n <= up_to; ++n) {
    HomologyGroup g;
    g.degree = n;
    g.reliable = n < x.trunc();
    const std::size_t rank_out = factors[n].size();
    const std::size_t rank_in = (n + 1 <= x.trunc()) ? factors[n + 1].size() : 0;
    g.betti = dims[n] - rank_out - rank_in;
    if (n + 1 <= x.trunc()) {
      for (const auto& d : factors[n + 1]) {
        if (d > 1) g.torsion.push_back(d);
      }
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace eqcat
