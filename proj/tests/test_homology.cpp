#include "doctest.h"

#include <random>

#include "eqcat/homology.hpp"
#include "oracles.hpp"

using namespace eqcat;

namespace {

std::vector<std::vector<long double>> to_float(const IntMatrix& m) {
  std::vector<std::vector<long double>> out(m.rows, std::vector<long double>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = static_cast<long double>(m.at(i, j));
  }
  return out;
}

TruncSSet circle(std::size_t vertices, int trunc) {
  // a cycle of edges glued from a path of simplices
  std::vector<std::pair<Index, Index>> edges;
  std::vector<TruncSSet> parts;
  auto edge = standard_simplex(1, trunc);
  for (std::size_t i = 0; i < vertices; ++i) parts.push_back(edge);
  auto sum = coproduct(parts);
  std::vector<std::vector<std::pair<Index, Index>>> pairs(trunc + 1);
  for (std::size_t i = 0; i < vertices; ++i) {
    const std::size_t next = (i + 1) % vertices;
    pairs[0].push_back({sum.legs[i][0][1], sum.legs[next][0][0]});
  }
  return TruncSSet(quotient(sum.object.presheaf(), pairs).object);
}

}  // namespace

TEST_CASE("Smith normal form of small matrices") {
  IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  CHECK(invariant_factors(a) == std::vector<BigInt>{2, 6, 12});
  IntMatrix b(2, 2);
  CHECK(invariant_factors(b).empty());
  IntMatrix c{{3}};
  CHECK(invariant_factors(c) == std::vector<BigInt>{3});
}

TEST_CASE("simplex is acyclic") {
  auto h = homology(standard_simplex(3, 4), 3);
  CHECK(h.groups[0].to_string() == "Z");
  for (int n = 1; n <= 3; ++n) CHECK(h.groups[n].to_string() == "0");
}

TEST_CASE("boundary of a simplex is a sphere") {
  for (int n = 2; n <= 4; ++n) {
    auto h = homology(boundary(n, n), n - 1);
    for (int k = 0; k < n; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(h.groups[k].reliable);
      CHECK(h.groups[k].to_string() == ((k == 0 || k == n - 1) ? "Z" : "0"));
    }
  }
}

TEST_CASE("nerve of Z/3 has H_1 = Z/3 and the top degree is flagged") {
  auto h = homology(nerve(oracle::cyclic_group_category(3), 4), 4);
  CHECK(h.groups[1].to_string() == "Z/3");
  CHECK(h.groups[2].to_string() == "0");
  CHECK(h.groups[3].to_string() == "Z/3");
  CHECK_FALSE(h.groups[4].reliable);
}

TEST_CASE("circles of different sizes share homology but are not isomorphic") {
  auto c3 = circle(3, 2);
  auto c4 = circle(4, 2);
  CHECK(homology(c3, 1).groups[1].to_string() == "Z");
  CHECK(homology(c4, 1).groups[1].to_string() == "Z");
  CHECK(pi0(c4).count == 1);
  CHECK_FALSE(is_isomorphic(c3, c4).has_value());
}

TEST_CASE("circle as an edge with its ends identified") {
  auto d1 = standard_simplex(1, 2);
  auto b1 = boundary(1, 2);
  auto pt = standard_simplex(0, 2);
  auto incl = boundary_inclusion(1, 2);
  SSetMap crush{b1, pt, {std::vector<Index>(b1.size(0), 0), std::vector<Index>(b1.size(1), 0),
                         std::vector<Index>(b1.size(2), 0)}};
  auto s1 = pushout(incl, crush).object;
  auto h = homology(s1, 1);
  CHECK(h.groups[0].to_string() == "Z");
  CHECK(h.groups[1].to_string() == "Z");
  CHECK(pi0(s1).count == 1);
}

TEST_CASE("Betti numbers agree with rational rank oracle") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = oracle::random_subcomplex(rng, 3, 3);
    auto h = homology(x, 2);
    for (int n = 0; n <= 2; ++n) {
      const std::size_t dim = chain_basis(x, n, true).size();
      const std::size_t r_out = n ? oracle::rational_rank(to_float(boundary_matrix(x, n, true))) : 0;
      const std::size_t r_in = oracle::rational_rank(to_float(boundary_matrix(x, n + 1, true)));
      CHECK(h.groups[n].betti == dim - r_out - r_in);
    }
  }
}

TEST_CASE("normalized and unnormalized complexes agree") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    TruncSSet x = (trial % 2) ? oracle::random_subcomplex(rng, 2, 3) : nerve(oracle::random_category(rng), 3);
    auto a = homology(x, 2, true);
    auto b = homology(x, 2, false);
    for (int n = 0; n <= 2; ++n) CHECK(a.groups[n] == b.groups[n]);
  }
}

TEST_CASE("chain maps commute with boundaries") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = nerve(oracle::random_category(rng), 3);
    auto maps = hom_set(standard_simplex(2, 3), x);
    if (maps.empty()) continue;
    SSetMap f{standard_simplex(2, 3), x, maps[rng() % maps.size()]};
    for (bool normalized : {true, false}) {
      for (int n = 1; n <= 3; ++n) {
        auto lhs = multiply(boundary_matrix(x, n, normalized), chain_map_matrix(f, n, normalized));
        auto rhs = multiply(chain_map_matrix(f, n - 1, normalized), boundary_matrix(f.source, n, normalized));
        INFO("n=" << n << " normalized=" << normalized);
        CHECK(lhs == rhs);
      }
    }
  }
}
