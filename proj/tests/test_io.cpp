#include "doctest.h"

#include <random>

#include "eqcat/error.hpp"
#include "eqcat/io.hpp"
#include "eqcat/suite.hpp"
#include "oracles.hpp"

using namespace eqcat;
using io::Json;

namespace {

/// encode -> text -> parse -> decode -> encode reproduces the text.
template <class T, class Decode>
void check_round_trip(const T& x, Decode decode) {
  const auto text = io::canonical(io::encode(x));
  const auto back = decode(io::parse(text));
  CHECK(io::canonical(io::encode(back)) == text);
}

}  // namespace

TEST_CASE("simplicial sets round-trip byte for byte") {
  std::mt19937 rng(61);
  check_round_trip(standard_simplex(2, 3), io::decode_sset);
  check_round_trip(horn(3, 1, 3), io::decode_sset);
  check_round_trip(TruncSSet::empty(2), io::decode_sset);
  for (int i = 0; i < 5; ++i) check_round_trip(oracle::random_subcomplex(rng, 3, 3), io::decode_sset);
  const auto back = io::decode_sset(io::encode(boundary(3, 3)));
  CHECK(back == boundary(3, 3));
}

TEST_CASE("bisimplicial sets, categories, groups and simplicial categories round-trip") {
  std::mt19937 rng(67);
  check_round_trip(transpose(standard_simplex(2, 2)), io::decode_bisset);
  check_round_trip(build_P(2, 1, 2).space(), io::decode_bisset);
  check_round_trip(const_space(boundary(2, 2)), io::decode_bisset);
  for (int i = 0; i < 5; ++i) check_round_trip(oracle::random_category(rng), io::decode_category);
  check_round_trip(FiniteGroup::symmetric(3), io::decode_group);
  check_round_trip(FiniteGroup::dihedral(4), io::decode_group);
  check_round_trip(UK(boundary(2, 2)), io::decode_scategory);
  check_round_trip(resolution(3, 2), io::decode_scategory);
  const auto z2 = FiniteGroup::cyclic(2);
  check_round_trip(tensor_orbit(z2, trivial_subgroup(z2), standard_simplex(1, 2)), io::decode_gobject);
}

TEST_CASE("group references") {
  CHECK(io::group_from_ref(Json("S3")).order() == 6);
  CHECK(io::group_from_ref(Json("Z/4")).order() == 4);
  CHECK(io::group_from_ref(Json("Z5")).order() == 5);
  CHECK(io::group_from_ref(Json("D4")).order() == 8);
  CHECK(io::group_from_ref(Json("trivial")).order() == 1);
  CHECK(io::group_from_ref(io::encode(FiniteGroup::cyclic(3))) == FiniteGroup::cyclic(3));
  CHECK_THROWS_AS(io::group_from_ref(Json("Q8x")), InvalidInput);
}

TEST_CASE("malformed input names the offending field") {
  auto j = io::encode(standard_simplex(1, 1));
  j["d"][1][0][0] = 7;
  try {
    io::decode_sset(j);
    FAIL("accepted an out-of-range face");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("d") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse("{\"kind\": "), InvalidInput);
  CHECK_THROWS_AS(io::decode_sset(io::encode(FiniteGroup::cyclic(2))), InvalidInput);
  auto m = io::encode(FiniteGroup::cyclic(3));
  m["mul"][1][1] = 1;  // not a group
  CHECK_THROWS_AS(io::decode_group(m), InvalidInput);
}

TEST_CASE("suite configuration") {
  const auto ok = parse_suite_config(io::parse(R"({"model": "sc", "group": "S3", "trunc": 3})"));
  CHECK(ok.family.size() == 6);
  CHECK(ok.budget == 6);
  const auto listed = parse_suite_config(io::parse(R"({"model": "qcat", "group": "Z/2", "family": [["e"], [0, 1]]})"));
  CHECK(listed.family.size() == 2);
  CHECK_THROWS_AS(
      parse_suite_config(io::parse(R"({"model": "qcat", "group": "Z/2", "family": [[0, 1]], "orbit_comparison": true})")),
      InvalidInput);
  CHECK_THROWS_AS(parse_suite_config(io::parse(R"({"model": "secat_c", "group": "Z/2", "trunc": 1})")), InvalidInput);
  CHECK_THROWS_AS(parse_suite_config(io::parse(R"({"model": "spaces", "group": "Z/2"})")), InvalidInput);
  CHECK_THROWS_AS(parse_suite_config(io::parse(R"({"model": "qcat", "group": "Z/2", "family": [[1]]})")),
                  InvalidInput);
}

TEST_CASE("check suites are deterministic and sorted") {
  auto cfg = parse_suite_config(io::parse(R"({"model": "qcat", "group": "Z/2", "trunc": 2, "orbit_comparison": true})"));
  const auto a = run_check_suite(cfg);
  const auto b = run_check_suite(cfg);
  CHECK(io::canonical(encode(a, cfg)) == io::canonical(encode(b, cfg)));
  CHECK(a.passes());
  for (std::size_t i = 1; i < a.cells.size(); ++i) CHECK(a.cells[i - 1].key <= a.cells[i].key);
}
