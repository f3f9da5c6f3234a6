#pragma once

// Check suites run by `eqcat check`: the cellularity conditions, orbit tensor
// adjunctions and orbit-diagram comparison for one model structure, over a
// family of subgroups.

#include <string>
#include <vector>

#include "eqcat/equivariant.hpp"
#include "eqcat/io.hpp"

namespace eqcat {

struct CheckSuiteConfig {
  std::string model;  // qcat | css | sc | secat_c | secat_f
  FiniteGroup group;
  std::vector<Subgroup> family;
  int trunc = 2;
  std::size_t budget = 6;  // attach budget for simplicial categories
  unsigned seed = 1;
  int seeds = 2;  // random instances per cell
  bool orbit_comparison = false;

  /// Throws InvalidInput on a bad model, N < 2 for Segal models, or a family
  /// without the trivial subgroup when orbit comparison is requested.
  void validate() const;
};

/// Fields: model, group, family ("all" or lists of element names or indices),
/// trunc, budget, seed, seeds, orbit_comparison.
CheckSuiteConfig parse_suite_config(const io::Json& j);
/// "all" or a list of subgroups, each a list of element names or indices.
std::vector<Subgroup> parse_family(const FiniteGroup& g, const io::Json& j);

struct SuiteCell {
  std::string key;
  CheckReport report;
};

struct SuiteResult {
  std::vector<SuiteCell> cells;  // sorted by key
  bool passes() const;
  const SuiteCell* first_failure() const;
};

SuiteResult run_check_suite(const CheckSuiteConfig& config);

io::Json encode(const SuiteResult& r, const CheckSuiteConfig& config);

}  // namespace eqcat
