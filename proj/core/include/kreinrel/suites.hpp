#pragma once

#include "kreinrel/similarity.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kreinrel {

struct Failure {
  std::string check;
  Index trial = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> residuals;
  std::string detail;
  std::string objects;  // JSON document of the offending instance
};

struct CheckStats {
  std::string name;
  std::string threshold;  // human-readable pass condition
  bool informational = false;
  Index evaluations = 0;
  Index failures = 0;
  double max_residual = 0;
};

struct Report {
  std::string suite;
  Index trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckStats> checks;
  std::vector<Failure> failures;  // sorted by check, then trial
  double max_residual = 0;        // over non-informational checks

  // No failures in any non-informational check.
  bool passed() const;
  const CheckStats* find(const std::string& check) const;
};

// Residual thresholds shared by suites and acceptance tests.
struct SuiteThresholds {
  double identity = 1e-8;
  double green = 1e-10;
  double vos = 1e-9;
  double reconstruction = 1e-7;
  double w_offdiag = 1e-8;
  double witness_gap = 1e-3;
};

// Lemmas eqGH, O, sfN and P3 on random instances.
Report appendix_suite(Index trials, std::uint64_t seed);
// Extension roundtrips, the 𝒩-class audit, and resolvent-set checks on property (P) instances.
Report extensions_suite(Index trials, std::uint64_t seed);
// Generated triples: Green identity, Weyl symmetry, β-shift, resolvent and inverse identities.
Report boundary_suite(Index trials, std::uint64_t seed);
// (V0)s checks, Weyl equality by two routes, and planted similarity reconstruction.
Report similarity_suite(Index trials, std::uint64_t seed);

// "appendix", "extensions", "boundary", "similarity" or "all".
std::vector<Report> run_suites(const std::string& name, Index trials, std::uint64_t seed);

std::string report_json(const std::vector<Report>& reports, int indent = 2);
std::string report_text(const std::vector<Report>& reports);

// The four-dimensional example with J(c1, c2, c3, c4) = (c4, c3, c2, c1) and T = {((c, 0, 0, 0), (0, c, 0, 0))}.
BoundaryTriple c4_example_triple();

}  // namespace kreinrel
