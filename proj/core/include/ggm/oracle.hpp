#pragma once

// Independent verification layer. Solves the constant boundary-law
// recursion directly as a fixed-point problem in the period-q pattern,
// by multistart damped Newton, without any of the case reductions used
// by the branch solvers. Depends on the model layer only.

#include <array>
#include <optional>
#include <vector>

#include "ggm/model.hpp"

namespace ggm::oracle {

struct Report {
  int q = 0;
  double theta = 0.0;
  std::vector<PeriodicLaw> solutions;  // deduplicated, sorted
  int starts = 0;
  int converged = 0;
  int discarded = 0;  // non-convergent or escaped iterates
  double max_residual = 0.0;
  std::optional<bool> agreement;  // filled by compare()
};

/// Solve the period-q pattern system from a deterministic log-uniform
/// start lattice. Patterns follow the periodic ansatz: q=2 leaves both
/// classes free, q=3 pins class 0 to 1, q=4 pins classes 0 and 2 to 1.
Report solve(int q, const ModelParams& params);

/// Same, with explicit starts (both pattern coordinates per start).
Report solve(int q, const ModelParams& params,
             const std::vector<std::array<double, 2>>& starts);

/// Match the report's solution set against an expected law set: equal
/// cardinality and a perfect pairing at componentwise relative tolerance.
/// Fills and returns report.agreement.
bool compare(Report& report, const std::vector<PeriodicLaw>& expected,
             double rel_tol = 1e-8);

struct SweepPoint {
  Report report;
  /// Track id per solution: solutions matched nearest-neighbor to the
  /// previous grid point's tracks; new branches get fresh ids.
  std::vector<int> track_ids;
};

/// One report per grid activity with branch-continuity tracking.
std::vector<SweepPoint> sweep(int q, int k, const std::vector<double>& theta_grid);

}  // namespace ggm::oracle
