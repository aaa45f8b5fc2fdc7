#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ggm/model.hpp"

namespace ggm::branches {

/// Case label of a solution branch. The off-diagonal tags name the tau
/// sub-case the branch was derived from: OffdiagTau1 has second/first
/// coordinate ratio tau2^k > 1, OffdiagTau2 the reciprocal ratio.
enum class CaseTag {
  Trivial,
  XEq1,
  YEq1,
  Diagonal,
  OffdiagTau1,
  OffdiagTau2,
  AsymPhi1,
  AsymPhi2,
};

const char* to_string(CaseTag tag);

/// One labeled solution (x, y) of a period-q system, with the assembled
/// boundary law. Patterns: q=2 law (x, y); q=3 law (1, x, y);
/// q=4 law (1, x, 1, y).
struct SolutionBranch {
  int q;
  CaseTag tag;
  double x;
  double y;
  PeriodicLaw law;
  double theta;
  double residual;
};

/// Counts for one (k, theta): nu_q after cyclic-shift identification,
/// raw_q before it. nu4 is exact for k = 2 and a lower bound otherwise.
struct PhaseCount {
  double theta = 0.0;
  int nu2 = 0, nu3 = 0, nu4 = 0;
  int raw2 = 0, raw3 = 0, raw4 = 0;
  bool nu4_lower_bound = false;
};

/// Bisection certificate for the period-3 transition activity.
struct ThetaC1 {
  double theta_c1;
  double bracket_lo, bracket_hi;
  int count_lo, count_hi;  // raw solution counts at the bracket ends
};

PeriodicLaw assemble_law(int q, double x, double y);

// --- period 2 ---------------------------------------------------------

/// Solutions with first coordinate 1: always (1,1); two more for
/// theta > theta_c (roots of the cleared form of y = ((t y+2)/(t+2y))^k).
std::vector<SolutionBranch> p2_solve_x_eq_1(const ModelParams& params);

/// The unique diagonal branch (x1, x1), absent exactly at theta = theta_0.
std::optional<SolutionBranch> p2_solve_diagonal(const ModelParams& params);

/// The two off-diagonal branches for theta > theta_c; empty otherwise.
/// At theta = theta_c the tau root collapses to 1 and merges into the
/// diagonal branch.
std::vector<SolutionBranch> p2_solve_offdiagonal(const ModelParams& params);

std::vector<SolutionBranch> p2_census(const ModelParams& params);
int p2_count(const ModelParams& params);

// --- period 3 ---------------------------------------------------------

/// Multistart damped Newton on the period-3 system from a deterministic
/// start grid; converged points clustered at relative tolerance 1e-8.
/// Throws numeric_error if no start converges (the trivial solution is
/// always reachable, so this signals a numerical breakdown).
std::vector<SolutionBranch> p3_solve(const ModelParams& params);

/// Bisection (absolute accuracy 1e-6) of the activity where the period-3
/// solution count first exceeds 1, searched in (theta_0, 100).
ThetaC1 p3_find_theta_c1(int k);

int p3_count(const ModelParams& params);

// --- period 4 ---------------------------------------------------------

/// Symmetric (x, x) solutions embedded in the period-4 pattern (1,x,1,y);
/// the defining equation coincides with the period-2 x=1 case.
std::vector<SolutionBranch> p4_solve_symmetric(const ModelParams& params);

/// Asymmetric solutions from the two Vieta quadratics; k = 2 only
/// (throws domain_error otherwise). Double roots (x = y) are excluded.
std::vector<SolutionBranch> p4_solve_asymmetric(const ModelParams& params);

std::vector<SolutionBranch> p4_census(const ModelParams& params);
int p4_count(const ModelParams& params, bool* nu4_is_lower_bound = nullptr);

// --- census utilities --------------------------------------------------

std::vector<SolutionBranch> census(int q, const ModelParams& params);
int count(int q, const ModelParams& params);
PhaseCount phase_count(const ModelParams& params);

/// True iff the two law vectors agree up to a pure cyclic rotation
/// (componentwise relative tolerance). This is the identification under
/// which the q-counts are taken.
bool same_up_to_rotation(const PeriodicLaw& a, const PeriodicLaw& b,
                         double rel_tol = 1e-8);

/// Number of rotation-equivalence classes in a census.
int distinct_up_to_rotation(const std::vector<SolutionBranch>& branches,
                            double rel_tol = 1e-8);

/// Stable unique labels for a census: lowercase tag, with "_0"/"_1"
/// ordinals (ascending y) when a tag repeats.
std::vector<std::string> census_labels(const std::vector<SolutionBranch>& branches);

}  // namespace ggm::branches
