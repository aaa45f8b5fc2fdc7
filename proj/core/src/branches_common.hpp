#pragma once

// Shared internals of the period-2/3/4 solvers.

#include <vector>

#include "ggm/branches.hpp"
#include "ggm/model.hpp"
#include "ggm/rootfind.hpp"

namespace ggm::branches::detail {

constexpr double kThresholdWindow = 1e-9;   // on-threshold rule window
constexpr double kDedupRelTol = 1e-8;       // branch deduplication
constexpr double kResidualGate = 1e-10;

/// Positive roots of the cleared form of y = ((theta y + 2)/(theta + 2y))^k,
/// i.e. y (theta + 2y)^k - (theta y + 2)^k. Always contains y = 1.
roots::RootSet solve_x_eq_1_equation(const ModelParams& params);

/// Build a branch, computing and gating its residual. The gate is absolute
/// at moderate magnitudes and scale-aware for large branch values (the
/// representation floor of doubles dominates there).
SolutionBranch make_branch(int q, CaseTag tag, double x, double y,
                           const ModelParams& params);

bool near(double a, double b, double window = kThresholdWindow);

}  // namespace ggm::branches::detail
