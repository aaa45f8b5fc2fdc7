#include <algorithm>
#include <cmath>

#include "branches_common.hpp"
#include "ggm/branches.hpp"

namespace ggm::branches {

namespace {

using detail::near;

/// Vieta pair of x^2 - phi x + 4/theta^2 = 0, largest root first.
/// Returns nothing when the discriminant is non-positive (double roots
/// have x = y and are excluded from the asymmetric census).
std::optional<std::pair<double, double>> vieta_pair(double phi, double theta) {
  if (!(phi > 0.0)) return std::nullopt;
  const double prod = 4.0 / (theta * theta);
  const double disc = phi * phi - 4.0 * prod;
  if (disc <= 0.0) return std::nullopt;
  const double xhi = 0.5 * (phi + std::sqrt(disc));
  return std::make_pair(xhi, prod / xhi);
}

}  // namespace

std::vector<SolutionBranch> p4_solve_symmetric(const ModelParams& params) {
  const roots::RootSet rs = detail::solve_x_eq_1_equation(params);
  std::vector<SolutionBranch> out;
  for (const roots::Root& r : rs.roots) {
    const bool trivial = std::fabs(r.value - 1.0) <= 1e-9;
    const double x = trivial ? 1.0 : r.value;
    out.push_back(
        detail::make_branch(4, trivial ? CaseTag::Trivial : CaseTag::Diagonal, x, x, params));
  }
  std::sort(out.begin(), out.end(),
            [](const SolutionBranch& a, const SolutionBranch& b) { return a.y < b.y; });
  return out;
}

std::vector<SolutionBranch> p4_solve_asymmetric(const ModelParams& params) {
  if (params.k != 2)
    throw domain_error("p4_solve_asymmetric: closed forms exist for k = 2 only");
  const double theta = params.theta;
  const CriticalConstants cc = critical_constants(2);

  const double disc = theta * (theta * theta * theta - 4.0 * theta * theta + 16.0);
  const double sqrt_disc = std::sqrt(disc);
  const double phi1 = 0.5 * (theta * theta - 2.0 * theta + sqrt_disc);
  const double phi2 = 0.5 * (theta * theta - 2.0 * theta - sqrt_disc);

  std::vector<SolutionBranch> out;
  if (theta > 2.0 && !near(theta, 2.0)) {
    if (const auto pr = vieta_pair(phi1, theta)) {
      out.push_back(detail::make_branch(4, CaseTag::AsymPhi1, pr->first, pr->second, params));
      out.push_back(detail::make_branch(4, CaseTag::AsymPhi1, pr->second, pr->first, params));
    }
  }
  if (!near(theta, *cc.theta_c3)) {
    if (const auto pr = vieta_pair(phi2, theta)) {
      out.push_back(detail::make_branch(4, CaseTag::AsymPhi2, pr->first, pr->second, params));
      out.push_back(detail::make_branch(4, CaseTag::AsymPhi2, pr->second, pr->first, params));
    }
  }
  return out;
}

std::vector<SolutionBranch> p4_census(const ModelParams& params) {
  std::vector<SolutionBranch> out = p4_solve_symmetric(params);
  if (params.k == 2)
    for (SolutionBranch& b : p4_solve_asymmetric(params)) out.push_back(std::move(b));
  return out;
}

int p4_count(const ModelParams& params, bool* nu4_is_lower_bound) {
  const CriticalConstants cc = critical_constants(params.k);
  if (params.k != 2) {
    // Only the symmetric case has closed forms: the count is a lower bound.
    if (nu4_is_lower_bound) *nu4_is_lower_bound = true;
    if (near(params.theta, cc.theta_c)) return 2;
    return distinct_up_to_rotation(p4_census(params));
  }
  if (nu4_is_lower_bound) *nu4_is_lower_bound = false;
  if (near(params.theta, 2.0)) return 2;
  if (near(params.theta, cc.theta_c)) return 3;
  if (near(params.theta, *cc.theta_c3)) return 5;
  return distinct_up_to_rotation(p4_census(params));
}

}  // namespace ggm::branches
