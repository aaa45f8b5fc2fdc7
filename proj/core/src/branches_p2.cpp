#include <algorithm>
#include <cmath>

#include "branches_common.hpp"
#include "ggm/branches.hpp"

namespace ggm::branches {

namespace detail {

bool near(double a, double b, double window) { return std::fabs(a - b) <= window; }

roots::RootSet solve_x_eq_1_equation(const ModelParams& params) {
  const double theta = params.theta;
  const int k = params.k;
  // y (theta + 2y)^k - (theta y + 2)^k, ascending coefficients.
  const roots::Polynomial lhs =
      roots::shift_up(roots::pow(roots::Polynomial({theta, 2.0}), k), 1);
  const roots::Polynomial rhs = roots::pow(roots::Polynomial({2.0, theta}), k);
  return roots::positive_roots(roots::sub(lhs, rhs));
}

SolutionBranch make_branch(int q, CaseTag tag, double x, double y,
                           const ModelParams& params) {
  PeriodicLaw law = assemble_law(q, x, y);
  const double residual = boundary_law_residual(law, params);
  double mag = 0.0;
  for (double v : law.values) mag = std::fmax(mag, v);
  if (residual > kResidualGate + 1e-14 * mag)
    throw internal_error("solution branch fails the residual gate");
  return SolutionBranch{q, tag, x, y, std::move(law), params.theta, residual};
}

}  // namespace detail

using detail::near;

PeriodicLaw assemble_law(int q, double x, double y) {
  switch (q) {
    case 2:
      return PeriodicLaw(2, {x, y});
    case 3:
      return PeriodicLaw(3, {1.0, x, y});
    case 4:
      return PeriodicLaw(4, {1.0, x, 1.0, y});
    default:
      throw domain_error("assemble_law: q must be 2, 3 or 4");
  }
}

std::vector<SolutionBranch> p2_solve_x_eq_1(const ModelParams& params) {
  const roots::RootSet rs = detail::solve_x_eq_1_equation(params);
  std::vector<SolutionBranch> out;
  for (const roots::Root& r : rs.roots) {
    const bool trivial = std::fabs(r.value - 1.0) <= 1e-9;
    out.push_back(detail::make_branch(2, trivial ? CaseTag::Trivial : CaseTag::XEq1, 1.0,
                                      trivial ? 1.0 : r.value, params));
  }
  std::sort(out.begin(), out.end(),
            [](const SolutionBranch& a, const SolutionBranch& b) { return a.y < b.y; });
  return out;
}

std::optional<SolutionBranch> p2_solve_diagonal(const ModelParams& params) {
  const CriticalConstants cc = critical_constants(params.k);
  if (near(params.theta, cc.theta_0)) return std::nullopt;
  // 2 s^(k-1) - theta (s^(k-2) + ... + 1): one sign change, one positive root.
  std::vector<double> c(static_cast<size_t>(params.k - 1), -params.theta);
  c.push_back(2.0);
  const roots::RootSet rs = roots::positive_roots(roots::Polynomial(std::move(c)));
  if (rs.roots.size() != 1)
    throw internal_error("p2_solve_diagonal: expected exactly one root");
  const double s = rs.roots[0].value;
  if (std::fabs(s - 1.0) <= 1e-9) return std::nullopt;  // theta_0 degeneracy
  const double x1 = std::pow(s, params.k);
  return detail::make_branch(2, CaseTag::Diagonal, x1, x1, params);
}

std::vector<SolutionBranch> p2_solve_offdiagonal(const ModelParams& params) {
  const int k = params.k;
  const double theta = params.theta;
  // 2 tau^k + (2-theta)(tau^(k-1) + ... + tau) + 2.
  std::vector<double> c(static_cast<size_t>(k + 1), 2.0 - theta);
  c.front() = 2.0;
  c.back() = 2.0;
  const roots::RootSet rs = roots::positive_roots(roots::Polynomial(std::move(c)));
  std::vector<double> taus;
  for (const roots::Root& r : rs.roots)
    if (std::fabs(r.value - 1.0) > 1e-8) taus.push_back(r.value);  // tau=1 collapses
  if (taus.size() < 2) return {};
  std::sort(taus.begin(), taus.end());
  const double tau1 = taus.front(), tau2 = taus.back();

  auto offdiag_branch = [&](double tau_ratio, CaseTag tag) {
    // 2 r h^(k-1) - theta (h^(k-2) + ... + 1) with r = tau^k of the partner.
    std::vector<double> hc(static_cast<size_t>(k - 1), -theta);
    hc.push_back(2.0 * std::pow(tau_ratio, k));
    const roots::RootSet hs = roots::positive_roots(roots::Polynomial(std::move(hc)));
    if (hs.roots.size() != 1)
      throw internal_error("p2_solve_offdiagonal: expected exactly one h root");
    const double h = hs.roots[0].value;
    const double x = std::pow(h, k);
    return detail::make_branch(2, tag, x, std::pow(tau_ratio, k) * x, params);
  };

  return {offdiag_branch(tau2, CaseTag::OffdiagTau1),
          offdiag_branch(tau1, CaseTag::OffdiagTau2)};
}

std::vector<SolutionBranch> p2_census(const ModelParams& params) {
  std::vector<SolutionBranch> out = p2_solve_x_eq_1(params);
  if (auto d = p2_solve_diagonal(params)) out.push_back(std::move(*d));
  for (SolutionBranch& b : p2_solve_offdiagonal(params)) out.push_back(std::move(b));
  return out;
}

int p2_count(const ModelParams& params) {
  const CriticalConstants cc = critical_constants(params.k);
  // Exact-threshold counts come from the classification, not from root counting:
  // double roots make the census unstable precisely at criticality.
  if (near(params.theta, cc.theta_0)) return 1;
  if (near(params.theta, cc.theta_c)) return 2;
  if (cc.theta_c3 && near(params.theta, *cc.theta_c3)) return 6;
  return distinct_up_to_rotation(p2_census(params));
}

}  // namespace ggm::branches
