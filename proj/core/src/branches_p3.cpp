#include <algorithm>
#include <cmath>

#include "branches_common.hpp"
#include "ggm/branches.hpp"
#include "newton2.hpp"

namespace ggm::branches {

namespace {

using detail::near;
using ggm::detail::Mat2;
using ggm::detail::newton2;
using ggm::detail::Vec2;

/// Residual of the period-3 pattern system
///   x = ((1 + y + theta x)/(theta + x + y))^k
///   y = ((1 + x + theta y)/(theta + x + y))^k.
Vec2 p3_residual(const ModelParams& p, const Vec2& v) {
  const double x = v[0], y = v[1], t = p.theta;
  const double den = t + x + y;
  return {x - std::pow((1.0 + y + t * x) / den, p.k),
          y - std::pow((1.0 + x + t * y) / den, p.k)};
}

Mat2 p3_jacobian(const ModelParams& p, const Vec2& v) {
  const double x = v[0], y = v[1], t = p.theta, k = p.k;
  const double den = t + x + y;
  const double n1 = 1.0 + y + t * x;
  const double n2 = 1.0 + x + t * y;
  const double g1 = std::pow(n1 / den, p.k);
  const double g2 = std::pow(n2 / den, p.k);
  return {1.0 - k * g1 * (t / n1 - 1.0 / den), -k * g1 * (1.0 / n1 - 1.0 / den),
          -k * g2 * (1.0 / n2 - 1.0 / den), 1.0 - k * g2 * (t / n2 - 1.0 / den)};
}

std::vector<Vec2> p3_start_grid() {
  std::vector<Vec2> starts;
  const double lattice[] = {1e-2, 1e-1, 1.0, 10.0, 1e2};
  for (double a : lattice)
    for (double b : lattice) starts.push_back({a, b});
  for (int j = 0; j < 20; ++j) {
    const double v = 1e-2 * std::pow(1e4, j / 19.0);
    starts.push_back({v, v});
    starts.push_back({1.0, v});
    starts.push_back({v, 1.0});
  }
  return starts;
}

bool rel_close(const Vec2& a, const Vec2& b, double tol) {
  return std::fabs(a[0] - b[0]) <= tol * std::fmax(1.0, std::fabs(b[0])) &&
         std::fabs(a[1] - b[1]) <= tol * std::fmax(1.0, std::fabs(b[1]));
}

/// Cluster converged points: chain-merge at the deduplication tolerance,
/// then merge near-duplicates whose midpoint also solves the system (flat
/// valleys around degenerate roots at critical activities).
std::vector<Vec2> cluster(const ModelParams& params, std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::vector<Vec2>> groups;
  for (const Vec2& p : pts) {
    bool placed = false;
    for (auto& g : groups) {
      for (const Vec2& m : g)
        if (rel_close(p, m, detail::kDedupRelTol)) {
          placed = true;
          break;
        }
      if (placed) {
        g.push_back(p);
        break;
      }
    }
    if (!placed) groups.push_back({p});
  }
  std::vector<Vec2> reps;
  for (const auto& g : groups) {
    Vec2 best = g.front();
    double bn = ggm::detail::norm_inf(p3_residual(params, best));
    for (const Vec2& m : g) {
      const double n = ggm::detail::norm_inf(p3_residual(params, m));
      if (n < bn) {
        best = m;
        bn = n;
      }
    }
    reps.push_back(best);
  }
  auto F = [&](const Vec2& v) { return p3_residual(params, v); };
  for (Vec2& r : reps) r = ggm::detail::snap_representative(F, r);
  // Valley merge.
  std::vector<Vec2> out;
  for (const Vec2& r : reps) {
    bool merged = false;
    for (Vec2& o : out) {
      if (rel_close(r, o, 1e-5)) {
        const Vec2 mid{0.5 * (r[0] + o[0]), 0.5 * (r[1] + o[1])};
        if (ggm::detail::norm_inf(p3_residual(params, mid)) < 1e-11) {
          merged = true;
          break;
        }
      }
    }
    if (!merged) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CaseTag classify(const Vec2& v) {
  const double x = v[0], y = v[1];
  const double tol = 1e-7;
  const bool x1 = std::fabs(x - 1.0) <= tol;
  const bool y1 = std::fabs(y - 1.0) <= tol;
  if (x1 && y1) return CaseTag::Trivial;
  if (std::fabs(x - y) <= tol * std::fmax(1.0, std::fabs(x))) return CaseTag::Diagonal;
  if (x1) return CaseTag::XEq1;
  if (y1) return CaseTag::YEq1;
  return CaseTag::Diagonal;  // unreachable for the patterns of this system
}

int p3_raw_count(const ModelParams& params) {
  return static_cast<int>(p3_solve(params).size());
}

}  // namespace

std::vector<SolutionBranch> p3_solve(const ModelParams& params) {
  auto F = [&](const Vec2& v) { return p3_residual(params, v); };
  auto J = [&](const Vec2& v) { return p3_jacobian(params, v); };

  std::vector<Vec2> converged;
  for (const Vec2& s : p3_start_grid()) {
    const auto r = newton2(F, J, s);
    if (!r.converged) continue;
    if (r.x[0] <= 1e-12 || r.x[0] >= 1e12 || r.x[1] <= 1e-12 || r.x[1] >= 1e12) continue;
    converged.push_back(r.x);
  }
  if (converged.empty())
    throw numeric_error("p3_solve: enumeration incomplete, no start converged");

  std::vector<SolutionBranch> out;
  for (const Vec2& v : cluster(params, converged)) {
    const CaseTag tag = classify(v);
    const double x = tag == CaseTag::Trivial || tag == CaseTag::XEq1 ? 1.0 : v[0];
    const double y = tag == CaseTag::Trivial || tag == CaseTag::YEq1 ? 1.0 : v[1];
    out.push_back(detail::make_branch(3, tag, x, y, params));
  }
  std::sort(out.begin(), out.end(), [](const SolutionBranch& a, const SolutionBranch& b) {
    return a.tag != b.tag ? a.tag < b.tag : a.y < b.y;
  });
  return out;
}

ThetaC1 p3_find_theta_c1(int k) {
  const CriticalConstants cc = critical_constants(k);
  double lo = cc.theta_0 * (1.0 + 1e-6);
  double hi = 100.0;
  auto count_at = [&](double theta) { return p3_raw_count(ModelParams(k, theta)); };
  int clo = count_at(lo);
  int chi = count_at(hi);
  if (clo > 1 || chi <= 1)
    throw numeric_error("p3_find_theta_c1: no 1 -> >1 transition in (theta_0, 100)");
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const int cm = count_at(mid);
    if (cm <= 1) {
      lo = mid;
      clo = cm;
    } else {
      hi = mid;
      chi = cm;
    }
  }
  return ThetaC1{0.5 * (lo + hi), lo, hi, clo, chi};
}

int p3_count(const ModelParams& params) {
  const CriticalConstants cc = critical_constants(params.k);
  if (near(params.theta, cc.theta_cr)) return 3;
  // theta_c1 has no closed form. Queries at the exact threshold resolve
  // through the census itself: the newborn solution pairs coincide there
  // and cluster, giving the 4-solution census whose rotation count is 3.
  return distinct_up_to_rotation(p3_solve(params));
}

}  // namespace ggm::branches
