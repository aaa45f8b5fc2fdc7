#include "ggm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "newton2.hpp"

namespace ggm::oracle {

namespace {

using ggm::detail::Mat2;
using ggm::detail::newton2;
using ggm::detail::norm_inf;
using ggm::detail::Vec2;

constexpr double kClusterTol = 1e-8;
constexpr double kCoordLo = 1e-12;
constexpr double kCoordHi = 1e12;

/// The two pattern coordinates embedded into the full q-vector.
std::vector<double> embed(int q, const Vec2& v) {
  switch (q) {
    case 2: return {v[0], v[1]};
    case 3: return {1.0, v[0], v[1]};
    case 4: return {1.0, v[0], 1.0, v[1]};
    default: throw domain_error("oracle: q must be 2, 3 or 4");
  }
}

/// Residual map of the recursion z_i = ((theta z_i + z_{i-1} + z_{i+1}) /
/// (theta + z_{q-1} + z_1))^k on the pattern coordinates. The pinned
/// classes of the q=3 and q=4 patterns satisfy their equations
/// identically, so two equations always remain.
Vec2 residual_map(int q, const ModelParams& p, const Vec2& v) {
  const double t = p.theta;
  const double k = p.k;
  switch (q) {
    case 2: {
      const double x = v[0], y = v[1];
      const double den = t + 2.0 * y;
      return {x - std::pow((t * x + 2.0 * y) / den, k),
              y - std::pow((t * y + 2.0 * x) / den, k)};
    }
    case 3: {
      const double x = v[0], y = v[1];
      const double den = t + y + x;
      return {x - std::pow((t * x + 1.0 + y) / den, k),
              y - std::pow((t * y + x + 1.0) / den, k)};
    }
    case 4: {
      const double x = v[0], y = v[1];
      const double den = t + y + x;
      return {x - std::pow((t * x + 2.0) / den, k),
              y - std::pow((t * y + 2.0) / den, k)};
    }
    default: throw domain_error("oracle: q must be 2, 3 or 4");
  }
}

Mat2 jacobian(int q, const ModelParams& p, const Vec2& v) {
  const double t = p.theta;
  const double k = p.k;
  const double x = v[0], y = v[1];
  auto entry = [&](double g, double dn, double n, double dd, double d) {
    // d/du of (n/d)^k with n' = dn, d' = dd, for precomputed g = (n/d)^k.
    return k * g * (dn / n - dd / d);
  };
  switch (q) {
    case 2: {
      const double d = t + 2.0 * y;
      const double n1 = t * x + 2.0 * y, n2 = t * y + 2.0 * x;
      const double g1 = std::pow(n1 / d, k), g2 = std::pow(n2 / d, k);
      return {1.0 - entry(g1, t, n1, 0.0, d), -entry(g1, 2.0, n1, 2.0, d),
              -entry(g2, 2.0, n2, 0.0, d), 1.0 - entry(g2, t, n2, 2.0, d)};
    }
    case 3: {
      const double d = t + x + y;
      const double n1 = t * x + 1.0 + y, n2 = t * y + 1.0 + x;
      const double g1 = std::pow(n1 / d, k), g2 = std::pow(n2 / d, k);
      return {1.0 - entry(g1, t, n1, 1.0, d), -entry(g1, 1.0, n1, 1.0, d),
              -entry(g2, 1.0, n2, 1.0, d), 1.0 - entry(g2, t, n2, 1.0, d)};
    }
    case 4: {
      const double d = t + x + y;
      const double n1 = t * x + 2.0, n2 = t * y + 2.0;
      const double g1 = std::pow(n1 / d, k), g2 = std::pow(n2 / d, k);
      return {1.0 - entry(g1, t, n1, 1.0, d), -entry(g1, 0.0, n1, 1.0, d),
              -entry(g2, 0.0, n2, 1.0, d), 1.0 - entry(g2, t, n2, 1.0, d)};
    }
    default: throw domain_error("oracle: q must be 2, 3 or 4");
  }
}

std::vector<std::array<double, 2>> default_lattice() {
  // 18x18 log-uniform lattice over [1e-4, 1e4]^2, plus the fixed point.
  std::vector<std::array<double, 2>> starts;
  constexpr int n = 18;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = 1e-4 * std::pow(1e8, i / static_cast<double>(n - 1));
      const double b = 1e-4 * std::pow(1e8, j / static_cast<double>(n - 1));
      starts.push_back({a, b});
    }
  starts.push_back({1.0, 1.0});
  return starts;
}

bool rel_close2(const Vec2& a, const Vec2& b, double tol) {
  return std::fabs(a[0] - b[0]) <= tol * std::fmax(1.0, std::fabs(b[0])) &&
         std::fabs(a[1] - b[1]) <= tol * std::fmax(1.0, std::fabs(b[1]));
}

}  // namespace

Report solve(int q, const ModelParams& params) {
  return solve(q, params, default_lattice());
}

Report solve(int q, const ModelParams& params,
             const std::vector<std::array<double, 2>>& starts) {
  auto F = [&](const Vec2& v) { return residual_map(q, params, v); };
  auto J = [&](const Vec2& v) { return jacobian(q, params, v); };

  Report rep;
  rep.q = q;
  rep.theta = params.theta;
  rep.starts = static_cast<int>(starts.size());

  std::vector<Vec2> pts;
  for (const auto& s : starts) {
    const auto r = newton2(F, J, Vec2{s[0], s[1]});
    if (!r.converged || r.x[0] <= kCoordLo || r.x[0] >= kCoordHi || r.x[1] <= kCoordLo ||
        r.x[1] >= kCoordHi) {
      ++rep.discarded;
      continue;
    }
    ++rep.converged;
    pts.push_back(r.x);
  }

  std::sort(pts.begin(), pts.end());
  std::vector<std::vector<Vec2>> groups;
  for (const Vec2& p : pts) {
    bool placed = false;
    for (auto& g : groups) {
      for (const Vec2& m : g)
        if (rel_close2(p, m, kClusterTol)) {
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
    double bn = norm_inf(F(best));
    for (const Vec2& m : g) {
      const double n = norm_inf(F(m));
      if (n < bn) {
        best = m;
        bn = n;
      }
    }
    reps.push_back(best);
  }
  for (Vec2& r : reps) r = ggm::detail::snap_representative(F, r);
  // Flat-valley merge around degenerate roots at critical activities.
  std::vector<Vec2> kept;
  for (const Vec2& r : reps) {
    bool merged = false;
    for (const Vec2& o : kept)
      if (rel_close2(r, o, 1e-5)) {
        const Vec2 mid{0.5 * (r[0] + o[0]), 0.5 * (r[1] + o[1])};
        if (norm_inf(F(mid)) < 1e-11) {
          merged = true;
          break;
        }
      }
    if (!merged) kept.push_back(r);
  }
  std::sort(kept.begin(), kept.end());

  for (const Vec2& v : kept) {
    PeriodicLaw law(q, embed(q, v));
    rep.max_residual = std::fmax(rep.max_residual, boundary_law_residual(law, params));
    rep.solutions.push_back(std::move(law));
  }
  return rep;
}

bool compare(Report& report, const std::vector<PeriodicLaw>& expected, double rel_tol) {
  bool ok = report.solutions.size() == expected.size();
  if (ok) {
    std::vector<bool> used(expected.size(), false);
    for (const PeriodicLaw& s : report.solutions) {
      bool matched = false;
      for (size_t i = 0; i < expected.size(); ++i) {
        if (used[i]) continue;
        bool close = true;
        for (int c = 0; c < s.q && close; ++c) {
          const double a = s.values[static_cast<size_t>(c)];
          const double b = expected[i].values[static_cast<size_t>(c)];
          if (std::fabs(a - b) > rel_tol * std::fmax(1.0, std::fabs(b))) close = false;
        }
        if (close) {
          used[i] = true;
          matched = true;
          break;
        }
      }
      if (!matched) {
        ok = false;
        break;
      }
    }
  }
  report.agreement = ok;
  return ok;
}

std::vector<SweepPoint> sweep(int q, int k, const std::vector<double>& theta_grid) {
  std::vector<SweepPoint> out;
  int next_id = 0;
  for (double theta : theta_grid) {
    SweepPoint pt;
    pt.report = solve(q, ModelParams(k, theta));
    pt.track_ids.assign(pt.report.solutions.size(), -1);
    if (!out.empty()) {
      const SweepPoint& prev = out.back();
      // Nearest-neighbor matching in log space, greedy by distance.
      struct Cand {
        double dist;
        size_t cur, prv;
      };
      std::vector<Cand> cands;
      for (size_t i = 0; i < pt.report.solutions.size(); ++i)
        for (size_t j = 0; j < prev.report.solutions.size(); ++j) {
          double d = 0.0;
          for (int c = 0; c < q; ++c)
            d += std::fabs(std::log(pt.report.solutions[i].values[static_cast<size_t>(c)]) -
                           std::log(prev.report.solutions[j].values[static_cast<size_t>(c)]));
          cands.push_back({d, i, j});
        }
      std::sort(cands.begin(), cands.end(),
                [](const Cand& a, const Cand& b) { return a.dist < b.dist; });
      std::vector<bool> cur_used(pt.report.solutions.size(), false);
      std::vector<bool> prv_used(prev.report.solutions.size(), false);
      for (const Cand& c : cands) {
        if (cur_used[c.cur] || prv_used[c.prv]) continue;
        pt.track_ids[c.cur] = prev.track_ids[c.prv];
        cur_used[c.cur] = prv_used[c.prv] = true;
      }
    }
    for (int& id : pt.track_ids)
      if (id < 0) id = next_id++;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace ggm::oracle
