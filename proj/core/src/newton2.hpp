#pragma once

// Internal 2-dimensional damped Newton iteration, restricted to the open
// positive quadrant. Shared by the period-3 solver and the oracle; both
// build their residual maps from the recursion directly.

#include <array>
#include <cmath>
#include <functional>
#include <optional>

namespace ggm::detail {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<double, 4>;  // row-major

struct Newton2Result {
  Vec2 x;
  double residual_inf;  // ||F(x)||_inf at the returned point
  bool converged;
};

inline double norm_inf(const Vec2& v) {
  return std::fmax(std::fabs(v[0]), std::fabs(v[1]));
}

/// Damped Newton on F from start x0. The step is halved until the residual
/// decreases and the iterate stays strictly positive. Converged when
/// ||F||_inf <= tol.
inline Newton2Result newton2(const std::function<Vec2(const Vec2&)>& F,
                             const std::function<Mat2(const Vec2&)>& J, Vec2 x0,
                             double tol = 1e-13, int max_iter = 200) {
  Vec2 x = x0;
  Vec2 fx = F(x);
  double fn = norm_inf(fx);
  if (!std::isfinite(fn)) return {x, fn, false};
  for (int it = 0; it < max_iter; ++it) {
    if (fn <= tol) return {x, fn, true};
    const Mat2 m = J(x);
    const double det = m[0] * m[3] - m[1] * m[2];
    if (det == 0.0 || !std::isfinite(det)) return {x, fn, false};
    const Vec2 step{(m[3] * fx[0] - m[1] * fx[1]) / det,
                    (m[0] * fx[1] - m[2] * fx[0]) / det};
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      const Vec2 cand{x[0] - lambda * step[0], x[1] - lambda * step[1]};
      if (cand[0] > 0.0 && cand[1] > 0.0) {
        const Vec2 fc = F(cand);
        const double fcn = norm_inf(fc);
        if (std::isfinite(fcn) && fcn < fn) {
          x = cand;
          fx = fc;
          fn = fcn;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) return {x, fn, fn <= tol};
  }
  return {x, fn, fn <= tol};
}

/// Replace a converged representative by a nearby exact-form candidate
/// (coordinates snapped to 1, or symmetrized) when that lowers the
/// residual. Near degenerate roots Newton stalls in a flat valley around
/// the true solution; the algebraically exact points win there.
inline Vec2 snap_representative(const std::function<Vec2(const Vec2&)>& F, Vec2 x) {
  const double window = 1e-5;
  double best = norm_inf(F(x));
  auto consider = [&](const Vec2& cand) {
    if (cand[0] <= 0.0 || cand[1] <= 0.0) return;
    const double r = norm_inf(F(cand));
    if (r < best) {
      best = r;
      x = cand;
    }
  };
  const bool x_near1 = std::fabs(x[0] - 1.0) <= window;
  const bool y_near1 = std::fabs(x[1] - 1.0) <= window;
  if (x_near1) consider({1.0, x[1]});
  if (y_near1) consider({x[0], 1.0});
  if (x_near1 && y_near1) consider({1.0, 1.0});
  if (std::fabs(x[0] - x[1]) <= window * std::fmax(1.0, std::fabs(x[0]))) {
    const double m = 0.5 * (x[0] + x[1]);
    consider({m, m});
  }
  return x;
}

}  // namespace ggm::detail
