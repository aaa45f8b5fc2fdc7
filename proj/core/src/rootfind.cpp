#include "ggm/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace ggm::roots {

namespace {

constexpr double kRelAccuracy = 1e-12;     // bisection target
constexpr double kIsolationTol = 1e-9;     // roots closer than this merge
constexpr double kDipTol = 1e-9;           // |p| threshold for even-order roots
constexpr double kDerivVanishTol = 1e-7;   // relative threshold for multiplicity scan
constexpr int kGridPoints = 4000;

/// Characteristic magnitude of p^(m) at x: sum of |term|, guards against
/// cancellation-based false zeros.
double derivative_scale(const Polynomial& p, int m, double x) {
  double s = 0.0;
  const int deg = p.degree();
  for (int i = m; i <= deg; ++i) {
    double f = 1.0;
    for (int j = 0; j < m; ++j) f *= static_cast<double>(i - j);
    s += std::fabs(p.c[static_cast<size_t>(i)]) * f * std::pow(x, static_cast<double>(i - m));
  }
  return s;
}

double eval_derivative(const Polynomial& p, int m, double x) {
  // Horner on the m-th derivative: sum_i c_i * i!/(i-m)! * x^(i-m).
  double s = 0.0;
  const int deg = p.degree();
  for (int i = deg; i >= m; --i) {
    double f = 1.0;
    for (int j = 0; j < m; ++j) f *= static_cast<double>(i - j);
    s = s * x + p.c[static_cast<size_t>(i)] * f;
  }
  return s;
}

int multiplicity_at(const Polynomial& p, double r) {
  const int deg = p.degree();
  for (int m = 1; m <= deg; ++m) {
    const double d = eval_derivative(p, m, r);
    const double scale = derivative_scale(p, m, r);
    if (std::fabs(d) > kDerivVanishTol * std::fmax(scale, 1e-300)) return m;
  }
  return deg;
}

/// Multiplicity at a root found through a sign change: necessarily odd.
/// The derivative scan can misjudge by one near high-order roots, where
/// the refined root sits inside the evaluation noise floor; a crossing
/// with m-1 vanishing derivatives has order at least m+1 when m is even.
int multiplicity_odd(const Polynomial& p, double r) {
  const int m = multiplicity_at(p, r);
  return m % 2 == 1 ? m : m + 1;
}

/// Multiplicity at a no-crossing dip: necessarily even.
int multiplicity_even(const Polynomial& p, double r) {
  const int m = std::max(2, multiplicity_at(p, r));
  return m % 2 == 0 ? m : m + 1;
}

double bisect(const Polynomial& p, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= kRelAccuracy * mid) return mid;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double newton_polish(const Polynomial& p, const Polynomial& dp, double x, double lo,
                     double hi) {
  double fx = std::fabs(p(x));
  for (int it = 0; it < 50; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double step = p(x) / d;
    const double xn = x - step;
    if (!(xn > lo) || !(xn < hi)) break;
    const double fn = std::fabs(p(xn));
    if (fn > fx) break;
    const bool done = std::fabs(step) <= 1e-16 * std::fabs(x);
    x = xn;
    fx = fn;
    if (done) break;
  }
  return x;
}

/// Stationary point of p inside (a, b) via bisection on p'.
std::optional<double> stationary_point(const Polynomial& dp, double a, double b) {
  double fa = dp(a), fb = dp(b);
  if ((fa < 0.0) == (fb < 0.0)) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= 1e-14 * mid) return mid;
    const double fm = dp(mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c(std::move(coeffs)) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw domain_error("Polynomial: empty coefficient list");
}

double Polynomial::operator()(double x) const {
  double s = 0.0;
  for (size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

Polynomial Polynomial::derivative() const {
  if (c.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial mul(const Polynomial& a, const Polynomial& b) {
  std::vector<double> r(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return Polynomial(std::move(r));
}

Polynomial sub(const Polynomial& a, const Polynomial& b) {
  std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  while (r.size() > 1 && r.back() == 0.0) r.pop_back();
  return Polynomial(std::move(r));
}

Polynomial pow(const Polynomial& a, int n) {
  Polynomial r({1.0});
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

Polynomial shift_up(const Polynomial& a, int n) {
  std::vector<double> r(a.c.size() + static_cast<size_t>(n), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) r[i + static_cast<size_t>(n)] = a.c[i];
  return Polynomial(std::move(r));
}

int descartes_sign_changes(const Polynomial& p) {
  int changes = 0;
  int last = 0;
  bool any = false;
  for (double v : p.c) {
    if (v == 0.0) continue;
    any = true;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  if (!any) throw domain_error("descartes_sign_changes: zero polynomial");
  return changes;
}

RootSet::RootSet(std::vector<Root> roots_, int sign_changes_, bool partial)
    : roots(std::move(roots_)), sign_changes(sign_changes_) {
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.value < b.value; });
  const int total = total_multiplicity();
  if (total > sign_changes || (!partial && (sign_changes - total) % 2 != 0))
    throw internal_error("RootSet: root count violates Descartes' rule");
  for (size_t i = 1; i < roots.size(); ++i)
    if (roots[i].value - roots[i - 1].value <= kIsolationTol * roots[i].value)
      throw internal_error("RootSet: roots not isolated");
}

int RootSet::total_multiplicity() const {
  int t = 0;
  for (const Root& r : roots) t += r.multiplicity;
  return t;
}

std::vector<double> RootSet::values() const {
  std::vector<double> v;
  v.reserve(roots.size());
  for (const Root& r : roots) v.push_back(r.value);
  return v;
}

RootSet positive_roots(const Polynomial& p,
                       std::optional<std::pair<double, double>> bracket_hint) {
  std::vector<double> c = p.c;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.size() == 1 && c[0] == 0.0) throw domain_error("positive_roots: zero polynomial");
  if (c.size() < 2) throw domain_error("positive_roots: degree must be >= 1");
  // Factor out x^m: zero roots are not positive.
  size_t lead_zeros = 0;
  while (lead_zeros < c.size() - 1 && c[lead_zeros] == 0.0) ++lead_zeros;
  if (lead_zeros > 0) c.erase(c.begin(), c.begin() + static_cast<long>(lead_zeros));

  const Polynomial q(c);
  const int sc = descartes_sign_changes(q);
  if (sc == 0) return RootSet({}, 0);
  if (q.degree() < 1) return RootSet({}, sc);

  const Polynomial dq = q.derivative();
  const int deg = q.degree();
  const double lead = std::fabs(q.c.back());
  double maxc = 0.0, maxc_tail = 0.0;
  for (int i = 0; i < deg; ++i) maxc = std::fmax(maxc, std::fabs(q.c[static_cast<size_t>(i)]));
  for (int i = 1; i <= deg; ++i)
    maxc_tail = std::fmax(maxc_tail, std::fabs(q.c[static_cast<size_t>(i)]));
  double hi = 2.0 * (1.0 + maxc / lead);                       // Cauchy upper bound
  double lo = 0.5 / (1.0 + maxc_tail / std::fabs(q.c[0]));     // reciprocal bound
  if (bracket_hint) {
    lo = std::fmax(bracket_hint->first, 1e-300);
    hi = bracket_hint->second;
    if (!(hi > lo)) throw domain_error("positive_roots: bad bracket hint");
  }

  const double ratio = std::log(hi / lo);
  std::vector<double> grid(kGridPoints + 1), val(kGridPoints + 1);
  for (int j = 0; j <= kGridPoints; ++j) {
    grid[static_cast<size_t>(j)] = lo * std::exp(ratio * j / kGridPoints);
    val[static_cast<size_t>(j)] = q(grid[static_cast<size_t>(j)]);
    if (!std::isfinite(val[static_cast<size_t>(j)]))
      throw numeric_error("positive_roots: non-finite evaluation");
  }

  std::vector<Root> found;
  auto push_root = [&](double r, int mult) {
    for (Root& existing : found) {
      if (std::fabs(existing.value - r) <= kIsolationTol * std::fmax(1.0, r)) {
        existing.multiplicity = std::max(existing.multiplicity, mult);
        return;
      }
    }
    found.push_back({r, mult});
  };

  double coeff_mag = 0.0;
  for (double cc : q.c) coeff_mag = std::fmax(coeff_mag, std::fabs(cc));

  for (int j = 0; j < kGridPoints; ++j) {
    const double a = grid[static_cast<size_t>(j)], b = grid[static_cast<size_t>(j + 1)];
    const double fa = val[static_cast<size_t>(j)], fb = val[static_cast<size_t>(j + 1)];
    if (fa == 0.0) {
      push_root(a, multiplicity_at(q, a));  // exact grid hit: parity unknown
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0)) {
      double r = bisect(q, a, b);
      r = newton_polish(q, dq, r, 0.5 * a, 2.0 * b);
      push_root(r, multiplicity_odd(q, r));
    }
  }
  if (val[kGridPoints] == 0.0) push_root(grid[kGridPoints], multiplicity_at(q, hi));

  // Even-order roots: |p| dips near zero without a sign change. Refine the
  // stationary point; if p crosses zero after all, split into two brackets.
  for (int j = 1; j < kGridPoints; ++j) {
    const double fm = std::fabs(val[static_cast<size_t>(j)]);
    if (fm >= std::fabs(val[static_cast<size_t>(j - 1)]) ||
        fm >= std::fabs(val[static_cast<size_t>(j + 1)]))
      continue;
    const bool sl = val[static_cast<size_t>(j - 1)] < 0.0;
    if ((val[static_cast<size_t>(j)] < 0.0) != sl ||
        (val[static_cast<size_t>(j + 1)] < 0.0) != sl)
      continue;  // sign change handled above
    const double a = grid[static_cast<size_t>(j - 1)], b = grid[static_cast<size_t>(j + 1)];
    const auto st = stationary_point(dq, a, b);
    if (!st) continue;
    const double x = *st;
    const double fx = q(x);
    if ((fx < 0.0) != sl && fx != 0.0) {
      // The dip actually crosses: two nearby simple roots.
      double r1 = bisect(q, a, x);
      r1 = newton_polish(q, dq, r1, 0.5 * a, x);
      push_root(r1, multiplicity_odd(q, r1));
      double r2 = bisect(q, x, b);
      r2 = newton_polish(q, dq, r2, x, 2.0 * b);
      push_root(r2, multiplicity_odd(q, r2));
      continue;
    }
    const double scale = coeff_mag * std::fmax(1.0, std::pow(x, static_cast<double>(deg)));
    if (std::fabs(fx) <= kDipTol * scale) push_root(x, multiplicity_even(q, x));
  }

  return RootSet(std::move(found), sc, bracket_hint.has_value());
}

}  // namespace ggm::roots
