#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ggm/errors.hpp"

namespace ggm::roots {

/// Real univariate polynomial, coefficients in ascending degree order.
struct Polynomial {
  std::vector<double> c;

  explicit Polynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  double operator()(double x) const;  // Horner
  Polynomial derivative() const;
};

Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial sub(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& a, int n);
/// Multiply by x^n (shift coefficients up).
Polynomial shift_up(const Polynomial& a, int n);

/// Number of strict sign changes in the nonzero coefficient sequence.
int descartes_sign_changes(const Polynomial& p);

struct Root {
  double value;
  int multiplicity;  // > 1 for roots flagged as multiple
};

/// Positive real roots with Descartes bookkeeping. The constructor enforces
/// Descartes' rule: total multiplicity <= sign_changes, same parity. A
/// partial set (restricted search interval) checks only the upper bound,
/// since roots outside the interval are deliberately not represented.
struct RootSet {
  std::vector<Root> roots;  // sorted ascending
  int sign_changes;

  RootSet(std::vector<Root> roots_, int sign_changes_, bool partial = false);

  int total_multiplicity() const;
  std::vector<double> values() const;
};

/// All positive real roots of p, each refined to relative accuracy ~1e-12
/// (bisection on sign-changing brackets, then a guarded Newton polish).
/// Isolation: sign-change scan on a geometric grid inside the Cauchy bound.
/// Even-order roots are detected where |p| dips below tolerance without a
/// sign change and are reported once with a multiplicity flag.
RootSet positive_roots(const Polynomial& p,
                       std::optional<std::pair<double, double>> bracket_hint = {});

}  // namespace ggm::roots
