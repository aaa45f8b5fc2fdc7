#include "ggm/model.hpp"

#include <cmath>
#include <cstdlib>

namespace ggm {

namespace {

bool nearly_equal(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
}

}  // namespace

ModelParams::ModelParams(int k_, double theta_) : k(k_), theta(theta_) {
  if (k < 2) throw domain_error("ModelParams: k must be >= 2");
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw domain_error("ModelParams: theta must be positive and finite");
}

PeriodicLaw::PeriodicLaw(int q_, std::vector<double> values_)
    : q(q_), values(std::move(values_)) {
  if (q < 2) throw domain_error("PeriodicLaw: period q must be >= 2");
  if (static_cast<int>(values.size()) != q)
    throw domain_error("PeriodicLaw: need exactly q values");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw domain_error("PeriodicLaw: values must be positive and finite");
}

PeriodicLaw PeriodicLaw::all_ones(int q) {
  return PeriodicLaw(q, std::vector<double>(static_cast<size_t>(q), 1.0));
}

PeriodicLaw PeriodicLaw::normalized() const {
  std::vector<double> v = values;
  const double z0 = v[0];
  for (double& x : v) x /= z0;
  v[0] = 1.0;
  return PeriodicLaw(q, std::move(v));
}

double PeriodicLaw::at_class(long long height) const {
  long long m = height % q;
  if (m < 0) m += q;
  return values[static_cast<size_t>(m)];
}

double transfer_weight(int delta, const ModelParams& params) {
  const int d = std::abs(delta);
  if (d == 0) return params.theta;
  if (d == 1) return 1.0;
  return 0.0;
}

CriticalConstants critical_constants(int k) {
  if (k < 2) throw domain_error("critical_constants: k must be >= 2");
  CriticalConstants c{};
  const double km1 = static_cast<double>(k - 1);
  c.theta_0 = 2.0 / km1;
  c.theta_cr = (k + 2.0) / km1;
  c.theta_c = 2.0 * (k + 1.0) / km1;
  if (k == 2) {
    // Radicals are the Cardano forms of theta^3-6theta^2-4theta-8 = 0 and
    // theta^3-2theta^2-8 = 0 respectively.
    const double a = std::cbrt(54.0 + 6.0 * std::sqrt(33.0));
    c.theta_c3 = (2.0 / 3.0) * a + 8.0 / a + 2.0;
    const double b = std::cbrt(116.0 + 12.0 * std::sqrt(93.0));
    c.theta_star2 = (b + 4.0 / b + 2.0) / 3.0;
  }
  return c;
}

double boundary_law_residual(const PeriodicLaw& law, const ModelParams& params) {
  const int q = law.q;
  const double theta = params.theta;
  const std::vector<double>& z = law.values;
  const double den = theta + z[static_cast<size_t>(q - 1)] + z[1 % static_cast<size_t>(q)];
  double worst = 0.0;
  for (int i = 0; i < q; ++i) {
    const double zm = z[static_cast<size_t>((i + q - 1) % q)];
    const double zp = z[static_cast<size_t>((i + 1) % q)];
    const double num = theta * z[static_cast<size_t>(i)] + zm + zp;
    const double rhs = std::pow(num / den, static_cast<double>(params.k));
    const double r = std::fabs(z[static_cast<size_t>(i)] - rhs);
    if (!std::isfinite(r)) throw numeric_error("boundary_law_residual: non-finite");
    worst = std::fmax(worst, r);
  }
  return worst;
}

double boundary_law_residual_up_to_constant(const PeriodicLaw& law,
                                            const ModelParams& params) {
  const int q = law.q;
  const double theta = params.theta;
  const std::vector<double>& z = law.values;
  auto qz = [&](int i) {
    const double zm = z[static_cast<size_t>((i + q - 1) % q)];
    const double zp = z[static_cast<size_t>((i + 1) % q)];
    return theta * z[static_cast<size_t>(i)] + zm + zp;
  };
  const double c = z[0] / std::pow(qz(0), static_cast<double>(params.k));
  double worst = 0.0;
  for (int i = 0; i < q; ++i) {
    const double r =
        std::fabs(z[static_cast<size_t>(i)] - c * std::pow(qz(i), static_cast<double>(params.k)));
    if (!std::isfinite(r))
      throw numeric_error("boundary_law_residual_up_to_constant: non-finite");
    worst = std::fmax(worst, r);
  }
  return worst;
}

std::vector<PeriodicLaw> cyclic_shift_orbit(const PeriodicLaw& law) {
  const int q = law.q;
  std::vector<PeriodicLaw> orbit;
  for (int s = 0; s < q; ++s) {
    std::vector<double> w(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i)
      w[static_cast<size_t>(i)] = law.values[static_cast<size_t>((i + s) % q)];
    const double w0 = w[0];
    for (double& x : w) x /= w0;
    w[0] = 1.0;
    PeriodicLaw cand(q, std::move(w));
    bool dup = false;
    for (const PeriodicLaw& m : orbit) {
      bool same = true;
      for (int i = 0; i < q; ++i)
        if (!nearly_equal(m.values[static_cast<size_t>(i)],
                          cand.values[static_cast<size_t>(i)], 1e-12)) {
          same = false;
          break;
        }
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) orbit.push_back(std::move(cand));
  }
  return orbit;
}

}  // namespace ggm
