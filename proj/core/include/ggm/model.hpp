#pragma once

#include <optional>
#include <vector>

#include "ggm/errors.hpp"

namespace ggm {

/// Model parameters of the alternating-sign SOS interaction on the Cayley
/// tree: branching number k (every vertex has k+1 neighbors) and the
/// activity theta = exp(J*beta) > 0. J and beta never appear separately.
struct ModelParams {
  int k;
  double theta;

  ModelParams(int k_, double theta_);
};

/// A candidate q-height-periodic boundary law: q positive reals indexed by
/// the height residue class i mod q.
///
/// `values[0] == 1` is the normalized representation used for user-facing
/// laws and for cyclic_shift_orbit output. Laws assembled from period-2
/// solution branches keep the raw (x, y) pattern, whose class-0 entry is
/// not 1 in general; the residual below vanishes on exactly those vectors.
struct PeriodicLaw {
  int q;
  std::vector<double> values;

  PeriodicLaw(int q_, std::vector<double> values_);

  static PeriodicLaw all_ones(int q);

  bool is_normalized() const { return values[0] == 1.0; }

  /// Same law rescaled so the class-0 entry equals 1.
  PeriodicLaw normalized() const;

  double at_class(long long height) const;  // values[height mod q], sign-safe
};

/// Critical activities of the model. theta_c3 and theta_star2 have closed
/// radical forms only for k = 2 and are absent otherwise.
struct CriticalConstants {
  double theta_0;   // 2/(k-1): the diagonal branch crosses 1 here
  double theta_cr;  // (k+2)/(k-1): period-3 degeneracy
  double theta_c;   // 2(k+1)/(k-1): bifurcation of the x=1 family
  std::optional<double> theta_c3;     // birth of the second period-4 pair (k=2)
  std::optional<double> theta_star2;  // sign change of 8 - theta^3 + 2 theta^2 (k=2)
};

/// Transfer kernel weight for a height difference, in cleared form:
/// theta on the diagonal, 1 on |delta| = 1, 0 otherwise. The overall
/// factor theta^-1 of the raw kernel cancels in the recursion and in
/// normalized measures.
double transfer_weight(int delta, const ModelParams& params);

/// All critical constants for branching number k (k >= 2).
CriticalConstants critical_constants(int k);

/// Max-norm residual of the constant boundary-law equation
///   z_i = ((theta z_i + z_{i-1} + z_{i+1}) / (theta + z_{q-1} + z_1))^k
/// over the residue classes, indices mod q. Zero iff the law is an exact
/// constant boundary law in this class-0-anchored form.
double boundary_law_residual(const PeriodicLaw& law, const ModelParams& params);

/// Residual of the consistency equation with the multiplicative constant
/// eliminated through class 0: max_i |z_i - c (theta z_i + z_{i-1} + z_{i+1})^k|
/// with c = z_0 / (theta z_0 + z_{q-1} + z_1)^k. Vanishes on every pure
/// rotation of an exact law, while boundary_law_residual does not.
double boundary_law_residual_up_to_constant(const PeriodicLaw& law,
                                            const ModelParams& params);

/// All q cyclic shifts of the law, each renormalized so its class-0 entry
/// is 1, deduplicated. Shift s maps class i to the original class i + s.
std::vector<PeriodicLaw> cyclic_shift_orbit(const PeriodicLaw& law);

}  // namespace ggm
