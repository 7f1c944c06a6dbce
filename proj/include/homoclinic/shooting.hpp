#pragma once

#include <optional>
#include <string>

#include "homoclinic/manifold.hpp"

namespace homoclinic {

/// Outcome of the Bolzano shooting argument over Theta = [theta_l, theta_r].
struct ShootingResult {
  Interval theta_l, theta_r;
  Interval h_left, h_right;
  Interval h_prime;  // raw parameter units, valid for all theta in Theta
  bool stays_in_D = false;
  bool existence = false;
  bool uniqueness = false;
  /// "standard": h(l) < 0 < h(r) with h' > 0; "reversed": mirrored signs.
  std::string orientation = "none";
  bool mean_value_ok = false;

  /// Pure re-derivation of the flags from the stored intervals.
  bool recheck() const;
};

struct ShootingSetup {
  FieldPtr local_field;  // proof-oriented field in chart coordinates, param = Theta
  ManifoldEnclosure unstable;
  ManifoldEnclosure stable;
  double T = 0.0;
  IntegratorConfig integrator;
  int threads = 1;  // parallelism across the three integrations
};

struct HRun {
  Interval h;
  IntervalVector landing;  // chart coordinates
  FlowEnclosure run;
};

/// Enclosure of h(theta) = pi_x Phi_T(p^u_theta) - w^s(pi_y Phi_T(p^u_theta), theta)
/// for every theta in the given interval. Throws IntegrationError on
/// integration failure and domain_error when the image leaves the block.
HRun splitting_h(const ShootingSetup& s, const Interval& theta);

struct HPrimeRun {
  Interval h_prime_raw;   // d h / d theta in raw parameter units
  Interval h_prime_norm;  // in normalized theta~ units of the run
  bool stays_in_D = false;
  IntervalVector landing;  // state part of the extended image
  FlowEnclosure run;       // extended (n+1)-dimensional run over all Theta
};

/// Rigorous bound on h'(theta) over all of Theta, assembled from the
/// parameter-extended variational enclosure and the two cone certificates.
HPrimeRun splitting_h_derivative(const ShootingSetup& s);

struct ShootingOutputs {
  ShootingResult result;
  HRun left, right;
  HPrimeRun family;
};

/// Full shooting stage: the two endpoint integrations and the family run
/// (concurrently when s.threads > 1), plus the existence/uniqueness logic.
ShootingOutputs run_shooting(const ShootingSetup& s);

}  // namespace homoclinic
