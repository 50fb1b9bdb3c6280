#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "steerkit/qstate.hpp"
#include "steerkit/scenarios.hpp"

namespace steerkit {

/// Measurement strategy for the steering party.
///   TwoSettings   {sigma_z, sigma_x}                        (dihedral m=1)
///   ThreeSettings {sigma_z, sigma_x, sigma_y}               (dihedral m=2)
///   Dihedral(m)   sigma_z plus m equatorial observables at theta = l pi/m
///   Equatorial    the m -> infinity limit of Dihedral
///   AllProjective every projective measurement, approximated numerically
///                 on a sphere net of the given resolution
struct MeasurementScheme {
  enum class Kind { TwoSettings, ThreeSettings, Dihedral, Equatorial, AllProjective };

  Kind kind = Kind::TwoSettings;
  int m = 1;           // Dihedral order (meaningful for Dihedral)
  int resolution = 0;  // net size (meaningful for AllProjective)

  static MeasurementScheme two_settings();
  static MeasurementScheme three_settings();
  static MeasurementScheme dihedral(int m);
  static MeasurementScheme equatorial();
  static MeasurementScheme all_projective(int resolution);

  /// True for every scheme the analytic criterion covers (AllProjective is
  /// handled by the LP oracle instead).
  bool analytic() const { return kind != Kind::AllProjective; }

  /// Criterion left-hand side: 2m sin(pi/2m) for dihedral schemes (2 for
  /// TwoSettings, 2 sqrt 2 for ThreeSettings), pi for Equatorial.
  /// Throws UnsupportedScheme for AllProjective.
  double lhs_value() const;

  /// Dihedral order m (1 for TwoSettings, 2 for ThreeSettings); throws
  /// UnsupportedScheme for Equatorial / AllProjective.
  int dihedral_order() const;

  /// Measurement directions [z, theta_0, ..., theta_{m-1}] of the dihedral
  /// realization; throws UnsupportedScheme for Equatorial / AllProjective.
  std::vector<Eigen::Vector3d> directions() const;
};

/// Result of the analytic criterion: steerable iff margin = lhs - rhs > 0,
/// where rhs = F / t_perp.
struct CriterionReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool steerable = false;
};

/// F = sqrt((1+a)^2 - (b+t_z)^2) + sqrt((1-a)^2 - (b-t_z)^2) for the
/// AliceToBob direction; BobToAlice exchanges a and b. Radicands with
/// |r| <= 1e-12 snap to zero (families that sit exactly on the boundary
/// would otherwise turn cancellation noise into sqrt-amplified error);
/// anything below -1e-12 throws NegativeRadicand.
double f_value(const XStateParams& x, Direction direction = Direction::AliceToBob);

/// Necessary-and-sufficient criterion for X-states with |t_x| = |t_y|:
/// steerable iff lhs_value(scheme) > F / t_perp. States with t_perp = 0 are
/// unsteerable under these schemes (the right-hand side diverges).
/// Throws TheoremPreconditionViolated if |t_x| != |t_y| (tolerance 1e-10),
/// UnsupportedScheme for AllProjective.
CriterionReport steerable(const XStateParams& x, const MeasurementScheme& scheme,
                          Direction direction = Direction::AliceToBob);

/// Scenario-specific closed form of F / t_perp as scalar algebra in
/// (n, alpha, mu); must agree with the reduced-state route to 1e-12.
/// SRPE covers any mu via (sqrt(AB) + sqrt(mu C))/D (AliceToBob) and
/// (sqrt(mu A) + sqrt(BC))/D (BobToAlice) with
///   A = mu + 4 alpha (1-mu),
///   B = 4 alpha (1-mu)(n-2) + mu (2n-3),
///   C = 4(n-1)(1 - alpha(1-mu)) - mu (2n-1),
///   D = 2 (1-mu) sqrt(alpha (1-alpha)).
double f_over_tperp_closed_form(const Scenario& sc,
                                Direction direction = Direction::AliceToBob);

/// Root-finder strategy: Auto picks the exact formula when one exists
/// (SRPE, mu = 0) and falls back to scan + bisection otherwise.
enum class ThresholdMethod { Auto, Symbolic, Bisection };

/// Supremum of steerable alpha in (0, 1/2]; nullopt if no alpha is
/// steerable, 0.5 if all are. For SRPE/AliceToBob/mu=0 the symbolic value is
/// L^2 / (4(n-2) + L^2) with L = lhs_value(scheme). The bisection path scans
/// 1000 points and throws NonMonotoneMargin if the margin changes sign more
/// than once.
std::optional<double> alpha_threshold(ScenarioKind kind, double n,
                                      const MeasurementScheme& scheme,
                                      Direction direction, double mu,
                                      ThresholdMethod method = ThresholdMethod::Auto);

/// Supremum of steerable real n (> 2); nullopt if no n is steerable, and
/// +infinity if steerable over the whole probed range (n up to 1e6). For
/// SRPE/mu=0: BobToAlice gives (3 + sqrt(1 + L^2))/2 independent of alpha;
/// AliceToBob gives 2 + L^2 (1-alpha)/(4 alpha).
std::optional<double> n_threshold(ScenarioKind kind, const MeasurementScheme& scheme,
                                  Direction direction, double alpha, double mu,
                                  ThresholdMethod method = ThresholdMethod::Auto);

}  // namespace steerkit
