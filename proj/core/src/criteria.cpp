#include "steerkit/criteria.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace steerkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRadicandTol = 1e-12;
constexpr double kTransverseTol = 1e-10;
constexpr double kMarginTol = 1e-12;

double clamp_radicand(double r) {
  if (r < -kRadicandTol) {
    throw NegativeRadicand("radicand below tolerance; parameters outside the state space");
  }
  // Snap the whole deadband to zero, not just the negative half: several
  // boundary families make a radicand vanish identically, and the square
  // root otherwise amplifies +-1e-16 of cancellation noise to 1e-8.
  return r <= kRadicandTol ? 0.0 : r;
}

}  // namespace

MeasurementScheme MeasurementScheme::two_settings() {
  return MeasurementScheme{Kind::TwoSettings, 1, 0};
}

MeasurementScheme MeasurementScheme::three_settings() {
  return MeasurementScheme{Kind::ThreeSettings, 2, 0};
}

MeasurementScheme MeasurementScheme::dihedral(int m) {
  if (m < 1) {
    throw ParameterOutOfRange("dihedral order must be a positive integer");
  }
  return MeasurementScheme{Kind::Dihedral, m, 0};
}

MeasurementScheme MeasurementScheme::equatorial() {
  return MeasurementScheme{Kind::Equatorial, 0, 0};
}

MeasurementScheme MeasurementScheme::all_projective(int resolution) {
  if (resolution < 1) {
    throw ParameterOutOfRange("projective resolution must be positive");
  }
  return MeasurementScheme{Kind::AllProjective, 0, resolution};
}

double MeasurementScheme::lhs_value() const {
  switch (kind) {
    case Kind::TwoSettings:
      return 2.0;
    case Kind::ThreeSettings:
      return 2.0 * std::sqrt(2.0);
    case Kind::Dihedral:
      return 2.0 * m * std::sin(kPi / (2.0 * m));
    case Kind::Equatorial:
      return kPi;
    case Kind::AllProjective:
      break;
  }
  throw UnsupportedScheme("no closed-form criterion constant for this scheme");
}

int MeasurementScheme::dihedral_order() const {
  switch (kind) {
    case Kind::TwoSettings:
      return 1;
    case Kind::ThreeSettings:
      return 2;
    case Kind::Dihedral:
      return m;
    default:
      throw UnsupportedScheme("scheme has no finite dihedral order");
  }
}

std::vector<Eigen::Vector3d> MeasurementScheme::directions() const {
  const int order = dihedral_order();
  std::vector<Eigen::Vector3d> dirs;
  dirs.reserve(order + 1);
  dirs.emplace_back(0.0, 0.0, 1.0);
  for (int j = 0; j < order; ++j) {
    const double theta = j * kPi / order;
    dirs.emplace_back(std::cos(theta), std::sin(theta), 0.0);
  }
  return dirs;
}

double f_value(const XStateParams& x, Direction direction) {
  const double a = direction == Direction::AliceToBob ? x.a : x.b;
  const double b = direction == Direction::AliceToBob ? x.b : x.a;
  const double r_plus = clamp_radicand((1.0 + a) * (1.0 + a) - (b + x.t_z) * (b + x.t_z));
  const double r_minus = clamp_radicand((1.0 - a) * (1.0 - a) - (b - x.t_z) * (b - x.t_z));
  return std::sqrt(r_plus) + std::sqrt(r_minus);
}

CriterionReport steerable(const XStateParams& x, const MeasurementScheme& scheme,
                          Direction direction) {
  if (!scheme.analytic()) {
    throw UnsupportedScheme("the closed-form criterion needs a finite or equatorial scheme");
  }
  if (std::abs(std::abs(x.t_x) - std::abs(x.t_y)) > kTransverseTol) {
    throw TheoremPreconditionViolated("criterion requires |t_x| == |t_y|");
  }
  const double lhs = scheme.lhs_value();
  const double f = f_value(x, direction);
  const double t_perp = x.t_perp();
  double rhs;
  if (t_perp > 0.0) {
    rhs = f / t_perp;
  } else {
    rhs = std::numeric_limits<double>::infinity();
  }
  CriterionReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.margin = lhs - rhs;
  // Exact thresholds belong to the unsteerable side (the LHS set is closed);
  // a deadband keeps last-bit noise from flipping boundary verdicts.
  report.steerable = report.margin > kMarginTol;
  return report;
}

double f_over_tperp_closed_form(const Scenario& sc, Direction direction) {
  sc.validate();
  const double n = sc.n;
  const double alpha = sc.alpha;
  const double mu = sc.mu;
  const double nu = 1.0 - mu;

  if (sc.kind == ScenarioKind::SRPE) {
    const double big_a = mu + 4.0 * alpha * nu;
    const double big_b = 4.0 * alpha * nu * (n - 2.0) + mu * (2.0 * n - 3.0);
    const double big_c = 4.0 * (n - 1.0) * (1.0 - alpha * nu) - mu * (2.0 * n - 1.0);
    const double big_d = 2.0 * nu * std::sqrt(alpha * (1.0 - alpha));
    if (big_d <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    if (direction == Direction::AliceToBob) {
      return (std::sqrt(clamp_radicand(big_a * big_b)) +
              std::sqrt(clamp_radicand(mu * big_c))) /
             big_d;
    }
    return (std::sqrt(clamp_radicand(mu * big_a)) +
            std::sqrt(clamp_radicand(big_b * big_c))) /
           big_d;
  }

  if (mu == 0.0) {
    if (sc.kind == ScenarioKind::RHalfPE) {
      const double eta = 1.0 + alpha * (n - 2.0);
      return 2.0 * std::sqrt(n - 2.0) *
             (std::sqrt(alpha * eta) + std::sqrt((1.0 - alpha) * (n - eta)));
    }
    // RPE
    return std::sqrt(2.0 * (n - 2.0)) *
           (std::sqrt(2.0 * alpha) +
            std::sqrt(6.0 * alpha + n * (n - 1.0 - 4.0 * alpha))) /
           std::sqrt(1.0 - alpha);
  }

  // Noisy RHalfPE / RPE marginals have a == b, for which F factors as
  // sqrt(1 - t_z) * (sqrt(1 + t_z + 2a) + sqrt(1 + t_z - 2a)).
  const XStateParams x = reduced_pair_state(sc, direction);
  const double root = std::sqrt(clamp_radicand(1.0 - x.t_z));
  const double f = root * (std::sqrt(clamp_radicand(1.0 + x.t_z + 2.0 * x.a)) +
                           std::sqrt(clamp_radicand(1.0 + x.t_z - 2.0 * x.a)));
  const double t_perp = x.t_perp();
  if (t_perp <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return f / t_perp;
}

namespace {

// Margin of the steering criterion as a function of one scenario parameter.
using MarginFn = std::function<double(double)>;

struct ScanResult {
  int sign_changes = 0;
  double bracket_lo = 0.0;  // positive-margin end of the unique crossing
  double bracket_hi = 0.0;
  bool any_positive = false;
  bool first_positive = false;
  bool last_positive = false;
};

ScanResult scan_margin(const MarginFn& margin, const std::vector<double>& grid) {
  ScanResult res;
  bool have_prev = false;
  bool prev_positive = false;
  double prev_x = 0.0;
  for (const double x : grid) {
    const bool positive = margin(x) > 0.0;
    if (positive) res.any_positive = true;
    if (!have_prev) {
      res.first_positive = positive;
      have_prev = true;
    } else if (positive != prev_positive) {
      ++res.sign_changes;
      res.bracket_lo = prev_positive ? prev_x : x;
      res.bracket_hi = prev_positive ? x : prev_x;
    }
    prev_positive = positive;
    prev_x = x;
  }
  res.last_positive = prev_positive;
  return res;
}

double bisect_margin(const MarginFn& margin, double positive_end, double other_end) {
  double lo = positive_end, hi = other_end;
  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<double> alpha_threshold(ScenarioKind kind, double n,
                                      const MeasurementScheme& scheme,
                                      Direction direction, double mu,
                                      ThresholdMethod method) {
  if (!scheme.analytic()) {
    throw UnsupportedScheme("threshold solvers need a scheme with a criterion constant");
  }
  Scenario probe{kind, n, 0.25, mu};
  probe.validate();
  const double lhs = scheme.lhs_value();

  const bool symbolic_available = kind == ScenarioKind::SRPE && mu == 0.0;
  const bool want_symbolic =
      method == ThresholdMethod::Symbolic ||
      (method == ThresholdMethod::Auto && symbolic_available);
  if (want_symbolic) {
    if (!symbolic_available) {
      throw UnsupportedScheme("symbolic alpha thresholds cover noiseless SRPE only");
    }
    if (direction == Direction::AliceToBob) {
      // F/t_perp = 2 sqrt(alpha (n-2) / (1-alpha)) crosses lhs at
      // alpha* = lhs^2 / (4(n-2) + lhs^2).
      const double a_star = lhs * lhs / (4.0 * (n - 2.0) + lhs * lhs);
      return std::min(a_star, 0.5);
    }
    // Spoke-to-hub: steerable iff n < (3 + sqrt(1 + lhs^2)) / 2 for every alpha.
    const double n_star = 0.5 * (3.0 + std::sqrt(1.0 + lhs * lhs));
    if (n < n_star) return 0.5;
    return std::nullopt;
  }

  const MarginFn margin = [&](double alpha) {
    return lhs - f_over_tperp_closed_form(Scenario{kind, n, alpha, mu}, direction);
  };
  constexpr int kScan = 1000;
  std::vector<double> grid(kScan);
  for (int k = 1; k <= kScan; ++k) grid[k - 1] = 0.5 * k / kScan;
  const ScanResult scan = scan_margin(margin, grid);
  if (scan.sign_changes > 1) {
    throw NonMonotoneMargin("margin changes sign more than once over alpha");
  }
  if (!scan.any_positive) return std::nullopt;
  if (scan.sign_changes == 0) return 0.5;
  return bisect_margin(margin, scan.bracket_lo, scan.bracket_hi);
}

std::optional<double> n_threshold(ScenarioKind kind, const MeasurementScheme& scheme,
                                  Direction direction, double alpha, double mu,
                                  ThresholdMethod method) {
  if (!scheme.analytic()) {
    throw UnsupportedScheme("threshold solvers need a scheme with a criterion constant");
  }
  if (!(alpha > 0.0) || alpha > 0.5) {
    throw InvalidScenario("alpha must lie in (0, 1/2]");
  }
  if (mu < 0.0 || mu > 1.0) {
    throw InvalidScenario("mu must lie in [0, 1]");
  }
  const double lhs = scheme.lhs_value();

  const bool symbolic_available = kind == ScenarioKind::SRPE && mu == 0.0;
  const bool want_symbolic =
      method == ThresholdMethod::Symbolic ||
      (method == ThresholdMethod::Auto && symbolic_available);
  if (want_symbolic) {
    if (!symbolic_available) {
      throw UnsupportedScheme("symbolic n thresholds cover noiseless SRPE only");
    }
    if (direction == Direction::AliceToBob) {
      return 2.0 + lhs * lhs * (1.0 - alpha) / (4.0 * alpha);
    }
    return 0.5 * (3.0 + std::sqrt(1.0 + lhs * lhs));
  }

  const double n_min = kind == ScenarioKind::RHalfPE ? 2.0 + 1e-6 : 3.0;
  const MarginFn margin = [&](double n) {
    return lhs - f_over_tperp_closed_form(Scenario{kind, n, alpha, mu}, direction);
  };
  constexpr int kScan = 1000;
  double n_max = 100.0;
  for (;;) {
    std::vector<double> grid(kScan);
    for (int k = 0; k < kScan; ++k) {
      grid[k] = n_min + (n_max - n_min) * k / (kScan - 1);
    }
    const ScanResult scan = scan_margin(margin, grid);
    if (scan.sign_changes > 1) {
      throw NonMonotoneMargin("margin changes sign more than once over n");
    }
    if (!scan.any_positive) return std::nullopt;
    if (scan.sign_changes == 0) {
      if (n_max >= 1e6) return std::numeric_limits<double>::infinity();
      n_max *= 10.0;
      continue;
    }
    return bisect_margin(margin, scan.bracket_lo, scan.bracket_hi);
  }
}

}  // namespace steerkit
