#include "steerkit/scenarios.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace steerkit {

namespace {

constexpr int kMaxFullStateParties = 8;
constexpr double kIntegerTol = 1e-9;

bool is_integral(double n) { return std::abs(n - std::round(n)) <= kIntegerTol; }

}  // namespace

void Scenario::validate(bool integer_n) const {
  if (!(alpha > 0.0) || alpha > 0.5) {
    throw InvalidScenario("alpha must lie in (0, 1/2]");
  }
  if (mu < 0.0 || mu > 1.0) {
    throw InvalidScenario("mu must lie in [0, 1]");
  }
  if (integer_n && !is_integral(n)) {
    throw InvalidScenario("this operation requires an integer n");
  }
  if (kind == ScenarioKind::RHalfPE) {
    if (!(n > 2.0)) {
      throw InvalidScenario("RHalfPE requires n > 2");
    }
    if (is_integral(n) && std::lround(n) % 2 != 0) {
      throw InvalidScenario("RHalfPE requires an even number of parties");
    }
  } else {
    if (!(n >= 3.0)) {
      throw InvalidScenario("RPE/SRPE require n >= 3");
    }
  }
}

int Scenario::integral_n() const {
  if (!is_integral(n)) {
    throw InvalidScenario("n is not an integer");
  }
  return static_cast<int>(std::lround(n));
}

namespace {

// Basis-state convention: party p owns bit (N-1-p), so party 0 is the
// leftmost tensor factor.
inline int bit_of(int basis, int party, int n) { return (basis >> (n - 1 - party)) & 1; }

// Adds w * (pair placed on parties (i, j), |0><0| on everyone else).
void add_pair_term(ComplexMatrix& rho, const Eigen::Matrix4cd& pair, int i, int j,
                   int n, double w) {
  const int dim = 1 << n;
  const int others_mask = (dim - 1) & ~((1 << (n - 1 - i)) | (1 << (n - 1 - j)));
  for (int x = 0; x < dim; ++x) {
    if ((x & others_mask) != 0) continue;  // filler qubits must be |0>
    const int xi = bit_of(x, i, n), xj = bit_of(x, j, n);
    for (int y = 0; y < dim; ++y) {
      if ((y & others_mask) != (x & others_mask)) continue;
      if ((y & others_mask) != 0) continue;
      const int yi = bit_of(y, i, n), yj = bit_of(y, j, n);
      rho(x, y) += w * pair(2 * xi + xj, 2 * yi + yj);
    }
  }
}

// Enumerates perfect matchings of {0..n-1} and calls visit(pairs).
void for_each_matching(int n, std::vector<std::pair<int, int>>& pairs,
                       std::vector<bool>& used,
                       const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (!used[i]) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    visit(pairs);
    return;
  }
  used[first] = true;
  for (int j = first + 1; j < n; ++j) {
    if (used[j]) continue;
    used[j] = true;
    pairs.emplace_back(first, j);
    for_each_matching(n, pairs, used, visit);
    pairs.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

}  // namespace

MultiPartyState build_full_state(const Scenario& sc) {
  sc.validate(/*integer_n=*/true);
  const int n = sc.integral_n();
  if (n > kMaxFullStateParties) {
    throw NTooLarge("build_full_state supports at most 8 parties");
  }
  const Eigen::Matrix4cd pair = depolarize(psi_alpha(sc.alpha), sc.mu).rho;
  const int dim = 1 << n;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);

  switch (sc.kind) {
    case ScenarioKind::SRPE: {
      const double w = 1.0 / (n - 1);
      for (int j = 1; j < n; ++j) add_pair_term(rho, pair, 0, j, n, w);
      break;
    }
    case ScenarioKind::RPE: {
      // Ordered pairs (i,j) and (j,i) give identical terms (the resource
      // pair is swap-symmetric), so sum unordered pairs at double weight.
      const double w = 2.0 / (static_cast<double>(n) * (n - 1));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) add_pair_term(rho, pair, i, j, n, w);
      }
      break;
    }
    case ScenarioKind::RHalfPE: {
      // The permutation mixture collapses to the distinct perfect matchings
      // with equal weights.
      std::vector<std::pair<int, int>> pairs;
      std::vector<bool> used(n, false);
      int count = 0;
      for_each_matching(n, pairs, used,
                        [&](const std::vector<std::pair<int, int>>&) { ++count; });
      const double w = 1.0 / count;
      for_each_matching(n, pairs, used,
                        [&](const std::vector<std::pair<int, int>>& matching) {
                          for (int x = 0; x < dim; ++x) {
                            for (int y = 0; y < dim; ++y) {
                              Complex value = w;
                              for (const auto& [i, j] : matching) {
                                value *= pair(2 * bit_of(x, i, n) + bit_of(x, j, n),
                                              2 * bit_of(y, i, n) + bit_of(y, j, n));
                                if (value == Complex(0.0, 0.0)) break;
                              }
                              rho(x, y) += value;
                            }
                          }
                        });
      break;
    }
  }
  return MultiPartyState{n, rho};
}

TwoQubitState pair_marginal(const MultiPartyState& state, int i, int j) {
  const int n = state.n;
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw InvalidScenario("pair_marginal: invalid party indices");
  }
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  std::vector<int> rest;
  for (int p = 0; p < n; ++p) {
    if (p != i && p != j) rest.push_back(p);
  }
  const int rest_count = static_cast<int>(rest.size());
  for (int r = 0; r < (1 << rest_count); ++r) {
    int base = 0;
    for (int t = 0; t < rest_count; ++t) {
      if ((r >> t) & 1) base |= 1 << (n - 1 - rest[t]);
    }
    for (int xi = 0; xi < 2; ++xi) {
      for (int xj = 0; xj < 2; ++xj) {
        const int x = base | (xi << (n - 1 - i)) | (xj << (n - 1 - j));
        for (int yi = 0; yi < 2; ++yi) {
          for (int yj = 0; yj < 2; ++yj) {
            const int y = base | (yi << (n - 1 - i)) | (yj << (n - 1 - j));
            out(2 * xi + xj, 2 * yi + yj) += state.rho(x, y);
          }
        }
      }
    }
  }
  return TwoQubitState::from_matrix(out);
}

XStateParams reduced_pair_state(const Scenario& sc, Direction role) {
  sc.validate();
  const double n = sc.n;
  const double alpha = sc.alpha;
  const double nu = 1.0 - sc.mu;
  const double z1 = nu * (1.0 - 2.0 * alpha);        // Bloch z of the noisy marginal
  const double tperp_pair = 2.0 * nu * std::sqrt(alpha * (1.0 - alpha));

  XStateParams x;
  switch (sc.kind) {
    case ScenarioKind::SRPE: {
      // (1/(n-1)) rho^mu_alpha + ((n-2)/(n-1)) varrho_1^mu (x) rho_0.
      x.a = z1;
      x.b = (z1 + (n - 2.0)) / (n - 1.0);
      x.t_z = (nu + (n - 2.0) * z1) / (n - 1.0);
      x.t_x = tperp_pair / (n - 1.0);
      break;
    }
    case ScenarioKind::RHalfPE: {
      // S rho^mu_alpha + (1-S) varrho_1^mu (x) varrho_1^mu with S = 1/(n-1).
      const double s = 1.0 / (n - 1.0);
      x.a = z1;
      x.b = z1;
      x.t_z = s * nu + (1.0 - s) * z1 * z1;
      x.t_x = s * tperp_pair;
      break;
    }
    case ScenarioKind::RPE: {
      // Four-term mixture over pair placements relative to the chosen two
      // parties: both / one of them / neither hold the entangled pair.
      const double w1 = 2.0 / (n * (n - 1.0));
      const double w2 = 2.0 * (n - 2.0) / (n * (n - 1.0));
      const double w3 = (n - 2.0) * (n - 3.0) / (n * (n - 1.0));
      x.a = (w1 + w2) * z1 + (w2 + w3);
      x.b = x.a;
      x.t_z = w1 * nu + 2.0 * w2 * z1 + w3;
      x.t_x = w1 * tperp_pair;
      break;
    }
  }
  x.t_y = -x.t_x;
  if (role == Direction::BobToAlice) x = x.swapped();
  return x;
}

namespace {

double concurrence_at(ScenarioKind kind, double n, double mu, double alpha) {
  return concurrence(reduced_pair_state(Scenario{kind, n, alpha, mu}));
}

// Bisects a concurrence sign boundary between lo (sign_lo) and hi.
double bisect_boundary(ScenarioKind kind, double n, double mu, double lo, double hi,
                       bool positive_at_lo) {
  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool positive = concurrence_at(kind, n, mu, mid) > 0.0;
    if (positive == positive_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

AlphaInterval entanglement_threshold(ScenarioKind kind, double n, double mu) {
  Scenario probe{kind, n, 0.25, mu};
  probe.validate();

  AlphaInterval out;
  if (mu == 0.0) {
    switch (kind) {
      case ScenarioKind::RHalfPE: {
        // alpha(1-alpha) < 1/(n-2)^2, i.e. 1-2 alpha* = sqrt(n(n-4))/(n-2).
        if (n <= 4.0) {
          out = {false, 0.0, 0.5};
        } else {
          const double hi = 0.5 * (1.0 - std::sqrt(n * (n - 4.0)) / (n - 2.0));
          out = {false, 0.0, hi};
        }
        return out;
      }
      case ScenarioKind::RPE: {
        const double hi = 1.0 / (n * n - 4.0 * n + 5.0);
        out = {false, 0.0, std::min(hi, 0.5)};
        return out;
      }
      case ScenarioKind::SRPE:
        out = {false, 0.0, 0.5};
        return out;
    }
  }

  // Noisy case: locate the entangled alpha window by scanning the
  // concurrence sign, then sharpen each boundary by bisection.
  constexpr int kScan = 2000;
  int first = -1, last = -1;
  std::vector<double> grid(kScan);
  for (int k = 1; k <= kScan; ++k) {
    const double alpha = 0.5 * k / kScan;
    grid[k - 1] = alpha;
    if (concurrence_at(kind, n, mu, alpha) > 0.0) {
      if (first < 0) first = k - 1;
      last = k - 1;
    }
  }
  if (first < 0) {
    return out;  // empty
  }
  out.empty = false;
  if (first == 0) {
    constexpr double kEps = 1e-12;
    out.lo = concurrence_at(kind, n, mu, kEps) > 0.0
                 ? 0.0
                 : bisect_boundary(kind, n, mu, kEps, grid[0], /*positive_at_lo=*/false);
  } else {
    out.lo = bisect_boundary(kind, n, mu, grid[first - 1], grid[first],
                             /*positive_at_lo=*/false);
  }
  out.hi = (last == kScan - 1)
               ? 0.5
               : bisect_boundary(kind, n, mu, grid[last], grid[last + 1],
                                 /*positive_at_lo=*/true);
  return out;
}

}  // namespace steerkit
