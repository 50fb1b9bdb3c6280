#include "steerkit/detail/lhs_lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

#include "steerkit/errors.hpp"
#include "steerkit/matrix.hpp"

namespace steerkit::detail {

namespace {

constexpr double kPriceFloor = 1e-14;    // pricing noise floor (exact-residual duals)
constexpr double kFarkasMargin = 1e-10;  // early separation margin
constexpr double kDropTol = 1e-12;       // weights below this are not reported
constexpr double kInnerDrop = 1e-14;     // active weights clipped to zero
constexpr int kBatch = 16;               // columns entered per pricing round
constexpr int kStallRounds = 200;        // pricing rounds without progress

// Dense column for a hidden state at `vertex` with deterministic responses.
Eigen::VectorXd column_vector(int rows, const Eigen::Vector3d& vertex,
                              const std::vector<std::uint8_t>& responses) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(rows);
  Eigen::Vector4d w;
  w << 1.0, vertex;
  const int settings = static_cast<int>(responses.size());
  for (int s = 0; s < settings; ++s) {
    if (responses[s]) col.segment<4>(4 * s) = w;
  }
  col.segment<4>(4 * settings) = w;
  return col;
}

}  // namespace

// Feasibility is decided by projecting the target onto the cone spanned by
// the (vertex, response) columns: an active-set nonnegative least-squares
// iteration whose entering columns are found by exact pricing of the
// implicit dictionary (for a fixed vertex the best response keeps setting s
// exactly when its block scores positive against the residual). If the
// projection residual vanishes the weights are the decomposition; otherwise
// the converged residual r satisfies a.r <= 0 for every column while
// r.b = |r|^2 > 0, i.e. r is a separating (Farkas) certificate. The active
// set carries an incrementally updated thin QR factorization.
LhsLpResult solve_lhs_lp(const AssemblageCoords& target,
                         const std::vector<Eigen::Vector3d>& vertices) {
  const int k = static_cast<int>(target.plus.size());
  const int n_vertices = static_cast<int>(vertices.size());
  if (k < 1 || n_vertices < 4) {
    throw SolverNumericalFailure("LHS program needs settings and a full-dimensional net");
  }
  const int rows = 4 * (k + 1);

  Eigen::VectorXd b(rows);
  for (int s = 0; s < k; ++s) b.segment<4>(4 * s) = target.plus[s];
  b.segment<4>(4 * k) = target.total;

  // Vertex rows (1, v) for vectorized pricing.
  Eigen::MatrixXd vertex_rows(n_vertices, 4);
  for (int v = 0; v < n_vertices; ++v) {
    vertex_rows(v, 0) = 1.0;
    vertex_rows.row(v).tail<3>() = vertices[v].transpose();
  }

  const int cap = rows + 8;  // independent active columns never exceed rows
  Eigen::MatrixXd Q(rows, cap);  // orthonormal basis of the active span
  Eigen::MatrixXd R(cap, cap);   // triangular factor: A_active = Q R
  R.setZero();
  Eigen::VectorXd qtb(cap);      // Q^T b, kept in sync with Q
  std::vector<LhsColumn> cols;   // descriptors of active columns
  cols.reserve(cap);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cap);  // weights, x(0..p-1) >= 0
  int p = 0;

  Eigen::VectorXd r = b;  // residual b - A x
  Eigen::MatrixXd scores;
  Eigen::VectorXd values(n_vertices);
  Eigen::VectorXd normalized(n_vertices);
  Eigen::VectorXd vertex_norm2(n_vertices);
  for (int v = 0; v < n_vertices; ++v) {
    vertex_norm2(v) = vertices[v].squaredNorm();
  }
  std::vector<int> batch;
  batch.reserve(n_vertices);
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(k);

  auto residual_update = [&]() {
    r.noalias() = b - Q.leftCols(p) * (R.topLeftCorner(p, p) * x.head(p));
  };

  auto solve_ls = [&](Eigen::VectorXd& z) {
    z = qtb.head(p);
    R.topLeftCorner(p, p).triangularView<Eigen::Upper>().solveInPlace(z);
  };

  // Appends column a with modified Gram-Schmidt (one reorthogonalization
  // pass); returns false when a is numerically inside the active span.
  auto try_append = [&](const Eigen::VectorXd& a, LhsColumn desc) {
    Eigen::VectorXd h = Q.leftCols(p).transpose() * a;
    Eigen::VectorXd q = a - Q.leftCols(p) * h;
    const Eigen::VectorXd h2 = Q.leftCols(p).transpose() * q;
    q -= Q.leftCols(p) * h2;
    h += h2;
    const double d = q.norm();
    if (d < 1e-9 * std::max(1.0, a.norm())) return false;
    Q.col(p) = q / d;
    R.col(p).head(p) = h;
    R(p, p) = d;
    qtb(p) = Q.col(p).dot(b);
    x(p) = 0.0;
    cols.push_back(std::move(desc));
    ++p;
    return true;
  };

  auto remove_at = [&](int j) {
    const int last = p - 1;
    for (int c = j; c < last; ++c) {
      R.col(c).head(p) = R.col(c + 1).head(p);
      x(c) = x(c + 1);
    }
    cols.erase(cols.begin() + j);
    // Re-triangularize rows j..last of the shifted factor; rotating rows of
    // R rotates the matching columns of Q (and entries of Q^T b) to keep
    // A = Q R intact.
    for (int c = j; c < last; ++c) {
      Eigen::JacobiRotation<double> rot;
      rot.makeGivens(R(c, c), R(c + 1, c));
      R.topLeftCorner(p, last).applyOnTheLeft(c, c + 1, rot.adjoint());
      R(c + 1, c) = 0.0;
      Q.applyOnTheRight(c, c + 1, rot);
      qtb.head(p).applyOnTheLeft(c, c + 1, rot.adjoint());
    }
    p = last;
  };

  const long max_steps = std::max<long>(50000, 400L * rows);
  long steps = 0;
  bool farkas_exit = false;
  const char* exit_reason = "cap";
  const bool trace = std::getenv("STEERKIT_LP_TRACE") != nullptr;

  double best_q2 = std::numeric_limits<double>::infinity();
  int stalled_rounds = 0;
  double objective = r.cwiseAbs().sum();
  for (;; ++steps) {
    if (steps >= max_steps) break;  // decide from the current projection
    residual_update();
    objective = r.cwiseAbs().sum();
    if (trace && steps % 200 == 0) {
      std::fprintf(stderr, "lp trace: it=%ld active=%d obj=%.6e\n", steps, p,
                   objective);
    }
    if (objective <= 1e-12) {  // target reproduced exactly
      exit_reason = "hit";
      break;
    }

    // A long run of pricing rounds without material progress on the squared
    // distance means the projection has numerically converged; stop and let
    // the exact certificate checks downstream settle the verdict.
    const double q2 = r.squaredNorm();
    if (q2 < best_q2 * (1.0 - 1e-9) - 1e-18) {
      best_q2 = q2;
      stalled_rounds = 0;
    } else if (++stalled_rounds >= kStallRounds) {
      exit_reason = "stall";
      break;
    }

    // Exact pricing of the implicit dictionary against the residual. The raw
    // price of a vertex is the best-response column score; the normalized
    // price divides by the column norm, which ranks entering candidates by
    // the angle they make with the residual instead of by bulk.
    Eigen::Map<const Eigen::MatrixXd> y_blocks(r.data(), 4, k + 1);
    scores.noalias() = vertex_rows * y_blocks;  // n_vertices x (k+1)
    double max_value = -std::numeric_limits<double>::infinity();
    for (int v = 0; v < n_vertices; ++v) {
      double value = scores(v, k);
      int kept = 0;
      for (int s = 0; s < k; ++s) {
        const double sv = scores(v, s);
        if (sv > 0.0) {
          value += sv;
          ++kept;
        }
      }
      values(v) = value;
      max_value = std::max(max_value, value);
      normalized(v) =
          value / std::sqrt((1.0 + kept) * (1.0 + vertex_norm2(v)));
    }

    // Early separation exit: every LHS solution is a convex combination of
    // the columns (the barycenter trace row forces total weight 1), so a
    // residual with r.b > max_v price(v) already separates -- the program is
    // infeasible and r is the certificate. Feasible programs always satisfy
    // r.b <= max price, so this cannot misfire.
    if (r.dot(b) - max_value > kFarkasMargin) {
      farkas_exit = true;
      exit_reason = "farkas";
      break;
    }
    // Optimality: at the projection no column prices positive. The
    // threshold tracks the residual scale down to the double noise floor.
    const double price_tol = std::max(kPriceFloor, 1e-6 * std::sqrt(q2));
    if (max_value <= price_tol) {
      exit_reason = "priced-out";
      break;
    }

    // Enter the best-angled vertices as a batch: growing the active set a
    // block at a time reaches the final support in far fewer pricing rounds
    // than one column per round. Near convergence batching only churns the
    // active set, so the endgame reverts to single-column steps.
    double max_normalized = -std::numeric_limits<double>::infinity();
    for (int v = 0; v < n_vertices; ++v) {
      max_normalized = std::max(max_normalized, normalized(v));
    }
    batch.clear();
    for (int v = 0; v < n_vertices; ++v) {
      if (values(v) > price_tol && normalized(v) >= 0.05 * max_normalized) {
        batch.push_back(v);
      }
    }
    const int want = stalled_rounds >= 8 ? 1 : kBatch;
    const int take = std::min<int>(want, static_cast<int>(batch.size()));
    std::partial_sort(
        batch.begin(), batch.begin() + take, batch.end(),
        [&](int lhs, int rhs) { return normalized(lhs) > normalized(rhs); });

    // For a fixed vertex the best-angled response keeps the prefix of the
    // settings sorted by block score that maximizes
    // (total + sum(prefix)) / sqrt(1 + |prefix|); keeping every positive
    // block maximizes the raw price instead, which enters bulky,
    // near-parallel columns and churns the active set.
    auto append_vertex = [&](int v, bool prefix_response) {
      LhsColumn enter;
      enter.vertex = v;
      enter.responses.assign(k, 0);
      if (prefix_response) {
        ranked.clear();
        for (int s = 0; s < k; ++s) {
          if (scores(v, s) > 0.0) ranked.emplace_back(scores(v, s), s);
        }
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });
        double run = scores(v, k);
        double best = run;  // empty response: barycenter-only column
        std::size_t best_len = 0;
        for (std::size_t j = 0; j < ranked.size(); ++j) {
          run += ranked[j].first;
          const double score = run / std::sqrt(2.0 + static_cast<double>(j));
          if (score > best) {
            best = score;
            best_len = j + 1;
          }
        }
        for (std::size_t j = 0; j < best_len; ++j) {
          enter.responses[ranked[j].second] = 1;
        }
      } else {
        for (int s = 0; s < k; ++s) {
          enter.responses[s] = scores(v, s) > 0.0 ? 1 : 0;
        }
      }
      const Eigen::VectorXd a_enter =
          column_vector(rows, vertices[v], enter.responses);
      return try_append(a_enter, std::move(enter));
    };

    int appended = 0;
    for (int t = 0; t < take && p < cap; ++t) {
      if (append_vertex(batch[t], /*prefix_response=*/true)) ++appended;
    }
    if (appended == 0) {
      // The raw-best column is guaranteed independent at an inner optimum;
      // fall back to it before declaring the dictionary exhausted.
      int raw_best = 0;
      for (int v = 1; v < n_vertices; ++v) {
        if (values(v) > values(raw_best)) raw_best = v;
      }
      if (p < cap && append_vertex(raw_best, /*prefix_response=*/false)) {
        ++appended;
      }
    }
    if (appended == 0) {  // nothing independent left to add
      exit_reason = "exhausted";
      break;
    }

    // Inner nonnegativity loop: step towards the unconstrained fit on the
    // active set, dropping columns pinned at zero.
    Eigen::VectorXd z;
    for (;;) {
      solve_ls(z);
      if (!z.allFinite()) {
        throw SolverNumericalFailure("active-set solve lost to roundoff");
      }
      if (p == 0) break;
      // Columns the unconstrained fit pins at or below zero while they carry
      // no weight can leave immediately (also avoids a zero-step stall).
      bool removed = false;
      for (int i = p - 1; i >= 0; --i) {
        if (z(i) <= 0.0 && x(i) <= kInnerDrop) {
          remove_at(i);
          removed = true;
        }
      }
      if (!removed) {
        if (z.minCoeff() > 0.0) {
          x.head(p) = z;
          break;
        }
        // Step to the first nonnegativity boundary and drop the blocker.
        double alpha = 1.0;
        int blocker = -1;
        for (int i = 0; i < p; ++i) {
          if (z(i) <= 0.0) {
            const double ratio = x(i) / (x(i) - z(i));
            if (ratio < alpha) {
              alpha = ratio;
              blocker = i;
            }
          }
        }
        x.head(p) += alpha * (z - x.head(p));
        x.head(p) = x.head(p).cwiseMax(0.0);
        if (blocker >= 0) {
          x(blocker) = 0.0;
          remove_at(blocker);
        }
      }
      ++steps;
      if (steps >= max_steps) break;
    }
  }

  // Polish the final weights against the exact columns: iterative
  // refinement with the QR factors as preconditioner absorbs both the
  // factorization drift and the normal roundoff, then stray negatives are
  // clipped. The reported residual is exact.
  auto exact_residual = [&]() {
    Eigen::VectorXd rr = b;
    for (int i = 0; i < p; ++i) {
      if (x(i) == 0.0) continue;
      rr -= x(i) * column_vector(rows, vertices[cols[i].vertex], cols[i].responses);
    }
    return rr;
  };
  for (int round = 0; round < 3 && p > 0; ++round) {
    r = exact_residual();
    Eigen::VectorXd dz = Q.leftCols(p).transpose() * r;
    R.topLeftCorner(p, p).triangularView<Eigen::Upper>().solveInPlace(dz);
    x.head(p) += dz;
  }
  x.head(p) = x.head(p).cwiseMax(0.0);
  r = exact_residual();
  objective = r.cwiseAbs().sum();

  LhsLpResult result;
  result.objective = objective;
  result.feasible = !farkas_exit && objective <= tol::kLpSlack;
  result.dual = r;
  result.iterations = static_cast<int>(steps);
  if (std::getenv("STEERKIT_LP_STATS") != nullptr) {
    Eigen::Map<const Eigen::MatrixXd> y_blocks(r.data(), 4, k + 1);
    scores.noalias() = vertex_rows * y_blocks;
    double max_price = -std::numeric_limits<double>::infinity();
    for (int v = 0; v < n_vertices; ++v) {
      double value = scores(v, k);
      for (int s = 0; s < k; ++s) {
        const double sv = scores(v, s);
        if (sv > 0.0) value += sv;
      }
      max_price = std::max(max_price, value);
    }
    std::fprintf(stderr,
                 "lp: rows=%d vertices=%d iterations=%ld objective=%.3e "
                 "exit=%s gap=%.3e\n",
                 rows, n_vertices, steps, objective, exit_reason,
                 r.dot(b) - max_price);
  }
  if (result.feasible) {
    for (int i = 0; i < p; ++i) {
      if (x(i) <= kDropTol) continue;
      result.columns.push_back(cols[i]);
      result.weights.push_back(x(i));
    }
  }
  return result;
}

}  // namespace steerkit::detail
