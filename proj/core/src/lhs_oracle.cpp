#include "steerkit/lhs_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "steerkit/detail/lhs_lp.hpp"
#include "steerkit/errors.hpp"

namespace steerkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

AssemblageCoords coords_from_result_settings(int settings) {
  AssemblageCoords c;
  c.plus.assign(settings, Eigen::Vector4d::Zero());
  c.total.setZero();
  return c;
}

}  // namespace

AssemblageCoords LhsModel::reconstruct_coords(int settings) const {
  AssemblageCoords coords = coords_from_result_settings(settings);
  for (const auto& entry : entries) {
    Eigen::Vector4d w;
    w << 1.0, entry.bloch;
    coords.total += entry.weight * w;
    for (int s = 0; s < settings; ++s) {
      coords.plus[s] += entry.weight * entry.p_plus[s] * w;
    }
  }
  return coords;
}

double LhsModel::reconstruction_error(const AssemblageCoords& target) const {
  const int settings = static_cast<int>(target.plus.size());
  const AssemblageCoords got = reconstruct_coords(settings);
  double err = (got.total - target.total).cwiseAbs().maxCoeff();
  for (int s = 0; s < settings; ++s) {
    // Checking + and the total pins down - as well.
    err = std::max(err, (got.plus[s] - target.plus[s]).cwiseAbs().maxCoeff());
  }
  return err;
}

double SteeringWitness::column_value(const Eigen::Vector3d& vertex) const {
  Eigen::Vector4d w;
  w << 1.0, vertex;
  double value = g.dot(w);
  for (const auto& f_s : f) {
    const double sv = f_s.dot(w);
    if (sv > 0.0) value += sv;
  }
  return value;
}

double SteeringWitness::assemblage_value(const AssemblageCoords& coords) const {
  double value = g.dot(coords.total);
  for (std::size_t s = 0; s < f.size(); ++s) {
    value += f[s].dot(coords.plus[s]);
  }
  return value;
}

double SteeringWitness::verify(const AssemblageCoords& coords,
                               const std::vector<Eigen::Vector3d>& vertices) const {
  double max_column = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) {
    max_column = std::max(max_column, column_value(v));
  }
  return assemblage_value(coords) - max_column;
}

namespace {

LhsModel model_from_lp(const detail::LhsLpResult& lp,
                       const std::vector<Eigen::Vector3d>& vertices) {
  LhsModel model;
  model.entries.reserve(lp.columns.size());
  for (std::size_t i = 0; i < lp.columns.size(); ++i) {
    LhsEntry entry;
    entry.weight = lp.weights[i];
    entry.bloch = vertices[lp.columns[i].vertex];
    entry.p_plus.assign(lp.columns[i].responses.begin(),
                        lp.columns[i].responses.end());
    model.entries.push_back(std::move(entry));
  }
  return model;
}

SteeringWitness witness_from_lp(const detail::LhsLpResult& lp, int settings) {
  SteeringWitness witness;
  witness.f.resize(settings);
  for (int s = 0; s < settings; ++s) {
    witness.f[s] = lp.dual.segment<4>(4 * s);
  }
  witness.g = lp.dual.segment<4>(4 * settings);
  return witness;
}

SteeringVerdict verdict_from_lp(const detail::LhsLpResult& lp,
                                const AssemblageCoords& coords,
                                const std::vector<Eigen::Vector3d>& vertices,
                                PolytopeMode mode) {
  SteeringVerdict verdict;
  if (mode == PolytopeMode::Inscribed) {
    verdict.inscribed_residual = lp.objective;
    if (lp.feasible) {
      verdict.status = Verdict::Unsteerable;
      verdict.model = model_from_lp(lp, vertices);
    }
    return verdict;
  }
  verdict.circumscribed_residual = lp.objective;
  if (!lp.feasible) {
    SteeringWitness witness =
        witness_from_lp(lp, static_cast<int>(coords.plus.size()));
    witness.value = witness.assemblage_value(coords);
    double max_column = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) {
      max_column = std::max(max_column, witness.column_value(v));
    }
    witness.bound = max_column;
    if (witness.value - witness.bound > 0.0) {
      verdict.status = Verdict::Steerable;
      verdict.witness = std::move(witness);
    }
    // A non-separating dual (numerically washed out) leaves Undecided.
  }
  return verdict;
}

}  // namespace

SteeringVerdict lhs_feasible(const Assemblage& asm_, const BlochPolytope& poly) {
  asm_.validate();
  if (asm_.settings() > 12) {
    throw UnsupportedScheme(
        "lhs_feasible is limited to 12 settings; use classify_all_projective");
  }
  const AssemblageCoords coords = coords_of(asm_);
  const detail::LhsLpResult lp = detail::solve_lhs_lp(coords, poly.vertices);
  return verdict_from_lp(lp, coords, poly.vertices, poly.mode);
}

namespace {

struct ProjectiveContext {
  int net_resolution = 0;
  int hidden_resolution = 0;
  double covering_cosine = 0.0;
  std::vector<Eigen::Vector3d> settings;
  BlochPolytope hidden_in;
  BlochPolytope hidden_circ;
};

ProjectiveContext make_projective_context(int resolution) {
  if (resolution < 6) {
    throw ResolutionTooLow("projective classification needs resolution >= 6");
  }
  ProjectiveContext ctx;
  ctx.net_resolution = snapped_icosphere_size(resolution);
  // The hidden polytope does not have to match the measurement net; a finer
  // hidden net only helps the feasible side.
  ctx.hidden_resolution = std::max(ctx.net_resolution, 162);

  const BlochPolytope net = icosphere(ctx.net_resolution, PolytopeMode::Inscribed);
  ctx.covering_cosine = net.covering_cosine;
  ctx.settings = antipodal_representatives(net);
  ctx.hidden_in = icosphere(ctx.hidden_resolution, PolytopeMode::Inscribed);
  ctx.hidden_circ = icosphere(ctx.hidden_resolution, PolytopeMode::Circumscribed);
  return ctx;
}

// Steerable side: the true assemblage on the net vs the circumscribed hidden
// polytope. Infeasibility is a sound steering proof because the hidden
// polytope contains the Bloch ball.
SteeringVerdict run_steerable_side(const TwoQubitState& state,
                                   const ProjectiveContext& ctx) {
  const Assemblage asm_net = assemblage_from(state, ctx.settings, Party::A);
  const AssemblageCoords coords = coords_of(asm_net);
  const detail::LhsLpResult lp = detail::solve_lhs_lp(coords, ctx.hidden_circ.vertices);
  return verdict_from_lp(lp, coords, ctx.hidden_circ.vertices,
                         PolytopeMode::Circumscribed);
}

// Unsteerable side: the formal assemblage at the inflated directions n/c.
// Every unit u obeys c u in hull(net), so u is a convex combination of the
// inflated directions; combining the found responses with the same convex
// weights models every projective measurement of the original state.
SteeringVerdict run_unsteerable_side(const TwoQubitState& state,
                                     const ProjectiveContext& ctx) {
  const PauliForm form = pauli_decompose(state);
  std::vector<Eigen::Vector3d> inflated = ctx.settings;
  for (auto& dir : inflated) dir /= ctx.covering_cosine;
  const AssemblageCoords coords = formal_coords(form, inflated);
  const detail::LhsLpResult lp = detail::solve_lhs_lp(coords, ctx.hidden_in.vertices);
  return verdict_from_lp(lp, coords, ctx.hidden_in.vertices, PolytopeMode::Inscribed);
}

}  // namespace

namespace detail_oracle {

ProjectiveAttempts classify_all_projective_attempts(const TwoQubitState& state,
                                                    int resolution) {
  const ProjectiveContext ctx = make_projective_context(resolution);
  ProjectiveAttempts out;
  out.net_resolution = ctx.net_resolution;
  out.hidden_resolution = ctx.hidden_resolution;
  out.covering_cosine = ctx.covering_cosine;
  out.steerable_attempt = run_steerable_side(state, ctx);
  out.unsteerable_attempt = run_unsteerable_side(state, ctx);
  return out;
}

}  // namespace detail_oracle

SteeringVerdict classify_all_projective(const TwoQubitState& state, int resolution) {
  const ProjectiveContext ctx = make_projective_context(resolution);
  // Run the feasibility side first and skip the second program when it
  // already decides; the residual of the skipped side stays NaN.
  SteeringVerdict inscribed = run_unsteerable_side(state, ctx);
  if (inscribed.status == Verdict::Unsteerable) return inscribed;
  SteeringVerdict circumscribed = run_steerable_side(state, ctx);
  if (circumscribed.status == Verdict::Steerable) {
    circumscribed.inscribed_residual = inscribed.inscribed_residual;
    return circumscribed;
  }
  SteeringVerdict undecided;
  undecided.inscribed_residual = inscribed.inscribed_residual;
  undecided.circumscribed_residual = circumscribed.circumscribed_residual;
  return undecided;
}

LhsModel construct_xstate_lhs_ensemble(const XStateParams& x, int m) {
  if (m < 1) {
    throw ParameterOutOfRange("dihedral order must be a positive integer");
  }
  if (std::abs(std::abs(x.t_x) - std::abs(x.t_y)) > 1e-10) {
    throw TheoremPreconditionViolated("ensemble construction requires |t_x| == |t_y|");
  }
  const double lhs = 2.0 * m * std::sin(kPi / (2.0 * m));
  const double f = f_value(x, Direction::AliceToBob);
  const double t_perp = x.t_perp();
  if (t_perp > 0.0 && lhs * t_perp > f) {
    throw StateIsSteerable("state violates the criterion; no ensemble exists");
  }
  const double gamma = f > 0.0 ? lhs * t_perp / f : 0.0;
  const double sign_x = x.t_x < 0.0 ? -1.0 : 1.0;
  const double sign_y = x.t_y < 0.0 ? -1.0 : 1.0;

  LhsModel model;
  for (const int zeta : {+1, -1}) {
    const double p = 0.5 * (1.0 + zeta * x.a);
    if (p <= 1e-15) continue;
    const double denom = 1.0 + zeta * x.a;
    const double z = (x.b + zeta * x.t_z) / denom;
    const double r_sq = 1.0 - z * z;
    if (r_sq < -1e-9) {
      throw InvalidState("hidden-state polar parameter leaves the Bloch ball");
    }
    const double r = std::sqrt(std::max(0.0, r_sq));
    for (int l = 0; l < 2 * m; ++l) {
      const double phi = kPi / 2.0 - (2.0 * l + 1.0) * kPi / (2.0 * m);
      LhsEntry entry;
      entry.weight = p / (2.0 * m);
      entry.bloch = Eigen::Vector3d(sign_x * r * std::cos(phi),
                                    sign_y * r * std::sin(phi), z);
      entry.p_plus.resize(1 + m);
      entry.p_plus[0] = zeta > 0 ? 1.0 : 0.0;  // sigma_z responds to the family
      for (int j = 0; j < m; ++j) {
        const double theta = j * kPi / m;
        const bool half = std::cos(phi - theta) > 0.0;
        entry.p_plus[1 + j] = gamma * (half ? 1.0 : 0.0) + (1.0 - gamma) * 0.5;
      }
      model.entries.push_back(std::move(entry));
    }
  }
  return model;
}

}  // namespace steerkit
