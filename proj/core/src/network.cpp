#include "steerkit/network.hpp"

namespace steerkit {

namespace {

Verdict verdict_of(const XStateParams& x, const MeasurementScheme& scheme,
                   Direction direction) {
  if (scheme.analytic()) {
    const CriterionReport report = steerable(x, scheme, direction);
    return report.steerable ? Verdict::Steerable : Verdict::Unsteerable;
  }
  const XStateParams oriented =
      direction == Direction::AliceToBob ? x : x.swapped();
  return classify_all_projective(oriented.to_state(), scheme.resolution).status;
}

}  // namespace

SteeringGraph pairwise_matrix(const Scenario& sc, const MeasurementScheme& scheme) {
  sc.validate(/*integer_n=*/true);
  SteeringGraph graph;
  graph.kind = sc.kind;
  graph.n = sc.integral_n();

  const XStateParams pair = reduced_pair_state(sc, Direction::AliceToBob);
  if (sc.kind == ScenarioKind::SRPE) {
    const Verdict hub_to_spoke = verdict_of(pair, scheme, Direction::AliceToBob);
    const Verdict spoke_to_hub = verdict_of(pair, scheme, Direction::BobToAlice);
    for (int j = 1; j < graph.n; ++j) {
      graph.edges[{0, j}] = hub_to_spoke;
      graph.edges[{j, 0}] = spoke_to_hub;
    }
    // Spoke-spoke reduced states are separable by construction.
    for (int i = 1; i < graph.n; ++i) {
      for (int j = 1; j < graph.n; ++j) {
        if (i != j) graph.edges[{i, j}] = Verdict::Unsteerable;
      }
    }
  } else {
    const Verdict status = verdict_of(pair, scheme, Direction::AliceToBob);
    for (int i = 0; i < graph.n; ++i) {
      for (int j = 0; j < graph.n; ++j) {
        if (i != j) graph.edges[{i, j}] = status;
      }
    }
  }
  return graph;
}

NetworkCase classify(const SteeringGraph& graph) {
  bool any_undecided = false;
  bool all_steer = true;
  bool none_steer = true;
  for (const auto& [pair, verdict] : graph.edges) {
    if (verdict == Verdict::Undecided) any_undecided = true;
    if (verdict != Verdict::Steerable) all_steer = false;
    if (verdict != Verdict::Unsteerable) none_steer = false;
  }
  if (any_undecided) return NetworkCase::MixedUndecided;
  if (all_steer) return NetworkCase::Case1_AllMutual;
  if (none_steer) return NetworkCase::Case4_NoSteering;

  // Hub patterns: check against party 0.
  bool hub_out = true, hub_in = true, spokes_silent = true;
  for (const auto& [pair, verdict] : graph.edges) {
    const auto [from, to] = pair;
    if (from == 0) {
      hub_out = hub_out && verdict == Verdict::Steerable;
    } else if (to == 0) {
      hub_in = hub_in && verdict == Verdict::Steerable;
    } else {
      spokes_silent = spokes_silent && verdict == Verdict::Unsteerable;
    }
  }
  if (hub_out && hub_in && spokes_silent) return NetworkCase::Case2_HubMutual;
  if (hub_out && spokes_silent) {
    bool hub_in_none = true;
    for (const auto& [pair, verdict] : graph.edges) {
      if (pair.second == 0 && verdict != Verdict::Unsteerable) hub_in_none = false;
    }
    if (hub_in_none) return NetworkCase::Case3_HubOneWay;
  }
  return NetworkCase::MixedUndecided;
}

const char* to_string(NetworkCase c) {
  switch (c) {
    case NetworkCase::Case1_AllMutual:
      return "all-mutual";
    case NetworkCase::Case2_HubMutual:
      return "hub-mutual";
    case NetworkCase::Case3_HubOneWay:
      return "hub-one-way";
    case NetworkCase::Case4_NoSteering:
      return "no-steering";
    case NetworkCase::MixedUndecided:
      return "mixed-or-undecided";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Steerable:
      return "steerable";
    case Verdict::Unsteerable:
      return "unsteerable";
    case Verdict::Undecided:
      return "undecided";
  }
  return "unknown";
}

}  // namespace steerkit
