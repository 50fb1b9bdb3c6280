#pragma once

#include <map>
#include <utility>

#include "steerkit/criteria.hpp"
#include "steerkit/lhs_oracle.hpp"
#include "steerkit/scenarios.hpp"

namespace steerkit {

/// Directional steering structure of one scenario instance: status of every
/// ordered party pair. Party 0 is the hub for SRPE; RHalfPE and RPE graphs
/// are vertex-transitive (all ordered pairs share one status).
struct SteeringGraph {
  ScenarioKind kind = ScenarioKind::SRPE;
  int n = 0;
  std::map<std::pair<int, int>, Verdict> edges;

  Verdict at(int from, int to) const { return edges.at({from, to}); }
};

/// Four-way taxonomy of small steering networks:
///   Case1_AllMutual:  every ordered pair steers (symmetric scenarios);
///   Case2_HubMutual:  hub <-> spokes mutually steer, spokes never;
///   Case3_HubOneWay:  hub -> spokes only;
///   Case4_NoSteering: nothing steers;
///   MixedUndecided:   any other pattern, or any Undecided edge.
enum class NetworkCase {
  Case1_AllMutual,
  Case2_HubMutual,
  Case3_HubOneWay,
  Case4_NoSteering,
  MixedUndecided,
};

/// Evaluates the relevant reduced state per ordered pair class. Spoke-spoke
/// SRPE pairs are unsteerable for every scheme: their reduced state is a
/// mixture of product states (separable), so no measurement scheme steers
/// it; this is resolved analytically to avoid spurious Undecided edges.
/// Requires integer n; AllProjective edges may come back Undecided.
SteeringGraph pairwise_matrix(const Scenario& sc, const MeasurementScheme& scheme);

NetworkCase classify(const SteeringGraph& graph);

const char* to_string(NetworkCase c);
const char* to_string(Verdict v);

}  // namespace steerkit
