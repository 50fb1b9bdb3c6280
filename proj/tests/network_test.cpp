#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <numbers>

#include "support.hpp"

using namespace steerkit;

namespace {

SteeringGraph make_graph(int n, Verdict hub_out, Verdict hub_in, Verdict spokes) {
  SteeringGraph g;
  g.kind = ScenarioKind::SRPE;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Verdict v = spokes;
      if (i == 0) v = hub_out;
      if (j == 0) v = hub_in;
      g.edges[{i, j}] = v;
    }
  }
  return g;
}

NetworkCase hub_case(double n, double alpha, const MeasurementScheme& scheme) {
  return classify(pairwise_matrix({ScenarioKind::SRPE, n, alpha, 0.0}, scheme));
}

}  // namespace

TEST_CASE("classification of hand-built graphs") {
  const Verdict S = Verdict::Steerable;
  const Verdict U = Verdict::Unsteerable;

  CHECK(classify(make_graph(4, S, S, S)) == NetworkCase::Case1_AllMutual);
  CHECK(classify(make_graph(4, S, S, U)) == NetworkCase::Case2_HubMutual);
  CHECK(classify(make_graph(4, S, U, U)) == NetworkCase::Case3_HubOneWay);
  CHECK(classify(make_graph(4, U, U, U)) == NetworkCase::Case4_NoSteering);

  // Spokes steering the hub without a return edge fits no case.
  CHECK(classify(make_graph(4, U, S, U)) == NetworkCase::MixedUndecided);
  // Any undecided edge is reported as such.
  SteeringGraph g = make_graph(3, S, U, U);
  g.edges[{1, 2}] = Verdict::Undecided;
  CHECK(classify(g) == NetworkCase::MixedUndecided);
}

TEST_CASE("string names") {
  CHECK(std::strcmp(to_string(NetworkCase::Case1_AllMutual), "all-mutual") == 0);
  CHECK(std::strcmp(to_string(NetworkCase::Case2_HubMutual), "hub-mutual") == 0);
  CHECK(std::strcmp(to_string(NetworkCase::Case3_HubOneWay), "hub-one-way") == 0);
  CHECK(std::strcmp(to_string(NetworkCase::Case4_NoSteering), "no-steering") == 0);
  CHECK(std::strcmp(to_string(NetworkCase::MixedUndecided), "mixed-or-undecided") == 0);
  CHECK(std::strcmp(to_string(Verdict::Steerable), "steerable") == 0);
  CHECK(std::strcmp(to_string(Verdict::Unsteerable), "unsteerable") == 0);
  CHECK(std::strcmp(to_string(Verdict::Undecided), "undecided") == 0);
}

TEST_CASE("hub scenario pairwise structure") {
  const SteeringGraph g = pairwise_matrix({ScenarioKind::SRPE, 4, 0.25, 0.0},
                                          MeasurementScheme::two_settings());
  CHECK(g.kind == ScenarioKind::SRPE);
  CHECK(g.n == 4);
  CHECK(g.edges.size() == 12);
  for (int j = 1; j < 4; ++j) {
    CHECK(g.at(0, j) == Verdict::Steerable);
    CHECK(g.at(j, 0) == Verdict::Unsteerable);
  }
  // Spoke pairs hold separable states; nothing steers.
  CHECK(g.at(1, 2) == Verdict::Unsteerable);
  CHECK(g.at(3, 2) == Verdict::Unsteerable);
  CHECK(classify(g) == NetworkCase::Case3_HubOneWay);
}

TEST_CASE("hub scenario case table") {
  const MeasurementScheme m2 = MeasurementScheme::two_settings();
  const MeasurementScheme m3 = MeasurementScheme::three_settings();
  const MeasurementScheme me = MeasurementScheme::equatorial();

  SUBCASE("three parties") {
    CHECK(hub_case(3, 0.25, m2) == NetworkCase::Case3_HubOneWay);
    CHECK(hub_case(3, 0.49, m2) == NetworkCase::Case3_HubOneWay);
    // Threshold alpha = 1/2 itself: strict inequality, so no steering.
    CHECK(hub_case(3, 0.5, m2) == NetworkCase::Case4_NoSteering);
    CHECK(hub_case(3, 0.25, m3) == NetworkCase::Case3_HubOneWay);
    CHECK(hub_case(3, 0.5, m3) == NetworkCase::Case3_HubOneWay);
    // The equatorial limit also reverses hub and spoke at n = 3.
    CHECK(hub_case(3, 0.25, me) == NetworkCase::Case2_HubMutual);
    CHECK(hub_case(3, 0.5, me) == NetworkCase::Case2_HubMutual);
  }

  SUBCASE("four parties") {
    CHECK(hub_case(4, 0.25, m2) == NetworkCase::Case3_HubOneWay);
    CHECK(hub_case(4, 1.0 / 3, m2) == NetworkCase::Case4_NoSteering);
    CHECK(hub_case(4, 0.45, m2) == NetworkCase::Case4_NoSteering);
    CHECK(hub_case(4, 0.45, m3) == NetworkCase::Case3_HubOneWay);
    CHECK(hub_case(4, 0.5, m3) == NetworkCase::Case4_NoSteering);
    CHECK(hub_case(4, 0.25, me) == NetworkCase::Case3_HubOneWay);
    CHECK(hub_case(4, 0.5, me) == NetworkCase::Case3_HubOneWay);
  }

  SUBCASE("larger hubs keep one-way steering iff alpha is small enough") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (const double n : {5.0, 8.0, 12.0}) {
      const double boundary = pi2 / (4 * (n - 2) + pi2);
      CHECK(hub_case(n, 0.9 * boundary, me) == NetworkCase::Case3_HubOneWay);
      CHECK(hub_case(n, std::min(0.5, 1.1 * boundary), me) ==
            NetworkCase::Case4_NoSteering);
    }
  }
}

TEST_CASE("symmetric scenarios never steer under finite schemes") {
  for (const auto& scheme :
       {MeasurementScheme::two_settings(), MeasurementScheme::three_settings(),
        MeasurementScheme::equatorial()}) {
    for (const double alpha : {0.1, 0.5}) {
      const SteeringGraph pair_graph =
          pairwise_matrix({ScenarioKind::RPE, 3, alpha, 0.0}, scheme);
      CHECK(classify(pair_graph) == NetworkCase::Case4_NoSteering);
      CHECK(pair_graph.at(0, 1) == pair_graph.at(2, 1));

      const SteeringGraph match_graph =
          pairwise_matrix({ScenarioKind::RHalfPE, 4, alpha, 0.0}, scheme);
      CHECK(classify(match_graph) == NetworkCase::Case4_NoSteering);

      const SteeringGraph pair4 =
          pairwise_matrix({ScenarioKind::RPE, 4, alpha, 0.0}, scheme);
      CHECK(classify(pair4) == NetworkCase::Case4_NoSteering);
    }
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(pairwise_matrix({ScenarioKind::SRPE, 3.5, 0.25, 0.0},
                                  MeasurementScheme::two_settings()),
                  InvalidScenario);
}
