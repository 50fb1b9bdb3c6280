#include "cli_common.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace steerkit::cli {

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "rhalfpe") return ScenarioKind::RHalfPE;
  if (name == "rpe") return ScenarioKind::RPE;
  if (name == "srpe") return ScenarioKind::SRPE;
  throw InvalidScenario("unknown scenario '" + name + "' (rhalfpe|rpe|srpe)");
}

const char* scenario_to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::RHalfPE:
      return "rhalfpe";
    case ScenarioKind::RPE:
      return "rpe";
    case ScenarioKind::SRPE:
      return "srpe";
  }
  return "unknown";
}

Direction parse_direction(const std::string& name) {
  if (name == "ab") return Direction::AliceToBob;
  if (name == "ba") return Direction::BobToAlice;
  throw InvalidDirection("unknown direction '" + name + "' (ab|ba)");
}

const char* direction_to_string(Direction direction) {
  return direction == Direction::AliceToBob ? "ab" : "ba";
}

MeasurementScheme parse_scheme(const std::string& name) {
  if (name == "m2") return MeasurementScheme::two_settings();
  if (name == "m3") return MeasurementScheme::three_settings();
  if (name == "equatorial") return MeasurementScheme::equatorial();
  const auto parse_suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string tail = name.substr(prefix.size());
    if (tail.empty()) {
      throw UnsupportedScheme("scheme '" + name + "' is missing its parameter");
    }
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(tail, &used);
    } catch (const std::exception&) {
      throw UnsupportedScheme("scheme parameter in '" + name + "' is not an integer");
    }
    if (used != tail.size()) {
      throw UnsupportedScheme("scheme parameter in '" + name + "' is not an integer");
    }
    return value;
  };
  if (const auto m = parse_suffix("dihedral:")) {
    return MeasurementScheme::dihedral(*m);
  }
  if (const auto res = parse_suffix("projective:")) {
    return MeasurementScheme::all_projective(*res);
  }
  throw UnsupportedScheme("unknown scheme '" + name +
                          "' (m2|m3|dihedral:<m>|equatorial|projective:<res>)");
}

std::string scheme_to_string(const MeasurementScheme& scheme) {
  switch (scheme.kind) {
    case MeasurementScheme::Kind::TwoSettings:
      return "m2";
    case MeasurementScheme::Kind::ThreeSettings:
      return "m3";
    case MeasurementScheme::Kind::Dihedral:
      return "dihedral:" + std::to_string(scheme.m);
    case MeasurementScheme::Kind::Equatorial:
      return "equatorial";
    case MeasurementScheme::Kind::AllProjective:
      return "projective:" + std::to_string(scheme.resolution);
  }
  return "unknown";
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string token =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!token.empty()) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        throw ParameterOutOfRange("'" + token + "' is not a number");
      }
      if (used != token.size()) {
        throw ParameterOutOfRange("'" + token + "' is not a number");
      }
      values.push_back(value);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

int worker_count() {
  if (const char* env = std::getenv("STEERKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  int first_error_index = count;
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace steerkit::cli
