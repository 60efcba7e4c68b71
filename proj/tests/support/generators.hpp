#pragma once

// Random valid values for the property and acceptance tests.

#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "e2dev/e2ap/messages.hpp"
#include "e2dev/kpm/types.hpp"

namespace e2dev::testgen {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

// Lengths skew short but sometimes hit the upper bound.
inline std::size_t length(Rng& rng, std::size_t lo, std::size_t hi) {
  if (hi > lo && uniform(rng, 0, 15) == 0) return hi;
  return uniform(rng, lo, std::min(hi, lo + 12));
}

inline std::string chars(Rng& rng, std::size_t lo, std::size_t hi) {
  std::string s(length(rng, lo, hi), '\0');
  for (auto& c : s) c = static_cast<char>(uniform(rng, 0, 255));
  return s;
}

inline Octets octets(Rng& rng, std::size_t lo, std::size_t hi) {
  Octets o(length(rng, lo, hi));
  for (auto& b : o) b = static_cast<std::uint8_t>(uniform(rng, 0, 255));
  return o;
}

inline std::vector<std::string> unique_names(Rng& rng, std::size_t lo, std::size_t hi) {
  const auto n = length(rng, lo, hi);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    auto s = chars(rng, kpm::kNameMin, kpm::kNameMax);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

inline kpm::EventTriggerDefinition event_trigger(Rng& rng) {
  return {static_cast<std::uint32_t>(uniform(rng, kpm::kPeriodMin, kpm::kPeriodMax))};
}

inline kpm::ActionDefinition action(Rng& rng) {
  return {static_cast<std::uint32_t>(uniform(rng, 0, kpm::kStyleMax)),
          unique_names(rng, kpm::kActionMetricsMin, kpm::kActionMetricsMax),
          static_cast<std::uint32_t>(uniform(rng, kpm::kPeriodMin, kpm::kPeriodMax))};
}

inline kpm::RanFunctionDefinition ran_function_definition(Rng& rng) {
  kpm::RanFunctionDefinition d;
  d.function_name = chars(rng, kpm::kNameMin, kpm::kNameMax);
  for (std::uint32_t s = 0; s <= kpm::kStyleMax; ++s) {
    if (coin(rng)) d.styles.push_back({s, unique_names(rng, 0, 8)});
  }
  if (d.styles.empty()) d.styles.push_back({static_cast<std::uint32_t>(uniform(rng, 0, 4)), {}});
  return d;
}

inline kpm::MeasValue meas_value(Rng& rng) {
  switch (uniform(rng, 0, 2)) {
    case 0: return kpm::MeasValue::integer(rng());
    case 1: return kpm::MeasValue::real(std::bit_cast<double>(rng()));  // any bit pattern, NaNs included
    default: return kpm::MeasValue::none();
  }
}

inline std::vector<kpm::MeasRecord> records(Rng& rng, std::size_t width) {
  std::vector<kpm::MeasRecord> out(uniform(rng, 0, 15) == 0 ? uniform(rng, 1, 64) : uniform(rng, 1, 3));
  for (auto& r : out) {
    for (std::size_t i = 0; i < width; ++i) r.values.push_back(meas_value(rng));
  }
  return out;
}

inline kpm::IndicationHeader indication_header(Rng& rng) {
  return {rng(), chars(rng, kpm::kNameMin, kpm::kNameMax)};
}

inline kpm::IndicationMessage indication_message(Rng& rng) {
  const auto width = uniform(rng, 0, 8);
  if (coin(rng)) return kpm::NodeLevelReport{records(rng, width)};
  kpm::PerUeReport m;
  std::set<std::string> ids;
  const auto n = uniform(rng, 0, 5);
  while (m.ue_reports.size() < n) {
    auto id = chars(rng, kpm::kUeIdMin, kpm::kUeIdMax);
    if (ids.insert(id).second) m.ue_reports.push_back({std::move(id), records(rng, width)});
  }
  return m;
}

// --- E2AP -----------------------------------------------------------------

inline e2ap::Plmn plmn(Rng& rng) {
  auto d = [&] { return static_cast<std::uint8_t>(uniform(rng, 0, 9)); };
  const std::uint8_t mnc3 = coin(rng) ? 0xF : d();
  return e2ap::Plmn{{static_cast<std::uint8_t>(d() << 4 | d()), static_cast<std::uint8_t>(mnc3 << 4 | d()),
                     static_cast<std::uint8_t>(d() << 4 | d())}};
}

inline e2ap::RicRequestId request_id(Rng& rng) {
  return {static_cast<std::uint16_t>(rng()), static_cast<std::uint16_t>(rng())};
}

inline std::uint16_t function_id(Rng& rng) { return static_cast<std::uint16_t>(uniform(rng, 0, 4095)); }
inline e2ap::Cause cause(Rng& rng) { return static_cast<e2ap::Cause>(uniform(rng, 0, e2ap::kCauseMax)); }
inline std::uint8_t action_id(Rng& rng) { return static_cast<std::uint8_t>(rng()); }

inline constexpr std::size_t kE2apKinds = 12;

// Message of variant alternative `kind` (0-based).
inline e2ap::Message e2ap_message(Rng& rng, std::size_t kind) {
  using namespace e2ap;
  auto count = [&](std::size_t lo, std::size_t hi) { return length(rng, lo, hi); };
  switch (kind) {
    case 0: {
      E2SetupRequest m{{plmn(rng), static_cast<std::uint32_t>(rng())}, {}};
      for (auto n = count(1, 6); n > 0; --n) {
        m.functions.push_back({function_id(rng), octets(rng, 0, 40),
                               static_cast<std::uint16_t>(uniform(rng, 0, kMaxRevision))});
      }
      return m;
    }
    case 1: {
      E2SetupResponse m;
      for (auto n = count(0, 6); n > 0; --n) m.accepted_ids.push_back(function_id(rng));
      for (auto n = count(0, 6); n > 0; --n) m.rejected.push_back({function_id(rng), cause(rng)});
      return m;
    }
    case 2: return E2SetupFailure{cause(rng)};
    case 3: {
      RicSubscriptionRequest m{request_id(rng), function_id(rng), octets(rng, 0, 8), {}};
      for (auto n = count(kMinActions, kMaxActions); n > 0; --n) m.actions.push_back({action_id(rng), octets(rng, 0, 40)});
      return m;
    }
    case 4: {
      RicSubscriptionResponse m{request_id(rng), {}, {}};
      for (auto n = count(0, kMaxActions); n > 0; --n) m.admitted_action_ids.push_back(action_id(rng));
      for (auto n = count(0, kMaxActions); n > 0; --n) m.not_admitted.push_back({action_id(rng), cause(rng)});
      return m;
    }
    case 5: return RicSubscriptionFailure{request_id(rng), cause(rng)};
    case 6:
      return RicIndication{request_id(rng), action_id(rng), static_cast<std::uint32_t>(rng()), octets(rng, 0, 40),
                           octets(rng, 0, 200)};
    case 7: return RicSubscriptionDeleteRequest{request_id(rng)};
    case 8: return RicSubscriptionDeleteResponse{request_id(rng)};
    case 9:
      return RicControlRequest{request_id(rng), function_id(rng), octets(rng, 0, 40), octets(rng, 0, 80), coin(rng)};
    case 10: return RicControlAcknowledge{request_id(rng)};
    default: return ErrorIndication{cause(rng)};
  }
}

}  // namespace e2dev::testgen
