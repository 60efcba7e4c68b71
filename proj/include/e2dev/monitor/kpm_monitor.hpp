#pragma once

#include <future>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "e2dev/xapp/context.hpp"

namespace e2dev::monitor {

struct MonitorSettings {
  std::vector<std::string> metrics;
  std::uint32_t reporting_period_ms = 1000;
  std::uint32_t granularity_ms = 1000;
};

/// Reference xApp: finds the first connected node offering a KPM function,
/// subscribes to it and keeps every decoded indication.
class KpmMonitorXapp : public xapp::XappBase {
 public:
  KpmMonitorXapp(xapp::XappOptions options, MonitorSettings settings);

  // Resolves once logic() has subscribed (or failed trying).
  std::shared_future<e2ap::RicRequestId> subscribed() const { return subscribed_; }
  std::vector<xapp::DecodedIndication> deliveries() const;
  std::string node() const;

 protected:
  void logic(xapp::XappContext& ctx) override;
  void handle_indication(const xapp::DecodedIndication& d) override;
  void handle_subscription_end(const xapp::SubscriptionEnd& e) override;

 private:
  MonitorSettings settings_;
  std::promise<e2ap::RicRequestId> promise_;
  std::shared_future<e2ap::RicRequestId> subscribed_;
  mutable std::mutex mu_;
  std::string node_;
  std::vector<xapp::DecodedIndication> deliveries_;
};

}  // namespace e2dev::monitor
