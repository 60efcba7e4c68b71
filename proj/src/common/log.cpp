#include "e2dev/common/log.hpp"

#include <nlohmann/json.hpp>

namespace e2dev {

void Logger::log(std::string_view id, std::string_view msg) {
  nlohmann::ordered_json j;
  j["id"] = std::string(id);
  j["msg"] = std::string(msg);
  auto line = j.dump();
  std::lock_guard lk(mu_);
  if (sink_) sink_(line);
  lines_.push_back(std::move(line));
}

std::vector<std::string> Logger::lines() const {
  std::lock_guard lk(mu_);
  return lines_;
}

}  // namespace e2dev
