#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace e2dev {

// Structured log: each entry is a component id plus a message, rendered as a
// one-line JSON object {"id": ..., "msg": ...}. Sinks are optional; entries are
// also retained in memory so scenario runs can inspect them.
class Logger {
 public:
  using Sink = std::function<void(const std::string& json_line)>;

  Logger() = default;
  explicit Logger(Sink sink) : sink_(std::move(sink)) {}

  void log(std::string_view id, std::string_view msg);

  std::vector<std::string> lines() const;

 private:
  mutable std::mutex mu_;
  Sink sink_;
  std::vector<std::string> lines_;
};

}  // namespace e2dev
