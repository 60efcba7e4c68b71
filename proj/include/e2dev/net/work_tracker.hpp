#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>

namespace e2dev::net {

/// Counts frames that have been sent but not yet fully handled by their
/// receiver. When every component of a scenario shares one tracker, a zero
/// count means the system is quiescent and the virtual clock may advance.
class WorkTracker {
 public:
  void begin();
  void end();
  bool wait_idle(std::chrono::milliseconds timeout);
  std::size_t pending() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::size_t pending_ = 0;
};

// Ends one unit of tracked work when destroyed. Movable, not copyable.
class WorkTicket {
 public:
  WorkTicket() = default;
  explicit WorkTicket(std::shared_ptr<WorkTracker> t) : tracker_(std::move(t)) {}
  WorkTicket(WorkTicket&& o) noexcept : tracker_(std::move(o.tracker_)) {}
  WorkTicket& operator=(WorkTicket&& o) noexcept {
    if (this != &o) {
      release();
      tracker_ = std::move(o.tracker_);
    }
    return *this;
  }
  WorkTicket(const WorkTicket&) = delete;
  WorkTicket& operator=(const WorkTicket&) = delete;
  ~WorkTicket() { release(); }

  void release() {
    if (tracker_) {
      tracker_->end();
      tracker_.reset();
    }
  }

 private:
  std::shared_ptr<WorkTracker> tracker_;
};

}  // namespace e2dev::net
