#include "e2dev/net/framed_connection.hpp"

#include <array>

#include "e2dev/common/error.hpp"

namespace e2dev::net {

void WorkTracker::begin() {
  std::lock_guard lk(mu_);
  ++pending_;
}

void WorkTracker::end() {
  {
    std::lock_guard lk(mu_);
    if (pending_ > 0) --pending_;
  }
  cv_.notify_all();
}

bool WorkTracker::wait_idle(std::chrono::milliseconds timeout) {
  std::unique_lock lk(mu_);
  return cv_.wait_for(lk, timeout, [&] { return pending_ == 0; });
}

std::size_t WorkTracker::pending() const {
  std::lock_guard lk(mu_);
  return pending_;
}

FramedConnection::FramedConnection(std::unique_ptr<ByteStream> stream,
                                   std::shared_ptr<WorkTracker> tracker)
    : stream_(std::move(stream)), tracker_(std::move(tracker)) {}

FramedConnection::~FramedConnection() { close(); }

bool FramedConnection::send_frame(const Octets& frame) {
  std::lock_guard lk(send_mu_);
  if (closed_) return false;
  if (tracker_) tracker_->begin();
  try {
    stream_->write(frame);
  } catch (const TransportError&) {
    if (tracker_) tracker_->end();
    return false;
  }
  return true;
}

std::optional<Incoming> FramedConnection::receive() {
  std::array<std::uint8_t, 4096> chunk{};
  for (;;) {
    if (auto f = e2ap::try_split_frame(rx_)) {
      rx_.erase(rx_.begin(), rx_.begin() + static_cast<std::ptrdiff_t>(f->consumed));
      return Incoming{std::move(*f), WorkTicket(tracker_)};
    }
    std::size_t n = 0;
    try {
      n = stream_->read(chunk);
    } catch (const TransportError&) {
      n = 0;
    }
    if (n == 0) return std::nullopt;
    rx_.insert(rx_.end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(n));
  }
}

void FramedConnection::close() {
  {
    std::lock_guard lk(send_mu_);
    if (closed_) return;
    closed_ = true;
  }
  stream_->shutdown();
}

bool FramedConnection::closed() const {
  std::lock_guard lk(send_mu_);
  return closed_;
}

}  // namespace e2dev::net
