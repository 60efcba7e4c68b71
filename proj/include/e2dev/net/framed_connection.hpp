#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "e2dev/common/hex.hpp"
#include "e2dev/e2ap/framing.hpp"
#include "e2dev/net/stream.hpp"
#include "e2dev/net/work_tracker.hpp"

namespace e2dev::net {

struct Incoming {
  e2ap::RawFrame frame;
  WorkTicket ticket;  // release after the frame has been fully handled
};

/// Frame-level view over a ByteStream. `send_frame` is thread-safe;
/// `receive` must be called from one reader at a time.
class FramedConnection {
 public:
  explicit FramedConnection(std::unique_ptr<ByteStream> stream,
                            std::shared_ptr<WorkTracker> tracker = nullptr);
  ~FramedConnection();

  FramedConnection(const FramedConnection&) = delete;
  FramedConnection& operator=(const FramedConnection&) = delete;

  // `frame` must be a complete encoded frame. Returns false if the stream is
  // already closed.
  bool send_frame(const Octets& frame);

  // Next frame, or nullopt at end of stream. Throws FrameError on a corrupt
  // length field.
  std::optional<Incoming> receive();

  void close();
  bool closed() const;

 private:
  std::unique_ptr<ByteStream> stream_;
  std::shared_ptr<WorkTracker> tracker_;
  mutable std::mutex send_mu_;
  bool closed_ = false;
  Octets rx_;
};

}  // namespace e2dev::net
