#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

namespace e2dev::net {

/// Reliable ordered byte stream. `write` and `read` may be called from
/// different threads; `shutdown` unblocks a pending `read` on either end.
class ByteStream {
 public:
  virtual ~ByteStream() = default;

  // Throws TransportError once the stream is closed.
  virtual void write(std::span<const std::uint8_t> bytes) = 0;

  // Blocks until at least one byte is available. Returns 0 at end of stream.
  virtual std::size_t read(std::span<std::uint8_t> out) = 0;

  virtual void shutdown() = 0;
};

// Connected pair of in-memory streams with unbounded buffering.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make_pipe();

class Listener {
 public:
  virtual ~Listener() = default;

  // Blocks for the next connection; returns null once closed.
  virtual std::unique_ptr<ByteStream> accept() = 0;
  virtual void close() = 0;

  // Address clients should connect to (port resolved when 0 was requested).
  virtual std::string endpoint() const = 0;
};

// Endpoints: "inproc://<name>", "tcp://<host>:<port>" or "<host>:<port>".
std::unique_ptr<Listener> listen(const std::string& endpoint);

// Throws TransportError when nothing is listening.
std::unique_ptr<ByteStream> connect(const std::string& endpoint);

}  // namespace e2dev::net
