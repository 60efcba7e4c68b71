#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <mutex>

#include "e2dev/common/error.hpp"
#include "e2dev/net/stream.hpp"
#include "net_internal.hpp"

namespace e2dev::net {

namespace {

std::string errno_text(const std::string& what) { return what + ": " + std::strerror(errno); }

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  const std::string h = host == "localhost" ? "127.0.0.1" : host;
  if (::inet_pton(AF_INET, h.c_str(), &addr.sin_addr) != 1) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    addrinfo* res = nullptr;
    if (::getaddrinfo(h.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) {
      throw TransportError("cannot resolve host '" + host + "'");
    }
    addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
    ::freeaddrinfo(res);
  }
  return addr;
}

class TcpStream final : public ByteStream {
 public:
  explicit TcpStream(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  ~TcpStream() override {
    shutdown();
    ::close(fd_);
  }

  void write(std::span<const std::uint8_t> bytes) override {
    std::lock_guard lk(write_mu_);
    std::size_t off = 0;
    while (off < bytes.size()) {
      const auto n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(errno_text("send"));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::size_t read(std::span<std::uint8_t> out) override {
    for (;;) {
      const auto n = ::recv(fd_, out.data(), out.size(), 0);
      if (n >= 0) return static_cast<std::size_t>(n);
      if (errno == EINTR) continue;
      if (shut_) return 0;
      throw TransportError(errno_text("recv"));
    }
  }

  void shutdown() override {
    if (!shut_.exchange(true)) ::shutdown(fd_, SHUT_RDWR);
  }

 private:
  int fd_;
  std::mutex write_mu_;
  std::atomic<bool> shut_{false};
};

class TcpListener final : public Listener {
 public:
  TcpListener(int fd, std::string host, std::uint16_t port)
      : fd_(fd), host_(std::move(host)), port_(port) {}
  ~TcpListener() override {
    close();
    ::close(fd_);
  }

  std::unique_ptr<ByteStream> accept() override {
    for (;;) {
      const int c = ::accept(fd_, nullptr, nullptr);
      if (c >= 0) {
        if (closed_) {
          ::close(c);
          return nullptr;
        }
        return std::make_unique<TcpStream>(c);
      }
      if (errno == EINTR) continue;
      return nullptr;
    }
  }

  void close() override {
    if (!closed_.exchange(true)) ::shutdown(fd_, SHUT_RDWR);
  }

  std::string endpoint() const override { return "tcp://" + host_ + ":" + std::to_string(port_); }

 private:
  int fd_;
  std::string host_;
  std::uint16_t port_;
  std::atomic<bool> closed_{false};
};

}  // namespace

namespace detail {

std::unique_ptr<Listener> listen_tcp(const std::string& host, std::uint16_t port) {
  const auto addr = resolve(host, port);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw TransportError(errno_text("socket"));
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd, 16) != 0) {
    const auto msg = errno_text("bind " + host + ":" + std::to_string(port));
    ::close(fd);
    throw TransportError(msg);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
  return std::make_unique<TcpListener>(fd, host, ntohs(bound.sin_port));
}

std::unique_ptr<ByteStream> connect_tcp(const std::string& host, std::uint16_t port) {
  const auto addr = resolve(host, port);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw TransportError(errno_text("socket"));
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    const auto msg = errno_text("connect " + host + ":" + std::to_string(port));
    ::close(fd);
    throw TransportError(msg);
  }
  return std::make_unique<TcpStream>(fd);
}

}  // namespace detail

}  // namespace e2dev::net
