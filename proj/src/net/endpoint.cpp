#include <charconv>

#include "e2dev/common/error.hpp"
#include "e2dev/net/stream.hpp"
#include "net_internal.hpp"

namespace e2dev::net {

namespace {

struct Endpoint {
  bool inproc = false;
  std::string host;  // or inproc name
  std::uint16_t port = 0;
};

Endpoint parse_endpoint(const std::string& text) {
  static constexpr std::string_view kInproc = "inproc://";
  static constexpr std::string_view kTcp = "tcp://";
  std::string_view s = text;
  if (s.starts_with(kInproc)) {
    s.remove_prefix(kInproc.size());
    if (s.empty()) throw TransportError("empty inproc endpoint name");
    return {true, std::string(s), 0};
  }
  if (s.starts_with(kTcp)) s.remove_prefix(kTcp.size());
  const auto colon = s.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw TransportError("endpoint '" + text + "' is not host:port");
  }
  unsigned port = 0;
  const auto digits = s.substr(colon + 1);
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc{} || p != digits.data() + digits.size() || port > 65535) {
    throw TransportError("endpoint '" + text + "' has an invalid port");
  }
  return {false, std::string(s.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

}  // namespace

std::unique_ptr<Listener> listen(const std::string& endpoint) {
  const auto ep = parse_endpoint(endpoint);
  return ep.inproc ? detail::listen_inproc(ep.host) : detail::listen_tcp(ep.host, ep.port);
}

std::unique_ptr<ByteStream> connect(const std::string& endpoint) {
  const auto ep = parse_endpoint(endpoint);
  return ep.inproc ? detail::connect_inproc(ep.host) : detail::connect_tcp(ep.host, ep.port);
}

}  // namespace e2dev::net
