#pragma once

#include <memory>
#include <string>

#include "e2dev/net/stream.hpp"

namespace e2dev::net::detail {

std::unique_ptr<Listener> listen_inproc(const std::string& name);
std::unique_ptr<ByteStream> connect_inproc(const std::string& name);
std::unique_ptr<Listener> listen_tcp(const std::string& host, std::uint16_t port);
std::unique_ptr<ByteStream> connect_tcp(const std::string& host, std::uint16_t port);

}  // namespace e2dev::net::detail
