#pragma once

#include <string>
#include <vector>

namespace e2dev::monitor {

// Accepted --type values.
const std::vector<std::string>& decode_types();

// Decodes `hex` as the given type and renders it as indented key: value
// text. With verify, the decoded value is re-encoded and must reproduce the
// input bytes. Throws CodecError (or a subclass) on any failure.
std::string decode_pretty(const std::string& type, const std::string& hex, bool verify = false);

}  // namespace e2dev::monitor
