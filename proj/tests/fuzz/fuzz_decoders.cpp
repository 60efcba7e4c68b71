// libFuzzer entry: the first byte picks a decoder, the rest is its input.
// Decoders may reject input with an e2dev::Error; anything else is a bug.

#include <cstddef>
#include <cstdint>
#include <span>

#include "e2dev/common/error.hpp"
#include "e2dev/e2ap/framing.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/kpm/codec.hpp"

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t* data, std::size_t size) {
  if (size == 0) return 0;
  const std::span<const std::uint8_t> in(data + 1, size - 1);
  try {
    switch (data[0] % 7) {
      case 0: e2dev::e2ap::parse(in); break;
      case 1: e2dev::e2ap::try_split_frame(in); break;
      case 2: e2dev::kpm::decode_event_trigger(in); break;
      case 3: e2dev::kpm::decode_action_definition(in); break;
      case 4: e2dev::kpm::decode_ran_function_definition(in); break;
      case 5: e2dev::kpm::decode_indication_header(in); break;
      case 6: e2dev::kpm::decode_indication_message(in); break;
    }
  } catch (const e2dev::Error&) {
  }
  return 0;
}
