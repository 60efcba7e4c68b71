#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "e2dev/common/hex.hpp"
#include "e2dev/kpm/types.hpp"

namespace e2dev::sm {

struct SmCodecKey {
  std::string sm_name;
  std::string version;

  std::string str() const { return sm_name + "/" + version; }
  friend auto operator<=>(const SmCodecKey&, const SmCodecKey&) = default;
};

// Payload a codec could not (or would not) decode, kept byte-for-byte.
struct Opaque {
  Octets octets;
  friend bool operator==(const Opaque&, const Opaque&) = default;
};

template <class T>
using Decoded = std::variant<T, Opaque>;

template <class T>
bool is_opaque(const Decoded<T>& d) {
  return std::holds_alternative<Opaque>(d);
}

/// Service-model codec capability set.
///
/// A registered codec decodes strictly and throws CodecError on bad octets.
/// The opaque fallback never throws on decode; it hands the octets back
/// unchanged, and its encoders throw because it has no schema.
class SmCodec {
 public:
  virtual ~SmCodec() = default;

  virtual SmCodecKey key() const = 0;
  virtual bool is_fallback() const { return false; }

  virtual Decoded<kpm::RanFunctionDefinition> decode_function_definition(
      std::span<const std::uint8_t> octets) const = 0;
  virtual Decoded<kpm::FunctionSummary> summary(std::span<const std::uint8_t> octets) const = 0;
  virtual Octets encode_event_trigger(const kpm::EventTriggerDefinition& t) const = 0;
  virtual Octets encode_action_definition(const kpm::ActionDefinition& a) const = 0;
  virtual Decoded<kpm::ActionDefinition> decode_action_definition(
      std::span<const std::uint8_t> octets) const = 0;
  virtual Decoded<kpm::IndicationHeader> decode_indication_header(
      std::span<const std::uint8_t> octets) const = 0;
  virtual Decoded<kpm::IndicationMessage> decode_indication_message(
      std::span<const std::uint8_t> octets) const = 0;
};

// KPM codec backed by e2dev::kpm.
std::shared_ptr<const SmCodec> make_kpm_codec(std::string version = "3.00");

class OpaqueFallback final : public SmCodec {
 public:
  SmCodecKey key() const override { return {"OPAQUE", ""}; }
  bool is_fallback() const override { return true; }

  Decoded<kpm::RanFunctionDefinition> decode_function_definition(
      std::span<const std::uint8_t> octets) const override;
  Decoded<kpm::FunctionSummary> summary(std::span<const std::uint8_t> octets) const override;
  Octets encode_event_trigger(const kpm::EventTriggerDefinition& t) const override;
  Octets encode_action_definition(const kpm::ActionDefinition& a) const override;
  Decoded<kpm::ActionDefinition> decode_action_definition(
      std::span<const std::uint8_t> octets) const override;
  Decoded<kpm::IndicationHeader> decode_indication_header(
      std::span<const std::uint8_t> octets) const override;
  Decoded<kpm::IndicationMessage> decode_indication_message(
      std::span<const std::uint8_t> octets) const override;
};

// ran_function_id (0..4095) -> codec key, as advertised by one node.
using FunctionBindings = std::map<std::uint16_t, SmCodecKey>;

inline constexpr std::uint16_t kMaxRanFunctionId = 4095;

/// In-process codec registry. Read-mostly: resolution takes a shared lock,
/// registration an exclusive one. Swapping a codec version is unregister
/// followed by register under the same key.
class Registry {
 public:
  // Throws ValidationError on a duplicate key.
  void register_codec(const SmCodecKey& key, std::shared_ptr<const SmCodec> codec);
  bool unregister(const SmCodecKey& key);

  std::shared_ptr<const SmCodec> resolve(const SmCodecKey& key) const;  // null if absent
  std::vector<SmCodecKey> keys() const;

  // Registered codec when `ran_function_id` is bound and the key is
  // registered, otherwise the shared OpaqueFallback. Never null.
  std::shared_ptr<const SmCodec> resolve_for_function(const FunctionBindings& bindings,
                                                      std::uint16_t ran_function_id) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<SmCodecKey, std::shared_ptr<const SmCodec>> codecs_;
};

const std::shared_ptr<const SmCodec>& opaque_fallback();

// Registers KPM/3.00.
void register_default_codecs(Registry& registry);

}  // namespace e2dev::sm
