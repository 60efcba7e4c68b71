#include "e2dev/sm/registry.hpp"

#include <mutex>

#include "e2dev/common/error.hpp"
#include "e2dev/kpm/codec.hpp"

namespace e2dev::sm {

namespace {

class KpmCodec final : public SmCodec {
 public:
  explicit KpmCodec(std::string version) : version_(std::move(version)) {}

  SmCodecKey key() const override { return {"KPM", version_}; }

  Decoded<kpm::RanFunctionDefinition> decode_function_definition(
      std::span<const std::uint8_t> octets) const override {
    return kpm::decode_ran_function_definition(octets);
  }
  Decoded<kpm::FunctionSummary> summary(std::span<const std::uint8_t> octets) const override {
    return kpm::function_definition_summary(kpm::decode_ran_function_definition(octets));
  }
  Octets encode_event_trigger(const kpm::EventTriggerDefinition& t) const override {
    return kpm::encode_event_trigger(t);
  }
  Octets encode_action_definition(const kpm::ActionDefinition& a) const override {
    return kpm::encode_action_definition(a);
  }
  Decoded<kpm::ActionDefinition> decode_action_definition(
      std::span<const std::uint8_t> octets) const override {
    return kpm::decode_action_definition(octets);
  }
  Decoded<kpm::IndicationHeader> decode_indication_header(
      std::span<const std::uint8_t> octets) const override {
    return kpm::decode_indication_header(octets);
  }
  Decoded<kpm::IndicationMessage> decode_indication_message(
      std::span<const std::uint8_t> octets) const override {
    return kpm::decode_indication_message(octets);
  }

 private:
  std::string version_;
};

Opaque keep(std::span<const std::uint8_t> octets) { return Opaque{Octets(octets.begin(), octets.end())}; }

}  // namespace

std::shared_ptr<const SmCodec> make_kpm_codec(std::string version) {
  return std::make_shared<KpmCodec>(std::move(version));
}

Decoded<kpm::RanFunctionDefinition> OpaqueFallback::decode_function_definition(
    std::span<const std::uint8_t> octets) const {
  return keep(octets);
}
Decoded<kpm::FunctionSummary> OpaqueFallback::summary(std::span<const std::uint8_t> octets) const {
  return keep(octets);
}
Octets OpaqueFallback::encode_event_trigger(const kpm::EventTriggerDefinition&) const {
  throw CodecError("no service-model codec bound: cannot encode event trigger");
}
Octets OpaqueFallback::encode_action_definition(const kpm::ActionDefinition&) const {
  throw CodecError("no service-model codec bound: cannot encode action definition");
}
Decoded<kpm::ActionDefinition> OpaqueFallback::decode_action_definition(
    std::span<const std::uint8_t> octets) const {
  return keep(octets);
}
Decoded<kpm::IndicationHeader> OpaqueFallback::decode_indication_header(
    std::span<const std::uint8_t> octets) const {
  return keep(octets);
}
Decoded<kpm::IndicationMessage> OpaqueFallback::decode_indication_message(
    std::span<const std::uint8_t> octets) const {
  return keep(octets);
}

const std::shared_ptr<const SmCodec>& opaque_fallback() {
  static const std::shared_ptr<const SmCodec> instance = std::make_shared<OpaqueFallback>();
  return instance;
}

void Registry::register_codec(const SmCodecKey& key, std::shared_ptr<const SmCodec> codec) {
  if (!codec) throw ValidationError("null codec for " + key.str());
  std::unique_lock lk(mu_);
  if (!codecs_.emplace(key, std::move(codec)).second) {
    throw ValidationError("codec already registered: " + key.str());
  }
}

bool Registry::unregister(const SmCodecKey& key) {
  std::unique_lock lk(mu_);
  return codecs_.erase(key) > 0;
}

std::shared_ptr<const SmCodec> Registry::resolve(const SmCodecKey& key) const {
  std::shared_lock lk(mu_);
  auto it = codecs_.find(key);
  return it == codecs_.end() ? nullptr : it->second;
}

std::vector<SmCodecKey> Registry::keys() const {
  std::shared_lock lk(mu_);
  std::vector<SmCodecKey> out;
  for (const auto& [k, _] : codecs_) out.push_back(k);
  return out;
}

std::shared_ptr<const SmCodec> Registry::resolve_for_function(const FunctionBindings& bindings,
                                                              std::uint16_t ran_function_id) const {
  auto b = bindings.find(ran_function_id);
  if (b == bindings.end()) return opaque_fallback();
  auto codec = resolve(b->second);
  return codec ? codec : opaque_fallback();
}

void register_default_codecs(Registry& registry) {
  registry.register_codec({"KPM", "3.00"}, make_kpm_codec("3.00"));
}

}  // namespace e2dev::sm
