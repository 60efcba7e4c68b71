#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "e2dev/e2ap/messages.hpp"

namespace e2dev::ric {

enum class ConnectionStatus { CONNECTED, DISCONNECTED };
const char* to_string(ConnectionStatus s);

// gnb_<MCC>_<MNC padded to 3 digits>_<gnb_id as 8 lowercase hex digits>
std::string inventory_name(const e2ap::GlobalE2NodeId& id);

// 32-character big-endian bit string of the gNB id.
std::string nb_id_bits(std::uint32_t gnb_id);

struct StoredFunction {
  std::string definition_hex;  // exact hex of the setup-time octets
  std::uint16_t revision = 0;
  friend bool operator==(const StoredFunction&, const StoredFunction&) = default;
};

struct NodeRecord {
  std::string inventory_name;
  e2ap::GlobalE2NodeId global_id;
  ConnectionStatus connection_status = ConnectionStatus::DISCONNECTED;
  std::map<std::uint16_t, StoredFunction> functions;
  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

// External (JSON) view of a node.
struct InventoryRecord {
  std::string inventory_name;
  std::string plmn_id;  // 6 uppercase hex chars
  std::string nb_id;    // 32-character bit string
  std::string connection_status;
  friend bool operator==(const InventoryRecord&, const InventoryRecord&) = default;
};

std::string inventory_to_json(const std::vector<InventoryRecord>& records, int indent = -1);
std::vector<InventoryRecord> inventory_from_json(const std::string& json);

struct NodeSetupEvent {
  e2ap::GlobalE2NodeId node_id;
  std::vector<e2ap::RanFunctionItem> functions;  // accepted ones only
};

struct NodeDisconnectEvent {
  std::string inventory_name;
};

using InventoryEvent = std::variant<NodeSetupEvent, NodeDisconnectEvent>;

/// Node inventory as a fold over setup/disconnect events. Replaying the same
/// event list into a fresh Inventory yields an identical snapshot.
class Inventory {
 public:
  void apply(const InventoryEvent& e);

  const NodeRecord* find(const std::string& inventory_name) const;
  const std::map<std::string, NodeRecord>& nodes() const { return nodes_; }

  // Records ordered by inventory name.
  std::vector<InventoryRecord> snapshot() const;

  static Inventory replay(const std::vector<InventoryEvent>& events);

 private:
  std::map<std::string, NodeRecord> nodes_;
};

}  // namespace e2dev::ric
