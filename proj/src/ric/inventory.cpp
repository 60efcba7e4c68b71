#include "e2dev/ric/inventory.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "e2dev/common/error.hpp"

namespace e2dev::ric {

const char* to_string(ConnectionStatus s) {
  return s == ConnectionStatus::CONNECTED ? "CONNECTED" : "DISCONNECTED";
}

std::string inventory_name(const e2ap::GlobalE2NodeId& id) {
  std::string mnc = id.plmn.mnc();
  while (mnc.size() < 3) mnc.insert(mnc.begin(), '0');
  char gnb[9];
  std::snprintf(gnb, sizeof gnb, "%08x", id.gnb_id);
  return "gnb_" + id.plmn.mcc() + "_" + mnc + "_" + gnb;
}

std::string nb_id_bits(std::uint32_t gnb_id) {
  std::string s(32, '0');
  for (int i = 0; i < 32; ++i) {
    if ((gnb_id >> (31 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::string inventory_to_json(const std::vector<InventoryRecord>& records, int indent) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["inventoryName"] = r.inventory_name;
    j["globalNbId"]["plmnId"] = r.plmn_id;
    j["globalNbId"]["nbId"] = r.nb_id;
    j["connectionStatus"] = r.connection_status;
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

std::vector<InventoryRecord> inventory_from_json(const std::string& json) {
  std::vector<InventoryRecord> out;
  try {
    const auto arr = nlohmann::json::parse(json);
    for (const auto& j : arr) {
      InventoryRecord r;
      r.inventory_name = j.at("inventoryName").get<std::string>();
      r.plmn_id = j.at("globalNbId").at("plmnId").get<std::string>();
      r.nb_id = j.at("globalNbId").at("nbId").get<std::string>();
      r.connection_status = j.at("connectionStatus").get<std::string>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("bad inventory json: ") + e.what());
  }
  return out;
}

void Inventory::apply(const InventoryEvent& e) {
  if (const auto* setup = std::get_if<NodeSetupEvent>(&e)) {
    NodeRecord rec;
    rec.inventory_name = inventory_name(setup->node_id);
    rec.global_id = setup->node_id;
    rec.connection_status = ConnectionStatus::CONNECTED;
    for (const auto& f : setup->functions) {
      rec.functions[f.ran_function_id] = StoredFunction{to_hex(f.definition), f.revision};
    }
    nodes_[rec.inventory_name] = std::move(rec);
    return;
  }
  const auto& gone = std::get<NodeDisconnectEvent>(e);
  if (auto it = nodes_.find(gone.inventory_name); it != nodes_.end()) {
    it->second.connection_status = ConnectionStatus::DISCONNECTED;
  }
}

const NodeRecord* Inventory::find(const std::string& name) const {
  auto it = nodes_.find(name);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<InventoryRecord> Inventory::snapshot() const {
  std::vector<InventoryRecord> out;
  for (const auto& [name, rec] : nodes_) {
    out.push_back({name, rec.global_id.plmn.hex(), nb_id_bits(rec.global_id.gnb_id),
                   to_string(rec.connection_status)});
  }
  return out;
}

Inventory Inventory::replay(const std::vector<InventoryEvent>& events) {
  Inventory inv;
  for (const auto& e : events) inv.apply(e);
  return inv;
}

}  // namespace e2dev::ric
