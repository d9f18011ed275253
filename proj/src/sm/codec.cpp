#include "vric/sm/codec.hpp"

#include <array>
#include <cstdint>
#include <limits>

#include "json.hpp"

namespace vric::sm {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::int64_t kI16Min = std::numeric_limits<std::int16_t>::min();
constexpr std::int64_t kI16Max = std::numeric_limits<std::int16_t>::max();
constexpr std::int64_t kI32Min = std::numeric_limits<std::int32_t>::min();
constexpr std::int64_t kI32Max = std::numeric_limits<std::int32_t>::max();
constexpr std::int64_t kU32Max = std::numeric_limits<std::uint32_t>::max();
constexpr std::int64_t kI64Min = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kI64Max = std::numeric_limits<std::int64_t>::max();

ordered_json parse(std::string_view bytes) {
  ordered_json j = ordered_json::parse(bytes, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw MalformedMessage("not valid JSON");
  }
  return j;
}

const ordered_json& as_object(const ordered_json& j) {
  if (!j.is_object()) {
    throw SchemaViolation("expected a JSON object");
  }
  return j;
}

// Objects must carry exactly the listed keys, in any order; anything else is
// a schema violation (no forward-compatibility pass-through).
template <std::size_t N>
void check_keys(const ordered_json& obj, const std::array<const char*, N>& keys) {
  for (const char* key : keys) {
    if (!obj.contains(key)) {
      throw SchemaViolation(std::string("missing field: ") + key);
    }
  }
  if (obj.size() != N) {
    for (const auto& item : obj.items()) {
      bool known = false;
      for (const char* key : keys) {
        if (item.key() == key) {
          known = true;
          break;
        }
      }
      if (!known) {
        throw SchemaViolation("unknown field: " + item.key());
      }
    }
  }
}

std::int64_t require_int(const ordered_json& obj, const char* key,
                         std::int64_t lo, std::int64_t hi) {
  const auto& v = obj.at(key);
  if (v.is_number_unsigned()) {
    const std::uint64_t u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(kI64Max)) {
      throw SchemaViolation(std::string(key) + " out of range");
    }
  } else if (!v.is_number_integer()) {
    throw SchemaViolation(std::string(key) + " must be an integer");
  }
  const std::int64_t value = v.get<std::int64_t>();
  if (value < lo || value > hi) {
    throw SchemaViolation(std::string(key) + " out of range");
  }
  return value;
}

// ----------------------------------------------------------------------------
// POS data entry
// ----------------------------------------------------------------------------

constexpr std::array<const char*, 9> kPosEntryKeys = {
    "id", "x", "y", "z", "vx", "vy", "vz", "theta", "phi"};

ordered_json pos_entry_to_json(const PosDataEntry& e) {
  ordered_json j = ordered_json::object();
  j["id"] = e.id;
  j["x"] = e.x;
  j["y"] = e.y;
  j["z"] = e.z;
  j["vx"] = e.vx;
  j["vy"] = e.vy;
  j["vz"] = e.vz;
  j["theta"] = e.theta;
  j["phi"] = e.phi;
  return j;
}

PosDataEntry pos_entry_from_json(const ordered_json& j) {
  const auto& obj = as_object(j);
  check_keys(obj, kPosEntryKeys);
  PosDataEntry e;
  e.id = static_cast<std::int16_t>(require_int(obj, "id", kI16Min, kI16Max));
  e.x = static_cast<std::int32_t>(require_int(obj, "x", kI32Min, kI32Max));
  e.y = static_cast<std::int32_t>(require_int(obj, "y", kI32Min, kI32Max));
  e.z = static_cast<std::int32_t>(require_int(obj, "z", kI32Min, kI32Max));
  e.vx = static_cast<std::int32_t>(require_int(obj, "vx", kI32Min, kI32Max));
  e.vy = static_cast<std::int32_t>(require_int(obj, "vy", kI32Min, kI32Max));
  e.vz = static_cast<std::int32_t>(require_int(obj, "vz", kI32Min, kI32Max));
  e.theta = static_cast<std::int32_t>(
      require_int(obj, "theta", -kThetaMaxCentirad, kThetaMaxCentirad));
  e.phi = static_cast<std::int32_t>(
      require_int(obj, "phi", -kPhiMaxCentirad, kPhiMaxCentirad));
  return e;
}

// ----------------------------------------------------------------------------
// VIS data entry
// ----------------------------------------------------------------------------

constexpr std::array<const char*, 9> kVisEntryKeys = {
    "id", "cls", "bbx", "bby", "bbw", "bbh", "theta", "phi", "r"};

ordered_json vis_entry_to_json(const VisDataEntry& e) {
  ordered_json j = ordered_json::object();
  j["id"] = e.id;
  j["cls"] = e.cls;
  j["bbx"] = e.bbx;
  j["bby"] = e.bby;
  j["bbw"] = e.bbw;
  j["bbh"] = e.bbh;
  j["theta"] = e.theta;
  j["phi"] = e.phi;
  j["r"] = e.r;
  return j;
}

VisDataEntry vis_entry_from_json(const ordered_json& j) {
  const auto& obj = as_object(j);
  check_keys(obj, kVisEntryKeys);
  VisDataEntry e;
  e.id = static_cast<std::int16_t>(require_int(obj, "id", kI16Min, kI16Max));
  e.cls = static_cast<std::int32_t>(require_int(obj, "cls", kI32Min, kI32Max));
  e.bbx = static_cast<std::int32_t>(require_int(obj, "bbx", kI32Min, kI32Max));
  e.bby = static_cast<std::int32_t>(require_int(obj, "bby", kI32Min, kI32Max));
  e.bbw = static_cast<std::int32_t>(require_int(obj, "bbw", 1, kI32Max));
  e.bbh = static_cast<std::int32_t>(require_int(obj, "bbh", 1, kI32Max));
  e.theta = static_cast<std::int32_t>(
      require_int(obj, "theta", -kThetaMaxCentirad, kThetaMaxCentirad));
  e.phi = static_cast<std::int32_t>(
      require_int(obj, "phi", -kPhiMaxCentirad, kPhiMaxCentirad));
  e.r = static_cast<std::int32_t>(require_int(obj, "r", 0, kI32Max));
  return e;
}

void check_len(std::uint32_t len, std::size_t actual) {
  if (len != actual) {
    throw LengthMismatch("len=" + std::to_string(len) + " but " +
                         std::to_string(actual) + " entries");
  }
}

}  // namespace

// ----------------------------------------------------------------------------
// Indications and control
// ----------------------------------------------------------------------------

std::string encode_pos_indication(const PosIndication& msg) {
  check_len(msg.len, msg.pos_stats.size());
  ordered_json j = ordered_json::object();
  j["pos_stats"] = ordered_json::array();
  for (const auto& e : msg.pos_stats) {
    j["pos_stats"].push_back(pos_entry_to_json(e));
  }
  j["len"] = msg.len;
  j["tstamp"] = msg.tstamp;
  return j.dump();
}

PosIndication decode_pos_indication(std::string_view bytes) {
  const ordered_json j = parse(bytes);
  const auto& obj = as_object(j);
  check_keys(obj, std::array<const char*, 3>{"pos_stats", "len", "tstamp"});
  if (!obj.at("pos_stats").is_array()) {
    throw SchemaViolation("pos_stats must be an array");
  }
  PosIndication msg;
  for (const auto& item : obj.at("pos_stats")) {
    msg.pos_stats.push_back(pos_entry_from_json(item));
  }
  msg.len = static_cast<std::uint32_t>(require_int(obj, "len", 0, kU32Max));
  msg.tstamp = require_int(obj, "tstamp", kI64Min, kI64Max);
  check_len(msg.len, msg.pos_stats.size());
  return msg;
}

std::string encode_vis_indication(const VisIndication& msg) {
  check_len(msg.len, msg.vis_stats.size());
  ordered_json j = ordered_json::object();
  j["vis_stats"] = ordered_json::array();
  for (const auto& e : msg.vis_stats) {
    j["vis_stats"].push_back(vis_entry_to_json(e));
  }
  j["len"] = msg.len;
  j["tstamp"] = msg.tstamp;
  return j.dump();
}

VisIndication decode_vis_indication(std::string_view bytes) {
  const ordered_json j = parse(bytes);
  const auto& obj = as_object(j);
  check_keys(obj, std::array<const char*, 3>{"vis_stats", "len", "tstamp"});
  if (!obj.at("vis_stats").is_array()) {
    throw SchemaViolation("vis_stats must be an array");
  }
  VisIndication msg;
  for (const auto& item : obj.at("vis_stats")) {
    msg.vis_stats.push_back(vis_entry_from_json(item));
  }
  msg.len = static_cast<std::uint32_t>(require_int(obj, "len", 0, kU32Max));
  msg.tstamp = require_int(obj, "tstamp", kI64Min, kI64Max);
  check_len(msg.len, msg.vis_stats.size());
  return msg;
}

std::string encode_pos_control(const PosControl& msg) {
  ordered_json j = ordered_json::object();
  j["x"] = msg.x;
  j["y"] = msg.y;
  j["z"] = msg.z;
  j["tstamp"] = msg.tstamp;
  return j.dump();
}

PosControl decode_pos_control(std::string_view bytes) {
  const ordered_json j = parse(bytes);
  const auto& obj = as_object(j);
  check_keys(obj, std::array<const char*, 4>{"x", "y", "z", "tstamp"});
  PosControl msg;
  msg.x = static_cast<std::int32_t>(require_int(obj, "x", kI32Min, kI32Max));
  msg.y = static_cast<std::int32_t>(require_int(obj, "y", kI32Min, kI32Max));
  msg.z = static_cast<std::int32_t>(require_int(obj, "z", kI32Min, kI32Max));
  msg.tstamp = require_int(obj, "tstamp", kI64Min, kI64Max);
  return msg;
}

std::string encode_pos_entry(const PosDataEntry& entry) {
  return pos_entry_to_json(entry).dump();
}

PosDataEntry decode_pos_entry(std::string_view bytes) {
  return pos_entry_from_json(parse(bytes));
}

std::string encode_vis_entry(const VisDataEntry& entry) {
  return vis_entry_to_json(entry).dump();
}

VisDataEntry decode_vis_entry(std::string_view bytes) {
  return vis_entry_from_json(parse(bytes));
}

// ----------------------------------------------------------------------------
// Bus envelope
// ----------------------------------------------------------------------------

const char* to_string(MsgKind kind) {
  switch (kind) {
    case MsgKind::kPosIndication: return "POS_IND";
    case MsgKind::kVisIndication: return "VIS_IND";
    case MsgKind::kPosControl: return "POS_CTRL";
  }
  return "UNKNOWN";
}

namespace {

MsgKind kind_from_string(const std::string& s) {
  if (s == "POS_IND") return MsgKind::kPosIndication;
  if (s == "VIS_IND") return MsgKind::kVisIndication;
  if (s == "POS_CTRL") return MsgKind::kPosControl;
  throw SchemaViolation("unknown message kind: " + s);
}

}  // namespace

std::string encode_envelope(const BusEnvelope& env) {
  ordered_json j = ordered_json::object();
  j["sender"] = env.sender;
  j["kind"] = to_string(env.kind);
  j["payload"] = env.payload;
  j["delivery_tick"] = env.delivery_tick;
  return j.dump();
}

BusEnvelope decode_envelope(std::string_view bytes) {
  const ordered_json j = parse(bytes);
  const auto& obj = as_object(j);
  check_keys(obj,
             std::array<const char*, 4>{"sender", "kind", "payload", "delivery_tick"});
  if (!obj.at("sender").is_string() || !obj.at("kind").is_string() ||
      !obj.at("payload").is_string()) {
    throw SchemaViolation("envelope fields have wrong types");
  }
  BusEnvelope env;
  env.sender = obj.at("sender").get<std::string>();
  env.kind = kind_from_string(obj.at("kind").get<std::string>());
  env.payload = obj.at("payload").get<std::string>();
  const auto& tick = obj.at("delivery_tick");
  if (!tick.is_number_unsigned() && !tick.is_number_integer()) {
    throw SchemaViolation("delivery_tick must be an integer");
  }
  const std::int64_t t = tick.get<std::int64_t>();
  if (t < 0) {
    throw SchemaViolation("delivery_tick must be non-negative");
  }
  env.delivery_tick = static_cast<std::uint64_t>(t);
  return env;
}

}  // namespace vric::sm
