#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vric::sm {

// POS and VIS service-model message structures. Field names, widths and units
// follow the SM definitions: positions in cm, velocities in cm/s, angles in
// rad*100, timestamps in microseconds. Everything is integer on the wire.

inline constexpr std::int32_t kThetaMaxCentirad = 158;  // ~ +-pi/2 rad
inline constexpr std::int32_t kPhiMaxCentirad = 315;    // ~ +-pi rad

struct PosDataEntry {
  std::int16_t id = 0;      // network entity ID
  std::int32_t x = 0;       // Cartesian position (cm)
  std::int32_t y = 0;
  std::int32_t z = 0;
  std::int32_t vx = 0;      // velocity (cm/s)
  std::int32_t vy = 0;
  std::int32_t vz = 0;
  std::int32_t theta = 0;   // elevation (rad*100); boresight for cameras
  std::int32_t phi = 0;     // azimuth (rad*100)

  bool operator==(const PosDataEntry&) const = default;
};

struct PosIndication {
  std::vector<PosDataEntry> pos_stats;
  std::uint32_t len = 0;      // must equal pos_stats.size()
  std::int64_t tstamp = 0;    // report timestamp (us)

  bool operator==(const PosIndication&) const = default;
};

struct PosControl {
  std::int32_t x = 0;         // target Cartesian coordinates (cm)
  std::int32_t y = 0;
  std::int32_t z = 0;
  std::int64_t tstamp = 0;    // command timestamp (us)

  bool operator==(const PosControl&) const = default;
};

struct VisDataEntry {
  std::int16_t id = 0;        // tracked-object ID
  std::int32_t cls = 0;       // object class
  std::int32_t bbx = 0;       // bounding-box centroid (px)
  std::int32_t bby = 0;
  std::int32_t bbw = 0;       // bounding-box width/height (px), > 0
  std::int32_t bbh = 0;
  std::int32_t theta = 0;     // elevation (rad*100), camera-relative
  std::int32_t phi = 0;       // azimuth (rad*100), camera-relative
  std::int32_t r = 0;         // camera-to-object distance (cm), >= 0

  bool operator==(const VisDataEntry&) const = default;
};

struct VisIndication {
  std::vector<VisDataEntry> vis_stats;
  std::uint32_t len = 0;      // objects detected in the frame
  std::int64_t tstamp = 0;

  bool operator==(const VisIndication&) const = default;
};

// ============================================================================
// Bus envelope (artifact plumbing, not part of the SM wire tables)
// ============================================================================

enum class MsgKind { kPosIndication, kVisIndication, kPosControl };

const char* to_string(MsgKind kind);

struct BusEnvelope {
  std::string sender;           // agent identifier
  MsgKind kind = MsgKind::kPosIndication;
  std::string payload;          // encoded message bytes
  std::uint64_t delivery_tick = 0;

  bool operator==(const BusEnvelope&) const = default;
};

}  // namespace vric::sm
