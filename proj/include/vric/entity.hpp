#pragma once

#include <cstdint>

namespace vric {

// Entity identifiers used across POS/VIS messages and the world model.
inline constexpr std::int16_t kGnbId = 1;
inline constexpr std::int16_t kUeId = 2;
inline constexpr std::int16_t kObstacleId = 3;
inline constexpr std::int16_t kRefCamId = 10;   // external reference camera C1
inline constexpr std::int16_t kGnbCamId = 11;   // camera mounted on the gNB

// Object class codes carried in VIS data entries.
inline constexpr std::int32_t kClsPersonUe = 0;
inline constexpr std::int32_t kClsObstacle = 1;

// Agent names on the message bus.
inline constexpr const char* kRefCamAgent = "c1";
inline constexpr const char* kGnbAgent = "gnb";
inline constexpr const char* kXappAgent = "xapp";

}  // namespace vric
