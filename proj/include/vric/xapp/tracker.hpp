#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>

#include "vric/geom.hpp"

namespace vric::xapp {

struct NoEstimateEver : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Multi-perspective fusion: unweighted component-wise mean. Throws
// NoEstimateEver on an empty list (callers fall back to the track's
// last-known value).
[[nodiscard]] Vec3 fuse(std::span<const Vec3> estimates);

struct TrackedEntity {
  std::int16_t id = 0;
  Vec3 position;             // latest fused position
  Vec2 velocity;             // EMA of frame-difference velocity
  std::uint64_t last_seen_tick = 0;
  int source_count = 0;      // estimates fused on the last update
  bool ever_seen = false;
  bool coasting = false;
};

// Per-entity track keeping. Velocities come from fused position differences
// smoothed with an exponential moving average; a track that has not been
// updated within stale_timeout_ticks freezes its velocity at zero and keeps
// the last position (coasting).
class Tracker {
 public:
  Tracker(double ema_alpha, std::uint64_t stale_timeout_ticks, double fps)
      : alpha_(ema_alpha), stale_ticks_(stale_timeout_ticks), fps_(fps) {}

  // Fuses this tick's estimates into the entity's track.
  void update(std::int16_t entity, std::span<const Vec3> estimates,
              std::uint64_t tick);

  // No estimates arrived for this entity this tick.
  void coast(std::int16_t entity, std::uint64_t tick);

  [[nodiscard]] const TrackedEntity& get(std::int16_t entity) const;
  [[nodiscard]] bool has(std::int16_t entity) const;

 private:
  double alpha_;
  std::uint64_t stale_ticks_;
  double fps_;
  std::map<std::int16_t, TrackedEntity> tracks_;
};

}  // namespace vric::xapp
