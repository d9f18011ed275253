#include "vric/xapp/tracker.hpp"

namespace vric::xapp {

Vec3 fuse(std::span<const Vec3> estimates) {
  if (estimates.empty()) {
    throw NoEstimateEver("fuse: no estimates");
  }
  Vec3 sum;
  for (const Vec3& e : estimates) {
    sum = sum + e;
  }
  return sum * (1.0 / static_cast<double>(estimates.size()));
}

void Tracker::update(std::int16_t entity, std::span<const Vec3> estimates,
                     std::uint64_t tick) {
  if (estimates.empty()) {
    coast(entity, tick);
    return;
  }
  const Vec3 fused = fuse(estimates);

  TrackedEntity& track = tracks_[entity];
  if (!track.ever_seen) {
    track.id = entity;
    track.position = fused;
    track.velocity = {0.0, 0.0};  // no motion evidence from one sighting
    track.ever_seen = true;
  } else {
    const double dt =
        static_cast<double>(tick - track.last_seen_tick) / fps_;
    if (dt > 0.0) {
      const Vec2 raw{(fused.x - track.position.x) / dt,
                     (fused.y - track.position.y) / dt};
      track.velocity = {alpha_ * raw.x + (1.0 - alpha_) * track.velocity.x,
                        alpha_ * raw.y + (1.0 - alpha_) * track.velocity.y};
    }
    track.position = fused;
  }
  track.last_seen_tick = tick;
  track.source_count = static_cast<int>(estimates.size());
  track.coasting = false;
}

void Tracker::coast(std::int16_t entity, std::uint64_t tick) {
  auto it = tracks_.find(entity);
  if (it == tracks_.end()) {
    return;  // nothing to coast on
  }
  TrackedEntity& track = it->second;
  track.coasting = true;
  track.source_count = 0;
  if (tick - track.last_seen_tick > stale_ticks_) {
    track.velocity = {0.0, 0.0};
  }
}

const TrackedEntity& Tracker::get(std::int16_t entity) const {
  auto it = tracks_.find(entity);
  if (it == tracks_.end() || !it->second.ever_seen) {
    throw NoEstimateEver("entity " + std::to_string(entity) +
                         " has never been estimated");
  }
  return it->second;
}

bool Tracker::has(std::int16_t entity) const {
  auto it = tracks_.find(entity);
  return it != tracks_.end() && it->second.ever_seen;
}

}  // namespace vric::xapp
