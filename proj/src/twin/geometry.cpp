#include "vric/twin/geometry.hpp"

#include <algorithm>
#include <array>

namespace vric::twin {

SegmentRectClip clip_segment_to_rect(const Vec2& a, const Vec2& b,
                                     const Vec2& lo, const Vec2& hi) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  // p = direction against each face, q = clearance to it.
  const std::array<double, 4> p = {-dx, dx, -dy, dy};
  const std::array<double, 4> q = {a.x - lo.x, hi.x - a.x, a.y - lo.y,
                                   hi.y - a.y};

  double t0 = 0.0;
  double t1 = 1.0;
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) {
        return {};  // parallel and fully outside this slab
      }
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
  }
  if (t0 > t1) {
    return {};
  }
  return {true, t0, t1};
}

int compute_los(const Vec3& gnb_pos, const Vec3& ue_pos, const ObstacleBox& obs,
                bool* degenerate) {
  const bool degen = gnb_pos == ue_pos;
  if (degenerate != nullptr) {
    *degenerate = degen;
  }
  if (degen) {
    return 0;
  }

  const SegmentRectClip clip =
      clip_segment_to_rect(gnb_pos.xy(), ue_pos.xy(), obs.lo(), obs.hi());
  if (!clip.hit) {
    return 0;
  }

  // Heights interpolate linearly; the crossing blocks only if the segment is
  // under the obstacle top at both ends of the clipped span.
  const double z_enter = gnb_pos.z + (ue_pos.z - gnb_pos.z) * clip.t_enter;
  const double z_exit = gnb_pos.z + (ue_pos.z - gnb_pos.z) * clip.t_exit;
  return (z_enter < obs.height && z_exit < obs.height) ? 1 : 0;
}

}  // namespace vric::twin
