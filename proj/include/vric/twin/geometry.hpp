#pragma once

#include "vric/geom.hpp"

namespace vric::twin {

// Floor-standing box obstacle: axis-aligned footprint centered at `center`
// with half extents, occupying z in [0, height].
struct ObstacleBox {
  Vec2 center;
  Vec2 half_extents{0.5, 0.5};
  double height = 2.0;
  Vec2 velocity;

  [[nodiscard]] Vec2 lo() const { return center - half_extents; }
  [[nodiscard]] Vec2 hi() const { return center + half_extents; }
};

struct SegmentRectClip {
  bool hit = false;
  double t_enter = 0.0;  // segment parameters of the clipped sub-segment
  double t_exit = 0.0;
};

// Liang-Barsky clip of the closed segment a->b against the closed rectangle
// [lo, hi]. Touching the boundary counts as a hit.
SegmentRectClip clip_segment_to_rect(const Vec2& a, const Vec2& b,
                                     const Vec2& lo, const Vec2& hi);

// LoS status between two points: 1 (NLoS) iff the floor-plane projection of
// the segment crosses the obstacle footprint and the segment runs below the
// obstacle top along the crossing, else 0 (LoS). A degenerate segment
// (coincident endpoints) is LoS by convention and reported via `degenerate`.
int compute_los(const Vec3& gnb_pos, const Vec3& ue_pos, const ObstacleBox& obs,
                bool* degenerate = nullptr);

}  // namespace vric::twin
