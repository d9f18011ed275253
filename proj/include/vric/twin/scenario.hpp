#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vric/geom.hpp"
#include "vric/twin/geometry.hpp"
#include "vric/twin/link.hpp"

namespace vric::twin {

struct ScenarioLoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UeWaypoint {
  double t_s = 0.0;  // time at which the UE starts walking toward (x, y)
  double x = 0.0;
  double y = 0.0;
};

struct CameraSpec {
  std::int16_t id = 0;
  Vec3 position;
  double theta = 0.0;  // boresight elevation (rad)
  double phi = 0.0;    // boresight azimuth (rad)
  double fov_h = 1.5;
  double fov_v = 1.0;
  int image_w = 640;
  int image_h = 480;
  double range_max = 15.0;
};

struct ControlSpec {
  double t_ctrl_s = 0.2;
  double delta = 0.25;  // velocity increment per action (m/s)
  double v_max = 1.0;
  double x_min = 0.0;   // gNB rail bounds
  double x_max = 8.0;
};

struct TimingSpec {
  double duration_s = 25.0;
  double fps = 12.0;
  double xapp_start_s = 5.4;
};

struct NoiseSpec {
  double sigma_r_cm = 0.0;
  double sigma_angle_rad = 0.0;
  double drop_prob = 0.0;
};

struct ScenarioConfig {
  Vec3 room{8.0, 8.0, 3.0};    // extents from the origin corner
  Vec3 gnb_start{4.0, 0.0, 1.5};
  double ue_z = 1.3;
  double ue_speed = 0.6;       // m/s along the schedule
  std::vector<UeWaypoint> ue_schedule;  // first entry (t_s = 0) is the start
  ObstacleBox obstacle;
  CameraSpec gnb_camera;                // pose slaved to the gNB position
  std::vector<CameraSpec> cameras;      // external reference cameras
  LinkModel link;
  ControlSpec control;
  TimingSpec timing;
  NoiseSpec noise;

  [[nodiscard]] int frame_count() const;
  void validate() const;  // throws ScenarioLoadError
};

ScenarioConfig load_scenario(const std::filesystem::path& file);
ScenarioConfig parse_scenario(const std::string& json_text);

}  // namespace vric::twin
