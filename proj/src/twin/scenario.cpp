#include "vric/twin/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vric::twin {

namespace {

using nlohmann::json;

double num(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw ScenarioLoadError(std::string("scenario: missing numeric key: ") + key);
  }
  return obj.at(key).get<double>();
}

double num_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj.at(key).is_number()) {
    throw ScenarioLoadError(std::string("scenario: key is not numeric: ") + key);
  }
  return obj.at(key).get<double>();
}

CameraSpec parse_camera(const json& j) {
  CameraSpec cam;
  cam.id = static_cast<std::int16_t>(num(j, "id"));
  cam.position = {num(j, "x"), num(j, "y"), num(j, "z")};
  cam.theta = num(j, "theta");
  cam.phi = num(j, "phi");
  cam.fov_h = num_or(j, "fov_h", cam.fov_h);
  cam.fov_v = num_or(j, "fov_v", cam.fov_v);
  cam.image_w = static_cast<int>(num_or(j, "image_w", cam.image_w));
  cam.image_h = static_cast<int>(num_or(j, "image_h", cam.image_h));
  cam.range_max = num_or(j, "range_max", cam.range_max);
  return cam;
}

}  // namespace

int ScenarioConfig::frame_count() const {
  return static_cast<int>(std::lround(timing.duration_s * timing.fps));
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& why) { throw ScenarioLoadError("scenario: " + why); };

  if (room.x <= 0 || room.y <= 0 || room.z <= 0) fail("room extents must be positive");
  if (control.x_min >= control.x_max) fail("x_bounds must satisfy x_min < x_max");
  if (control.t_ctrl_s <= 0) fail("T_ctrl_s must be positive");
  if (control.delta <= 0) fail("delta must be positive");
  if (control.v_max <= 0) fail("v_max must be positive");
  if (obstacle.half_extents.x <= 0 || obstacle.half_extents.y <= 0 ||
      obstacle.height <= 0) {
    fail("obstacle extents must be positive");
  }
  if (link.a_obs_db < 0) fail("A_obs_db must be non-negative");
  if (link.d_min_m <= 0) fail("d_min_m must be positive");
  if (timing.fps <= 0 || timing.duration_s <= 0) fail("timing must be positive");
  if (ue_schedule.empty()) fail("ue_schedule must have at least the start entry");
  if (ue_schedule.front().t_s != 0.0) fail("first ue_schedule entry must have t_s = 0");
  for (std::size_t i = 1; i < ue_schedule.size(); ++i) {
    if (ue_schedule[i].t_s < ue_schedule[i - 1].t_s) {
      fail("ue_schedule must be time-ordered");
    }
  }
  if (noise.drop_prob < 0 || noise.drop_prob >= 1) fail("drop_prob must be in [0,1)");
  if (noise.sigma_r_cm < 0 || noise.sigma_angle_rad < 0) fail("noise sigmas must be >= 0");

  auto in_room = [&](const Vec3& p) {
    return p.x >= 0 && p.x <= room.x && p.y >= 0 && p.y <= room.y && p.z >= 0 &&
           p.z <= room.z;
  };
  if (!in_room(gnb_start)) fail("gNB start outside room");
  for (const auto& wp : ue_schedule) {
    if (!in_room({wp.x, wp.y, ue_z})) fail("UE waypoint outside room");
  }
  for (const auto& cam : cameras) {
    if (!in_room(cam.position)) fail("camera outside room");
  }
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ScenarioLoadError("scenario: not a JSON object");
  }

  ScenarioConfig cfg;
  try {
    const json& room = j.at("room");
    cfg.room = {num(room, "x_m"), num(room, "y_m"), num(room, "z_m")};

    const json& gnb = j.at("gnb");
    cfg.gnb_start = {num(gnb, "x"), num(gnb, "y"), num(gnb, "z")};

    const json& ue = j.at("ue");
    cfg.ue_z = num(ue, "z");
    cfg.ue_speed = num(ue, "speed_m_s");

    for (const json& wp : j.at("ue_schedule")) {
      cfg.ue_schedule.push_back({num(wp, "t_s"), num(wp, "x"), num(wp, "y")});
    }

    const json& obs = j.at("obstacle");
    cfg.obstacle.center = {num(obs, "x"), num(obs, "y")};
    cfg.obstacle.half_extents = {num(obs, "hx"), num(obs, "hy")};
    cfg.obstacle.height = num(obs, "height");
    cfg.obstacle.velocity = {num_or(obs, "vx", 0.0), num_or(obs, "vy", 0.0)};

    cfg.gnb_camera = parse_camera(j.at("gnb_camera"));
    for (const json& cam : j.at("cameras")) {
      cfg.cameras.push_back(parse_camera(cam));
    }

    const json& link = j.at("link");
    cfg.link.a_obs_db = num(link, "A_obs_db");
    cfg.link.tx_dbm = num(link, "tx_dbm");
    cfg.link.noise_floor_dbm = num(link, "noise_dbm");
    cfg.link.bandwidth_hz = num(link, "bandwidth_hz");
    cfg.link.d_min_m = num_or(link, "d_min_m", cfg.link.d_min_m);
    cfg.link.demod_snr_db = num_or(link, "demod_snr_db", cfg.link.demod_snr_db);
    cfg.link.normalize();

    const json& ctl = j.at("control");
    cfg.control.t_ctrl_s = num(ctl, "T_ctrl_s");
    cfg.control.delta = num(ctl, "delta");
    cfg.control.v_max = num(ctl, "v_max");
    const json& bounds = ctl.at("x_bounds");
    if (!bounds.is_array() || bounds.size() != 2) {
      throw ScenarioLoadError("scenario: x_bounds must be [min, max]");
    }
    cfg.control.x_min = bounds[0].get<double>();
    cfg.control.x_max = bounds[1].get<double>();

    const json& timing = j.at("timing");
    cfg.timing.duration_s = num(timing, "duration_s");
    cfg.timing.fps = num(timing, "fps");
    cfg.timing.xapp_start_s = num_or(timing, "xapp_start_s", 0.0);

    if (j.contains("noise")) {
      const json& noise = j.at("noise");
      cfg.noise.sigma_r_cm = num_or(noise, "sigma_r_cm", 0.0);
      cfg.noise.sigma_angle_rad = num_or(noise, "sigma_angle_rad", 0.0);
      cfg.noise.drop_prob = num_or(noise, "drop_prob", 0.0);
    }
  } catch (const json::exception& e) {
    throw ScenarioLoadError(std::string("scenario: ") + e.what());
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ScenarioLoadError("cannot open scenario file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace vric::twin
