#include "vric/dqn/policy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vric::dqn {

using ordered_json = nlohmann::ordered_json;

Normalization make_normalization(const twin::ScenarioConfig& scn) {
  Normalization n;
  const double x_mid = (scn.control.x_min + scn.control.x_max) / 2.0;
  const double x_half = (scn.control.x_max - scn.control.x_min) / 2.0;
  // Velocity scale covers both the gNB clamp and plausible UE walking speed.
  const double v_scale = std::max(scn.control.v_max, 1.5);

  n.offset = {x_mid, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5};
  n.scale = {x_half,   scn.room.x, scn.room.y, scn.room.x, scn.room.y, v_scale,
             v_scale,  v_scale,    v_scale,    v_scale,    0.5};
  return n;
}

std::string serialize_policy(const Policy& policy) {
  ordered_json j = ordered_json::object();
  j["format"] = "vric-policy";
  j["version"] = policy.meta.format_version;
  j["features"] = state_feature_names();
  j["control"] = {{"delta", policy.meta.delta},
                  {"v_max", policy.meta.v_max},
                  {"t_ctrl_s", policy.meta.t_ctrl_s}};
  j["normalization"] = {{"offset", policy.norm.offset},
                        {"scale", policy.norm.scale}};
  j["layers"] = ordered_json::array();
  for (const auto& layer : policy.net.layers()) {
    ordered_json lj = ordered_json::object();
    lj["in"] = layer.in_dim;
    lj["out"] = layer.out_dim;
    lj["w"] = layer.w;
    lj["b"] = layer.b;
    j["layers"].push_back(std::move(lj));
  }
  return j.dump();
}

Policy parse_policy(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw CorruptPolicy("policy file is not valid JSON");
  }

  try {
    if (!j.contains("format") || j.at("format") != "vric-policy") {
      throw SchemaMismatch("not a policy file (bad format tag)");
    }
    Policy p;
    p.meta.format_version = j.at("version").get<int>();
    if (p.meta.format_version != 1) {
      throw SchemaMismatch("unsupported policy version " +
                           std::to_string(p.meta.format_version));
    }

    const auto features = j.at("features").get<std::vector<std::string>>();
    const auto& expected = state_feature_names();
    if (features.size() != expected.size() ||
        !std::equal(features.begin(), features.end(), expected.begin())) {
      throw SchemaMismatch("policy feature order does not match this build");
    }

    const auto& ctl = j.at("control");
    p.meta.delta = ctl.at("delta").get<double>();
    p.meta.v_max = ctl.at("v_max").get<double>();
    p.meta.t_ctrl_s = ctl.at("t_ctrl_s").get<double>();

    const auto& norm = j.at("normalization");
    const auto offset = norm.at("offset").get<std::vector<double>>();
    const auto scale = norm.at("scale").get<std::vector<double>>();
    if (offset.size() != kStateDim || scale.size() != kStateDim) {
      throw SchemaMismatch("normalization vectors must have 11 entries");
    }
    std::copy(offset.begin(), offset.end(), p.norm.offset.begin());
    std::copy(scale.begin(), scale.end(), p.norm.scale.begin());
    for (double s : p.norm.scale) {
      if (s == 0.0) {
        throw SchemaMismatch("normalization scale must be non-zero");
      }
    }

    for (const auto& lj : j.at("layers")) {
      QNetwork::Layer layer;
      layer.in_dim = lj.at("in").get<std::size_t>();
      layer.out_dim = lj.at("out").get<std::size_t>();
      layer.w = lj.at("w").get<std::vector<double>>();
      layer.b = lj.at("b").get<std::vector<double>>();
      if (layer.w.size() != layer.in_dim * layer.out_dim ||
          layer.b.size() != layer.out_dim) {
        throw CorruptPolicy("layer tensor sizes disagree with declared dims");
      }
      p.net.layers().push_back(std::move(layer));
    }
    if (p.net.layers().empty()) {
      throw CorruptPolicy("policy has no layers");
    }
    for (std::size_t k = 0; k + 1 < p.net.layers().size(); ++k) {
      if (p.net.layers()[k].out_dim != p.net.layers()[k + 1].in_dim) {
        throw CorruptPolicy("layer dims do not chain");
      }
    }
    if (p.net.input_dim() != kStateDim ||
        p.net.output_dim() != static_cast<std::size_t>(kNumActions)) {
      throw SchemaMismatch("network must map 11 features to 3 actions");
    }
    return p;
  } catch (const ordered_json::exception& e) {
    throw CorruptPolicy(std::string("policy file: ") + e.what());
  }
}

void save_policy(const Policy& policy, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write policy file: " + file.string());
  }
  out << serialize_policy(policy) << '\n';
}

Policy load_policy(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw CorruptPolicy("cannot open policy file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_policy(buf.str());
}

}  // namespace vric::dqn
