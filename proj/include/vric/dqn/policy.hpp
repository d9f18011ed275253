#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "vric/dqn/network.hpp"
#include "vric/state_vector.hpp"
#include "vric/twin/scenario.hpp"

namespace vric::dqn {

struct CorruptPolicy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Header present but inconsistent with this build (feature order, dimensions,
// format version, control constants).
struct SchemaMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PolicyNotLoaded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-feature affine map: normalized = (x - offset) / scale. Constants come
// from scenario bounds, not data statistics, so training and deployment agree
// by construction.
struct Normalization {
  std::array<double, kStateDim> offset{};
  std::array<double, kStateDim> scale{};

  [[nodiscard]] std::array<double, kStateDim> apply(const StateVector& sv) const {
    const auto raw = sv.as_array();
    std::array<double, kStateDim> out{};
    for (int i = 0; i < kStateDim; ++i) {
      out[i] = (raw[i] - offset[i]) / scale[i];
    }
    return out;
  }

  bool operator==(const Normalization&) const = default;
};

[[nodiscard]] Normalization make_normalization(const twin::ScenarioConfig& scn);

struct PolicyMeta {
  int format_version = 1;
  double delta = 0.25;
  double v_max = 1.0;
  double t_ctrl_s = 0.2;

  bool operator==(const PolicyMeta&) const = default;
};

// A trained network plus everything inference needs to interpret inputs.
struct Policy {
  QNetwork net;
  Normalization norm;
  PolicyMeta meta;

  [[nodiscard]] std::array<double, kNumActions> q_values(const StateVector& sv) const {
    const auto x = norm.apply(sv);
    const auto q = net.forward_one(std::span<const double>(x.data(), x.size()));
    return {q[0], q[1], q[2]};
  }

  // Greedy action; exact Q ties break toward the lowest action index.
  [[nodiscard]] int best_action(const StateVector& sv) const {
    const auto q = q_values(sv);
    int best = 0;
    for (int a = 1; a < kNumActions; ++a) {
      if (q[a] > q[best]) {
        best = a;
      }
    }
    return best;
  }
};

void save_policy(const Policy& policy, const std::filesystem::path& file);
Policy load_policy(const std::filesystem::path& file);
Policy parse_policy(const std::string& json_text);
std::string serialize_policy(const Policy& policy);

}  // namespace vric::dqn
