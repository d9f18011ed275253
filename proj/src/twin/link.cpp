#include "vric/twin/link.hpp"

#include <algorithm>
#include <cmath>

namespace vric::twin {

namespace {
constexpr double kDbGrid = 16777216.0;  // 2^24 steps per dB
}

double quantize_db(double value_db) {
  return std::round(value_db * kDbGrid) / kDbGrid;
}

void LinkModel::normalize() {
  a_obs_db = quantize_db(a_obs_db);
  tx_dbm = quantize_db(tx_dbm);
  noise_floor_dbm = quantize_db(noise_floor_dbm);
  demod_snr_db = quantize_db(demod_snr_db);
}

double path_loss_db(double distance_m, int l_status, const LinkModel& link) {
  const double d = std::max(distance_m, link.d_min_m);
  const double base = quantize_db(20.0 * std::log10(d));
  return (l_status != 0) ? base + link.a_obs_db : base;
}

LinkQuality link_quality(double path_loss_db_value, const LinkModel& link) {
  LinkQuality q;
  q.snr_db = link.tx_dbm - path_loss_db_value - link.noise_floor_dbm;
  if (q.snr_db < link.demod_snr_db) {
    q.throughput_bps = 0.0;
  } else {
    q.throughput_bps =
        link.bandwidth_hz * std::log2(1.0 + std::pow(10.0, q.snr_db / 10.0));
  }
  return q;
}

}  // namespace vric::twin
