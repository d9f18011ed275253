#pragma once

namespace vric::twin {

// Analytic link-quality proxy. Path loss follows the log-distance model with
// a fixed obstacle attenuation term:
//
//   PL_dB(d, L) = 20*log10(d) + A_obs * L,   L in {0, 1}
//
// All dB quantities are snapped to a 2^-24 dB grid (~6e-8 dB). On that grid,
// sums and differences of dB values of this magnitude are exact in double
// precision, so PL(d,1) - PL(d,0) == A_obs holds bit-for-bit and SNR drops by
// exactly A_obs across a LoS->NLoS transition.
[[nodiscard]] double quantize_db(double value_db);

struct LinkModel {
  double a_obs_db = 25.0;        // obstacle attenuation
  double tx_dbm = 0.0;           // transmit power
  double noise_floor_dbm = -90.0;
  double bandwidth_hz = 20e6;
  double d_min_m = 0.1;          // minimum modeled distance
  double demod_snr_db = -5.0;    // below this, throughput is 0

  // Snaps every dB-valued field to the quantization grid.
  void normalize();
};

// Distance is clamped to >= d_min before evaluation.
[[nodiscard]] double path_loss_db(double distance_m, int l_status,
                                  const LinkModel& link);

struct LinkQuality {
  double snr_db = 0.0;
  double throughput_bps = 0.0;
};

// snr = tx - pl - noise_floor; throughput = B*log2(1 + 10^(snr/10)), floored
// to 0 below the demodulation threshold.
[[nodiscard]] LinkQuality link_quality(double path_loss_db_value,
                                       const LinkModel& link);

}  // namespace vric::twin
