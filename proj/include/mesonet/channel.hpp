#pragma once

#include <utility>

#include "mesonet/config.hpp"
#include "mesonet/rng.hpp"

namespace mesonet {

enum class Environment { Free, Built };

Environment environment_from_string(const std::string& s);

// Two-state bursty loss process.  The state advances once per beacon period;
// every frame attempted while the link sits in a state succeeds independently
// with that state's delivery probability.
struct GilbertElliott {
  double p_good_to_bad = 0.0;  // per step
  double p_bad_to_good = 1.0;  // per step
  double prr_good = 1.0;       // per-attempt delivery probability in Good
  double prr_bad = 1.0;        // per-attempt delivery probability in Bad

  double stationary_bad() const;
  double stationary_good() const { return 1.0 - stationary_bad(); }
  double mean_prr() const;
  // Eigenvalue of the transition matrix governing how fast state correlation
  // decays: corr(k steps) = decay^k.
  double correlation_decay() const { return 1.0 - p_good_to_bad - p_bad_to_good; }
  // Closed-form probability that two beacon outcomes k steps apart have the
  // same value, assuming the chain is stationary.
  double lag_match_probability(int k) const;
};

struct GilbertElliottLink {
  GilbertElliott params;
  bool good = true;

  void seed_state(Rng& rng);           // draw initial state from stationary law
  double current_prr() const { return good ? params.prr_good : params.prr_bad; }
};

void step_link(GilbertElliottLink& link, Rng& rng);
// One beacon reception draw at the link's current state: 1 heard, 0 lost.
int beacon_outcome(const GilbertElliottLink& link, Rng& rng);
// One data-frame attempt at the link's current state.
bool attempt_outcome(const GilbertElliottLink& link, Rng& rng);

// Mean-reverting Gaussian process for the long-radio signal strength in dBm.
// Sampling at arbitrary times bridges the gap with the exact AR(1) kernel
// exp(-dt/coherence), so irregular sampling stays consistent.
struct RssiProcess {
  double mean_dbm = -70.0;
  double sigma_db = 2.5;
  double coherence_s = 6.5;

  bool started = false;
  double value = 0.0;
  double last_t = 0.0;
};

double sample_rssi(RssiProcess& p, double t, Rng& rng);

// Radio timing and propagation constants plus the link-dynamics profiles.
// Single-hop defaults reproduce the anchor throughputs: a lone short-radio
// hop carries 29-byte frames at 77634 bps on a clean channel, the long radio
// at 4579 bps; the built profile loses about a third of short-radio frames.
struct Calibration {
  Environment env = Environment::Built;

  // short radio (multi-hop CSMA)
  double zigbee_airtime_s = 232.0 / 77634.0;
  double zigbee_ack_s = 0.0013;
  double zigbee_proc_s = 0.0016;
  double backoff_min_s = 0.00032;
  double backoff_max_s = 0.00256;
  int retry_limit = 3;

  // long radio (single-hop random access)
  double lora_airtime_s = 232.0 / 4579.0;
  double lora_tx_overhead_s = 0.00733;  // sync + scheduling before decode
  double lora_ack_s = 0.002;
  int lora_demodulators = 8;
  double lora_validity_s = 6.5;         // path-estimate freshness horizon

  double beacon_period_s = 0.030;

  // default short-radio link dynamics (distance independent)
  GilbertElliott zigbee_default{0.061040, 0.113360, 0.93, 0.18};

  // "placed links" profile for deployed meshes: relays are positioned for
  // connectivity, so links run mostly clean but fade in slow bursts whose
  // frequency grows with distance from the gateway.
  bool placed_links = false;
  double placed_prr_good = 0.985;
  double placed_prr_bad = 0.12;
  double placed_pi_bad_near = 0.04;
  double placed_pi_bad_far = 0.32;
  double placed_chain_speed = 0.008;  // p_g2b + p_b2g, sets burst dwell time
  double far_distance_m = 1200.0;

  // long-radio propagation (log-distance mean, slow gaussian fading)
  double rssi_ref_dbm = -69.0;
  double rssi_ref_m = 500.0;
  double rssi_slope_db_per_decade = 13.1;
  double rssi_sigma_db = 2.5;
  double rssi_coherence_s = 6.5;
  double lora_floor_dbm = -74.0;  // below this the gateway cannot decode

  static Calibration built();
  static Calibration free_space();
  static Calibration defaults(Environment env);
  // Built profile with placed-links dynamics, used by the deployed-mesh and
  // deployed-line scenarios.
  static Calibration placed();

  // Short-radio link dynamics for a link whose midpoint sits at the given
  // distance from the gateway.
  GilbertElliott link_params(double midpoint_dist_m) const;
  RssiProcess rssi_process(double dist_m) const;

  double lora_latency_s() const { return lora_airtime_s + lora_tx_overhead_s; }

  void apply_overrides(const KeyValueConfig& cfg);
};

// Convenience probe used by calibration tests and the analytic sweep: the
// link dynamics and signal process a node at distance d would see.
std::pair<GilbertElliottLink, RssiProcess> calibrate_from_distance(
    double dist_m, Environment env);

}  // namespace mesonet
