#include "mesonet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mesonet {

Environment environment_from_string(const std::string& s) {
  if (s == "built") return Environment::Built;
  if (s == "free") return Environment::Free;
  throw std::runtime_error("environment must be built or free, got '" + s + "'");
}

double GilbertElliott::stationary_bad() const {
  double c = p_good_to_bad + p_bad_to_good;
  if (c <= 0.0) return 0.0;
  return p_good_to_bad / c;
}

double GilbertElliott::mean_prr() const {
  double pb = stationary_bad();
  return (1.0 - pb) * prr_good + pb * prr_bad;
}

double GilbertElliott::lag_match_probability(int k) const {
  // With m(s,s') the probability two independent draws in states s and s'
  // agree, the stationary two-point law gives
  //   match(k) = E[m] + pi_g*pi_b*(m_gg - 2*m_gb + m_bb) * decay^k
  // except at lag 0 where the two draws are the same draw and always match.
  if (k == 0) return 1.0;
  double pg = stationary_good(), pb = stationary_bad();
  auto m = [](double a, double b) { return a * b + (1.0 - a) * (1.0 - b); };
  double mgg = m(prr_good, prr_good);
  double mgb = m(prr_good, prr_bad);
  double mbb = m(prr_bad, prr_bad);
  double base = pg * pg * mgg + 2.0 * pg * pb * mgb + pb * pb * mbb;
  double amp = pg * pb * (mgg - 2.0 * mgb + mbb);
  return base + amp * std::pow(correlation_decay(), k);
}

void GilbertElliottLink::seed_state(Rng& rng) {
  good = !bernoulli(rng, params.stationary_bad());
}

void step_link(GilbertElliottLink& link, Rng& rng) {
  double p = link.good ? link.params.p_good_to_bad : link.params.p_bad_to_good;
  if (bernoulli(rng, p)) link.good = !link.good;
}

int beacon_outcome(const GilbertElliottLink& link, Rng& rng) {
  return bernoulli(rng, link.current_prr()) ? 1 : 0;
}

bool attempt_outcome(const GilbertElliottLink& link, Rng& rng) {
  return bernoulli(rng, link.current_prr());
}

double sample_rssi(RssiProcess& p, double t, Rng& rng) {
  if (!p.started) {
    p.value = gaussian(rng, p.mean_dbm, p.sigma_db);
    p.started = true;
    p.last_t = t;
    return p.value;
  }
  double dt = t - p.last_t;
  if (dt < 0.0) throw std::runtime_error("rssi sampled backwards in time");
  if (dt > 0.0) {
    double rho = std::exp(-dt / p.coherence_s);
    double innovation_sigma = p.sigma_db * std::sqrt(1.0 - rho * rho);
    p.value = p.mean_dbm + (p.value - p.mean_dbm) * rho +
              gaussian(rng, 0.0, innovation_sigma);
    p.last_t = t;
  }
  return p.value;
}

Calibration Calibration::built() {
  Calibration c;
  c.env = Environment::Built;
  return c;
}

Calibration Calibration::free_space() {
  Calibration c;
  c.env = Environment::Free;
  // clean links: no bad state in practice
  c.zigbee_default = {0.0, 1.0, 1.0, 1.0};
  c.rssi_slope_db_per_decade = 10.0;
  c.rssi_sigma_db = 1.5;
  c.rssi_coherence_s = 11.6;
  c.lora_floor_dbm = -85.0;
  return c;
}

Calibration Calibration::defaults(Environment env) {
  return env == Environment::Built ? built() : free_space();
}

Calibration Calibration::placed() {
  Calibration c = built();
  c.placed_links = true;
  c.rssi_sigma_db = 4.0;
  return c;
}

GilbertElliott Calibration::link_params(double midpoint_dist_m) const {
  if (!placed_links) return zigbee_default;
  double frac = midpoint_dist_m / far_distance_m;
  double pi_bad = placed_pi_bad_near +
                  (placed_pi_bad_far - placed_pi_bad_near) * frac * frac;
  pi_bad = std::clamp(pi_bad, std::min(placed_pi_bad_near, placed_pi_bad_far),
                      std::max(placed_pi_bad_near, placed_pi_bad_far));
  GilbertElliott g;
  g.p_good_to_bad = placed_chain_speed * pi_bad;
  g.p_bad_to_good = placed_chain_speed * (1.0 - pi_bad);
  g.prr_good = placed_prr_good;
  g.prr_bad = placed_prr_bad;
  return g;
}

RssiProcess Calibration::rssi_process(double dist_m) const {
  RssiProcess p;
  double d = std::max(dist_m, 1.0);
  p.mean_dbm =
      rssi_ref_dbm - rssi_slope_db_per_decade * std::log10(d / rssi_ref_m);
  p.sigma_db = rssi_sigma_db;
  p.coherence_s = rssi_coherence_s;
  return p;
}

void Calibration::apply_overrides(const KeyValueConfig& cfg) {
  std::string profile = cfg.get_string("link_profile", placed_links ? "placed" : "default");
  if (profile == "placed") {
    bool was_placed = placed_links;
    if (!was_placed) *this = placed();
  } else if (profile == "default") {
    placed_links = false;
  } else {
    throw std::runtime_error("link_profile must be default or placed, got '" +
                             profile + "'");
  }

  zigbee_ack_s = cfg.get_double("zigbee_ack_s", zigbee_ack_s);
  zigbee_proc_s = cfg.get_double("zigbee_proc_s", zigbee_proc_s);
  backoff_min_s = cfg.get_double("backoff_min_s", backoff_min_s);
  backoff_max_s = cfg.get_double("backoff_max_s", backoff_max_s);
  retry_limit = cfg.get_int("retry_limit", retry_limit);
  lora_tx_overhead_s = cfg.get_double("lora_tx_overhead_s", lora_tx_overhead_s);
  lora_ack_s = cfg.get_double("lora_ack_s", lora_ack_s);
  lora_demodulators = cfg.get_int("lora_demodulators", lora_demodulators);
  lora_validity_s = cfg.get_double("lora_validity_s", lora_validity_s);
  beacon_period_s = cfg.get_double("beacon_period_s", beacon_period_s);

  zigbee_default.p_good_to_bad =
      cfg.get_double("ge_p_good_to_bad", zigbee_default.p_good_to_bad);
  zigbee_default.p_bad_to_good =
      cfg.get_double("ge_p_bad_to_good", zigbee_default.p_bad_to_good);
  zigbee_default.prr_good = cfg.get_double("ge_prr_good", zigbee_default.prr_good);
  zigbee_default.prr_bad = cfg.get_double("ge_prr_bad", zigbee_default.prr_bad);

  placed_prr_good = cfg.get_double("placed_prr_good", placed_prr_good);
  placed_prr_bad = cfg.get_double("placed_prr_bad", placed_prr_bad);
  placed_pi_bad_near = cfg.get_double("placed_pi_bad_near", placed_pi_bad_near);
  placed_pi_bad_far = cfg.get_double("placed_pi_bad_far", placed_pi_bad_far);
  placed_chain_speed = cfg.get_double("placed_chain_speed", placed_chain_speed);
  far_distance_m = cfg.get_double("far_distance_m", far_distance_m);

  rssi_ref_dbm = cfg.get_double("rssi_ref_dbm", rssi_ref_dbm);
  rssi_ref_m = cfg.get_double("rssi_ref_m", rssi_ref_m);
  rssi_slope_db_per_decade =
      cfg.get_double("rssi_slope_db_per_decade", rssi_slope_db_per_decade);
  rssi_sigma_db = cfg.get_double("rssi_sigma_db", rssi_sigma_db);
  rssi_coherence_s = cfg.get_double("rssi_coherence_s", rssi_coherence_s);
  lora_floor_dbm = cfg.get_double("lora_floor_dbm", lora_floor_dbm);

  if (retry_limit < 1) throw std::runtime_error("retry_limit must be >= 1");
  if (beacon_period_s <= 0.0)
    throw std::runtime_error("beacon_period_s must be > 0");
  if (backoff_min_s < 0.0 || backoff_max_s < backoff_min_s)
    throw std::runtime_error("backoff window is invalid");
}

std::pair<GilbertElliottLink, RssiProcess> calibrate_from_distance(
    double dist_m, Environment env) {
  Calibration c = Calibration::defaults(env);
  GilbertElliottLink link;
  link.params = c.link_params(dist_m);
  return {link, c.rssi_process(dist_m)};
}

}  // namespace mesonet
