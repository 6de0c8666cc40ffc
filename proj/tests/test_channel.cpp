#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mesonet/channel.hpp"

using namespace mesonet;

TEST_CASE("two-state chain closed forms match their definitions") {
  GilbertElliott ge{0.061040, 0.113360, 0.93, 0.18};
  CHECK(ge.stationary_bad() == doctest::Approx(0.35).epsilon(1e-9));
  CHECK(ge.mean_prr() == doctest::Approx(0.6675).epsilon(1e-9));
  CHECK(ge.correlation_decay() == doctest::Approx(0.8256).epsilon(1e-9));
  // loss rate of the anchor profile sits near a third
  CHECK(1.0 - ge.mean_prr() == doctest::Approx(0.3325));
}

TEST_CASE("lag match probability: identical at lag zero, decaying after") {
  GilbertElliott ge{0.061040, 0.113360, 0.93, 0.18};
  CHECK(ge.lag_match_probability(0) == doctest::Approx(1.0));
  double prev = 1.0;
  for (int k = 1; k <= 8; ++k) {
    double m = ge.lag_match_probability(k);
    CHECK(m < prev);
    CHECK(m > 0.5);
    prev = m;
  }
  // far apart the outcomes become independent draws from the mixture
  double pg = ge.stationary_good(), pb = ge.stationary_bad();
  double m_gg = 0.93 * 0.93 + 0.07 * 0.07;
  double m_bb = 0.18 * 0.18 + 0.82 * 0.82;
  double m_gb = 0.93 * 0.18 + 0.07 * 0.82;
  double base = pg * pg * m_gg + 2 * pg * pb * m_gb + pb * pb * m_bb;
  CHECK(ge.lag_match_probability(400) == doctest::Approx(base).epsilon(1e-9));
  CHECK(ge.lag_match_probability(3) == doctest::Approx(0.700139).epsilon(1e-4));
}

TEST_CASE("simulated chain reproduces the closed forms") {
  GilbertElliott params{0.061040, 0.113360, 0.93, 0.18};
  GilbertElliottLink link{params, true};
  Rng rng = make_stream(11, "chain_test", 0);
  link.seed_state(rng);

  const int kSteps = 400000;
  std::vector<int> bits(kSteps);
  int bad = 0, heard = 0;
  for (int i = 0; i < kSteps; ++i) {
    step_link(link, rng);
    bits[i] = beacon_outcome(link, rng);
    bad += link.good ? 0 : 1;
    heard += bits[i];
  }
  CHECK(static_cast<double>(bad) / kSteps ==
        doctest::Approx(params.stationary_bad()).epsilon(0.02));
  CHECK(static_cast<double>(heard) / kSteps ==
        doctest::Approx(params.mean_prr()).epsilon(0.02));

  for (int lag : {1, 3, 6}) {
    int match = 0;
    for (int i = lag; i < kSteps; ++i)
      if (bits[i] == bits[i - lag]) match++;
    CHECK(static_cast<double>(match) / (kSteps - lag) ==
          doctest::Approx(params.lag_match_probability(lag)).epsilon(0.02));
  }
}

TEST_CASE("attempt outcomes track the state they were drawn in") {
  GilbertElliott params{0.0, 1.0, 0.9, 0.1};  // g->g forever once good
  GilbertElliottLink link{params, true};
  Rng rng = make_stream(5, "chain_test", 1);
  int ok = 0;
  const int kTrials = 200000;
  for (int i = 0; i < kTrials; ++i) ok += attempt_outcome(link, rng) ? 1 : 0;
  CHECK(static_cast<double>(ok) / kTrials == doctest::Approx(0.9).epsilon(0.01));
}

TEST_CASE("rssi process recovers its mean, spread and coherence") {
  RssiProcess p{-69.0, 2.5, 6.5, false, 0.0, 0.0};
  Rng rng = make_stream(7, "rssi_test", 0);
  const int kN = 200000;
  const double dt = 1.0;
  std::vector<double> v(kN);
  for (int i = 0; i < kN; ++i) v[i] = sample_rssi(p, i * dt, rng);

  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= kN;
  CHECK(mean == doctest::Approx(-69.0).epsilon(0.01));

  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= kN;
  CHECK(std::sqrt(var) == doctest::Approx(2.5).epsilon(0.05));

  double num = 0.0;
  for (int i = 1; i < kN; ++i) num += (v[i] - mean) * (v[i - 1] - mean);
  double rho = num / ((kN - 1) * var);
  // lag-1 autocorrelation exp(-dt/tau); +-20% on the implied coherence
  double tau_hat = -dt / std::log(rho);
  CHECK(tau_hat == doctest::Approx(6.5).epsilon(0.20));
}

TEST_CASE("rssi bridging is consistent under irregular sampling") {
  // sampling t=0 then t=9 must be distributed like sampling 0,3,6,9:
  // compare moments across many independent replicas
  double m2_direct = 0.0, m2_stepped = 0.0;
  const int kReps = 60000;
  for (int r = 0; r < kReps; ++r) {
    RssiProcess a{-70.0, 3.0, 5.0, false, 0.0, 0.0};
    RssiProcess b = a;
    Rng ra = make_stream(100 + r, "rssi_bridge_a", r);
    Rng rb = make_stream(100 + r, "rssi_bridge_b", r);
    sample_rssi(a, 0.0, ra);
    double va = sample_rssi(a, 9.0, ra);
    sample_rssi(b, 0.0, rb);
    sample_rssi(b, 3.0, rb);
    sample_rssi(b, 6.0, rb);
    double vb = sample_rssi(b, 9.0, rb);
    m2_direct += (va + 70.0) * (va + 70.0);
    m2_stepped += (vb + 70.0) * (vb + 70.0);
  }
  CHECK(std::sqrt(m2_direct / kReps) ==
        doctest::Approx(std::sqrt(m2_stepped / kReps)).epsilon(0.03));

  RssiProcess p{-70.0, 3.0, 5.0, false, 0.0, 0.0};
  Rng rng = make_stream(1, "rssi_back", 0);
  sample_rssi(p, 5.0, rng);
  CHECK_THROWS_AS(sample_rssi(p, 4.0, rng), std::runtime_error);
}

TEST_CASE("environment presets differ where the deployments do") {
  Calibration built = Calibration::built();
  Calibration free = Calibration::free_space();
  CHECK(built.env == Environment::Built);
  CHECK(free.env == Environment::Free);
  CHECK(built.lora_floor_dbm > free.lora_floor_dbm);   // walls eat margin
  CHECK(built.rssi_sigma_db > free.rssi_sigma_db);
  CHECK(built.rssi_coherence_s < free.rssi_coherence_s);
  CHECK(environment_from_string("built") == Environment::Built);
  CHECK(environment_from_string("free") == Environment::Free);
  CHECK_THROWS_AS(environment_from_string("space"), std::runtime_error);
}

TEST_CASE("anchor airtimes give the advertised single-hop latencies") {
  Calibration cal = Calibration::built();
  CHECK(cal.zigbee_airtime_s == doctest::Approx(232.0 / 77634.0));
  CHECK(cal.lora_airtime_s == doctest::Approx(232.0 / 4579.0));
  CHECK(cal.lora_latency_s() == doctest::Approx(0.058).epsilon(0.001));
}

TEST_CASE("default profile ignores distance, placed profile shapes it") {
  Calibration dflt = Calibration::built();
  GilbertElliott near = dflt.link_params(100.0);
  GilbertElliott far = dflt.link_params(1100.0);
  CHECK(near.p_good_to_bad == doctest::Approx(far.p_good_to_bad));
  CHECK(near.prr_good == doctest::Approx(far.prr_good));

  Calibration placed = Calibration::placed();
  GilbertElliott pnear = placed.link_params(50.0);
  GilbertElliott pfar = placed.link_params(1150.0);
  CHECK(pnear.stationary_bad() < pfar.stationary_bad());
  CHECK(pnear.stationary_bad() == doctest::Approx(0.04).epsilon(0.15));
  CHECK(pfar.stationary_bad() > 0.25);
  // burst dwell is seconds long so windowed estimates stay predictive
  double dwell_ticks = 1.0 / pfar.p_bad_to_good;
  CHECK(dwell_ticks * placed.beacon_period_s > 1.0);
  // interpolation clamps beyond the studied band
  CHECK(placed.link_params(5000.0).stationary_bad() ==
        doctest::Approx(placed.placed_pi_bad_far));
}

TEST_CASE("rssi mean follows the log distance fit") {
  Calibration cal = Calibration::built();
  RssiProcess at_ref = cal.rssi_process(500.0);
  CHECK(at_ref.mean_dbm == doctest::Approx(-69.0));
  RssiProcess at_5k = cal.rssi_process(5000.0);
  CHECK(at_5k.mean_dbm == doctest::Approx(-69.0 - 13.1).epsilon(1e-6));
  RssiProcess at_50 = cal.rssi_process(50.0);
  CHECK(at_50.mean_dbm == doctest::Approx(-69.0 + 13.1).epsilon(1e-6));
}

TEST_CASE("config overrides update the calibration") {
  Calibration cal = Calibration::built();
  auto cfg = KeyValueConfig::from_string(
      "link_profile = placed\nretry_limit = 5\nlora_floor_dbm = -80\n"
      "ge_prr_good = 0.9\nplaced_chain_speed = 0.01\n",
      "mem");
  cal.apply_overrides(cfg);
  CHECK(cal.placed_links);
  CHECK(cal.retry_limit == 5);
  CHECK(cal.lora_floor_dbm == doctest::Approx(-80.0));
  CHECK(cal.zigbee_default.prr_good == doctest::Approx(0.9));
  CHECK(cal.placed_chain_speed == doctest::Approx(0.01));
  CHECK(cfg.unconsumed_keys().empty());

  auto bad = KeyValueConfig::from_string("link_profile = wat\n", "mem");
  Calibration cal2 = Calibration::built();
  CHECK_THROWS_AS(cal2.apply_overrides(bad), std::runtime_error);
}

TEST_CASE("distance probe wires the pieces together") {
  auto [link, rssi] = calibrate_from_distance(800.0, Environment::Built);
  CHECK(link.params.prr_good > link.params.prr_bad);
  CHECK(rssi.mean_dbm < -69.0);  // beyond the 500 m reference
  CHECK(rssi.mean_dbm > -80.0);
}
