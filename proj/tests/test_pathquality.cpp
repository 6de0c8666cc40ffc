#include "doctest.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mesonet/pathquality.hpp"
#include "mesonet/rng.hpp"

using namespace mesonet;

TEST_CASE("path quality multiplies reception and adds delivery cost") {
  std::vector<LinkEstimate> links = {{0.9, 1.2}, {0.8, 1.5}, {0.5, 3.0}};
  PathQuality q = aggregate_path(links, 2, 3);
  CHECK(q.prr == doctest::Approx(0.9 * 0.8));
  CHECK(q.rnp == doctest::Approx(2.7));
  CHECK(q.hn == 3);

  // asking for more links than exist folds what is there
  PathQuality all = aggregate_path(links, 10, 3);
  CHECK(all.prr == doctest::Approx(0.9 * 0.8 * 0.5));
  CHECK(all.rnp == doctest::Approx(5.7));

  CHECK_THROWS_AS(aggregate_path(links, 0, 3), std::runtime_error);
  CHECK_THROWS_AS(aggregate_path({}, 2, 0), std::runtime_error);
}

TEST_CASE("bit similarity counts agreeing positions of full windows") {
  BitWindow a = BitWindow::from_bits({1, 0, 1, 1, 0}, 5);
  BitWindow b = BitWindow::from_bits({1, 1, 1, 0, 0}, 5);
  CHECK(bit_similarity(a, b) == doctest::Approx(0.6));
  CHECK(bit_similarity(a, a) == doctest::Approx(1.0));

  BitWindow other_cap = BitWindow::from_bits({1, 0, 1}, 3);
  CHECK_THROWS_AS(bit_similarity(a, other_cap), std::runtime_error);
  BitWindow partial(5);
  partial.push_bit(1);
  CHECK_THROWS_AS(bit_similarity(a, partial), std::runtime_error);
}

TEST_CASE("delayed forwarding compares each hop at its own age") {
  // two links beaconed every 1 s from t=0, window of 3
  LinkBeaconLog near(0.0, 1.0, 3);
  LinkBeaconLog far(0.0, 1.0, 3);
  // near: 1 1 0 1 0 1 ...; far: 0 0 1 1 1 0
  for (int b : {1, 1, 0, 1, 0, 1}) near.record(b);
  for (int b : {0, 0, 1, 1, 1, 0}) far.record(b);

  // at t=5 with a 1 s per-hop delay: hop 1 sees near as of t=4, hop 2 sees
  // far as of t=3
  auto snaps = propagate_traditional({&near, &far}, 5.0, 1.0);
  REQUIRE(snaps.size() == 2);
  CHECK(snaps[0].hop == 1);
  CHECK(snaps[0].age_s == doctest::Approx(1.0));
  CHECK(snaps[0].stale.bits() == std::vector<uint8_t>{0, 1, 0});
  CHECK(snaps[0].truth.bits() == std::vector<uint8_t>{1, 0, 1});
  CHECK(snaps[0].similarity == doctest::Approx(0.0));

  CHECK(snaps[1].hop == 2);
  CHECK(snaps[1].age_s == doctest::Approx(2.0));
  CHECK(snaps[1].stale.bits() == std::vector<uint8_t>{0, 1, 1});
  CHECK(snaps[1].truth.bits() == std::vector<uint8_t>{1, 1, 0});
  CHECK(snaps[1].similarity == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("delayed forwarding skips hops whose windows are not yet full") {
  LinkBeaconLog young(0.0, 1.0, 5);
  young.record(1);
  young.record(1);
  LinkBeaconLog mature(0.0, 1.0, 5);
  for (int i = 0; i < 12; ++i) mature.record(i % 2);
  auto snaps = propagate_traditional({&young, &mature}, 11.0, 1.0);
  REQUIRE(snaps.size() == 1);
  CHECK(snaps[0].hop == 2);  // the young hop-1 link was skipped
}

TEST_CASE("zero delay means perfect similarity at every hop") {
  LinkBeaconLog a(0.0, 1.0, 4);
  LinkBeaconLog b(0.0, 1.0, 4);
  Rng rng = make_stream(3, "pq_test", 0);
  for (int i = 0; i < 30; ++i) {
    a.record(bernoulli(rng, 0.6) ? 1 : 0);
    b.record(bernoulli(rng, 0.6) ? 1 : 0);
  }
  for (const auto& s : propagate_traditional({&a, &b}, 29.5, 0.0))
    CHECK(s.similarity == doctest::Approx(1.0));
}

namespace {

// Synthetic depth-keyed datasets whose usable signal grows with depth and
// saturates: label agrees with the separable feature with probability
// 0.5 + 0.5 * depth/saturation (clean at and past the saturation depth).
LabeledDataset make_depth_dataset(int depth, int saturation, int rows,
                                  uint64_t seed) {
  Rng rng = make_stream(seed, "rpn_synth", depth);
  double correct = 0.5 + 0.5 * std::min(1.0, static_cast<double>(depth) /
                                                 saturation);
  LabeledDataset data;
  for (int i = 0; i < rows; ++i) {
    LabeledRow r;
    r.x.hn = 4.0;
    r.x.lora_rssi = uniform(rng, -80.0, -60.0);
    r.x.zigbee_prr = uniform(rng, 0.0, 1.0);
    r.x.zigbee_rnp = uniform(rng, 1.0, 6.0);
    bool truth = r.x.zigbee_prr > 0.5;
    bool label = bernoulli(rng, correct) ? truth : !truth;
    r.label = label ? RadioChoice::Zigbee : RadioChoice::LoRa;
    r.tput_zigbee = r.label == RadioChoice::Zigbee ? 5000.0 : 1000.0;
    r.tput_lora = 4000.0;
    data.push_back(r);
  }
  return data;
}

}  // namespace

TEST_CASE("window depth choice lands on the accuracy knee") {
  std::map<int, LabeledDataset> by_depth;
  for (int n = 1; n <= 6; ++n)
    by_depth[n] = make_depth_dataset(n, 3, 600, 77);

  TreeTrainer trainer = [](const LabeledDataset& d) { return train_cart(d); };
  RpnReport rep = choose_rpn(by_depth, trainer, 5);
  REQUIRE(rep.curve.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(rep.curve[i].use_links == i + 1);
  CHECK(rep.chosen == 3);
  CHECK(rep.curve[2].test_accuracy > 0.9);
  CHECK(rep.curve[0].test_accuracy < 0.7);

  std::map<int, LabeledDataset> single;
  single[1] = by_depth[1];
  CHECK_THROWS_AS(choose_rpn(single, trainer, 5), std::runtime_error);
}

TEST_CASE("flat accuracy curves choose the shallowest depth") {
  std::map<int, LabeledDataset> by_depth;
  for (int n = 1; n <= 4; ++n)
    by_depth[n] = make_depth_dataset(n, 1, 500, 12);  // clean at every depth
  TreeTrainer trainer = [](const LabeledDataset& d) { return train_cart(d); };
  RpnReport rep = choose_rpn(by_depth, trainer, 9);
  CHECK(rep.chosen == 1);
}
