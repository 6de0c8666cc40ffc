#pragma once

#include <cstdint>
#include <vector>

namespace mesonet {

// Sliding window over the last `capacity` beacon outcomes of one link
// (1 = heard, 0 = lost), the basis of every link-quality metric.
class BitWindow {
 public:
  explicit BitWindow(int capacity = 10);

  void push_bit(int bit);
  int capacity() const { return capacity_; }
  int count() const { return count_; }
  bool full() const { return count_ == capacity_; }

  // Oldest to newest.
  std::vector<uint8_t> bits() const;

  // Fraction of heard beacons.  Requires at least one bit.
  double prr() const;
  // Expected transmissions 1/prr, capped at capacity+1 when nothing was heard.
  double etx() const;
  // Mean attempts per success counting the successful attempt; losses after
  // the last success don't contribute; capped at capacity when the window has
  // no success at all.
  double rnp() const;

  static BitWindow from_bits(const std::vector<uint8_t>& bits, int capacity);

 private:
  int capacity_;
  int count_ = 0;
  int head_ = 0;  // index of the oldest bit when full
  std::vector<uint8_t> ring_;
};

// Per-link metric pair consumed by path aggregation.
struct LinkEstimate {
  double prr = 1.0;
  double rnp = 1.0;
};

LinkEstimate estimate_link(const BitWindow& w);

// Append-only record of one link's beacon outcomes on a fixed tick grid,
// kept so path estimation can reconstruct the window any observer held at an
// earlier time instead of simulating control packets hop by hop.
class LinkBeaconLog {
 public:
  LinkBeaconLog(double first_tick_s, double period_s, int window_capacity)
      : t0_(first_tick_s), period_(period_s), capacity_(window_capacity) {}

  void record(int bit) { outcomes_.push_back(static_cast<uint8_t>(bit)); }
  int size() const { return static_cast<int>(outcomes_.size()); }
  double tick_time(int i) const { return t0_ + period_ * i; }
  double period_s() const { return period_; }

  // Number of outcomes with tick time <= t.
  int ticks_before(double t) const;
  // The window an observer looking at this link held at time t: the last
  // up-to-capacity outcomes no newer than t.
  BitWindow window_as_of(double t) const;

 private:
  double t0_;
  double period_;
  int capacity_;
  std::vector<uint8_t> outcomes_;
};

// Long-radio path state: last acknowledged signal strength and its age.
struct LoraPathEstimate {
  bool has_sample = false;
  double rssi_dbm = 0.0;
  double last_ack_t = 0.0;
};

struct LoraFeature {
  double rssi_dbm;  // sentinel when no fresh sample exists
  bool stale;
};

constexpr double kRssiSentinelDbm = -120.0;

// Feature used by the selectors: the last acknowledged RSSI while younger
// than `validity_s`, else the sentinel floor value flagged stale.
LoraFeature lora_feature(const LoraPathEstimate& est, double now_s,
                         double validity_s);

}  // namespace mesonet
