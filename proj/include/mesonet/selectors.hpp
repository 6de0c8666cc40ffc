#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "mesonet/channel.hpp"
#include "mesonet/dtree.hpp"
#include "mesonet/rng.hpp"

namespace mesonet {

// One row of the hand-tuned selection table: within a distance band the short
// radio is kept while its path reception ratio clears the bar; otherwise the
// long radio is taken when its signal clears the bar; otherwise the band's
// fallback applies.  Bands are half open [d_min, d_max) except the last,
// which closes at its upper edge.
struct ThresholdRegion {
  double d_min_m = 0.0;
  double d_max_m = 0.0;
  double zigbee_rr_min = 0.0;
  double lora_rssi_min_dbm = 0.0;
  RadioChoice fallback = RadioChoice::Zigbee;
};

struct ThresholdTable {
  std::vector<ThresholdRegion> regions;

  static ThresholdTable defaults();
  // Regions must tile [0, max] without gaps or overlap; throws otherwise.
  void validate() const;
  const ThresholdRegion& region_for(double distance_m) const;
};

// Tabular action values over discretized features; the reward for an action
// is the payload throughput the packet achieved, so with learning rate a and
// no look-ahead the update is q += a * (reward - q).
struct QLearningConfig {
  double learning_rate = 0.1;
  double epsilon = 0.1;
  double rssi_floor_dbm = -120.0;
  double rssi_ceil_dbm = -30.0;
  int rnp_cap = 10;
};

class QTable {
 public:
  explicit QTable(const QLearningConfig& cfg = {}) : cfg_(cfg) {}

  uint64_t discretize(const FeatureVector& x) const;
  double value(uint64_t state, RadioChoice action) const;
  void update(uint64_t state, RadioChoice action, double reward);
  // Highest-value action; ties go to the short radio.
  RadioChoice greedy(uint64_t state) const;
  size_t visited_states() const { return q_.size(); }
  const QLearningConfig& config() const { return cfg_; }

 private:
  QLearningConfig cfg_;
  std::unordered_map<uint64_t, double> q_;
};

// Replay a labeled dataset into the table: every row carries the measured
// reward of both actions, so both are updated.
void train_qtable(QTable& table, const LabeledDataset& data);

// Cost of changing radios: the control handshake rides on the radio being
// switched to, so the penalty is a multiple of that radio's airtime.
double switch_penalty_s(RadioChoice prev, RadioChoice next,
                        const Calibration& cal);

// Per-packet best action given both measured outcomes (ties to Zigbee).
RadioChoice oracle_select(double tput_zigbee, double tput_lora);

enum class SelectorKind {
  FixedZigbee,
  FixedLora,
  Threshold,
  TaoCart,
  QLearning,
  Oracle,
};

SelectorKind selector_kind_from_string(const std::string& s);
const char* selector_kind_name(SelectorKind k);

struct SelectContext {
  FeatureVector x;
  double distance_m = 0.0;
  RadioChoice prev = RadioChoice::Zigbee;
};

// A radio policy scored by the replay loop.  Selection happens before the
// packet flies; observe() feeds back the chosen action's reward afterwards
// (only the learning selector uses it).
class Selector {
 public:
  virtual ~Selector() = default;
  virtual SelectorKind kind() const = 0;
  virtual RadioChoice select(const SelectContext& ctx, Rng& rng) = 0;
  virtual void observe(const SelectContext& /*ctx*/, RadioChoice /*action*/,
                       double /*reward*/) {}
};

std::unique_ptr<Selector> make_fixed_selector(RadioChoice radio);
std::unique_ptr<Selector> make_threshold_selector(const ThresholdTable& table);
std::unique_ptr<Selector> make_tree_selector(const DecisionTree& tree);
// epsilon > 0 explores during selection; scoring freezes it at 0.
std::unique_ptr<Selector> make_qlearning_selector(QTable table, double epsilon);
// The oracle needs the per-packet truth, which only the replay loop has; it
// recognizes this kind and calls oracle_select with both measured outcomes
// instead of select().
std::unique_ptr<Selector> make_oracle_selector();

}  // namespace mesonet
