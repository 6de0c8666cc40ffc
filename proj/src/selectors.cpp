#include "mesonet/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mesonet {

ThresholdTable ThresholdTable::defaults() {
  ThresholdTable t;
  t.regions = {
      {0.0, 800.0, 0.77, -72.0, RadioChoice::Zigbee},
      {800.0, 1000.0, 0.80, -71.0, RadioChoice::LoRa},
      {1000.0, 1200.0, 0.83, -71.0, RadioChoice::LoRa},
  };
  return t;
}

void ThresholdTable::validate() const {
  if (regions.empty()) throw std::runtime_error("threshold table is empty");
  double edge = 0.0;
  for (const ThresholdRegion& r : regions) {
    if (r.d_min_m != edge)
      throw std::runtime_error("threshold regions must tile without gaps");
    if (r.d_max_m <= r.d_min_m)
      throw std::runtime_error("threshold region is empty or inverted");
    edge = r.d_max_m;
  }
}

const ThresholdRegion& ThresholdTable::region_for(double distance_m) const {
  validate();
  if (distance_m < 0.0)
    throw std::runtime_error("distance must be >= 0");
  for (size_t i = 0; i < regions.size(); ++i) {
    const ThresholdRegion& r = regions[i];
    bool last = i + 1 == regions.size();
    if (distance_m >= r.d_min_m &&
        (distance_m < r.d_max_m || (last && distance_m <= r.d_max_m)))
      return r;
  }
  // beyond the table: the outermost band's policy applies
  return regions.back();
}

uint64_t QTable::discretize(const FeatureVector& x) const {
  uint64_t hn = static_cast<uint64_t>(std::clamp(x.hn, 0.0, 63.0));
  double rssi = std::clamp(x.lora_rssi, cfg_.rssi_floor_dbm, cfg_.rssi_ceil_dbm);
  uint64_t rssi_bin =
      static_cast<uint64_t>(std::floor(rssi - cfg_.rssi_floor_dbm));  // 1 dB
  uint64_t prr_bin = static_cast<uint64_t>(
      std::clamp(std::floor(x.zigbee_prr * 10.0), 0.0, 10.0));  // deciles
  uint64_t rnp_bin = static_cast<uint64_t>(
      std::clamp(std::floor(x.zigbee_rnp), 0.0, double(cfg_.rnp_cap)));
  return ((hn * 128 + rssi_bin) * 16 + prr_bin) * 32 + rnp_bin;
}

double QTable::value(uint64_t state, RadioChoice action) const {
  auto it = q_.find(state * 2 + static_cast<uint64_t>(action));
  return it == q_.end() ? 0.0 : it->second;
}

void QTable::update(uint64_t state, RadioChoice action, double reward) {
  double& q = q_[state * 2 + static_cast<uint64_t>(action)];
  q += cfg_.learning_rate * (reward - q);
}

RadioChoice QTable::greedy(uint64_t state) const {
  double qz = value(state, RadioChoice::Zigbee);
  double ql = value(state, RadioChoice::LoRa);
  return ql > qz ? RadioChoice::LoRa : RadioChoice::Zigbee;
}

void train_qtable(QTable& table, const LabeledDataset& data) {
  for (const LabeledRow& r : data) {
    uint64_t s = table.discretize(r.x);
    table.update(s, RadioChoice::Zigbee, r.tput_zigbee);
    table.update(s, RadioChoice::LoRa, r.tput_lora);
  }
}

double switch_penalty_s(RadioChoice prev, RadioChoice next,
                        const Calibration& cal) {
  if (prev == next) return 0.0;
  double airtime = next == RadioChoice::Zigbee ? cal.zigbee_airtime_s
                                               : cal.lora_airtime_s;
  return 3.0 * airtime;
}

RadioChoice oracle_select(double tput_zigbee, double tput_lora) {
  return better_radio(tput_zigbee, tput_lora);
}

SelectorKind selector_kind_from_string(const std::string& s) {
  if (s == "fixed_zigbee") return SelectorKind::FixedZigbee;
  if (s == "fixed_lora") return SelectorKind::FixedLora;
  if (s == "threshold") return SelectorKind::Threshold;
  if (s == "taocart") return SelectorKind::TaoCart;
  if (s == "qlearning") return SelectorKind::QLearning;
  if (s == "oracle") return SelectorKind::Oracle;
  throw std::runtime_error(
      "selector must be fixed_zigbee, fixed_lora, threshold, taocart, "
      "qlearning or oracle, got '" + s + "'");
}

const char* selector_kind_name(SelectorKind k) {
  switch (k) {
    case SelectorKind::FixedZigbee: return "fixed_zigbee";
    case SelectorKind::FixedLora: return "fixed_lora";
    case SelectorKind::Threshold: return "threshold";
    case SelectorKind::TaoCart: return "taocart";
    case SelectorKind::QLearning: return "qlearning";
    case SelectorKind::Oracle: return "oracle";
  }
  throw std::runtime_error("unhandled selector kind");
}

namespace {

class FixedSelector : public Selector {
 public:
  explicit FixedSelector(RadioChoice r) : radio_(r) {}
  SelectorKind kind() const override {
    return radio_ == RadioChoice::Zigbee ? SelectorKind::FixedZigbee
                                         : SelectorKind::FixedLora;
  }
  RadioChoice select(const SelectContext&, Rng&) override { return radio_; }

 private:
  RadioChoice radio_;
};

class ThresholdSelector : public Selector {
 public:
  explicit ThresholdSelector(const ThresholdTable& t) : table_(t) {
    table_.validate();
  }
  SelectorKind kind() const override { return SelectorKind::Threshold; }
  RadioChoice select(const SelectContext& ctx, Rng&) override {
    const ThresholdRegion& r = table_.region_for(ctx.distance_m);
    if (ctx.x.zigbee_prr >= r.zigbee_rr_min) return RadioChoice::Zigbee;
    if (ctx.x.lora_rssi >= r.lora_rssi_min_dbm) return RadioChoice::LoRa;
    return r.fallback;
  }

 private:
  ThresholdTable table_;
};

class TreeSelector : public Selector {
 public:
  explicit TreeSelector(const DecisionTree& t) : tree_(t) {}
  SelectorKind kind() const override { return SelectorKind::TaoCart; }
  RadioChoice select(const SelectContext& ctx, Rng&) override {
    return tree_.predict(ctx.x);
  }

 private:
  DecisionTree tree_;
};

class QLearningSelector : public Selector {
 public:
  QLearningSelector(QTable table, double epsilon)
      : table_(std::move(table)), epsilon_(epsilon) {}
  SelectorKind kind() const override { return SelectorKind::QLearning; }
  RadioChoice select(const SelectContext& ctx, Rng& rng) override {
    uint64_t s = table_.discretize(ctx.x);
    if (epsilon_ > 0.0 && bernoulli(rng, epsilon_))
      return bernoulli(rng, 0.5) ? RadioChoice::LoRa : RadioChoice::Zigbee;
    return table_.greedy(s);
  }
  void observe(const SelectContext& ctx, RadioChoice action,
               double reward) override {
    table_.update(table_.discretize(ctx.x), action, reward);
  }

 private:
  QTable table_;
  double epsilon_;
};

class OracleSelector : public Selector {
 public:
  SelectorKind kind() const override { return SelectorKind::Oracle; }
  RadioChoice select(const SelectContext&, Rng&) override {
    throw std::logic_error(
        "oracle selection requires per-packet outcomes; use oracle_select");
  }
};

}  // namespace

std::unique_ptr<Selector> make_fixed_selector(RadioChoice radio) {
  return std::make_unique<FixedSelector>(radio);
}

std::unique_ptr<Selector> make_threshold_selector(const ThresholdTable& t) {
  return std::make_unique<ThresholdSelector>(t);
}

std::unique_ptr<Selector> make_tree_selector(const DecisionTree& tree) {
  return std::make_unique<TreeSelector>(tree);
}

std::unique_ptr<Selector> make_qlearning_selector(QTable table,
                                                  double epsilon) {
  return std::make_unique<QLearningSelector>(std::move(table), epsilon);
}

std::unique_ptr<Selector> make_oracle_selector() {
  return std::make_unique<OracleSelector>();
}

}  // namespace mesonet
