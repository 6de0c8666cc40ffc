#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mesonet {

enum class RadioChoice : uint8_t { Zigbee = 0, LoRa = 1 };

const char* radio_name(RadioChoice r);
RadioChoice radio_from_string(const std::string& s);

// Which radio carried more payload for one packet; exact ties go to the
// short radio, whose mesh keeps working without the gateway's demodulators.
RadioChoice better_radio(double tput_zigbee, double tput_lora);

// Everything a node knows when it must pick a radio: route length, last
// acknowledged long-radio signal strength, and the aged short-radio path
// quality over the first few links.
struct FeatureVector {
  double hn = 0.0;          // hops to the gateway
  double lora_rssi = 0.0;   // dBm, sentinel -120 when stale
  double zigbee_prr = 0.0;  // product of per-link reception ratios
  double zigbee_rnp = 0.0;  // sum of per-link required packets

  static constexpr int kCount = 4;
  double operator[](int i) const;
  static const char* name(int i);
};

struct LabeledRow {
  FeatureVector x;
  RadioChoice label = RadioChoice::Zigbee;
  double tput_zigbee = 0.0;
  double tput_lora = 0.0;
};

using LabeledDataset = std::vector<LabeledRow>;

// Axis-aligned binary tree stored as an array; node 0 is the root.  Internal
// nodes route x[feature] <= threshold to the left child.
struct TreeNode {
  bool leaf = true;
  RadioChoice label = RadioChoice::Zigbee;
  int feature = 0;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
};

class DecisionTree {
 public:
  RadioChoice predict(const FeatureVector& x) const;
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int leaf_count() const;
  int depth() const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::vector<TreeNode>& nodes() { return nodes_; }

  std::string serialize() const;
  static DecisionTree deserialize(const std::string& text);

 private:
  std::vector<TreeNode> nodes_;
};

struct CartConfig {
  int max_depth = 8;
  int min_leaf = 5;
};

// Greedy Gini induction with midpoint thresholds.  Ties between candidate
// splits break toward the lowest feature index, then the lowest threshold, so
// training is deterministic.
DecisionTree train_cart(const LabeledDataset& data, const CartConfig& cfg = {});

struct TaoConfig {
  int max_passes = 20;
  bool check_monotonic = true;  // assert training error never increases
};

// Alternating optimization over the fixed structure: nodes are revisited
// deepest first; each internal node gets the best threshold for the points
// that reach it (judged by where each subtree would send them), each leaf the
// majority label; changes are kept only on strict improvement.  Stops after
// a full pass without changes or after max_passes.
DecisionTree tao_optimize(const DecisionTree& tree, const LabeledDataset& data,
                          const TaoConfig& cfg = {});

// Drops subtrees no training point reaches and merges identically labeled
// sibling leaves; predictions on the training set are unchanged.
DecisionTree prune_dead(const DecisionTree& tree, const LabeledDataset& data);

// Nested if/else over the four feature names, returning 0 for the short
// radio and 1 for the long one.  Output is byte-stable for a given tree.
std::string codegen(const DecisionTree& tree);

double accuracy(const DecisionTree& tree, const LabeledDataset& data);

using TreeTrainer = std::function<DecisionTree(const LabeledDataset&)>;

struct KfoldReport {
  double train_mean = 0.0, train_std = 0.0;
  double test_mean = 0.0, test_std = 0.0;
  std::vector<double> test_fold_accuracy;
};

// Stratified k-fold cross validation of a trainer.
KfoldReport kfold_accuracy(const LabeledDataset& data, int k,
                           const TreeTrainer& trainer, uint64_t seed);

// Seeded stratified split; `test_fraction` of each class goes to the test
// side.
void stratified_split(const LabeledDataset& data, double test_fraction,
                      uint64_t seed, LabeledDataset& train,
                      LabeledDataset& test);

using Classifier = std::function<RadioChoice(const FeatureVector&)>;
using ClassifierTrainer = std::function<Classifier(const LabeledDataset&)>;

struct LearningCurvePoint {
  int train_size = 0;
  std::vector<double> test_accuracy;  // one entry per trainer
};

// Test accuracy of each trainer as the training set grows; the test side is
// a held-out stratified fraction shared by all points.
std::vector<LearningCurvePoint> learning_curve(
    const LabeledDataset& data, const std::vector<int>& train_sizes,
    const std::vector<ClassifierTrainer>& trainers, uint64_t seed);

}  // namespace mesonet
