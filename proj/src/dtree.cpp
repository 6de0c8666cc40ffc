#include "mesonet/dtree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mesonet/rng.hpp"

namespace mesonet {

const char* radio_name(RadioChoice r) {
  return r == RadioChoice::Zigbee ? "zigbee" : "lora";
}

RadioChoice radio_from_string(const std::string& s) {
  if (s == "zigbee") return RadioChoice::Zigbee;
  if (s == "lora") return RadioChoice::LoRa;
  throw std::runtime_error("radio must be zigbee or lora, got '" + s + "'");
}

RadioChoice better_radio(double tput_zigbee, double tput_lora) {
  return tput_lora > tput_zigbee ? RadioChoice::LoRa : RadioChoice::Zigbee;
}

double FeatureVector::operator[](int i) const {
  switch (i) {
    case 0: return hn;
    case 1: return lora_rssi;
    case 2: return zigbee_prr;
    case 3: return zigbee_rnp;
  }
  throw std::runtime_error("feature index out of range");
}

const char* FeatureVector::name(int i) {
  switch (i) {
    case 0: return "hn";
    case 1: return "lora_rssi";
    case 2: return "zigbee_prr";
    case 3: return "zigbee_rnp";
  }
  throw std::runtime_error("feature index out of range");
}

RadioChoice DecisionTree::predict(const FeatureVector& x) const {
  if (nodes_.empty()) throw std::runtime_error("predict on an empty tree");
  int cur = 0;
  while (!nodes_[cur].leaf) {
    const TreeNode& n = nodes_[cur];
    cur = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes_[cur].label;
}

int DecisionTree::leaf_count() const {
  int c = 0;
  for (const TreeNode& n : nodes_) c += n.leaf ? 1 : 0;
  return c;
}

int DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (size_t i = 0; i < nodes_.size(); ++i) {  // parents precede children
    if (nodes_[i].leaf) continue;
    d[nodes_[i].left] = d[i] + 1;
    d[nodes_[i].right] = d[i] + 1;
    best = std::max(best, d[i] + 1);
  }
  return best;
}

namespace {

std::string shortest_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int majority_or_zigbee(int zigbee, int lora) {
  return lora > zigbee ? 1 : 0;
}

double gini(int zigbee, int lora) {
  int total = zigbee + lora;
  if (total == 0) return 0.0;
  double pz = static_cast<double>(zigbee) / total;
  double pl = static_cast<double>(lora) / total;
  return 1.0 - pz * pz - pl * pl;
}

struct CartBuilder {
  const LabeledDataset& data;
  CartConfig cfg;
  std::vector<TreeNode> nodes;

  int build(std::vector<int>& idx, int depth) {
    int zigbee = 0, lora = 0;
    for (int i : idx)
      (data[i].label == RadioChoice::Zigbee ? zigbee : lora)++;

    int me = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[me].label =
        majority_or_zigbee(zigbee, lora) ? RadioChoice::LoRa : RadioChoice::Zigbee;

    bool splittable = depth < cfg.max_depth && zigbee > 0 && lora > 0 &&
                      static_cast<int>(idx.size()) >= 2 * cfg.min_leaf;
    if (!splittable) return me;

    // Best split: lowest weighted child impurity; the ascending scan order
    // (feature, then threshold) makes ties land on the lowest pair.
    double best_score = gini(zigbee, lora) - 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    const int m = static_cast<int>(idx.size());
    std::vector<std::pair<double, int>> vals(m);  // value, is-lora
    for (int f = 0; f < FeatureVector::kCount; ++f) {
      for (int i = 0; i < m; ++i)
        vals[i] = {data[idx[i]].x[f],
                   data[idx[i]].label == RadioChoice::LoRa ? 1 : 0};
      std::sort(vals.begin(), vals.end());
      int lz = 0, ll = 0;
      for (int i = 1; i < m; ++i) {
        (vals[i - 1].second ? ll : lz)++;
        if (vals[i].first == vals[i - 1].first) continue;
        if (i < cfg.min_leaf || m - i < cfg.min_leaf) continue;
        double score = (i * gini(lz, ll) +
                        (m - i) * gini(zigbee - lz, lora - ll)) /
                       m;
        if (score < best_score - 1e-12) {
          best_score = score;
          best_feature = f;
          best_threshold = 0.5 * (vals[i - 1].first + vals[i].first);
        }
      }
    }
    if (best_feature < 0) return me;

    std::vector<int> left_idx, right_idx;
    for (int i : idx)
      (data[i].x[best_feature] <= best_threshold ? left_idx : right_idx)
          .push_back(i);
    nodes[me].leaf = false;
    nodes[me].feature = best_feature;
    nodes[me].threshold = best_threshold;
    nodes[me].left = build(left_idx, depth + 1);
    nodes[me].right = build(right_idx, depth + 1);
    return me;
  }
};

}  // namespace

DecisionTree train_cart(const LabeledDataset& data, const CartConfig& cfg) {
  if (data.empty()) throw std::runtime_error("cannot train on an empty dataset");
  if (cfg.max_depth < 1 || cfg.min_leaf < 1)
    throw std::runtime_error("cart config must be positive");
  CartBuilder b{data, cfg, {}};
  std::vector<int> idx(data.size());
  std::iota(idx.begin(), idx.end(), 0);
  b.build(idx, 0);
  DecisionTree t;
  t.nodes() = std::move(b.nodes);
  return t;
}

namespace {

RadioChoice predict_from(const std::vector<TreeNode>& nodes, int start,
                         const FeatureVector& x) {
  int cur = start;
  while (!nodes[cur].leaf) {
    const TreeNode& n = nodes[cur];
    cur = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[cur].label;
}

int training_errors(const std::vector<TreeNode>& nodes,
                    const LabeledDataset& data) {
  int e = 0;
  for (const LabeledRow& r : data)
    if (predict_from(nodes, 0, r.x) != r.label) ++e;
  return e;
}

std::vector<std::vector<int>> reaching_sets(const std::vector<TreeNode>& nodes,
                                            const LabeledDataset& data) {
  std::vector<std::vector<int>> reach(nodes.size());
  for (size_t i = 0; i < data.size(); ++i) {
    int cur = 0;
    for (;;) {
      reach[cur].push_back(static_cast<int>(i));
      if (nodes[cur].leaf) break;
      const TreeNode& n = nodes[cur];
      cur = data[i].x[n.feature] <= n.threshold ? n.left : n.right;
    }
  }
  return reach;
}

}  // namespace

DecisionTree tao_optimize(const DecisionTree& tree, const LabeledDataset& data,
                          const TaoConfig& cfg) {
  if (data.empty()) throw std::runtime_error("cannot optimize on an empty dataset");
  DecisionTree out = tree;
  std::vector<TreeNode>& nodes = out.nodes();

  // process order: deepest level first, then ascending id within a level
  std::vector<int> depth(nodes.size(), 0);
  for (size_t i = 0; i < nodes.size(); ++i)
    if (!nodes[i].leaf) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return depth[a] > depth[b]; });

  int prev_errors = training_errors(nodes, data);

  for (int pass = 0; pass < cfg.max_passes; ++pass) {
    bool changed = false;
    for (int ni : order) {
      auto reach = reaching_sets(nodes, data);
      const std::vector<int>& pts = reach[ni];
      if (pts.empty()) continue;
      TreeNode& node = nodes[ni];

      if (node.leaf) {
        int zigbee = 0, lora = 0;
        for (int i : pts)
          (data[i].label == RadioChoice::Zigbee ? zigbee : lora)++;
        RadioChoice best = majority_or_zigbee(zigbee, lora)
                               ? RadioChoice::LoRa
                               : RadioChoice::Zigbee;
        if (best != node.label) {
          // relabeling to the strict majority can only reduce errors here
          if (zigbee == lora) continue;
          node.label = best;
          changed = true;
        }
        continue;
      }

      // Care points: those the two subtrees classify differently.  Sending a
      // care point to its correct side removes exactly one error, so the node
      // problem is a one-dimensional weighted threshold search per feature.
      struct CarePoint {
        FeatureVector x;
        bool left_good;  // left subtree classifies it correctly
      };
      std::vector<CarePoint> care;
      for (int i : pts) {
        bool lg = predict_from(nodes, node.left, data[i].x) == data[i].label;
        bool rg = predict_from(nodes, node.right, data[i].x) == data[i].label;
        if (lg != rg) care.push_back({data[i].x, lg});
      }
      if (care.empty()) continue;

      auto errors_for = [&](int f, double thr) {
        int e = 0;
        for (const CarePoint& c : care) {
          bool goes_left = c.x[f] <= thr;
          if (goes_left != c.left_good) ++e;
        }
        return e;
      };

      int cur_err = errors_for(node.feature, node.threshold);
      int best_err = cur_err;
      int best_feature = node.feature;
      double best_threshold = node.threshold;
      for (int f = 0; f < FeatureVector::kCount; ++f) {
        std::vector<double> vals;
        vals.reserve(care.size());
        for (const CarePoint& c : care) vals.push_back(c.x[f]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        std::vector<double> candidates;
        candidates.push_back(vals.front() - 1.0);  // everything right
        for (size_t i = 0; i + 1 < vals.size(); ++i)
          candidates.push_back(0.5 * (vals[i] + vals[i + 1]));
        candidates.push_back(vals.back());  // everything left
        for (double thr : candidates) {
          int e = errors_for(f, thr);
          if (e < best_err) {  // strict improvement only, scan order breaks ties
            best_err = e;
            best_feature = f;
            best_threshold = thr;
          }
        }
      }
      if (best_err < cur_err) {
        node.feature = best_feature;
        node.threshold = best_threshold;
        changed = true;
      }

      if (cfg.check_monotonic) {
        int now = training_errors(nodes, data);
        if (now > prev_errors)
          throw std::logic_error("tao pass increased training error");
        prev_errors = now;
      }
    }
    if (!changed) break;
  }
  return out;
}

DecisionTree prune_dead(const DecisionTree& tree, const LabeledDataset& data) {
  const std::vector<TreeNode>& nodes = tree.nodes();
  auto reach = reaching_sets(nodes, data);

  std::vector<TreeNode> compact;
  // returns index in `compact`
  std::function<int(int)> rebuild = [&](int ni) -> int {
    const TreeNode& n = nodes[ni];
    if (!n.leaf) {
      if (reach[n.left].empty()) return rebuild(n.right);
      if (reach[n.right].empty()) return rebuild(n.left);
      int me = static_cast<int>(compact.size());
      compact.emplace_back(n);
      int l = rebuild(n.left);
      int r = rebuild(n.right);
      if (compact[l].leaf && compact[r].leaf &&
          compact[l].label == compact[r].label) {
        // both sides agree: the test is dead weight, keep a single leaf
        TreeNode leaf;
        leaf.leaf = true;
        leaf.label = compact[l].label;
        compact.resize(me);
        compact.push_back(leaf);
        return me;
      }
      compact[me].left = l;
      compact[me].right = r;
      return me;
    }
    int me = static_cast<int>(compact.size());
    compact.emplace_back(n);
    return me;
  };
  rebuild(0);

  DecisionTree out;
  out.nodes() = std::move(compact);
  return out;
}

std::string codegen(const DecisionTree& tree) {
  const std::vector<TreeNode>& nodes = tree.nodes();
  if (nodes.empty()) throw std::runtime_error("codegen on an empty tree");
  std::string out;
  out += "int select_radio(double hn, double lora_rssi, double zigbee_prr, "
         "double zigbee_rnp) {\n";
  std::function<void(int, int)> emit = [&](int ni, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    const TreeNode& n = nodes[ni];
    if (n.leaf) {
      out += pad + "return " + (n.label == RadioChoice::Zigbee ? "0" : "1") +
             ";\n";
      return;
    }
    out += pad + "if (" + std::string(FeatureVector::name(n.feature)) +
           " <= " + shortest_double(n.threshold) + ") {\n";
    emit(n.left, indent + 1);
    out += pad + "} else {\n";
    emit(n.right, indent + 1);
    out += pad + "}\n";
  };
  emit(0, 1);
  out += "}\n";
  return out;
}

std::string DecisionTree::serialize() const {
  std::string out = "nodes " + std::to_string(nodes_.size()) + "\n";
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& n = nodes_[i];
    out += std::to_string(i);
    if (n.leaf) {
      out += " leaf ";
      out += radio_name(n.label);
    } else {
      out += " split " + std::to_string(n.feature) + " " +
             shortest_double(n.threshold) + " " + std::to_string(n.left) +
             " " + std::to_string(n.right);
    }
    out += "\n";
  }
  return out;
}

DecisionTree DecisionTree::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  size_t count = 0;
  if (!(in >> word >> count) || word != "nodes")
    throw std::runtime_error("tree file must start with 'nodes <count>'");
  DecisionTree t;
  t.nodes_.resize(count);
  for (size_t i = 0; i < count; ++i) {
    size_t id;
    std::string kind;
    if (!(in >> id >> kind) || id != i)
      throw std::runtime_error("tree file: bad node record " +
                               std::to_string(i));
    TreeNode& n = t.nodes_[i];
    if (kind == "leaf") {
      std::string label;
      if (!(in >> label))
        throw std::runtime_error("tree file: leaf without label");
      n.leaf = true;
      n.label = radio_from_string(label);
    } else if (kind == "split") {
      n.leaf = false;
      if (!(in >> n.feature >> n.threshold >> n.left >> n.right))
        throw std::runtime_error("tree file: malformed split record");
      if (n.feature < 0 || n.feature >= FeatureVector::kCount)
        throw std::runtime_error("tree file: feature index out of range");
      if (n.left < 0 || n.right < 0 || n.left >= static_cast<int>(count) ||
          n.right >= static_cast<int>(count))
        throw std::runtime_error("tree file: child index out of range");
    } else {
      throw std::runtime_error("tree file: unknown node kind '" + kind + "'");
    }
  }
  if (count == 0) throw std::runtime_error("tree file has no nodes");
  return t;
}

double accuracy(const DecisionTree& tree, const LabeledDataset& data) {
  if (data.empty()) throw std::runtime_error("accuracy on an empty dataset");
  int ok = 0;
  for (const LabeledRow& r : data)
    if (tree.predict(r.x) == r.label) ++ok;
  return static_cast<double>(ok) / data.size();
}

namespace {

std::vector<std::vector<int>> stratified_folds(const LabeledDataset& data,
                                               int k, uint64_t seed) {
  std::vector<int> zigbee_idx, lora_idx;
  for (size_t i = 0; i < data.size(); ++i)
    (data[i].label == RadioChoice::Zigbee ? zigbee_idx : lora_idx)
        .push_back(static_cast<int>(i));
  Rng rng = make_stream(seed, "stratified_folds", 0);
  std::shuffle(zigbee_idx.begin(), zigbee_idx.end(), rng);
  std::shuffle(lora_idx.begin(), lora_idx.end(), rng);
  std::vector<std::vector<int>> folds(k);
  int next = 0;
  for (int i : zigbee_idx) folds[next++ % k].push_back(i);
  for (int i : lora_idx) folds[next++ % k].push_back(i);
  return folds;
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (v.size() - 1))};
}

}  // namespace

KfoldReport kfold_accuracy(const LabeledDataset& data, int k,
                           const TreeTrainer& trainer, uint64_t seed) {
  if (k < 2) throw std::runtime_error("kfold needs k >= 2");
  if (static_cast<int>(data.size()) < k)
    throw std::runtime_error("kfold needs at least k rows");
  auto folds = stratified_folds(data, k, seed);
  std::vector<double> train_acc, test_acc;
  for (int f = 0; f < k; ++f) {
    LabeledDataset train, test;
    for (int g = 0; g < k; ++g)
      for (int i : folds[g]) (g == f ? test : train).push_back(data[i]);
    DecisionTree t = trainer(train);
    train_acc.push_back(accuracy(t, train));
    test_acc.push_back(accuracy(t, test));
  }
  KfoldReport r;
  std::tie(r.train_mean, r.train_std) = mean_std(train_acc);
  std::tie(r.test_mean, r.test_std) = mean_std(test_acc);
  r.test_fold_accuracy = test_acc;
  return r;
}

void stratified_split(const LabeledDataset& data, double test_fraction,
                      uint64_t seed, LabeledDataset& train,
                      LabeledDataset& test) {
  if (test_fraction <= 0.0 || test_fraction >= 1.0)
    throw std::runtime_error("test_fraction must be in (0,1)");
  train.clear();
  test.clear();
  std::vector<int> zigbee_idx, lora_idx;
  for (size_t i = 0; i < data.size(); ++i)
    (data[i].label == RadioChoice::Zigbee ? zigbee_idx : lora_idx)
        .push_back(static_cast<int>(i));
  Rng rng = make_stream(seed, "stratified_split", 0);
  std::shuffle(zigbee_idx.begin(), zigbee_idx.end(), rng);
  std::shuffle(lora_idx.begin(), lora_idx.end(), rng);
  for (auto* cls : {&zigbee_idx, &lora_idx}) {
    int n_test = static_cast<int>(std::llround(test_fraction * cls->size()));
    for (size_t i = 0; i < cls->size(); ++i)
      (static_cast<int>(i) < n_test ? test : train).push_back(data[(*cls)[i]]);
  }
}

std::vector<LearningCurvePoint> learning_curve(
    const LabeledDataset& data, const std::vector<int>& train_sizes,
    const std::vector<ClassifierTrainer>& trainers, uint64_t seed) {
  LabeledDataset train_pool, test;
  stratified_split(data, 0.2, seed, train_pool, test);
  Rng rng = make_stream(seed, "learning_curve", 0);
  std::shuffle(train_pool.begin(), train_pool.end(), rng);

  std::vector<LearningCurvePoint> out;
  for (int size : train_sizes) {
    if (size < 1 || size > static_cast<int>(train_pool.size()))
      throw std::runtime_error("learning curve size out of range: " +
                               std::to_string(size));
    LabeledDataset slice(train_pool.begin(), train_pool.begin() + size);
    LearningCurvePoint pt;
    pt.train_size = size;
    for (const ClassifierTrainer& make : trainers) {
      Classifier c = make(slice);
      int ok = 0;
      for (const LabeledRow& r : test)
        if (c(r.x) == r.label) ++ok;
      pt.test_accuracy.push_back(static_cast<double>(ok) / test.size());
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace mesonet
