#include "mesonet/pathquality.hpp"

#include <stdexcept>

namespace mesonet {

PathQuality aggregate_path(const std::vector<LinkEstimate>& links,
                           int use_links, int full_hop_count) {
  if (links.empty()) throw std::runtime_error("aggregate_path needs links");
  if (use_links < 1) throw std::runtime_error("use_links must be >= 1");
  PathQuality q;
  q.hn = full_hop_count;
  int n = std::min<int>(use_links, static_cast<int>(links.size()));
  for (int i = 0; i < n; ++i) {
    q.prr *= links[i].prr;
    q.rnp += links[i].rnp;
  }
  return q;
}

double bit_similarity(const BitWindow& a, const BitWindow& b) {
  if (a.capacity() != b.capacity())
    throw std::runtime_error("similarity needs equal window capacities");
  if (!a.full() || !b.full())
    throw std::runtime_error("similarity needs full windows");
  auto av = a.bits(), bv = b.bits();
  int match = 0;
  for (int i = 0; i < a.capacity(); ++i)
    if (av[i] == bv[i]) ++match;
  return static_cast<double>(match) / a.capacity();
}

std::vector<TraditionalSnapshot> propagate_traditional(
    const std::vector<const LinkBeaconLog*>& path_links, double now_s,
    double per_hop_delay_s) {
  if (per_hop_delay_s < 0.0)
    throw std::runtime_error("per-hop delay must be >= 0");
  std::vector<TraditionalSnapshot> out;
  for (size_t i = 0; i < path_links.size(); ++i) {
    int hop = static_cast<int>(i) + 1;
    TraditionalSnapshot snap;
    snap.hop = hop;
    snap.age_s = hop * per_hop_delay_s;
    snap.stale = path_links[i]->window_as_of(now_s - snap.age_s);
    snap.truth = path_links[i]->window_as_of(now_s);
    if (!snap.stale.full() || !snap.truth.full()) continue;
    snap.similarity = bit_similarity(snap.stale, snap.truth);
    out.push_back(std::move(snap));
  }
  return out;
}

RpnReport choose_rpn(const std::map<int, LabeledDataset>& datasets_by_depth,
                     const TreeTrainer& trainer, uint64_t seed) {
  if (datasets_by_depth.size() < 2)
    throw std::runtime_error("choose_rpn needs at least two window depths");
  RpnReport report;
  for (const auto& [n, data] : datasets_by_depth) {
    LabeledDataset train, test;
    stratified_split(data, 0.2, seed, train, test);
    if (train.empty() || test.empty())
      throw std::runtime_error("choose_rpn split produced an empty side");
    DecisionTree tree = trainer(train);
    report.curve.push_back({n, accuracy(tree, test)});
  }
  // first depth whose successor gains less than one percentage point
  report.chosen = report.curve.back().use_links;
  for (size_t i = 0; i + 1 < report.curve.size(); ++i) {
    if (report.curve[i + 1].test_accuracy - report.curve[i].test_accuracy <
        0.01) {
      report.chosen = report.curve[i].use_links;
      break;
    }
  }
  return report;
}

}  // namespace mesonet
