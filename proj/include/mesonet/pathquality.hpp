#pragma once

#include <map>
#include <vector>

#include "mesonet/dtree.hpp"
#include "mesonet/estimation.hpp"

namespace mesonet {

struct PathQuality {
  double prr = 1.0;  // product of per-link reception ratios
  double rnp = 0.0;  // sum of per-link required packets
  int hn = 0;        // full route hop count
};

// Combine per-link estimates (ordered from the deciding node toward the
// gateway) over the first `use_links` of them; `full_hop_count` is carried
// through untouched so the route length stays visible even when the window
// depth covers only part of it.
PathQuality aggregate_path(const std::vector<LinkEstimate>& links,
                           int use_links, int full_hop_count);

// Fraction of positions where two full windows agree.  Both windows must
// share the same capacity and be full.
double bit_similarity(const BitWindow& a, const BitWindow& b);

struct TraditionalSnapshot {
  int hop = 0;            // how many relays the information crossed
  double age_s = 0.0;
  BitWindow stale;        // window as the delayed observer held it
  BitWindow truth;        // window at the same link right now
  double similarity = 0.0;
};

// Hop-by-hop metric forwarding, reconstructed from the links' beacon logs:
// information about the link at hop h arrives h relays later, so the observer
// acts on the window from h * per_hop_delay seconds ago.  Links are ordered
// outward from the observer; entries whose windows are not yet full are
// skipped.
std::vector<TraditionalSnapshot> propagate_traditional(
    const std::vector<const LinkBeaconLog*>& path_links, double now_s,
    double per_hop_delay_s);

struct RpnCandidate {
  int use_links = 0;
  double test_accuracy = 0.0;
};

struct RpnReport {
  int chosen = 0;
  std::vector<RpnCandidate> curve;
};

// Datasets keyed by window depth n (same packets, features rebuilt with the
// first n links).  Trains a tree per depth on a stratified 80/20 split and
// picks the depth where the next step stops paying: the first n whose
// successor improves test accuracy by less than one percentage point.
RpnReport choose_rpn(const std::map<int, LabeledDataset>& datasets_by_depth,
                     const TreeTrainer& trainer, uint64_t seed);

}  // namespace mesonet
