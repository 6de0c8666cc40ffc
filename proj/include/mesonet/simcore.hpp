#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mesonet/channel.hpp"
#include "mesonet/dtree.hpp"
#include "mesonet/estimation.hpp"
#include "mesonet/selectors.hpp"
#include "mesonet/topology.hpp"

namespace mesonet {

// Full description of one simulated deployment.
struct SimConfig {
  TopologySpec topo;
  Environment env = Environment::Built;
  Calibration cal;
  uint64_t seed = 1;

  double duration_s = 450.0;  // long enough for a default-size training set
  double warmup_s = 2.0;      // beacons only, lets windows fill
  double interval_s = 3.0;    // mean packet spacing per source (Poisson)
  int payload_bytes = 29;

  int alpha = 10;             // beacon window capacity
  int rpn = 4;                // links folded into the path features
  double control_hop_delay_s = 0.033;  // per-relay metric forwarding delay
  double broadcast_period_s = 5.0;     // routing broadcast spacing per node
  double pq_snapshot_period_s = 1.0;   // staleness measurement cadence

  bool sources_band_only = false;  // restrict sources to the distance band
  double source_min_m = 500.0;
  double source_max_m = 1200.0;

  SelectorKind selector = SelectorKind::TaoCart;
  std::string model_file;

  static SimConfig from_config(const KeyValueConfig& cfg);
  void validate() const;  // throws naming the offending field
  int payload_bits() const { return payload_bytes * 8; }
};

struct PacketOutcome {
  bool finished = false;   // still in flight at sim end when false
  bool delivered = false;
  double latency_s = 0.0;
  int attempts = 0;        // frames sent on the short radio path
};

// One generated packet, carried by both radios so any policy can be replayed
// over the same trace afterwards.
struct TracePacket {
  double gen_time_s = 0.0;
  NodeId src = 0;
  int hn = 0;
  double distance_m = 0.0;
  FeatureVector features;              // as the node saw them at generation
  bool lora_stale = false;
  std::vector<LinkEstimate> link_estimates;  // aged, node outward, full route
  PacketOutcome zigbee;
  PacketOutcome lora;
  bool lora_demod_drop = false;        // lost to demodulator occupancy
};

struct ControlCounters {
  uint64_t beacons = 0;
  uint64_t broadcasts = 0;
  uint64_t bitarray_bytes = 0;  // window bytes appended to broadcasts
  uint64_t dummy_uplinks = 0;
  uint64_t data_packets = 0;
  uint64_t data_bytes = 0;
};

struct SimilarityBucket {
  double sum = 0.0;
  double sumsq = 0.0;
  int count = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    count++;
  }
  double mean() const;
  double stderr_of_mean() const;  // 0 with fewer than two samples
};

struct SimilarityStats {
  // delayed-forwarding similarity by information age in hops
  std::map<int, SimilarityBucket> traditional;
  SimilarityBucket partial;  // window-depth scheme, mean over first rpn links

  double traditional_mean(int hop) const;
  double partial_mean() const;
};

struct SimTrace {
  SimConfig config;
  Topology topo;
  std::vector<TracePacket> packets;
  SimilarityStats similarity;
  ControlCounters control;
  // conservation counters per radio
  int zigbee_delivered = 0, zigbee_dropped = 0, zigbee_in_flight = 0;
  int lora_delivered = 0, lora_dropped = 0, lora_in_flight = 0;
};

// Run the deployment once, transmitting every packet on both radios.
SimTrace simulate_trace(const SimConfig& cfg);

// Throughput a finished packet achieved on one radio (0 when undelivered).
double packet_tput_bps(const PacketOutcome& o, int payload_bits);

// Labeled rows for training: features rebuilt with the first `use_links`
// links; packets that neither radio delivered carry no signal and are
// dropped, as are packets still in flight.
LabeledDataset dataset_from_trace(const SimTrace& trace, int use_links);

struct Metrics {
  int packets = 0;
  int delivered = 0;
  double mean_tput_bps = 0.0;            // over all packets, losses count 0
  double delivered_tput_bps = 0.0;       // over delivered packets only
  double mean_latency_s = 0.0;           // delivered packets only
  double loss_rate = 0.0;
  double zigbee_share = 0.0;             // fraction of packets sent short-radio
  double switch_rate = 0.0;              // radio changes per packet
  std::vector<double> latencies_s;       // delivered, ascending, for CDFs
  std::vector<double> tputs_bps;         // all packets, ascending, zeros kept
};

// Replay a recorded trace under one policy.  Packets are visited in
// generation order.  The learning selector keeps adapting: it sees the chosen
// radio's reward, discounted by the handshake cost whenever it hopped radios.
// Reported metrics are the raw per-packet outcomes for every policy.
Metrics score_selector(const SimTrace& trace, Selector& selector,
                       uint64_t seed);

// Convenience: build the configured selector and score it on a fresh trace.
struct RunResult {
  SimTrace trace;
  Metrics metrics;
};
RunResult run(const SimConfig& cfg, const DecisionTree* model,
              const QTable* qtable);

// Generate a labeled dataset of at least `min_rows` rows by extending the
// simulated horizon as needed.
LabeledDataset gen_dataset(SimConfig cfg, int min_rows);

// Bytes of window payload appended to routing broadcasts, relative to the
// application bytes offered.
double overhead_fraction(const SimTrace& trace);

struct IntervalPoint {
  double interval_s = 0.0;
  double tree_tput_bps = 0.0;
  double best_fixed_tput_bps = 0.0;
  double ratio = 0.0;
};

// Re-run the deployment across packet intervals with the same tree model and
// compare it against the better fixed radio at each load.
std::vector<IntervalPoint> interval_sweep(const SimConfig& base,
                                          const DecisionTree& model,
                                          const std::vector<double>& intervals);

}  // namespace mesonet
