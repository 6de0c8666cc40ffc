#pragma once

#include <cstdint>
#include <vector>

#include "mesonet/channel.hpp"

namespace mesonet {

// A scheduled transmission from src to dst.  `rate` is the normalized
// attempt rate g (mean fraction of time the flow would keep the air busy if
// never blocked); packet lengths are exponential with unit mean airtime.
struct ConflictFlow {
  int src = 0;
  int dst = 0;
  double rate = 0.0;
};

// Carrier-sense conflict graph: nodes, hearing adjacency, and the scheduled
// flows.  Nodes that source at least one flow are transmitters; everything
// else only matters through its neighborhoods.  Node count is capped at 31
// so subsets fit in one word; throughput solvers apply tighter caps.
class ConflictGraph {
 public:
  explicit ConflictGraph(int node_count);

  int node_count() const { return n_; }
  void add_edge(int a, int b);
  void add_flow(int src, int dst, double rate);

  bool adjacent(int a, int b) const { return adj_[a] >> b & 1u; }
  uint32_t neighborhood(int v) const { return adj_[v]; }  // excludes v
  const std::vector<ConflictFlow>& flows() const { return flows_; }
  double node_rate(int v) const { return node_rate_[v]; }  // sum of v's flows
  uint32_t transmitter_mask() const { return tx_mask_; }
  int transmitter_count() const;

 private:
  int n_;
  std::vector<uint32_t> adj_;
  std::vector<ConflictFlow> flows_;
  std::vector<double> node_rate_;
  uint32_t tx_mask_ = 0;
};

// All subsets of the transmitter set that are pairwise non-adjacent, as
// bitmasks (the empty set included).  Throws if there are more than
// `max_transmitters` transmitters.
std::vector<uint32_t> enumerate_independent_sets(const ConflictGraph& g,
                                                 int max_transmitters = 20);

// Sum over independent transmitter subsets D contained in `allowed` of the
// product of node rates in D.  SP(empty allowed) = 1.
double sum_of_products(const ConflictGraph& g, uint32_t allowed);

// Stationary probability that every node in `silent` is not transmitting.
double silence_probability(const ConflictGraph& g, uint32_t silent);

struct FlowThroughput {
  ConflictFlow flow;
  double s = 0.0;  // fraction of time the flow delivers useful payload
};

struct ThroughputSolution {
  std::vector<FlowThroughput> flows;
  std::vector<double> node_throughput;  // per node, sum over its flows
};

// Product-form solution: s_ij = g_ij * P(neighborhood of i and j silent).
ThroughputSolution csma_flow_throughput(const ConflictGraph& g);

// Independent check: build the continuous-time Markov chain over independent
// transmitter sets explicitly (attempt rate g_i, unit departure rate), solve
// the stationary distribution as a linear system, and read the same flow
// throughputs off it.  Exponential in transmitter count; capped at 12.
ThroughputSolution ctmc_oracle_throughput(const ConflictGraph& g);

// Slotted-free random access: throughput G*exp(-2G) for offered load G.
double aloha_throughput(double offered_load);

// Analytic end-to-end sweep along a line of relays, used to locate the band
// where neither radio clearly wins.
struct GrayPoint {
  int hop = 0;
  double distance_m = 0.0;
  double zigbee_bps = 0.0;  // mean per-packet goodput including losses
  double lora_bps = 0.0;
  double zigbee_latency_s = 0.0;
  double zigbee_delivery = 0.0;
  double lora_delivery = 0.0;
};

struct GraySweep {
  std::vector<GrayPoint> points;
  double band_fraction = 0.25;  // |z-l| < fraction*max marks the gray band
  double gray_min_m = 0.0;      // 0 when no point falls in the band
  double gray_max_m = 0.0;
  double crossover_m = 0.0;     // first distance where the long radio wins
  bool has_crossover = false;
};

GraySweep gray_region_sweep(int line_nodes, double spacing_m,
                            double packet_interval_s, int payload_bits,
                            const Calibration& cal,
                            double band_fraction = 0.25);

}  // namespace mesonet
