#include "mesonet/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace mesonet {

ConflictGraph::ConflictGraph(int node_count) : n_(node_count) {
  if (node_count < 1 || node_count > 31)
    throw std::runtime_error("conflict graph supports 1..31 nodes");
  adj_.assign(n_, 0);
  node_rate_.assign(n_, 0.0);
}

void ConflictGraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
    throw std::runtime_error("bad conflict graph edge");
  adj_[a] |= 1u << b;
  adj_[b] |= 1u << a;
}

void ConflictGraph::add_flow(int src, int dst, double rate) {
  if (src < 0 || dst < 0 || src >= n_ || dst >= n_ || src == dst)
    throw std::runtime_error("bad flow endpoints");
  if (rate <= 0.0) throw std::runtime_error("flow rate must be > 0");
  flows_.push_back({src, dst, rate});
  node_rate_[src] += rate;
  tx_mask_ |= 1u << src;
}

int ConflictGraph::transmitter_count() const {
  return std::popcount(tx_mask_);
}

namespace {

// DFS over independent subsets of `candidates`, accumulating either the
// subsets themselves or the sum of rate products.
void collect_independent(const ConflictGraph& g, uint32_t chosen,
                         uint32_t candidates, std::vector<uint32_t>& out) {
  out.push_back(chosen);
  while (candidates) {
    int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    collect_independent(g, chosen | (1u << v),
                        candidates & ~g.neighborhood(v), out);
  }
}

double sum_products_rec(const ConflictGraph& g, double product,
                        uint32_t candidates) {
  double total = product;
  while (candidates) {
    int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    total += sum_products_rec(g, product * g.node_rate(v),
                              candidates & ~g.neighborhood(v));
  }
  return total;
}

uint32_t flow_blockers(const ConflictGraph& g, const ConflictFlow& f) {
  return (g.neighborhood(f.src) | g.neighborhood(f.dst) | (1u << f.src) |
          (1u << f.dst));
}

}  // namespace

std::vector<uint32_t> enumerate_independent_sets(const ConflictGraph& g,
                                                 int max_transmitters) {
  if (g.transmitter_count() > max_transmitters)
    throw std::runtime_error("too many transmitters to enumerate (" +
                             std::to_string(g.transmitter_count()) + " > " +
                             std::to_string(max_transmitters) + ")");
  std::vector<uint32_t> out;
  collect_independent(g, 0, g.transmitter_mask(), out);
  std::sort(out.begin(), out.end());
  return out;
}

double sum_of_products(const ConflictGraph& g, uint32_t allowed) {
  return sum_products_rec(g, 1.0, allowed & g.transmitter_mask());
}

double silence_probability(const ConflictGraph& g, uint32_t silent) {
  uint32_t all = g.node_count() >= 31 ? 0x7fffffffu
                                      : ((1u << g.node_count()) - 1);
  return sum_of_products(g, all & ~silent) / sum_of_products(g, all);
}

ThroughputSolution csma_flow_throughput(const ConflictGraph& g) {
  if (g.transmitter_count() > 20)
    throw std::runtime_error("csma_flow_throughput capped at 20 transmitters");
  ThroughputSolution sol;
  sol.node_throughput.assign(g.node_count(), 0.0);
  double sp_all = sum_of_products(g, 0xffffffffu);
  for (const ConflictFlow& f : g.flows()) {
    double sp_free = sum_of_products(g, ~flow_blockers(g, f));
    double s = f.rate * sp_free / sp_all;
    sol.flows.push_back({f, s});
    sol.node_throughput[f.src] += s;
  }
  return sol;
}

ThroughputSolution ctmc_oracle_throughput(const ConflictGraph& g) {
  if (g.transmitter_count() > 12)
    throw std::runtime_error("ctmc oracle capped at 12 transmitters");
  std::vector<uint32_t> states = enumerate_independent_sets(g, 12);
  const int m = static_cast<int>(states.size());
  auto state_index = [&](uint32_t s) {
    return static_cast<int>(
        std::lower_bound(states.begin(), states.end(), s) - states.begin());
  };

  // Build A = Q^T with the last balance equation replaced by normalization,
  // then solve A pi = e_last by Gaussian elimination.
  std::vector<double> a(static_cast<size_t>(m) * m, 0.0);
  auto at = [&](int r, int c) -> double& { return a[size_t(r) * m + c]; };
  for (int si = 0; si < m; ++si) {
    uint32_t state = states[si];
    double out_rate = 0.0;
    // departures: any active transmitter finishes at unit rate
    for (uint32_t rest = state; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      int di = state_index(state & ~(1u << v));
      at(di, si) += 1.0;
      out_rate += 1.0;
    }
    // arrivals: an idle transmitter starts if none of its neighbors is busy
    uint32_t can_start = g.transmitter_mask() & ~state;
    for (uint32_t rest = can_start; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (state & g.neighborhood(v)) continue;
      int di = state_index(state | (1u << v));
      at(di, si) += g.node_rate(v);
      out_rate += g.node_rate(v);
    }
    at(si, si) -= out_rate;
  }
  std::vector<double> rhs(m, 0.0);
  for (int c = 0; c < m; ++c) at(m - 1, c) = 1.0;
  rhs[m - 1] = 1.0;

  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r)
      if (std::fabs(at(r, col)) > std::fabs(at(pivot, col))) pivot = r;
    if (std::fabs(at(pivot, col)) < 1e-14)
      throw std::runtime_error("ctmc solve: singular system");
    if (pivot != col) {
      for (int c = col; c < m; ++c) std::swap(at(pivot, c), at(col, c));
      std::swap(rhs[pivot], rhs[col]);
    }
    for (int r = col + 1; r < m; ++r) {
      double f = at(r, col) / at(col, col);
      if (f == 0.0) continue;
      for (int c = col; c < m; ++c) at(r, c) -= f * at(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> pi(m, 0.0);
  for (int r = m - 1; r >= 0; --r) {
    double v = rhs[r];
    for (int c = r + 1; c < m; ++c) v -= at(r, c) * pi[c];
    pi[r] = v / at(r, r);
  }

  ThroughputSolution sol;
  sol.node_throughput.assign(g.node_count(), 0.0);
  for (const ConflictFlow& f : g.flows()) {
    uint32_t blockers = flow_blockers(g, f);
    double p_free = 0.0;
    for (int si = 0; si < m; ++si)
      if ((states[si] & blockers) == 0) p_free += pi[si];
    double s = f.rate * p_free;
    sol.flows.push_back({f, s});
    sol.node_throughput[f.src] += s;
  }
  return sol;
}

double aloha_throughput(double offered_load) {
  if (offered_load < 0.0)
    throw std::runtime_error("offered load must be >= 0");
  return offered_load * std::exp(-2.0 * offered_load);
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Expected attempts per offered frame and delivery probability with up to
// `retries` attempts at per-attempt success p, all attempts in one state.
double attempts_capped(double p, int retries) {
  double q = 1.0 - p, term = 1.0, total = 0.0;
  for (int i = 0; i < retries; ++i) {
    total += term;
    term *= q;
  }
  return total;
}

double delivery_capped(double p, int retries) {
  return 1.0 - std::pow(1.0 - p, retries);
}

}  // namespace

GraySweep gray_region_sweep(int line_nodes, double spacing_m,
                            double packet_interval_s, int payload_bits,
                            const Calibration& cal, double band_fraction) {
  if (line_nodes < 2 || line_nodes > 20)
    throw std::runtime_error("gray sweep expects 2..20 line nodes");
  if (spacing_m <= 0.0 || packet_interval_s <= 0.0 || payload_bits <= 0)
    throw std::runtime_error("gray sweep parameters must be positive");

  const int n = line_nodes;
  const double backoff_mean = 0.5 * (cal.backoff_min_s + cal.backoff_max_s);

  // Per-link burst mix and retry statistics.
  std::vector<double> hop_delivery(n + 1, 0.0), hop_attempts(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    GilbertElliott ge = cal.link_params((k - 0.5) * spacing_m);
    double pb = ge.stationary_bad(), pg = 1.0 - pb;
    hop_delivery[k] = pg * delivery_capped(ge.prr_good, cal.retry_limit) +
                      pb * delivery_capped(ge.prr_bad, cal.retry_limit);
    hop_attempts[k] = pg * attempts_capped(ge.prr_good, cal.retry_limit) +
                      pb * attempts_capped(ge.prr_bad, cal.retry_limit);
  }

  // Carrier-sense dilation from the relay chain's own traffic.
  ConflictGraph g(n + 1);
  for (int k = 1; k <= n; ++k) g.add_edge(k - 1, k);
  for (int k = 1; k <= n; ++k) {
    double frames_per_s = (n - k + 1) / packet_interval_s * hop_attempts[k];
    g.add_flow(k, k - 1,
               frames_per_s * (cal.zigbee_airtime_s + cal.zigbee_ack_s));
  }
  std::vector<double> hop_silence(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    uint32_t blockers = g.neighborhood(k) | g.neighborhood(k - 1) |
                        (1u << k) | (1u << (k - 1));
    hop_silence[k] = silence_probability(g, blockers & ~(1u << k));
  }

  // Long-radio side: decode floor plus demodulator occupancy.
  double m_overlap =
      (n - 1) * 2.0 * cal.lora_airtime_s / packet_interval_s;
  double p_demod = 0.0, term = std::exp(-m_overlap);
  for (int i = 0; i < cal.lora_demodulators; ++i) {
    p_demod += term;
    term *= m_overlap / (i + 1);
  }
  double lora_latency = cal.lora_latency_s();

  GraySweep sweep;
  sweep.band_fraction = band_fraction;
  double latency_acc = 0.0, delivery_acc = 1.0;
  for (int k = 1; k <= n; ++k) {
    double service = backoff_mean * hop_attempts[k] +
                     (cal.zigbee_airtime_s + cal.zigbee_ack_s +
                      cal.zigbee_proc_s) *
                         hop_attempts[k];
    latency_acc += service / hop_silence[k];
    delivery_acc *= hop_delivery[k];

    GrayPoint pt;
    pt.hop = k;
    pt.distance_m = k * spacing_m;
    pt.zigbee_latency_s = latency_acc;
    pt.zigbee_delivery = delivery_acc;
    pt.zigbee_bps = payload_bits / latency_acc * delivery_acc;

    RssiProcess rp = cal.rssi_process(pt.distance_m);
    double p_floor =
        normal_cdf((rp.mean_dbm - cal.lora_floor_dbm) / rp.sigma_db);
    pt.lora_delivery = p_floor * p_demod;
    pt.lora_bps = payload_bits / lora_latency * pt.lora_delivery;
    sweep.points.push_back(pt);
  }

  bool in_band = false;
  for (const GrayPoint& pt : sweep.points) {
    double hi = std::max(pt.zigbee_bps, pt.lora_bps);
    if (hi <= 0.0) continue;
    if (std::fabs(pt.zigbee_bps - pt.lora_bps) < band_fraction * hi) {
      if (!in_band) sweep.gray_min_m = pt.distance_m;
      sweep.gray_max_m = pt.distance_m;
      in_band = true;
    }
  }
  for (size_t i = 0; i < sweep.points.size(); ++i) {
    const GrayPoint& pt = sweep.points[i];
    if (pt.lora_bps >= pt.zigbee_bps) {
      if (i == 0) {
        sweep.crossover_m = pt.distance_m;
      } else {
        const GrayPoint& prev = sweep.points[i - 1];
        double d0 = prev.zigbee_bps - prev.lora_bps;
        double d1 = pt.zigbee_bps - pt.lora_bps;
        double frac = d0 <= d1 ? 0.0 : d0 / (d0 - d1);
        sweep.crossover_m =
            prev.distance_m + frac * (pt.distance_m - prev.distance_m);
      }
      sweep.has_crossover = true;
      break;
    }
  }
  return sweep;
}

}  // namespace mesonet
