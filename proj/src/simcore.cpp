#include "mesonet/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

#include "mesonet/pathquality.hpp"

namespace mesonet {

SimConfig SimConfig::from_config(const KeyValueConfig& cfg) {
  SimConfig c;
  c.env = environment_from_string(cfg.get_string("environment", "built"));
  c.topo = TopologySpec::from_config(cfg);
  c.cal = Calibration::defaults(c.env);
  // deployed meshes default to the placed-links profile; explicit
  // link_profile/key overrides still win
  if (c.topo.kind == GeneratorKind::Mesh && c.env == Environment::Built)
    c.cal = Calibration::placed();
  c.cal.apply_overrides(cfg);

  c.seed = cfg.get_uint64("seed", c.seed);
  c.duration_s = cfg.get_double("duration_s", c.duration_s);
  c.warmup_s = cfg.get_double("warmup_s", c.warmup_s);
  c.interval_s = cfg.get_double("interval_s", c.interval_s);
  c.payload_bytes = cfg.get_int("payload_bytes", c.payload_bytes);
  c.alpha = cfg.get_int("alpha", c.alpha);
  c.rpn = cfg.get_int("rpn", c.rpn);
  c.control_hop_delay_s =
      cfg.get_double("control_hop_delay_s", c.control_hop_delay_s);
  c.broadcast_period_s = cfg.get_double("broadcast_period_s", c.broadcast_period_s);
  c.pq_snapshot_period_s =
      cfg.get_double("pq_snapshot_period_s", c.pq_snapshot_period_s);

  std::string sources = cfg.get_string(
      "sources", c.topo.kind == GeneratorKind::Mesh ? "band" : "all");
  if (sources == "band") {
    c.sources_band_only = true;
  } else if (sources == "all") {
    c.sources_band_only = false;
  } else {
    throw std::runtime_error("sources must be all or band, got '" + sources +
                             "'");
  }
  c.source_min_m = c.topo.source_min_m;
  c.source_max_m = c.topo.source_max_m;

  c.selector = selector_kind_from_string(cfg.get_string("selector", "taocart"));
  c.model_file = cfg.get_string("model_file", "");
  c.validate();
  return c;
}

void SimConfig::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0))
      throw std::runtime_error(std::string("config field ") + field +
                               " must be > 0");
  };
  positive(duration_s, "duration_s");
  positive(interval_s, "interval_s");
  positive(control_hop_delay_s, "control_hop_delay_s");
  positive(broadcast_period_s, "broadcast_period_s");
  positive(pq_snapshot_period_s, "pq_snapshot_period_s");
  positive(cal.beacon_period_s, "beacon_period_s");
  if (warmup_s < 0.0)
    throw std::runtime_error("config field warmup_s must be >= 0");
  if (payload_bytes < 1)
    throw std::runtime_error("config field payload_bytes must be >= 1");
  if (alpha < 1) throw std::runtime_error("config field alpha must be >= 1");
  if (rpn < 1) throw std::runtime_error("config field rpn must be >= 1");
  if (source_min_m >= source_max_m)
    throw std::runtime_error("config field source_min_m must be < source_max_m");
}

double SimilarityBucket::mean() const {
  if (count == 0) throw std::runtime_error("no similarity samples");
  return sum / count;
}

double SimilarityBucket::stderr_of_mean() const {
  if (count < 2) return 0.0;
  double m = mean();
  double var = std::max(0.0, (sumsq - count * m * m) / (count - 1));
  return std::sqrt(var / count);
}

double SimilarityStats::traditional_mean(int hop) const {
  auto it = traditional.find(hop);
  if (it == traditional.end())
    throw std::runtime_error("no similarity samples at hop " +
                             std::to_string(hop));
  return it->second.mean();
}

double SimilarityStats::partial_mean() const { return partial.mean(); }

double packet_tput_bps(const PacketOutcome& o, int payload_bits) {
  if (!o.finished || !o.delivered) return 0.0;
  return payload_bits / o.latency_s;
}

namespace {

enum class EventKind : uint8_t {
  Beacon,
  PacketGen,
  TxStart,
  TxEnd,
  Ack,
  DummyUplink,
  RouteUpdate,
  PqSnapshot,
};

struct Event {
  double t = 0.0;
  uint64_t seq = 0;
  EventKind kind = EventKind::Beacon;
  int a = -1;        // link for Beacon; node otherwise
  int b = -1;        // packet index where applicable
  bool lora = false; // TxEnd/Ack flavor

  bool operator>(const Event& o) const {
    if (t != o.t) return t > o.t;
    return seq > o.seq;
  }
};

struct LinkSim {
  GilbertElliottLink ge;
  LinkBeaconLog log;
  Rng rng_chain;
  Rng rng_data;
};

struct NodeSim {
  std::deque<int> queue;       // packets waiting on the short radio
  bool mac_busy = false;       // holds the channel pipeline for the head packet
  bool transmitting = false;
  double tx_end_t = 0.0;
  int attempts = 0;            // attempts spent on the head packet's hop
  RssiProcess rssi;
  LoraPathEstimate lora_est;
  Rng rng_backoff;
  Rng rng_gen;
  Rng rng_rssi;
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg)
      : cfg_(cfg), topo_(Topology::build(cfg.topo)) {}

  SimTrace run() {
    setup();
    const double horizon = cfg_.duration_s + kDrainS;
    while (!pq_.empty() && pq_.top().t <= horizon) {
      Event ev = pq_.top();
      pq_.pop();
      dispatch(ev);
    }
    finish();
    return std::move(out_);
  }

 private:
  static constexpr double kDrainS = 10.0;  // let in-flight packets settle

  const SimConfig& cfg_;
  Topology topo_;
  std::vector<LinkSim> links_;
  std::vector<NodeSim> nodes_;
  std::vector<NodeId> sources_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> pq_;
  uint64_t seq_ = 0;
  SimTrace out_;

  // per-packet transient state
  std::vector<int> hop_pos_;          // index into the route hop list
  std::vector<double> lora_tx_rssi_;
  std::vector<std::pair<double, int>> lora_active_;  // (end_t, packet)

  void schedule(double t, EventKind kind, int a, int b = -1,
                bool lora = false) {
    pq_.push(Event{t, seq_++, kind, a, b, lora});
  }

  const std::vector<NodeId>& route_hops(NodeId n) const {
    return topo_.route(n).hops;
  }

  // endpoints of the i-th link (0-based) on n's route, counted outward from n
  std::pair<NodeId, NodeId> route_link(NodeId n, int i) const {
    const auto& hops = route_hops(n);
    NodeId from = i == 0 ? n : hops[i - 1];
    return {from, hops[i]};
  }

  void setup() {
    out_.config = cfg_;
    out_.topo = topo_;

    const auto& link_pairs = topo_.links();
    links_.reserve(link_pairs.size());
    for (size_t li = 0; li < link_pairs.size(); ++li) {
      auto [a, b] = link_pairs[li];
      Vec2 mid{0.5 * (topo_.position(a).x + topo_.position(b).x),
               0.5 * (topo_.position(a).y + topo_.position(b).y)};
      double mid_dist = distance(mid, topo_.position(kGateway));
      Rng phase_rng = make_stream(cfg_.seed, "link_phase", li);
      double phase = uniform(phase_rng, 0.0, cfg_.cal.beacon_period_s);
      LinkSim ls{
          GilbertElliottLink{cfg_.cal.link_params(mid_dist), true},
          LinkBeaconLog(phase, cfg_.cal.beacon_period_s, cfg_.alpha),
          make_stream(cfg_.seed, "link_chain", li),
          make_stream(cfg_.seed, "link_data", li),
      };
      ls.ge.seed_state(ls.rng_chain);
      links_.push_back(std::move(ls));
      schedule(phase, EventKind::Beacon, static_cast<int>(li));
    }

    nodes_.resize(topo_.node_count());
    for (int n = 0; n < topo_.node_count(); ++n) {
      NodeSim& ns = nodes_[n];
      ns.rssi = cfg_.cal.rssi_process(topo_.distance_to_gateway(n));
      ns.rng_backoff = make_stream(cfg_.seed, "node_backoff", n);
      ns.rng_gen = make_stream(cfg_.seed, "node_gen", n);
      ns.rng_rssi = make_stream(cfg_.seed, "node_rssi", n);
    }

    for (int n = 1; n < topo_.node_count(); ++n) {
      double d = topo_.distance_to_gateway(n);
      bool is_source = !cfg_.sources_band_only ||
                       (d >= cfg_.source_min_m && d <= cfg_.source_max_m);
      if (!is_source) continue;
      sources_.push_back(n);
      double first =
          cfg_.warmup_s + exponential(nodes_[n].rng_gen, cfg_.interval_s);
      if (first <= cfg_.duration_s) schedule(first, EventKind::PacketGen, n);
    }
    if (sources_.empty())
      throw std::runtime_error("no source nodes in this deployment");

    for (int n = 1; n < topo_.node_count(); ++n) {
      if (!topo_.zigbee_reachable(n)) continue;
      double stagger = cfg_.broadcast_period_s * n / topo_.node_count();
      schedule(cfg_.warmup_s + stagger, EventKind::RouteUpdate, n);
      schedule(cfg_.warmup_s + cfg_.pq_snapshot_period_s * (n + 1.0) /
                                   topo_.node_count(),
               EventKind::PqSnapshot, n);
      if (topo_.lora_reachable(n))
        schedule(cfg_.warmup_s + cfg_.cal.lora_validity_s,
                 EventKind::DummyUplink, n);
    }
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case EventKind::Beacon: on_beacon(ev); break;
      case EventKind::PacketGen: on_packet_gen(ev); break;
      case EventKind::TxStart: on_tx_start(ev); break;
      case EventKind::TxEnd:
        ev.lora ? on_lora_end(ev) : on_tx_end(ev);
        break;
      case EventKind::Ack:
        ev.lora ? on_lora_ack(ev) : on_ack(ev);
        break;
      case EventKind::DummyUplink: on_dummy_uplink(ev); break;
      case EventKind::RouteUpdate: on_route_update(ev); break;
      case EventKind::PqSnapshot: on_pq_snapshot(ev); break;
    }
  }

  void on_beacon(const Event& ev) {
    LinkSim& ls = links_[ev.a];
    step_link(ls.ge, ls.rng_chain);
    ls.log.record(beacon_outcome(ls.ge, ls.rng_chain));
    out_.control.beacons++;
    schedule(ev.t + cfg_.cal.beacon_period_s, EventKind::Beacon, ev.a);
  }

  FeatureVector features_at(NodeId n, double t, bool* stale,
                            std::vector<LinkEstimate>* per_link) const {
    const RoutePath& route = topo_.route(n);
    per_link->clear();
    for (int i = 0; i < route.hop_count; ++i) {
      auto [from, to] = route_link(n, i);
      int li = topo_.link_index(from, to);
      double age = i * cfg_.control_hop_delay_s;
      BitWindow w = links_[li].log.window_as_of(t - age);
      per_link->push_back(w.count() > 0 ? estimate_link(w)
                                        : LinkEstimate{1.0, 1.0});
    }
    LoraFeature lf =
        lora_feature(nodes_[n].lora_est, t, cfg_.cal.lora_validity_s);
    *stale = lf.stale;
    FeatureVector x;
    x.hn = route.hop_count;
    x.lora_rssi = lf.rssi_dbm;
    if (!per_link->empty()) {
      PathQuality q = aggregate_path(*per_link, cfg_.rpn, route.hop_count);
      x.zigbee_prr = q.prr;
      x.zigbee_rnp = q.rnp;
    } else {
      x.zigbee_prr = 0.0;  // unreachable mesh: worst possible path
      x.zigbee_rnp = cfg_.alpha;
    }
    return x;
  }

  void on_packet_gen(const Event& ev) {
    NodeId n = ev.a;
    NodeSim& ns = nodes_[n];
    double t = ev.t;

    int p = static_cast<int>(out_.packets.size());
    TracePacket pkt;
    pkt.gen_time_s = t;
    pkt.src = n;
    pkt.hn = topo_.route(n).hop_count;
    pkt.distance_m = topo_.distance_to_gateway(n);
    pkt.features = features_at(n, t, &pkt.lora_stale, &pkt.link_estimates);
    out_.packets.push_back(std::move(pkt));
    hop_pos_.push_back(0);
    lora_tx_rssi_.push_back(kRssiSentinelDbm);
    out_.control.data_packets++;
    out_.control.data_bytes += cfg_.payload_bytes;

    // short radio copy
    if (topo_.zigbee_reachable(n)) {
      ns.queue.push_back(p);
      try_start(n, t, 0.0);
    } else {
      out_.packets[p].zigbee.finished = true;
    }

    // long radio copy
    if (topo_.lora_reachable(n)) {
      start_lora(n, p, t);
    } else {
      out_.packets[p].lora.finished = true;
    }

    double next = t + exponential(ns.rng_gen, cfg_.interval_s);
    if (next <= cfg_.duration_s) schedule(next, EventKind::PacketGen, n);
  }

  double backoff(NodeSim& ns) {
    return uniform(ns.rng_backoff, cfg_.cal.backoff_min_s,
                   cfg_.cal.backoff_max_s);
  }

  void try_start(NodeId n, double t, double extra_delay) {
    NodeSim& ns = nodes_[n];
    if (ns.mac_busy || ns.queue.empty()) return;
    ns.mac_busy = true;
    ns.attempts = 0;
    schedule(t + extra_delay + backoff(ns), EventKind::TxStart, n);
  }

  void on_tx_start(const Event& ev) {
    NodeId n = ev.a;
    NodeSim& ns = nodes_[n];
    int p = ns.queue.front();
    NodeId dst = route_hops(p_src(p))[hop_pos_[p]];

    // carrier sense over everyone the handshake must be able to hear
    double blocked_until = 0.0;
    auto check = [&](NodeId v) {
      if (v == n) return;
      const NodeSim& vs = nodes_[v];
      if (vs.transmitting && vs.tx_end_t > ev.t)
        blocked_until = std::max(blocked_until, vs.tx_end_t);
    };
    for (NodeId v : topo_.neighbors(n)) check(v);
    for (NodeId v : topo_.neighbors(dst)) check(v);
    check(dst);
    if (blocked_until > 0.0) {
      schedule(blocked_until + backoff(ns), EventKind::TxStart, n);
      return;
    }

    ns.transmitting = true;
    ns.tx_end_t = ev.t + cfg_.cal.zigbee_airtime_s;
    schedule(ns.tx_end_t, EventKind::TxEnd, n, p);
  }

  NodeId p_src(int p) const { return out_.packets[p].src; }

  void on_tx_end(const Event& ev) {
    NodeId n = ev.a;
    NodeSim& ns = nodes_[n];
    ns.transmitting = false;
    int p = ns.queue.front();
    NodeId dst = route_hops(p_src(p))[hop_pos_[p]];
    int li = topo_.link_index(n, dst);

    out_.packets[p].zigbee.attempts++;
    ns.attempts++;
    bool ok = attempt_outcome(links_[li].ge, links_[li].rng_data);
    if (ok) {
      if (dst == kGateway) {
        PacketOutcome& o = out_.packets[p].zigbee;
        o.finished = true;
        o.delivered = true;
        o.latency_s = ev.t - out_.packets[p].gen_time_s;
      }
      schedule(ev.t + cfg_.cal.zigbee_ack_s, EventKind::Ack, n, p);
    } else if (ns.attempts < cfg_.cal.retry_limit) {
      schedule(ev.t + backoff(ns), EventKind::TxStart, n);
    } else {
      out_.packets[p].zigbee.finished = true;  // dropped at this relay
      ns.queue.pop_front();
      ns.mac_busy = false;
      ns.attempts = 0;
      try_start(n, ev.t, 0.0);
    }
  }

  void on_ack(const Event& ev) {
    NodeId n = ev.a;
    int p = ev.b;
    NodeSim& ns = nodes_[n];
    NodeId dst = route_hops(p_src(p))[hop_pos_[p]];
    ns.queue.pop_front();
    ns.mac_busy = false;
    ns.attempts = 0;

    if (dst != kGateway) {
      hop_pos_[p]++;
      nodes_[dst].queue.push_back(p);
      try_start(dst, ev.t, cfg_.cal.zigbee_proc_s);
    }
    try_start(n, ev.t, 0.0);
  }

  void start_lora(NodeId n, int p, double t) {
    NodeSim& ns = nodes_[n];
    lora_tx_rssi_[p] = sample_rssi(ns.rssi, t, ns.rng_rssi);
    double end_t = t + cfg_.cal.lora_airtime_s;
    std::erase_if(lora_active_, [&](const auto& e) { return e.first <= t; });
    if (static_cast<int>(lora_active_.size()) >= cfg_.cal.lora_demodulators) {
      out_.packets[p].lora_demod_drop = true;  // latest start loses
    } else {
      lora_active_.emplace_back(end_t, p);
    }
    schedule(end_t, EventKind::TxEnd, n, p, /*lora=*/true);
  }

  void on_lora_end(const Event& ev) {
    int p = ev.b;
    TracePacket& pkt = out_.packets[p];
    bool decoded = lora_tx_rssi_[p] >= cfg_.cal.lora_floor_dbm &&
                   !pkt.lora_demod_drop;
    pkt.lora.finished = true;
    pkt.lora.attempts = 1;
    if (decoded) {
      pkt.lora.delivered = true;
      pkt.lora.latency_s =
          (ev.t - pkt.gen_time_s) + cfg_.cal.lora_tx_overhead_s;
      schedule(ev.t + cfg_.cal.lora_ack_s, EventKind::Ack, ev.a, p,
               /*lora=*/true);
    }
  }

  void on_lora_ack(const Event& ev) {
    NodeId n = ev.a;
    NodeSim& ns = nodes_[n];
    ns.lora_est.has_sample = true;
    ns.lora_est.rssi_dbm = sample_rssi(ns.rssi, ev.t, ns.rng_rssi);
    ns.lora_est.last_ack_t = ev.t;
  }

  void on_dummy_uplink(const Event& ev) {
    NodeId n = ev.a;
    NodeSim& ns = nodes_[n];
    LoraFeature lf = lora_feature(ns.lora_est, ev.t, cfg_.cal.lora_validity_s);
    if (lf.stale) {
      out_.control.dummy_uplinks++;
      double rssi = sample_rssi(ns.rssi, ev.t, ns.rng_rssi);
      double end_t = ev.t + cfg_.cal.lora_airtime_s;
      std::erase_if(lora_active_,
                    [&](const auto& e) { return e.first <= ev.t; });
      bool room =
          static_cast<int>(lora_active_.size()) < cfg_.cal.lora_demodulators;
      if (room) lora_active_.emplace_back(end_t, -1);
      if (room && rssi >= cfg_.cal.lora_floor_dbm)
        schedule(end_t + cfg_.cal.lora_ack_s, EventKind::Ack, n, -1,
                 /*lora=*/true);
    }
    schedule(ev.t + cfg_.cal.lora_validity_s, EventKind::DummyUplink, n);
  }

  void on_route_update(const Event& ev) {
    NodeId n = ev.a;
    out_.control.broadcasts++;
    int advertised = std::min(topo_.route(n).hop_count, cfg_.rpn);
    out_.control.bitarray_bytes +=
        static_cast<uint64_t>((cfg_.alpha + 7) / 8) * advertised;
    schedule(ev.t + cfg_.broadcast_period_s, EventKind::RouteUpdate, n);
  }

  void on_pq_snapshot(const Event& ev) {
    NodeId n = ev.a;
    const RoutePath& route = topo_.route(n);

    // delayed hop-by-hop forwarding, viewed from the gateway: information
    // about the link h hops out is h relays old
    std::vector<const LinkBeaconLog*> outward;
    for (int i = route.hop_count - 1; i >= 0; --i) {
      auto [from, to] = route_link(n, i);
      outward.push_back(&links_[topo_.link_index(from, to)].log);
    }
    for (const TraditionalSnapshot& snap :
         propagate_traditional(outward, ev.t, cfg_.control_hop_delay_s))
      out_.similarity.traditional[snap.hop].add(snap.similarity);

    // window-depth scheme, viewed from the node: link i is i-1 relays old
    double sum = 0.0;
    int cnt = 0;
    for (int i = 0; i < std::min(route.hop_count, cfg_.rpn); ++i) {
      auto [from, to] = route_link(n, i);
      const LinkBeaconLog& log = links_[topo_.link_index(from, to)].log;
      BitWindow stale =
          log.window_as_of(ev.t - i * cfg_.control_hop_delay_s);
      BitWindow truth = log.window_as_of(ev.t);
      if (!stale.full() || !truth.full()) continue;
      sum += bit_similarity(stale, truth);
      cnt++;
    }
    if (cnt > 0) out_.similarity.partial.add(sum / cnt);
    schedule(ev.t + cfg_.pq_snapshot_period_s, EventKind::PqSnapshot, n);
  }

  void finish() {
    for (const TracePacket& pkt : out_.packets) {
      if (!pkt.zigbee.finished) {
        out_.zigbee_in_flight++;
      } else {
        (pkt.zigbee.delivered ? out_.zigbee_delivered : out_.zigbee_dropped)++;
      }
      if (!pkt.lora.finished) {
        out_.lora_in_flight++;
      } else {
        (pkt.lora.delivered ? out_.lora_delivered : out_.lora_dropped)++;
      }
    }
  }
};

}  // namespace

SimTrace simulate_trace(const SimConfig& cfg) {
  cfg.validate();
  Simulator sim(cfg);
  return sim.run();
}

LabeledDataset dataset_from_trace(const SimTrace& trace, int use_links) {
  if (use_links < 1) throw std::runtime_error("use_links must be >= 1");
  const int bits = trace.config.payload_bits();
  LabeledDataset data;
  for (const TracePacket& pkt : trace.packets) {
    if (!pkt.zigbee.finished || !pkt.lora.finished) continue;
    double tz = packet_tput_bps(pkt.zigbee, bits);
    double tl = packet_tput_bps(pkt.lora, bits);
    if (tz == 0.0 && tl == 0.0) continue;  // nothing to prefer
    LabeledRow row;
    row.x = pkt.features;
    if (!pkt.link_estimates.empty()) {
      PathQuality q = aggregate_path(pkt.link_estimates, use_links, pkt.hn);
      row.x.zigbee_prr = q.prr;
      row.x.zigbee_rnp = q.rnp;
    }
    row.tput_zigbee = tz;
    row.tput_lora = tl;
    row.label = better_radio(tz, tl);
    data.push_back(row);
  }
  return data;
}

Metrics score_selector(const SimTrace& trace, Selector& selector,
                       uint64_t seed) {
  Rng rng = make_stream(seed, "selector_score",
                        static_cast<uint64_t>(selector.kind()));
  const int bits = trace.config.payload_bits();
  const Calibration& cal = trace.config.cal;

  Metrics m;
  std::vector<RadioChoice> prev(trace.topo.node_count(), RadioChoice::Zigbee);
  std::vector<char> seen(trace.topo.node_count(), 0);
  double tput_sum = 0.0, delivered_tput_sum = 0.0, latency_sum = 0.0;
  int zigbee_picks = 0, switches = 0;

  for (const TracePacket& pkt : trace.packets) {
    if (!pkt.zigbee.finished || !pkt.lora.finished) continue;
    double tz = packet_tput_bps(pkt.zigbee, bits);
    double tl = packet_tput_bps(pkt.lora, bits);

    SelectContext ctx{pkt.features, pkt.distance_m, prev[pkt.src]};
    RadioChoice choice = selector.kind() == SelectorKind::Oracle
                             ? oracle_select(tz, tl)
                             : selector.select(ctx, rng);

    const PacketOutcome& o =
        choice == RadioChoice::Zigbee ? pkt.zigbee : pkt.lora;
    double tput = choice == RadioChoice::Zigbee ? tz : tl;

    // the learning baseline is charged for hopping radios: the handshake
    // stretches the packet it would have delivered.  A node's first packet
    // establishes its radio and is neither charged nor counted as a switch.
    double shaped = tput;
    double penalty =
        seen[pkt.src] ? switch_penalty_s(prev[pkt.src], choice, cal) : 0.0;
    if (o.delivered && penalty > 0.0)
      shaped = bits / (o.latency_s + penalty);
    selector.observe(ctx, choice, shaped);

    m.packets++;
    tput_sum += tput;
    m.tputs_bps.push_back(tput);
    if (choice == RadioChoice::Zigbee) zigbee_picks++;
    if (seen[pkt.src] && choice != prev[pkt.src]) switches++;
    prev[pkt.src] = choice;
    seen[pkt.src] = 1;
    if (o.delivered) {
      m.delivered++;
      delivered_tput_sum += tput;
      latency_sum += o.latency_s;
      m.latencies_s.push_back(o.latency_s);
    }
  }

  if (m.packets == 0) throw std::runtime_error("no finished packets to score");
  std::sort(m.latencies_s.begin(), m.latencies_s.end());
  std::sort(m.tputs_bps.begin(), m.tputs_bps.end());
  m.mean_tput_bps = tput_sum / m.packets;
  m.delivered_tput_bps = m.delivered ? delivered_tput_sum / m.delivered : 0.0;
  m.mean_latency_s = m.delivered ? latency_sum / m.delivered : 0.0;
  m.loss_rate = 1.0 - static_cast<double>(m.delivered) / m.packets;
  m.zigbee_share = static_cast<double>(zigbee_picks) / m.packets;
  m.switch_rate = static_cast<double>(switches) / m.packets;
  return m;
}

RunResult run(const SimConfig& cfg, const DecisionTree* model,
              const QTable* qtable) {
  std::unique_ptr<Selector> sel;
  switch (cfg.selector) {
    case SelectorKind::FixedZigbee:
      sel = make_fixed_selector(RadioChoice::Zigbee);
      break;
    case SelectorKind::FixedLora:
      sel = make_fixed_selector(RadioChoice::LoRa);
      break;
    case SelectorKind::Threshold:
      sel = make_threshold_selector(ThresholdTable::defaults());
      break;
    case SelectorKind::TaoCart:
      if (!model)
        throw std::runtime_error("the taocart selector needs a trained model");
      sel = make_tree_selector(*model);
      break;
    case SelectorKind::QLearning:
      sel = qtable ? make_qlearning_selector(*qtable, 0.0)
                   : make_qlearning_selector(QTable{}, 0.1);
      break;
    case SelectorKind::Oracle:
      sel = make_oracle_selector();
      break;
  }
  RunResult r;
  r.trace = simulate_trace(cfg);
  r.metrics = score_selector(r.trace, *sel, cfg.seed);
  return r;
}

LabeledDataset gen_dataset(SimConfig cfg, int min_rows) {
  if (min_rows < 1) throw std::runtime_error("min_rows must be >= 1");
  for (int attempt = 0; attempt < 6; ++attempt) {
    SimTrace trace = simulate_trace(cfg);
    LabeledDataset data = dataset_from_trace(trace, cfg.rpn);
    if (static_cast<int>(data.size()) >= min_rows) return data;
    cfg.duration_s *= 2.0;
  }
  throw std::runtime_error("could not collect enough labeled rows");
}

double overhead_fraction(const SimTrace& trace) {
  if (trace.control.data_bytes == 0)
    throw std::runtime_error("no application bytes were offered");
  return static_cast<double>(trace.control.bitarray_bytes) /
         static_cast<double>(trace.control.data_bytes);
}

std::vector<IntervalPoint> interval_sweep(const SimConfig& base,
                                          const DecisionTree& model,
                                          const std::vector<double>& intervals) {
  std::vector<IntervalPoint> out;
  for (double interval : intervals) {
    SimConfig cfg = base;
    cfg.interval_s = interval;
    SimTrace trace = simulate_trace(cfg);
    auto tree_sel = make_tree_selector(model);
    auto fz = make_fixed_selector(RadioChoice::Zigbee);
    auto fl = make_fixed_selector(RadioChoice::LoRa);
    IntervalPoint pt;
    pt.interval_s = interval;
    pt.tree_tput_bps = score_selector(trace, *tree_sel, cfg.seed).mean_tput_bps;
    pt.best_fixed_tput_bps =
        std::max(score_selector(trace, *fz, cfg.seed).mean_tput_bps,
                 score_selector(trace, *fl, cfg.seed).mean_tput_bps);
    pt.ratio = pt.best_fixed_tput_bps > 0.0
                   ? pt.tree_tput_bps / pt.best_fixed_tput_bps
                   : 0.0;
    out.push_back(pt);
  }
  return out;
}

}  // namespace mesonet
