#include "mesonet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mesonet/rng.hpp"

namespace mesonet {

double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

TopologySpec TopologySpec::from_config(const KeyValueConfig& cfg) {
  TopologySpec s;
  std::string gen = cfg.get_string("generator", "line");
  if (gen == "line") {
    s.kind = GeneratorKind::Line;
  } else if (gen == "mesh") {
    s.kind = GeneratorKind::Mesh;
  } else if (gen == "explicit") {
    s.kind = GeneratorKind::Explicit;
  } else {
    throw std::runtime_error("generator must be line, mesh or explicit, got '" +
                             gen + "'");
  }
  s.zigbee_range_m = cfg.get_double("zigbee_range_m", s.zigbee_range_m);
  s.lora_range_m = cfg.get_double("lora_range_m", s.lora_range_m);
  s.line_nodes = cfg.get_int("nodes", s.line_nodes);
  s.spacing_m = cfg.get_double("spacing_m", s.spacing_m);
  s.mesh_sources = cfg.get_int("mesh_sources", s.mesh_sources);
  s.mesh_branches = cfg.get_int("mesh_branches", s.mesh_branches);
  s.source_min_m = cfg.get_double("source_min_m", s.source_min_m);
  s.source_max_m = cfg.get_double("source_max_m", s.source_max_m);
  s.mesh_seed = cfg.get_uint64("mesh_seed", s.mesh_seed);
  if (s.kind == GeneratorKind::Explicit) {
    std::string coords = cfg.require_string("coords");
    std::replace(coords.begin(), coords.end(), ';', '\n');
    std::istringstream in(coords);
    std::string pair;
    while (std::getline(in, pair)) {
      if (pair.find_first_not_of(" \t") == std::string::npos) continue;
      Vec2 p;
      char comma = 0;
      std::istringstream ps(pair);
      if (!(ps >> p.x >> comma >> p.y) || comma != ',')
        throw std::runtime_error("coords entry not 'x,y': '" + pair + "'");
      s.coords.push_back(p);
    }
    if (s.coords.empty()) throw std::runtime_error("coords is empty");
  }
  return s;
}

Topology Topology::line(int nodes, double spacing_m, double zigbee_range_m,
                        double lora_range_m) {
  if (nodes < 1) throw std::runtime_error("line topology needs >= 1 node");
  if (spacing_m <= 0.0) throw std::runtime_error("spacing_m must be > 0");
  Topology t;
  t.zigbee_range_ = zigbee_range_m;
  t.lora_range_ = lora_range_m;
  t.pos_.resize(nodes + 1);
  for (int i = 0; i <= nodes; ++i) t.pos_[i] = {spacing_m * i, 0.0};
  t.finish_build();
  return t;
}

Topology Topology::explicit_coords(const std::vector<Vec2>& coords,
                                   double zigbee_range_m, double lora_range_m) {
  if (coords.empty()) throw std::runtime_error("explicit topology needs nodes");
  Topology t;
  t.zigbee_range_ = zigbee_range_m;
  t.lora_range_ = lora_range_m;
  t.pos_.push_back({0.0, 0.0});
  t.pos_.insert(t.pos_.end(), coords.begin(), coords.end());
  t.finish_build();
  return t;
}

// Grows `mesh_branches` radial chains outward from the gateway with jittered
// step length and heading, until each chain has placed its share of nodes
// inside the [source_min_m, source_max_m] band.  Consecutive chain nodes stay
// within short-radio range, so the result is connected by construction;
// neighboring branches weave extra cross links near the gateway.  A draw that
// puts two nodes implausibly close is rejected and retried.
Topology Topology::mesh(const TopologySpec& spec) {
  if (spec.mesh_sources < 1) throw std::runtime_error("mesh_sources must be >= 1");
  if (spec.mesh_branches < 1) throw std::runtime_error("mesh_branches must be >= 1");
  if (spec.source_min_m >= spec.source_max_m)
    throw std::runtime_error("source_min_m must be < source_max_m");

  Rng rng = make_stream(spec.mesh_seed, "mesh_topology", 0);
  const double kMinSeparation = 0.25 * spec.zigbee_range_m;

  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Vec2> pts;
    bool ok = true;
    for (int b = 0; b < spec.mesh_branches && ok; ++b) {
      int quota = spec.mesh_sources / spec.mesh_branches +
                  (b < spec.mesh_sources % spec.mesh_branches ? 1 : 0);
      if (quota == 0) continue;
      double theta = 2.0 * M_PI * b / spec.mesh_branches + uniform(rng, -0.2, 0.2);
      double radius = 0.0;
      Vec2 cur{0.0, 0.0};
      int placed_sources = 0;
      int guard = 0;
      while (placed_sources < quota) {
        if (++guard > 200 || radius > spec.source_max_m) {
          ok = false;
          break;
        }
        double step = uniform(rng, 0.72, 0.95) * spec.zigbee_range_m;
        theta += uniform(rng, -0.22, 0.22);
        Vec2 next{cur.x + step * std::cos(theta), cur.y + step * std::sin(theta)};
        double r = std::hypot(next.x, next.y);
        // keep chains growing outward so hop count tracks distance
        if (r < radius + 0.5 * step) continue;
        bool clash = false;
        for (const Vec2& p : pts)
          if (distance(p, next) < kMinSeparation) clash = true;
        if (std::hypot(next.x, next.y) < kMinSeparation) clash = true;
        if (clash) continue;
        pts.push_back(next);
        cur = next;
        radius = r;
        if (r >= spec.source_min_m && r <= spec.source_max_m) ++placed_sources;
      }
    }
    if (!ok) continue;

    Topology t;
    t.zigbee_range_ = spec.zigbee_range_m;
    t.lora_range_ = spec.lora_range_m;
    t.pos_.push_back({0.0, 0.0});
    t.pos_.insert(t.pos_.end(), pts.begin(), pts.end());
    t.finish_build();
    bool connected = true;
    for (int i = 1; i < t.node_count(); ++i)
      if (!t.zigbee_reachable(i)) connected = false;
    if (connected) return t;
  }
  throw std::runtime_error("mesh generator failed to produce a connected layout");
}

Topology Topology::build(const TopologySpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::Line:
      return line(spec.line_nodes, spec.spacing_m, spec.zigbee_range_m,
                  spec.lora_range_m);
    case GeneratorKind::Mesh:
      return mesh(spec);
    case GeneratorKind::Explicit:
      return explicit_coords(spec.coords, spec.zigbee_range_m, spec.lora_range_m);
  }
  throw std::runtime_error("unhandled generator kind");
}

void Topology::finish_build() {
  const int n = node_count();
  adj_.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (distance(pos_[i], pos_[j]) <= zigbee_range_) {
        adj_[i].push_back(j);
        adj_[j].push_back(i);
        links_.emplace_back(i, j);
      }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  std::sort(links_.begin(), links_.end());

  // BFS from the gateway; parent chosen as the smallest-id neighbor one hop
  // closer, which makes min-hop routes unique and deterministic.
  std::vector<int> dist(n, std::numeric_limits<int>::max());
  dist[kGateway] = 0;
  std::deque<NodeId> q{kGateway};
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId v : adj_[u])
      if (dist[v] == std::numeric_limits<int>::max()) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  routes_.assign(n, {});
  routes_[kGateway] = {true, 0, {}};
  for (int i = 1; i < n; ++i) {
    if (dist[i] == std::numeric_limits<int>::max()) continue;
    RoutePath r;
    r.reachable = true;
    r.hop_count = dist[i];
    NodeId cur = i;
    while (cur != kGateway) {
      NodeId parent = -1;
      for (NodeId v : adj_[cur])
        if (dist[v] == dist[cur] - 1) {
          parent = v;
          break;  // neighbors sorted ascending, so first match is smallest id
        }
      r.hops.push_back(parent);
      cur = parent;
    }
    if (static_cast<int>(r.hops.size()) != r.hop_count)
      throw std::runtime_error("route length mismatch (internal)");
    routes_[i] = std::move(r);
  }
}

bool Topology::adjacent(NodeId a, NodeId b) const {
  const auto& v = adj_.at(a);
  return std::binary_search(v.begin(), v.end(), b);
}

double Topology::distance_to_gateway(NodeId id) const {
  return distance(pos_.at(id), pos_.at(kGateway));
}

bool Topology::lora_reachable(NodeId id) const {
  return distance_to_gateway(id) <= lora_range_;
}

int Topology::max_hop_count() const {
  int m = 0;
  for (const auto& r : routes_)
    if (r.reachable) m = std::max(m, r.hop_count);
  return m;
}

int Topology::link_index(NodeId a, NodeId b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(links_.begin(), links_.end(), std::make_pair(a, b));
  if (it == links_.end() || *it != std::make_pair(a, b)) return -1;
  return static_cast<int>(it - links_.begin());
}

}  // namespace mesonet
