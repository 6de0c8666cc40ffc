#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mesonet/config.hpp"

namespace mesonet {

using NodeId = int;
constexpr NodeId kGateway = 0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

enum class GeneratorKind { Line, Mesh, Explicit };

// Parameters for topology construction; normally filled from a scenario
// config.  The mesh generator grows a small number of radial relay branches
// out from the gateway; sensor placement past `source_min_m` marks the band
// of interest where data sources live.
struct TopologySpec {
  GeneratorKind kind = GeneratorKind::Line;
  double zigbee_range_m = 125.0;
  double lora_range_m = 5000.0;

  // line
  int line_nodes = 15;          // nodes excluding the gateway
  double spacing_m = 100.0;

  // mesh
  int mesh_sources = 15;        // nodes wanted inside the source band
  int mesh_branches = 3;
  double source_min_m = 500.0;
  double source_max_m = 1200.0;
  uint64_t mesh_seed = 1;

  // explicit
  std::vector<Vec2> coords;     // node 1..n positions (gateway implied at 0,0)

  static TopologySpec from_config(const KeyValueConfig& cfg);
};

struct RoutePath {
  bool reachable = false;
  int hop_count = 0;
  // Node ids from the node's first relay down to the gateway, inclusive.
  // Empty when unreachable; for a gateway neighbor it is just {kGateway}.
  std::vector<NodeId> hops;
};

// Static node placement plus the derived single-radio connectivity used by
// everything downstream: carrier-sense neighbor sets, minimum-hop routes to
// the gateway, and distance bands.  Node 0 is always the gateway at the
// origin.
class Topology {
 public:
  Topology() = default;  // empty; assign a built topology before use

  static Topology line(int nodes, double spacing_m, double zigbee_range_m = 125.0,
                       double lora_range_m = 5000.0);
  static Topology mesh(const TopologySpec& spec);
  static Topology explicit_coords(const std::vector<Vec2>& coords,
                                  double zigbee_range_m = 125.0,
                                  double lora_range_m = 5000.0);
  static Topology build(const TopologySpec& spec);

  int node_count() const { return static_cast<int>(pos_.size()); }
  const Vec2& position(NodeId id) const { return pos_.at(id); }
  double zigbee_range_m() const { return zigbee_range_; }
  double lora_range_m() const { return lora_range_; }

  // Nodes within short-radio range, ascending id, excluding self.
  const std::vector<NodeId>& neighbors(NodeId id) const { return adj_.at(id); }
  bool adjacent(NodeId a, NodeId b) const;

  double distance_to_gateway(NodeId id) const;
  bool lora_reachable(NodeId id) const;  // within long-radio range of gateway

  // Minimum-hop route to the gateway over the short-radio graph; ties broken
  // by the smallest next-hop id so routes are deterministic.
  const RoutePath& route(NodeId id) const { return routes_.at(id); }
  bool zigbee_reachable(NodeId id) const { return routes_.at(id).reachable; }
  int max_hop_count() const;

  // Undirected short-radio links as (low id, high id) pairs, sorted.
  const std::vector<std::pair<NodeId, NodeId>>& links() const { return links_; }
  int link_index(NodeId a, NodeId b) const;  // -1 when not a link

 private:
  void finish_build();  // derive adjacency, links, routes; validate

  std::vector<Vec2> pos_;
  double zigbee_range_ = 125.0;
  double lora_range_ = 5000.0;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<RoutePath> routes_;
  std::vector<std::pair<NodeId, NodeId>> links_;
};

}  // namespace mesonet
