#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qaoa {

struct Edge {
  int u = 0;
  int v = 0;
  double cost = 0.0;
  double resource = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A constrained-shortest-path instance: directed graph with per-edge cost and
/// resource, fixed source/target and a total resource budget. The edge list is
/// canonical (sorted by (u, v), no duplicates); edge index i is binary
/// variable / qubit i everywhere downstream.
class CsppInstance {
 public:
  /// Validates all structural invariants; throws std::invalid_argument on
  /// violation (bad node ids, self-loops, duplicate or unsorted edges,
  /// negative weights, source == target).
  CsppInstance(int num_nodes, std::vector<Edge> edges, int source, int target,
               double resource_limit, std::uint64_t seed = 0);

  int num_nodes() const { return num_nodes_; }
  int source() const { return source_; }
  int target() const { return target_; }
  double resource_limit() const { return resource_limit_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  /// Index of directed edge (u, v) in the canonical list, if present.
  std::optional<std::size_t> edge_index(int u, int v) const;

  friend bool operator==(const CsppInstance&, const CsppInstance&) = default;

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
  int source_;
  int target_;
  double resource_limit_;
  std::uint64_t seed_;
};

struct PathSolution {
  std::vector<int> vertices;               // source ... target
  std::vector<std::size_t> edge_indices;   // one per hop
  double path_cost = 0.0;
  double path_resource = 0.0;
  bool feasible = false;                   // path_resource <= resource_limit
};

enum class Violation {
  SourceOut,         // not exactly one edge leaving the source
  SourceIn,          // an edge enters the source
  TargetIn,          // not exactly one edge entering the target
  TargetOut,         // an edge leaves the target
  FlowConservation,  // some interior vertex has in-degree != out-degree
  ResourceBudget,    // selected resource total exceeds the limit
};

struct DecodedCandidate {
  std::vector<std::uint8_t> bitstring;
  bool is_valid_path = false;           // all flow constraints hold
  std::vector<Violation> violations;    // sorted, unique
  std::optional<double> cost_if_valid;  // set only when flow constraints hold
};

bool has_violation(const DecodedCandidate& candidate, Violation v);

struct GenConfig {
  int cost_min = 1;
  int cost_max = 10;
  int resource_min = 1;
  int resource_max = 10;
  double slack_factor = 1.2;
  int max_retries = 1000;
};

/// Generates a random instance with exactly `num_edges` directed edges and at
/// least one resource-feasible source->target path. Deterministic in
/// (seed, num_edges, config). Topology: node count drawn from
/// [4, num_edges] (raised when too few node pairs exist), source = 0,
/// target = num_nodes - 1, distinct edges drawn uniformly; integer costs and
/// resources from the configured ranges; the budget is
/// ceil(slack_factor * resource of the minimum-resource path).
/// Throws std::invalid_argument on bad arguments and std::runtime_error after
/// config.max_retries attempts without a feasible topology.
CsppInstance generate_instance(std::uint64_t seed, int num_edges,
                               const GenConfig& config = {});

/// All simple source->target paths, lexicographic by vertex sequence.
std::vector<PathSolution> enumerate_paths(const CsppInstance& instance);

/// Minimum-cost feasible path; ties broken by smaller resource, then
/// lexicographically smaller vertex sequence. Empty when no feasible path.
std::optional<PathSolution> solve_exact(const CsppInstance& instance);

/// Checks every constraint family on an edge-selection bitstring.
DecodedCandidate decode_bitstring(const CsppInstance& instance,
                                  const std::vector<std::uint8_t>& bits);

/// Indicator bitstring of a path's edge set.
std::vector<std::uint8_t> path_bitstring(const CsppInstance& instance,
                                         const PathSolution& path);

}  // namespace qaoa
