#include "qaoa/cspp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qaoa/rng.hpp"

namespace qaoa {

CsppInstance::CsppInstance(int num_nodes, std::vector<Edge> edges, int source,
                           int target, double resource_limit,
                           std::uint64_t seed)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      source_(source),
      target_(target),
      resource_limit_(resource_limit),
      seed_(seed) {
  if (num_nodes_ < 2) throw std::invalid_argument("instance needs >= 2 nodes");
  if (source_ == target_) throw std::invalid_argument("source == target");
  auto in_range = [&](int v) { return v >= 0 && v < num_nodes_; };
  if (!in_range(source_) || !in_range(target_))
    throw std::invalid_argument("source/target out of range");
  if (resource_limit_ < 0.0)
    throw std::invalid_argument("negative resource limit");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!in_range(e.u) || !in_range(e.v))
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop edge");
    if (e.cost < 0.0 || e.resource < 0.0)
      throw std::invalid_argument("negative edge cost or resource");
    if (i > 0) {
      const Edge& prev = edges_[i - 1];
      if (std::pair(prev.u, prev.v) >= std::pair(e.u, e.v))
        throw std::invalid_argument(
            "edge list not in canonical (u, v) order or has duplicates");
    }
  }
}

std::optional<std::size_t> CsppInstance::edge_index(int u, int v) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair(u, v),
      [](const Edge& e, const std::pair<int, int>& key) {
        return std::pair(e.u, e.v) < key;
      });
  if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool has_violation(const DecodedCandidate& candidate, Violation v) {
  return std::find(candidate.violations.begin(), candidate.violations.end(),
                   v) != candidate.violations.end();
}

namespace {

// Smallest m with m*(m-1) >= num_edges, floored at 4.
int min_node_count(int num_edges) {
  int m = 4;
  while (static_cast<long long>(m) * (m - 1) < num_edges) ++m;
  return m;
}

std::optional<CsppInstance> try_generate(std::uint64_t attempt_seed,
                                         std::uint64_t user_seed,
                                         int num_edges,
                                         const GenConfig& config) {
  SplitMix64 rng(attempt_seed);

  const int lo_nodes = min_node_count(num_edges);
  const int hi_nodes = std::max(lo_nodes, num_edges);
  const int num_nodes =
      static_cast<int>(rng.next_between(lo_nodes, hi_nodes));
  const int source = 0;
  const int target = num_nodes - 1;

  // Partial Fisher-Yates over all candidate directed pairs.
  std::vector<std::pair<int, int>> candidates;
  candidates.reserve(static_cast<std::size_t>(num_nodes) * (num_nodes - 1));
  for (int u = 0; u < num_nodes; ++u)
    for (int v = 0; v < num_nodes; ++v)
      if (u != v) candidates.emplace_back(u, v);
  for (int k = 0; k < num_edges; ++k) {
    const std::size_t pick =
        k + rng.next_below(candidates.size() - static_cast<std::size_t>(k));
    std::swap(candidates[static_cast<std::size_t>(k)], candidates[pick]);
  }
  candidates.resize(static_cast<std::size_t>(num_edges));
  std::sort(candidates.begin(), candidates.end());

  // Weights are drawn in canonical edge order so the instance is a pure
  // function of the seed regardless of the sampling permutation.
  std::vector<Edge> edges;
  edges.reserve(candidates.size());
  for (const auto& [u, v] : candidates) {
    Edge e;
    e.u = u;
    e.v = v;
    e.cost = static_cast<double>(
        rng.next_between(config.cost_min, config.cost_max));
    e.resource = static_cast<double>(
        rng.next_between(config.resource_min, config.resource_max));
    edges.push_back(e);
  }

  CsppInstance instance(num_nodes, std::move(edges), source, target,
                        std::numeric_limits<double>::infinity(), user_seed);
  const auto paths = enumerate_paths(instance);
  if (paths.empty()) return std::nullopt;

  double min_resource = paths.front().path_resource;
  for (const auto& p : paths)
    min_resource = std::min(min_resource, p.path_resource);
  const double limit = std::ceil(config.slack_factor * min_resource);

  return CsppInstance(instance.num_nodes(), instance.edges(), source, target,
                      limit, user_seed);
}

}  // namespace

CsppInstance generate_instance(std::uint64_t seed, int num_edges,
                               const GenConfig& config) {
  if (num_edges < 3) throw std::invalid_argument("num_edges must be >= 3");
  if (config.cost_min > config.cost_max || config.cost_min < 0 ||
      config.resource_min > config.resource_max || config.resource_min < 0)
    throw std::invalid_argument("empty or negative cost/resource range");
  if (config.slack_factor < 1.0)
    throw std::invalid_argument("slack_factor must be >= 1");
  if (config.max_retries < 1)
    throw std::invalid_argument("max_retries must be >= 1");

  for (int attempt = 0; attempt < config.max_retries; ++attempt) {
    auto instance = try_generate(
        mix_seed(seed, static_cast<std::uint64_t>(attempt)), seed, num_edges,
        config);
    if (instance) return std::move(*instance);
  }
  throw std::runtime_error(
      "no feasible instance for seed " + std::to_string(seed) + " with " +
      std::to_string(num_edges) + " edges after " +
      std::to_string(config.max_retries) + " attempts");
}

std::vector<PathSolution> enumerate_paths(const CsppInstance& instance) {
  // Adjacency in ascending neighbor order; DFS then yields paths in
  // lexicographic vertex-sequence order.
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(
      static_cast<std::size_t>(instance.num_nodes()));
  for (std::size_t i = 0; i < instance.num_edges(); ++i) {
    const Edge& e = instance.edges()[i];
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, i);
  }

  std::vector<PathSolution> result;
  std::vector<int> vertices{instance.source()};
  std::vector<std::size_t> edge_indices;
  std::vector<char> visited(static_cast<std::size_t>(instance.num_nodes()), 0);
  visited[static_cast<std::size_t>(instance.source())] = 1;

  auto dfs = [&](auto&& self, int node) -> void {
    if (node == instance.target()) {
      PathSolution p;
      p.vertices = vertices;
      p.edge_indices = edge_indices;
      for (std::size_t i : edge_indices) {
        p.path_cost += instance.edges()[i].cost;
        p.path_resource += instance.edges()[i].resource;
      }
      p.feasible = p.path_resource <= instance.resource_limit();
      result.push_back(std::move(p));
      return;
    }
    for (const auto& [next, idx] : adj[static_cast<std::size_t>(node)]) {
      if (visited[static_cast<std::size_t>(next)]) continue;
      visited[static_cast<std::size_t>(next)] = 1;
      vertices.push_back(next);
      edge_indices.push_back(idx);
      self(self, next);
      edge_indices.pop_back();
      vertices.pop_back();
      visited[static_cast<std::size_t>(next)] = 0;
    }
  };
  dfs(dfs, instance.source());
  return result;
}

std::optional<PathSolution> solve_exact(const CsppInstance& instance) {
  std::optional<PathSolution> best;
  for (auto& p : enumerate_paths(instance)) {
    if (!p.feasible) continue;
    if (!best || p.path_cost < best->path_cost ||
        (p.path_cost == best->path_cost &&
         (p.path_resource < best->path_resource ||
          (p.path_resource == best->path_resource &&
           p.vertices < best->vertices)))) {
      best = std::move(p);
    }
  }
  return best;
}

DecodedCandidate decode_bitstring(const CsppInstance& instance,
                                  const std::vector<std::uint8_t>& bits) {
  if (bits.size() != instance.num_edges())
    throw std::invalid_argument("bitstring length != number of edges");

  DecodedCandidate out;
  out.bitstring = bits;

  const std::size_t n_nodes = static_cast<std::size_t>(instance.num_nodes());
  std::vector<int> in_deg(n_nodes, 0), out_deg(n_nodes, 0);
  double cost = 0.0, resource = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const Edge& e = instance.edges()[i];
    ++out_deg[static_cast<std::size_t>(e.u)];
    ++in_deg[static_cast<std::size_t>(e.v)];
    cost += e.cost;
    resource += e.resource;
  }

  const auto s = static_cast<std::size_t>(instance.source());
  const auto t = static_cast<std::size_t>(instance.target());
  if (out_deg[s] != 1) out.violations.push_back(Violation::SourceOut);
  if (in_deg[s] != 0) out.violations.push_back(Violation::SourceIn);
  if (in_deg[t] != 1) out.violations.push_back(Violation::TargetIn);
  if (out_deg[t] != 0) out.violations.push_back(Violation::TargetOut);
  bool flow_ok = true;
  for (std::size_t v = 0; v < n_nodes; ++v) {
    if (v == s || v == t) continue;
    if (in_deg[v] != out_deg[v]) {
      flow_ok = false;
      break;
    }
  }
  if (!flow_ok) out.violations.push_back(Violation::FlowConservation);
  if (resource > instance.resource_limit())
    out.violations.push_back(Violation::ResourceBudget);

  out.is_valid_path =
      out.violations.empty() ||
      (out.violations.size() == 1 &&
       out.violations.front() == Violation::ResourceBudget);
  if (out.is_valid_path) out.cost_if_valid = cost;
  return out;
}

std::vector<std::uint8_t> path_bitstring(const CsppInstance& instance,
                                         const PathSolution& path) {
  std::vector<std::uint8_t> bits(instance.num_edges(), 0);
  for (std::size_t i : path.edge_indices) bits.at(i) = 1;
  return bits;
}

}  // namespace qaoa
