// Copyright 2026 The epinet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epinet/network.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "epinet/errors.h"

namespace epinet {

namespace {

Edge Normalized(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::uint64_t Key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
}

constexpr std::array<std::string_view, kNumSuiteLevels> kLevelNames = {
    "L_0", "L_s", "L_m", "L_l", "R_xs", "R_s", "R_m", "R_l"};

}  // namespace

Network::Network(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw InputError("edge endpoint out of range [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw InputError("self-loop on node " + std::to_string(e.u));
    e = Normalized(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Network::HasEdge(NodeId a, NodeId b) const {
  if (a == b) return false;
  return std::binary_search(edges_.begin(), edges_.end(), Normalized(a, b));
}

std::vector<int> Network::Degrees() const {
  std::vector<int> degree(n_, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  return degree;
}

double Network::MeanDegree() const {
  return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / n_;
}

bool Network::IsSubsetOf(const Network& other) const {
  return n_ == other.n_ && std::includes(other.edges_.begin(), other.edges_.end(),
                                         edges_.begin(), edges_.end());
}

void Network::WriteEdgeList(std::ostream& out) const {
  for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
}

Network BuildRingLattice(int n) {
  if (n < 5) {
    throw InputError("ring lattice needs at least 5 nodes for degree 4, got " +
                     std::to_string(n));
  }
  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) {
    edges.push_back(Normalized(i, (i + 1) % n));
    edges.push_back(Normalized(i, (i + 2) % n));
  }
  return Network(n, std::move(edges));
}

Network Rewire(const Network& base, double alpha, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("rewiring probability must lie in [0, 1]");
  }
  const int n = base.size();
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : base.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  auto remove = [&adj](NodeId a, NodeId b) {
    auto& list = adj[a];
    list.erase(std::find(list.begin(), list.end(), b));
  };
  auto adjacent = [&adj](NodeId a, NodeId b) {
    const auto& list = adj[a];
    return std::find(list.begin(), list.end(), b) != list.end();
  };

  for (const Edge& e : base.edges()) {
    if (!rng.Bernoulli(alpha)) continue;
    const NodeId i = e.u;
    const NodeId j = e.v;
    if (static_cast<int>(adj[i].size()) >= n - 1) continue;  // no candidate
    NodeId k;
    do {
      k = static_cast<NodeId>(rng.UniformInt(0, n - 1));
    } while (k == i || adjacent(i, k));
    remove(i, j);
    remove(j, i);
    adj[i].push_back(k);
    adj[k].push_back(i);
  }

  std::vector<Edge> edges;
  edges.reserve(base.edge_count());
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : adj[a]) {
      if (a < b) edges.push_back({a, b});
    }
  }
  return Network(n, std::move(edges));
}

Network BuildErOverlay(int n, double expected_added_degree, Rng& rng) {
  if (n < 0) throw InputError("negative node count");
  if (!(expected_added_degree >= 0.0)) {
    throw InputError("expected added degree must be non-negative");
  }
  if (expected_added_degree == 0.0) return Network(n);
  if (n < 2 || expected_added_degree > n - 1) {
    throw InputError("expected added degree " + std::to_string(expected_added_degree) +
                     " exceeds n-1 for n=" + std::to_string(n));
  }
  const double beta = expected_added_degree / (n - 1);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(beta * n * (n - 1) / 2.0 * 1.1) + 16);
  if (beta >= 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.push_back({w, v});
    }
    return Network(n, std::move(edges));
  }
  // Geometric skipping over the lexicographic pair sequence (w < v).
  const double log_q = std::log1p(-beta);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.Uniform();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
  }
  return Network(n, std::move(edges));
}

std::string_view SuiteLevelName(SuiteLevel level) {
  return kLevelNames[static_cast<std::size_t>(level)];
}

SuiteLevel SelectNetwork(int wpcf, int scf, int ldf) {
  if (wpcf < 0 || wpcf > 3) throw InputError("workplace closing flag must be in 0..3");
  if (scf < 0 || scf > 3) throw InputError("school closing flag must be in 0..3");
  if (ldf < 0 || ldf > 1) throw InputError("lockdown flag must be in 0..1");
  const int sum = wpcf + scf + ldf;
  return static_cast<SuiteLevel>(kNumSuiteLevels - 1 - sum);
}

NetworkSuite NetworkSuite::FromLayers(std::span<const Network> layers) {
  if (layers.empty() || layers.size() > kNumSuiteLevels) {
    throw InputError("a network suite takes between 1 and 8 layers");
  }
  NetworkSuite suite;
  const int n = layers.front().size();
  suite.n_ = n;

  // First level in which every edge appears.
  std::unordered_map<std::uint64_t, std::uint8_t> first_level;
  std::size_t reserve = 0;
  for (const Network& layer : layers) reserve += layer.edge_count();
  first_level.reserve(reserve);
  std::vector<std::pair<Edge, std::uint8_t>> labeled;
  labeled.reserve(reserve);
  for (std::size_t level = 0; level < layers.size(); ++level) {
    if (layers[level].size() != n) {
      throw StructuralError("network suite layers disagree on node count");
    }
    for (const Edge& e : layers[level].edges()) {
      if (first_level.emplace(Key(e), static_cast<std::uint8_t>(level)).second) {
        labeled.emplace_back(e, static_cast<std::uint8_t>(level));
      }
    }
  }

  std::size_t running = 0;
  std::vector<std::size_t> per_level(kNumSuiteLevels, 0);
  for (const auto& [edge, level] : labeled) ++per_level[level];
  for (int level = 0; level < kNumSuiteLevels; ++level) {
    running += per_level[level];
    suite.edge_count_[level] = running;
  }

  // Per-node (level, neighbor) lists.
  std::vector<std::vector<std::pair<std::uint8_t, NodeId>>> lists(n);
  for (const auto& [edge, level] : labeled) {
    lists[edge.u].emplace_back(level, edge.v);
    lists[edge.v].emplace_back(level, edge.u);
  }
  suite.row_start_.resize(static_cast<std::size_t>(n) + 1);
  suite.level_end_.assign(static_cast<std::size_t>(n) * kNumSuiteLevels, 0);
  suite.adjacency_.reserve(2 * labeled.size());
  for (NodeId node = 0; node < n; ++node) {
    auto& list = lists[node];
    std::sort(list.begin(), list.end());
    suite.row_start_[node] = suite.adjacency_.size();
    std::size_t pos = 0;
    for (int level = 0; level < kNumSuiteLevels; ++level) {
      while (pos < list.size() && list[pos].first <= level) ++pos;
      suite.level_end_[static_cast<std::size_t>(node) * kNumSuiteLevels + level] =
          static_cast<std::uint32_t>(pos);
    }
    for (const auto& entry : list) suite.adjacency_.push_back(entry.second);
  }
  suite.row_start_[n] = suite.adjacency_.size();
  return suite;
}

Network NetworkSuite::Level(SuiteLevel level) const {
  std::vector<Edge> edges;
  edges.reserve(EdgeCount(level));
  for (NodeId node = 0; node < n_; ++node) {
    for (NodeId other : Neighbors(node, level)) {
      if (node < other) edges.push_back({node, other});
    }
  }
  return Network(n_, std::move(edges));
}

void NetworkSuite::ExportEdgeLists(const std::filesystem::path& dir,
                                   std::string_view prefix) const {
  std::filesystem::create_directories(dir);
  for (int level = 0; level < kNumSuiteLevels; ++level) {
    const auto lvl = static_cast<SuiteLevel>(level);
    std::ofstream out(dir / (std::string(prefix) + "_" +
                             std::string(SuiteLevelName(lvl)) + ".txt"));
    if (!out) throw InputError("cannot write edge list into " + dir.string());
    Level(lvl).WriteEdgeList(out);
  }
}

NetworkSuite BuildSuite(int n, const BehaviorParams& behavior, Rng& rng) {
  std::vector<Network> layers;
  layers.reserve(kNumSuiteLevels);
  layers.push_back(BuildRingLattice(n));
  for (int i = 0; i < 3; ++i) {
    layers.push_back(Rewire(BuildRingLattice(n), behavior.p_l, rng));
  }
  for (double degree : {behavior.p_rxs, behavior.p_rs, behavior.p_rm, behavior.p_rl}) {
    layers.push_back(BuildErOverlay(n, degree, rng));
  }
  return NetworkSuite::FromLayers(layers);
}

}  // namespace epinet
