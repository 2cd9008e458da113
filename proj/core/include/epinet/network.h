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

#ifndef EPINET_NETWORK_H_
#define EPINET_NETWORK_H_

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "epinet/params.h"
#include "epinet/rng.h"

namespace epinet {

using NodeId = std::int32_t;

// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on nodes [0, n): no self-loops, no duplicates.
// Edges are kept normalized and sorted.
class Network {
 public:
  Network() = default;
  explicit Network(int n) : n_(n) {}
  // Normalizes, sorts and deduplicates; throws InputError on self-loops or
  // out-of-range endpoints.
  Network(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool HasEdge(NodeId a, NodeId b) const;
  std::vector<int> Degrees() const;
  double MeanDegree() const;
  bool IsSubsetOf(const Network& other) const;

  // One "u v" line per edge, 0-based ids.
  void WriteEdgeList(std::ostream& out) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Degree-4 ring lattice: node i linked to i±1 and i±2 (mod n). n >= 5.
Network BuildRingLattice(int n);

// Each edge (i, j) is replaced with probability alpha by (i, k), k drawn
// uniformly among nodes that are neither i nor currently adjacent to i.
Network Rewire(const Network& base, double alpha, Rng& rng);

// Erdos-Renyi overlay with per-pair probability expected_added_degree/(n-1).
Network BuildErOverlay(int n, double expected_added_degree, Rng& rng);

// The eight nested contact networks, from hard isolation to no restrictions.
enum class SuiteLevel : std::uint8_t { kL0, kLs, kLm, kLl, kRxs, kRs, kRm, kRl };
inline constexpr int kNumSuiteLevels = 8;

std::string_view SuiteLevelName(SuiteLevel level);

// Maps workplace-closing (0..3), school-closing (0..3) and lockdown (0..1)
// flags to the active network: restriction sum 0 -> R_l ... 7 -> L_0.
SuiteLevel SelectNetwork(int wpcf, int scf, int ldf);

// Layered adjacency for a chain of nested edge sets. Every edge carries the
// first level it appears in and each node's neighbor list is sorted by that
// level, so the neighbors at level L are a prefix of the full list.
class NetworkSuite {
 public:
  NetworkSuite() = default;

  // Level k is the union of layers[0..k]. Requires 1..8 layers of equal
  // size; missing top levels repeat the last one.
  static NetworkSuite FromLayers(std::span<const Network> layers);

  int size() const { return n_; }

  std::span<const NodeId> Neighbors(NodeId node, SuiteLevel level) const {
    const std::size_t base = row_start_[node];
    const std::uint32_t end =
        level_end_[static_cast<std::size_t>(node) * kNumSuiteLevels +
                   static_cast<std::size_t>(level)];
    return {adjacency_.data() + base, end};
  }

  std::size_t EdgeCount(SuiteLevel level) const {
    return edge_count_[static_cast<std::size_t>(level)];
  }

  // Materializes the edge set of one level.
  Network Level(SuiteLevel level) const;

  // Writes one edge-list file per level into `dir`, named <prefix>_<level>.txt.
  void ExportEdgeLists(const std::filesystem::path& dir,
                       std::string_view prefix) const;

 private:
  int n_ = 0;
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> level_end_;
  std::array<std::size_t, kNumSuiteLevels> edge_count_{};
};

// L_0 = ring lattice; L_s, L_m, L_l each add a fresh rewired lattice with
// alpha = p_l; R_xs..R_l each add a fresh ER overlay.
NetworkSuite BuildSuite(int n, const BehaviorParams& behavior, Rng& rng);

}  // namespace epinet

#endif  // EPINET_NETWORK_H_
