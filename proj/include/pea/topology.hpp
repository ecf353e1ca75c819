#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pea/errors.hpp"

namespace pea {

enum class Topo { UniRing, BiRing, Torus, Hypercube, Complete };

const char* topo_name(Topo kind);
Topo parse_topo(const std::string& name);

// Directed migration graph over islands 0..mu-1. Edge lists are in a fixed,
// documented order (see the builders) so that seeded runs are reproducible.
// Self-loops and duplicate edges are never emitted; a single island yields an
// empty edge set for every kind.
struct TopologyGraph {
  Topo kind = Topo::Complete;
  int mu = 0;
  int w = 0, h = 0;  // torus only
  int d = 0;         // hypercube only
  std::string params;                      // spelled: "mu=16" | "4x4" | "d=4"
  std::vector<std::vector<int>> out;       // out-neighbors per vertex
  std::vector<std::pair<int, int>> edges;  // flattened (src, dst), src-major
};

// Rings and complete graphs take any mu >= 1. Hypercube requires mu = 2^d.
TopologyGraph build_topology(Topo kind, int mu);

// w x h grid, row-major vertex ids, wrap-around neighbors (+-1 per axis).
// Requires w, h >= 3 except for the degenerate single-island 1x1 case.
TopologyGraph build_torus(int w, int h);

// Most-square factorization w*h = mu with both sides >= 3 (w <= h), or 1x1
// for mu = 1. Empty when mu admits no such grid.
std::optional<std::pair<int, int>> torus_dims_for(int mu);

const std::vector<int>& out_neighbors(const TopologyGraph& g, int v);

// max over ordered pairs of BFS distance; fails NotConnected if some vertex
// cannot reach some other
int topology_diameter(const TopologyGraph& g);

bool strongly_connected(const TopologyGraph& g);

// true iff for every edge (u,v) the reverse edge (v,u) is present
bool edge_symmetric(const TopologyGraph& g);

}  // namespace pea
