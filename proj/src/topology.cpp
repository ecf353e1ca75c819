#include "pea/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace pea {

const char* topo_name(Topo kind) {
  switch (kind) {
    case Topo::UniRing: return "uniring";
    case Topo::BiRing: return "biring";
    case Topo::Torus: return "torus";
    case Topo::Hypercube: return "hypercube";
    case Topo::Complete: return "complete";
  }
  fail(Err::UnsupportedKind, "bad topology enum");
}

Topo parse_topo(const std::string& name) {
  if (name == "uniring") return Topo::UniRing;
  if (name == "biring") return Topo::BiRing;
  if (name == "torus") return Topo::Torus;
  if (name == "hypercube") return Topo::Hypercube;
  if (name == "complete") return Topo::Complete;
  fail(Err::BadConfig, "unknown topology: " + name);
}

namespace {

// append nb to v's out-list unless it is a self-loop or already present
void add_edge(TopologyGraph& g, int v, int nb) {
  if (nb == v) return;
  auto& lst = g.out[v];
  if (std::find(lst.begin(), lst.end(), nb) != lst.end()) return;
  lst.push_back(nb);
}

void flatten_edges(TopologyGraph& g) {
  for (int v = 0; v < g.mu; ++v)
    for (int nb : g.out[v]) g.edges.emplace_back(v, nb);
}

}  // namespace

TopologyGraph build_topology(Topo kind, int mu) {
  if (mu < 1) fail(Err::InvalidSize, "mu must be >= 1");
  if (kind == Topo::Torus) {
    auto dims = torus_dims_for(mu);
    if (!dims) fail(Err::TorusTooSmall, "no torus grid with sides >= 3 for mu=" + std::to_string(mu));
    return build_torus(dims->first, dims->second);
  }

  TopologyGraph g;
  g.kind = kind;
  g.mu = mu;
  g.out.resize(mu);

  switch (kind) {
    case Topo::UniRing:
      g.params = "mu=" + std::to_string(mu);
      for (int v = 0; v < mu; ++v) add_edge(g, v, (v + 1) % mu);
      break;
    case Topo::BiRing:
      g.params = "mu=" + std::to_string(mu);
      for (int v = 0; v < mu; ++v) {
        add_edge(g, v, (v + 1) % mu);
        add_edge(g, v, (v + mu - 1) % mu);
      }
      break;
    case Topo::Hypercube: {
      if (!std::has_single_bit(static_cast<unsigned>(mu)))
        fail(Err::InvalidSize, "hypercube needs mu = 2^d, got mu=" + std::to_string(mu));
      g.d = std::countr_zero(static_cast<unsigned>(mu));
      g.params = "d=" + std::to_string(g.d);
      for (int v = 0; v < mu; ++v)
        for (int b = 0; b < g.d; ++b) add_edge(g, v, v ^ (1 << b));
      break;
    }
    case Topo::Complete:
      g.params = "mu=" + std::to_string(mu);
      for (int v = 0; v < mu; ++v)
        for (int u = 0; u < mu; ++u) add_edge(g, v, u);
      break;
    default:
      fail(Err::UnsupportedKind, "unreachable");
  }
  flatten_edges(g);
  return g;
}

TopologyGraph build_torus(int w, int h) {
  if (w < 1 || h < 1) fail(Err::InvalidSize, "torus sides must be >= 1");
  bool degenerate = (w == 1 && h == 1);
  if (!degenerate && (w < 3 || h < 3))
    fail(Err::TorusTooSmall, "torus sides must be >= 3 (got " + std::to_string(w) + "x" +
                                 std::to_string(h) + ")");
  TopologyGraph g;
  g.kind = Topo::Torus;
  g.mu = w * h;
  g.w = w;
  g.h = h;
  g.params = std::to_string(w) + "x" + std::to_string(h);
  g.out.resize(g.mu);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int v = y * w + x;
      add_edge(g, v, y * w + (x + 1) % w);
      add_edge(g, v, y * w + (x + w - 1) % w);
      add_edge(g, v, ((y + 1) % h) * w + x);
      add_edge(g, v, ((y + h - 1) % h) * w + x);
    }
  flatten_edges(g);
  return g;
}

std::optional<std::pair<int, int>> torus_dims_for(int mu) {
  if (mu == 1) return std::make_pair(1, 1);
  for (int w = static_cast<int>(std::sqrt(static_cast<double>(mu))); w >= 3; --w)
    if (mu % w == 0 && mu / w >= 3) return std::make_pair(w, mu / w);
  return std::nullopt;
}

const std::vector<int>& out_neighbors(const TopologyGraph& g, int v) {
  if (v < 0 || v >= g.mu) fail(Err::IndexOutOfRange, "vertex " + std::to_string(v));
  return g.out[v];
}

namespace {

// BFS over out-edges; returns eccentricity or -1 if some vertex is unreachable
int eccentricity(const TopologyGraph& g, int src) {
  std::vector<int> dist(g.mu, -1);
  std::vector<int> queue;
  queue.reserve(g.mu);
  queue.push_back(src);
  dist[src] = 0;
  int ecc = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int nb : g.out[v])
      if (dist[nb] < 0) {
        dist[nb] = dist[v] + 1;
        ecc = std::max(ecc, dist[nb]);
        queue.push_back(nb);
      }
  }
  if (static_cast<int>(queue.size()) != g.mu) return -1;
  return ecc;
}

}  // namespace

int topology_diameter(const TopologyGraph& g) {
  int diam = 0;
  for (int v = 0; v < g.mu; ++v) {
    int e = eccentricity(g, v);
    if (e < 0) fail(Err::NotConnected, "graph is not strongly connected");
    diam = std::max(diam, e);
  }
  return diam;
}

bool strongly_connected(const TopologyGraph& g) {
  for (int v = 0; v < g.mu; ++v)
    if (eccentricity(g, v) < 0) return false;
  return true;
}

bool edge_symmetric(const TopologyGraph& g) {
  for (auto [u, v] : g.edges) {
    const auto& back = g.out[v];
    if (std::find(back.begin(), back.end(), u) == back.end()) return false;
  }
  return true;
}

}  // namespace pea
