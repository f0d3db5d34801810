#pragma once

// Brute-force construction and analysis of m-graphs. Everything here works
// from the edge set alone and is the ground truth the closed forms are
// compared against.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/group.hpp"
#include "mgraph/parallel.hpp"

namespace mgraph {

using Vertex = std::uint32_t;
/// Shortest-path length; std::nullopt is infinite (no path).
using Distance = std::optional<std::int64_t>;

inline constexpr std::uint64_t kDefaultVertexLimit = std::uint64_t{1} << 22;

/// Simple undirected graph in compressed adjacency form with sorted,
/// duplicate-free neighbor lists.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Self-loops are dropped and parallel edges merged.
  static SimpleGraph from_edges(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> edges) {
    for (auto& [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) throw Error(ErrorKind::kInvalidArgument, "edge endpoint out of range");
      if (u > v) std::swap(u, v);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    SimpleGraph g;
    g.offsets_.assign(vertex_count + 1, 0);
    for (const auto& [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.neighbors_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      g.neighbors_[cursor[u]++] = v;
      g.neighbors_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
      std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }
    g.edge_count_ = edges.size();
    return g;
  }

  /// Undirected shadow of the map v -> image[v].
  static SimpleGraph functional_shadow(std::span<const Vertex> image) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(image.size());
    for (std::size_t v = 0; v < image.size(); ++v) {
      if (image[v] != v) edges.emplace_back(static_cast<Vertex>(v), image[v]);
    }
    return from_edges(image.size(), std::move(edges));
  }

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  /// Edges as (u, v) with u < v, ascending.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::size_t edge_count_ = 0;
};

struct BuildOptions {
  std::uint64_t vertex_limit = kDefaultVertexLimit;
};

/// The m-graph of a group: vertices are group elements by mixed-radix rank,
/// a ~ b iff m*a = b or m*b = a, a != b.
struct MGraph {
  GroupSpec spec;
  Int multiplier;
  std::vector<Vertex> image;  // image[v] = rank of multiplier * v
  SimpleGraph graph;
};

namespace detail {

inline void check_vertex_limit(const GroupSpec& spec, const BuildOptions& options) {
  if (static_cast<std::uint64_t>(spec.order()) > options.vertex_limit) {
    throw Error(ErrorKind::kResourceLimit, "group order " + std::to_string(spec.order()) + " exceeds vertex limit " +
                                               std::to_string(options.vertex_limit));
  }
  if (static_cast<std::uint64_t>(spec.order()) > std::numeric_limits<Vertex>::max()) {
    throw Error(ErrorKind::kResourceLimit, "group order does not fit the vertex index type");
  }
}

/// image[v] = rank of (scalars_j * v_j)_j, computed by walking the mixed-radix
/// digits in rank order.
inline std::vector<Vertex> componentwise_image(const GroupSpec& spec, std::span<const Int> scalars) {
  const std::size_t n = static_cast<std::size_t>(spec.order());
  const std::size_t factors = spec.factor_count();
  std::vector<Int> reduced(factors);
  for (std::size_t j = 0; j < factors; ++j) reduced[j] = scalars[j] % spec.modulus(j);
  std::vector<Vertex> image(n);
  std::vector<Int> digits(factors, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < factors; ++j) {
      const Int m = spec.modulus(j);
      r = r * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(mul_mod(reduced[j], digits[j], m));
    }
    image[v] = static_cast<Vertex>(r);
    for (std::size_t j = factors; j-- > 0;) {
      if (++digits[j] < spec.modulus(j)) break;
      digits[j] = 0;
    }
  }
  return image;
}

}  // namespace detail

inline MGraph build_mgraph(const GroupSpec& spec, Int m, const BuildOptions& options = {}) {
  if (m <= 1) throw Error(ErrorKind::kInvalidArgument, "multiplier m must be > 1, got " + std::to_string(m));
  detail::check_vertex_limit(spec, options);
  std::vector<Int> scalars(spec.factor_count(), m);
  auto image = detail::componentwise_image(spec, scalars);
  auto graph = SimpleGraph::functional_shadow(image);
  return MGraph{spec, m, std::move(image), std::move(graph)};
}

/// BFS levels from source; -1 marks unreachable vertices.
inline std::vector<std::int64_t> bfs_levels(const SimpleGraph& g, Vertex source) {
  std::vector<std::int64_t> level(g.vertex_count(), -1);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  level[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex v : g.neighbors(u)) {
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

inline Distance bfs_distance(const SimpleGraph& g, Vertex a, Vertex b) {
  if (a >= g.vertex_count() || b >= g.vertex_count()) throw Error(ErrorKind::kInvalidArgument, "vertex out of range");
  const auto level = bfs_levels(g, a);
  if (level[b] < 0) return std::nullopt;
  return level[b];
}

/// Exact diameter from a BFS out of every vertex. Sources are split across
/// workers and merged by max, so the result does not depend on scheduling.
inline Distance diameter_bruteforce(const SimpleGraph& g, unsigned workers = worker_count()) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  {
    const auto level = bfs_levels(g, 0);
    if (std::any_of(level.begin(), level.end(), [](std::int64_t d) { return d < 0; })) return std::nullopt;
  }
  const std::size_t chunks = std::min<std::size_t>(n, std::max(1u, workers) * 4u);
  std::vector<std::int64_t> best(chunks, 0);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        std::vector<std::int32_t> level(n);
        std::vector<Vertex> queue(n);
        std::int64_t local = 0;
        for (std::size_t s = c; s < n; s += chunks) {
          std::fill(level.begin(), level.end(), -1);
          std::size_t head = 0, tail = 0;
          level[s] = 0;
          queue[tail++] = static_cast<Vertex>(s);
          while (head < tail) {
            const Vertex u = queue[head++];
            const std::int32_t next = level[u] + 1;
            for (Vertex v : g.neighbors(u)) {
              if (level[v] < 0) {
                level[v] = next;
                queue[tail++] = v;
              }
            }
          }
          local = std::max<std::int64_t>(local, level[queue[tail - 1]]);
        }
        best[c] = local;
      },
      workers);
  return *std::max_element(best.begin(), best.end());
}

struct GraphReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  bool connected = false;
  std::size_t component_count = 0;
  bool is_tree = false;
  bool is_bipartite = false;
  Distance diameter;
  std::map<std::size_t, std::size_t> degree_census;  // degree -> vertex count

  friend bool operator==(const GraphReport&, const GraphReport&) = default;
};

inline std::map<std::size_t, std::size_t> degree_census(const SimpleGraph& g) {
  std::map<std::size_t, std::size_t> census;
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++census[g.degree(v)];
  return census;
}

/// Connectivity, components and bipartiteness from one BFS 2-colouring pass;
/// the diameter is skipped when with_diameter is false.
inline GraphReport analyze(const SimpleGraph& g, bool with_diameter = true, unsigned workers = worker_count()) {
  GraphReport r;
  const std::size_t n = g.vertex_count();
  r.vertex_count = n;
  r.edge_count = g.edge_count();
  r.is_bipartite = true;
  std::vector<std::int8_t> colour(n, -1);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    ++r.component_count;
    colour[s] = 0;
    queue.clear();
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (Vertex v : g.neighbors(u)) {
        if (colour[v] < 0) {
          colour[v] = static_cast<std::int8_t>(1 - colour[u]);
          queue.push_back(v);
        } else if (colour[v] == colour[u]) {
          r.is_bipartite = false;
        }
      }
    }
  }
  r.connected = r.component_count == 1;
  // A forest has exactly n - components edges.
  r.is_tree = r.connected && r.edge_count + 1 == n;
  r.degree_census = degree_census(g);
  if (with_diameter) {
    r.diameter = r.connected ? diameter_bruteforce(g, workers) : std::nullopt;
  }
  return r;
}

/// "3" for cyclic groups, "(0,2)" for products.
inline std::string vertex_label(const GroupSpec& spec, std::uint64_t rank) {
  const auto residues = unrank(spec, rank);
  if (spec.is_single_factor()) return std::to_string(residues[0]);
  std::string out = "(";
  for (std::size_t j = 0; j < residues.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(residues[j]);
  }
  return out + ")";
}

/// Graphviz text. Vertex statements in rank order, then each edge once with
/// the lower rank first, edges sorted by (lower, higher) rank.
inline std::string export_dot(const MGraph& g) {
  const bool quote = !g.spec.is_single_factor();
  auto label = [&](Vertex v) {
    auto s = vertex_label(g.spec, v);
    return quote ? "\"" + s + "\"" : s;
  };
  std::string out = "graph \"" + std::to_string(g.multiplier) + "-G(" + g.spec.to_string() + ")\" {\n";
  for (Vertex v = 0; v < g.graph.vertex_count(); ++v) out += "  " + label(v) + ";\n";
  for (const auto& [u, v] : g.graph.edges()) out += "  " + label(u) + " -- " + label(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace mgraph
