#pragma once

// Explicit isomorphisms between m-graphs: the map that sends k^i*a to m^i*a on
// Z_n, its componentwise extension to the (d_1,...,d_i)-product graph, an
// edge-by-edge verifier, and center-rooted AHU canonical codes for trees.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mgraph/closed_form.hpp"
#include "mgraph/error.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/group.hpp"
#include "mgraph/tree.hpp"

namespace mgraph {

class VertexBijection {
 public:
  /// nullopt when forward is not a permutation of 0..size-1.
  static std::optional<VertexBijection> from_forward(std::vector<Vertex> forward) {
    std::vector<Vertex> backward(forward.size());
    std::vector<bool> hit(forward.size(), false);
    for (std::size_t v = 0; v < forward.size(); ++v) {
      const Vertex img = forward[v];
      if (img >= forward.size() || hit[img]) return std::nullopt;
      hit[img] = true;
      backward[img] = static_cast<Vertex>(v);
    }
    VertexBijection f;
    f.forward_ = std::move(forward);
    f.backward_ = std::move(backward);
    return f;
  }

  static VertexBijection identity(std::size_t n) {
    std::vector<Vertex> id(n);
    std::iota(id.begin(), id.end(), Vertex{0});
    return *from_forward(std::move(id));
  }

  std::size_t size() const { return forward_.size(); }
  Vertex operator()(Vertex v) const { return forward_[v]; }
  Vertex inverse_of(Vertex v) const { return backward_[v]; }
  const std::vector<Vertex>& forward() const { return forward_; }
  const std::vector<Vertex>& backward() const { return backward_; }

  VertexBijection inverse() const {
    VertexBijection f;
    f.forward_ = backward_;
    f.backward_ = forward_;
    return f;
  }

  /// (*this) after first: v -> (*this)(first(v)).
  VertexBijection compose_after(const VertexBijection& first) const {
    std::vector<Vertex> out(first.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = forward_[first(static_cast<Vertex>(v))];
    return *from_forward(std::move(out));
  }

  /// Two columns "source_rank,image_rank" with a header row.
  std::string to_csv() const {
    std::string out = "source_rank,image_rank\n";
    for (std::size_t v = 0; v < forward_.size(); ++v) out += std::to_string(v) + "," + std::to_string(forward_[v]) + "\n";
    return out;
  }

 private:
  std::vector<Vertex> forward_;
  std::vector<Vertex> backward_;
};

/// True iff f maps the edge set of g1 exactly onto the edge set of g2.
inline bool verify_graph_isomorphism(const SimpleGraph& g1, const SimpleGraph& g2, const VertexBijection& f) {
  if (g1.vertex_count() != g2.vertex_count() || f.size() != g1.vertex_count()) {
    throw Error(ErrorKind::kInvalidArgument, "verify_graph_isomorphism: vertex counts differ");
  }
  if (g1.edge_count() != g2.edge_count()) return false;
  for (Vertex u = 0; u < g1.vertex_count(); ++u) {
    for (Vertex v : g1.neighbors(u)) {
      if (u < v && !g2.has_edge(f(u), f(v))) return false;
    }
  }
  return true;
}

namespace detail {

inline void require_connected_cyclic(Int n, Int m, const char* what) {
  if (n < 2 || m < 2) throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": need n >= 2 and m >= 2");
  if (!primes_divide(n, std::gcd(m, n))) {
    throw Error(ErrorKind::kOutOfDomain, std::string(what) + ": " + std::to_string(m) + "-G(Z" + std::to_string(n) +
                                             ") is disconnected");
  }
}

/// v = k^i * c as integers with k not dividing c and i maximal.
inline std::pair<Int, Int> split_power(Int v, Int k) {
  Int i = 0;
  while (v % k == 0) {
    v /= k;
    ++i;
  }
  return {i, v};
}

}  // namespace detail

/// The map f on Z_n from k-G(Z_n) to m-G(Z_n), k = gcd(m, n): f(0) = 0,
/// f(a) = a when k does not divide a, and f(k^i*c) = m^i*c with c not
/// divisible by k and i maximal. Returned raw; it need not be injective.
inline std::vector<Vertex> tciso_forward(Int n, Int m) {
  detail::require_connected_cyclic(n, m, "tciso_forward");
  const Int k = std::gcd(m, n);
  std::vector<Vertex> f(static_cast<std::size_t>(n));
  for (Int v = 0; v < n; ++v) {
    if (v == 0 || k == n || v % k != 0) {
      f[static_cast<std::size_t>(v)] = static_cast<Vertex>(v);
      continue;
    }
    const auto [i, c] = detail::split_power(v, k);
    f[static_cast<std::size_t>(v)] = static_cast<Vertex>(mul_mod(pow_mod(m, i, n), c % n, n));
  }
  return f;
}

/// The surjectivity step: for a target v = k^i*c, solve m^i*b = v in Z_n,
/// take the least solution b, replace it by y = b + n/k^i when k divides b,
/// and return k^i*y, the vertex f should send to v. nullopt where a step of
/// that argument does not go through (no solution, k^i does not divide n, or
/// k still divides y).
inline std::optional<Int> tciso_preimage(Int n, Int m, Int v) {
  detail::require_connected_cyclic(n, m, "tciso_preimage");
  if (v < 0 || v >= n) throw Error(ErrorKind::kInvalidArgument, "tciso_preimage: vertex out of range");
  const Int k = std::gcd(m, n);
  if (v == 0 || k == n || v % k != 0) return v;
  const auto [i, c] = detail::split_power(v, k);
  const Int mi = pow_mod(m, i, n);
  const auto sol = solve_scalar_equation(mi == 0 ? n : mi, v, n);
  if (!sol.solvable) return std::nullopt;
  Int y = sol.solutions.front();
  if (y % k == 0) {
    Int ki = 1;
    for (Int t = 0; t < i; ++t) ki = checked_mul(ki, k);
    if (n % ki != 0) return std::nullopt;
    y = (y + n / ki) % n;
    if (y % k == 0) return std::nullopt;
  }
  return mul_mod(pow_mod(k, i, n), y, n);
}

/// tciso_forward as a bijection; construction-failed if it is not injective.
inline VertexBijection iso_map_cyclic(Int n, Int m) {
  auto raw = tciso_forward(n, m);
  if (auto f = VertexBijection::from_forward(raw)) return *f;
  std::vector<Int> first_seen(static_cast<std::size_t>(n), -1);
  for (Int v = 0; v < n; ++v) {
    auto& slot = first_seen[raw[static_cast<std::size_t>(v)]];
    if (slot >= 0) {
      throw Error(ErrorKind::kConstructionFailed, "k^i*c -> m^i*c map on Z" + std::to_string(n) + " with m=" +
                                                      std::to_string(m) + " sends both " + std::to_string(slot) +
                                                      " and " + std::to_string(v) + " to " +
                                                      std::to_string(raw[static_cast<std::size_t>(v)]));
    }
    slot = v;
  }
  throw Error(ErrorKind::kConstructionFailed, "map is not a bijection");
}

/// Depth-scaled isomorphism from k-G(Z_n) to m-G(Z_n): x -> u^(-r(x)) * x,
/// where r(x) is the distance from x to 0 and u is a unit with m = u*k mod n.
/// Intertwines x -> kx with x -> mx, so it preserves edges.
inline VertexBijection unit_twist_map_cyclic(Int n, Int m) {
  detail::require_connected_cyclic(n, m, "unit_twist_map_cyclic");
  const Int k = std::gcd(m, n);
  const Int step = n / k;
  Int u = (m / k) % step;
  if (step == 1) u = 1;
  while (std::gcd(u, n) != 1) u += step;
  const Int u_inv = mod_inverse(u % n, n);
  const Int w = k == n ? 1 : least_power_w(n, k);
  std::vector<Int> inv_pow(static_cast<std::size_t>(w + 1), 1);
  for (Int r = 1; r <= w; ++r) inv_pow[static_cast<std::size_t>(r)] = mul_mod(inv_pow[static_cast<std::size_t>(r - 1)], u_inv, n);
  std::vector<Vertex> f(static_cast<std::size_t>(n), 0);
  for (Int x = 1; x < n; ++x) {
    const Int r = predict_distance_to_zero(n, k, x);
    f[static_cast<std::size_t>(x)] = static_cast<Vertex>(mul_mod(inv_pow[static_cast<std::size_t>(r)], x, n));
  }
  auto out = VertexBijection::from_forward(std::move(f));
  if (!out) throw Error(ErrorKind::kConstructionFailed, "unit twist is not a bijection");
  return *out;
}

/// Graph on a product group with x ~ (d_1 x_1, ..., d_i x_i).
struct ProductGraph {
  GroupSpec spec;
  std::vector<Int> scalars;
  std::vector<Vertex> image;
  SimpleGraph graph;
};

inline ProductGraph build_product_graph(const GroupSpec& spec, const std::vector<Int>& d, const BuildOptions& options = {}) {
  if (spec.factor_count() < 2) throw Error(ErrorKind::kInvalidArgument, "product graph needs at least 2 factors");
  if (d.size() != spec.factor_count()) throw Error(ErrorKind::kInvalidArgument, "one scalar per factor required");
  for (std::size_t j = 0; j < d.size(); ++j) {
    const Int mj = spec.modulus(j);
    if (d[j] < 2 || mj % d[j] != 0 || !primes_divide(mj, d[j])) {
      throw Error(ErrorKind::kInvalidArgument, "scalar " + std::to_string(d[j]) + " is not a valid d_j for Z" +
                                                   std::to_string(mj));
    }
  }
  detail::check_vertex_limit(spec, options);
  auto image = detail::componentwise_image(spec, d);
  auto graph = SimpleGraph::functional_shadow(image);
  return ProductGraph{spec, d, std::move(image), std::move(graph)};
}

namespace detail {

template <typename ComponentMap>
VertexBijection componentwise_bijection(const GroupSpec& spec, ComponentMap&& component) {
  std::vector<std::vector<Vertex>> maps;
  for (std::size_t j = 0; j < spec.factor_count(); ++j) maps.push_back(component(j));
  const auto n = static_cast<std::uint64_t>(spec.order());
  std::vector<Vertex> forward(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    auto residues = unrank(spec, v);
    for (std::size_t j = 0; j < residues.size(); ++j) residues[j] = maps[j][static_cast<std::size_t>(residues[j])];
    forward[v] = static_cast<Vertex>(rank_of(spec, residues));
  }
  auto f = VertexBijection::from_forward(std::move(forward));
  if (!f) throw Error(ErrorKind::kConstructionFailed, "componentwise map is not a bijection");
  return *f;
}

inline void require_connected_product(const GroupSpec& spec, Int m, const char* what) {
  if (spec.factor_count() < 2) throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": needs at least 2 factors");
  if (m < 2) throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": m must be > 1");
  if (!predict_connected(spec, m)) throw Error(ErrorKind::kOutOfDomain, std::string(what) + ": disconnected");
}

}  // namespace detail

/// Bijection from m-G(H) to the (d_1,...,d_i)-product graph, d_j = gcd(m, m_j):
/// the inverse of the componentwise map (f_1, ..., f_i), where f_j is the
/// cyclic map on Z_{m_j} from d_j-G to m-G. Throws construction-failed when
/// some f_j is not a bijection.
inline VertexBijection iso_map_product(const GroupSpec& spec, Int m) {
  detail::require_connected_product(spec, m, "iso_map_product");
  return detail::componentwise_bijection(spec, [&](std::size_t j) {
    return iso_map_cyclic(spec.modulus(j), m).backward();
  });
}

/// Same direction as iso_map_product, built from the unit twists.
inline VertexBijection unit_twist_map_product(const GroupSpec& spec, Int m) {
  detail::require_connected_product(spec, m, "unit_twist_map_product");
  return detail::componentwise_bijection(spec, [&](std::size_t j) {
    return unit_twist_map_cyclic(spec.modulus(j), m).backward();
  });
}

inline std::vector<Int> product_scalars(const GroupSpec& spec, Int m) {
  std::vector<Int> d;
  for (Int mj : spec.moduli()) d.push_back(std::gcd(m, mj));
  return d;
}

// ---------------------------------------------------------------------------
// AHU canonical codes

struct CanonicalTreeCode {
  std::string code;
  std::size_t vertex_count = 0;

  friend bool operator==(const CanonicalTreeCode&, const CanonicalTreeCode&) = default;
};

/// One or two centers, found by peeling leaves.
inline std::vector<Vertex> tree_centers(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    return all;
  }
  std::vector<std::size_t> degree(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Vertex> next;
    for (Vertex leaf : layer) {
      for (Vertex v : g.neighbors(leaf)) {
        if (--degree[v] == 1) next.push_back(v);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

namespace detail {

/// Parent pointers and BFS order of g rooted at root.
inline std::pair<std::vector<Vertex>, std::vector<Vertex>> rooted_order(const SimpleGraph& g, Vertex root) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> parent(n, root);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<bool> seen(n, false);
  seen[root] = true;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex u = order[head];
    for (Vertex v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        order.push_back(v);
      }
    }
  }
  return {std::move(parent), std::move(order)};
}

inline std::string rooted_code(const SimpleGraph& g, Vertex root) {
  const auto [parent, order] = rooted_order(g, root);
  std::vector<std::vector<std::string>> children(g.vertex_count());
  std::string code;
  for (std::size_t idx = order.size(); idx-- > 0;) {
    const Vertex v = order[idx];
    auto& kids = children[v];
    std::sort(kids.begin(), kids.end());
    code.clear();
    code += '(';
    for (auto& s : kids) code += s;
    code += ')';
    std::vector<std::string>().swap(kids);
    if (v == root) break;
    children[parent[v]].push_back(code);
  }
  return code;
}

/// Integer AHU labels for g rooted at root, interned in a shared table so
/// labels are comparable across trees.
inline std::vector<int> rooted_labels(const SimpleGraph& g, Vertex root, std::map<std::vector<int>, int>& table,
                                      std::vector<Vertex>& parent_out) {
  auto [parent, order] = rooted_order(g, root);
  std::vector<std::vector<int>> children(g.vertex_count());
  std::vector<int> label(g.vertex_count(), -1);
  for (std::size_t idx = order.size(); idx-- > 0;) {
    const Vertex v = order[idx];
    auto& kids = children[v];
    std::sort(kids.begin(), kids.end());
    auto [it, inserted] = table.emplace(kids, static_cast<int>(table.size()));
    label[v] = it->second;
    std::vector<int>().swap(kids);
    if (v != root) children[parent[v]].push_back(label[v]);
  }
  parent_out = std::move(parent);
  return label;
}

}  // namespace detail

/// Canonical code of a tree: nested parentheses rooted at the center; for two
/// centers the lexicographically smaller of the two rooted codes.
inline CanonicalTreeCode ahu_encode(const SimpleGraph& g) {
  if (!is_tree(g)) throw Error(ErrorKind::kInvalidArgument, "ahu_encode: input is not a tree");
  const auto centers = tree_centers(g);
  std::string best;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    auto code = detail::rooted_code(g, centers[c]);
    if (c == 0 || code < best) best = std::move(code);
  }
  return CanonicalTreeCode{std::move(best), g.vertex_count()};
}

inline CanonicalTreeCode ahu_encode(const TreeSpec& tree) {
  validate_tree(tree);
  return ahu_encode(tree.to_graph());
}

/// An explicit isomorphism between two trees, or nullopt when they are not
/// isomorphic. Both are rooted at centers and children are paired by label.
inline std::optional<VertexBijection> find_tree_isomorphism(const SimpleGraph& g1, const SimpleGraph& g2) {
  if (!is_tree(g1) || !is_tree(g2)) throw Error(ErrorKind::kInvalidArgument, "find_tree_isomorphism: inputs must be trees");
  if (g1.vertex_count() != g2.vertex_count()) return std::nullopt;
  const auto c1 = tree_centers(g1);
  const auto c2 = tree_centers(g2);
  if (c1.size() != c2.size()) return std::nullopt;
  std::map<std::vector<int>, int> table;
  std::vector<Vertex> parent1;
  const auto label1 = detail::rooted_labels(g1, c1[0], table, parent1);
  for (Vertex root2 : c2) {
    std::vector<Vertex> parent2;
    const auto label2 = detail::rooted_labels(g2, root2, table, parent2);
    if (label1[c1[0]] != label2[root2]) continue;
    std::vector<Vertex> forward(g1.vertex_count());
    std::vector<std::pair<Vertex, Vertex>> stack{{c1[0], root2}};
    while (!stack.empty()) {
      const auto [a, b] = stack.back();
      stack.pop_back();
      forward[a] = b;
      std::vector<std::pair<int, Vertex>> kids1, kids2;
      for (Vertex x : g1.neighbors(a)) {
        if (!(a != c1[0] && x == parent1[a])) kids1.emplace_back(label1[x], x);
      }
      for (Vertex y : g2.neighbors(b)) {
        if (!(b != root2 && y == parent2[b])) kids2.emplace_back(label2[y], y);
      }
      std::sort(kids1.begin(), kids1.end());
      std::sort(kids2.begin(), kids2.end());
      for (std::size_t t = 0; t < kids1.size(); ++t) stack.emplace_back(kids1[t].second, kids2[t].second);
    }
    return VertexBijection::from_forward(std::move(forward));
  }
  return std::nullopt;
}

}  // namespace mgraph
