#pragma once

// Realizing abstract trees as connected m-graphs: the two explicit families,
// a cyclic-group obstruction, an exhaustive search over all abelian groups of
// the right order, and a cyclic m-graph of any requested diameter.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mgraph/closed_form.hpp"
#include "mgraph/error.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/group.hpp"
#include "mgraph/isomorphism.hpp"
#include "mgraph/number_theory.hpp"
#include "mgraph/tree.hpp"

namespace mgraph {

inline constexpr std::size_t kDefaultRealizeLimit = 4096;

/// A tree exhibited as k-G(spec); witness maps tree vertex i to a group rank.
struct Realization {
  GroupSpec spec;
  Int k = 0;
  VertexBijection witness;
};

/// Throws construction-failed unless the witness maps the tree onto k-G(spec).
inline void verify_realization(const TreeSpec& tree, const Realization& r) {
  const auto g = build_mgraph(r.spec, r.k);
  if (!verify_graph_isomorphism(tree.to_graph(), g.graph, r.witness)) {
    throw Error(ErrorKind::kConstructionFailed, "witness does not map the tree onto " + std::to_string(r.k) + "-G(" +
                                                    r.spec.to_string() + ")");
  }
}

namespace detail {

inline std::optional<Realization> match_tree(const SimpleGraph& tree, const GroupSpec& spec, Int k) {
  const auto g = build_mgraph(spec, k);
  if (degree_census(g.graph) != degree_census(tree)) return std::nullopt;
  if (!is_tree(g.graph)) return std::nullopt;
  auto f = find_tree_isomorphism(tree, g.graph);
  if (!f) return std::nullopt;
  if (!verify_graph_isomorphism(tree, g.graph, *f)) {
    throw Error(ErrorKind::kConstructionFailed, "tree matcher returned a non-isomorphism");
  }
  return Realization{spec, k, std::move(*f)};
}

inline std::pair<TreeSpec, Realization> realize_known(TreeSpec tree, GroupSpec spec, Int k) {
  auto r = match_tree(tree.to_graph(), spec, k);
  if (!r) throw Error(ErrorKind::kConstructionFailed, "pattern is not isomorphic to " + std::to_string(k) + "-G(" + spec.to_string() + ")");
  return {std::move(tree), std::move(*r)};
}

}  // namespace detail

/// Root of degree d joined to d hubs, each hub carrying d + 1 leaves; realized
/// as (d+1)-G(Z_{(d+1)^2}).
inline std::pair<TreeSpec, Realization> construct_tree1(Int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "construct_tree1: d must be >= 1");
  const Int k = d + 1;
  TreeSpec tree;
  tree.vertex_count = static_cast<std::size_t>(checked_mul(k, k));
  Vertex next = static_cast<Vertex>(d + 1);
  for (Vertex hub = 1; hub <= static_cast<Vertex>(d); ++hub) {
    tree.edges.emplace_back(0, hub);
    for (Int t = 0; t < k; ++t) tree.edges.emplace_back(hub, next++);
  }
  return detail::realize_known(std::move(tree), GroupSpec::cyclic(k * k), k);
}

/// Root of degree k - 1 whose children are hubs of degree k + 1; one of them
/// carries k further hubs, every other hub carries k leaves. Realized as
/// k-G(Z_{2k^2}).
inline std::pair<TreeSpec, Realization> construct_tree2(Int k) {
  if (k < 4 || k % 2 != 0) throw Error(ErrorKind::kInvalidArgument, "construct_tree2: k must be even and >= 4");
  TreeSpec tree;
  tree.vertex_count = static_cast<std::size_t>(checked_mul(2 * k, k));
  Vertex next = 1;
  std::vector<Vertex> hubs;
  const Vertex special = next;
  for (Int t = 0; t < k - 1; ++t) {
    tree.edges.emplace_back(0, next);
    hubs.push_back(next++);
  }
  for (Int t = 0; t < k; ++t) {
    tree.edges.emplace_back(special, next);
    hubs.push_back(next++);
  }
  for (Vertex hub : hubs) {
    if (hub == special) continue;
    for (Int t = 0; t < k; ++t) tree.edges.emplace_back(hub, next++);
  }
  return detail::realize_known(std::move(tree), GroupSpec::cyclic(2 * k * k), k);
}

/// Certificate that no cyclic m-graph is isomorphic to the tree: n = 2^d * b
/// with d odd and b >= 3 odd, some vertex has degree 2^d - 1, and no vertex
/// has degree k - 1 for any k with k | n and every prime of n dividing k (the
/// identity of a connected k-G(Z_n) always has degree k - 1).
inline bool check_notree_obstruction(const TreeSpec& tree) {
  validate_tree(tree);
  const auto n = static_cast<Int>(tree.vertex_count);
  if (n < 2) return false;
  Int b = n;
  int d = 0;
  while (b % 2 == 0) {
    b /= 2;
    ++d;
  }
  if (d % 2 == 0 || b < 3) return false;
  const auto census = degree_census(tree.to_graph());
  const Int target = (Int{1} << d) - 1;
  if (!census.contains(static_cast<std::size_t>(target))) return false;
  for (Int k : connected_multipliers(n)) {
    if (census.contains(static_cast<std::size_t>(k - 1))) return false;
  }
  return true;
}

/// Every abelian group of order n with at least two invariant factors, as
/// ascending divisibility chains in lexicographic order.
inline std::vector<std::vector<Int>> noncyclic_groups_of_order(Int n) {
  if (n < 2) return {};
  std::vector<std::vector<std::vector<int>>> per_prime;  // partitions of each exponent, largest part first
  std::vector<Int> primes;
  for (const auto& [p, e] : factorize(n)) {
    primes.push_back(p);
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int cap) -> void {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (int x = std::min(left, cap); x >= 1; --x) {
        cur.push_back(x);
        self(self, left - x, x);
        cur.pop_back();
      }
    };
    rec(rec, e, e);
    per_prime.push_back(std::move(parts));
  }
  std::vector<std::vector<Int>> out;
  std::vector<std::size_t> choice(per_prime.size(), 0);
  while (true) {
    std::size_t len = 0;
    for (std::size_t t = 0; t < per_prime.size(); ++t) len = std::max(len, per_prime[t][choice[t]].size());
    if (len >= 2) {
      std::vector<Int> factors(len, 1);  // largest first
      for (std::size_t t = 0; t < per_prime.size(); ++t) {
        const auto& part = per_prime[t][choice[t]];
        for (std::size_t s = 0; s < part.size(); ++s) {
          for (int r = 0; r < part[s]; ++r) factors[s] *= primes[t];
        }
      }
      std::reverse(factors.begin(), factors.end());
      out.push_back(std::move(factors));
    }
    std::size_t t = 0;
    while (t < choice.size() && ++choice[t] == per_prime[t].size()) choice[t++] = 0;
    if (t == choice.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Multipliers k | exponent(spec) giving a connected m-graph, one per distinct
/// vector (gcd(k, m_1), ..., gcd(k, m_i)), ascending.
inline std::vector<Int> distinct_connected_multipliers(const GroupSpec& spec) {
  std::vector<Int> out;
  std::set<std::vector<Int>> seen;
  for (Int k : connected_multipliers(spec.exponent())) {
    if (seen.insert(product_scalars(spec, k)).second) out.push_back(k);
  }
  return out;
}

/// Exhaustive search: cyclic Z_n for every connected k ascending, then every
/// non-cyclic group of order n in lexicographic order with each distinct
/// connected multiplier. Returns the first match with a verified witness.
inline std::optional<Realization> realize_tree(const TreeSpec& tree, std::size_t limit = kDefaultRealizeLimit) {
  validate_tree(tree);
  if (tree.vertex_count > limit) {
    throw Error(ErrorKind::kResourceLimit, "tree has " + std::to_string(tree.vertex_count) + " vertices, limit is " +
                                               std::to_string(limit));
  }
  const auto n = static_cast<Int>(tree.vertex_count);
  if (n < 2) return std::nullopt;
  const auto g = tree.to_graph();
  for (Int k : connected_multipliers(n)) {
    if (auto r = detail::match_tree(g, GroupSpec::cyclic(n), k)) return r;
  }
  for (const auto& moduli : noncyclic_groups_of_order(n)) {
    const GroupSpec spec(moduli);
    for (Int k : distinct_connected_multipliers(spec)) {
      if (auto r = detail::match_tree(g, spec, k)) return r;
    }
  }
  return std::nullopt;
}

/// Cyclic group and multiplier whose m-graph has diameter d: (Z_2, 2) for
/// d = 1, (Z_{6^i}, 6) for d = 2i, (Z_{2*6^i}, 6) for d = 2i + 1.
inline std::pair<GroupSpec, Int> construct_for_diameter(Int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "construct_for_diameter: d must be >= 1");
  if (d == 1) return {GroupSpec::cyclic(2), 2};
  Int n = 1;
  for (Int t = 0; t < d / 2; ++t) n = checked_mul(n, 6);
  if (d % 2 == 1) n = checked_mul(n, 2);
  return {GroupSpec::cyclic(n), 6};
}

}  // namespace mgraph
