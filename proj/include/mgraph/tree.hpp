#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/graph.hpp"

namespace mgraph {

/// An unlabeled tree given by an edge list over vertices 0..vertex_count-1.
struct TreeSpec {
  std::size_t vertex_count = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;

  SimpleGraph to_graph() const { return SimpleGraph::from_edges(vertex_count, edges); }
};

/// True iff g is connected and has exactly n - 1 edges.
inline bool is_tree(const SimpleGraph& g) {
  if (g.vertex_count() == 0) return false;
  if (g.edge_count() + 1 != g.vertex_count()) return false;
  const auto level = bfs_levels(g, 0);
  for (auto d : level) {
    if (d < 0) return false;
  }
  return true;
}

inline void validate_tree(const TreeSpec& tree) {
  if (tree.vertex_count == 0) throw Error(ErrorKind::kInvalidArgument, "tree has no vertices");
  if (tree.edges.size() + 1 != tree.vertex_count) {
    throw Error(ErrorKind::kInvalidArgument, "tree on " + std::to_string(tree.vertex_count) + " vertices needs " +
                                                 std::to_string(tree.vertex_count - 1) + " edges, got " +
                                                 std::to_string(tree.edges.size()));
  }
  for (const auto& [u, v] : tree.edges) {
    if (u == v) throw Error(ErrorKind::kInvalidArgument, "self-loop in tree");
  }
  const auto g = tree.to_graph();
  if (g.edge_count() != tree.edges.size() || !is_tree(g)) throw Error(ErrorKind::kInvalidArgument, "edge list is not a tree");
}

inline TreeSpec tree_from_graph(const SimpleGraph& g) { return TreeSpec{g.vertex_count(), g.edges()}; }

/// Tree file: first significant line is the vertex count, then one "u v" per
/// line with 0-based indices. Blank lines and text after '#' are ignored.
/// Throws parse-error on malformed input; does not check the tree property.
inline TreeSpec parse_tree(std::istream& in) {
  TreeSpec tree;
  bool have_count = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long a = 0, b = 0;
    if (!(fields >> a)) {
      std::string rest;
      fields.clear();
      if (fields >> rest) throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected integers");
      continue;
    }
    if (!have_count) {
      std::string extra;
      if (fields >> extra) throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": vertex count line has extra fields");
      if (a < 1 || a > (1LL << 31)) throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": bad vertex count");
      tree.vertex_count = static_cast<std::size_t>(a);
      have_count = true;
      continue;
    }
    std::string extra;
    if (!(fields >> b) || (fields >> extra)) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected 'u v'");
    }
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= tree.vertex_count || static_cast<std::size_t>(b) >= tree.vertex_count) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": vertex index out of range");
    }
    tree.edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!have_count) throw Error(ErrorKind::kParse, "missing vertex count");
  return tree;
}

inline std::string format_tree(const TreeSpec& tree) {
  std::string out = std::to_string(tree.vertex_count) + "\n";
  for (const auto& [u, v] : tree.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

}  // namespace mgraph
