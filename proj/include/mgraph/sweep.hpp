#pragma once

// Oracle-equivalence sweeps: every closed form is compared to the brute-force
// graph for each (group, m) configuration, and each comparison becomes one
// row. Configurations run in parallel; rows come back in configuration order.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgraph/closed_form.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/group.hpp"
#include "mgraph/parallel.hpp"
#include "mgraph/realization.hpp"

namespace mgraph {

struct Comparison {
  std::string group;
  Int m = 0;
  Int k = 0;
  std::string quantity;
  std::string predicted;
  std::string oracle;
  bool match = true;
  std::string case_label;
};

struct SweepConfig {
  GroupSpec spec;
  Int m = 0;
};

/// One connected m-graph class seen in a sweep, identified by its group and
/// the vector (gcd(m, m_j))_j.
struct ConnectedClass {
  std::string group;
  Int k = 0;
  std::vector<Int> d;
  Int first_m = 0;
  std::optional<Int> diameter;
  std::string case_label;
};

struct SweepOptions {
  bool diameter = true;
  bool distances = true;
  unsigned workers = worker_count();
  BuildOptions build;
};

struct SweepResult {
  std::size_t config_count = 0;
  std::size_t connected_count = 0;
  std::vector<Comparison> rows;
  std::vector<ConnectedClass> classes;

  std::size_t discrepancy_count() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Comparison& c) { return !c.match; }));
  }
  std::vector<Comparison> discrepancies() const {
    std::vector<Comparison> out;
    for (const auto& c : rows) {
      if (!c.match) out.push_back(c);
    }
    return out;
  }
};

/// "1:18;9:1;11:1", degrees ascending.
inline std::string format_census(const std::map<std::size_t, std::size_t>& census) {
  std::string out;
  for (const auto& [deg, count] : census) {
    if (!out.empty()) out += ";";
    out += std::to_string(deg) + ":" + std::to_string(count);
  }
  return out;
}

inline std::string format_census(const DegreeCensus& c) {
  std::map<std::size_t, std::size_t> m;
  for (const auto& [deg, count] : c.to_map()) m[static_cast<std::size_t>(deg)] = static_cast<std::size_t>(count);
  return format_census(m);
}

inline std::string format_distance(const Distance& d) { return d ? std::to_string(*d) : "inf"; }

namespace detail {

inline const char* bool_text(bool b) { return b ? "true" : "false"; }

struct ConfigOutcome {
  std::vector<Comparison> rows;
  std::optional<ConnectedClass> cls;
};

/// All comparisons for one configuration; the class is set when connected.
inline ConfigOutcome run_config(const SweepConfig& cfg, const SweepOptions& options) {
  ConfigOutcome out;
  const auto& spec = cfg.spec;
  const Int n = spec.order();
  const Int k = std::gcd(cfg.m, n);
  const std::string group = spec.to_string();
  auto row = [&](std::string quantity, std::string predicted, std::string oracle, std::string label = {}) {
    const bool match = predicted == oracle;
    out.rows.push_back(Comparison{group, cfg.m, k, std::move(quantity), std::move(predicted), std::move(oracle), match,
                                  std::move(label)});
  };

  const auto g = build_mgraph(spec, cfg.m, options.build);
  const auto report = analyze(g.graph, false, 1);
  const bool connected = predict_connected(spec, cfg.m);
  row("connected", bool_text(connected), bool_text(report.connected));
  if (!connected || !report.connected) return out;

  row("edge_count", std::to_string(n - 1), std::to_string(report.edge_count));
  row("tree", "true", bool_text(report.is_tree));
  row("bipartite", "true", bool_text(report.is_bipartite));

  std::size_t degree_hits = 0;
  for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
    if (predict_degree(spec, cfg.m, element_at(spec, v)) == static_cast<Int>(g.graph.degree(v))) ++degree_hits;
  }
  row("degree", std::to_string(n), std::to_string(degree_hits));
  row("census", format_census(predict_degree_census(spec, cfg.m)), format_census(report.degree_census));

  ConnectedClass cls{group, k, product_scalars(spec, cfg.m), cfg.m, std::nullopt, {}};
  if (options.diameter) {
    const Distance oracle = diameter_bruteforce(g.graph, 1);
    cls.diameter = oracle;
    const auto p = predict_diameter(spec, cfg.m);
    cls.case_label = to_string(p.case_label);
    row("diameter", std::to_string(p.value), format_distance(oracle), to_string(p.case_label));
    if (spec.is_single_factor()) {
      try {
        const auto q = predict_diameter_cyclic_qk(n, k);
        row("diameter_qk", std::to_string(q.value), format_distance(oracle), to_string(q.case_label));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kHypothesisNotMet) throw;
      }
    }
  }
  if (options.distances && spec.is_single_factor()) {
    const auto level = bfs_levels(g.graph, 0);
    std::size_t hits = 0;
    for (Int a = 1; a < n; ++a) {
      if (predict_distance_to_zero(n, k, a) == level[static_cast<std::size_t>(a)]) ++hits;
    }
    row("distance_to_zero", std::to_string(n - 1), std::to_string(hits));
  }
  out.cls = std::move(cls);
  return out;
}

}  // namespace detail

inline SweepResult run_sweep(const std::vector<SweepConfig>& configs, const SweepOptions& options = {}) {
  for (const auto& cfg : configs) detail::check_vertex_limit(cfg.spec, options.build);
  std::vector<detail::ConfigOutcome> outcomes(configs.size());
  parallel_for(
      configs.size(), [&](std::size_t i) { outcomes[i] = detail::run_config(configs[i], options); }, options.workers);

  SweepResult result;
  result.config_count = configs.size();
  std::set<std::pair<std::string, std::vector<Int>>> seen;
  for (auto& o : outcomes) {
    if (o.cls) {
      ++result.connected_count;
      if (seen.emplace(o.cls->group, o.cls->d).second) result.classes.push_back(std::move(*o.cls));
    }
    for (auto& r : o.rows) result.rows.push_back(std::move(r));
  }
  return result;
}

/// (Z_n, m) for 2 <= n <= max_n, 2 <= m <= max_m.
inline std::vector<SweepConfig> cyclic_configs(Int max_n, Int max_m) {
  std::vector<SweepConfig> out;
  for (Int n = 2; n <= max_n; ++n) {
    const GroupSpec spec = GroupSpec::cyclic(n);
    for (Int m = 2; m <= max_m; ++m) out.push_back({spec, m});
  }
  return out;
}

/// (Z_n, k) for every k | n divisible by every prime of n, 2 <= n <= max_n.
inline std::vector<SweepConfig> cyclic_variant_configs(Int max_n) {
  std::vector<SweepConfig> out;
  for (Int n = 2; n <= max_n; ++n) {
    const GroupSpec spec = GroupSpec::cyclic(n);
    for (Int k : connected_multipliers(n)) out.push_back({spec, k});
  }
  return out;
}

/// Every non-cyclic group in invariant-factor form of order <= max_order,
/// ordered by order then moduli.
inline std::vector<GroupSpec> product_groups(Int max_order) {
  std::vector<GroupSpec> out;
  for (Int n = 2; n <= max_order; ++n) {
    for (auto& moduli : noncyclic_groups_of_order(n)) out.emplace_back(std::move(moduli));
  }
  return out;
}

/// Product groups with 2 <= m <= max_m. With connected_only, disconnected
/// pairs are skipped; with distinct_only, m is kept only when no smaller m
/// agrees with it modulo the group exponent (those graphs are identical).
inline std::vector<SweepConfig> product_configs(Int max_order, Int max_m, bool connected_only = false,
                                                bool distinct_only = false) {
  std::vector<SweepConfig> out;
  for (const auto& spec : product_groups(max_order)) {
    std::set<Int> residues;
    for (Int m = 2; m <= max_m; ++m) {
      if (connected_only && !predict_connected(spec, m)) continue;
      if (distinct_only && !residues.insert(m % spec.exponent()).second) continue;
      out.push_back({spec, m});
    }
  }
  return out;
}

}  // namespace mgraph
