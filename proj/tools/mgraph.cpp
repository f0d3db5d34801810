// mgraph: command-line front end for building, analyzing and cross-checking
// m-graphs of finite abelian groups.
//
// Exit codes: 0 ok, 1 negative result, 2 input error, 3 discrepancy,
// 4 resource limit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mgraph/closed_form.hpp"
#include "mgraph/error.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/group.hpp"
#include "mgraph/isomorphism.hpp"
#include "mgraph/json.hpp"
#include "mgraph/realization.hpp"
#include "mgraph/sweep.hpp"
#include "mgraph/tree.hpp"

namespace {

using namespace mgraph;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitDiscrepancy = 3;
constexpr int kExitResource = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidSpec:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kOutOfDomain:
    case ErrorKind::kHypothesisNotMet:
      return kExitInput;
    case ErrorKind::kResourceLimit:
      return kExitResource;
    case ErrorKind::kConstructionFailed:
      return kExitDiscrepancy;
  }
  return kExitNegative;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

TreeSpec read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  return parse_tree(in);
}

int cmd_analyze(const std::string& group_text, Int m, std::uint64_t limit) {
  const GroupSpec spec = parse_group(group_text);
  if (m <= 1) throw Error(ErrorKind::kInvalidArgument, "--m must be > 1");
  BuildOptions build{limit};
  const auto g = build_mgraph(spec, m, build);
  const auto report = analyze(g.graph, true);
  const bool connected = predict_connected(spec, m);

  Json doc;
  doc["group"] = spec.to_string();
  doc["m"] = m;
  doc["k"] = std::gcd(m, spec.order());
  doc["connected"] = connected;
  if (connected) {
    const auto census = predict_degree_census(spec, m);
    Json p;
    p["degree_census"] = census_json(census);
    p["identity_degree"] = census.identity_degree;
    p["diameter"] = to_json(predict_diameter(spec, m));
    p["tree"] = true;
    p["edge_count"] = spec.order() - 1;
    doc["predictions"] = std::move(p);
  } else {
    doc["predictions"] = nullptr;
  }
  doc["oracle"] = to_json(report);

  SweepOptions options;
  options.build = build;
  const auto outcome = detail::run_config({spec, m}, options);
  Json discrepancies = Json::array();
  for (const auto& c : outcome.rows) {
    if (!c.match) discrepancies.push_back(to_json(c));
  }
  const bool clean = discrepancies.empty();
  doc["discrepancies"] = std::move(discrepancies);
  print_json(doc);
  return clean ? kExitOk : kExitDiscrepancy;
}

int cmd_sweep(bool cyclic, bool products, Int max_n, Int max_m, Int max_order, const std::string& out_path,
              std::uint64_t limit) {
  if (cyclic == products) throw Error(ErrorKind::kInvalidArgument, "choose exactly one of --cyclic and --products");
  if (max_m < 2) throw Error(ErrorKind::kInvalidArgument, "--max-m must be >= 2");
  const Int bound = cyclic ? max_n : max_order;
  if (bound < 2) throw Error(ErrorKind::kInvalidArgument, cyclic ? "--max-n must be >= 2" : "--max-order must be >= 4");
  if (static_cast<std::uint64_t>(bound) > limit) {
    throw Error(ErrorKind::kResourceLimit, "sweep bound " + std::to_string(bound) + " exceeds vertex limit " +
                                               std::to_string(limit));
  }
  const auto configs = cyclic ? cyclic_configs(max_n, max_m) : product_configs(max_order, max_m);
  SweepOptions options;
  options.build.vertex_limit = limit;
  const auto result = run_sweep(configs, options);

  if (!out_path.empty()) {
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw Error(ErrorKind::kInvalidArgument, "cannot write " + out_path);
    csv << sweep_csv_header();
    for (const auto& c : result.rows) csv << sweep_csv_row(c);
  }

  Json summary;
  summary["mode"] = cyclic ? "cyclic" : "products";
  summary["configs"] = result.config_count;
  summary["connected"] = result.connected_count;
  summary["comparisons"] = result.rows.size();
  summary["discrepancies"] = result.discrepancy_count();
  Json classes = Json::array();
  for (const auto& c : result.classes) classes.push_back(to_json(c));
  summary["connected_classes"] = std::move(classes);
  Json records = Json::array();
  for (const auto& c : result.discrepancies()) records.push_back(to_json(c));
  summary["discrepancy_records"] = std::move(records);
  print_json(summary);
  return result.discrepancy_count() == 0 ? kExitOk : kExitDiscrepancy;
}

int cmd_export_dot(const std::string& group_text, Int m, std::uint64_t limit) {
  const auto g = build_mgraph(parse_group(group_text), m, BuildOptions{limit});
  std::cout << export_dot(g);
  return kExitOk;
}

int cmd_realize(const std::string& path, std::size_t limit) {
  const TreeSpec tree = read_tree_file(path);
  validate_tree(tree);
  if (check_notree_obstruction(tree)) std::cerr << "note: no cyclic group can realize this tree\n";
  const auto r = realize_tree(tree, limit);
  if (!r) {
    std::cout << "not realizable\n";
    return kExitNegative;
  }
  print_json(to_json(*r));
  return kExitOk;
}

int cmd_diameter_build(Int d) {
  const auto [spec, m] = construct_for_diameter(d);
  const auto g = build_mgraph(spec, m);
  const Distance diam = diameter_bruteforce(g.graph);
  Json out;
  out["group"] = spec.to_string();
  out["m"] = m;
  out["verified_diameter"] = distance_json(diam);
  print_json(out);
  return diam && *diam == d ? kExitOk : kExitDiscrepancy;
}

int cmd_iso(const std::string& group_text, Int m, const std::string& map_name, const std::string& out_path,
            std::uint64_t limit) {
  const GroupSpec spec = parse_group(group_text);
  if (map_name != "power" && map_name != "twist") throw Error(ErrorKind::kInvalidArgument, "--map is power or twist");
  if (!predict_connected(spec, m)) throw Error(ErrorKind::kOutOfDomain, "m-graph is disconnected");
  const BuildOptions build{limit};
  const Int k = std::gcd(m, spec.order());
  const bool cyclic = spec.is_single_factor();

  Json out;
  out["group"] = spec.to_string();
  out["m"] = m;
  out["k"] = k;
  out["map"] = map_name;
  out["source"] = cyclic ? std::to_string(k) + "-G" : std::to_string(m) + "-G";
  out["target"] = cyclic ? std::to_string(m) + "-G" : "product graph";

  std::optional<VertexBijection> f;
  try {
    if (cyclic) {
      f = map_name == "power" ? iso_map_cyclic(spec.order(), m) : unit_twist_map_cyclic(spec.order(), m);
    } else {
      f = map_name == "power" ? iso_map_product(spec, m) : unit_twist_map_product(spec, m);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kConstructionFailed) throw;
    out["bijective"] = false;
    out["edge_preserving"] = false;
    out["detail"] = e.what();
    print_json(out);
    return kExitDiscrepancy;
  }
  bool ok = false;
  if (cyclic) {
    ok = verify_graph_isomorphism(build_mgraph(spec, k, build).graph, build_mgraph(spec, m, build).graph, *f);
  } else {
    ok = verify_graph_isomorphism(build_mgraph(spec, m, build).graph,
                                  build_product_graph(spec, product_scalars(spec, m), build).graph, *f);
  }
  out["bijective"] = true;
  out["edge_preserving"] = ok;
  out["detail"] = "";
  if (!out_path.empty()) {
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw Error(ErrorKind::kInvalidArgument, "cannot write " + out_path);
    csv << f->to_csv();
  }
  print_json(out);
  return ok ? kExitOk : kExitDiscrepancy;
}

int cmd_canon(const std::string& path) {
  const TreeSpec tree = read_tree_file(path);
  std::cout << ahu_encode(tree).code << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and verify m-graphs of finite abelian groups"};
  app.require_subcommand(1);

  std::string group;
  Int m = 0;
  std::uint64_t limit = kDefaultVertexLimit;

  auto* analyze_cmd = app.add_subcommand("analyze", "Closed forms and oracle report as JSON");
  analyze_cmd->add_option("--group", group, "Group literal, e.g. \"Z4 x Z8\"")->required();
  analyze_cmd->add_option("--m", m, "Multiplier m > 1")->required();
  analyze_cmd->add_option("--limit-vertices", limit, "Refuse groups larger than this");

  bool cyclic = false, products = false;
  Int max_n = 0, max_m = 0, max_order = 0;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Compare every closed form with the oracle over a range");
  sweep_cmd->add_flag("--cyclic", cyclic, "Cyclic groups Z_n, 2 <= n <= max-n");
  sweep_cmd->add_flag("--products", products, "Non-cyclic groups of order <= max-order");
  sweep_cmd->add_option("--max-n", max_n, "Largest cyclic order");
  sweep_cmd->add_option("--max-m", max_m, "Largest multiplier")->required();
  sweep_cmd->add_option("--max-order", max_order, "Largest product order");
  sweep_cmd->add_option("--out", out_path, "CSV file for the comparison rows");
  sweep_cmd->add_option("--limit-vertices", limit, "Refuse groups larger than this");

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz text of the m-graph");
  dot_cmd->add_option("--group", group, "Group literal")->required();
  dot_cmd->add_option("--m", m, "Multiplier m > 1")->required();
  dot_cmd->add_option("--limit-vertices", limit, "Refuse groups larger than this");

  std::string tree_path;
  std::size_t tree_limit = kDefaultRealizeLimit;
  auto* realize_cmd = app.add_subcommand("realize", "Find a connected m-graph isomorphic to a tree");
  realize_cmd->add_option("tree_file", tree_path, "Tree file: vertex count, then one \"u v\" per line")->required();
  realize_cmd->add_option("--limit-vertices", tree_limit, "Largest tree searched");

  Int d = 0;
  auto* diam_cmd = app.add_subcommand("diameter-build", "Cyclic m-graph with a given diameter, verified by BFS");
  diam_cmd->add_option("--d", d, "Target diameter >= 1")->required();

  std::string map_name = "power";
  auto* iso_cmd = app.add_subcommand("iso", "Build and verify an explicit isomorphism");
  iso_cmd->add_option("--group", group, "Group literal")->required();
  iso_cmd->add_option("--m", m, "Multiplier m > 1")->required();
  iso_cmd->add_option("--map", map_name, "power (k^i*c -> m^i*c) or twist (x -> u^-r(x)*x)");
  iso_cmd->add_option("--out", out_path, "CSV file for the bijection");
  iso_cmd->add_option("--limit-vertices", limit, "Refuse groups larger than this");

  auto* canon_cmd = app.add_subcommand("canon", "Canonical code of a tree");
  canon_cmd->add_option("tree_file", tree_path, "Tree file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(group, m, limit);
    if (*sweep_cmd) return cmd_sweep(cyclic, products, max_n, max_m, max_order, out_path, limit);
    if (*dot_cmd) return cmd_export_dot(group, m, limit);
    if (*realize_cmd) return cmd_realize(tree_path, tree_limit);
    if (*diam_cmd) return cmd_diameter_build(d);
    if (*iso_cmd) return cmd_iso(group, m, map_name, out_path, limit);
    if (*canon_cmd) return cmd_canon(tree_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitInput;
}
