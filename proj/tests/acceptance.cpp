// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mgraph/closed_form.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/isomorphism.hpp"
#include "mgraph/json.hpp"
#include "mgraph/realization.hpp"
#include "mgraph/sweep.hpp"
#include "tree_oracle.hpp"

using namespace mgraph;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("mismatch: " + what);
    }
  }
  void note(const std::string& text) { notes.push_back(text); }
};

int failures = 0;
int total = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed2(double s) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << s;
  return o.str();
}

/// Runs body, prints the verdict line and any notes. A positive budget in
/// seconds is part of the criterion.
double criterion(const std::string& id, const std::string& title, double budget, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.note(std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(t0);
  if (budget > 0 && elapsed > budget) {
    out.pass = false;
    out.note("runtime " + fixed2(elapsed) + "s exceeds " + fixed2(budget) + "s");
  }
  ++total;
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS " : "FAIL ") << id << " " << title << " [" << fixed2(elapsed) << "s]\n";
  for (const auto& n : out.notes) std::cout << "     " << n << "\n";
  std::cout.flush();
  return elapsed;
}

void info(const std::string& text) { std::cout << "INFO " << text << "\n"; }

MGraph cyclic_graph(Int n, Int m) { return build_mgraph(GroupSpec::cyclic(n), m); }

std::size_t count_degree(const SimpleGraph& g, std::size_t d) {
  std::size_t c = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) c += g.degree(v) == d;
  return c;
}

void product_fixture(Outcome& o, const GroupSpec& spec, Int m, Int diameter, Int identity_degree, Int high_degree,
                     Int high_count) {
  const std::string name = std::to_string(m) + "-G(" + spec.to_string() + ")";
  const auto g = build_mgraph(spec, m);
  const auto p = predict_diameter(spec, m);
  const auto census = predict_degree_census(spec, m).to_map();
  o.check(p.value == diameter, name + " predicted diameter " + std::to_string(p.value));
  o.check(diameter_bruteforce(g.graph) == diameter, name + " BFS diameter");
  o.check(predict_degree_census(spec, m).identity_degree == identity_degree, name + " predicted identity degree");
  o.check(static_cast<Int>(g.graph.degree(0)) == identity_degree, name + " oracle identity degree");
  o.check(census.contains(high_degree) && census.at(high_degree) == high_count, name + " predicted census");
  o.check(static_cast<Int>(count_degree(g.graph, static_cast<std::size_t>(high_degree))) == high_count,
          name + " oracle census");
}

// Sweep bookkeeping

struct Tally {
  std::size_t compared = 0;
  std::vector<Comparison> bad;
};

Tally tally(const std::vector<const SweepResult*>& results, const std::vector<std::string>& quantities) {
  Tally t;
  for (const auto* r : results) {
    for (const auto& c : r->rows) {
      if (std::find(quantities.begin(), quantities.end(), c.quantity) == quantities.end()) continue;
      ++t.compared;
      if (!c.match) t.bad.push_back(c);
    }
  }
  return t;
}

std::string describe(const Comparison& c) {
  std::string s = c.group + " m=" + std::to_string(c.m) + " " + c.quantity + ": predicted " + c.predicted + ", oracle " +
                  c.oracle;
  if (!c.case_label.empty()) s += " (" + c.case_label + ")";
  return s;
}

void report_tally(Outcome& o, const Tally& t, std::size_t shown = 8) {
  o.note(std::to_string(t.compared) + " comparisons, " + std::to_string(t.bad.size()) + " discrepancies");
  std::map<std::string, std::size_t> by_kind;
  for (const auto& c : t.bad) ++by_kind[c.quantity + (c.case_label.empty() ? "" : " " + c.case_label)];
  for (const auto& [kind, count] : by_kind) o.note("  " + kind + ": " + std::to_string(count));
  for (std::size_t i = 0; i < t.bad.size() && i < shown; ++i) o.note("  e.g. " + describe(t.bad[i]));
  if (!t.bad.empty()) o.pass = false;
}

// CLI runs for the determinism check

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MGRAPH_CLI_PATH + "\" " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main() {
  std::cout << "mgraph acceptance, " << worker_count() << " worker(s)\n";

  // 1. Fixtures.
  double fixtures = 0;
  fixtures += criterion("1.1", "2-G(Z4) connected, 2-G(Z6) disconnected", 0, [](Outcome& o) {
    o.check(predict_connected(GroupSpec::cyclic(4), 2), "predicted 2-G(Z4)");
    o.check(analyze(cyclic_graph(4, 2).graph).connected, "oracle 2-G(Z4)");
    o.check(!predict_connected(GroupSpec::cyclic(6), 2), "predicted 2-G(Z6)");
    o.check(!analyze(cyclic_graph(6, 2).graph).connected, "oracle 2-G(Z6)");
  });
  fixtures += criterion("1.2", "24-G(Z6) connected and equal to K_{1,5}", 0, [](Outcome& o) {
    const auto g = cyclic_graph(6, 24);
    o.check(predict_connected(GroupSpec::cyclic(6), 24), "predicted connectivity");
    TreeSpec star{6, {}};
    for (Vertex v = 1; v < 6; ++v) star.edges.emplace_back(0, v);
    o.check(ahu_encode(g.graph) == ahu_encode(star), "canonical code");
    o.check(g.graph.degree(0) == 5, "center is the identity");
  });
  fixtures += criterion("1.3", "2-G(Z2 x Z4): deg(0,0)=3, deg(0,2)=4", 0, [](Outcome& o) {
    const GroupSpec spec({2, 4});
    const auto g = build_mgraph(spec, 2);
    const GroupElement zero(spec, {0, 0}), two(spec, {0, 2});
    o.check(predict_degree(spec, 2, zero) == 3, "predicted deg(0,0)");
    o.check(predict_degree(spec, 2, two) == 4, "predicted deg(0,2) is " + std::to_string(predict_degree(spec, 2, two)));
    o.check(g.graph.degree(static_cast<Vertex>(rank_of(zero))) == 3, "oracle deg(0,0)");
    const auto oracle_two = g.graph.degree(static_cast<Vertex>(rank_of(two)));
    o.check(oracle_two == 4, "oracle deg(0,2) is " + std::to_string(oracle_two));
  });
  fixtures += criterion("1.4", "10-G(Z20): diameter 3, d(1,2)=3 along 1-10-0-2", 0, [](Outcome& o) {
    const auto g = cyclic_graph(20, 10);
    o.check(predict_diameter(GroupSpec::cyclic(20), 10).value == 3, "predicted diameter");
    o.check(diameter_bruteforce(g.graph) == 3, "BFS diameter");
    o.check(bfs_distance(g.graph, 1, 2) == 3, "BFS d(1,2)");
    o.check(g.graph.has_edge(1, 10) && g.graph.has_edge(10, 0) && g.graph.has_edge(0, 2), "path 1-10-0-2");
  });
  fixtures += criterion("1.5", "Z72 family: 6 connected variants, diameters 2,3,4,4,4,5 for k=72,36,24,18,12,6", 0,
                        [](Outcome& o) {
                          o.check(count_connected_variants(72) == 6, "variant count");
                          o.check(connected_multipliers(72) == std::vector<Int>{6, 12, 18, 24, 36, 72}, "variant list");
                          const std::vector<std::pair<Int, Int>> want{{72, 2}, {36, 3}, {24, 4}, {18, 4}, {12, 4}, {6, 5}};
                          for (const auto& [k, d] : want) {
                            const auto qk = predict_diameter_cyclic_qk(72, k);
                            o.check(qk.value == d, "q*k^i form for k=" + std::to_string(k) + " gives " + std::to_string(qk.value));
                            o.check(diameter_bruteforce(cyclic_graph(72, k).graph) == d, "BFS for k=" + std::to_string(k));
                          }
                          const auto c = predict_diameter_cyclic(72, 18);
                          if (c.value != 4) {
                            o.note("note: the w-based cyclic classification gives " + std::to_string(c.value) + " (" +
                                   to_string(c.case_label) + ") for k=18; see 2.4");
                          }
                        });
  fixtures += criterion("1.6", "Z4 x Z8 x Z72, m=6: diameter 6, identity degree 23, 95 vertices of degree 25", 0,
                        [](Outcome& o) { product_fixture(o, GroupSpec({4, 8, 72}), 6, 6, 23, 25, 95); });
  fixtures += criterion("1.7", "Z8 x Z16, m=2: diameter 7, identity degree 3, 31 vertices of degree 5", 0,
                        [](Outcome& o) { product_fixture(o, GroupSpec({8, 16}), 2, 7, 3, 5, 31); });
  fixtures += criterion("1.8", "Z4 x Z128, m=4: diameter 7, identity degree 15, 31 vertices of degree 17", 0,
                        [](Outcome& o) { product_fixture(o, GroupSpec({4, 128}), 4, 7, 15, 17, 31); });
  info("criterion 1 total " + fixed2(fixtures) + "s (budget 10s)");

  // 2. Oracle-equivalence sweeps.
  const auto sweep_start = Clock::now();
  SweepOptions shape_only;
  shape_only.diameter = false;
  shape_only.distances = false;
  SweepOptions full;

  SweepResult connectivity, cyclic, product_degrees, product_diameters;
  criterion("2.1", "connectivity closed form = BFS, cyclic n <= 300, m <= 300", 0, [&](Outcome& o) {
    connectivity = run_sweep(cyclic_configs(300, 300), shape_only);
    report_tally(o, tally({&connectivity}, {"connected"}));
  });

  criterion("2.2", "degrees and census on every vertex, cyclic n <= 2048 (all k), products <= 1024 (m <= 64)", 0,
            [&](Outcome& o) {
              cyclic = run_sweep(cyclic_variant_configs(2048), full);
              product_degrees = run_sweep(product_configs(1024, 64, true), shape_only);
              o.note(std::to_string(cyclic.connected_count) + " cyclic and " +
                     std::to_string(product_degrees.connected_count) + " product graphs");
              report_tally(o, tally({&cyclic, &product_degrees}, {"degree", "census"}));
            });

  criterion("2.3", "every connected case is a bipartite tree with n-1 edges", 0, [&](Outcome& o) {
    report_tally(o, tally({&cyclic, &product_degrees, &connectivity}, {"connected", "edge_count", "tree", "bipartite"}));
  });

  criterion("2.4", "diameter closed forms = all-sources BFS, cyclic n <= 2048, products <= 1024", 0, [&](Outcome& o) {
    // Configs agreeing modulo the group exponent give the same graph, so one
    // m per residue covers every qualifying m <= 64.
    product_diameters = run_sweep(product_configs(1024, 64, true, true), full);
    o.note(std::to_string(product_diameters.connected_count) + " distinct product graphs");
    report_tally(o, tally({&cyclic, &product_diameters}, {"diameter", "diameter_qk"}), 12);
  });
  {
    const auto d = tally({&cyclic}, {"distance_to_zero"});
    info("distance to 0 closed form on every vertex: " + std::to_string(d.compared) + " graphs, " +
         std::to_string(d.bad.size()) + " discrepancies");
  }

  criterion("2.5", "isomorphism maps preserve edges, cyclic n <= 512 (m <= 512), products <= 512 (m <= 64)", 0,
            [&](Outcome& o) {
              std::size_t checked = 0, not_bijective = 0, not_edge_preserving = 0;
              std::size_t twist_checked = 0, twist_bad = 0;
              std::vector<std::string> examples;
              std::set<std::string> example_groups;
              std::size_t product_examples = 0;
              auto example = [&](const std::string& group, const std::string& text) {
                const bool product = group.find(" x ") != std::string::npos;
                if ((product ? product_examples : examples.size()) >= 5 || !example_groups.insert(group).second) return;
                product_examples += product;
                examples.push_back(text);
              };
              for (Int n = 2; n <= 512; ++n) {
                const GroupSpec spec = GroupSpec::cyclic(n);
                std::map<Int, SimpleGraph> base;
                for (Int m = 2; m <= 512; ++m) {
                  if (!predict_connected(spec, m)) continue;
                  const Int k = std::gcd(m, n);
                  if (!base.contains(k)) base.emplace(k, build_mgraph(spec, k).graph);
                  const auto target = build_mgraph(spec, m).graph;
                  ++checked;
                  try {
                    if (!verify_graph_isomorphism(base.at(k), target, iso_map_cyclic(n, m))) {
                      ++not_edge_preserving;
                      example(spec.to_string(), spec.to_string() + " m=" + std::to_string(m) + ": bijective, not edge-preserving");
                    }
                  } catch (const Error& e) {
                    if (e.kind() != ErrorKind::kConstructionFailed) throw;
                    ++not_bijective;
                    example(spec.to_string(), e.what());
                  }
                  ++twist_checked;
                  twist_bad += !verify_graph_isomorphism(base.at(k), target, unit_twist_map_cyclic(n, m));
                }
              }
              for (Int n = 4; n <= 512; ++n) {
                for (const auto& moduli : noncyclic_groups_of_order(n)) {
                  const GroupSpec spec(moduli);
                  std::set<Int> residues;
                  for (Int m = 2; m <= 64; ++m) {
                    if (!predict_connected(spec, m) || !residues.insert(m % spec.exponent()).second) continue;
                    const auto source = build_mgraph(spec, m).graph;
                    const auto target = build_product_graph(spec, product_scalars(spec, m)).graph;
                    ++checked;
                    try {
                      if (!verify_graph_isomorphism(source, target, iso_map_product(spec, m))) {
                        ++not_edge_preserving;
                        example(spec.to_string(), spec.to_string() + " m=" + std::to_string(m) + ": bijective, not edge-preserving");
                      }
                    } catch (const Error& e) {
                      if (e.kind() != ErrorKind::kConstructionFailed) throw;
                      ++not_bijective;
                      example(spec.to_string(), spec.to_string() + " m=" + std::to_string(m) + ": " + e.what());
                    }
                    ++twist_checked;
                    twist_bad += !verify_graph_isomorphism(source, target, unit_twist_map_product(spec, m));
                  }
                }
              }
              o.note(std::to_string(checked) + " maps, " + std::to_string(not_bijective) + " not bijective, " +
                     std::to_string(not_edge_preserving) + " not edge-preserving");
              for (const auto& e : examples) o.note("  e.g. " + e);
              o.check(not_bijective + not_edge_preserving == 0, "k^i*c -> m^i*c maps");
              o.note("unit-twist maps x -> u^-r(x)*x on the same domain: " + std::to_string(twist_checked) + " checked, " +
                     std::to_string(twist_bad) + " failed");
            });
  info("criterion 2 total " + fixed2(seconds_since(sweep_start)) + "s (budget 600s single-threaded)");
  {
    ++total;
    const double elapsed = seconds_since(sweep_start);
    const bool ok = elapsed <= 600;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << "2.6 sweeps finish within 600s [" << fixed2(elapsed) << "s]\n";
  }

  // 3. Realization round trips.
  criterion("3", "construct_tree1 (d <= 6), construct_tree2 (k = 4,6,8), construct_for_diameter (d <= 9)", 30,
            [](Outcome& o) {
              for (Int d = 1; d <= 6; ++d) {
                const auto [tree, r] = construct_tree1(d);
                const auto g = build_mgraph(r.spec, r.k).graph;
                o.check(ahu_encode(tree) == ahu_encode(g), "tree1 d=" + std::to_string(d) + " code");
                o.check(diameter_bruteforce(g) == (d == 1 ? 2 : 4), "tree1 d=" + std::to_string(d) + " diameter");
              }
              for (Int k : {4, 6, 8}) {
                const auto [tree, r] = construct_tree2(k);
                const auto g = build_mgraph(r.spec, r.k).graph;
                o.check(ahu_encode(tree) == ahu_encode(g), "tree2 k=" + std::to_string(k) + " code");
                o.check(diameter_bruteforce(g) == 5, "tree2 k=" + std::to_string(k) + " diameter");
              }
              for (Int d = 1; d <= 9; ++d) {
                const auto [spec, m] = construct_for_diameter(d);
                o.check(diameter_bruteforce(build_mgraph(spec, m).graph) == d, "diameter " + std::to_string(d) + " via " + spec.to_string());
              }
            });

  // 4. AHU against brute force.
  criterion("4", "canonical codes agree with brute-force isomorphism on all trees with <= 9 vertices", 60,
            [](Outcome& o) {
              const auto trees = oracle::all_trees(9);
              const std::vector<std::size_t> counts{0, 1, 1, 1, 2, 3, 6, 11, 23, 47};
              std::size_t pairs = 0;
              for (std::size_t n = 1; n <= 9; ++n) {
                o.check(trees[n].size() == counts[n], "class count for n=" + std::to_string(n));
                const auto candidates = oracle::leaf_extensions(trees[n - 1], n);
                std::vector<CanonicalTreeCode> codes;
                for (const auto& t : candidates) codes.push_back(ahu_encode(t));
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                  for (std::size_t j = i; j < candidates.size(); ++j) {
                    ++pairs;
                    if ((codes[i] == codes[j]) != oracle::brute_force_isomorphic(candidates[i], candidates[j])) {
                      o.check(false, "pair " + std::to_string(i) + "," + std::to_string(j) + " on " + std::to_string(n) + " vertices");
                    }
                  }
                }
              }
              o.note(std::to_string(pairs) + " pairs compared");
            });

  // 5. Determinism.
  criterion("5", "analyze, export-dot and sweep are byte-identical across runs", 0, [](Outcome& o) {
    for (const char* args : {"analyze --group \"Z4 x Z8 x Z72\" --m 6", "analyze --group Z72 --m 18",
                             "export-dot --group \"Z2 x Z4\" --m 2", "sweep --products --max-order 64 --max-m 8",
                             "sweep --cyclic --max-n 40 --max-m 40"}) {
      const auto a = run_cli(args);
      const auto b = run_cli(args);
      o.check(a.code >= 0 && !a.out.empty(), std::string(args) + " produced output");
      o.check(a.code == b.code && a.out == b.out, args);
    }
  });

  std::cout << (total - failures) << "/" << total << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
