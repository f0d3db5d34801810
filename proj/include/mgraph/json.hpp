#pragma once

// JSON views of reports, predictions and realizations. Keys are emitted in a
// fixed order and every number is an exact integer.

#include <nlohmann/json.hpp>

#include "mgraph/closed_form.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/realization.hpp"
#include "mgraph/sweep.hpp"

namespace mgraph {

using Json = nlohmann::ordered_json;

inline Json distance_json(const Distance& d) { return d ? Json(*d) : Json("infinite"); }

inline Json census_json(const std::map<std::size_t, std::size_t>& census) {
  Json out = Json::object();
  for (const auto& [deg, count] : census) out[std::to_string(deg)] = count;
  return out;
}

inline Json census_json(const DegreeCensus& c) {
  Json out = Json::object();
  for (const auto& [deg, count] : c.to_map()) out[std::to_string(deg)] = count;
  return out;
}

inline Json to_json(const GraphReport& r) {
  Json out;
  out["vertex_count"] = r.vertex_count;
  out["edge_count"] = r.edge_count;
  out["connected"] = r.connected;
  out["component_count"] = r.component_count;
  out["is_tree"] = r.is_tree;
  out["is_bipartite"] = r.is_bipartite;
  out["diameter"] = distance_json(r.diameter);
  out["degree_census"] = census_json(r.degree_census);
  return out;
}

inline Json to_json(const DiameterPrediction& p) {
  Json w;
  const auto& x = p.witnesses;
  w["k"] = x.k;
  w["w"] = x.w;
  if (x.i > 0) {
    w["q"] = x.q;
    w["i"] = x.i;
  }
  if (!x.d.empty()) {
    w["d"] = x.d;
    w["w_list"] = x.w_list;
    w["inner_diameter"] = x.inner_value;
    w["inner_case"] = x.inner_case;
  }
  Json out;
  out["value"] = p.value;
  out["case"] = to_string(p.case_label);
  out["witnesses"] = std::move(w);
  return out;
}

inline Json to_json(const Comparison& c) {
  Json out;
  out["group"] = c.group;
  out["m"] = c.m;
  out["k"] = c.k;
  out["quantity"] = c.quantity;
  out["predicted"] = c.predicted;
  out["oracle"] = c.oracle;
  out["case_label"] = c.case_label;
  return out;
}

inline Json to_json(const ConnectedClass& c) {
  Json out;
  out["group"] = c.group;
  out["k"] = c.k;
  out["d"] = c.d;
  out["m"] = c.first_m;
  out["diameter"] = c.diameter ? Json(*c.diameter) : Json(nullptr);
  out["case"] = c.case_label;
  return out;
}

/// {group, k, mapping}: mapping[i] is the residue vector of tree vertex i.
inline Json to_json(const Realization& r) {
  Json mapping = Json::array();
  for (std::size_t v = 0; v < r.witness.size(); ++v) {
    const auto residues = unrank(r.spec, r.witness(static_cast<Vertex>(v)));
    if (r.spec.is_single_factor()) {
      mapping.push_back(residues[0]);
    } else {
      mapping.push_back(residues);
    }
  }
  Json out;
  out["group"] = r.spec.to_string();
  out["k"] = r.k;
  out["mapping"] = std::move(mapping);
  return out;
}

inline std::string sweep_csv_header() { return "group,m,k,quantity,predicted,oracle,match\n"; }

inline std::string sweep_csv_row(const Comparison& c) {
  return c.group + "," + std::to_string(c.m) + "," + std::to_string(c.k) + "," + c.quantity + "," + c.predicted + "," +
         c.oracle + "," + (c.match ? "true" : "false") + "\n";
}

}  // namespace mgraph
