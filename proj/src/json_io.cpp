#include "cordial/json_io.hpp"

#include <stdexcept>

namespace cordial {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json labeling_to_json(const Labeling& lab) {
  ordered_json j;
  j["v"] = 1;
  j["group"] = lab.group.moduli();
  ordered_json shape;
  if (lab.shape.is_path()) {
    shape["kind"] = "path";
    shape["n"] = lab.shape.path_length();
  } else {
    shape["kind"] = "cycles";
    shape["lengths"] = lab.shape.cycle_lengths();
  }
  j["shape"] = std::move(shape);
  ordered_json labels = ordered_json::array();
  for (const Element& a : lab.labels) labels.push_back(a);
  j["labels"] = std::move(labels);
  return j;
}

Labeling labeling_from_json(const json& j) {
  try {
    if (!j.is_object()) throw std::invalid_argument("labeling document must be an object");
    if (j.contains("v") && j.at("v").get<std::int64_t>() != 1)
      throw std::invalid_argument("unsupported labeling document version");
    GroupSpec group = GroupSpec::from_moduli(j.at("group").get<std::vector<std::int64_t>>());

    const json& shape_j = j.at("shape");
    std::string kind = shape_j.at("kind").get<std::string>();
    GraphShape shape = GraphShape::path(1);
    if (kind == "path")
      shape = GraphShape::path(shape_j.at("n").get<std::int64_t>());
    else if (kind == "cycles")
      shape = GraphShape::cycles(shape_j.at("lengths").get<std::vector<std::int64_t>>());
    else
      throw std::invalid_argument("shape kind must be 'path' or 'cycles'");

    Labeling lab{std::move(group), shape, {}};
    for (const json& row : j.at("labels")) {
      Element a = row.get<Element>();
      if (a.size() != lab.group.rank())
        throw std::invalid_argument("label has the wrong number of coordinates");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < 0 || a[i] >= lab.group.moduli()[i])
          throw std::invalid_argument("label residue out of range");
      lab.labels.push_back(std::move(a));
    }
    if (static_cast<std::int64_t>(lab.labels.size()) != shape.vertex_count())
      throw std::invalid_argument("label count does not match vertex count");
    return lab;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed labeling document: ") + e.what());
  }
}

Labeling labeling_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("labeling document is not valid JSON");
  return labeling_from_json(j);
}

ordered_json report_to_json(const CordialityReport& rep) {
  ordered_json j;
  j["v"] = 1;
  j["cordial"] = rep.cordial;
  j["vertex_balanced"] = rep.vertex_balanced;
  j["edge_balanced"] = rep.edge_balanced;
  j["vertex_counts"] = rep.vertex_counts;
  j["edge_counts"] = rep.edge_counts;
  return j;
}

}  // namespace cordial
