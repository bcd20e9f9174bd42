#pragma once

#include <string>

#include "json.hpp"

#include "cordial/graphs.hpp"

namespace cordial {

// Labeling document schema (v1):
//   {"v":1, "group":[m1,...],
//    "shape":{"kind":"path","n":N} | {"kind":"cycles","lengths":[...]},
//    "labels":[[r,...],...]}
nlohmann::ordered_json labeling_to_json(const Labeling& lab);

// Throws std::invalid_argument on any schema violation.
Labeling labeling_from_json(const nlohmann::json& j);
Labeling labeling_from_string(const std::string& text);

nlohmann::ordered_json report_to_json(const CordialityReport& rep);

}  // namespace cordial
