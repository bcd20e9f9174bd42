#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cordial/construct.hpp"

namespace cordial {

struct SurveyRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct SurveyOptions {
  std::vector<GroupSpec> groups;
  std::optional<SurveyRange> paths;
  std::optional<SurveyRange> cycles;
  SearchBudget budget;
  int jobs = 1;
  bool cross_check = false;
  std::optional<std::string> emit_dir;
};

// nodes and millis are the deterministic logical costs of the searches a row
// triggered, so surveys are byte-identical across runs and --jobs settings.
struct SurveyRow {
  std::string group;
  std::string graph;
  std::string status;  // cordial | not_cordial | unknown
  std::string method;
  std::int64_t nodes = 0;
  std::int64_t millis = 0;
};

struct SurveyResult {
  std::vector<SurveyRow> rows;
  bool cross_check_disagreement = false;
};

SurveyResult run_survey(const SurveyOptions& opts);

std::string survey_csv(const std::vector<SurveyRow>& rows);
std::string survey_json(const std::vector<SurveyRow>& rows);

// All abelian groups of the given order, one per primary decomposition,
// rendered with prime-power factors in non-increasing order.
std::vector<GroupSpec> groups_of_order(std::int64_t order);
std::vector<GroupSpec> groups_of_odd_orders(std::int64_t lo, std::int64_t hi);

}  // namespace cordial
