#include "cordial/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cordial/json_io.hpp"
#include "cordial/survey.hpp"

namespace cordial {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotCordial = 2;
constexpr int kExitUnknown = 3;
constexpr int kExitNotVerified = 4;

SurveyRange parse_range(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos) throw std::invalid_argument("range must look like a..b");
  SurveyRange r;
  r.lo = std::stoll(text.substr(0, pos));
  r.hi = std::stoll(text.substr(pos + 2));
  return r;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + path);
  file << text;
}

struct BudgetFlags {
  std::int64_t nodes = SearchBudget{}.max_nodes;
  std::int64_t millis = SearchBudget{}.max_millis;

  SearchBudget budget() const { return SearchBudget{nodes, millis}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget-nodes", nodes, "search node budget");
    cmd->add_option("--budget-ms", millis, "search time budget (logical ms)");
  }
};

int run_label(const std::string& group_spec, const std::string& graph_spec,
              const std::string& out_path, const SearchBudget& budget, std::ostream& out,
              std::ostream& err) {
  GroupSpec g = GroupSpec::parse(group_spec);
  GraphShape shape = GraphShape::parse(graph_spec);

  std::optional<Labeling> labeling;
  std::string method;
  if (shape.is_path()) {
    LabelResult r = path_for_group(g, shape.path_length(), budget);
    method = r.method;
    if (r.status == ConstructStatus::NotCordial) {
      err << "not cordial (" << r.method << "): no labeling of " << shape.str() << " over "
          << g.str() << " exists\n";
      return kExitNotCordial;
    }
    if (r.status == ConstructStatus::Unknown) {
      err << "unknown: search budget exhausted\n";
      return kExitUnknown;
    }
    labeling = std::move(r.labeling);
  } else if (shape.single_cycle() && g.order() % 2 != 0) {
    LabelResult r = cycle_for_odd_group(g, shape.cycle_lengths()[0], budget);
    method = r.method;
    if (r.status == ConstructStatus::Unknown) {
      err << "unknown: search budget exhausted\n";
      return kExitUnknown;
    }
    labeling = std::move(r.labeling);
  } else {
    LabelingSearchResult r = search_cordial(g, shape, {}, budget);
    method = r.refuted_by_sum ? "sum-refutation" : "search";
    if (r.status == SearchStatus::ExhaustedNoSolution) {
      err << "not cordial (" << method << "): no labeling of " << shape.str() << " over "
          << g.str() << " exists\n";
      return kExitNotCordial;
    }
    if (r.status == SearchStatus::BudgetExceeded) {
      err << "unknown: search budget exhausted\n";
      return kExitUnknown;
    }
    labeling = std::move(r.labeling);
  }

  CordialityReport rep = verify(*labeling);
  if (!rep.cordial) throw std::logic_error("labeling failed re-verification");
  write_output(labeling_to_json(*labeling).dump(2) + "\n", out_path, out);
  err << "cordial (" << method << "), verified\n";
  return kExitOk;
}

int run_verify(const std::string& in_path, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  std::ifstream file(in_path, std::ios::binary);
  if (!file) {
    err << "cannot open " << in_path << "\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  Labeling lab = labeling_from_string(buffer.str());
  CordialityReport rep = verify(lab);
  write_output(report_to_json(rep).dump(2) + "\n", out_path, out);
  return rep.cordial ? kExitOk : kExitNotVerified;
}

int run_search(const std::string& group_spec, const std::string& graph_spec,
               const std::string& out_path, const SearchBudget& budget, std::ostream& out) {
  GroupSpec g = GroupSpec::parse(group_spec);
  GraphShape shape = GraphShape::parse(graph_spec);
  LabelingSearchResult r = search_cordial(g, shape, {}, budget);

  nlohmann::ordered_json j;
  j["v"] = 1;
  switch (r.status) {
    case SearchStatus::Found: j["status"] = "found"; break;
    case SearchStatus::ExhaustedNoSolution: j["status"] = "exhausted_no_solution"; break;
    case SearchStatus::BudgetExceeded: j["status"] = "budget_exceeded"; break;
  }
  j["refuted_by_sum"] = r.refuted_by_sum;
  j["nodes"] = r.stats.nodes;
  j["millis"] = r.stats.millis();
  j["labeling"] = r.labeling ? labeling_to_json(*r.labeling) : nlohmann::ordered_json(nullptr);
  write_output(j.dump(2) + "\n", out_path, out);

  switch (r.status) {
    case SearchStatus::Found: return kExitOk;
    case SearchStatus::ExhaustedNoSolution: return kExitNotCordial;
    case SearchStatus::BudgetExceeded: return kExitUnknown;
  }
  return kExitUnknown;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"A-cordial labelings of paths and cycles over finite abelian groups"};
  app.require_subcommand(1);

  std::string group_spec, graph_spec, out_path, in_path, emit_dir, format = "csv";
  std::string odd_orders, paths_range, cycles_range;
  std::vector<std::string> survey_groups;
  int jobs = 1;
  bool cross_check = false;
  BudgetFlags label_budget, search_budget, survey_budget;

  CLI::App* label = app.add_subcommand("label", "construct a verified labeling");
  label->add_option("-g,--group", group_spec, "group spec, e.g. Z3xZ9")->required();
  label->add_option("-G,--graph", graph_spec, "graph spec, e.g. cycle:14")->required();
  label->add_option("-o", out_path, "write the labeling JSON here");
  label_budget.attach(label);

  CLI::App* verify_cmd = app.add_subcommand("verify", "verify a labeling document");
  verify_cmd->add_option("file", in_path, "labeling JSON file")->required();
  verify_cmd->add_option("-o", out_path, "write the report JSON here");

  CLI::App* search = app.add_subcommand("search", "run the backtracking oracle directly");
  search->add_option("-g,--group", group_spec, "group spec")->required();
  search->add_option("-G,--graph", graph_spec, "graph spec")->required();
  search->add_option("-o", out_path, "write the outcome JSON here");
  search_budget.attach(search);

  CLI::App* survey = app.add_subcommand("survey", "tabulate cordiality over ranges");
  survey->add_option("-g,--group", survey_groups, "group spec (repeatable)");
  survey->add_option("--odd-orders", odd_orders, "all odd-order groups in a..b");
  survey->add_option("--paths", paths_range, "path lengths a..b");
  survey->add_option("--cycles", cycles_range, "cycle lengths a..b");
  survey->add_option("--emit", emit_dir, "write verified labelings into this directory");
  survey->add_flag("--cross-check", cross_check, "re-decide small instances by search");
  survey->add_option("--jobs", jobs, "parallel workers");
  survey->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  survey->add_option("-o", out_path, "write the table here");
  survey_budget.attach(survey);

  std::vector<const char*> argv;
  argv.push_back("cordial");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (label->parsed())
      return run_label(group_spec, graph_spec, out_path, label_budget.budget(), out, err);
    if (verify_cmd->parsed()) return run_verify(in_path, out_path, out, err);
    if (search->parsed())
      return run_search(group_spec, graph_spec, out_path, search_budget.budget(), out);

    SurveyOptions opts;
    for (const std::string& spec : survey_groups) opts.groups.push_back(GroupSpec::parse(spec));
    if (!odd_orders.empty()) {
      SurveyRange r = parse_range(odd_orders);
      auto groups = groups_of_odd_orders(r.lo, r.hi);
      opts.groups.insert(opts.groups.end(), groups.begin(), groups.end());
    }
    if (!paths_range.empty()) opts.paths = parse_range(paths_range);
    if (!cycles_range.empty()) opts.cycles = parse_range(cycles_range);
    opts.budget = survey_budget.budget();
    opts.jobs = jobs;
    opts.cross_check = cross_check;
    if (!emit_dir.empty()) opts.emit_dir = emit_dir;

    SurveyResult result = run_survey(opts);
    write_output(format == "csv" ? survey_csv(result.rows) : survey_json(result.rows),
                 out_path, out);
    return result.cross_check_disagreement ? kExitNotVerified : kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionUnknown& e) {
    err << "unknown: " << e.what() << "\n";
    return kExitUnknown;
  }
}

}  // namespace cordial
