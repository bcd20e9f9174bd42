#include "cordial/survey.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "cordial/json_io.hpp"

namespace cordial {
namespace {

void partitions_desc(std::int64_t total, std::int64_t max_part,
                     std::vector<std::int64_t>& cur,
                     std::vector<std::vector<std::int64_t>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t part = std::min(total, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_desc(total - part, part, cur, out);
    cur.pop_back();
  }
}

std::map<std::int64_t, std::int64_t> factorize(std::int64_t n) {
  std::map<std::int64_t, std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

struct Task {
  const GroupSpec* group;
  GraphShape shape;
};

struct TaskOutcome {
  SurveyRow row;
  std::optional<Labeling> labeling;
  bool disagreement = false;
};

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ':') c = '_';
    if (c == ',') c = '-';
  }
  return s;
}

TaskOutcome run_task(const Task& task, const SurveyOptions& opts) {
  TaskOutcome out;
  const GroupSpec& g = *task.group;
  out.row.group = g.str();
  out.row.graph = task.shape.str();

  if (task.shape.is_path()) {
    LabelResult r = path_for_group(g, task.shape.path_length(), opts.budget);
    out.row.method = r.method;
    out.row.nodes = r.stats.nodes;
    out.row.millis = r.stats.millis();
    switch (r.status) {
      case ConstructStatus::Labeled:
        out.row.status = "cordial";
        out.labeling = std::move(r.labeling);
        break;
      case ConstructStatus::NotCordial: out.row.status = "not_cordial"; break;
      case ConstructStatus::Unknown: out.row.status = "unknown"; break;
    }
  } else if (g.order() % 2 != 0) {
    LabelResult r = cycle_for_odd_group(g, task.shape.cycle_lengths()[0], opts.budget);
    out.row.method = r.method;
    out.row.nodes = r.stats.nodes;
    out.row.millis = r.stats.millis();
    out.row.status = r.status == ConstructStatus::Labeled ? "cordial" : "unknown";
    if (r.status == ConstructStatus::Labeled) out.labeling = std::move(r.labeling);
  } else {
    LabelingSearchResult r = search_cordial(g, task.shape, {}, opts.budget);
    out.row.nodes = r.stats.nodes;
    out.row.millis = r.stats.millis();
    switch (r.status) {
      case SearchStatus::Found:
        out.row.status = "cordial";
        out.row.method = "search";
        out.labeling = std::move(r.labeling);
        break;
      case SearchStatus::ExhaustedNoSolution:
        out.row.status = "not_cordial";
        out.row.method = r.refuted_by_sum ? "sum-refutation" : "search-exhausted";
        break;
      case SearchStatus::BudgetExceeded:
        out.row.status = "unknown";
        out.row.method = "budget";
        break;
    }
  }

  if (opts.cross_check && out.row.status != "unknown" && g.order() <= 12 &&
      task.shape.vertex_count() <= 16) {
    LabelingSearchResult check = search_cordial(g, task.shape, {}, opts.budget);
    bool cordial = out.row.status == "cordial";
    if ((cordial && check.status == SearchStatus::ExhaustedNoSolution) ||
        (!cordial && check.status == SearchStatus::Found)) {
      out.row.method += "!xcheck-disagree";
      out.disagreement = true;
    }
  }
  return out;
}

}  // namespace

SurveyResult run_survey(const SurveyOptions& opts) {
  if (opts.groups.empty()) throw std::invalid_argument("survey needs at least one group");
  if (!opts.paths && !opts.cycles)
    throw std::invalid_argument("survey needs a path or cycle range");
  if (opts.paths && (opts.paths->lo < 1 || opts.paths->lo > opts.paths->hi))
    throw std::invalid_argument("bad path range");
  if (opts.cycles && (opts.cycles->lo < 3 || opts.cycles->lo > opts.cycles->hi))
    throw std::invalid_argument("bad cycle range");
  if (opts.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  std::vector<Task> tasks;
  for (const GroupSpec& g : opts.groups) {
    if (opts.paths)
      for (std::int64_t n = opts.paths->lo; n <= opts.paths->hi; ++n)
        tasks.push_back({&g, GraphShape::path(n)});
    if (opts.cycles)
      for (std::int64_t n = opts.cycles->lo; n <= opts.cycles->hi; ++n)
        tasks.push_back({&g, GraphShape::cycles({n})});
  }

  std::vector<TaskOutcome> outcomes(tasks.size());
  const int jobs = std::min<int>(opts.jobs, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) outcomes[i] = run_task(tasks[i], opts);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          outcomes[i] = run_task(tasks[i], opts);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  SurveyResult result;
  result.rows.reserve(outcomes.size());
  for (TaskOutcome& o : outcomes) {
    result.cross_check_disagreement |= o.disagreement;
    result.rows.push_back(o.row);
  }

  if (opts.emit_dir) {
    std::filesystem::create_directories(*opts.emit_dir);
    for (const TaskOutcome& o : outcomes) {
      if (!o.labeling) continue;
      std::string name = sanitize(o.row.group) + "__" + sanitize(o.row.graph) + ".json";
      std::ofstream file(std::filesystem::path(*opts.emit_dir) / name, std::ios::binary);
      file << labeling_to_json(*o.labeling).dump(2) << '\n';
    }
  }
  return result;
}

std::string survey_csv(const std::vector<SurveyRow>& rows) {
  std::string out = "group,graph,status,method,nodes,millis\n";
  for (const SurveyRow& r : rows) {
    out += r.group;
    out += ',';
    out += r.graph;
    out += ',';
    out += r.status;
    out += ',';
    out += r.method;
    out += ',';
    out += std::to_string(r.nodes);
    out += ',';
    out += std::to_string(r.millis);
    out += '\n';
  }
  return out;
}

std::string survey_json(const std::vector<SurveyRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SurveyRow& r : rows) {
    nlohmann::ordered_json j;
    j["group"] = r.group;
    j["graph"] = r.graph;
    j["status"] = r.status;
    j["method"] = r.method;
    j["nodes"] = r.nodes;
    j["millis"] = r.millis;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<GroupSpec> groups_of_order(std::int64_t order) {
  if (order < 2 || order > kMaxGroupOrder) throw std::invalid_argument("order out of range");
  std::vector<std::vector<std::vector<std::int64_t>>> per_prime;  // prime -> partitions
  std::vector<std::int64_t> primes;
  for (auto [p, a] : factorize(order)) {
    std::vector<std::vector<std::int64_t>> parts;
    std::vector<std::int64_t> cur;
    partitions_desc(a, a, cur, parts);
    per_prime.push_back(std::move(parts));
    primes.push_back(p);
  }

  std::vector<GroupSpec> out;
  std::vector<std::size_t> pick(per_prime.size(), 0);
  while (true) {
    std::vector<std::int64_t> moduli;
    for (std::size_t i = 0; i < per_prime.size(); ++i) {
      for (std::int64_t exp : per_prime[i][pick[i]]) {
        std::int64_t q = 1;
        for (std::int64_t e = 0; e < exp; ++e) q *= primes[i];
        moduli.push_back(q);
      }
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    out.push_back(GroupSpec::from_moduli(std::move(moduli)));
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < per_prime[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const GroupSpec& a, const GroupSpec& b) {
    return a.moduli() < b.moduli();
  });
  return out;
}

std::vector<GroupSpec> groups_of_odd_orders(std::int64_t lo, std::int64_t hi) {
  if (lo < 3) lo = 3;
  std::vector<GroupSpec> out;
  for (std::int64_t order = lo; order <= hi; ++order) {
    if (order % 2 == 0) continue;
    auto groups = groups_of_order(order);
    out.insert(out.end(), groups.begin(), groups.end());
  }
  return out;
}

}  // namespace cordial
