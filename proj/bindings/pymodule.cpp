#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cordial/construct.hpp"
#include "cordial/survey.hpp"

namespace py = pybind11;
using namespace cordial;

namespace {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::ExhaustedNoSolution: return "exhausted_no_solution";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

const char* status_name(ConstructStatus s) {
  switch (s) {
    case ConstructStatus::Labeled: return "cordial";
    case ConstructStatus::NotCordial: return "not_cordial";
    case ConstructStatus::Unknown: return "unknown";
  }
  return "?";
}

SearchBudget make_budget(std::int64_t max_nodes, std::int64_t max_millis) {
  return SearchBudget{max_nodes, max_millis};
}

py::dict report_dict(const CordialityReport& rep) {
  py::dict d;
  d["cordial"] = rep.cordial;
  d["vertex_balanced"] = rep.vertex_balanced;
  d["edge_balanced"] = rep.edge_balanced;
  d["vertex_counts"] = rep.vertex_counts;
  d["edge_counts"] = rep.edge_counts;
  return d;
}

Labeling make_labeling(const GroupSpec& g, const std::string& graph,
                       const std::vector<Element>& labels) {
  return Labeling{g, GraphShape::parse(graph), labels};
}

py::dict label_result_dict(const LabelResult& r) {
  py::dict d;
  d["status"] = status_name(r.status);
  d["method"] = r.method;
  d["nodes"] = r.stats.nodes;
  if (r.labeling) {
    d["labels"] = r.labeling->labels;
    d["graph"] = r.labeling->shape.str();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_cordial, m) {
  m.doc() = "cordial labelings of paths and cycles over finite abelian groups";

  py::class_<GroupSpec>(m, "Group")
      .def(py::init([](const std::string& spec) { return GroupSpec::parse(spec); }),
           py::arg("spec"))
      .def(py::init([](const std::vector<std::int64_t>& moduli) {
             return GroupSpec::from_moduli(moduli);
           }),
           py::arg("moduli"))
      .def_property_readonly("moduli", &GroupSpec::moduli)
      .def_property_readonly("order", &GroupSpec::order)
      .def_property_readonly("primary", &GroupSpec::primary)
      .def("elements", [](const GroupSpec& g) { return elements(g); })
      .def("identity", [](const GroupSpec& g) { return identity(g); })
      .def("add", [](const GroupSpec& g, const Element& a, const Element& b) {
        return add(g, a, b);
      })
      .def("neg", [](const GroupSpec& g, const Element& a) { return neg(g, a); })
      .def("scale", [](const GroupSpec& g, std::int64_t k, const Element& a) {
        return scale(g, k, a);
      })
      .def("involution_count", [](const GroupSpec& g) { return involution_count(g); })
      .def("classify",
           [](const GroupSpec& g) {
             GroupTraits t = classify(g);
             py::dict d;
             d["odd_order"] = t.odd_order;
             d["elementary_2"] = t.elementary_2;
             d["sylow2"] = t.sylow2 == Sylow2::Trivial   ? "trivial"
                           : t.sylow2 == Sylow2::Cyclic ? "cyclic"
                                                        : "noncyclic";
             d["harmonious"] = t.harmonious;
             d["p_cordial"] = t.p_cordial;
             d["has_complete_mapping"] = t.has_complete_mapping;
             d["r_star_guaranteed"] = t.r_star_guaranteed;
             return d;
           })
      .def("__str__", &GroupSpec::str)
      .def("__repr__", [](const GroupSpec& g) { return "Group('" + g.str() + "')"; })
      .def("__eq__", [](const GroupSpec& a, const GroupSpec& b) { return a == b; });

  m.def(
      "verify",
      [](const GroupSpec& g, const std::string& graph, const std::vector<Element>& labels) {
        return report_dict(verify(make_labeling(g, graph, labels)));
      },
      py::arg("group"), py::arg("graph"), py::arg("labels"),
      "tally vertex and edge label classes and report the cordiality verdict");

  m.def(
      "label",
      [](const GroupSpec& g, const std::string& graph, std::int64_t max_nodes,
         std::int64_t max_millis) {
        GraphShape shape = GraphShape::parse(graph);
        SearchBudget budget = make_budget(max_nodes, max_millis);
        LabelResult r;
        if (shape.is_path()) {
          r = path_for_group(g, shape.path_length(), budget);
        } else if (shape.single_cycle() && g.order() % 2 != 0) {
          r = cycle_for_odd_group(g, shape.cycle_lengths()[0], budget);
        } else {
          LabelingSearchResult sr = search_cordial(g, shape, {}, budget);
          r.stats = sr.stats;
          r.method = sr.refuted_by_sum ? "sum-refutation" : "search";
          r.status = sr.status == SearchStatus::Found ? ConstructStatus::Labeled
                     : sr.status == SearchStatus::ExhaustedNoSolution
                         ? ConstructStatus::NotCordial
                         : ConstructStatus::Unknown;
          r.labeling = std::move(sr.labeling);
        }
        return label_result_dict(r);
      },
      py::arg("group"), py::arg("graph"), py::arg("max_nodes") = SearchBudget{}.max_nodes,
      py::arg("max_millis") = SearchBudget{}.max_millis,
      "construct a verified labeling, or report not_cordial / unknown");

  m.def(
      "search_cordial",
      [](const GroupSpec& g, const std::string& graph, std::int64_t max_nodes,
         std::int64_t max_millis) {
        LabelingSearchResult r =
            search_cordial(g, GraphShape::parse(graph), {}, make_budget(max_nodes, max_millis));
        py::dict d;
        d["status"] = status_name(r.status);
        d["nodes"] = r.stats.nodes;
        d["refuted_by_sum"] = r.refuted_by_sum;
        if (r.labeling) d["labels"] = r.labeling->labels;
        return d;
      },
      py::arg("group"), py::arg("graph"), py::arg("max_nodes") = SearchBudget{}.max_nodes,
      py::arg("max_millis") = SearchBudget{}.max_millis,
      "run the bounded backtracking oracle");

  m.def(
      "complete_mapping",
      [](const GroupSpec& g, std::int64_t max_nodes, std::int64_t max_millis) {
        CompleteMappingResult r = find_complete_mapping(g, make_budget(max_nodes, max_millis));
        py::dict d;
        d["status"] = status_name(r.status);
        d["nodes"] = r.stats.nodes;
        if (r.status == SearchStatus::Found) {
          d["phi"] = r.phi;
          d["theta"] = r.theta;
        }
        return d;
      },
      py::arg("group"), py::arg("max_nodes") = SearchBudget{}.max_nodes,
      py::arg("max_millis") = SearchBudget{}.max_millis,
      "find a bijection phi with g -> -g + phi(g) also bijective");

  m.def(
      "harmonious",
      [](const GroupSpec& g, const std::string& variant, std::int64_t max_nodes,
         std::int64_t max_millis) {
        HarmoniousVariant v;
        if (variant == "full")
          v = HarmoniousVariant::Full;
        else if (variant == "nonidentity")
          v = HarmoniousVariant::NonIdentity;
        else
          throw std::invalid_argument("variant must be 'full' or 'nonidentity'");
        ListingResult r = find_harmonious(g, v, make_budget(max_nodes, max_millis));
        py::dict d;
        d["status"] = status_name(r.status);
        d["nodes"] = r.stats.nodes;
        if (r.status == SearchStatus::Found) d["listing"] = r.listing;
        return d;
      },
      py::arg("group"), py::arg("variant") = "full",
      py::arg("max_nodes") = SearchBudget{}.max_nodes,
      py::arg("max_millis") = SearchBudget{}.max_millis,
      "cyclic listing with pairwise distinct consecutive sums");

  m.def(
      "rstar_sequence",
      [](const GroupSpec& g, std::int64_t max_nodes, std::int64_t max_millis) {
        ListingResult r = find_rstar_sequence(g, make_budget(max_nodes, max_millis));
        py::dict d;
        d["status"] = status_name(r.status);
        d["nodes"] = r.stats.nodes;
        if (r.status == SearchStatus::Found) d["listing"] = r.listing;
        return d;
      },
      py::arg("group"), py::arg("max_nodes") = SearchBudget{}.max_nodes,
      py::arg("max_millis") = SearchBudget{}.max_millis,
      "R-sequence of an elementary 2-group normalized to a_2 = a_1 + a_3");

  m.def(
      "cut_cycle",
      [](const GroupSpec& g, const std::string& graph, const std::vector<Element>& labels) {
        Labeling out = cut_cycle(make_labeling(g, graph, labels));
        return out.labels;
      },
      py::arg("group"), py::arg("graph"), py::arg("labels"),
      "open a cordial cycle into a cordial path");
}
