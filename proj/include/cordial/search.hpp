#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cordial/graphs.hpp"

namespace cordial {

// All budgets are deterministic: time is logical, one logical millisecond
// per kNodesPerMilli search nodes, so identical inputs give identical
// outcomes and resource columns regardless of wall clock or thread layout.
inline constexpr std::int64_t kNodesPerMilli = 1000;

struct SearchBudget {
  std::int64_t max_nodes = 10'000'000;
  std::int64_t max_millis = 60'000;

  std::int64_t node_cap() const {
    std::int64_t by_time = max_millis > max_nodes / kNodesPerMilli
                               ? max_nodes
                               : max_millis * kNodesPerMilli;
    return by_time < max_nodes ? by_time : max_nodes;
  }
};

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t millis() const { return nodes / kNodesPerMilli; }
};

enum class SearchStatus { Found, ExhaustedNoSolution, BudgetExceeded };

// Partial assignment and shape constraints for search_cordial. Searches with
// a non-empty `fixed` map or a multiplicity target run without symmetry
// breaking, since those constraints are not translation invariant.
struct LabelConstraint {
  std::map<std::int64_t, Element> fixed;
  bool injective = false;
  std::optional<std::vector<std::int64_t>> multiplicity;  // exact per-class vertex counts

  bool empty() const { return fixed.empty() && !injective && !multiplicity; }
};

struct LabelingSearchResult {
  SearchStatus status = SearchStatus::ExhaustedNoSolution;
  std::optional<Labeling> labeling;
  SearchStats stats;
  // Set when non-existence was proved by the degree-sum argument instead of
  // exhaustion: on a 2-regular graph the edge labels sum to twice the vertex
  // labels, which pins (V/|G|) * sum(G) = 0 whenever |G| divides V.
  bool refuted_by_sum = false;
};

// Depth-first search over vertices in order, candidate labels in canonical
// element order, pruning on vertex-class and edge-class overflow. With no
// constraints, vertex 0 is pinned to the identity and (single cycles only)
// vertex 1 ranges over automorphism-orbit representatives.
LabelingSearchResult search_cordial(const GroupSpec& g, const GraphShape& shape,
                                    const LabelConstraint& cons = {},
                                    const SearchBudget& budget = {});

struct CompleteMappingResult {
  SearchStatus status = SearchStatus::ExhaustedNoSolution;
  // phi and theta as permutations of canonical element indices,
  // theta(g) = -g + phi(g).
  std::vector<std::int64_t> phi, theta;
  SearchStats stats;
};

CompleteMappingResult find_complete_mapping(const GroupSpec& g,
                                            const SearchBudget& budget = {});

enum class HarmoniousVariant { Full, NonIdentity };

struct ListingResult {
  SearchStatus status = SearchStatus::ExhaustedNoSolution;
  std::vector<Element> listing;
  SearchStats stats;
};

// Full: cyclic listing of all elements whose consecutive sums are pairwise
// distinct. NonIdentity: same over the non-identity elements.
ListingResult find_harmonious(const GroupSpec& g, HarmoniousVariant variant,
                              const SearchBudget& budget = {});

// Listing of the non-identity elements of an elementary 2-group with all
// cyclic consecutive sums distinct and a_2 = a_1 + a_3.
ListingResult find_rstar_sequence(const GroupSpec& g, const SearchBudget& budget = {});

}  // namespace cordial
