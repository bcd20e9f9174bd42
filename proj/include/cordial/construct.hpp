#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cordial/search.hpp"

namespace cordial {

// A bounded search ran out of budget; the instance is undecided.
class ConstructionUnknown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction produced output the verifier rejected, or a search
// exhausted where a solution was required.
class ConstructionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ConstructStatus { Labeled, NotCordial, Unknown };

struct LabelResult {
  ConstructStatus status = ConstructStatus::Unknown;
  std::optional<Labeling> labeling;
  std::string method;
  SearchStats stats;
};

// Z_k-cordial labeling of C_r with first label 0 and last label (k+1)/2.
// Odd r uses the closed-form sequential labeling read against traversal
// direction; even r comes from an endpoint-constrained search.
Labeling sequential_cycle(std::int64_t k, std::int64_t r, const SearchBudget& budget = {});

// Replicates every vertex of an injective cordial C_k labeling m times and
// duplicates one vertex in each of the first r blocks, giving C_{mk+r}.
// r = 0 is plain replication.
Labeling blow_up_cycle(const Labeling& base, std::int64_t m, std::int64_t r);

// Expands the first `parts.size()` vertices of a cycle labeled over H into
// runs labeled (h, sequential Z_m block) and alternates the second
// coordinate on the rest, producing C_{k + sum(parts)} over H x Z_m.
// A trailing part of 1 selects the two-vertex closing variant.
Labeling product_cycle(const Labeling& base_h, std::int64_t m,
                       const std::vector<std::int64_t>& parts,
                       const SearchBudget& budget = {});

// How to realize C_r over an odd group given by its primary decomposition:
// split the factor list as H x Z_m x B and choose run lengths for
// product_cycle. `parts` empty means r == |H| (use a harmonious base as is).
struct ProductDecomposition {
  std::vector<std::int64_t> h_primary;
  std::int64_t m = 0;
  std::vector<std::int64_t> b_primary;
  std::int64_t h_order = 0;    // e = |H|
  std::int64_t full_runs = 0;  // quotient of (r - e) by (m - 1)
  std::int64_t remainder = 0;  // its remainder
  std::vector<std::int64_t> parts;
  std::int64_t base_len = 0;  // e or e-1
  bool special_z3z3 = false;  // C_4/C_6/C_8 over Z3xZ3, served from the table
  bool constructible = true;  // false only at r = 3e-1 with m = 3
};

ProductDecomposition product_decomposition(const std::vector<std::int64_t>& primary,
                                           std::int64_t r);

// Pinned labelings of C_4, C_6, C_8 over Z3xZ3 (search-derived constants).
Labeling z3z3_table_cycle(std::int64_t n);

// Every cycle over an odd-order group: blow-up for n >= |G|, prime-power
// embedding or the product pipeline below |G|. Never returns NotCordial.
LabelResult cycle_for_odd_group(const GroupSpec& g, std::int64_t n,
                                const SearchBudget& budget = {});

struct MasterSequences {
  std::vector<Element> two_k;   // cordial prefixes for k+2 <= n <= 2k
  std::vector<Element> three_k;  // cordial prefixes for 2k+2 <= n <= 3k
};

// The two master label sequences over an elementary 2-group of order
// k = 2^p (p >= 2), built verbatim from an R*-sequence normalized to
// a_2 = a_1 + a_3.
MasterSequences master_path_sequences(const GroupSpec& g,
                                      const std::vector<Element>& rstar);

// Appends one full permutation of the group to a cordial path, restoring
// edge balance, found by bounded search.
Labeling extend_path(const Labeling& lab, const SearchBudget& budget = {});

// Every path over every group, with the elementary-2 exceptions reported as
// NotCordial.
LabelResult path_for_group(const GroupSpec& g, std::int64_t n,
                           const SearchBudget& budget = {});

// n disjoint copies of C_m labeled over A x B from an injective cordial
// C_m labeling over A and a complete mapping of B.
Labeling two_regular_product(const Labeling& c1, const GroupSpec& b,
                             const SearchBudget& budget = {});

// Two cycles of length mn/2 over A x B from cordial C_m / C_n labelings,
// wired with the column shift of two at the wrap.
Labeling two_regular_pair(const Labeling& c1, const Labeling& c2);

// Memoized sub-results (harmonious listings, sequential cycles, path bases)
// are process-wide; tests clear them to re-derive everything from scratch.
void clear_construct_caches();

}  // namespace cordial
