#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cordial/abelian.hpp"

namespace cordial {

// Path(n >= 1) or a disjoint union of cycles (every length >= 3).
class GraphShape {
 public:
  enum class Kind { Path, Cycles };

  static GraphShape path(std::int64_t n);
  static GraphShape cycles(std::vector<std::int64_t> lengths);
  // "path:<n>", "cycle:<n>", "cycles:<n1>,<n2>,..."
  static GraphShape parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_path() const { return kind_ == Kind::Path; }
  bool single_cycle() const { return kind_ == Kind::Cycles && lengths_.size() == 1; }
  std::int64_t path_length() const { return n_; }
  const std::vector<std::int64_t>& cycle_lengths() const { return lengths_; }

  std::int64_t vertex_count() const;
  std::int64_t edge_count() const;
  std::string str() const;

  bool operator==(const GraphShape& o) const {
    return kind_ == o.kind_ && n_ == o.n_ && lengths_ == o.lengths_;
  }

 private:
  GraphShape() = default;
  Kind kind_ = Kind::Path;
  std::int64_t n_ = 0;
  std::vector<std::int64_t> lengths_;
};

// Edge list in deterministic order: paths are (i, i+1); each cycle is its
// consecutive pairs followed by the wrap pair, components in order.
std::vector<std::pair<std::int64_t, std::int64_t>> edges(const GraphShape& shape);

struct Labeling {
  GroupSpec group;
  GraphShape shape;
  std::vector<Element> labels;  // vertex order; cycles concatenated per component
};

struct CordialityReport {
  std::vector<std::int64_t> vertex_counts;  // indexed by canonical element index
  std::vector<std::int64_t> edge_counts;
  bool vertex_balanced = false;
  bool edge_balanced = false;
  bool cordial = false;
};

// Tallies v_c and e_c over all |G| label classes (including empty ones);
// balanced means max - min <= 1.
CordialityReport verify(const Labeling& lab);

// Removes the first edge (in edge order) whose label class has maximal edge
// count from a cordial single-cycle labeling and returns the path labeling
// starting at that edge's far endpoint.
Labeling cut_cycle(const Labeling& lab);

}  // namespace cordial
