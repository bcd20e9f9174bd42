#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cordial {

// Largest supported group order. Constructions are linear in output size,
// searches are budgeted, but verifier tallies allocate one counter per
// group element, so keep this at desk scale.
inline constexpr std::int64_t kMaxGroupOrder = std::int64_t{1} << 20;

// A finite abelian group presented as an ordered product of cyclic factors
// Z_m1 x Z_m2 x ... (each factor >= 2). The canonical primary decomposition
// (prime powers, sorted non-increasing) is computed on construction; no
// other isomorphism machinery exists or is wanted here.
class GroupSpec {
 public:
  // Accepts "Z3xZ9", "3x9", "45", ... per the grammar Z<k>(xZ<k>)* | <k>(x<k>)*.
  static GroupSpec parse(std::string_view text);
  static GroupSpec from_moduli(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::int64_t order() const { return order_; }
  // Prime powers p^a of the primary decomposition, sorted non-increasing.
  const std::vector<std::int64_t>& primary() const { return primary_; }
  std::size_t rank() const { return moduli_.size(); }

  std::string str() const;  // rendered form, e.g. "Z3xZ9"

  bool operator==(const GroupSpec& o) const { return moduli_ == o.moduli_; }
  bool operator!=(const GroupSpec& o) const { return !(*this == o); }

  // CRT isomorphism between this presentation and primary_group(*this).
  friend std::vector<std::int64_t> from_primary(
      const GroupSpec& g, const std::vector<std::int64_t>& primary_elem);
  friend std::vector<std::int64_t> to_primary(const GroupSpec& g,
                                              const std::vector<std::int64_t>& a);

 private:
  GroupSpec() = default;

  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> primary_;
  std::int64_t order_ = 1;

  struct PrimaryFactor {
    std::int64_t q;          // prime power
    std::size_t mod_index;   // which modulus it came from
    std::int64_t crt_coeff;  // CRT basis coefficient mod moduli[mod_index]
  };
  std::vector<PrimaryFactor> factors_;  // aligned with primary_
};

// An element is a residue vector, one coordinate per cyclic factor,
// each reduced into [0, moduli[i]).
using Element = std::vector<std::int64_t>;

Element identity(const GroupSpec& g);
Element add(const GroupSpec& g, const Element& a, const Element& b);
Element sub(const GroupSpec& g, const Element& a, const Element& b);
Element neg(const GroupSpec& g, const Element& a);
Element scale(const GroupSpec& g, std::int64_t k, const Element& a);

// All elements in mixed-radix ascending order (first coordinate most
// significant). The first element is the identity. This order is the
// canonical tie-breaking order for every search in the project.
std::vector<Element> elements(const GroupSpec& g);
std::int64_t element_index(const GroupSpec& g, const Element& a);
Element element_at(const GroupSpec& g, std::int64_t index);

std::int64_t element_order(const GroupSpec& g, const Element& a);
std::int64_t involution_count(const GroupSpec& g);
// Sum of all group elements: the unique involution when there is exactly
// one, the identity otherwise.
Element group_sum(const GroupSpec& g);

enum class Sylow2 { Trivial, Cyclic, Noncyclic };

struct GroupTraits {
  bool odd_order = false;
  bool elementary_2 = false;  // nontrivial product of Z2 factors
  Sylow2 sylow2 = Sylow2::Trivial;
  std::int64_t sylow2_order = 1;
  bool harmonious = false;
  bool p_cordial = false;
  bool has_complete_mapping = false;
  bool r_star_guaranteed = false;
};

GroupTraits classify(const GroupSpec& g);

// The same group presented by its primary decomposition (one cyclic factor
// per prime power, non-increasing).
GroupSpec primary_group(const GroupSpec& g);
// Lift an element given in primary coordinates to the original presentation.
std::vector<std::int64_t> from_primary(const GroupSpec& g,
                                       const std::vector<std::int64_t>& primary_elem);
Element to_primary(const GroupSpec& g, const Element& a);

}  // namespace cordial
