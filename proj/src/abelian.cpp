#include "cordial/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cordial {
namespace {

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

// prime-power factorization of m, smallest prime first
std::vector<std::int64_t> prime_power_parts(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      std::int64_t q = 1;
      while (m % p == 0) {
        q *= p;
        m /= p;
      }
      out.push_back(q);
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, new_t = 1, r = m, new_r = mod_pos(a, m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) throw std::logic_error("mod_inverse: not coprime");
  return mod_pos(t, m);
}

void check_rank(const GroupSpec& g, const Element& a) {
  if (a.size() != g.rank())
    throw std::invalid_argument("element dimension does not match group");
}

}  // namespace

GroupSpec GroupSpec::from_moduli(std::vector<std::int64_t> moduli) {
  if (moduli.empty()) throw std::invalid_argument("group needs at least one factor");
  GroupSpec g;
  g.moduli_ = std::move(moduli);
  for (std::int64_t m : g.moduli_) {
    if (m < 2) throw std::invalid_argument("cyclic factor must be >= 2");
    if (g.order_ > kMaxGroupOrder / m)
      throw std::invalid_argument("group order exceeds supported maximum");
    g.order_ *= m;
  }
  for (std::size_t i = 0; i < g.moduli_.size(); ++i) {
    std::int64_t m = g.moduli_[i];
    for (std::int64_t q : prime_power_parts(m)) {
      std::int64_t cof = m / q;
      std::int64_t coeff = cof == 1 ? 1 : mod_pos(cof * mod_inverse(cof % q, q), m);
      g.factors_.push_back({q, i, coeff});
    }
  }
  std::stable_sort(g.factors_.begin(), g.factors_.end(),
                   [](const PrimaryFactor& a, const PrimaryFactor& b) {
                     if (a.q != b.q) return a.q > b.q;
                     return a.mod_index < b.mod_index;
                   });
  g.primary_.reserve(g.factors_.size());
  for (const auto& f : g.factors_) g.primary_.push_back(f.q);
  return g;
}

GroupSpec GroupSpec::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty group spec");
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == 'x') {
      tokens.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  bool with_z = !tokens.empty() && !tokens[0].empty() && tokens[0][0] == 'Z';
  std::vector<std::int64_t> moduli;
  for (std::string_view tok : tokens) {
    if (with_z) {
      if (tok.empty() || tok[0] != 'Z')
        throw std::invalid_argument("group spec mixes Z-prefixed and bare factors");
      tok.remove_prefix(1);
    }
    if (tok.empty()) throw std::invalid_argument("empty factor in group spec");
    std::int64_t value = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad character in group spec");
      value = value * 10 + (c - '0');
      if (value > kMaxGroupOrder) throw std::invalid_argument("factor too large");
    }
    moduli.push_back(value);
  }
  return from_moduli(std::move(moduli));
}

std::string GroupSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out += 'x';
    out += 'Z';
    out += std::to_string(moduli_[i]);
  }
  return out;
}

Element identity(const GroupSpec& g) { return Element(g.rank(), 0); }

Element add(const GroupSpec& g, const Element& a, const Element& b) {
  check_rank(g, a);
  check_rank(g, b);
  Element out(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i)
    out[i] = mod_pos(a[i] + b[i], g.moduli()[i]);
  return out;
}

Element sub(const GroupSpec& g, const Element& a, const Element& b) {
  check_rank(g, a);
  check_rank(g, b);
  Element out(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i)
    out[i] = mod_pos(a[i] - b[i], g.moduli()[i]);
  return out;
}

Element neg(const GroupSpec& g, const Element& a) {
  check_rank(g, a);
  Element out(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) out[i] = mod_pos(-a[i], g.moduli()[i]);
  return out;
}

Element scale(const GroupSpec& g, std::int64_t k, const Element& a) {
  check_rank(g, a);
  Element out(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    std::int64_t m = g.moduli()[i];
    out[i] = mod_pos(mod_pos(k, m) * a[i], m);
  }
  return out;
}

std::vector<Element> elements(const GroupSpec& g) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  Element cur(g.rank(), 0);
  for (std::int64_t i = 0; i < g.order(); ++i) {
    out.push_back(cur);
    for (std::size_t j = g.rank(); j-- > 0;) {
      if (++cur[j] < g.moduli()[j]) break;
      cur[j] = 0;
    }
  }
  return out;
}

std::int64_t element_index(const GroupSpec& g, const Element& a) {
  check_rank(g, a);
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (a[i] < 0 || a[i] >= g.moduli()[i])
      throw std::invalid_argument("residue out of range");
    idx = idx * g.moduli()[i] + a[i];
  }
  return idx;
}

Element element_at(const GroupSpec& g, std::int64_t index) {
  if (index < 0 || index >= g.order()) throw std::invalid_argument("element index out of range");
  Element out(g.rank());
  for (std::size_t i = g.rank(); i-- > 0;) {
    out[i] = index % g.moduli()[i];
    index /= g.moduli()[i];
  }
  return out;
}

std::int64_t element_order(const GroupSpec& g, const Element& a) {
  check_rank(g, a);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    std::int64_t m = g.moduli()[i];
    ord = std::lcm(ord, m / std::gcd(m, a[i]));
  }
  return ord;
}

std::int64_t involution_count(const GroupSpec& g) {
  std::int64_t n = 1;
  for (std::int64_t m : g.moduli())
    if (m % 2 == 0) n *= 2;
  return n - 1;
}

Element group_sum(const GroupSpec& g) {
  Element out(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i)
    out[i] = g.moduli()[i] % 2 == 0 ? g.moduli()[i] / 2 : 0;
  return out;
}

GroupTraits classify(const GroupSpec& g) {
  GroupTraits t;
  t.odd_order = g.order() % 2 != 0;
  t.elementary_2 = true;
  int even_factors = 0;
  for (std::int64_t q : g.primary()) {
    if (q != 2) t.elementary_2 = false;
    if (q % 2 == 0) {
      ++even_factors;
      t.sylow2_order *= q;
    }
  }
  t.sylow2 = even_factors == 0   ? Sylow2::Trivial
             : even_factors == 1 ? Sylow2::Cyclic
                                 : Sylow2::Noncyclic;
  t.harmonious = t.sylow2 != Sylow2::Cyclic && !t.elementary_2;
  t.p_cordial = !t.elementary_2;
  t.has_complete_mapping = involution_count(g) != 1;
  t.r_star_guaranteed = t.sylow2 == Sylow2::Noncyclic && t.sylow2_order != 8;
  return t;
}

GroupSpec primary_group(const GroupSpec& g) {
  return GroupSpec::from_moduli(g.primary());
}

std::vector<std::int64_t> from_primary(const GroupSpec& g,
                                       const std::vector<std::int64_t>& primary_elem) {
  if (primary_elem.size() != g.factors_.size())
    throw std::invalid_argument("primary element dimension mismatch");
  Element out(g.rank(), 0);
  for (std::size_t t = 0; t < g.factors_.size(); ++t) {
    const auto& f = g.factors_[t];
    std::int64_t m = g.moduli_[f.mod_index];
    out[f.mod_index] = mod_pos(out[f.mod_index] + primary_elem[t] % f.q * f.crt_coeff, m);
  }
  return out;
}

Element to_primary(const GroupSpec& g, const Element& a) {
  check_rank(g, a);
  Element out(g.factors_.size());
  for (std::size_t t = 0; t < g.factors_.size(); ++t)
    out[t] = a[g.factors_[t].mod_index] % g.factors_[t].q;
  return out;
}

}  // namespace cordial
