#include "cordial/construct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

namespace cordial {
namespace {

struct Memo {
  std::mutex mu;
  std::map<std::string, ListingResult> listings;           // harmonious / rstar
  std::map<std::string, Labeling> sequential;              // even-length blocks
  std::map<std::string, LabelingSearchResult> path_bases;  // searched path bases
};

Memo& memo() {
  static Memo instance;
  return instance;
}

std::string budget_key(const SearchBudget& b) { return std::to_string(b.node_cap()); }

ListingResult harmonious_memo(const GroupSpec& g, HarmoniousVariant variant,
                              const SearchBudget& budget) {
  std::string key = (variant == HarmoniousVariant::Full ? "H:" : "N:") + g.str() + "@" +
                    budget_key(budget);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().listings.find(key);
    if (it != memo().listings.end()) return it->second;
  }
  ListingResult res = find_harmonious(g, variant, budget);
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().listings.emplace(key, res);
  return res;
}

ListingResult rstar_memo(const GroupSpec& g, const SearchBudget& budget) {
  std::string key = "R:" + g.str() + "@" + budget_key(budget);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().listings.find(key);
    if (it != memo().listings.end()) return it->second;
  }
  ListingResult res = find_rstar_sequence(g, budget);
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().listings.emplace(key, res);
  return res;
}

LabelingSearchResult path_base_memo(const GroupSpec& g, std::int64_t n,
                                    const SearchBudget& budget) {
  std::string key = g.str() + "/path:" + std::to_string(n) + "@" + budget_key(budget);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().path_bases.find(key);
    if (it != memo().path_bases.end()) return it->second;
  }
  LabelingSearchResult res = search_cordial(g, GraphShape::path(n), {}, budget);
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().path_bases.emplace(key, res);
  return res;
}

void require_verified(const Labeling& lab, const char* what) {
  if (!verify(lab).cordial)
    throw ConstructionFailed(std::string(what) + " failed verification");
}

bool injective_labels(const Labeling& lab) {
  auto counts = verify(lab).vertex_counts;
  return std::all_of(counts.begin(), counts.end(), [](std::int64_t c) { return c <= 1; });
}

// harmonious listing of G as an injective cordial labeling of C_{|G|}
Labeling harmonious_cycle(const GroupSpec& g, const SearchBudget& budget,
                          SearchStats& stats) {
  ListingResult res = harmonious_memo(g, HarmoniousVariant::Full, budget);
  stats.nodes += res.stats.nodes;
  if (res.status == SearchStatus::BudgetExceeded)
    throw ConstructionUnknown("harmonious listing search ran out of budget for " + g.str());
  if (res.status != SearchStatus::Found)
    throw ConstructionFailed("no harmonious listing for " + g.str());
  return Labeling{g, GraphShape::cycles({g.order()}), res.listing};
}

Labeling nonidentity_cycle(const GroupSpec& g, const SearchBudget& budget,
                           SearchStats& stats) {
  ListingResult res = harmonious_memo(g, HarmoniousVariant::NonIdentity, budget);
  stats.nodes += res.stats.nodes;
  if (res.status == SearchStatus::BudgetExceeded)
    throw ConstructionUnknown("non-identity listing search ran out of budget for " + g.str());
  if (res.status != SearchStatus::Found)
    throw ConstructionFailed("no non-identity harmonious listing for " + g.str());
  return Labeling{g, GraphShape::cycles({g.order() - 1}), res.listing};
}

Element pad_zeros(const Element& a, std::size_t rank) {
  Element out = a;
  out.resize(rank, 0);
  return out;
}

// lift labels given over primary_group(g) back to g through the CRT map
Labeling lift_to_group(const GroupSpec& g, const GraphShape& shape,
                       const std::vector<Element>& primary_labels) {
  Labeling out{g, shape, {}};
  out.labels.reserve(primary_labels.size());
  for (const Element& a : primary_labels) out.labels.push_back(from_primary(g, a));
  return out;
}

}  // namespace

void clear_construct_caches() {
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().listings.clear();
  memo().sequential.clear();
  memo().path_bases.clear();
}

Labeling sequential_cycle(std::int64_t k, std::int64_t r, const SearchBudget& budget) {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("sequential_cycle needs odd k >= 3");
  if (r < 3 || r > k) throw std::invalid_argument("sequential_cycle needs 3 <= r <= k");
  GroupSpec zk = GroupSpec::from_moduli({k});
  const std::int64_t half = (k + 1) / 2;  // l + 1

  if (r % 2 != 0) {
    const std::int64_t l = (k - 1) / 2;
    std::vector<std::int64_t> seq(static_cast<std::size_t>(r));
    for (std::int64_t pos = 1; pos <= r; ++pos) {
      seq[static_cast<std::size_t>(pos - 1)] = pos % 2 != 0 ? (pos - 1) / 2 : l + pos / 2;
    }
    // the closed form puts l+1 at the second vertex; reading the cycle in the
    // other direction moves it to the last one
    Labeling lab{zk, GraphShape::cycles({r}), {}};
    lab.labels.reserve(static_cast<std::size_t>(r));
    lab.labels.push_back({seq[0]});
    for (std::int64_t j = r - 1; j >= 1; --j) lab.labels.push_back({seq[static_cast<std::size_t>(j)]});
    require_verified(lab, "sequential cycle labeling");
    return lab;
  }

  std::string key = std::to_string(k) + "/" + std::to_string(r) + "@" + budget_key(budget);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().sequential.find(key);
    if (it != memo().sequential.end()) return it->second;
  }
  // Pose the search on the rotated cycle so both pinned vertices sit first
  // and their shared edge class is blocked from the start; rotating the
  // solution back restores the endpoint layout.
  LabelConstraint cons;
  cons.fixed[0] = Element{half};
  cons.fixed[1] = Element{0};
  cons.injective = true;
  LabelingSearchResult res = search_cordial(zk, GraphShape::cycles({r}), cons, budget);
  if (res.status == SearchStatus::BudgetExceeded)
    throw ConstructionUnknown("even-length sequential block search ran out of budget");
  if (res.status != SearchStatus::Found)
    throw ConstructionFailed("no endpoint-pinned labeling for C_" + std::to_string(r) +
                             " over Z" + std::to_string(k));
  Labeling rotated = *res.labeling;
  Labeling lab{zk, GraphShape::cycles({r}), {}};
  lab.labels.reserve(static_cast<std::size_t>(r));
  for (std::int64_t i = 1; i < r; ++i) lab.labels.push_back(rotated.labels[static_cast<std::size_t>(i)]);
  lab.labels.push_back(rotated.labels[0]);
  require_verified(lab, "sequential cycle labeling");
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().sequential.emplace(key, lab);
  return lab;
}

Labeling blow_up_cycle(const Labeling& base, std::int64_t m, std::int64_t r) {
  if (!base.shape.single_cycle()) throw std::invalid_argument("blow_up_cycle needs a single cycle");
  const std::int64_t k = base.shape.cycle_lengths()[0];
  if (k != base.group.order()) throw std::invalid_argument("base cycle must have |G| vertices");
  if (base.group.order() % 2 == 0) throw std::invalid_argument("blow_up_cycle needs odd |G|");
  if (m < 1 || r < 0 || r > k - 1) throw std::invalid_argument("blow_up_cycle needs m >= 1, 0 <= r < k");
  if (!verify(base).cordial || !injective_labels(base))
    throw std::invalid_argument("blow_up_cycle needs an injective cordial base");

  Labeling out{base.group, GraphShape::cycles({m * k + r}), {}};
  out.labels.reserve(static_cast<std::size_t>(m * k + r));
  for (std::int64_t i = 0; i < k; ++i) {
    for (std::int64_t j = 0; j < m + (i < r ? 1 : 0); ++j)
      out.labels.push_back(base.labels[static_cast<std::size_t>(i)]);
  }
  require_verified(out, "blow-up labeling");
  return out;
}

Labeling product_cycle(const Labeling& base_h, std::int64_t m,
                       const std::vector<std::int64_t>& parts, const SearchBudget& budget) {
  if (!base_h.shape.single_cycle()) throw std::invalid_argument("product_cycle needs a single cycle");
  const GroupSpec& h = base_h.group;
  const std::int64_t k = base_h.shape.cycle_lengths()[0];
  if (h.order() % 2 == 0 || m % 2 == 0 || m < 3)
    throw std::invalid_argument("product_cycle needs odd |H| and odd m >= 3");
  if (k < 3 || k > h.order()) throw std::invalid_argument("base length must be in [3, |H|]");
  if (!verify(base_h).cordial || !injective_labels(base_h))
    throw std::invalid_argument("product_cycle needs an injective cordial base");

  const std::int64_t l = static_cast<std::int64_t>(parts.size());
  if (l < 1 || l > k) throw std::invalid_argument("need 1 <= parts <= base length");
  const bool closing_variant = parts.back() == 1;
  if (closing_variant && l < 2) throw std::invalid_argument("closing variant needs two parts");
  for (std::int64_t i = 0; i < l; ++i) {
    std::int64_t lo = 2, hi = m - 1;
    if (closing_variant && i == l - 2) lo = 1, hi = m - 2;
    if (closing_variant && i == l - 1) lo = 1, hi = 1;
    if (parts[static_cast<std::size_t>(i)] < lo || parts[static_cast<std::size_t>(i)] > hi)
      throw std::invalid_argument("run length out of range for its slot");
  }

  const std::int64_t half = (m + 1) / 2;
  const std::size_t out_rank = h.rank() + 1;
  std::vector<std::int64_t> out_moduli = h.moduli();
  out_moduli.push_back(m);
  GroupSpec hm = GroupSpec::from_moduli(out_moduli);

  std::vector<Element> labels;
  auto push = [&](const Element& h_label, std::int64_t second) {
    Element e = h_label;
    e.push_back(second);
    labels.push_back(std::move(e));
  };

  const std::int64_t plain_blocks = closing_variant ? l - 2 : l;
  for (std::int64_t i = 0; i < plain_blocks; ++i) {
    Labeling block = sequential_cycle(m, parts[static_cast<std::size_t>(i)] + 1, budget);
    for (const Element& x : block.labels)
      push(base_h.labels[static_cast<std::size_t>(i)], x[0]);
  }
  if (closing_variant) {
    // penultimate run borrows a labeling one longer and drops its last
    // vertex; the final run closes with the matching pair of labels
    const std::int64_t run = parts[static_cast<std::size_t>(l - 2)];
    Labeling block = sequential_cycle(m, run + 2, budget);
    for (std::int64_t j = 0; j <= run; ++j)
      push(base_h.labels[static_cast<std::size_t>(l - 2)],
           block.labels[static_cast<std::size_t>(j)][0]);
    std::int64_t pivot = block.labels[static_cast<std::size_t>(run)][0];
    push(base_h.labels[static_cast<std::size_t>(l - 1)], ((half - pivot) % m + m) % m);
    push(base_h.labels[static_cast<std::size_t>(l - 1)], half);
  }
  for (std::int64_t i = l; i < k; ++i)
    push(base_h.labels[static_cast<std::size_t>(i)], (i - l) % 2 == 0 ? 0 : half);

  std::int64_t total = k;
  for (std::int64_t p : parts) total += p;
  if (static_cast<std::int64_t>(labels.size()) != total)
    throw std::logic_error("product cycle assembled the wrong number of vertices");
  (void)out_rank;

  Labeling out{hm, GraphShape::cycles({total}), std::move(labels)};
  require_verified(out, "product cycle labeling");
  if (!injective_labels(out)) throw ConstructionFailed("product cycle labeling is not injective");
  return out;
}

ProductDecomposition product_decomposition(const std::vector<std::int64_t>& primary,
                                           std::int64_t r) {
  if (primary.size() < 2) throw std::invalid_argument("need more than one primary factor");
  std::int64_t order = 1;
  for (std::int64_t q : primary) {
    if (q % 2 == 0) throw std::invalid_argument("need an odd-order group");
    order *= q;
  }
  if (r < 3 || r >= order) throw std::invalid_argument("need 3 <= r < |G|");
  if (primary[0] >= r)
    throw std::invalid_argument("single prime-power embedding applies, not the product split");

  ProductDecomposition d;
  std::int64_t e = primary[0];
  std::size_t j = 1;
  while (j < primary.size() && e * primary[j] <= r) e *= primary[j++];
  d.h_primary.assign(primary.begin(), primary.begin() + static_cast<std::ptrdiff_t>(j));
  d.m = primary[j];
  d.b_primary.assign(primary.begin() + static_cast<std::ptrdiff_t>(j) + 1, primary.end());
  d.h_order = e;
  d.full_runs = (r - e) / (d.m - 1);
  d.remainder = (r - e) % (d.m - 1);
  d.base_len = e;
  const std::int64_t beta = d.full_runs, rp = d.remainder, m = d.m;

  if (r == e) return d;  // harmonious base of H, no runs

  if (m == 3) {
    if (rp == 0) {
      if (beta % 2 != 0) {
        d.parts.assign(static_cast<std::size_t>(beta), 2);
      } else {
        d.parts.assign(static_cast<std::size_t>(beta - 1), 2);
        d.parts.push_back(1);
        d.parts.push_back(1);
      }
    } else {  // rp == 1
      if (e == 3) {
        d.special_z3z3 = true;
        return d;
      }
      d.base_len = e - 1;
      if (beta % 2 != 0) {
        d.parts.assign(static_cast<std::size_t>(beta + 1), 2);
      } else if (beta <= e - 3) {
        d.parts.assign(static_cast<std::size_t>(beta), 2);
        d.parts.push_back(1);
        d.parts.push_back(1);
      } else {
        // r = 3e - 1: more runs than base vertices; no split fits
        d.constructible = false;
        return d;
      }
    }
    return d;
  }

  if (beta == 0) {  // rp >= 1 here
    d.base_len = e - 1;
    d.parts.push_back(rp + 1);
  } else if (beta % 2 == 0 && rp < 2) {
    d.parts.assign(static_cast<std::size_t>(beta - 1), m - 1);
    d.parts.push_back(m - 3);
    d.parts.push_back(2 + rp);
  } else if (beta % 2 == 0) {  // rp >= 2
    d.parts.assign(static_cast<std::size_t>(beta), m - 1);
    d.parts.push_back(rp);
  } else if (rp == 0) {
    d.parts.assign(static_cast<std::size_t>(beta), m - 1);
  } else {
    d.parts.assign(static_cast<std::size_t>(beta - 1), m - 1);
    d.parts.push_back(m - 2);
    d.parts.push_back(rp);
    d.parts.push_back(1);
  }
  return d;
}

namespace {

// Search-derived constants; tests regenerate them and compare byte for byte.
const std::int64_t kZ3Z3Table4[][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 0}};
const std::int64_t kZ3Z3Table6[][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {1, 1}};
const std::int64_t kZ3Z3Table8[][2] = {{0, 0}, {0, 1}, {1, 0}, {0, 2},
                                       {2, 2}, {2, 1}, {1, 2}, {2, 0}};

}  // namespace

Labeling z3z3_table_cycle(std::int64_t n) {
  GroupSpec g = GroupSpec::from_moduli({3, 3});
  Labeling lab{g, GraphShape::cycles({n}), {}};
  auto fill = [&lab](const std::int64_t (*rows)[2], std::int64_t count) {
    for (std::int64_t i = 0; i < count; ++i)
      lab.labels.push_back({rows[i][0], rows[i][1]});
  };
  switch (n) {
    case 4: fill(kZ3Z3Table4, 4); break;
    case 6: fill(kZ3Z3Table6, 6); break;
    case 8: fill(kZ3Z3Table8, 8); break;
    default: throw std::invalid_argument("table covers C_4, C_6, C_8 only");
  }
  require_verified(lab, "Z3xZ3 table entry");
  return lab;
}

LabelResult cycle_for_odd_group(const GroupSpec& g, std::int64_t n,
                                const SearchBudget& budget) {
  if (g.order() % 2 == 0 || g.order() < 3)
    throw std::invalid_argument("cycle_for_odd_group needs an odd-order group");
  if (n < 3) throw std::invalid_argument("cycle length must be >= 3");

  LabelResult res;
  const std::int64_t k = g.order();
  try {
    if (n >= k) {
      Labeling base = harmonious_cycle(g, budget, res.stats);
      res.labeling = blow_up_cycle(base, n / k, n % k);
      res.method = "blow-up";
    } else {
      GroupSpec p = primary_group(g);
      const std::int64_t q1 = p.moduli()[0];
      if (q1 >= n) {
        Labeling lz = sequential_cycle(q1, n, budget);
        std::vector<Element> padded;
        padded.reserve(lz.labels.size());
        for (const Element& a : lz.labels) padded.push_back(pad_zeros(a, p.rank()));
        res.labeling = lift_to_group(g, GraphShape::cycles({n}), padded);
        res.method = "sequential-embed";
      } else {
        auto fallback_search = [&]() {
          LabelingSearchResult sr = search_cordial(g, GraphShape::cycles({n}), {}, budget);
          res.stats.nodes += sr.stats.nodes;
          if (sr.status == SearchStatus::BudgetExceeded)
            throw ConstructionUnknown("fallback cycle search ran out of budget");
          if (sr.status != SearchStatus::Found)
            throw ConstructionFailed("fallback cycle search exhausted unexpectedly");
          res.labeling = *sr.labeling;
          res.method = "search-fallback";
        };
        auto lift_padded = [&](const std::vector<Element>& labels, const char* method) {
          std::vector<Element> padded;
          padded.reserve(labels.size());
          for (const Element& a : labels) padded.push_back(pad_zeros(a, p.rank()));
          res.labeling = lift_to_group(g, GraphShape::cycles({n}), padded);
          res.method = method;
        };

        ProductDecomposition d = product_decomposition(p.moduli(), n);
        if (d.special_z3z3) {
          lift_padded(z3z3_table_cycle(n).labels, "z3z3-table");
        } else if (!d.constructible) {
          // r = 3e-1 = |H x Z_m| - 1: a non-identity listing of H x Z_m is a
          // cordial C_r as is
          std::vector<std::int64_t> hm_moduli = d.h_primary;
          hm_moduli.push_back(d.m);
          try {
            lift_padded(
                nonidentity_cycle(GroupSpec::from_moduli(hm_moduli), budget, res.stats).labels,
                "hm-nonidentity");
          } catch (const ConstructionFailed&) {
            fallback_search();
          }
        } else if (d.parts.empty()) {
          lift_padded(harmonious_cycle(GroupSpec::from_moduli(d.h_primary), budget, res.stats)
                          .labels,
                      "h-base-embed");
        } else {
          GroupSpec h = GroupSpec::from_moduli(d.h_primary);
          Labeling base = d.base_len == d.h_order ? harmonious_cycle(h, budget, res.stats)
                                                  : nonidentity_cycle(h, budget, res.stats);
          try {
            lift_padded(product_cycle(base, d.m, d.parts, budget).labels, "product");
          } catch (const ConstructionFailed&) {
            fallback_search();
          }
        }
      }
    }
  } catch (const ConstructionUnknown&) {
    res.status = ConstructStatus::Unknown;
    res.method = "budget";
    return res;
  }

  require_verified(*res.labeling, "odd-group cycle labeling");
  res.status = ConstructStatus::Labeled;
  return res;
}

MasterSequences master_path_sequences(const GroupSpec& g, const std::vector<Element>& rstar) {
  if (!classify(g).elementary_2 || g.order() < 4)
    throw std::invalid_argument("master sequences need an elementary 2-group of order >= 4");
  const std::int64_t k = g.order();
  if (static_cast<std::int64_t>(rstar.size()) != k - 1)
    throw std::invalid_argument("R*-sequence must list all non-identity elements");
  std::vector<char> seen(static_cast<std::size_t>(k), 0), sums(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < rstar.size(); ++i) {
    std::int64_t idx = element_index(g, rstar[i]);
    if (idx == 0 || seen[static_cast<std::size_t>(idx)])
      throw std::invalid_argument("R*-sequence must list distinct non-identity elements");
    seen[static_cast<std::size_t>(idx)] = 1;
    std::int64_t s = element_index(g, add(g, rstar[i], rstar[(i + 1) % rstar.size()]));
    if (sums[static_cast<std::size_t>(s)])
      throw std::invalid_argument("R*-sequence has a repeated consecutive sum");
    sums[static_cast<std::size_t>(s)] = 1;
  }
  if (add(g, rstar[0], rstar[2]) != rstar[1])
    throw std::invalid_argument("R*-sequence is not normalized to a_2 = a_1 + a_3");

  const Element zero = identity(g);
  MasterSequences seq;
  // a_2 ... a_{k-1}, a_1, 0, 0, a_3 ... a_{k-1}, a_1, a_2
  for (std::size_t i = 1; i < rstar.size(); ++i) seq.two_k.push_back(rstar[i]);
  seq.two_k.push_back(rstar[0]);
  seq.two_k.push_back(zero);
  seq.two_k.push_back(zero);
  for (std::size_t i = 2; i < rstar.size(); ++i) seq.two_k.push_back(rstar[i]);
  seq.two_k.push_back(rstar[0]);
  seq.two_k.push_back(rstar[1]);
  // a_1 ... a_{k-1}, a_1, 0, 0, 0, a_3 ... a_{k-1}, a_1, a_2, a_2, a_3 ... a_{k-1}
  for (const Element& a : rstar) seq.three_k.push_back(a);
  seq.three_k.push_back(rstar[0]);
  seq.three_k.insert(seq.three_k.end(), 3, zero);
  for (std::size_t i = 2; i < rstar.size(); ++i) seq.three_k.push_back(rstar[i]);
  seq.three_k.push_back(rstar[0]);
  seq.three_k.push_back(rstar[1]);
  seq.three_k.push_back(rstar[1]);
  for (std::size_t i = 2; i < rstar.size(); ++i) seq.three_k.push_back(rstar[i]);

  if (static_cast<std::int64_t>(seq.two_k.size()) != 2 * k ||
      static_cast<std::int64_t>(seq.three_k.size()) != 3 * k)
    throw std::logic_error("master sequences have the wrong length");
  return seq;
}

Labeling extend_path(const Labeling& lab, const SearchBudget& budget) {
  if (!lab.shape.is_path()) throw std::invalid_argument("extend_path needs a path");
  CordialityReport rep = verify(lab);
  if (!rep.cordial) throw std::invalid_argument("extend_path needs a cordial path");

  const GroupSpec& g = lab.group;
  const std::int64_t k = g.order();
  const std::int64_t old_n = lab.shape.path_length();
  auto elems = elements(g);
  const std::int64_t ecap = (old_n + k - 1 + k - 1) / k;

  std::vector<std::int64_t> ecount(rep.edge_counts.begin(), rep.edge_counts.end());
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> block;
  block.reserve(static_cast<std::size_t>(k));
  std::int64_t cap = budget.node_cap();
  std::int64_t nodes = 0;
  bool over = false;

  std::int64_t prev0 = element_index(g, lab.labels.back());
  std::function<bool(std::int64_t)> dfs = [&](std::int64_t prev) -> bool {
    if (static_cast<std::int64_t>(block.size()) == k) return true;
    for (std::int64_t c = 0; c < k; ++c) {
      if (over) return false;
      ++nodes;
      if ((nodes & 1023) == 0 && nodes >= cap) over = true;
      if (used[static_cast<std::size_t>(c)]) continue;
      std::int64_t e = element_index(
          g, add(g, elems[static_cast<std::size_t>(prev)], elems[static_cast<std::size_t>(c)]));
      if (ecount[static_cast<std::size_t>(e)] + 1 > ecap) continue;
      used[static_cast<std::size_t>(c)] = 1;
      ++ecount[static_cast<std::size_t>(e)];
      block.push_back(c);
      if (dfs(c)) return true;
      block.pop_back();
      --ecount[static_cast<std::size_t>(e)];
      used[static_cast<std::size_t>(c)] = 0;
    }
    return false;
  };

  bool found = dfs(prev0);
  if (!found) {
    if (over) throw ConstructionUnknown("path extension search ran out of budget");
    throw ConstructionFailed("no balanced extension block for this path");
  }
  Labeling out{g, GraphShape::path(old_n + k), lab.labels};
  for (std::int64_t c : block) out.labels.push_back(elems[static_cast<std::size_t>(c)]);
  require_verified(out, "extended path labeling");
  return out;
}

namespace {

Labeling labeling_from_prefix(const GroupSpec& g, const std::vector<Element>& seq,
                              std::int64_t n) {
  Labeling lab{g, GraphShape::path(n), {}};
  lab.labels.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n));
  return lab;
}

}  // namespace

LabelResult path_for_group(const GroupSpec& g, std::int64_t n, const SearchBudget& budget) {
  if (n < 1) throw std::invalid_argument("path length must be >= 1");
  LabelResult res;
  auto finish = [&](Labeling lab, std::string method) {
    require_verified(lab, "path labeling");
    res.labeling = std::move(lab);
    res.method = std::move(method);
    res.status = ConstructStatus::Labeled;
    return res;
  };
  auto search_path = [&](std::int64_t len) -> Labeling {
    LabelingSearchResult sr = path_base_memo(g, len, budget);
    res.stats.nodes += sr.stats.nodes;
    if (sr.status == SearchStatus::BudgetExceeded)
      throw ConstructionUnknown("path base search ran out of budget");
    if (sr.status != SearchStatus::Found)
      throw ConstructionFailed("path base search exhausted unexpectedly");
    return *sr.labeling;
  };

  try {
    if (n == 1) return finish(Labeling{g, GraphShape::path(1), {identity(g)}}, "trivial");
    if (n == 2)
      return finish(Labeling{g, GraphShape::path(2), {identity(g), element_at(g, 1)}},
                    "trivial");

    GroupTraits traits = classify(g);
    const std::int64_t k = g.order();

    if (traits.elementary_2) {
      std::int64_t p = 0;
      while ((std::int64_t{1} << p) < k) ++p;
      if (p >= 2 && (n == k || n == k + 1)) {
        res.status = ConstructStatus::NotCordial;
        res.method = "not-cordial-exception";
        return res;
      }
      if (p <= 3) {
        const std::int64_t base_max = 3 * k;
        if (n <= base_max) return finish(search_path(n), "search");
        std::int64_t b = base_max - ((base_max - n) % k + k) % k;
        Labeling lab = search_path(b);
        for (std::int64_t len = b; len < n; len += k) lab = extend_path(lab, budget);
        return finish(std::move(lab), "search+extend");
      }
      ListingResult rst = rstar_memo(g, budget);
      res.stats.nodes += rst.stats.nodes;
      if (rst.status == SearchStatus::BudgetExceeded)
        throw ConstructionUnknown("R*-sequence search ran out of budget");
      if (rst.status != SearchStatus::Found)
        throw ConstructionFailed("no R*-sequence found for " + g.str());
      if (n <= k - 1)
        return finish(labeling_from_prefix(g, rst.listing, n), "rstar-prefix");
      MasterSequences seq = master_path_sequences(g, rst.listing);
      auto base_for = [&](std::int64_t len) -> Labeling {
        if (len <= 2 * k) return labeling_from_prefix(g, seq.two_k, len);
        if (len == 2 * k + 1) {
          // the three_k sequence only balances from 2k+2 on; close the gap by
          // repeating a_2 after the full two_k sequence (new edge class 0)
          Labeling lab = labeling_from_prefix(g, seq.two_k, 2 * k);
          lab.shape = GraphShape::path(2 * k + 1);
          lab.labels.push_back(rst.listing[1]);
          return lab;
        }
        return labeling_from_prefix(g, seq.three_k, len);
      };
      if (n <= 2 * k) return finish(base_for(n), "master-2k");
      if (n == 2 * k + 1) return finish(base_for(n), "master-bridge");
      if (n <= 3 * k) return finish(base_for(n), "master-3k");
      std::int64_t b = 2 * k + 1 + (n - (2 * k + 1)) % k;
      Labeling lab = base_for(b);
      for (std::int64_t len = b; len < n; len += k) lab = extend_path(lab, budget);
      return finish(std::move(lab), "master+extend");
    }

    if (traits.harmonious) {
      if (traits.odd_order) {
        LabelResult cyc = cycle_for_odd_group(g, n, budget);
        res.stats.nodes += cyc.stats.nodes;
        if (cyc.status == ConstructStatus::Unknown) {
          res.status = ConstructStatus::Unknown;
          res.method = "budget";
          return res;
        }
        return finish(cut_cycle(*cyc.labeling), "cycle-cut");
      }
      Labeling base = harmonious_cycle(g, budget, res.stats);
      Labeling lab{g, GraphShape::path(n), {}};
      lab.labels.reserve(static_cast<std::size_t>(n));
      for (std::int64_t i = 0; i < n; ++i)
        lab.labels.push_back(base.labels[static_cast<std::size_t>(i % k)]);
      return finish(std::move(lab), "harmonious-repeat");
    }

    // one-involution groups: searched bases P_2 .. P_{k+1}, then extension
    if (n <= k + 1) return finish(search_path(n), "search");
    std::int64_t b = (n - 2) % k + 2;
    Labeling lab = search_path(b);
    for (std::int64_t len = b; len < n; len += k) lab = extend_path(lab, budget);
    return finish(std::move(lab), "search+extend");
  } catch (const ConstructionUnknown&) {
    res.status = ConstructStatus::Unknown;
    res.method = "budget";
    return res;
  } catch (const ConstructionFailed&) {
    // last resort: decide the instance directly
    LabelingSearchResult sr = search_cordial(g, GraphShape::path(n), {}, budget);
    res.stats.nodes += sr.stats.nodes;
    if (sr.status == SearchStatus::Found) return finish(*sr.labeling, "search");
    if (sr.status == SearchStatus::ExhaustedNoSolution) {
      res.status = ConstructStatus::NotCordial;
      res.method = "search-exhausted";
      return res;
    }
    res.status = ConstructStatus::Unknown;
    res.method = "budget";
    return res;
  }
}

Labeling two_regular_product(const Labeling& c1, const GroupSpec& b,
                             const SearchBudget& budget) {
  if (!c1.shape.single_cycle()) throw std::invalid_argument("two_regular_product needs a cycle");
  const GroupSpec& a = c1.group;
  const std::int64_t m = c1.shape.cycle_lengths()[0];
  if (m != a.order()) throw std::invalid_argument("cycle length must equal |A|");
  if (!verify(c1).cordial || !injective_labels(c1))
    throw std::invalid_argument("two_regular_product needs an injective cordial labeling");
  if (involution_count(b) == 1)
    throw std::invalid_argument("B has exactly one involution, no complete mapping exists");

  CompleteMappingResult cm = find_complete_mapping(b, budget);
  if (cm.status == SearchStatus::BudgetExceeded)
    throw ConstructionUnknown("complete mapping search ran out of budget");
  if (cm.status != SearchStatus::Found)
    throw ConstructionFailed("complete mapping search exhausted unexpectedly");

  auto belems = elements(b);
  const std::int64_t n = b.order();
  std::vector<std::int64_t> moduli = a.moduli();
  moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
  GroupSpec ab = GroupSpec::from_moduli(moduli);

  Labeling out{ab, GraphShape::cycles(std::vector<std::int64_t>(static_cast<std::size_t>(n), m)),
               {}};
  out.labels.reserve(static_cast<std::size_t>(m * n));
  for (std::int64_t j = 0; j < n; ++j) {
    Element minus_theta =
        neg(b, belems[static_cast<std::size_t>(cm.theta[static_cast<std::size_t>(j)])]);
    const Element& phi_b = belems[static_cast<std::size_t>(cm.phi[static_cast<std::size_t>(j)])];
    for (std::int64_t i = 0; i < m; ++i) {
      Element e = c1.labels[static_cast<std::size_t>(i)];
      const Element& second = i % 2 == 0 ? minus_theta : phi_b;
      e.insert(e.end(), second.begin(), second.end());
      out.labels.push_back(std::move(e));
    }
  }
  require_verified(out, "disjoint cycle product labeling");
  return out;
}

Labeling two_regular_pair(const Labeling& c1, const Labeling& c2) {
  if (!c1.shape.single_cycle() || !c2.shape.single_cycle())
    throw std::invalid_argument("two_regular_pair needs two cycles");
  const GroupSpec& a = c1.group;
  const GroupSpec& b = c2.group;
  const std::int64_t m = c1.shape.cycle_lengths()[0];
  const std::int64_t n = c2.shape.cycle_lengths()[0];
  if (m != a.order() || n != b.order())
    throw std::invalid_argument("cycle lengths must equal the group orders");
  if (involution_count(a) <= 1 || involution_count(b) <= 1)
    throw std::invalid_argument("both groups need more than one involution");
  if (!verify(c1).cordial || !verify(c2).cordial)
    throw std::invalid_argument("two_regular_pair needs cordial labelings");
  if (m % 2 != 0 || n % 2 != 0) throw std::logic_error("orders must be even here");

  std::vector<std::int64_t> moduli = a.moduli();
  moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
  GroupSpec ab = GroupSpec::from_moduli(moduli);

  auto label_at = [&](std::int64_t i, std::int64_t j) {
    Element e = c1.labels[static_cast<std::size_t>(i)];
    const Element& second =
        i % 2 == 0 ? c2.labels[static_cast<std::size_t>(j)]
                   : c2.labels[static_cast<std::size_t>((j + 1) % n)];
    e.insert(e.end(), second.begin(), second.end());
    return e;
  };

  const std::int64_t comp_len = m * n / 2;
  Labeling out{ab, GraphShape::cycles({comp_len, comp_len}), {}};
  out.labels.reserve(static_cast<std::size_t>(m * n));
  for (std::int64_t j0 = 0; j0 < 2; ++j0) {
    std::int64_t j = j0;
    for (std::int64_t step = 0; step < n / 2; ++step) {
      for (std::int64_t i = 0; i < m; ++i) out.labels.push_back(label_at(i, j));
      j = (j + 2) % n;
    }
  }
  require_verified(out, "two-component product labeling");
  return out;
}

}  // namespace cordial
