#include "cordial/search.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace cordial {
namespace {

constexpr std::int64_t kSumTableLimit = 1024;
constexpr std::int64_t kOrbitLimit = 4096;

struct NodeCounter {
  std::int64_t cap;
  std::int64_t nodes = 0;
  bool over = false;

  // budget is inspected every 1024 nodes
  bool tick() {
    ++nodes;
    if ((nodes & 1023) == 0 && nodes >= cap) over = true;
    return !over;
  }
};

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Representatives (orbit minima) of the element orbits under the group
// generated by unit scalings and swaps of equal cyclic factors. Restricting
// the second cycle vertex to these is sound: any solution maps to one with a
// representative there by applying the automorphism, which preserves both
// cordiality and the identity at vertex 0.
std::vector<std::int32_t> orbit_representatives(const GroupSpec& g) {
  static std::mutex mu;
  static std::map<std::string, std::vector<std::int32_t>> memo;
  const std::string key = g.str();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  const std::int64_t n = g.order();
  std::vector<std::int32_t> reps;
  if (n > kOrbitLimit) {
    reps.resize(static_cast<std::size_t>(n));
    std::iota(reps.begin(), reps.end(), 0);
  } else {
    std::int64_t exponent = 1;
    for (std::int64_t m : g.moduli()) exponent = std::lcm(exponent, m);
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u < exponent; ++u)
      if (std::gcd(u, exponent) == 1) units.push_back(u);
    std::vector<std::pair<std::size_t, std::size_t>> swaps;
    for (std::size_t i = 0; i < g.rank(); ++i)
      for (std::size_t j = i + 1; j < g.rank(); ++j)
        if (g.moduli()[i] == g.moduli()[j]) swaps.emplace_back(i, j);

    auto elems = elements(g);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (std::int64_t start = 0; start < n; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      reps.push_back(static_cast<std::int32_t>(start));
      std::vector<std::int64_t> queue{start};
      seen[static_cast<std::size_t>(start)] = 1;
      while (!queue.empty()) {
        std::int64_t cur = queue.back();
        queue.pop_back();
        const Element& e = elems[static_cast<std::size_t>(cur)];
        auto visit = [&](const Element& img) {
          std::int64_t idx = element_index(g, img);
          if (!seen[static_cast<std::size_t>(idx)]) {
            seen[static_cast<std::size_t>(idx)] = 1;
            queue.push_back(idx);
          }
        };
        for (std::int64_t u : units) visit(scale(g, u, e));
        for (auto [i, j] : swaps) {
          Element img = e;
          std::swap(img[i], img[j]);
          visit(img);
        }
      }
    }
    std::sort(reps.begin(), reps.end());
  }

  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, reps);
  return reps;
}

struct CordialEngine {
  const GroupSpec& g;
  const GraphShape& shape;
  std::int64_t order;
  std::int64_t vcount_total;
  std::vector<Element> elems;
  std::vector<std::int32_t> sum_table;           // order*order when small
  std::vector<std::vector<std::int32_t>> partners;  // edges determined at v
  std::int64_t vcap, ecap;
  std::vector<std::int32_t> vcount, ecount, assign;
  std::vector<char> used;
  bool injective = false;
  const std::vector<std::int64_t>* mult = nullptr;
  std::map<std::int64_t, std::int32_t> fixed;  // vertex -> element index
  std::vector<std::int32_t> v1_candidates;
  bool fix_v0 = false;
  NodeCounter counter;

  CordialEngine(const GroupSpec& group, const GraphShape& sh, std::int64_t cap)
      : g(group), shape(sh), order(group.order()), vcount_total(sh.vertex_count()),
        counter{cap} {
    elems = elements(g);
    if (order <= kSumTableLimit) {
      sum_table.resize(static_cast<std::size_t>(order * order));
      for (std::int64_t a = 0; a < order; ++a)
        for (std::int64_t b = 0; b < order; ++b)
          sum_table[static_cast<std::size_t>(a * order + b)] = static_cast<std::int32_t>(
              element_index(g, add(g, elems[static_cast<std::size_t>(a)],
                                   elems[static_cast<std::size_t>(b)])));
    }
    partners.assign(static_cast<std::size_t>(vcount_total), {});
    for (auto [u, v] : edges(shape)) {
      std::int64_t hi = std::max(u, v), lo = std::min(u, v);
      partners[static_cast<std::size_t>(hi)].push_back(static_cast<std::int32_t>(lo));
    }
    vcap = ceil_div(vcount_total, order);
    ecap = ceil_div(shape.edge_count(), order);
    vcount.assign(static_cast<std::size_t>(order), 0);
    ecount.assign(static_cast<std::size_t>(order), 0);
    assign.assign(static_cast<std::size_t>(vcount_total), -1);
    used.assign(static_cast<std::size_t>(order), 0);
  }

  std::int64_t sum(std::int64_t a, std::int64_t b) const {
    if (!sum_table.empty()) return sum_table[static_cast<std::size_t>(a * order + b)];
    return element_index(g, add(g, elems[static_cast<std::size_t>(a)],
                                elems[static_cast<std::size_t>(b)]));
  }

  bool try_place(std::int64_t v, std::int32_t c) {
    if (!counter.tick()) return false;
    if (injective && used[static_cast<std::size_t>(c)]) return false;
    if (vcount[static_cast<std::size_t>(c)] + 1 > vcap) return false;
    if (mult && vcount[static_cast<std::size_t>(c)] + 1 > (*mult)[static_cast<std::size_t>(c)])
      return false;

    const auto& part = partners[static_cast<std::size_t>(v)];
    std::size_t placed_edges = 0;
    bool ok = true;
    for (std::int32_t u : part) {
      std::int64_t e = sum(assign[static_cast<std::size_t>(u)], c);
      if (ecount[static_cast<std::size_t>(e)] + 1 > ecap) {
        ok = false;
        break;
      }
      ++ecount[static_cast<std::size_t>(e)];
      ++placed_edges;
    }
    if (!ok) {
      for (std::size_t i = 0; i < placed_edges; ++i) {
        std::int64_t e = sum(assign[static_cast<std::size_t>(part[i])], c);
        --ecount[static_cast<std::size_t>(e)];
      }
      return false;
    }
    assign[static_cast<std::size_t>(v)] = c;
    ++vcount[static_cast<std::size_t>(c)];
    used[static_cast<std::size_t>(c)] = 1;
    return true;
  }

  void unplace(std::int64_t v, std::int32_t c) {
    for (std::int32_t u : partners[static_cast<std::size_t>(v)]) {
      std::int64_t e = sum(assign[static_cast<std::size_t>(u)], c);
      --ecount[static_cast<std::size_t>(e)];
    }
    assign[static_cast<std::size_t>(v)] = -1;
    --vcount[static_cast<std::size_t>(c)];
    used[static_cast<std::size_t>(c)] = 0;
  }

  bool dfs(std::int64_t v) {
    if (v == vcount_total) return true;
    auto it = fixed.find(v);
    if (it != fixed.end()) {
      std::int32_t c = it->second;
      if (!try_place(v, c)) return false;
      if (dfs(v + 1)) return true;
      unplace(v, c);
      return counter.over ? false : false;
    }
    if (v == 0 && fix_v0) {
      if (try_place(0, 0)) {
        if (dfs(1)) return true;
        unplace(0, 0);
      }
      return false;
    }
    if (v == 1 && !v1_candidates.empty()) {
      for (std::int32_t c : v1_candidates) {
        if (counter.over) return false;
        if (!try_place(v, c)) continue;
        if (dfs(v + 1)) return true;
        unplace(v, c);
      }
      return false;
    }
    for (std::int32_t c = 0; c < order; ++c) {
      if (counter.over) return false;
      if (!try_place(v, c)) continue;
      if (dfs(v + 1)) return true;
      unplace(v, c);
    }
    return false;
  }
};

}  // namespace

LabelingSearchResult search_cordial(const GroupSpec& g, const GraphShape& shape,
                                    const LabelConstraint& cons, const SearchBudget& budget) {
  LabelingSearchResult res;

  // degree-sum refutation: on a 2-regular graph sum(e_c) = 2 sum(v_c), so a
  // cordial labeling with |G| dividing V forces (V/|G|) * sum(G) = 0
  if (shape.kind() == GraphShape::Kind::Cycles && shape.vertex_count() % g.order() == 0) {
    Element forced = scale(g, shape.vertex_count() / g.order(), group_sum(g));
    if (forced != identity(g)) {
      res.status = SearchStatus::ExhaustedNoSolution;
      res.refuted_by_sum = true;
      return res;
    }
  }

  CordialEngine engine(g, shape, budget.node_cap());
  engine.injective = cons.injective;
  if (cons.multiplicity) {
    const auto& m = *cons.multiplicity;
    if (static_cast<std::int64_t>(m.size()) != g.order())
      throw std::invalid_argument("multiplicity vector size must equal group order");
    std::int64_t total = 0;
    for (std::int64_t x : m) {
      if (x < 0) throw std::invalid_argument("multiplicity must be non-negative");
      total += x;
    }
    if (total != shape.vertex_count())
      throw std::invalid_argument("multiplicity must sum to the vertex count");
    engine.mult = &m;
  }
  for (const auto& [v, elem] : cons.fixed) {
    if (v < 0 || v >= shape.vertex_count())
      throw std::invalid_argument("fixed vertex index out of range");
    std::int64_t idx = element_index(g, elem);
    if (cons.multiplicity && (*cons.multiplicity)[static_cast<std::size_t>(idx)] == 0)
      throw std::invalid_argument("fixed assignment contradicts multiplicity");
    engine.fixed[v] = static_cast<std::int32_t>(idx);
  }
  if (cons.fixed.empty() && !cons.multiplicity) {
    engine.fix_v0 = true;
    if (shape.single_cycle() && shape.vertex_count() > 1)
      engine.v1_candidates = orbit_representatives(g);
  }

  bool found = engine.dfs(0);
  res.stats.nodes = engine.counter.nodes;
  if (found) {
    Labeling lab{g, shape, {}};
    lab.labels.reserve(engine.assign.size());
    for (std::int32_t c : engine.assign)
      lab.labels.push_back(engine.elems[static_cast<std::size_t>(c)]);
    if (!verify(lab).cordial)
      throw std::logic_error("search produced a non-cordial labeling");
    res.status = SearchStatus::Found;
    res.labeling = std::move(lab);
  } else {
    res.status = engine.counter.over ? SearchStatus::BudgetExceeded
                                     : SearchStatus::ExhaustedNoSolution;
  }
  return res;
}

namespace {

struct MappingEngine {
  const GroupSpec& g;
  std::int64_t order;
  std::vector<Element> elems;
  std::vector<std::int64_t> phi, theta;
  std::vector<char> phi_used, theta_used;
  NodeCounter counter;

  MappingEngine(const GroupSpec& group, std::int64_t cap)
      : g(group), order(group.order()), counter{cap} {
    elems = elements(g);
    phi.assign(static_cast<std::size_t>(order), -1);
    theta.assign(static_cast<std::size_t>(order), -1);
    phi_used.assign(static_cast<std::size_t>(order), 0);
    theta_used.assign(static_cast<std::size_t>(order), 0);
  }

  // complete mappings are shift invariant, so phi(0) = 0 loses nothing
  bool dfs(std::int64_t v) {
    if (v == order) return true;
    const std::int64_t last = v == 0 ? 1 : order;
    for (std::int64_t c = 0; c < last; ++c) {
      if (counter.over) return false;
      if (!counter.tick()) return false;
      if (phi_used[static_cast<std::size_t>(c)]) continue;
      std::int64_t t = element_index(
          g, sub(g, elems[static_cast<std::size_t>(c)], elems[static_cast<std::size_t>(v)]));
      if (theta_used[static_cast<std::size_t>(t)]) continue;
      phi[static_cast<std::size_t>(v)] = c;
      theta[static_cast<std::size_t>(v)] = t;
      phi_used[static_cast<std::size_t>(c)] = 1;
      theta_used[static_cast<std::size_t>(t)] = 1;
      if (dfs(v + 1)) return true;
      phi_used[static_cast<std::size_t>(c)] = 0;
      theta_used[static_cast<std::size_t>(t)] = 0;
      phi[static_cast<std::size_t>(v)] = -1;
      theta[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }
};

bool is_permutation(const std::vector<std::int64_t>& p) {
  std::vector<char> seen(p.size(), 0);
  for (std::int64_t x : p) {
    if (x < 0 || x >= static_cast<std::int64_t>(p.size()) || seen[static_cast<std::size_t>(x)])
      return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  return true;
}

}  // namespace

CompleteMappingResult find_complete_mapping(const GroupSpec& g, const SearchBudget& budget) {
  CompleteMappingResult res;
  const std::int64_t n = g.order();

  if (n % 2 != 0) {
    // doubling is an automorphism of odd-order groups and theta(g) = g
    auto elems = elements(g);
    res.phi.reserve(static_cast<std::size_t>(n));
    res.theta.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      res.phi.push_back(element_index(g, scale(g, 2, elems[static_cast<std::size_t>(i)])));
      res.theta[static_cast<std::size_t>(i)] = i;
    }
    res.status = SearchStatus::Found;
    return res;
  }

  if (involution_count(g) == 1) {
    res.status = SearchStatus::ExhaustedNoSolution;
    if (n <= 16) {
      MappingEngine engine(g, budget.node_cap());
      if (engine.dfs(0))
        throw std::logic_error("complete mapping found for a one-involution group");
      res.stats.nodes = engine.counter.nodes;
      if (engine.counter.over) res.status = SearchStatus::BudgetExceeded;
    }
    return res;
  }

  MappingEngine engine(g, budget.node_cap());
  bool found = engine.dfs(0);
  res.stats.nodes = engine.counter.nodes;
  if (found) {
    if (!is_permutation(engine.phi) || !is_permutation(engine.theta))
      throw std::logic_error("complete mapping search produced a non-bijection");
    res.status = SearchStatus::Found;
    res.phi = std::move(engine.phi);
    res.theta = std::move(engine.theta);
  } else {
    res.status = engine.counter.over ? SearchStatus::BudgetExceeded
                                     : SearchStatus::ExhaustedNoSolution;
  }
  return res;
}

namespace {

// common listing search: place a fixed first element, extend keeping all
// consecutive sums distinct, close the cycle with a fresh wrap sum
struct ListingEngine {
  const GroupSpec& g;
  std::int64_t order;
  std::vector<Element> elems;
  std::vector<std::int64_t> seq;
  std::vector<char> used, sum_used;
  bool skip_identity = false;
  std::size_t target_len = 0;
  // A listing of all non-identity elements has sum(labels) = sum(G), so its
  // k-1 distinct sums miss exactly the class 2*sum(G) = sum(G); candidates
  // hitting that class can never close.
  std::int64_t forbidden_sum = -1;
  NodeCounter counter;

  ListingEngine(const GroupSpec& group, std::int64_t cap)
      : g(group), order(group.order()), counter{cap} {
    elems = elements(g);
    used.assign(static_cast<std::size_t>(order), 0);
    sum_used.assign(static_cast<std::size_t>(order), 0);
  }

  std::int64_t sum_index(std::int64_t a, std::int64_t b) const {
    return element_index(g, add(g, elems[static_cast<std::size_t>(a)],
                                elems[static_cast<std::size_t>(b)]));
  }

  bool dfs() {
    if (seq.size() == target_len) {
      std::int64_t wrap = sum_index(seq.back(), seq.front());
      return !sum_used[static_cast<std::size_t>(wrap)] && wrap != forbidden_sum;
    }
    for (std::int64_t c = skip_identity ? 1 : 0; c < order; ++c) {
      if (counter.over) return false;
      if (!counter.tick()) return false;
      if (used[static_cast<std::size_t>(c)]) continue;
      std::int64_t s = sum_index(seq.back(), c);
      if (sum_used[static_cast<std::size_t>(s)] || s == forbidden_sum) continue;
      used[static_cast<std::size_t>(c)] = 1;
      sum_used[static_cast<std::size_t>(s)] = 1;
      seq.push_back(c);
      if (dfs()) return true;
      seq.pop_back();
      used[static_cast<std::size_t>(c)] = 0;
      sum_used[static_cast<std::size_t>(s)] = 0;
    }
    return false;
  }

  bool run(std::int64_t first) {
    seq.clear();
    seq.push_back(first);
    used[static_cast<std::size_t>(first)] = 1;
    bool found = dfs();
    if (!found) used[static_cast<std::size_t>(first)] = 0;
    return found;
  }
};

ListingResult listing_from(const GroupSpec& g, const ListingEngine& engine, bool found) {
  ListingResult res;
  res.stats.nodes = engine.counter.nodes;
  if (found) {
    res.status = SearchStatus::Found;
    res.listing.reserve(engine.seq.size());
    for (std::int64_t c : engine.seq)
      res.listing.push_back(engine.elems[static_cast<std::size_t>(c)]);
  } else {
    res.status = engine.counter.over ? SearchStatus::BudgetExceeded
                                     : SearchStatus::ExhaustedNoSolution;
  }
  return res;
}

void check_listing_sums(const GroupSpec& g, const std::vector<Element>& listing) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (std::size_t i = 0; i < listing.size(); ++i) {
    std::int64_t s =
        element_index(g, add(g, listing[i], listing[(i + 1) % listing.size()]));
    if (seen[static_cast<std::size_t>(s)])
      throw std::logic_error("listing search produced a repeated sum");
    seen[static_cast<std::size_t>(s)] = 1;
  }
}

}  // namespace

ListingResult find_harmonious(const GroupSpec& g, HarmoniousVariant variant,
                              const SearchBudget& budget) {
  ListingResult res;
  const std::int64_t n = g.order();

  if (variant == HarmoniousVariant::Full) {
    if (g.rank() == 1 && n % 2 != 0) {
      // identity listing of an odd cyclic group: sums 2i+1 are a bijection
      auto elems = elements(g);
      res.listing = std::move(elems);
      res.status = SearchStatus::Found;
      return res;
    }
    if (!classify(g).harmonious) {
      res.status = SearchStatus::ExhaustedNoSolution;
      if (n <= 8) {
        ListingEngine engine(g, budget.node_cap());
        engine.target_len = static_cast<std::size_t>(n);
        if (engine.run(0))
          throw std::logic_error("harmonious listing found for a non-harmonious group");
        res.stats.nodes = engine.counter.nodes;
        if (engine.counter.over) res.status = SearchStatus::BudgetExceeded;
      }
      return res;
    }
    // a cyclic rotation puts the identity first, so fixing it loses nothing
    ListingEngine engine(g, budget.node_cap());
    engine.target_len = static_cast<std::size_t>(n);
    bool found = engine.run(0);
    res = listing_from(g, engine, found);
    if (res.status == SearchStatus::Found) check_listing_sums(g, res.listing);
    return res;
  }

  // non-identity variant
  if (n == 3) {
    // the two listings of Z3# both repeat their sum
    ListingEngine engine(g, budget.node_cap());
    engine.target_len = 2;
    engine.skip_identity = true;
    if (engine.run(1))
      throw std::logic_error("non-identity harmonious listing found for Z3");
    res.stats.nodes = engine.counter.nodes;
    res.status = engine.counter.over ? SearchStatus::BudgetExceeded
                                     : SearchStatus::ExhaustedNoSolution;
    return res;
  }
  ListingEngine engine(g, budget.node_cap());
  engine.target_len = static_cast<std::size_t>(n - 1);
  engine.skip_identity = true;
  engine.forbidden_sum = element_index(g, group_sum(g));
  bool found = engine.run(1);
  res = listing_from(g, engine, found);
  if (res.status == SearchStatus::Found) check_listing_sums(g, res.listing);
  return res;
}

ListingResult find_rstar_sequence(const GroupSpec& g, const SearchBudget& budget) {
  if (!classify(g).elementary_2 || g.order() < 4)
    throw std::invalid_argument("R*-sequences need an elementary 2-group of order >= 4");

  const std::int64_t n = g.order();
  ListingResult res;
  ListingEngine engine(g, budget.node_cap());
  engine.target_len = static_cast<std::size_t>(n - 1);
  engine.skip_identity = true;

  // enforce the marked relation up front: a_3 = a_1 + a_2 pins a_2 = a_1 + a_3
  // in characteristic 2, and rotations make "relation at position 2" general
  for (std::int64_t a1 = 1; a1 < n && !engine.counter.over; ++a1) {
    for (std::int64_t a2 = 1; a2 < n && !engine.counter.over; ++a2) {
      if (a2 == a1) continue;
      if (!engine.counter.tick()) break;
      std::int64_t a3 = engine.sum_index(a1, a2);
      std::int64_t s1 = a3;  // a1 + a2
      std::int64_t s2 = a1;  // a2 + a3 collapses to a1
      engine.seq = {a1, a2, a3};
      std::fill(engine.used.begin(), engine.used.end(), 0);
      std::fill(engine.sum_used.begin(), engine.sum_used.end(), 0);
      engine.used[static_cast<std::size_t>(a1)] = 1;
      engine.used[static_cast<std::size_t>(a2)] = 1;
      engine.used[static_cast<std::size_t>(a3)] = 1;
      engine.sum_used[static_cast<std::size_t>(s1)] = 1;
      engine.sum_used[static_cast<std::size_t>(s2)] = 1;
      if (engine.dfs()) {
        res.stats.nodes = engine.counter.nodes;
        res.status = SearchStatus::Found;
        res.listing.reserve(engine.seq.size());
        for (std::int64_t c : engine.seq)
          res.listing.push_back(engine.elems[static_cast<std::size_t>(c)]);
        check_listing_sums(g, res.listing);
        Element rel = add(g, res.listing[0], res.listing[2]);
        if (rel != res.listing[1])
          throw std::logic_error("R*-sequence search lost its marked relation");
        return res;
      }
    }
  }
  res.stats.nodes = engine.counter.nodes;
  res.status = engine.counter.over ? SearchStatus::BudgetExceeded
                                   : SearchStatus::ExhaustedNoSolution;
  return res;
}

}  // namespace cordial
