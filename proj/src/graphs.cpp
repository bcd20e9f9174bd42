#include "cordial/graphs.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace cordial {
namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t value = 0;
  if (s.empty()) throw std::invalid_argument("empty number in graph spec");
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad number in graph spec");
  return value;
}

bool balanced(const std::vector<std::int64_t>& counts) {
  auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return *hi - *lo <= 1;
}

}  // namespace

GraphShape GraphShape::path(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("path length must be >= 1");
  GraphShape s;
  s.kind_ = Kind::Path;
  s.n_ = n;
  return s;
}

GraphShape GraphShape::cycles(std::vector<std::int64_t> lengths) {
  if (lengths.empty()) throw std::invalid_argument("cycle list must be non-empty");
  for (std::int64_t len : lengths)
    if (len < 3) throw std::invalid_argument("cycle length must be >= 3");
  GraphShape s;
  s.kind_ = Kind::Cycles;
  s.lengths_ = std::move(lengths);
  return s;
}

GraphShape GraphShape::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("graph spec needs kind:args");
  std::string_view kind = text.substr(0, colon);
  std::string_view args = text.substr(colon + 1);
  if (kind == "path") return path(parse_int(args));
  if (kind == "cycle") return cycles({parse_int(args)});
  if (kind == "cycles") {
    std::vector<std::int64_t> lengths;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= args.size(); ++i) {
      if (i == args.size() || args[i] == ',') {
        lengths.push_back(parse_int(args.substr(start, i - start)));
        start = i + 1;
      }
    }
    return cycles(std::move(lengths));
  }
  throw std::invalid_argument("unknown graph kind");
}

std::int64_t GraphShape::vertex_count() const {
  if (kind_ == Kind::Path) return n_;
  std::int64_t total = 0;
  for (std::int64_t len : lengths_) total += len;
  return total;
}

std::int64_t GraphShape::edge_count() const {
  return kind_ == Kind::Path ? n_ - 1 : vertex_count();
}

std::string GraphShape::str() const {
  if (kind_ == Kind::Path) return "path:" + std::to_string(n_);
  if (lengths_.size() == 1) return "cycle:" + std::to_string(lengths_[0]);
  std::string out = "cycles:";
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(lengths_[i]);
  }
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> edges(const GraphShape& shape) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (shape.is_path()) {
    for (std::int64_t i = 0; i + 1 < shape.path_length(); ++i) out.emplace_back(i, i + 1);
    return out;
  }
  std::int64_t start = 0;
  for (std::int64_t len : shape.cycle_lengths()) {
    for (std::int64_t i = 0; i + 1 < len; ++i) out.emplace_back(start + i, start + i + 1);
    out.emplace_back(start + len - 1, start);
    start += len;
  }
  return out;
}

CordialityReport verify(const Labeling& lab) {
  const std::int64_t n = lab.shape.vertex_count();
  if (static_cast<std::int64_t>(lab.labels.size()) != n)
    throw std::invalid_argument("label count does not match vertex count");

  CordialityReport rep;
  rep.vertex_counts.assign(static_cast<std::size_t>(lab.group.order()), 0);
  rep.edge_counts.assign(static_cast<std::size_t>(lab.group.order()), 0);
  for (const Element& a : lab.labels)
    ++rep.vertex_counts[static_cast<std::size_t>(element_index(lab.group, a))];
  for (auto [u, v] : edges(lab.shape)) {
    Element e = add(lab.group, lab.labels[static_cast<std::size_t>(u)],
                    lab.labels[static_cast<std::size_t>(v)]);
    ++rep.edge_counts[static_cast<std::size_t>(element_index(lab.group, e))];
  }
  rep.vertex_balanced = balanced(rep.vertex_counts);
  rep.edge_balanced = balanced(rep.edge_counts);
  rep.cordial = rep.vertex_balanced && rep.edge_balanced;
  return rep;
}

Labeling cut_cycle(const Labeling& lab) {
  if (!lab.shape.single_cycle())
    throw std::invalid_argument("cut_cycle needs a single cycle");
  CordialityReport rep = verify(lab);
  if (!rep.cordial) throw std::invalid_argument("cut_cycle needs a cordial labeling");

  auto edge_list = edges(lab.shape);
  std::int64_t max_count = *std::max_element(rep.edge_counts.begin(), rep.edge_counts.end());
  std::size_t cut = 0;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    Element e = add(lab.group, lab.labels[static_cast<std::size_t>(edge_list[i].first)],
                    lab.labels[static_cast<std::size_t>(edge_list[i].second)]);
    if (rep.edge_counts[static_cast<std::size_t>(element_index(lab.group, e))] == max_count) {
      cut = i;
      break;
    }
  }

  const std::int64_t r = lab.shape.cycle_lengths()[0];
  // edge i joins v_i and v_{i+1 mod r}; the path starts at the far endpoint
  std::int64_t start = (static_cast<std::int64_t>(cut) + 1) % r;
  Labeling out{lab.group, GraphShape::path(r), {}};
  out.labels.reserve(static_cast<std::size_t>(r));
  for (std::int64_t i = 0; i < r; ++i)
    out.labels.push_back(lab.labels[static_cast<std::size_t>((start + i) % r)]);
  return out;
}

}  // namespace cordial
