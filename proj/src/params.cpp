#include "cdm/params.hpp"

#include <algorithm>
#include <set>

#include "cdm/error.hpp"

namespace cdm {

bool is_odd_prime(std::uint32_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Params::Params(std::uint32_t p, std::uint32_t q, std::vector<std::string> vertices,
               std::vector<std::pair<std::string, std::string>> edges,
               std::vector<std::string> extras)
    : p_(p), q_(q), vertices_(std::move(vertices)), extras_(std::move(extras)) {
  if (!is_odd_prime(p_)) throw ParameterError("p must be an odd prime >= 3");
  if (!is_odd_prime(q_)) throw ParameterError("q must be an odd prime >= 3");
  if (p_ == q_) throw ParameterError("p and q must be distinct");

  std::sort(vertices_.begin(), vertices_.end());
  std::sort(extras_.begin(), extras_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw ParameterError("duplicate vertex label");
  if (std::adjacent_find(extras_.begin(), extras_.end()) != extras_.end())
    throw ParameterError("duplicate extra label");
  for (const auto& e : extras_)
    if (std::binary_search(vertices_.begin(), vertices_.end(), e))
      throw ParameterError("extra label collides with vertex label: " + e);
  for (const auto& v : vertices_)
    if (v.empty()) throw ParameterError("empty vertex label");
  for (const auto& e : extras_)
    if (e.empty()) throw ParameterError("empty extra label");

  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto& [a, b] : edges) {
    auto ia = find_vertex(a), ib = find_vertex(b);
    if (!ia || !ib) throw ParameterError("edge endpoint is not a vertex: " + a + " " + b);
    if (*ia == *ib) throw ParameterError("self-loop at " + a);
    auto pr = std::minmax(*ia, *ib);
    if (!seen.insert({pr.first, pr.second}).second)
      throw ParameterError("duplicate edge " + a + " " + b);
  }
  edges_.assign(seen.begin(), seen.end());

  incidence_.resize(vertices_.size());
  for (std::uint32_t r = 0; r < edges_.size(); ++r) {
    incidence_[edges_[r].first].push_back(r);
    incidence_[edges_[r].second].push_back(r);
  }

  if (x_count() > 64) throw ParameterError("more than 64 C2 coordinates");

  auto mul_checked = [](std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > (std::uint64_t{1} << 62) / b)
      throw ParameterError("group order exceeds 2^62");
    return a * b;
  };
  for (std::size_t r = 0; r < edges_.size(); ++r) order_ = mul_checked(order_, q_);
  for (std::size_t v = 0; v < vertices_.size(); ++v) order_ = mul_checked(order_, p_);
  for (std::size_t j = 0; j < x_count(); ++j) order_ = mul_checked(order_, 2);
}

std::string Params::edge_label(std::size_t r) const {
  return vertices_[edges_[r].first] + "-" + vertices_[edges_[r].second];
}

const std::string& Params::x_label(std::size_t j) const {
  return j < vertices_.size() ? vertices_[j] : extras_[j - vertices_.size()];
}

std::optional<std::uint32_t> Params::find_vertex(std::string_view label) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end() || *it != label) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

std::uint32_t Params::vertex_index(std::string_view label) const {
  if (auto i = find_vertex(label)) return *i;
  throw LabelError("unknown vertex label: " + std::string(label));
}

std::uint32_t Params::extra_index(std::string_view label) const {
  auto it = std::lower_bound(extras_.begin(), extras_.end(), label);
  if (it == extras_.end() || *it != label)
    throw LabelError("unknown extra label: " + std::string(label));
  return static_cast<std::uint32_t>(it - extras_.begin());
}

std::uint32_t Params::edge_index(std::string_view a, std::string_view b) const {
  std::uint32_t ia = vertex_index(a), ib = vertex_index(b);
  if (ib < ia) std::swap(ia, ib);
  const std::pair<std::uint32_t, std::uint32_t> key{ia, ib};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key)
    throw LabelError("unknown edge: " + std::string(a) + " " + std::string(b));
  return static_cast<std::uint32_t>(it - edges_.begin());
}

bool operator==(const Params& a, const Params& b) {
  return a.p_ == b.p_ && a.q_ == b.q_ && a.vertices_ == b.vertices_ &&
         a.edges_ == b.edges_ && a.extras_ == b.extras_;
}

}  // namespace cdm
