#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdm {

// The fixed data every structured group is built over: two distinct odd
// primes p and q, an ordered vertex label list V, an edge list R of
// unordered vertex pairs, and an extra label list I disjoint from V.
//
// Canonical order: V sorted lexicographically, R sorted by (min,max)
// endpoint indices, I sorted. Every residue array and every integer
// encoding in the library uses this order.
class Params {
 public:
  Params(std::uint32_t p, std::uint32_t q, std::vector<std::string> vertices,
         std::vector<std::pair<std::string, std::string>> edges,
         std::vector<std::string> extras);

  std::uint32_t p() const { return p_; }
  std::uint32_t q() const { return q_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t extra_count() const { return extras_.size(); }
  // Dimension of the C2 block: |V| + |I|.
  std::size_t x_count() const { return vertices_.size() + extras_.size(); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::string>& extras() const { return extras_; }
  // Edges as index pairs into vertices(), first < second.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

  const std::string& vertex_label(std::size_t i) const { return vertices_[i]; }
  const std::string& extra_label(std::size_t i) const { return extras_[i]; }
  std::string edge_label(std::size_t r) const;
  // Label of C2 slot j (vertex labels first, then extras).
  const std::string& x_label(std::size_t j) const;

  // Throwing lookups (LabelError).
  std::uint32_t vertex_index(std::string_view label) const;
  std::uint32_t extra_index(std::string_view label) const;
  std::uint32_t edge_index(std::string_view a, std::string_view b) const;

  std::optional<std::uint32_t> find_vertex(std::string_view label) const;

  // Edges incident to vertex v.
  const std::vector<std::uint32_t>& incident_edges(std::uint32_t v) const {
    return incidence_[v];
  }

  // q^|R| * p^|V| * 2^(|V|+|I|). Throws ParameterError on 64-bit overflow.
  std::uint64_t group_order() const { return order_; }

  friend bool operator==(const Params&, const Params&);

 private:
  std::uint32_t p_, q_;
  std::vector<std::string> vertices_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::string> extras_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::uint64_t order_ = 1;
};

bool is_odd_prime(std::uint32_t n);

}  // namespace cdm
