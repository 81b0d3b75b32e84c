#include "cdm/structured.hpp"

#include <algorithm>

#include "cdm/error.hpp"

namespace cdm {

namespace {
constexpr std::size_t kMaxDigits = 160;
}

StructuredGroup::StructuredGroup(Params params) : params_(std::move(params)) {
  const std::size_t nr = params_.edge_count();
  const std::size_t nv = params_.vertex_count();
  const std::size_t nx = params_.x_count();
  digit_count_ = nr + nv + nx;
  if (digit_count_ > kMaxDigits) throw ParameterError("too many coordinates");

  radix_.reserve(digit_count_);
  for (std::size_t r = 0; r < nr; ++r) radix_.push_back(params_.q());
  for (std::size_t v = 0; v < nv; ++v) radix_.push_back(params_.p());
  for (std::size_t j = 0; j < nx; ++j) radix_.push_back(2);

  place_.resize(digit_count_);
  std::uint64_t place = 1;
  for (std::size_t i = 0; i < digit_count_; ++i) {
    place_[i] = place;
    place *= radix_[i];
  }

  // (gamma)_v and (beta)_v per vertex, (delta)_r per edge, units per extra.
  for (std::uint32_t v = 0; v < nv; ++v)
    gens_.push_back(inject_vertex(dp().rotation(), v));
  for (std::uint32_t v = 0; v < nv; ++v)
    gens_.push_back(inject_vertex(dp().reflection(), v));
  for (std::uint32_t r = 0; r < nr; ++r) gens_.push_back(inject_edge(w().cq_generator(), r));
  for (std::uint32_t i = 0; i < params_.extra_count(); ++i)
    gens_.push_back(inject_extra(1, i));
  if (gens_.empty()) gens_.push_back(0);  // trivial group still needs a generator
}

void StructuredGroup::decode_digits(std::uint64_t h, std::uint32_t* d) const {
  for (std::size_t i = 0; i < digit_count_; ++i) {
    d[i] = static_cast<std::uint32_t>(h % radix_[i]);
    h /= radix_[i];
  }
}

std::uint64_t StructuredGroup::encode_digits(const std::uint32_t* d) const {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < digit_count_; ++i) h += d[i] * place_[i];
  return h;
}

std::uint64_t StructuredGroup::mul(std::uint64_t a, std::uint64_t b) const {
  const std::size_t nr = params_.edge_count();
  const std::size_t nv = params_.vertex_count();
  const std::uint32_t p = params_.p(), q = params_.q();
  std::uint32_t da[kMaxDigits], db[kMaxDigits];
  decode_digits(a, da);
  decode_digits(b, db);
  const std::uint32_t* xa = da + nr + nv;
  std::uint64_t h = 0;
  // Edge residues twist by the two endpoint signs of the left factor.
  for (std::size_t r = 0; r < nr; ++r) {
    auto [u, v] = params_.edges()[r];
    std::uint32_t z = (xa[u] ^ xa[v]) ? (da[r] + q - db[r]) % q : (da[r] + db[r]) % q;
    h += z * place_[r];
  }
  // Vertex residues twist by the vertex sign of the left factor.
  for (std::size_t v = 0; v < nv; ++v) {
    std::uint32_t y =
        xa[v] ? (da[nr + v] + p - db[nr + v]) % p : (da[nr + v] + db[nr + v]) % p;
    h += y * place_[nr + v];
  }
  for (std::size_t j = 0; j < params_.x_count(); ++j)
    h += static_cast<std::uint64_t>(xa[j] ^ db[nr + nv + j]) * place_[nr + nv + j];
  return h;
}

std::uint64_t StructuredGroup::inv(std::uint64_t a) const {
  const std::size_t nr = params_.edge_count();
  const std::size_t nv = params_.vertex_count();
  const std::uint32_t p = params_.p(), q = params_.q();
  std::uint32_t d[kMaxDigits];
  decode_digits(a, d);
  const std::uint32_t* x = d + nr + nv;
  std::uint64_t h = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    auto [u, v] = params_.edges()[r];
    std::uint32_t z = (x[u] ^ x[v]) ? d[r] : (q - d[r]) % q;
    h += z * place_[r];
  }
  for (std::size_t v = 0; v < nv; ++v) {
    std::uint32_t y = x[v] ? d[nr + v] : (p - d[nr + v]) % p;
    h += y * place_[nr + v];
  }
  for (std::size_t j = 0; j < params_.x_count(); ++j)
    h += static_cast<std::uint64_t>(x[j]) * place_[nr + nv + j];
  return h;
}

std::uint64_t StructuredGroup::encode(const StructuredElement& e) const {
  if (e.z.size() != params_.edge_count() || e.y.size() != params_.vertex_count() ||
      e.x.size() != params_.x_count())
    throw ParameterError("component sizes do not match the parameters");
  std::uint64_t h = 0;
  std::size_t i = 0;
  for (auto z : e.z) {
    if (z >= params_.q()) throw ParameterError("edge residue out of range");
    h += z * place_[i++];
  }
  for (auto y : e.y) {
    if (y >= params_.p()) throw ParameterError("vertex residue out of range");
    h += y * place_[i++];
  }
  for (auto x : e.x) {
    if (x >= 2) throw ParameterError("sign residue out of range");
    h += x * place_[i++];
  }
  return h;
}

StructuredElement StructuredGroup::decode(std::uint64_t h) const {
  std::uint32_t d[kMaxDigits];
  decode_digits(h, d);
  StructuredElement e;
  const std::size_t nr = params_.edge_count(), nv = params_.vertex_count();
  e.z.assign(d, d + nr);
  e.y.assign(d + nr, d + nr + nv);
  e.x.assign(d + nr + nv, d + nr + nv + params_.x_count());
  return e;
}

DpElement StructuredGroup::project_vertex(std::uint64_t g, std::uint32_t v) const {
  if (v >= params_.vertex_count()) throw LabelError("vertex index out of range");
  const std::size_t nr = params_.edge_count();
  std::uint32_t y = static_cast<std::uint32_t>(g / place_[nr + v] % params_.p());
  std::uint32_t x = static_cast<std::uint32_t>(
      g / place_[nr + params_.vertex_count() + v] % 2);
  return {y, static_cast<std::uint8_t>(x)};
}

WElement StructuredGroup::project_edge(std::uint64_t g, std::uint32_t r) const {
  if (r >= params_.edge_count()) throw LabelError("edge index out of range");
  auto [u, v] = params_.edges()[r];
  std::uint32_t z = static_cast<std::uint32_t>(g / place_[r] % params_.q());
  return {z, project_vertex(g, u), project_vertex(g, v)};
}

std::uint8_t StructuredGroup::project_extra(std::uint64_t g, std::uint32_t i) const {
  if (i >= params_.extra_count()) throw LabelError("extra index out of range");
  const std::size_t slot = params_.edge_count() + params_.vertex_count() +
                           params_.vertex_count() + i;
  return static_cast<std::uint8_t>(g / place_[slot] % 2);
}

std::uint64_t StructuredGroup::inject_vertex(DpElement g, std::uint32_t v) const {
  if (v >= params_.vertex_count()) throw LabelError("vertex index out of range");
  if (!dp().valid(g)) throw ParameterError("invalid dihedral element");
  const std::size_t nr = params_.edge_count();
  return g.y * place_[nr + v] + std::uint64_t{g.x} * place_[nr + params_.vertex_count() + v];
}

std::uint64_t StructuredGroup::inject_edge(WElement g, std::uint32_t r) const {
  if (r >= params_.edge_count()) throw LabelError("edge index out of range");
  if (!w().valid(g)) throw ParameterError("invalid W element");
  auto [u, v] = params_.edges()[r];
  return g.z * place_[r] + inject_vertex(g.b, u) + inject_vertex(g.c, v);
}

std::uint64_t StructuredGroup::inject_extra(std::uint8_t bit, std::uint32_t i) const {
  if (i >= params_.extra_count()) throw LabelError("extra index out of range");
  const std::size_t slot = params_.edge_count() + 2 * params_.vertex_count() + i;
  return std::uint64_t{bit} * place_[slot];
}

F2Vector StructuredGroup::xi(std::uint64_t g) const {
  F2Vector out;
  out.dim = static_cast<std::uint32_t>(params_.x_count());
  const std::size_t base = params_.edge_count() + params_.vertex_count();
  for (std::size_t j = 0; j < params_.x_count(); ++j)
    if (g / place_[base + j] % 2) out.set(j);
  return out;
}

ProductForm StructuredGroup::to_product_form(std::uint64_t g) const {
  ProductForm out;
  for (std::uint32_t v = 0; v < params_.vertex_count(); ++v)
    out.a.push_back(project_vertex(g, v));
  for (std::uint32_t r = 0; r < params_.edge_count(); ++r)
    out.b.push_back(project_edge(g, r));
  for (std::uint32_t i = 0; i < params_.extra_count(); ++i)
    out.c.push_back(project_extra(g, i));
  return out;
}

std::uint64_t StructuredGroup::rotation_at(std::string_view v) const {
  return inject_vertex(dp().rotation(), params_.vertex_index(v));
}

std::uint64_t StructuredGroup::reflection_at(std::string_view v) const {
  return inject_vertex(dp().reflection(), params_.vertex_index(v));
}

std::uint64_t StructuredGroup::cq_at(std::string_view a, std::string_view b) const {
  return inject_edge(w().cq_generator(), params_.edge_index(a, b));
}

std::uint64_t StructuredGroup::unit_extra(std::string_view i) const {
  return inject_extra(1, params_.extra_index(i));
}

std::shared_ptr<StructuredGroup> make_structured(Params params) {
  return std::make_shared<StructuredGroup>(std::move(params));
}

}  // namespace cdm
