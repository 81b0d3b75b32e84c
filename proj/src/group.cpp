#include "cdm/group.hpp"

#include <algorithm>

#include "cdm/dihedral.hpp"
#include "cdm/wgroup.hpp"

namespace cdm {

std::uint64_t FiniteGroup::power(std::uint64_t x, std::uint64_t e) const {
  std::uint64_t acc = 0;  // identity
  while (e) {
    if (e & 1) acc = mul(acc, x);
    x = mul(x, x);
    e >>= 1;
  }
  return acc;
}

std::uint64_t FiniteGroup::element_order(std::uint64_t x) const {
  std::uint64_t n = 1, y = x;
  while (y != 0) {
    y = mul(y, x);
    ++n;
  }
  return n;
}

bool FiniteGroup::is_abelian() const {
  const auto& gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (mul(gens[i], gens[j]) != mul(gens[j], gens[i])) return false;
  return true;
}

bool FiniteGroup::has_exponent_two() const {
  for (std::uint64_t x = 0; x < order(); ++x)
    if (mul(x, x) != 0) return false;
  return true;
}

TableGroup::TableGroup(std::uint64_t n,
                       std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mulfn)
    : n_(n), table_(n * n) {
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      table_[a * n + b] = static_cast<std::uint32_t>(mulfn(a, b));
  finish();
}

void TableGroup::finish() {
  inverse_.assign(n_, 0);
  for (std::uint64_t a = 0; a < n_; ++a)
    for (std::uint64_t b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inverse_[a] = static_cast<std::uint32_t>(b);
        break;
      }
  // Greedy generating set: adjoin the smallest element not yet generated.
  std::vector<bool> in(n_, false);
  in[0] = true;
  std::uint64_t covered = 1;
  while (covered < n_) {
    std::uint64_t fresh = 0;
    while (in[fresh]) ++fresh;
    gens_.push_back(fresh);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t x = 0; x < n_; ++x)
      if (in[x]) queue.push_back(x);
    while (!queue.empty()) {
      std::uint64_t x = queue.back();
      queue.pop_back();
      for (auto g : gens_) {
        std::uint64_t y = mul(x, g);
        if (!in[y]) {
          in[y] = true;
          ++covered;
          queue.push_back(y);
        }
      }
    }
  }
}

std::shared_ptr<TableGroup> TableGroup::cyclic(std::uint64_t n) {
  return std::make_shared<TableGroup>(n, [n](std::uint64_t a, std::uint64_t b) {
    return (a + b) % n;
  });
}

std::shared_ptr<TableGroup> TableGroup::dihedral(std::uint32_t p) {
  Dihedral dp(p);
  return std::make_shared<TableGroup>(dp.order(), [dp](std::uint64_t a, std::uint64_t b) {
    return dp.encode(dp.mul(dp.decode(a), dp.decode(b)));
  });
}

std::shared_ptr<TableGroup> TableGroup::w_group(std::uint32_t p, std::uint32_t q) {
  WGroup w(p, q);
  return std::make_shared<TableGroup>(w.order(), [w](std::uint64_t a, std::uint64_t b) {
    return w.encode(w.mul(w.decode(a), w.decode(b)));
  });
}

std::shared_ptr<TableGroup> TableGroup::direct_product(const FiniteGroup& a,
                                                       const FiniteGroup& b) {
  const std::uint64_t na = a.order();
  return std::make_shared<TableGroup>(
      na * b.order(), [&a, &b, na](std::uint64_t x, std::uint64_t y) {
        return a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
      });
}

std::shared_ptr<TableGroup> TableGroup::elementary_abelian_2(std::uint32_t rank) {
  return std::make_shared<TableGroup>(std::uint64_t{1} << rank,
                                      [](std::uint64_t a, std::uint64_t b) { return a ^ b; });
}

std::shared_ptr<TableGroup> TableGroup::from_group(const FiniteGroup& g) {
  return std::make_shared<TableGroup>(
      g.order(), [&g](std::uint64_t a, std::uint64_t b) { return g.mul(a, b); });
}

}  // namespace cdm
