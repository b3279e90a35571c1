// Uniform sampling of distinct item ids, shared by the splitter (fake items)
// and the synthetic data generator (interaction lists).
#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace prsi {

// Draws k distinct values from [1, n] \ exclude, uniformly. Uses rejection
// while candidates are plentiful and a materialized pool with a partial
// Fisher-Yates otherwise; the switch depends only on the sizes, so the draw
// transcript is a pure function of the Rng state.
inline std::vector<std::uint32_t> sample_distinct(
    Rng& rng, std::uint32_t n, std::size_t k,
    const std::unordered_set<std::uint32_t>& exclude) {
  const std::size_t avail = n - exclude.size();
  if (k > avail)
    fail(ErrorCode::invalid_argument, "sample_distinct: not enough candidates");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  if (k == 0) return out;
  if (avail >= 2 * k) {
    std::unordered_set<std::uint32_t> taken;
    taken.reserve(k * 2);
    while (out.size() < k) {
      std::uint32_t x = 1 + rng.uniform_u32(n);
      if (exclude.contains(x) || !taken.insert(x).second) continue;
      out.push_back(x);
    }
    return out;
  }
  std::vector<std::uint32_t> pool;
  pool.reserve(avail);
  for (std::uint32_t x = 1; x <= n; ++x)
    if (!exclude.contains(x)) pool.push_back(x);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j =
        i + rng.uniform_u32(static_cast<std::uint32_t>(pool.size() - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace prsi
