#include "splitcore.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "error.hpp"
#include "sampling.hpp"

namespace prsi {

void SplitConfig::validate() const {
  if (n_item == 0) fail(ErrorCode::invalid_argument, "config: n_item must be positive");
  if (n_max == 0) fail(ErrorCode::invalid_argument, "config: n_max must be positive");
  if (c < 2) fail(ErrorCode::invalid_argument, "config: padding ratio c must exceed 1");
  if (s_spl == 0) fail(ErrorCode::invalid_argument, "config: s_spl must be positive");
  // Component magnitudes reach s_spl + 2; keep them within SplitValue.
  if (s_spl > 32765) fail(ErrorCode::invalid_argument, "config: s_spl too large");
  const std::uint64_t width = static_cast<std::uint64_t>(c) * n_max;
  if (width >= n_item)
    fail(ErrorCode::invalid_argument,
         "config: padded width c*n_max must stay below n_item");
}

void validate_interactions(const InteractionVector& v, const SplitConfig& cfg) {
  if (v.items.empty())
    fail(ErrorCode::validation_error, "interactions: empty vector");
  if (v.items.size() > cfg.n_max)
    fail(ErrorCode::validation_error,
         "interactions: more than n_max items (" +
             std::to_string(v.items.size()) + " > " +
             std::to_string(cfg.n_max) + ")");
  std::unordered_set<ItemId> seen;
  seen.reserve(v.items.size() * 2);
  for (ItemId id : v.items) {
    if (id == 0 || id > cfg.n_item)
      fail(ErrorCode::validation_error,
           "interactions: item id " + std::to_string(id) + " outside [1, " +
               std::to_string(cfg.n_item) + "]");
    if (!seen.insert(id).second)
      fail(ErrorCode::validation_error,
           "interactions: duplicate item id " + std::to_string(id));
  }
}

MaskedMatrix build_masked_matrix(const InteractionVector& source,
                                 const SplitConfig& cfg, Rng& rng) {
  cfg.validate();
  validate_interactions(source, cfg);
  const std::uint32_t n_star = cfg.n_star();
  const std::size_t real = source.items.size();

  std::unordered_set<std::uint32_t> taken(source.items.begin(),
                                          source.items.end());
  std::vector<std::uint32_t> fakes =
      sample_distinct(rng, cfg.n_item, n_star - real, taken);

  MaskedMatrix m;
  m.indices.reserve(n_star);
  m.indices.insert(m.indices.end(), source.items.begin(), source.items.end());
  m.indices.insert(m.indices.end(), fakes.begin(), fakes.end());
  m.mask.assign(n_star, 0);
  std::fill(m.mask.begin(), m.mask.begin() + real, 1);
  rng.shuffle_pair(std::span(m.indices), std::span(m.mask));
  return m;
}

std::vector<SplitShare> split_vector(const InteractionVector& source,
                                     const SplitConfig& cfg, Rng& rng) {
  MaskedMatrix m = build_masked_matrix(source, cfg, rng);
  const std::uint32_t n_star = cfg.n_star();
  const std::uint32_t s_spl = cfg.s_spl;

  std::vector<SplitVector> parts(s_spl);
  for (auto& p : parts) {
    p.values.resize(n_star);
    for (auto& v : p.values) v = static_cast<SplitValue>(rng.trit());
  }
  for (std::uint32_t d = 0; d < n_star; ++d) {
    std::int32_t sum = 0;
    for (const auto& p : parts) sum += p.values[d];
    const std::int32_t diff = static_cast<std::int32_t>(m.mask[d]) - sum;
    auto& chosen = parts[rng.uniform_u32(s_spl)];
    chosen.values[d] = static_cast<SplitValue>(chosen.values[d] + diff);
  }

  auto indices =
      std::make_shared<const std::vector<ItemId>>(std::move(m.indices));
  std::vector<SplitShare> shares;
  shares.reserve(s_spl);
  for (auto& p : parts) shares.push_back(SplitShare{std::move(p), indices});
  return shares;
}

namespace {

void require_same_indices(std::span<const SplitShare> shares) {
  const auto& first = shares.front().indices;
  for (const auto& s : shares) {
    if (s.indices == first) continue;
    if (!s.indices || !first || *s.indices != *first)
      fail(ErrorCode::share_mixing,
           "shares carry different index rows; sets were mixed");
    if (s.split.values.size() != first->size())
      fail(ErrorCode::share_mixing, "share length mismatch");
  }
}

}  // namespace

InteractionVector reconstruct(std::span<const SplitShare> shares) {
  if (shares.empty())
    fail(ErrorCode::invalid_argument, "reconstruct: no shares");
  require_same_indices(shares);
  const auto& indices = *shares.front().indices;

  InteractionVector out;
  for (std::size_t d = 0; d < indices.size(); ++d) {
    std::int32_t sum = 0;
    for (const auto& s : shares) sum += s.split.values[d];
    if (sum == 0) continue;
    if (sum != 1)
      fail(ErrorCode::incomplete_shares,
           "component sum " + std::to_string(sum) + " at dimension " +
               std::to_string(d) + "; share set incomplete or corrupted");
    out.items.push_back(indices[d]);
  }
  std::sort(out.items.begin(), out.items.end());
  return out;
}

std::vector<std::int32_t> speculate(std::span<const SplitShare> shares,
                                    std::size_t t) {
  if (shares.empty())
    fail(ErrorCode::invalid_argument, "speculate: no shares");
  if (t > shares.size())
    fail(ErrorCode::invalid_argument, "speculate: t exceeds share count");
  require_same_indices(shares);
  std::vector<std::int32_t> sum(shares.front().split.values.size(), 0);
  for (std::size_t s = 0; s < t; ++s)
    for (std::size_t d = 0; d < sum.size(); ++d)
      sum[d] += shares[s].split.values[d];
  return sum;
}

double jaccard_similarity(std::span<const std::int32_t> a,
                          std::span<const std::int32_t> b) {
  if (a.size() != b.size())
    fail(ErrorCode::invalid_argument, "jaccard: length mismatch");
  std::size_t both = 0, either = 0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const bool in_a = a[d] == 1;
    const bool in_b = b[d] == 1;
    both += in_a && in_b;
    either += in_a || in_b;
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace prsi
