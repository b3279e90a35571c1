// Additive splitting of interaction vectors behind fake-item masking.
//
// A user's interaction list is padded with fake item ids to a fixed width,
// shuffled, and encoded as a 0/1 mask over the padded index row. The mask is
// then cut into s_spl integer vectors that sum back to it component-wise, so
// no single vector reveals which indices are real. Reconstruction sums the
// vectors and keeps the indices whose component equals one.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rng.hpp"

namespace prsi {

using ItemId = std::uint32_t;  // item ids are 1-based

struct SplitConfig {
  std::uint32_t n_item = 0;  // catalogue size
  std::uint32_t n_max = 0;   // maximum interactions per user
  std::uint32_t c = 0;       // padding ratio; padded width is c * n_max
  std::uint32_t s_spl = 0;   // split vectors per user

  std::uint32_t n_star() const { return c * n_max; }
  void validate() const;
};

struct InteractionVector {
  std::vector<ItemId> items;  // distinct ids in [1, n_item]; 1..n_max entries
};

void validate_interactions(const InteractionVector& v, const SplitConfig& cfg);

struct MaskedMatrix {
  std::vector<ItemId> indices;     // length n*, distinct
  std::vector<std::uint8_t> mask;  // length n*; 1 marks a real interaction
};

// Split components stay within |v| <= s_spl + 2, so 16 bits suffice for any
// accepted config.
using SplitValue = std::int16_t;

struct SplitVector {
  std::vector<SplitValue> values;  // length n*
};

// One share of a split set. The index row is identical across the set and
// shared by reference.
struct SplitShare {
  SplitVector split;
  std::shared_ptr<const std::vector<ItemId>> indices;
};

// Pads the interaction list with fake ids drawn uniformly from the
// non-interacted catalogue and applies one uniform permutation to the index
// row and mask in lockstep.
MaskedMatrix build_masked_matrix(const InteractionVector& source,
                                 const SplitConfig& cfg, Rng& rng);

// Cuts the mask of `source` into s_spl shares: base values are i.i.d. uniform
// over {-1,0,+1}, and the per-dimension residual (mask minus base sum) is
// added to one share chosen uniformly per dimension, with replacement.
std::vector<SplitShare> split_vector(const InteractionVector& source,
                                     const SplitConfig& cfg, Rng& rng);

// Sums a complete share set and returns the ids whose component equals one,
// in ascending order. Throws share_mixing when index rows disagree and
// incomplete_shares when any component falls outside {0,1}.
InteractionVector reconstruct(std::span<const SplitShare> shares);

// Component-wise sum of the first t shares: the view of an attacker holding
// an incomplete set. t == 0 yields the all-zero vector.
std::vector<std::int32_t> speculate(std::span<const SplitShare> shares,
                                    std::size_t t);

// Jaccard similarity of {d : a[d] == 1} and {d : b[d] == 1}; two empty sets
// count as identical (1.0).
double jaccard_similarity(std::span<const std::int32_t> a,
                          std::span<const std::int32_t> b);

}  // namespace prsi
