// Interaction data ingestion: text files and seeded synthetic corpora.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitcore.hpp"

namespace prsi {

struct Dataset {
  std::vector<InteractionVector> users;
  std::uint32_t n_item = 0;
};

// One user per line: whitespace-separated 1-based item ids. Lines whose first
// non-blank character is '#' are comments. The catalogue size is the largest
// id seen unless a positive override is given. Malformed tokens, zero or
// duplicate ids, blank users, and lists longer than n_max are rejected with
// the offending line number.
Dataset load_interactions(const std::string& path, std::uint32_t n_max,
                          std::uint32_t n_item_override = 0);

// n_user lists with lengths uniform on [1, n_max] and items drawn uniformly
// without replacement from the catalogue; each user consumes its own derived
// stream.
Dataset generate_synthetic(std::uint32_t n_user, std::uint32_t n_item,
                           std::uint32_t n_max, std::uint64_t seed);

}  // namespace prsi
