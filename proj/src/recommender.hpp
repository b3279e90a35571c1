// Server-side recommendation over the aggregated interaction matrix.
//
// The matrix only ties interactions to virtual ids, so any strategy plugged
// in here works without knowing who the users are. The baseline strategy
// ranks items by global interaction count.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "splitcore.hpp"

namespace prsi {

struct InteractionMatrix {
  std::uint32_t n_item = 0;
  std::map<std::string, InteractionVector> rows;  // keyed by vid text
};

struct RecommenderSpec {
  std::string kind = "popularity";
  std::uint32_t k = 10;  // list length; the pipeline bounds it by n_max
};

// Validates ids against the catalogue and assembles the matrix.
InteractionMatrix build_matrix(
    const std::map<std::string, InteractionVector>& vectors,
    std::uint32_t n_item);

class RecommenderStrategy {
public:
  virtual ~RecommenderStrategy() = default;

  // One ranked list per row, k items long, never containing items the row
  // already holds. When fewer candidates exist the list comes back shorter,
  // never padded.
  virtual std::map<std::string, InteractionVector> recommend(
      const InteractionMatrix& matrix, std::uint32_t k) const = 0;
};

// Ranks the catalogue by interaction count, ties broken by ascending id.
class PopularityRecommender : public RecommenderStrategy {
public:
  std::map<std::string, InteractionVector> recommend(
      const InteractionMatrix& matrix, std::uint32_t k) const override;
};

std::unique_ptr<RecommenderStrategy> make_recommender(const std::string& kind);

std::map<std::string, InteractionVector> recommend(
    const InteractionMatrix& matrix, const RecommenderSpec& spec);

}  // namespace prsi
