#include "recommender.hpp"

#include <algorithm>
#include <unordered_set>

#include "error.hpp"

namespace prsi {

InteractionMatrix build_matrix(
    const std::map<std::string, InteractionVector>& vectors,
    std::uint32_t n_item) {
  if (n_item == 0)
    fail(ErrorCode::invalid_argument, "matrix: n_item must be positive");
  InteractionMatrix matrix;
  matrix.n_item = n_item;
  for (const auto& [vid, row] : vectors) {
    std::unordered_set<ItemId> seen;
    seen.reserve(row.items.size() * 2);
    for (ItemId id : row.items) {
      if (id == 0 || id > n_item)
        fail(ErrorCode::validation_error,
             "matrix: row " + vid + " holds item id " + std::to_string(id) +
                 " outside [1, " + std::to_string(n_item) + "]");
      if (!seen.insert(id).second)
        fail(ErrorCode::validation_error,
             "matrix: row " + vid + " repeats item id " + std::to_string(id));
    }
    matrix.rows.emplace(vid, row);
  }
  return matrix;
}

std::map<std::string, InteractionVector> PopularityRecommender::recommend(
    const InteractionMatrix& matrix, std::uint32_t k) const {
  if (k == 0)
    fail(ErrorCode::invalid_argument, "recommend: k must be positive");

  std::vector<std::uint64_t> count(matrix.n_item + 1, 0);
  for (const auto& [vid, row] : matrix.rows)
    for (ItemId id : row.items) count[id] += 1;

  std::vector<ItemId> ranked(matrix.n_item);
  for (std::uint32_t i = 0; i < matrix.n_item; ++i) ranked[i] = i + 1;
  std::sort(ranked.begin(), ranked.end(), [&count](ItemId a, ItemId b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return a < b;
  });

  std::map<std::string, InteractionVector> recs;
  for (const auto& [vid, row] : matrix.rows) {
    std::unordered_set<ItemId> own(row.items.begin(), row.items.end());
    InteractionVector rec;
    rec.items.reserve(k);
    for (ItemId id : ranked) {
      if (own.contains(id)) continue;
      rec.items.push_back(id);
      if (rec.items.size() == k) break;
    }
    recs.emplace(vid, std::move(rec));
  }
  return recs;
}

std::unique_ptr<RecommenderStrategy> make_recommender(const std::string& kind) {
  if (kind == "popularity") return std::make_unique<PopularityRecommender>();
  fail(ErrorCode::invalid_argument, "recommend: unknown strategy '" + kind + "'");
}

std::map<std::string, InteractionVector> recommend(
    const InteractionMatrix& matrix, const RecommenderSpec& spec) {
  return make_recommender(spec.kind)->recommend(matrix, spec.k);
}

}  // namespace prsi
