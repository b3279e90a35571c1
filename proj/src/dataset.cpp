#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "error.hpp"
#include "sampling.hpp"

namespace prsi {

namespace {

constexpr std::uint64_t kUserDataStream = 0x30;

std::uint32_t parse_item_id(const std::string& token, std::size_t line_no) {
  std::uint64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    fail(ErrorCode::parse_error,
         "line " + std::to_string(line_no) + ": '" + token +
             "' is not a positive integer");
  if (value == 0)
    fail(ErrorCode::parse_error,
         "line " + std::to_string(line_no) + ": item ids are 1-based");
  if (value > 0xffffffffull)
    fail(ErrorCode::parse_error,
         "line " + std::to_string(line_no) + ": item id too large");
  return static_cast<std::uint32_t>(value);
}

}  // namespace

Dataset load_interactions(const std::string& path, std::uint32_t n_max,
                          std::uint32_t n_item_override) {
  if (n_max == 0)
    fail(ErrorCode::invalid_argument, "load: n_max must be positive");
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "load: cannot open '" + path + "'");

  Dataset data;
  std::uint32_t max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no += 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') continue;

    std::istringstream fields(line);
    InteractionVector user;
    std::unordered_set<ItemId> seen;
    std::string token;
    while (fields >> token) {
      const ItemId id = parse_item_id(token, line_no);
      if (!seen.insert(id).second)
        fail(ErrorCode::validation_error,
             "line " + std::to_string(line_no) + ": duplicate item id " +
                 std::to_string(id));
      user.items.push_back(id);
      max_id = std::max(max_id, id);
    }
    if (user.items.empty())
      fail(ErrorCode::validation_error,
           "line " + std::to_string(line_no) + ": user with no interactions");
    if (user.items.size() > n_max)
      fail(ErrorCode::validation_error,
           "line " + std::to_string(line_no) + ": " +
               std::to_string(user.items.size()) + " items exceed n_max=" +
               std::to_string(n_max));
    data.users.push_back(std::move(user));
  }
  if (data.users.empty())
    fail(ErrorCode::validation_error, "load: '" + path + "' holds no users");

  if (n_item_override != 0) {
    if (n_item_override < max_id)
      fail(ErrorCode::validation_error,
           "load: n_item override " + std::to_string(n_item_override) +
               " below largest item id " + std::to_string(max_id));
    data.n_item = n_item_override;
  } else {
    data.n_item = max_id;
  }
  return data;
}

Dataset generate_synthetic(std::uint32_t n_user, std::uint32_t n_item,
                           std::uint32_t n_max, std::uint64_t seed) {
  if (n_item == 0)
    fail(ErrorCode::invalid_argument, "synthetic: n_item must be positive");
  if (n_max == 0 || n_max > n_item)
    fail(ErrorCode::invalid_argument,
         "synthetic: need 1 <= n_max <= n_item");
  Dataset data;
  data.n_item = n_item;
  data.users.reserve(n_user);
  const std::unordered_set<std::uint32_t> none;
  for (std::uint32_t u = 0; u < n_user; ++u) {
    Rng rng(derive_seed(seed, kUserDataStream, u));
    const std::size_t len = 1 + rng.uniform_u32(n_max);
    data.users.push_back(
        InteractionVector{sample_distinct(rng, n_item, len, none)});
  }
  return data;
}

}  // namespace prsi
