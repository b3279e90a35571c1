#include <doctest.h>

#include <array>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "rng.hpp"
#include "sampling.hpp"
#include "test_support.hpp"

using prsi::derive_seed;
using prsi::Rng;
using prsi::splitmix64;
using test_support::expect_error;

TEST_CASE("splitmix64 matches the reference sequence") {
  // First three outputs of the reference generator started at state 0.
  CHECK(splitmix64(0x0000000000000000ull) == 0xe220a8397b1dcdafull);
  CHECK(splitmix64(0x9e3779b97f4a7c15ull) == 0x6e789e6aa1b965f4ull);
  CHECK(splitmix64(0x3c6ef372fe94f82aull) == 0x06c45d188009454full);
}

TEST_CASE("derived seeds separate tags and indices") {
  const std::uint64_t master = 42;
  CHECK(derive_seed(master, 1, 0) == derive_seed(master, 1, 0));
  CHECK(derive_seed(master, 1, 0) != derive_seed(master, 2, 0));
  CHECK(derive_seed(master, 1, 0) != derive_seed(master, 1, 1));
  CHECK(derive_seed(master, 1, 0) != derive_seed(master + 1, 1, 0));

  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t tag = 0; tag < 8; ++tag)
    for (std::uint64_t index = 0; index < 64; ++index)
      CHECK(seen.insert(derive_seed(master, tag, index)).second);
}

TEST_CASE("identical seeds replay identical streams") {
  Rng a(123), b(123), c(124);
  bool diverged = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    diverged = diverged || x != c.next_u64();
  }
  CHECK(diverged);
}

TEST_CASE("bounded draws stay in range and cover it") {
  Rng rng(7);
  CHECK(rng.uniform_u32(1) == 0);

  std::array<int, 6> hits{};
  for (int i = 0; i < 3000; ++i) {
    const std::uint32_t x = rng.uniform_u32(6);
    REQUIRE(x < 6);
    hits[x] += 1;
  }
  for (int h : hits) CHECK(h > 0);

  expect_error(prsi::ErrorCode::invalid_argument, "zero bound",
               [&] { rng.uniform_u32(0); });
}

TEST_CASE("trit draws are uniform over three values") {
  Rng rng(11);
  std::array<int, 3> hits{};
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    const int t = rng.trit();
    REQUIRE(t >= -1);
    REQUIRE(t <= 1);
    hits[t + 1] += 1;
  }
  // Chi-square against uniform, df = 2, 1% critical value.
  const double expected = draws / 3.0;
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  CHECK(chi2 < 9.210);
}

TEST_CASE("uniform_other avoids self and reaches everyone else") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) CHECK(rng.uniform_other(2, 0) == 1);
  for (int i = 0; i < 50; ++i) CHECK(rng.uniform_other(2, 1) == 0);

  std::unordered_set<std::uint32_t> seen;
  for (int i = 0; i < 500; ++i) {
    const std::uint32_t x = rng.uniform_other(5, 2);
    REQUIRE(x < 5);
    REQUIRE(x != 2);
    seen.insert(x);
  }
  CHECK(seen == std::unordered_set<std::uint32_t>{0, 1, 3, 4});

  expect_error(prsi::ErrorCode::invalid_argument, "need n >= 2",
               [&] { rng.uniform_other(1, 0); });
}

TEST_CASE("uniform_unit stays in [0, 1) with the right mean") {
  Rng rng(19);
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / draws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("shuffle places an element uniformly") {
  Rng rng(23);
  std::array<int, 4> hits{};
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    std::vector<int> xs{0, 1, 2, 3};
    rng.shuffle(std::span(xs));
    for (int pos = 0; pos < 4; ++pos)
      if (xs[pos] == 0) hits[pos] += 1;
  }
  // Chi-square against uniform position, df = 3, 1% critical value.
  const double expected = draws / 4.0;
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  CHECK(chi2 < 11.345);
}

TEST_CASE("shuffle_pair keeps the two rows aligned") {
  Rng rng(29);
  std::vector<std::uint32_t> ids{10, 20, 30, 40, 50, 60};
  std::vector<std::uint8_t> tags{1, 2, 3, 4, 5, 6};
  rng.shuffle_pair(std::span(ids), std::span(tags));
  REQUIRE(ids.size() == 6);
  for (std::size_t i = 0; i < ids.size(); ++i)
    CHECK(ids[i] == tags[i] * 10u);

  std::vector<std::uint8_t> shorter{1, 2};
  expect_error(prsi::ErrorCode::invalid_argument, "length mismatch",
               [&] { rng.shuffle_pair(std::span(ids), std::span(shorter)); });
}

TEST_CASE("sample_distinct draws without replacement and honors exclusions") {
  Rng rng(31);
  const std::unordered_set<std::uint32_t> none;

  CHECK(prsi::sample_distinct(rng, 10, 0, none).empty());

  SUBCASE("rejection path") {
    const auto xs = prsi::sample_distinct(rng, 1000, 20, {1, 2, 3});
    REQUIRE(xs.size() == 20);
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t x : xs) {
      CHECK(x >= 1);
      CHECK(x <= 1000);
      CHECK(x != 1);
      CHECK(x != 2);
      CHECK(x != 3);
      CHECK(seen.insert(x).second);
    }
  }

  SUBCASE("pool path returns every candidate when asked for all") {
    const auto xs = prsi::sample_distinct(rng, 6, 4, {2, 5});
    std::unordered_set<std::uint32_t> seen(xs.begin(), xs.end());
    CHECK(seen == std::unordered_set<std::uint32_t>{1, 3, 4, 6});
  }

  SUBCASE("asking for more than available fails") {
    expect_error(prsi::ErrorCode::invalid_argument, "not enough candidates",
                 [&] { prsi::sample_distinct(rng, 5, 5, {1}); });
  }
}
